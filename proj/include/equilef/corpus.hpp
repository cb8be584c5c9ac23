#pragma once

// Builtin scenarios: points, polygons, a disc, spheres, a torus and a
// projective plane, with trivial, free and mixed actions and trivial, sign
// and regular coefficient lattices.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "equilef/scenario.hpp"

namespace equilef {

namespace corpus {

enum class LatticeKind { trivial, sign, regular };

inline const char* suffix(LatticeKind k) {
  switch (k) {
    case LatticeKind::trivial: return "";
    case LatticeKind::sign: return "-sign";
    case LatticeKind::regular: return "-regular";
  }
  return "";
}

// Fills in the lattice block: `signs` gives the sign character on the
// generators; the regular lattice is read off the group.
inline void set_lattice(ScenarioSpec& spec, LatticeKind kind, const std::vector<int>& signs = {}) {
  if (kind == LatticeKind::trivial) return;
  const auto g = group_from_permutations(spec.degree, spec.generators);
  const auto l = kind == LatticeKind::sign ? GLattice::sign(g, signs) : GLattice::regular(g);
  spec.lattice = LatticeSpec{l.rank(), l.generator_matrices()};
}

inline Permutation rotation(std::size_t n, std::size_t k) {
  Permutation p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::uint32_t>((i + k) % n);
  return p;
}

inline std::vector<Simplex> polygon(std::size_t n) {
  std::vector<Simplex> edges;
  for (std::uint32_t i = 0; i < n; ++i) {
    Simplex e{i, static_cast<std::uint32_t>((i + 1) % n)};
    std::sort(e.begin(), e.end());
    edges.push_back(e);
  }
  return edges;
}

// Vertices ±x, ±y, ±z numbered 0, 1, 2 (positive) and 3, 4, 5 (negative).
inline std::vector<Simplex> octahedron() {
  std::vector<Simplex> faces;
  for (std::uint32_t a : {0u, 3u})
    for (std::uint32_t b : {1u, 4u})
      for (std::uint32_t c : {2u, 5u}) {
        Simplex f{a, b, c};
        std::sort(f.begin(), f.end());
        faces.push_back(f);
      }
  return faces;
}

inline Permutation swap_pairs(std::initializer_list<std::pair<std::uint32_t, std::uint32_t>> pairs, std::size_t n) {
  Permutation p = identity_permutation(n);
  for (auto [a, b] : pairs) std::swap(p[a], p[b]);
  return p;
}

// n×n grid torus, vertex (i, j) = n i + j, with diagonals (i, j)-(i+1, j+1).
inline std::vector<Simplex> torus(std::uint32_t n) {
  auto v = [n](std::uint32_t i, std::uint32_t j) { return (i % n) * n + (j % n); };
  std::vector<Simplex> faces;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      Simplex a{v(i, j), v(i + 1, j), v(i + 1, j + 1)};
      Simplex b{v(i, j), v(i, j + 1), v(i + 1, j + 1)};
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      faces.push_back(a);
      faces.push_back(b);
    }
  return faces;
}

inline ScenarioSpec make(std::string name, std::string description, std::size_t degree,
                         std::vector<Permutation> generators, std::size_t vertices, std::vector<Simplex> maximal,
                         std::vector<Permutation> action) {
  ScenarioSpec s;
  s.name = std::move(name);
  s.description = std::move(description);
  s.degree = degree;
  s.generators = std::move(generators);
  s.vertices = vertices;
  s.maximal_simplices = std::move(maximal);
  s.vertex_action = std::move(action);
  return s;
}

inline ScenarioSpec with_lattice(ScenarioSpec s, LatticeKind kind, const std::vector<int>& signs = {}) {
  s.name += suffix(kind);
  set_lattice(s, kind, signs);
  return s;
}

inline std::vector<ScenarioSpec> specs() {
  using L = LatticeKind;
  std::vector<ScenarioSpec> out;
  auto add = [&out](const ScenarioSpec& base, std::initializer_list<L> kinds, const std::vector<int>& signs = {}) {
    for (auto k : kinds) out.push_back(with_lattice(base, k, signs));
  };

  const Permutation t01{1, 0, 2}, c012{1, 2, 0};

  add(make("point", "one vertex, trivial group", 1, {}, 1, {{0}}, {}), {L::trivial});
  add(make("point-c3", "one vertex, cyclic group of order 3 acting trivially", 3, {rotation(3, 1)}, 1, {{0}},
           {{0}}),
      {L::regular});
  add(make("point-c5", "one vertex, cyclic group of order 5 acting trivially", 5, {rotation(5, 1)}, 1, {{0}},
           {{0}}),
      {L::regular});
  add(make("point-s3", "one vertex, symmetric group S3 acting trivially", 3, {t01, c012}, 1, {{0}}, {{0}, {0}}),
      {L::sign}, {-1, 1});

  add(make("hexagon-rot2", "hexagon, free rotation by two steps (order 3)", 3, {rotation(3, 1)}, 6, polygon(6),
           {rotation(6, 2)}),
      {L::trivial, L::regular});
  add(make("hexagon-rot3", "hexagon, free rotation by three steps (order 2)", 2, {rotation(2, 1)}, 6, polygon(6),
           {rotation(6, 3)}),
      {L::trivial, L::sign, L::regular}, {-1});
  add(make("square-reflection", "square, reflection in the diagonal through vertices 0 and 2", 2, {rotation(2, 1)},
           4, polygon(4), {{0, 3, 2, 1}}),
      {L::trivial, L::sign, L::regular}, {-1});
  add(make("square-d4", "square, full dihedral group of order 8", 4, {rotation(4, 1), {0, 3, 2, 1}}, 4, polygon(4),
           {rotation(4, 1), {0, 3, 2, 1}}),
      {L::trivial, L::sign}, {1, -1});
  add(make("disc-reflection", "coned square, reflection fixing the arc 0-4-2", 2, {rotation(2, 1)}, 5,
           {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {0, 3, 4}}, {{0, 3, 2, 1, 4}}),
      {L::trivial, L::sign, L::regular}, {-1});
  add(make("triangle-c3", "triangle boundary, free rotation", 3, {rotation(3, 1)}, 3, polygon(3), {rotation(3, 1)}),
      {L::trivial});
  add(make("triangle-s3", "triangle boundary, full symmetric group", 3, {t01, c012}, 3, polygon(3), {t01, c012}),
      {L::trivial, L::sign, L::regular}, {-1, 1});

  const Permutation antipode{3, 4, 5, 0, 1, 2};
  add(make("octahedron-antipodal", "octahedron boundary, antipodal involution", 2, {rotation(2, 1)}, 6, octahedron(),
           {antipode}),
      {L::trivial, L::sign}, {-1});
  {
    // (Z/2)^3 as permutations of {0..5} coinciding with the vertex action.
    const auto rx = swap_pairs({{0, 3}}, 6), ry = swap_pairs({{1, 4}}, 6), rz = swap_pairs({{2, 5}}, 6);
    add(make("octahedron-reflections", "octahedron boundary, the three coordinate reflections", 6, {rx, ry, rz}, 6,
             octahedron(), {rx, ry, rz}),
        {L::trivial, L::sign}, {-1, 1, 1});
  }
  {
    Permutation neg(16);
    for (std::uint32_t i = 0; i < 4; ++i)
      for (std::uint32_t j = 0; j < 4; ++j) neg[4 * i + j] = ((4 - i) % 4) * 4 + (4 - j) % 4;
    add(make("torus-involution", "4x4 grid torus, the involution x -> -x with four fixed points", 2,
             {rotation(2, 1)}, 16, torus(4), {neg}),
        {L::trivial, L::sign}, {-1});
  }
  {
    // The quotient of the octahedron by the antipodal map, after the one
    // subdivision that makes the projection simplicial.
    const auto base = build_complex(6, octahedron(), group_from_permutations(2, {rotation(2, 1)}), {antipode});
    const auto q = quotient_complex(base.complex);
    std::vector<Simplex> maximal = q.quotient->simplices(q.quotient->dimension());
    out.push_back(make("rp2", "projective plane, quotient of the octahedron by the antipodal map", 1, {},
                       q.quotient->vertex_count(), std::move(maximal), {}));
  }
  return out;
}

}  // namespace corpus

inline std::vector<ScenarioSpec> builtin_specs() { return corpus::specs(); }

inline std::vector<std::string> builtin_names() {
  std::vector<std::string> names;
  for (const auto& s : builtin_specs()) names.push_back(s.name);
  return names;
}

inline std::optional<ScenarioSpec> builtin_spec(const std::string& name) {
  for (auto& s : builtin_specs())
    if (s.name == name) return s;
  return std::nullopt;
}

inline std::vector<Scenario> builtin_scenarios() {
  std::vector<Scenario> out;
  for (const auto& s : builtin_specs()) out.push_back(build_scenario(s));
  return out;
}

}  // namespace equilef
