#pragma once

// Finite abstract simplicial complexes with a simplicial action of a finite
// group, and the combinatorial strata of that action: fixed subcomplexes
// X^H, exact strata X_H, class strata X_C, the filtration X^i, quotients of
// free actions. Everything is stored as explicit simplex sets.

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "equilef/error.hpp"
#include "equilef/finite_group.hpp"

namespace equilef {

using Vertex = std::uint32_t;
using Simplex = std::vector<Vertex>;  // strictly increasing

struct SimplexImage {
  std::uint32_t index;
  int sign;  // sign of the permutation sorting (g v_0, ..., g v_q)
};

inline std::vector<Simplex> face_closure(const std::vector<Simplex>& maximal) {
  std::set<Simplex> all;
  for (const auto& s : maximal) {
    const std::size_t k = s.size();
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      Simplex f;
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (1u << i)) f.push_back(s[i]);
      all.insert(std::move(f));
    }
  }
  return {all.begin(), all.end()};
}

class SimplicialGComplex;
using ComplexPtr = std::shared_ptr<const SimplicialGComplex>;

class SimplicialGComplex {
 public:
  // `simplices` must be face-closed; `vertex_action[g]` is the permutation
  // of the vertices by element g. Throws InputError if some element maps a
  // simplex to a non-simplex.
  SimplicialGComplex(GroupPtr group, std::size_t vertex_count, std::vector<Simplex> simplices,
                     std::vector<Permutation> vertex_action)
      : group_(std::move(group)), vertex_count_(vertex_count), vertex_action_(std::move(vertex_action)) {
    if (vertex_action_.size() != group_->order())
      throw InputError("complex/action", "one vertex permutation per group element required");
    for (auto& s : simplices) {
      if (s.empty()) throw InputError("complex", "empty simplex");
      std::sort(s.begin(), s.end());
      if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw InputError("complex", "simplex with a repeated vertex");
      if (s.back() >= vertex_count_) throw InputError("complex", "vertex index out of range");
      const std::size_t d = s.size() - 1;
      if (simplices_.size() <= d) simplices_.resize(d + 1);
      simplices_[d].push_back(s);
    }
    for (auto& level : simplices_) {
      std::sort(level.begin(), level.end());
      level.erase(std::unique(level.begin(), level.end()), level.end());
    }
    index_.resize(simplices_.size());
    for (std::size_t d = 0; d < simplices_.size(); ++d)
      for (std::size_t i = 0; i < simplices_[d].size(); ++i)
        index_[d].emplace(simplices_[d][i], static_cast<std::uint32_t>(i));
    if (simplices_.empty() || simplices_[0].size() != vertex_count_)
      throw InputError("complex", "every vertex must be a 0-simplex of the complex");

    faces_.resize(simplices_.size());
    for (std::size_t d = 1; d < simplices_.size(); ++d)
      for (const auto& s : simplices_[d]) {
        std::vector<std::uint32_t> f;
        for (std::size_t i = 0; i <= d; ++i) {
          Simplex face = s;
          face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
          auto it = index_[d - 1].find(face);
          if (it == index_[d - 1].end()) throw InputError("complex", "simplex list is not face-closed");
          f.push_back(it->second);
        }
        faces_[d].push_back(std::move(f));
      }

    for (std::size_t g = 0; g < vertex_action_.size(); ++g)
      if (vertex_action_[g].size() != vertex_count_ || !is_permutation(vertex_action_[g]))
        throw InputError("complex/action", "vertex action of element " + std::to_string(g) + " is not a permutation");

    images_.assign(group_->order(), std::vector<std::vector<SimplexImage>>(simplices_.size()));
    stabilizers_.resize(simplices_.size());
    for (std::size_t d = 0; d < simplices_.size(); ++d) stabilizers_[d].resize(simplices_[d].size());
    for (Element g = 0; g < group_->order(); ++g)
      for (std::size_t d = 0; d < simplices_.size(); ++d)
        for (std::size_t i = 0; i < simplices_[d].size(); ++i) {
          Simplex img;
          for (auto v : simplices_[d][i]) img.push_back(vertex_action_[g][v]);
          int sign = 1;
          for (std::size_t a = 0; a < img.size(); ++a)
            for (std::size_t b = a + 1; b < img.size(); ++b)
              if (img[a] > img[b]) sign = -sign;
          std::sort(img.begin(), img.end());
          auto it = index_[d].find(img);
          if (it == index_[d].end())
            throw InputError("complex/action", "non-simplicial action: element " + std::to_string(g) +
                                                   " maps a " + std::to_string(d) + "-simplex to a non-simplex");
          images_[g][d].push_back({it->second, sign});
          if (it->second == i) stabilizers_[d][i].push_back(g);
        }
  }

  const GroupPtr& group() const noexcept { return group_; }
  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t dimension() const noexcept { return simplices_.size() - 1; }
  std::size_t levels() const noexcept { return simplices_.size(); }
  const std::vector<Simplex>& simplices(std::size_t d) const { return simplices_.at(d); }
  std::size_t simplex_count(std::size_t d) const { return d < simplices_.size() ? simplices_[d].size() : 0; }
  std::size_t total_simplex_count() const {
    std::size_t n = 0;
    for (const auto& l : simplices_) n += l.size();
    return n;
  }

  std::optional<std::uint32_t> index_of(const Simplex& s) const {
    if (s.empty() || s.size() > simplices_.size()) return std::nullopt;
    auto it = index_[s.size() - 1].find(s);
    if (it == index_[s.size() - 1].end()) return std::nullopt;
    return it->second;
  }

  // Facet indices of simplex i of dimension d ≥ 1: face j omits vertex j.
  const std::vector<std::uint32_t>& faces(std::size_t d, std::size_t i) const { return faces_.at(d).at(i); }

  Vertex vertex_image(Element g, Vertex v) const { return vertex_action_[g][v]; }
  const std::vector<Permutation>& vertex_action() const noexcept { return vertex_action_; }
  const SimplexImage& image(Element g, std::size_t d, std::size_t i) const { return images_[g][d][i]; }

  // Setwise stabilizer, sorted.
  const std::vector<Element>& stabilizer(std::size_t d, std::size_t i) const { return stabilizers_[d][i]; }

  long euler_characteristic() const {
    long chi = 0;
    for (std::size_t d = 0; d < simplices_.size(); ++d)
      chi += (d % 2 ? -1L : 1L) * static_cast<long>(simplices_[d].size());
    return chi;
  }

  // A simplex that some element maps to itself without fixing it
  // vertexwise, if any.
  std::optional<std::pair<std::size_t, std::size_t>> regularity_violation() const {
    for (std::size_t d = 0; d < simplices_.size(); ++d)
      for (std::size_t i = 0; i < simplices_[d].size(); ++i)
        for (auto g : stabilizers_[d][i])
          for (auto v : simplices_[d][i])
            if (vertex_action_[g][v] != v) return std::make_pair(d, i);
    return std::nullopt;
  }
  bool is_regular() const { return !regularity_violation().has_value(); }

  bool acts_freely() const {
    for (const auto& level : stabilizers_)
      for (const auto& s : level)
        if (s.size() != 1) return false;
    return true;
  }

 private:
  GroupPtr group_;
  std::size_t vertex_count_;
  std::vector<std::vector<Simplex>> simplices_;
  std::vector<std::map<Simplex, std::uint32_t>> index_;
  std::vector<std::vector<std::vector<std::uint32_t>>> faces_;
  std::vector<Permutation> vertex_action_;
  std::vector<std::vector<std::vector<SimplexImage>>> images_;  // [g][d][i]
  std::vector<std::vector<std::vector<Element>>> stabilizers_;   // [d][i]
};

// Vertices of the result are the simplices of `x` (by dimension, then
// index); simplices are the chains under inclusion.
inline ComplexPtr barycentric_subdivision(const SimplicialGComplex& x) {
  std::vector<std::uint32_t> offset(x.levels() + 1, 0);
  for (std::size_t d = 0; d < x.levels(); ++d) offset[d + 1] = offset[d] + static_cast<std::uint32_t>(x.simplex_count(d));
  const std::size_t n = offset.back();

  // chains[d][i]: chains whose top element is simplex (d, i).
  std::vector<std::vector<std::vector<Simplex>>> chains(x.levels());
  for (std::size_t d = 0; d < x.levels(); ++d) {
    chains[d].resize(x.simplex_count(d));
    for (std::size_t i = 0; i < x.simplex_count(d); ++i) {
      const Vertex top = offset[d] + static_cast<Vertex>(i);
      auto& out = chains[d][i];
      out.push_back({top});
      const Simplex& s = x.simplices(d)[i];
      const std::size_t k = s.size();
      for (std::uint32_t mask = 1; mask + 1 < (1u << k); ++mask) {
        Simplex face;
        for (std::size_t b = 0; b < k; ++b)
          if (mask & (1u << b)) face.push_back(s[b]);
        const std::size_t fd = face.size() - 1;
        const auto fi = *x.index_of(face);
        for (const auto& c : chains[fd][fi]) {
          Simplex ext = c;
          ext.push_back(top);
          out.push_back(std::move(ext));
        }
      }
    }
  }
  std::vector<Simplex> simplices;
  for (auto& level : chains)
    for (auto& list : level)
      for (auto& c : list) simplices.push_back(std::move(c));

  std::vector<Permutation> action(x.group()->order(), Permutation(n));
  for (Element g = 0; g < x.group()->order(); ++g)
    for (std::size_t d = 0; d < x.levels(); ++d)
      for (std::size_t i = 0; i < x.simplex_count(d); ++i)
        action[g][offset[d] + i] = offset[d] + x.image(g, d, i).index;
  return std::make_shared<const SimplicialGComplex>(x.group(), n, std::move(simplices), std::move(action));
}

inline constexpr std::size_t kMaxSubdivisions = 2;

struct BuiltComplex {
  ComplexPtr complex;
  std::size_t subdivisions = 0;
};

// Builds the face closure of `maximal`, extends the generator images to a
// vertex action of the whole group (checking every relation), then
// subdivides (at most twice) until the action is regular.
inline BuiltComplex build_complex(std::size_t vertex_count, const std::vector<Simplex>& maximal, const GroupPtr& group,
                                  const std::vector<Permutation>& generator_images,
                                  std::size_t forced_subdivisions = 0) {
  if (generator_images.size() != group->generator_count())
    throw InputError("complex/action", "expected images for " + std::to_string(group->generator_count()) +
                                           " generators, got " + std::to_string(generator_images.size()));
  for (std::size_t s = 0; s < generator_images.size(); ++s)
    if (generator_images[s].size() != vertex_count || !is_permutation(generator_images[s]))
      throw InputError("complex/action/" + std::to_string(s), "generator image is not a permutation of the vertices");
  const auto action = group->extend_from_generators<Permutation>(generator_images, identity_permutation(vertex_count),
                                                                 [](const Permutation& a, const Permutation& b) {
                                                                   return compose(a, b);
                                                                 });
  if (auto bad = group->find_relation_violation(action, [](const Permutation& a, const Permutation& b) {
        return compose(a, b);
      }))
    throw InputError("complex/action", "vertex action violates the group relation g" + std::to_string(bad->first) +
                                           " * g" + std::to_string(bad->second) + " = g" +
                                           std::to_string(group->mul(bad->first, bad->second)));
  for (const auto& s : maximal)
    for (auto v : s)
      if (v >= vertex_count) throw InputError("complex/maximal_simplices", "vertex index out of range");

  BuiltComplex out;
  out.complex = std::make_shared<const SimplicialGComplex>(group, vertex_count, face_closure(maximal), action);
  for (; out.subdivisions < forced_subdivisions; ++out.subdivisions)
    out.complex = barycentric_subdivision(*out.complex);
  while (!out.complex->is_regular()) {
    if (out.subdivisions >= kMaxSubdivisions)
      throw InputError("complex", "action is not regular after " + std::to_string(kMaxSubdivisions) + " subdivisions");
    out.complex = barycentric_subdivision(*out.complex);
    ++out.subdivisions;
  }
  return out;
}

// ---------------------------------------------------------------------------

enum class StratumKind { whole, fixed_set, exact_stratum, class_stratum, filtration_level, filtration_pair };

inline const char* to_string(StratumKind k) {
  switch (k) {
    case StratumKind::whole: return "whole";
    case StratumKind::fixed_set: return "fixed_set";
    case StratumKind::exact_stratum: return "exact_stratum";
    case StratumKind::class_stratum: return "class_stratum";
    case StratumKind::filtration_level: return "filtration_level";
    case StratumKind::filtration_pair: return "filtration_pair";
  }
  return "?";
}

// A union of open simplices of `complex`.
struct Stratum {
  ComplexPtr complex;
  std::vector<std::vector<std::uint32_t>> open_simplices;  // per dimension, ascending
  StratumKind kind = StratumKind::whole;
  std::vector<Element> subgroup;  // H for fixed/exact strata, the representative for class strata
  std::size_t level = 0;          // i for filtration strata

  bool contains(std::size_t d, std::uint32_t i) const {
    if (d >= open_simplices.size()) return false;
    return std::binary_search(open_simplices[d].begin(), open_simplices[d].end(), i);
  }
  std::size_t count(std::size_t d) const { return d < open_simplices.size() ? open_simplices[d].size() : 0; }
  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& l : open_simplices) n += l.size();
    return n;
  }
  bool empty() const { return size() == 0; }
  // Alternating simplex count; the compactly supported Euler characteristic.
  long euler_characteristic() const {
    long chi = 0;
    for (std::size_t d = 0; d < open_simplices.size(); ++d)
      chi += (d % 2 ? -1L : 1L) * static_cast<long>(open_simplices[d].size());
    return chi;
  }
  bool is_closed() const {
    for (std::size_t d = 1; d < open_simplices.size(); ++d)
      for (auto i : open_simplices[d])
        for (auto f : complex->faces(d, i))
          if (!contains(d - 1, f)) return false;
    return true;
  }
  bool invariant_under(Element g) const {
    for (std::size_t d = 0; d < open_simplices.size(); ++d)
      for (auto i : open_simplices[d])
        if (!contains(d, complex->image(g, d, i).index)) return false;
    return true;
  }
  friend bool operator==(const Stratum& a, const Stratum& b) {
    return a.complex == b.complex && a.open_simplices == b.open_simplices;
  }
};

template <class Pred>
Stratum select_simplices(const ComplexPtr& x, Pred pred) {
  Stratum s;
  s.complex = x;
  s.open_simplices.resize(x->levels());
  for (std::size_t d = 0; d < x->levels(); ++d)
    for (std::uint32_t i = 0; i < x->simplex_count(d); ++i)
      if (pred(d, i)) s.open_simplices[d].push_back(i);
  return s;
}

inline Stratum whole_complex(const ComplexPtr& x) {
  return select_simplices(x, [](std::size_t, std::uint32_t) { return true; });
}

// X^H: simplices all of whose vertices are fixed by H.
inline Stratum fixed_subcomplex(const ComplexPtr& x, const Subgroup& h) {
  auto s = select_simplices(x, [&](std::size_t d, std::uint32_t i) {
    for (auto v : x->simplices(d)[i])
      for (auto g : h.members())
        if (x->vertex_image(g, v) != v) return false;
    return true;
  });
  s.kind = StratumKind::fixed_set;
  s.subgroup = h.members();
  return s;
}

// X_H: simplices whose stabilizer is exactly H.
inline Stratum exact_stratum(const ComplexPtr& x, const Subgroup& h) {
  auto s = select_simplices(x, [&](std::size_t d, std::uint32_t i) { return x->stabilizer(d, i) == h.members(); });
  s.kind = StratumKind::exact_stratum;
  s.subgroup = h.members();
  return s;
}

// X_C: the disjoint union of X_H over H in the class.
inline Stratum class_stratum(const ComplexPtr& x, const SubgroupClass& c) {
  std::set<std::vector<Element>> members;
  for (const auto& h : c.members) members.insert(h.members());
  auto s = select_simplices(x, [&](std::size_t d, std::uint32_t i) { return members.count(x->stabilizer(d, i)) > 0; });
  s.kind = StratumKind::class_stratum;
  s.subgroup = c.representative.members();
  return s;
}

// X^i = union of X^H over |H| ≥ i, for i = 1..|G| (element i-1 is X^i).
inline std::vector<Stratum> filtration(const ComplexPtr& x) {
  std::vector<Stratum> levels;
  for (std::size_t i = 1; i <= x->group()->order(); ++i) {
    auto s = select_simplices(x, [&](std::size_t d, std::uint32_t k) { return x->stabilizer(d, k).size() >= i; });
    s.kind = StratumKind::filtration_level;
    s.level = i;
    levels.push_back(std::move(s));
  }
  return levels;
}

// X^i \ X^{i+1}: simplices whose stabilizer has exactly i elements.
inline Stratum filtration_pair(const ComplexPtr& x, std::size_t i) {
  auto s = select_simplices(x, [&](std::size_t d, std::uint32_t k) { return x->stabilizer(d, k).size() == i; });
  s.kind = StratumKind::filtration_pair;
  s.level = i;
  return s;
}

// ---------------------------------------------------------------------------

struct QuotientComplex {
  ComplexPtr base;                  // possibly subdivided so the quotient is simplicial
  std::size_t subdivisions = 0;     // applied on top of the input complex
  ComplexPtr quotient;              // over the trivial group
  std::vector<std::vector<std::uint32_t>> representatives;  // per dimension: least simplex of each orbit
  std::vector<std::vector<std::uint32_t>> projection;       // per dimension: base simplex -> quotient simplex
};

namespace detail {

// Projected simplices of a free action, or nullopt if the projection is not
// simplicial (a closed simplex meets an orbit twice, or two orbits share a
// vertex-orbit set).
inline std::optional<QuotientComplex> try_quotient(const ComplexPtr& x) {
  const auto& g = *x->group();
  std::vector<std::uint32_t> vertex_orbit(x->vertex_count(), static_cast<std::uint32_t>(-1));
  std::uint32_t orbits = 0;
  for (Vertex v = 0; v < x->vertex_count(); ++v) {
    if (vertex_orbit[v] != static_cast<std::uint32_t>(-1)) continue;
    for (Element e = 0; e < g.order(); ++e) vertex_orbit[x->vertex_image(e, v)] = orbits;
    ++orbits;
  }
  QuotientComplex q;
  q.base = x;
  q.representatives.resize(x->levels());
  q.projection.resize(x->levels());
  std::vector<Simplex> projected;
  std::map<Simplex, std::uint32_t> seen;
  std::vector<std::map<Simplex, std::uint32_t>> per_dim(x->levels());
  for (std::size_t d = 0; d < x->levels(); ++d) {
    q.projection[d].assign(x->simplex_count(d), static_cast<std::uint32_t>(-1));
    for (std::uint32_t i = 0; i < x->simplex_count(d); ++i) {
      if (q.projection[d][i] != static_cast<std::uint32_t>(-1)) continue;
      Simplex img;
      for (auto v : x->simplices(d)[i]) img.push_back(vertex_orbit[v]);
      std::sort(img.begin(), img.end());
      if (std::adjacent_find(img.begin(), img.end()) != img.end()) return std::nullopt;
      if (seen.count(img)) return std::nullopt;
      const auto id = static_cast<std::uint32_t>(q.representatives[d].size());
      seen.emplace(img, id);
      per_dim[d].emplace(img, id);
      q.representatives[d].push_back(i);
      projected.push_back(img);
      for (Element e = 0; e < g.order(); ++e) q.projection[d][x->image(e, d, i).index] = id;
    }
  }
  // Renumber quotient simplices to the canonical (sorted) order used by
  // SimplicialGComplex.
  auto trivial = trivial_group();
  auto quotient = std::make_shared<const SimplicialGComplex>(trivial, orbits, projected,
                                                             std::vector<Permutation>{identity_permutation(orbits)});
  for (std::size_t d = 0; d < x->levels(); ++d) {
    std::vector<std::uint32_t> remap(q.representatives[d].size());
    for (const auto& [simplex, id] : per_dim[d]) remap[id] = *quotient->index_of(simplex);
    std::vector<std::uint32_t> reps(q.representatives[d].size());
    for (std::size_t id = 0; id < remap.size(); ++id) reps[remap[id]] = q.representatives[d][id];
    q.representatives[d] = std::move(reps);
    for (auto& p : q.projection[d]) p = remap[p];
  }
  q.quotient = std::move(quotient);
  return q;
}

}  // namespace detail

// X/G for a free action, subdividing (at most twice) until the projection
// is simplicial. Rejects non-free actions.
inline QuotientComplex quotient_complex(const ComplexPtr& x) {
  if (!x->acts_freely()) throw InputError("quotient_complex", "action is not free");
  ComplexPtr current = x;
  for (std::size_t k = 0;; ++k) {
    if (auto q = detail::try_quotient(current)) {
      q->subdivisions = k;
      return std::move(*q);
    }
    if (k == kMaxSubdivisions) throw InputError("quotient_complex", "quotient not simplicial after subdivision");
    current = barycentric_subdivision(*current);
  }
}

}  // namespace equilef
