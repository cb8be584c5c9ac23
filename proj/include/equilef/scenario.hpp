#pragma once

// A scenario bundles a group, a simplicial complex with a regular action and
// a coefficient lattice. ScenarioSpec is the raw, serializable description;
// build_scenario validates it.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "equilef/cohomology.hpp"
#include "equilef/finite_group.hpp"
#include "equilef/gcomplex.hpp"

namespace equilef {

inline constexpr int kSchemaVersion = 1;

struct LatticeSpec {
  std::size_t rank = 1;
  std::vector<IntMatrix> generators;  // one per group generator

  friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;
};

struct ScenarioSpec {
  int schema_version = kSchemaVersion;
  std::string name;
  std::string description;
  // group
  std::size_t degree = 1;
  std::vector<Permutation> generators;
  // complex
  std::size_t vertices = 1;
  std::vector<Simplex> maximal_simplices;
  std::vector<Permutation> vertex_action;  // one per group generator
  // coefficients; absent means the trivial lattice Z
  std::optional<LatticeSpec> lattice;
  // options
  std::vector<std::uint64_t> primes{2, 3, 5};
  std::size_t subdivisions = 0;

  friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

struct Scenario {
  std::string name;
  std::string description;
  GroupPtr group;
  ComplexPtr complex;
  GLattice lattice;
  std::size_t subdivisions = 0;
  std::vector<std::uint64_t> primes;
  ScenarioSpec spec;
};

inline Scenario build_scenario(const ScenarioSpec& spec) {
  if (spec.schema_version != kSchemaVersion)
    throw InputError("schema_version", "unsupported schema version " + std::to_string(spec.schema_version));
  for (auto p : spec.primes)
    if (!is_prime(p)) throw InputError("options/primes", std::to_string(p) + " is not prime");
  if (spec.subdivisions > kMaxSubdivisions)
    throw InputError("options/subdivisions", "at most " + std::to_string(kMaxSubdivisions) + " subdivisions");
  Scenario s;
  s.name = spec.name;
  s.description = spec.description;
  s.group = group_from_permutations(spec.degree, spec.generators);
  auto built = build_complex(spec.vertices, spec.maximal_simplices, s.group, spec.vertex_action, spec.subdivisions);
  s.complex = built.complex;
  s.subdivisions = built.subdivisions;
  if (spec.lattice)
    s.lattice = GLattice::from_generators(s.group, spec.lattice->rank, spec.lattice->generators);
  else
    s.lattice = GLattice::trivial(s.group);
  s.primes = spec.primes;
  s.spec = spec;
  return s;
}

}  // namespace equilef
