#pragma once

// Both sides of the equivariant Lefschetz formula
//
//   χ(X, E; Q[G]) = Σ_[H] |H|/|N(H)| · ind_H^G χ_c(X_H, E; Q[H])
//                 = Σ_[H] |H|/|N(H)| · Σ_λ c_λ · ind_H^G Φ_λ
//
// where X_H is the set of simplices with stabilizer exactly H, λ runs over
// the rational irreducibles of H with Galois orbit sum Φ_λ of size s_λ, and
// c_λ = (1/s_λ) Σ_j (-1)^j ⟨Φ_λ, H^j_c(X_H, E) ⊗ Q⟩. That normal form avoids
// Schur indices: the Q-irreducible V_λ has character m_λ Φ_λ and
// End(V_λ) has dimension m_λ² s_λ, so m_λ cancels.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "equilef/char_theory.hpp"
#include "equilef/cohomology.hpp"
#include "equilef/finite_group.hpp"
#include "equilef/gcomplex.hpp"
#include "equilef/scenario.hpp"

namespace equilef {

struct IsotypicRow {
  std::size_t orbit_size = 0;
  VirtualCharacter orbit_sum;          // Φ_λ on H
  std::vector<Rational> multiplicities;  // ⟨Φ_λ, H^j_c⟩ / s_λ per degree
  Rational coefficient;                // c_λ
};

// Everything contributed by one subgroup H (a class representative, or any
// conjugate of one).
struct StratumTerm {
  Subgroup subgroup;
  std::size_t class_size = 0;  // number of conjugates, [G : N(H)]
  std::size_t normalizer_order = 0;
  Rational factor;  // |H| / |N(H)|
  std::size_t simplex_count = 0;
  long combinatorial_euler = 0;            // Σ (-1)^dim over open simplices of X_H
  std::vector<std::size_t> dimensions;     // dim H^j_c(X_H, E ⊗ Q)
  std::vector<VirtualCharacter> degree_characters;  // H on H^j_c(X_H, E ⊗ Q)
  VirtualCharacter euler;                  // χ_c(X_H, E; Q[H])
  bool factorization_agrees = false;       // H^j_c(X_H; Q) ⊗ E|_H against the trace path
  std::vector<IsotypicRow> isotypic;
  VirtualCharacter induction_term;  // factor · ind euler
  VirtualCharacter isotypic_term;   // factor · Σ c_λ ind Φ_λ
};

// Deliberate corruption of one ingredient, used to show that the checks
// are not vacuous.
struct Perturbation {
  enum class Target {
    term,         // χ_c(X_H) += delta · trivial, induction side only
    factor,       // |H|/|N(H)| += delta, both right-hand sides
    coefficient,  // c_λ += delta, isotypic side only
    drop_term,    // omit the [H] term from both right-hand sides
  };
  Target target = Target::term;
  std::size_t class_index = 0;
  std::size_t lambda_index = 0;
  long delta = 1;
};

inline const char* to_string(Perturbation::Target t) {
  switch (t) {
    case Perturbation::Target::term: return "term";
    case Perturbation::Target::factor: return "factor";
    case Perturbation::Target::coefficient: return "coefficient";
    case Perturbation::Target::drop_term: return "drop_term";
  }
  return "?";
}

struct LefschetzReport {
  std::string scenario;
  VirtualCharacter lhs;
  VirtualCharacter rhs_induction;
  VirtualCharacter rhs_isotypic;
  std::vector<StratumTerm> terms;  // one per class in cla(G)
  std::optional<Perturbation> perturbation;

  bool induction_agrees = false;
  bool isotypic_agrees = false;
  bool factorization_agrees = false;
  bool integral = false;     // lhs and both sides are virtual characters, all c_λ integers
  bool partition = false;    // exact strata of all conjugates tile X
  bool additivity = false;   // χ(X) = Σ_[H] [G:N(H)] χ_c(X_H)

  bool passed() const {
    return induction_agrees && isotypic_agrees && factorization_agrees && integral && partition && additivity;
  }
};

// ---------------------------------------------------------------------------

inline VirtualCharacter lhs_character(const Scenario& s, const CharacterTable* table = nullptr) {
  return equivariant_euler_characteristic(whole_complex(s.complex), s.lattice, table);
}

// The [H] term for an arbitrary subgroup H; conjugate subgroups give equal
// induction and isotypic terms.
inline StratumTerm stratum_term(const Scenario& s, const Subgroup& h) {
  const auto& g = s.group;
  StratumTerm t{h, 0, 0, Rational(), 0, 0, {}, {}, {}, false, {}, {}, {}};
  const auto n = normalizer(g, h);
  t.normalizer_order = n.order();
  t.class_size = g->order() / n.order();
  t.factor = make_rational(static_cast<long>(h.order()), static_cast<long>(n.order()));

  const auto y = exact_stratum(s.complex, h);
  t.simplex_count = y.size();
  t.combinatorial_euler = y.euler_characteristic();
  const auto& local = h.as_group();
  const auto table = character_table(local);

  const auto cochains = cochain_complex(y, s.lattice);
  const RationalCohomology coh(cochains);
  t.dimensions = coh.dimensions();
  const std::size_t degrees = t.dimensions.size();
  t.degree_characters.assign(degrees, VirtualCharacter(local));
  for (std::size_t k = 0; k < local->class_count(); ++k) {
    const auto traces = coh.traces(h.to_parent(local->classes()[k].representative));
    for (std::size_t j = 0; j < degrees; ++j) t.degree_characters[j].at_class(k) = traces[j];
  }
  t.euler = VirtualCharacter(local);
  for (std::size_t j = 0; j < degrees; ++j)
    t.euler += Rational(j % 2 ? -1 : 1) * t.degree_characters[j];
  if (!is_integral(t.euler, table))
    throw InvariantViolation("stratum Euler characteristic is not a virtual character");

  // H fixes X_H pointwise, so only the lattice acts.
  const auto plain_cochains = cochain_complex(y, GLattice::trivial(g));
  const RationalCohomology plain(plain_cochains);
  const auto plain_dims = plain.dimensions();
  t.factorization_agrees = true;
  for (std::size_t j = 0; j < degrees; ++j)
    for (std::size_t k = 0; k < local->class_count(); ++k) {
      const long long tr = s.lattice.trace(h.to_parent(local->classes()[k].representative));
      const Rational expected(Integer(static_cast<long>(plain_dims[j])) * Integer(static_cast<long>(tr)));
      if (t.degree_characters[j].at_class(k) != expected) t.factorization_agrees = false;
    }

  for (const auto& lambda : rational_irreducibles(table)) {
    IsotypicRow row{lambda.orbit_size(), lambda.orbit_sum, {}, Rational(0)};
    const Rational size(Integer(static_cast<unsigned long>(row.orbit_size)));
    for (std::size_t j = 0; j < degrees; ++j) {
      const Rational m = inner_product(lambda.orbit_sum, t.degree_characters[j]) / size;
      if (!is_integer(m)) throw InvariantViolation("isotypic multiplicity is not an integer");
      row.multiplicities.push_back(m);
      row.coefficient += (j % 2 ? -1 : 1) * m;
    }
    t.isotypic.push_back(std::move(row));
  }

  t.induction_term = t.factor * induce(h, t.euler);
  t.isotypic_term = VirtualCharacter(g);
  for (const auto& row : t.isotypic) t.isotypic_term += (t.factor * row.coefficient) * induce(h, row.orbit_sum);
  return t;
}

inline VirtualCharacter rhs_induction(const std::vector<StratumTerm>& terms, const GroupPtr& g,
                                      const std::optional<Perturbation>& p = std::nullopt) {
  using T = Perturbation::Target;
  VirtualCharacter sum(g);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    const bool hit = p && p->class_index == i;
    if (hit && p->target == T::drop_term) continue;
    Rational factor = t.factor;
    VirtualCharacter euler = t.euler;
    if (hit && p->target == T::factor) factor += p->delta;
    if (hit && p->target == T::term) euler += Rational(p->delta) * VirtualCharacter::trivial(euler.group());
    sum += factor * induce(t.subgroup, euler);
  }
  return sum;
}

inline VirtualCharacter rhs_isotypic(const std::vector<StratumTerm>& terms, const GroupPtr& g,
                                     const std::optional<Perturbation>& p = std::nullopt) {
  using T = Perturbation::Target;
  VirtualCharacter sum(g);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    const bool hit = p && p->class_index == i;
    if (hit && p->target == T::drop_term) continue;
    Rational factor = t.factor;
    if (hit && p->target == T::factor) factor += p->delta;
    for (std::size_t k = 0; k < t.isotypic.size(); ++k) {
      Rational c = t.isotypic[k].coefficient;
      if (hit && p->target == T::coefficient && p->lambda_index == k) c += p->delta;
      sum += (factor * c) * induce(t.subgroup, t.isotypic[k].orbit_sum);
    }
  }
  return sum;
}

inline std::vector<StratumTerm> stratum_terms(const Scenario& s) {
  std::vector<StratumTerm> terms;
  for (const auto& c : conjugacy_classes_of_subgroups(s.group)) terms.push_back(stratum_term(s, c.representative));
  return terms;
}

// Reassembles the right-hand sides from precomputed terms, optionally with
// one ingredient perturbed. The left-hand side is taken as given.
inline LefschetzReport assemble_report(const Scenario& s, VirtualCharacter lhs, std::vector<StratumTerm> terms,
                                       const CharacterTable& table, const std::optional<Perturbation>& p = std::nullopt) {
  LefschetzReport r;
  r.scenario = s.name;
  r.perturbation = p;
  r.lhs = std::move(lhs);
  r.terms = std::move(terms);
  r.rhs_induction = rhs_induction(r.terms, s.group, p);
  r.rhs_isotypic = rhs_isotypic(r.terms, s.group, p);
  r.induction_agrees = r.lhs == r.rhs_induction;
  r.isotypic_agrees = r.lhs == r.rhs_isotypic;
  r.factorization_agrees = true;
  r.integral = is_integral(r.lhs, table) && is_integral(r.rhs_induction, table) && is_integral(r.rhs_isotypic, table);
  std::size_t covered = 0;
  long euler = 0;
  for (const auto& t : r.terms) {
    r.factorization_agrees = r.factorization_agrees && t.factorization_agrees;
    for (const auto& row : t.isotypic) r.integral = r.integral && is_integer(row.coefficient);
    covered += t.class_size * t.simplex_count;
    euler += static_cast<long>(t.class_size) * t.combinatorial_euler;
  }
  r.partition = covered == s.complex->total_simplex_count();
  r.additivity = euler == s.complex->euler_characteristic();
  return r;
}

inline LefschetzReport verify_theorem(const Scenario& s, const std::optional<Perturbation>& p = std::nullopt) {
  const auto table = character_table(s.group);
  return assemble_report(s, lhs_character(s, &table), stratum_terms(s), table, p);
}

// ---------------------------------------------------------------------------

struct ElementRow {
  Element element = 0;
  std::size_t order = 1;
  Rational lefschetz;        // L(g, X; E)
  Rational fixed_lefschetz;  // L(g, X^⟨g⟩; E)
  Rational hopf;             // chain-level trace
  std::size_t fixed_simplices = 0;
  bool corollary() const { return lefschetz == fixed_lefschetz; }
  bool hopf_agrees() const { return lefschetz == hopf; }
};

inline ElementRow element_row(const Scenario& s, const RationalCohomology& whole, Element g) {
  ElementRow row;
  row.element = g;
  row.order = s.group->element_order(g);
  row.lefschetz = checked_integer(whole.lefschetz(g), "Lefschetz number");
  const auto fixed = fixed_subcomplex(s.complex, cyclic_subgroup(s.group, g));
  row.fixed_simplices = fixed.size();
  row.fixed_lefschetz = lefschetz_number(fixed, g, s.lattice);
  row.hopf = hopf_trace(s.complex, g, s.lattice);
  return row;
}

// L(g, X) = L(g, X^⟨g⟩): the formula for the cyclic group ⟨g⟩, where
// every proper subgroup term induces to something vanishing at g.
inline ElementRow verify_corollary(const Scenario& s, Element g) {
  const auto c = cochain_complex(whole_complex(s.complex), s.lattice);
  return element_row(s, RationalCohomology(c), g);
}

inline std::vector<ElementRow> verify_corollary(const Scenario& s) {
  const auto c = cochain_complex(whole_complex(s.complex), s.lattice);
  const RationalCohomology whole(c);
  std::vector<ElementRow> rows;
  for (Element g = 0; g < s.group->order(); ++g) rows.push_back(element_row(s, whole, g));
  return rows;
}

// ---------------------------------------------------------------------------

struct FreeActionReport {
  bool applicable = false;
  std::vector<std::pair<Element, Rational>> lefschetz;  // g ≠ 1
  long euler = 0;                 // χ(X, E; Q)
  long invariant_euler = 0;       // χ of H(X, E)^G ⊗ Q, the model of X/G with π_*^G E
  std::optional<long> quotient_euler;  // χ(X/G), trivial lattice only
  std::size_t quotient_subdivisions = 0;

  bool vanishing() const {
    for (const auto& [g, l] : lefschetz)
      if (sgn(l) != 0) return false;
    return true;
  }
  bool covering(std::size_t order) const { return euler == static_cast<long>(order) * invariant_euler; }
  bool quotient_agrees(std::size_t order) const {
    return !quotient_euler ||
           (*quotient_euler == invariant_euler && euler == static_cast<long>(order) * *quotient_euler);
  }
  bool passed(std::size_t order) const { return !applicable || (vanishing() && covering(order) && quotient_agrees(order)); }
};

inline FreeActionReport verify_free_action(const Scenario& s) {
  FreeActionReport r;
  r.applicable = s.complex->acts_freely();
  if (!r.applicable) return r;
  const auto c = cochain_complex(whole_complex(s.complex), s.lattice);
  const RationalCohomology whole(c);
  for (Element g = 1; g < s.group->order(); ++g) r.lefschetz.emplace_back(g, checked_integer(whole.lefschetz(g), "Lefschetz number"));
  r.euler = alternating_sum(whole.dimensions());
  r.invariant_euler = alternating_sum(invariant_cohomology(s.complex, s.lattice));
  if (s.lattice.is_trivial() && s.lattice.rank() == 1) {
    const auto q = quotient_complex(s.complex);
    r.quotient_euler = q.quotient->euler_characteristic();
    r.quotient_subdivisions = q.subdivisions;
  }
  return r;
}

struct VerdierReport {
  bool applicable = false;
  long multiplier = 0;  // invariant Euler characteristic
  VirtualCharacter lhs;
  VirtualCharacter expected;  // multiplier · regular character
  bool passed() const { return !applicable || lhs == expected; }
};

inline VerdierReport verify_verdier(const Scenario& s, const std::optional<VirtualCharacter>& lhs = std::nullopt) {
  VerdierReport r;
  r.applicable = s.complex->acts_freely();
  if (!r.applicable) return r;
  r.lhs = lhs ? *lhs : lhs_character(s);
  r.multiplier = alternating_sum(invariant_cohomology(s.complex, s.lattice));
  r.expected = Rational(r.multiplier) * VirtualCharacter::regular(s.group);
  return r;
}

// ---------------------------------------------------------------------------

struct ModpReport {
  std::uint64_t prime = 0;
  std::vector<std::size_t> rational_dimensions;
  std::vector<std::size_t> modp_dimensions;
  std::vector<std::size_t> betti;
  std::vector<std::vector<Integer>> torsion;
  std::vector<std::size_t> torsion_ranks;  // r_i
  long rational_euler = 0;
  long modp_euler = 0;

  bool euler_agrees() const { return rational_euler == modp_euler; }
  // dim_{F_p} H^i = b_i + r_i + r_{i+1}, and b_i = dim_Q H^i.
  bool universal_coefficients() const {
    if (betti != rational_dimensions) return false;
    for (std::size_t i = 0; i < modp_dimensions.size(); ++i) {
      const std::size_t next = i + 1 < torsion_ranks.size() ? torsion_ranks[i + 1] : 0;
      if (modp_dimensions[i] != betti[i] + torsion_ranks[i] + next) return false;
    }
    return true;
  }
  bool passed() const { return euler_agrees() && universal_coefficients(); }
};

inline ModpReport verify_modp_comparison(const Scenario& s, std::uint64_t p) {
  ModpReport r;
  r.prime = p;
  const auto whole = whole_complex(s.complex);
  const auto q = cohomology(cochain_complex(whole, s.lattice, Coefficients::rationals()));
  const auto z = cohomology(cochain_complex(whole, s.lattice, Coefficients::integers()));
  const auto m = modp_euler_characteristic(s.complex, s.lattice, p);
  r.rational_dimensions = q.dimensions;
  r.rational_euler = q.euler_characteristic();
  r.modp_dimensions = m.dimensions;
  r.modp_euler = m.euler_characteristic;
  r.betti = z.dimensions;
  r.torsion = z.torsion;
  for (std::size_t i = 0; i < z.torsion.size(); ++i) r.torsion_ranks.push_back(z.p_torsion_rank(i, p));
  return r;
}

// ---------------------------------------------------------------------------

struct ScenarioReport {
  std::string scenario;
  std::string description;
  std::size_t group_order = 1;
  std::size_t subdivisions = 0;
  std::vector<std::size_t> simplex_counts;
  std::size_t lattice_rank = 1;
  LefschetzReport theorem;
  std::vector<ElementRow> elements;
  FreeActionReport free_action;
  VerdierReport verdier;
  std::vector<ModpReport> modp;
  double seconds = 0;

  bool corollary_passed() const {
    for (const auto& e : elements)
      if (!e.corollary()) return false;
    return true;
  }
  bool hopf_passed() const {
    for (const auto& e : elements)
      if (!e.hopf_agrees()) return false;
    return true;
  }
  // trace_at(lhs, g) = L(g, X^⟨g⟩).
  bool lhs_matches_fixed_sets() const {
    for (const auto& e : elements)
      if (theorem.lhs.at(e.element) != e.fixed_lefschetz) return false;
    return true;
  }
  bool modp_passed() const {
    for (const auto& m : modp)
      if (!m.passed()) return false;
    return true;
  }
  bool passed() const {
    return theorem.passed() && corollary_passed() && hopf_passed() && lhs_matches_fixed_sets() &&
           free_action.passed(group_order) && verdier.passed() && modp_passed();
  }
};

inline ScenarioReport verify_scenario(const Scenario& s, const std::vector<std::uint64_t>& primes) {
  const auto start = std::chrono::steady_clock::now();
  ScenarioReport r;
  r.scenario = s.name;
  r.description = s.description;
  r.group_order = s.group->order();
  r.subdivisions = s.subdivisions;
  for (std::size_t d = 0; d < s.complex->levels(); ++d) r.simplex_counts.push_back(s.complex->simplex_count(d));
  r.lattice_rank = s.lattice.rank();
  r.theorem = verify_theorem(s);
  r.elements = verify_corollary(s);
  r.free_action = verify_free_action(s);
  r.verdier = verify_verdier(s, r.theorem.lhs);
  for (auto p : primes) r.modp.push_back(verify_modp_comparison(s, p));
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline ScenarioReport verify_scenario(const Scenario& s) { return verify_scenario(s, s.primes); }

}  // namespace equilef
