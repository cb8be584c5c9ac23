#include <gtest/gtest.h>

#include <set>

#include "equilef/corpus.hpp"
#include "equilef/lefschetz.hpp"
#include "oracles.hpp"

using namespace equilef;

namespace {

Scenario named(const std::string& name) {
  const auto spec = builtin_spec(name);
  if (!spec) throw std::runtime_error("no builtin " + name);
  return build_scenario(*spec);
}

VirtualCharacter values(const GroupPtr& g, std::initializer_list<long> v) {
  VirtualCharacter out(g);
  std::size_t c = 0;
  for (long x : v) out.at_class(c++) = x;
  return out;
}

// A regular action fixes X^g pointwise, so L(g, X^g; E) = χ(X^g) tr ρ(g).
VirtualCharacter fixed_point_oracle(const Scenario& s) {
  VirtualCharacter v(s.group);
  for (std::size_t c = 0; c < s.group->class_count(); ++c) {
    const Element g = s.group->classes()[c].representative;
    const long chi = fixed_subcomplex(s.complex, cyclic_subgroup(s.group, g)).euler_characteristic();
    v.at_class(c) = chi * static_cast<long>(s.lattice.trace(g));
  }
  return v;
}

// The same pointwise reasoning for X_H, which H fixes: χ_c(X_H) · ρ|_H.
VirtualCharacter stratum_euler_oracle(const Scenario& s, const Subgroup& h) {
  const long chi = exact_stratum(s.complex, h).euler_characteristic();
  const auto local = h.as_group();
  VirtualCharacter v(local);
  for (std::size_t c = 0; c < local->class_count(); ++c)
    v.at_class(c) = chi * static_cast<long>(s.lattice.trace(h.to_parent(local->classes()[c].representative)));
  return v;
}

}  // namespace

TEST(Corpus, SizeAndNames) {
  const auto names = builtin_names();
  EXPECT_GE(names.size(), 12u);
  EXPECT_EQ(std::set<std::string>(names.begin(), names.end()).size(), names.size());
  for (const auto& n : names) EXPECT_TRUE(builtin_spec(n).has_value());
  EXPECT_FALSE(builtin_spec("no-such-scenario").has_value());
}

TEST(Theorem, HoldsOnEveryBuiltin) {
  for (const auto& s : builtin_scenarios()) {
    const auto r = verify_theorem(s);
    EXPECT_TRUE(r.induction_agrees) << s.name;
    EXPECT_TRUE(r.isotypic_agrees) << s.name;
    EXPECT_TRUE(r.factorization_agrees) << s.name;
    EXPECT_TRUE(r.integral) << s.name;
    EXPECT_TRUE(r.partition) << s.name;
    EXPECT_TRUE(r.additivity) << s.name;
    EXPECT_EQ(r.terms.size(), conjugacy_classes_of_subgroups(s.group).size());
  }
}

TEST(Theorem, LeftSideMatchesFixedPointOracle) {
  for (const auto& s : builtin_scenarios()) EXPECT_EQ(lhs_character(s), fixed_point_oracle(s)) << s.name;
}

TEST(Theorem, LeftSideExamples) {
  const auto sq = named("square-reflection");
  EXPECT_EQ(lhs_character(sq), values(sq.group, {0, 2}));
  const auto oct = named("octahedron-antipodal");
  EXPECT_EQ(lhs_character(oct), values(oct.group, {2, 0}));
  const auto torus = named("torus-involution");
  EXPECT_EQ(lhs_character(torus), values(torus.group, {0, 4}));
  const auto sign = named("square-reflection-sign");
  EXPECT_EQ(lhs_character(sign), values(sign.group, {0, -2}));
}

TEST(Theorem, TermsMatchPointwiseOracle) {
  for (const auto& s : builtin_scenarios()) {
    VirtualCharacter sum(s.group);
    for (const auto& t : stratum_terms(s)) {
      const auto euler = stratum_euler_oracle(s, t.subgroup);
      EXPECT_EQ(t.euler, euler) << s.name;
      EXPECT_EQ(t.factor * t.normalizer_order, Rational(static_cast<long>(t.subgroup.order())));
      EXPECT_EQ(t.class_size * t.normalizer_order, s.group->order());
      EXPECT_EQ(t.combinatorial_euler, exact_stratum(s.complex, t.subgroup).euler_characteristic());
      const auto ind = oracle::induce_by_transversal(t.subgroup, euler);
      EXPECT_EQ(t.induction_term, t.factor * ind) << s.name;
      sum += t.factor * ind;
    }
    EXPECT_EQ(sum, fixed_point_oracle(s)) << s.name;
  }
}

TEST(Theorem, InductionDecompositionExample) {
  const auto s = named("square-reflection");
  const auto terms = stratum_terms(s);
  ASSERT_EQ(terms.size(), 2u);
  // trivial subgroup: X_1 is two vertices and four open edges
  EXPECT_EQ(terms[0].subgroup.order(), 1u);
  EXPECT_EQ(terms[0].combinatorial_euler, -2);
  EXPECT_EQ(terms[0].factor, make_rational(1, 2));
  EXPECT_EQ(terms[0].induction_term, values(s.group, {-2, 0}));
  // whole group: the two fixed vertices
  EXPECT_EQ(terms[1].combinatorial_euler, 2);
  EXPECT_EQ(terms[1].factor, 1);
  EXPECT_EQ(terms[1].induction_term, values(s.group, {2, 2}));
  EXPECT_EQ(rhs_induction(terms, s.group), values(s.group, {0, 2}));
}

TEST(Theorem, IsotypicCoefficientsMatchInnerProducts) {
  for (const auto& s : builtin_scenarios())
    for (const auto& t : stratum_terms(s)) {
      const auto euler = stratum_euler_oracle(s, t.subgroup);
      for (const auto& row : t.isotypic) {
        const Rational c = inner_product(row.orbit_sum, euler) / static_cast<long>(row.orbit_size);
        EXPECT_EQ(row.coefficient, c) << s.name;
        EXPECT_TRUE(is_integer(row.coefficient));
        Rational alt;
        for (std::size_t j = 0; j < row.multiplicities.size(); ++j) alt += (j % 2 ? -1 : 1) * row.multiplicities[j];
        EXPECT_EQ(alt, row.coefficient);
      }
    }
}

TEST(Theorem, SignCoefficientExample) {
  const auto s = named("square-reflection-sign");
  const auto terms = stratum_terms(s);
  ASSERT_EQ(terms.size(), 2u);
  const auto& top = terms[1];
  ASSERT_EQ(top.subgroup.order(), 2u);
  ASSERT_EQ(top.isotypic.size(), 2u);  // trivial and sign, both rational
  for (const auto& row : top.isotypic) {
    const bool is_sign = row.orbit_sum.at_class(1) == -1;
    EXPECT_EQ(row.coefficient, is_sign ? 2 : 0);
  }
}

TEST(Theorem, TrivialLatticeCoefficientsAreStratumEuler) {
  for (const auto& s : builtin_scenarios()) {
    if (!s.lattice.is_trivial()) continue;
    for (const auto& t : stratum_terms(s))
      for (const auto& row : t.isotypic) {
        const bool trivial = row.orbit_sum == VirtualCharacter::trivial(t.subgroup.as_group());
        EXPECT_EQ(row.coefficient, trivial ? t.combinatorial_euler : 0) << s.name;
      }
  }
}

TEST(Theorem, RepresentativeIndependence) {
  for (const auto& s : builtin_scenarios())
    for (const auto& c : conjugacy_classes_of_subgroups(s.group)) {
      const auto base = stratum_term(s, c.representative);
      for (const auto& m : c.members) {
        const auto other = stratum_term(s, m);
        EXPECT_EQ(other.induction_term, base.induction_term) << s.name;
        EXPECT_EQ(other.isotypic_term, base.isotypic_term) << s.name;
        EXPECT_EQ(other.combinatorial_euler, base.combinatorial_euler);
      }
    }
}

TEST(Theorem, FreeActionHasOnlyTheTrivialTerm) {
  for (const auto& s : builtin_scenarios()) {
    if (!s.complex->acts_freely()) continue;
    const auto terms = stratum_terms(s);
    const long chi = s.complex->euler_characteristic() * static_cast<long>(s.lattice.rank());
    for (const auto& t : terms) {
      if (t.subgroup.order() == 1) {
        EXPECT_EQ(t.induction_term, make_rational(chi, static_cast<long>(s.group->order())) *
                                        VirtualCharacter::regular(s.group))
            << s.name;
      } else {
        EXPECT_TRUE(t.induction_term.is_zero()) << s.name;
      }
    }
  }
}

TEST(Perturbation, EverySiteIsDetected) {
  using T = Perturbation::Target;
  for (const auto& s : builtin_scenarios()) {
    const auto table = character_table(s.group);
    const auto lhs = lhs_character(s, &table);
    const auto terms = stratum_terms(s);
    ASSERT_TRUE(assemble_report(s, lhs, terms, table).passed());
    for (std::size_t i = 0; i < terms.size(); ++i) {
      for (long delta : {-1L, 1L}) {
        const auto term = assemble_report(s, lhs, terms, table, Perturbation{T::term, i, 0, delta});
        EXPECT_FALSE(term.induction_agrees) << s.name;
        EXPECT_TRUE(term.isotypic_agrees);
        EXPECT_FALSE(term.passed());
        for (std::size_t k = 0; k < terms[i].isotypic.size(); ++k) {
          const auto coef = assemble_report(s, lhs, terms, table, Perturbation{T::coefficient, i, k, delta});
          EXPECT_FALSE(coef.isotypic_agrees) << s.name;
          EXPECT_TRUE(coef.induction_agrees);
        }
        const bool nonzero = !terms[i].induction_term.is_zero();
        const auto factor = assemble_report(s, lhs, terms, table, Perturbation{T::factor, i, 0, delta});
        EXPECT_EQ(factor.passed(), !nonzero) << s.name;
      }
      const auto drop = assemble_report(s, lhs, terms, table, Perturbation{T::drop_term, i, 0, 0});
      EXPECT_EQ(drop.induction_agrees, terms[i].induction_term.is_zero()) << s.name;
      EXPECT_EQ(drop.isotypic_agrees, terms[i].isotypic_term.is_zero()) << s.name;
    }
  }
}

TEST(Corollary, HoldsForEveryElement) {
  for (const auto& s : builtin_scenarios()) {
    const auto rows = verify_corollary(s);
    ASSERT_EQ(rows.size(), s.group->order());
    for (const auto& r : rows) {
      EXPECT_TRUE(r.corollary()) << s.name << " g=" << r.element;
      EXPECT_TRUE(r.hopf_agrees()) << s.name << " g=" << r.element;
      EXPECT_EQ(r.order, s.group->element_order(r.element));
    }
    EXPECT_EQ(rows[0].lefschetz, s.complex->euler_characteristic() * static_cast<long>(s.lattice.rank()));
  }
}

TEST(Corollary, SquareReflection) {
  const auto s = named("square-reflection");
  const auto r = verify_corollary(s, 1);
  EXPECT_EQ(r.lefschetz, 2);
  EXPECT_EQ(r.fixed_lefschetz, 2);
  EXPECT_EQ(r.fixed_simplices, 2u);
}

TEST(FreeAction, Examples) {
  const auto oct = verify_free_action(named("octahedron-antipodal"));
  ASSERT_TRUE(oct.applicable);
  EXPECT_TRUE(oct.vanishing());
  EXPECT_EQ(oct.euler, 2);
  EXPECT_EQ(oct.invariant_euler, 1);
  ASSERT_TRUE(oct.quotient_euler.has_value());
  EXPECT_EQ(*oct.quotient_euler, 1);
  EXPECT_EQ(oct.quotient_subdivisions, 1u);
  EXPECT_TRUE(oct.passed(2));

  const auto hex = verify_free_action(named("hexagon-rot3"));
  EXPECT_EQ(hex.invariant_euler, 0);
  EXPECT_EQ(*hex.quotient_euler, 0);

  // no quotient model for a nontrivial lattice
  EXPECT_FALSE(verify_free_action(named("octahedron-antipodal-sign")).quotient_euler.has_value());
  EXPECT_FALSE(verify_free_action(named("square-reflection")).applicable);
  EXPECT_TRUE(verify_free_action(named("square-reflection")).passed(2));
}

TEST(FreeAction, SuiteOnCorpus) {
  std::size_t applicable = 0;
  for (const auto& s : builtin_scenarios()) {
    const auto r = verify_free_action(s);
    EXPECT_EQ(r.applicable, s.complex->acts_freely());
    if (!r.applicable) continue;
    ++applicable;
    EXPECT_TRUE(r.vanishing()) << s.name;
    EXPECT_TRUE(r.covering(s.group->order())) << s.name;
    EXPECT_TRUE(r.quotient_agrees(s.group->order())) << s.name;
  }
  EXPECT_GE(applicable, 4u);
}

TEST(Verdier, Examples) {
  const auto oct = named("octahedron-antipodal");
  const auto v = verify_verdier(oct);
  ASSERT_TRUE(v.applicable);
  EXPECT_EQ(v.multiplier, 1);
  EXPECT_EQ(v.lhs, VirtualCharacter::regular(oct.group));
  EXPECT_TRUE(v.passed());
  // the sign-twisted sphere has invariant Euler characteristic 1 too
  const auto sign = verify_verdier(named("octahedron-antipodal-sign"));
  EXPECT_EQ(sign.multiplier, 1);
  EXPECT_TRUE(sign.passed());
  // a wrong left-hand side is caught
  auto wrong = values(oct.group, {2, 1});
  EXPECT_FALSE(verify_verdier(oct, wrong).passed());
}

TEST(Modp, ProjectivePlane) {
  const auto rp2 = named("rp2");
  const auto two = verify_modp_comparison(rp2, 2);
  EXPECT_EQ(two.rational_dimensions, (std::vector<std::size_t>{1, 0, 0}));
  EXPECT_EQ(two.modp_dimensions, (std::vector<std::size_t>{1, 1, 1}));
  EXPECT_EQ(two.torsion_ranks, (std::vector<std::size_t>{0, 0, 1}));
  EXPECT_TRUE(two.passed());
  EXPECT_NE(two.rational_dimensions, two.modp_dimensions);
  const auto three = verify_modp_comparison(rp2, 3);
  EXPECT_EQ(three.modp_dimensions, three.rational_dimensions);
  EXPECT_TRUE(three.passed());
}

TEST(Modp, CorpusAgrees) {
  for (const auto& s : builtin_scenarios())
    for (std::uint64_t p : {2u, 3u, 5u}) EXPECT_TRUE(verify_modp_comparison(s, p).passed()) << s.name << " " << p;
}

TEST(ScenarioReport, EveryBuiltinPasses) {
  for (const auto& s : builtin_scenarios()) {
    const auto r = verify_scenario(s);
    EXPECT_TRUE(r.passed()) << s.name;
    EXPECT_TRUE(r.lhs_matches_fixed_sets()) << s.name;
    EXPECT_EQ(r.modp.size(), s.primes.size());
    EXPECT_EQ(r.elements.size(), s.group->order());
  }
}
