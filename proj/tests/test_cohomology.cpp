#include <gtest/gtest.h>

#include <random>

#include "equilef/cohomology.hpp"
#include "equilef/corpus.hpp"
#include "oracles.hpp"

using namespace equilef;

namespace {

Scenario named(const std::string& name) {
  const auto spec = builtin_spec(name);
  if (!spec) throw std::runtime_error("no builtin " + name);
  return build_scenario(*spec);
}

IntMatrix product(const IntMatrix& a, const IntMatrix& b) { return a * b; }

bool is_zero(const IntMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) return false;
  return true;
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

// Every stratum the theorem and its proof look at.
std::vector<Stratum> interesting_strata(const Scenario& s) {
  std::vector<Stratum> out{whole_complex(s.complex)};
  for (const auto& h : subgroups(s.group)) {
    out.push_back(fixed_subcomplex(s.complex, h));
    out.push_back(exact_stratum(s.complex, h));
  }
  for (const auto& f : filtration(s.complex)) out.push_back(f);
  return out;
}

}  // namespace

TEST(CochainComplex, DifferentialSquaresToZero) {
  for (const auto& s : builtin_scenarios())
    for (const auto& y : interesting_strata(s)) {
      const auto c = cochain_complex(y, s.lattice);
      for (std::size_t q = 0; q + 1 < c.degrees(); ++q)
        EXPECT_TRUE(is_zero(product(c.differential(q + 1), c.differential(q)))) << s.name;
    }
}

TEST(CochainComplex, AutomorphismsCommuteWithDifferentialAndCompose) {
  for (const auto& s : builtin_scenarios()) {
    const auto c = cochain_complex(whole_complex(s.complex), s.lattice);
    for (Element g = 0; g < s.group->order(); ++g)
      for (std::size_t q = 0; q < c.degrees(); ++q) {
        const auto a = c.automorphism(q, g);
        if (q + 1 < c.degrees()) {
          EXPECT_EQ(product(c.differential(q), a), product(c.automorphism(q + 1, g), c.differential(q))) << s.name;
        }
        for (Element h = 0; h < s.group->order(); ++h)
          EXPECT_EQ(c.automorphism(q, s.group->mul(g, h)), product(a, c.automorphism(q, h))) << s.name;
      }
  }
}

TEST(CochainComplex, RejectsNonInvariantStratum) {
  const auto s = named("hexagon-rot3");
  // a single vertex is not preserved by the rotation
  auto y = select_simplices(s.complex, [](std::size_t d, std::uint32_t i) { return d == 0 && i == 0; });
  const auto c = cochain_complex(y, s.lattice);
  EXPECT_THROW(c.automorphism(0, 1), InputError);
  EXPECT_THROW(hopf_trace(y, 1, s.lattice), InputError);
  EXPECT_THROW(equivariant_euler_characteristic(y, s.lattice), InputError);
}

TEST(RationalCohomology, SmallExamples) {
  const auto point = named("point");
  EXPECT_EQ(cohomology(cochain_complex(whole_complex(point.complex), point.lattice)).dimensions,
            std::vector<std::size_t>{1});

  const auto edge = build_complex(2, {{0, 1}}, trivial_group(), {}).complex;
  const auto open = select_simplices(edge, [](std::size_t d, std::uint32_t) { return d == 1; });
  const auto l = GLattice::trivial(edge->group());
  EXPECT_EQ(cohomology(cochain_complex(open, l)).dimensions, (std::vector<std::size_t>{0, 1}));
  // half-open interval: compactly supported cohomology vanishes
  const auto half = select_simplices(edge, [](std::size_t d, std::uint32_t i) { return d == 1 || i == 0; });
  EXPECT_EQ(cohomology(cochain_complex(half, l)).dimensions, (std::vector<std::size_t>{0, 0}));

  const auto square = named("square-reflection");
  EXPECT_EQ(cohomology(cochain_complex(whole_complex(square.complex), square.lattice)).dimensions,
            (std::vector<std::size_t>{1, 1}));
  const auto torus = named("torus-involution");
  EXPECT_EQ(cohomology(cochain_complex(whole_complex(torus.complex), torus.lattice)).dimensions,
            (std::vector<std::size_t>{1, 2, 1}));
  const auto sphere = named("octahedron-antipodal");
  EXPECT_EQ(cohomology(cochain_complex(whole_complex(sphere.complex), sphere.lattice)).dimensions,
            (std::vector<std::size_t>{1, 0, 1}));
}

TEST(RationalCohomology, TracesExamples) {
  const auto square = named("square-reflection");
  const auto c = cochain_complex(whole_complex(square.complex), square.lattice);
  RationalCohomology h(c);
  EXPECT_EQ(h.traces(1), (std::vector<Rational>{Rational(1), Rational(-1)}));
  EXPECT_EQ(h.lefschetz(1), 2);

  // sign lattice: the reflection now acts by -1 on H^0 and +1 on H^1
  const auto sign = named("square-reflection-sign");
  const auto cs = cochain_complex(whole_complex(sign.complex), sign.lattice);
  RationalCohomology hs(cs);
  EXPECT_EQ(hs.traces(1), (std::vector<Rational>{Rational(-1), Rational(1)}));

  // antipodal map of the sphere reverses orientation
  const auto sphere = named("octahedron-antipodal");
  const auto co = cochain_complex(whole_complex(sphere.complex), sphere.lattice);
  RationalCohomology ho(co);
  EXPECT_EQ(ho.traces(1), (std::vector<Rational>{Rational(1), Rational(0), Rational(-1)}));
}

TEST(RationalCohomology, IdentityTracesAreDimensionsTimesRank) {
  for (const auto& s : builtin_scenarios())
    for (const auto& y : interesting_strata(s)) {
      const auto c = cochain_complex(y, s.lattice);
      RationalCohomology h(c);
      const auto dims = h.dimensions();
      const auto tr = h.traces(0);
      for (std::size_t q = 0; q < dims.size(); ++q) EXPECT_EQ(tr[q], static_cast<long>(dims[q])) << s.name;
    }
}

TEST(RationalCohomology, MatchesRankFormula) {
  for (const auto& s : builtin_scenarios())
    for (const auto& y : interesting_strata(s)) {
      const auto c = cochain_complex(y, s.lattice);
      const auto dims = RationalCohomology(c).dimensions();
      for (std::size_t q = 0; q < c.degrees(); ++q) {
        const std::size_t out = rank(c.differential(q));
        const std::size_t in = q ? rank(c.differential(q - 1)) : 0;
        EXPECT_EQ(dims[q], c.dimension(q) - out - in);
      }
    }
}

TEST(Cohomology, EulerPoincare) {
  for (const auto& s : builtin_scenarios())
    for (const auto& y : interesting_strata(s))
      for (auto coeffs : {Coefficients::rationals(), Coefficients::integers(), Coefficients::modulo(2),
                          Coefficients::modulo(3)}) {
        const auto h = cohomology(cochain_complex(y, s.lattice, coeffs));
        EXPECT_EQ(h.euler_characteristic(), h.chain_euler_characteristic()) << s.name << " " << coeffs.name();
        EXPECT_EQ(h.chain_euler_characteristic(), y.euler_characteristic() * static_cast<long>(s.lattice.rank()));
      }
}

TEST(Cohomology, ProjectivePlane) {
  const auto rp2 = named("rp2");
  const auto y = whole_complex(rp2.complex);
  const auto z = cohomology(cochain_complex(y, rp2.lattice, Coefficients::integers()));
  EXPECT_EQ(z.dimensions, (std::vector<std::size_t>{1, 0, 0}));
  ASSERT_EQ(z.torsion.size(), 3u);
  EXPECT_TRUE(z.torsion[0].empty());
  EXPECT_TRUE(z.torsion[1].empty());
  EXPECT_EQ(z.torsion[2], std::vector<Integer>{Integer(2)});
  EXPECT_EQ(cohomology(cochain_complex(y, rp2.lattice, Coefficients::modulo(2))).dimensions,
            (std::vector<std::size_t>{1, 1, 1}));
  EXPECT_EQ(cohomology(cochain_complex(y, rp2.lattice, Coefficients::modulo(3))).dimensions,
            (std::vector<std::size_t>{1, 0, 0}));
  EXPECT_EQ(cohomology(cochain_complex(y, rp2.lattice)).dimensions, (std::vector<std::size_t>{1, 0, 0}));
}

TEST(Cohomology, UniversalCoefficients) {
  for (const auto& s : builtin_scenarios())
    for (const auto& y : interesting_strata(s)) {
      const auto z = cohomology(cochain_complex(y, s.lattice, Coefficients::integers()));
      const auto q = cohomology(cochain_complex(y, s.lattice));
      EXPECT_EQ(z.dimensions, q.dimensions) << s.name;
      for (std::uint64_t p : {2u, 3u, 5u}) {
        const auto f = cohomology(cochain_complex(y, s.lattice, Coefficients::modulo(p)));
        for (std::size_t i = 0; i < f.dimensions.size(); ++i)
          EXPECT_EQ(f.dimensions[i], z.dimensions[i] + z.p_torsion_rank(i, p) + z.p_torsion_rank(i + 1, p))
              << s.name << " p=" << p << " degree " << i;
      }
    }
}

TEST(Cohomology, TracesOnlyOverRationals) {
  const auto s = named("square-reflection");
  const auto y = whole_complex(s.complex);
  EXPECT_THROW(cohomology(cochain_complex(y, s.lattice, Coefficients::integers()), Element{1}), InputError);
  EXPECT_THROW(cohomology(cochain_complex(y, s.lattice, Coefficients::modulo(2)), Element{1}), InputError);
  EXPECT_THROW(Coefficients::modulo(4), InputError);
  EXPECT_EQ(cohomology(cochain_complex(y, s.lattice), Element{1}).traces, (std::vector<Rational>{1, -1}));
}

TEST(SmithNormalForm, MatchesDeterminantalDivisors) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
    auto m = random_matrix(rng, rows, cols, trial % 2 ? 3 : 9);
    if (trial % 5 == 0 && rows > 1)  // force some rank deficiency
      for (std::size_t j = 0; j < cols; ++j) m(rows - 1, j) = 2 * m(0, j);
    const auto z = to_integer(m);
    const auto ours = elementary_divisors(z);
    EXPECT_EQ(ours, oracle::elementary_divisors_by_minors(z));
    for (std::size_t i = 1; i < ours.size(); ++i) EXPECT_EQ(ours[i] % ours[i - 1], 0);
    EXPECT_EQ(rank(m), oracle::rank_by_minors(z));
    for (std::uint64_t p : {2u, 3u, 5u}) {
      std::size_t units = 0;
      for (const auto& d : ours) units += !mpz_divisible_ui_p(d.get_mpz_t(), p);
      EXPECT_EQ(rank_mod(m, p), units);
    }
  }
}

TEST(SmithNormalForm, Examples) {
  IntMatrix m(2, 2);
  m(0, 0) = 2;
  m(0, 1) = 4;
  m(1, 0) = 6;
  m(1, 1) = 8;
  EXPECT_EQ(elementary_divisors(to_integer(m)), (std::vector<Integer>{2, 4}));
  EXPECT_TRUE(elementary_divisors(to_integer(IntMatrix(3, 2))).empty());
}

TEST(HopfTrace, EqualsLefschetzNumber) {
  for (const auto& s : builtin_scenarios())
    for (Element g = 0; g < s.group->order(); ++g) {
      EXPECT_EQ(hopf_trace(s.complex, g, s.lattice), lefschetz_number(s.complex, g, s.lattice)) << s.name;
      // also on invariant strata
      const auto h = cyclic_subgroup(s.group, g);
      for (const auto& y : {fixed_subcomplex(s.complex, h), exact_stratum(s.complex, h)})
        if (y.invariant_under(g)) {
          EXPECT_EQ(hopf_trace(y, g, s.lattice), lefschetz_number(y, g, s.lattice));
        }
    }
}

TEST(EquivariantEuler, Examples) {
  const auto s = named("square-reflection");
  const auto chi = equivariant_euler_characteristic(whole_complex(s.complex), s.lattice);
  EXPECT_EQ(chi.at(0), 0);
  EXPECT_EQ(chi.at(1), 2);

  const auto sign = named("square-reflection-sign");
  const auto fixed = fixed_subcomplex(sign.complex, whole_group(sign.group));
  const auto f = equivariant_euler_characteristic(fixed, sign.lattice);
  EXPECT_EQ(f.at(0), 2);
  EXPECT_EQ(f.at(1), -2);

  // restricted to the trivial subgroup: just the Euler characteristic times the rank
  const auto regular = named("triangle-s3-regular");
  const auto t = equivariant_euler_characteristic(whole_complex(regular.complex), trivial_subgroup(regular.group),
                                                  regular.lattice);
  EXPECT_EQ(t.at(0), 0);
}

TEST(EquivariantEuler, ValueAtIdentityIsRankTimesEuler) {
  for (const auto& s : builtin_scenarios())
    for (const auto& h : subgroups(s.group)) {
      const auto y = exact_stratum(s.complex, h);
      const auto chi = equivariant_euler_characteristic(y, normalizer(s.group, h), s.lattice);
      EXPECT_EQ(chi.at(0), y.euler_characteristic() * static_cast<long>(s.lattice.rank())) << s.name;
    }
}

TEST(InvariantCohomology, Examples) {
  auto invariant = [](const std::string& name) {
    const auto s = named(name);
    return invariant_cohomology(s.complex, s.lattice);
  };
  EXPECT_EQ(invariant("hexagon-rot3"), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(invariant("square-reflection"), (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(invariant("octahedron-antipodal"), (std::vector<std::size_t>{1, 0, 0}));
}

TEST(InvariantCohomology, EulerIsAverageOfLefschetzNumbers) {
  for (const auto& s : builtin_scenarios()) {
    Rational avg;
    for (Element g = 0; g < s.group->order(); ++g) avg += lefschetz_number(s.complex, g, s.lattice);
    avg /= static_cast<long>(s.group->order());
    EXPECT_EQ(Rational(alternating_sum(invariant_cohomology(s.complex, s.lattice))), avg) << s.name;
  }
}

TEST(ModpEuler, AgreesWithRational) {
  for (const auto& s : builtin_scenarios())
    for (std::uint64_t p : {2u, 3u, 5u, 7u}) {
      const auto m = modp_euler_characteristic(s.complex, s.lattice, p);
      EXPECT_EQ(m.euler_characteristic, s.complex->euler_characteristic() * static_cast<long>(s.lattice.rank()));
      EXPECT_EQ(m.prime, p);
    }
  const auto point = named("point");
  EXPECT_THROW(modp_euler_characteristic(point.complex, point.lattice, 6), InputError);
}

TEST(GLattice, Validation) {
  const auto g = cyclic_group(2);
  IntMatrix two(1, 1);
  two(0, 0) = 2;
  try {
    GLattice::from_generators(g, 1, {two});
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(e.where(), "lattice/action/0");
    EXPECT_NE(std::string(e.what()).find("not invertible over integers"), std::string::npos);
  }
  // order-3 matrix for an order-2 generator
  IntMatrix r(2, 2);
  r(0, 1) = -1;
  r(1, 0) = 1;
  r(1, 1) = -1;
  try {
    GLattice::from_generators(g, 2, {r});
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("violates the group relation"), std::string::npos);
  }
  EXPECT_THROW(GLattice::from_generators(g, 2, {two}), InputError);
  EXPECT_THROW(GLattice::from_generators(g, 1, {}), InputError);
}

TEST(GLattice, CharactersOfStandardLattices) {
  const auto g = symmetric_group(3);
  EXPECT_EQ(GLattice::regular(g).character(), VirtualCharacter::regular(g));
  EXPECT_EQ(GLattice::trivial(g, 2).character(), Rational(2) * VirtualCharacter::trivial(g));
  const auto sign = GLattice::sign(g, {-1, 1});
  EXPECT_EQ(inner_product(sign.character(), sign.character()), 1);
  EXPECT_EQ(inner_product(sign.character(), VirtualCharacter::trivial(g)), 0);
  EXPECT_TRUE(GLattice::trivial(g).is_trivial());
  EXPECT_FALSE(sign.is_trivial());
}
