// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Every comparison is exact.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>

#include "equilef/corpus.hpp"
#include "equilef/lefschetz.hpp"

using namespace equilef;

namespace {

struct Line {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = "first failure: " + what;
    ok = ok && cond;
  }
};

int failures = 0;

void report(int n, const Line& l, const std::string& summary) {
  std::printf("criterion %d: %s (%s)\n", n, l.ok ? "PASS" : "FAIL", l.ok ? summary.c_str() : l.detail.c_str());
  if (!l.ok) ++failures;
}

VirtualCharacter random_character(const GroupPtr& g, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-4, 4);
  VirtualCharacter v(g);
  for (std::size_t c = 0; c < g->class_count(); ++c) v.at_class(c) = d(rng);
  return v;
}

}  // namespace

int main() {
  const auto scenarios = builtin_scenarios();

  // 1. Theorem identity over the corpus, timed.
  {
    Line l;
    const auto start = std::chrono::steady_clock::now();
    std::size_t free = 0, fixed = 0, nontrivial_lattice = 0;
    for (const auto& s : scenarios) {
      const auto r = verify_theorem(s);
      l.require(r.passed(), s.name);
      l.require(r.lhs == r.rhs_induction && r.lhs == r.rhs_isotypic, s.name + " classwise");
      free += s.complex->acts_freely();
      fixed += !fixed_subcomplex(s.complex, whole_group(s.group)).empty();
      nontrivial_lattice += !s.lattice.is_trivial();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    l.require(scenarios.size() >= 12, "corpus has fewer than 12 scenarios");
    l.require(free > 0 && fixed > 0 && nontrivial_lattice > 0, "corpus does not span free/fixed actions and lattices");
    l.require(seconds < 10.0, "runtime " + std::to_string(seconds) + " s");
    report(1, l, std::to_string(scenarios.size()) + " scenarios, " + std::to_string(free) + " free, " +
                     std::to_string(nontrivial_lattice) + " with nontrivial lattice, " + std::to_string(seconds) + " s");
  }

  // 2. L(g, X) = L(g, X^<g>) for every element.
  {
    Line l;
    std::size_t rows = 0;
    for (const auto& s : scenarios)
      for (const auto& r : verify_corollary(s)) {
        ++rows;
        l.require(r.corollary(), s.name + " g=" + std::to_string(r.element));
      }
    report(2, l, std::to_string(rows) + " (scenario, g) pairs");
  }

  // 3. Free actions: vanishing, covering, Verdier.
  {
    Line l;
    std::size_t count = 0, with_quotient = 0;
    for (const auto& s : scenarios) {
      const auto f = verify_free_action(s);
      if (!f.applicable) continue;
      ++count;
      const auto n = s.group->order();
      l.require(f.vanishing(), s.name + " L(g) != 0");
      if (f.quotient_euler) {
        ++with_quotient;
        l.require(f.euler == static_cast<long>(n) * *f.quotient_euler, s.name + " chi(X) != |G| chi(X/G)");
      }
      l.require(f.passed(n), s.name);
      const auto v = verify_verdier(s);
      l.require(v.passed(), s.name + " lhs is not a multiple of the regular character");
    }
    l.require(count > 0 && with_quotient > 0, "no free trivial-lattice scenario");
    report(3, l, std::to_string(count) + " free scenarios, " + std::to_string(with_quotient) + " with quotient complex");
  }

  // 4. Mod-p Euler characteristics and universal coefficients.
  {
    Line l;
    bool differing = false;
    for (const auto& s : scenarios)
      for (std::uint64_t p : {2u, 3u, 5u}) {
        const auto m = verify_modp_comparison(s, p);
        l.require(m.euler_agrees(), s.name + " p=" + std::to_string(p) + " Euler");
        l.require(m.universal_coefficients(), s.name + " p=" + std::to_string(p) + " b_i + r_i + r_{i+1}");
        if (s.name == "rp2" && p == 2) differing = m.modp_dimensions != m.rational_dimensions;
      }
    l.require(differing, "projective plane dimensions over F2 do not differ from Q");
    report(4, l, std::to_string(scenarios.size()) + " scenarios x {2,3,5}, rp2 reconciled by torsion");
  }

  // 5. Hopf trace vs Lefschetz number; invariant vs quotient Euler characteristic.
  {
    Line l;
    std::size_t triples = 0, quotients = 0;
    for (const auto& s : scenarios) {
      for (Element g = 0; g < s.group->order(); ++g) {
        ++triples;
        l.require(hopf_trace(s.complex, g, s.lattice) == lefschetz_number(s.complex, g, s.lattice),
                  s.name + " g=" + std::to_string(g));
      }
      if (s.complex->acts_freely() && s.lattice.is_trivial() && s.lattice.rank() == 1) {
        ++quotients;
        const long inv = alternating_sum(invariant_cohomology(s.complex, s.lattice));
        l.require(inv == quotient_complex(s.complex).quotient->euler_characteristic(), s.name + " quotient");
      }
    }
    l.require(quotients > 0, "no free trivial-lattice scenario");
    report(5, l, std::to_string(triples) + " triples, " + std::to_string(quotients) + " quotient comparisons");
  }

  // 6. Character theory on every corpus group.
  {
    Line l;
    std::mt19937 rng(20261014);
    std::size_t frobenius = 0;
    for (const auto& s : scenarios) {
      const auto& g = s.group;
      const auto t = character_table(g);
      const std::size_t r = g->class_count();
      l.require(t.irreducibles.size() == r, s.name + " irreducible count");
      std::size_t sum = 0;
      for (std::size_t i = 0; i < t.irreducibles.size(); ++i) {
        sum += t.degrees[i] * t.degrees[i];
        for (std::size_t j = 0; j < t.irreducibles.size(); ++j)
          l.require(inner_product(t.irreducibles[i], t.irreducibles[j]) == Cyclotomic(1, Rational(i == j ? 1 : 0)),
                    s.name + " row orthogonality");
      }
      l.require(sum == g->order(), s.name + " sum of squared degrees");
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) {
          Cyclotomic z;
          for (const auto& chi : t.irreducibles) z += chi.values[a] * chi.values[b].conj();
          const long centralizer = a == b ? static_cast<long>(g->order() / g->class_size(a)) : 0;
          l.require(z == Cyclotomic(1, Rational(centralizer)), s.name + " column orthogonality");
        }
      l.require(rational_irreducibles(t).size() == rational_class_count(*g), s.name + " rational counts");
      const auto all = subgroups(g);
      std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
      for (int trial = 0; trial < 100; ++trial, ++frobenius) {
        const auto& h = all[pick(rng)];
        const auto f = random_character(h.as_group(), rng);
        const auto w = random_character(g, rng);
        l.require(inner_product(induce(h, f), w) == inner_product(f, restrict(w, h)), s.name + " Frobenius");
      }
    }
    report(6, l, std::to_string(scenarios.size()) + " groups, " + std::to_string(frobenius) + " Frobenius triples");
  }

  // 7. Every single perturbation is caught.
  {
    using T = Perturbation::Target;
    Line l;
    std::size_t runs = 0;
    bool caught[4] = {false, false, false, false};
    for (const auto& s : scenarios) {
      const auto table = character_table(s.group);
      const auto lhs = lhs_character(s, &table);
      const auto terms = stratum_terms(s);
      auto run = [&](const Perturbation& p) {
        ++runs;
        const bool failed = !assemble_report(s, lhs, terms, table, p).passed();
        caught[static_cast<int>(p.target)] = caught[static_cast<int>(p.target)] || failed;
        return failed;
      };
      for (std::size_t i = 0; i < terms.size(); ++i) {
        const bool nonzero = !terms[i].induction_term.is_zero();
        const std::string site = s.name + " class " + std::to_string(i);
        for (long delta : {-1L, 1L}) {
          l.require(run({T::term, i, 0, delta}), site + " term");
          for (std::size_t k = 0; k < terms[i].isotypic.size(); ++k)
            l.require(run({T::coefficient, i, k, delta}), site + " coefficient " + std::to_string(k));
          l.require(run({T::factor, i, 0, delta}) == nonzero, site + " factor");
        }
        l.require(run({T::drop_term, i, 0, 0}) == nonzero, site + " drop_term");
      }
    }
    for (int k = 0; k < 4; ++k) l.require(caught[k], std::string("no failure for ") + to_string(static_cast<T>(k)));
    report(7, l, std::to_string(runs) + " perturbed runs");
  }

  // 8. Integrality of every coefficient and emitted character.
  {
    Line l;
    std::size_t coefficients = 0, characters = 0;
    for (const auto& s : scenarios) {
      try {
        const auto table = character_table(s.group);
        const auto r = verify_theorem(s);
        l.require(r.integral, s.name);
        for (const auto* v : {&r.lhs, &r.rhs_induction, &r.rhs_isotypic}) {
          ++characters;
          l.require(is_integral(*v, table), s.name + " G-character");
        }
        for (const auto& t : r.terms) {
          const auto local = character_table(t.subgroup.as_group());
          for (const auto& row : t.isotypic) {
            ++coefficients;
            l.require(is_integer(row.coefficient), s.name + " c_lambda");
            for (const auto& m : row.multiplicities) l.require(is_integer(m), s.name + " multiplicity");
          }
          ++characters;
          l.require(is_integral(t.euler, local), s.name + " stratum character");
          for (const auto& d : t.degree_characters) {
            ++characters;
            l.require(is_integral(d, local), s.name + " degree character");
          }
          characters += 2;
          l.require(is_integral(t.induction_term, table) && is_integral(t.isotypic_term, table), s.name + " term");
        }
      } catch (const InvariantViolation& e) {  // a hard failure
        l.require(false, s.name + ": " + e.what());
      }
    }
    report(8, l, std::to_string(coefficients) + " coefficients, " + std::to_string(characters) + " characters");
  }

  return failures == 0 ? 0 : 1;
}
