#pragma once

// JSON and text renderings of verification reports, character tables and
// strata listings. Exact rationals appear in JSON as {"num": "..", "den":
// ".."}. The canonical JSON body carries no timings, so reruns are
// byte-identical; timings go in a separate optional "timings" block.

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "equilef/char_theory.hpp"
#include "equilef/gcomplex.hpp"
#include "equilef/io.hpp"
#include "equilef/lefschetz.hpp"

namespace equilef {

inline Json to_json(const Rational& q) { return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}}; }

inline Json to_json(const Integer& z) { return z.get_str(); }

inline Json to_json(const VirtualCharacter& v) {
  Json a = Json::array();
  for (const auto& q : v.values()) a.push_back(to_json(q));
  return a;
}

inline Json to_json(const Cyclotomic& z) {
  Json coeffs = Json::array();
  for (const auto& c : z.coeffs()) coeffs.push_back(to_json(c));
  return {{"conductor", z.conductor()}, {"coeffs", coeffs}};
}

inline Json classes_json(const Group& g) {
  Json a = Json::array();
  for (std::size_t c = 0; c < g.class_count(); ++c) {
    const auto rep = g.classes()[c].representative;
    a.push_back({{"representative", rep},
                 {"element", element_string(g, rep)},
                 {"size", g.class_size(c)},
                 {"order", g.element_order(rep)}});
  }
  return a;
}

inline Json to_json(const StratumTerm& t) {
  Json lambdas = Json::array();
  for (const auto& row : t.isotypic) {
    Json mult = Json::array();
    for (const auto& m : row.multiplicities) mult.push_back(to_json(m));
    lambdas.push_back({{"orbit_size", row.orbit_size},
                       {"orbit_sum", to_json(row.orbit_sum)},
                       {"multiplicities", mult},
                       {"c", to_json(row.coefficient)}});
  }
  return {{"subgroup", t.subgroup.members()},
          {"order", t.subgroup.order()},
          {"normalizer_order", t.normalizer_order},
          {"class_size", t.class_size},
          {"factor", to_json(t.factor)},
          {"simplices", t.simplex_count},
          {"chi_c", t.combinatorial_euler},
          {"dimensions", t.dimensions},
          {"finite_type", true},
          {"euler", to_json(t.euler)},
          {"factorization_agrees", t.factorization_agrees},
          {"lambdas", lambdas},
          {"induction_term", to_json(t.induction_term)},
          {"isotypic_term", to_json(t.isotypic_term)}};
}

inline Json to_json(const LefschetzReport& r) {
  Json terms = Json::array();
  for (const auto& t : r.terms) terms.push_back(to_json(t));
  Json j = {{"passed", r.passed()},
            {"induction_agrees", r.induction_agrees},
            {"isotypic_agrees", r.isotypic_agrees},
            {"factorization_agrees", r.factorization_agrees},
            {"integral", r.integral},
            {"partition", r.partition},
            {"additivity", r.additivity}};
  if (r.perturbation)
    j["perturbation"] = {{"target", to_string(r.perturbation->target)},
                         {"class_index", r.perturbation->class_index},
                         {"lambda_index", r.perturbation->lambda_index},
                         {"delta", r.perturbation->delta}};
  return j;
}

inline Json to_json(const ElementRow& e) {
  return {{"element", e.element},          {"order", e.order},
          {"lefschetz", to_json(e.lefschetz)}, {"fixed_lefschetz", to_json(e.fixed_lefschetz)},
          {"hopf", to_json(e.hopf)},          {"fixed_simplices", e.fixed_simplices},
          {"passed", e.corollary()},          {"hopf_agrees", e.hopf_agrees()}};
}

inline Json to_json(const FreeActionReport& f, std::size_t order) {
  Json l = Json::array();
  for (const auto& [g, v] : f.lefschetz) l.push_back({{"element", g}, {"lefschetz", to_json(v)}});
  Json j = {{"passed", f.passed(order)},
            {"vanishing", f.vanishing()},
            {"covering", f.covering(order)},
            {"euler", f.euler},
            {"invariant_euler", f.invariant_euler},
            {"nontrivial_lefschetz", l}};
  if (f.quotient_euler) {
    j["quotient_euler"] = *f.quotient_euler;
    j["quotient_subdivisions"] = f.quotient_subdivisions;
    j["quotient_agrees"] = f.quotient_agrees(order);
  }
  return j;
}

inline Json to_json(const VerdierReport& v) {
  return {{"passed", v.passed()}, {"multiplier", v.multiplier}, {"expected", to_json(v.expected)}};
}

inline Json to_json(const ModpReport& m) {
  Json torsion = Json::array();
  for (const auto& t : m.torsion) {
    Json d = Json::array();
    for (const auto& x : t) d.push_back(to_json(x));
    torsion.push_back(std::move(d));
  }
  return {{"prime", m.prime},
          {"passed", m.passed()},
          {"rational_dimensions", m.rational_dimensions},
          {"modp_dimensions", m.modp_dimensions},
          {"betti", m.betti},
          {"torsion", torsion},
          {"torsion_ranks", m.torsion_ranks},
          {"rational_euler", m.rational_euler},
          {"modp_euler", m.modp_euler},
          {"euler_agrees", m.euler_agrees()},
          {"universal_coefficients", m.universal_coefficients()}};
}

inline Json to_json(const ScenarioReport& r, const Group& g, bool timings = false) {
  Json corollary = Json::array();
  for (const auto& e : r.elements) corollary.push_back(to_json(e));
  Json modp = Json::array();
  for (const auto& m : r.modp) modp.push_back(to_json(m));
  Json verdicts = {{"theorem", to_json(r.theorem)}, {"corollary", corollary}};
  if (r.free_action.applicable) verdicts["free_action"] = to_json(r.free_action, r.group_order);
  if (r.verdier.applicable) verdicts["verdier"] = to_json(r.verdier);
  verdicts["modp"] = modp;
  verdicts["hopf"] = r.hopf_passed();
  verdicts["lhs_matches_fixed_sets"] = r.lhs_matches_fixed_sets();
  Json strata = Json::array();
  for (const auto& t : r.theorem.terms) strata.push_back(to_json(t));
  Json j = {{"scenario", r.scenario},
            {"description", r.description},
            {"passed", r.passed()},
            {"complex",
             {{"group_order", r.group_order},
              {"subdivisions", r.subdivisions},
              {"simplex_counts", r.simplex_counts},
              {"lattice_rank", r.lattice_rank}}},
            {"verdicts", verdicts},
            {"characters",
             {{"classes", classes_json(g)},
              {"lhs", to_json(r.theorem.lhs)},
              {"rhs_induction", to_json(r.theorem.rhs_induction)},
              {"rhs_isotypic", to_json(r.theorem.rhs_isotypic)}}},
            {"tables", {{"strata", strata}}}};
  if (timings) j["timings"] = {{"seconds", r.seconds}};
  return j;
}

// ---------------------------------------------------------------------------

inline std::string yes(bool b) { return b ? "pass" : "FAIL"; }

inline std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

inline std::string join(const VirtualCharacter& v) {
  std::string s;
  for (std::size_t i = 0; i < v.values().size(); ++i) s += (i ? " " : "") + v.values()[i].get_str();
  return s;
}

inline std::string to_text(const ScenarioReport& r, const Group& g, bool timings = false) {
  std::ostringstream o;
  o << "scenario " << r.scenario << ": " << yes(r.passed()) << "\n";
  if (!r.description.empty()) o << "  " << r.description << "\n";
  o << "  |G| = " << r.group_order << ", lattice rank " << r.lattice_rank << ", subdivisions " << r.subdivisions
    << ", simplices per dimension: " << join(r.simplex_counts) << "\n";
  o << "  classes:";
  for (std::size_t c = 0; c < g.class_count(); ++c)
    o << " " << element_string(g, g.classes()[c].representative) << "(" << g.class_size(c) << ")";
  o << "\n";
  o << "  lhs           : " << join(r.theorem.lhs) << "\n";
  o << "  rhs_induction : " << join(r.theorem.rhs_induction) << "\n";
  o << "  rhs_isotypic  : " << join(r.theorem.rhs_isotypic) << "\n";
  const auto& t = r.theorem;
  o << "  theorem: " << yes(t.passed()) << " (induction " << yes(t.induction_agrees) << ", isotypic "
    << yes(t.isotypic_agrees) << ", factorization " << yes(t.factorization_agrees) << ", integral "
    << yes(t.integral) << ", partition " << yes(t.partition) << ", additivity " << yes(t.additivity) << ")\n";
  for (const auto& term : t.terms) {
    o << "    [H] order " << term.subgroup.order() << ", |N(H)| " << term.normalizer_order << ", factor "
      << term.factor.get_str() << ", simplices " << term.simplex_count << ", chi_c " << term.combinatorial_euler
      << ", dims " << join(term.dimensions) << ", euler " << join(term.euler) << "\n";
    for (const auto& row : term.isotypic)
      o << "      lambda s=" << row.orbit_size << " Phi=(" << join(row.orbit_sum) << ") c=" << row.coefficient.get_str()
        << "\n";
  }
  o << "  corollary: " << yes(r.corollary_passed()) << ", hopf: " << yes(r.hopf_passed()) << ", lhs at g = L(g, X^g): "
    << yes(r.lhs_matches_fixed_sets()) << "\n";
  for (const auto& e : r.elements)
    o << "    g=" << element_string(g, e.element) << " order " << e.order << ": L=" << e.lefschetz.get_str()
      << " L_fixed=" << e.fixed_lefschetz.get_str() << " hopf=" << e.hopf.get_str() << "\n";
  if (r.free_action.applicable) {
    const auto& f = r.free_action;
    o << "  free action: " << yes(f.passed(r.group_order)) << " (vanishing " << yes(f.vanishing()) << ", chi "
      << f.euler << " = " << r.group_order << " * " << f.invariant_euler;
    if (f.quotient_euler) o << ", quotient chi " << *f.quotient_euler;
    o << ")\n";
    o << "  verdier: " << yes(r.verdier.passed()) << " (lhs = " << r.verdier.multiplier << " * regular)\n";
  }
  for (const auto& m : r.modp)
    o << "  mod " << m.prime << ": " << yes(m.passed()) << " (chi_Q " << m.rational_euler << ", chi_F " << m.modp_euler
      << ", dims_Q " << join(m.rational_dimensions) << ", dims_F " << join(m.modp_dimensions) << ", r "
      << join(m.torsion_ranks) << ")\n";
  if (timings) o << "  time " << r.seconds << " s\n";
  return o.str();
}

// ---------------------------------------------------------------------------

inline Json chartab_json(const GroupPtr& g) {
  const auto table = character_table(g);
  Json irr = Json::array();
  for (std::size_t i = 0; i < table.irreducibles.size(); ++i) {
    Json values = Json::array();
    for (const auto& v : table.irreducibles[i].values) values.push_back(to_json(v));
    irr.push_back({{"degree", table.degrees[i]}, {"values", values}});
  }
  Json rat = Json::array();
  for (const auto& r : rational_irreducibles(table))
    rat.push_back({{"orbit", r.orbit}, {"orbit_size", r.orbit_size()}, {"orbit_sum", to_json(r.orbit_sum)}});
  return {{"order", g->order()},
          {"exponent", g->exponent()},
          {"prime", table.prime},
          {"classes", classes_json(*g)},
          {"irreducibles", irr},
          {"rational_irreducibles", rat},
          {"rational_classes", rational_class_count(*g)}};
}

inline std::string cyclotomic_text(const Cyclotomic& z) {
  if (z.is_rational()) return z.rational_value().get_str();
  std::string s;
  for (std::size_t i = 0; i < z.coeffs().size(); ++i) {
    const auto& c = z.coeffs()[i];
    if (sgn(c) == 0) continue;
    std::string term = c.get_str();
    if (i > 0) term = (c == 1 ? "" : c == -1 ? "-" : term + "*") + "z" + std::to_string(z.conductor()) + "^" + std::to_string(i);
    if (!s.empty() && term[0] != '-') s += "+";
    s += term;
  }
  return s;
}

inline std::string chartab_text(const GroupPtr& g) {
  const auto table = character_table(g);
  std::ostringstream o;
  o << "group of order " << g->order() << ", exponent " << g->exponent() << ", " << g->class_count()
    << " classes (computed mod " << table.prime << ")\n";
  o << "classes:";
  for (std::size_t c = 0; c < g->class_count(); ++c)
    o << " " << element_string(*g, g->classes()[c].representative) << "(" << g->class_size(c) << ")";
  o << "\n";
  for (std::size_t i = 0; i < table.irreducibles.size(); ++i) {
    o << "chi" << i << ":";
    for (const auto& v : table.irreducibles[i].values) o << " " << cyclotomic_text(v);
    o << "\n";
  }
  const auto rat = rational_irreducibles(table);
  o << "rational irreducibles: " << rat.size() << " (rational classes: " << rational_class_count(*g) << ")\n";
  for (const auto& r : rat) {
    o << "  orbit {";
    for (std::size_t k = 0; k < r.orbit.size(); ++k) o << (k ? "," : "") << "chi" << r.orbit[k];
    o << "} s=" << r.orbit_size() << " Phi=(" << join(r.orbit_sum) << ")\n";
  }
  return o.str();
}

// ---------------------------------------------------------------------------

struct StratumListing {
  Subgroup subgroup;
  std::size_t class_size;
  std::size_t normalizer_order;
  std::size_t fixed_simplices;
  long fixed_euler;
  std::size_t exact_simplices;
  long exact_euler;  // χ_c of X_H
};

inline std::vector<StratumListing> strata_listing(const ComplexPtr& x) {
  std::vector<StratumListing> out;
  for (const auto& c : conjugacy_classes_of_subgroups(x->group())) {
    const auto& h = c.representative;
    const auto fixed = fixed_subcomplex(x, h);
    const auto exact = exact_stratum(x, h);
    out.push_back({h, c.members.size(), normalizer(x->group(), h).order(), fixed.size(), fixed.euler_characteristic(),
                   exact.size(), exact.euler_characteristic()});
  }
  return out;
}

inline Json strata_json(const Scenario& s) {
  Json classes = Json::array();
  for (const auto& l : strata_listing(s.complex))
    classes.push_back({{"subgroup", l.subgroup.members()},
                       {"order", l.subgroup.order()},
                       {"class_size", l.class_size},
                       {"normalizer_order", l.normalizer_order},
                       {"fixed_set", {{"simplices", l.fixed_simplices}, {"euler", l.fixed_euler}}},
                       {"exact_stratum", {{"simplices", l.exact_simplices}, {"chi_c", l.exact_euler}}}});
  Json levels = Json::array();
  const auto f = filtration(s.complex);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto pair = filtration_pair(s.complex, i + 1);
    levels.push_back({{"level", i + 1},
                      {"simplices", f[i].size()},
                      {"euler", f[i].euler_characteristic()},
                      {"pair_simplices", pair.size()},
                      {"pair_chi_c", pair.euler_characteristic()}});
  }
  return {{"scenario", s.name},
          {"subdivisions", s.subdivisions},
          {"euler", s.complex->euler_characteristic()},
          {"classes", classes},
          {"filtration", levels}};
}

inline std::string strata_text(const Scenario& s) {
  std::ostringstream o;
  o << "scenario " << s.name << ": chi " << s.complex->euler_characteristic() << ", subdivisions " << s.subdivisions
    << "\n";
  for (const auto& l : strata_listing(s.complex)) {
    o << "  [H] {";
    for (std::size_t k = 0; k < l.subgroup.members().size(); ++k) o << (k ? "," : "") << l.subgroup.members()[k];
    o << "} order " << l.subgroup.order() << ", " << l.class_size << " conjugates, |N(H)| " << l.normalizer_order
      << ": X^H " << l.fixed_simplices << " simplices chi " << l.fixed_euler << "; X_H " << l.exact_simplices
      << " simplices chi_c " << l.exact_euler << "\n";
  }
  const auto f = filtration(s.complex);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto pair = filtration_pair(s.complex, i + 1);
    o << "  X^" << i + 1 << ": " << f[i].size() << " simplices chi " << f[i].euler_characteristic() << "; X^" << i + 1
      << " \\ X^" << i + 2 << " chi_c " << pair.euler_characteristic() << "\n";
  }
  return o.str();
}

}  // namespace equilef
