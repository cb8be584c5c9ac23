// equilef: verify the equivariant Lefschetz formula on scenario files and
// the builtin corpus.
//
// Exit codes: 0 all verdicts pass, 1 some verification failed, 2 bad input.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "equilef/corpus.hpp"
#include "equilef/error.hpp"
#include "equilef/io.hpp"
#include "equilef/lefschetz.hpp"
#include "equilef/report.hpp"

namespace {

using namespace equilef;

struct Options {
  std::string format = "text";
  std::vector<std::uint64_t> primes;
  std::string out;
  bool timings = false;
  std::string target;
};

void emit(const Options& o, const std::string& body) {
  if (o.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw InputError(o.out, "cannot write output file");
  f << body;
}

std::string render(const Options& o, const Json& j, const std::string& text) {
  return o.format == "json" ? j.dump(2) + "\n" : text;
}

int run_verify(const Options& o) {
  const auto s = load_scenario(o.target);
  const auto r = verify_scenario(s, o.primes.empty() ? s.primes : o.primes);
  emit(o, render(o, to_json(r, *s.group, o.timings), to_text(r, *s.group, o.timings)));
  return r.passed() ? 0 : 1;
}

int run_corpus(const Options& o) {
  auto specs = builtin_specs();
  std::sort(specs.begin(), specs.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  Json reports = Json::array();
  std::string text;
  bool all = true;
  std::size_t passed = 0;
  for (const auto& spec : specs) {
    const auto s = build_scenario(spec);
    const auto r = verify_scenario(s, o.primes.empty() ? s.primes : o.primes);
    all = all && r.passed();
    passed += r.passed();
    reports.push_back(to_json(r, *s.group, o.timings));
    text += to_text(r, *s.group, o.timings);
  }
  text += "corpus: " + std::to_string(passed) + "/" + std::to_string(specs.size()) + " scenarios pass\n";
  Json j = {{"schema_version", kSchemaVersion}, {"passed", all}, {"scenarios", reports}};
  emit(o, render(o, j, text));
  return all ? 0 : 1;
}

int run_chartab(const Options& o) {
  const auto s = load_scenario(o.target);
  emit(o, render(o, chartab_json(s.group), chartab_text(s.group)));
  return 0;
}

int run_strata(const Options& o) {
  const auto s = load_scenario(o.target);
  emit(o, render(o, strata_json(s), strata_text(s)));
  return 0;
}

int run_list(const Options& o) {
  Json j = builtin_names();
  std::string text;
  for (const auto& n : builtin_names()) text += n + "\n";
  emit(o, render(o, j, text));
  return 0;
}

int run_export(const Options& o) {
  emit(o, serialize_scenario(load_spec(o.target)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of the equivariant Lefschetz formula"};
  app.require_subcommand(1);
  Options o;
  auto common = [&o](CLI::App* sub) {
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--prime", o.primes, "prime for the mod-p comparison (repeatable)")->take_all();
    sub->add_option("--out", o.out, "write output to this file");
    sub->add_flag("--timings", o.timings, "include wall-clock timings");
  };
  auto* verify = app.add_subcommand("verify", "theorem, corollary and lemmas for one scenario");
  verify->add_option("scenario", o.target, "scenario file or builtin name")->required();
  common(verify);
  auto* chartab = app.add_subcommand("chartab", "character table and rational irreducibles of the scenario group");
  chartab->add_option("scenario", o.target, "scenario file or builtin name")->required();
  common(chartab);
  auto* strata = app.add_subcommand("strata", "fixed sets, exact strata and filtration with Euler characteristics");
  strata->add_option("scenario", o.target, "scenario file or builtin name")->required();
  common(strata);
  auto* corpus = app.add_subcommand("corpus", "verify every builtin scenario");
  common(corpus);
  auto* list = app.add_subcommand("list", "names of the builtin scenarios");
  common(list);
  auto* exp = app.add_subcommand("export", "print a scenario in canonical JSON form");
  exp->add_option("scenario", o.target, "scenario file or builtin name")->required();
  common(exp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (auto p : o.primes)
      if (!is_prime(p)) throw InputError("--prime", std::to_string(p) + " is not prime");
    if (verify->parsed()) return run_verify(o);
    if (chartab->parsed()) return run_chartab(o);
    if (strata->parsed()) return run_strata(o);
    if (corpus->parsed()) return run_corpus(o);
    if (list->parsed()) return run_list(o);
    if (exp->parsed()) return run_export(o);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
