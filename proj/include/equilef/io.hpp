#pragma once

// Scenario files (JSON):
//
//   {"schema_version": 1, "name": "...", "description": "...",
//    "group":   {"degree": n, "generators": [[image list], ...]},
//    "complex": {"vertices": n, "maximal_simplices": [[v, ...], ...],
//                "action": {"0": [image list], ...}},
//    "lattice": {"rank": r, "action": {"0": [[row], ...], ...}},
//    "options": {"primes": [2, 3, 5], "subdivisions": 0}}
//
// "lattice", "options" and "description" are optional; a missing lattice is
// the trivial lattice Z. Generator keys of both action maps are the indices
// into group.generators and must all be present.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "equilef/corpus.hpp"
#include "equilef/error.hpp"
#include "equilef/scenario.hpp"

namespace equilef {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string join_path(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "/" + key;
}

inline void allow_keys(const Json& j, const std::string& path, std::initializer_list<const char*> keys) {
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* allowed : keys) known = known || k == allowed;
    if (!known) throw InputError(join_path(path, k), "unknown field");
  }
}

inline const Json& field(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) throw InputError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(join_path(path, key), "missing field");
  return *it;
}

inline std::uint64_t natural(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw InputError(path, "expected a nonnegative integer");
  return j.get<std::uint64_t>();
}

inline long long integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw InputError(path, "expected an integer");
  return j.get<long long>();
}

inline const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(path, "expected an array");
  return j;
}

inline std::vector<std::uint32_t> index_list(const Json& j, const std::string& path) {
  std::vector<std::uint32_t> out;
  const auto& a = array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto v = natural(a[i], join_path(path, std::to_string(i)));
    if (v > 0xffffffffULL) throw InputError(join_path(path, std::to_string(i)), "index too large");
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

// {"0": x, "1": y, ...} with exactly the keys 0..count-1.
inline std::vector<const Json*> generator_map(const Json& j, const std::string& path, std::size_t count) {
  if (!j.is_object()) throw InputError(path, "expected an object keyed by generator index");
  std::vector<const Json*> out(count, nullptr);
  for (const auto& [k, v] : j.items()) {
    std::size_t idx = 0;
    std::size_t used = 0;
    try {
      idx = std::stoul(k, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != k.size() || k.empty() || idx >= count)
      throw InputError(join_path(path, k), "not a generator index below " + std::to_string(count));
    out[idx] = &v;
  }
  for (std::size_t i = 0; i < count; ++i)
    if (!out[i]) throw InputError(join_path(path, std::to_string(i)), "missing image of generator " + std::to_string(i));
  return out;
}

}  // namespace detail

inline ScenarioSpec spec_from_json(const Json& j) {
  using namespace detail;
  if (!j.is_object()) throw InputError("", "scenario must be a JSON object");
  allow_keys(j, "", {"schema_version", "name", "description", "group", "complex", "lattice", "options"});
  ScenarioSpec s;
  s.schema_version = static_cast<int>(integer(field(j, "", "schema_version"), "schema_version"));
  if (s.schema_version != kSchemaVersion)
    throw InputError("schema_version", "unsupported schema version " + std::to_string(s.schema_version));
  const auto& name = field(j, "", "name");
  if (!name.is_string()) throw InputError("name", "expected a string");
  s.name = name.get<std::string>();
  if (j.contains("description")) {
    if (!j["description"].is_string()) throw InputError("description", "expected a string");
    s.description = j["description"].get<std::string>();
  }

  const auto& group = field(j, "", "group");
  allow_keys(group, "group", {"degree", "generators"});
  s.degree = natural(field(group, "group", "degree"), "group/degree");
  const auto& gens = array(field(group, "group", "generators"), "group/generators");
  for (std::size_t i = 0; i < gens.size(); ++i) s.generators.push_back(index_list(gens[i], "group/generators/" + std::to_string(i)));

  const auto& complex = field(j, "", "complex");
  allow_keys(complex, "complex", {"vertices", "maximal_simplices", "action"});
  s.vertices = natural(field(complex, "complex", "vertices"), "complex/vertices");
  const auto& maximal = array(field(complex, "complex", "maximal_simplices"), "complex/maximal_simplices");
  for (std::size_t i = 0; i < maximal.size(); ++i) {
    const std::string path = "complex/maximal_simplices/" + std::to_string(i);
    auto simplex = index_list(maximal[i], path);
    if (simplex.empty()) throw InputError(path, "empty simplex");
    s.maximal_simplices.push_back(std::move(simplex));
  }
  if (!s.generators.empty() || complex.contains("action")) {
    const auto images = generator_map(field(complex, "complex", "action"), "complex/action", s.generators.size());
    for (std::size_t i = 0; i < images.size(); ++i)
      s.vertex_action.push_back(index_list(*images[i], "complex/action/" + std::to_string(i)));
  }

  if (j.contains("lattice")) {
    const auto& lattice = j["lattice"];
    allow_keys(lattice, "lattice", {"rank", "action"});
    LatticeSpec l;
    l.rank = natural(field(lattice, "lattice", "rank"), "lattice/rank");
    if (!s.generators.empty() || lattice.contains("action")) {
      const auto mats = generator_map(field(lattice, "lattice", "action"), "lattice/action", s.generators.size());
      for (std::size_t i = 0; i < mats.size(); ++i) {
        const std::string path = "lattice/action/" + std::to_string(i);
        const auto& rows = array(*mats[i], path);
        if (rows.size() != l.rank) throw InputError(path, "matrix must have " + std::to_string(l.rank) + " rows");
        IntMatrix m(l.rank, l.rank);
        for (std::size_t r = 0; r < l.rank; ++r) {
          const std::string rp = path + "/" + std::to_string(r);
          const auto& row = array(rows[r], rp);
          if (row.size() != l.rank) throw InputError(rp, "row must have " + std::to_string(l.rank) + " entries");
          for (std::size_t c = 0; c < l.rank; ++c) m(r, c) = integer(row[c], rp + "/" + std::to_string(c));
        }
        l.generators.push_back(std::move(m));
      }
    }
    s.lattice = std::move(l);
  }

  if (j.contains("options")) {
    const auto& options = j["options"];
    allow_keys(options, "options", {"primes", "subdivisions"});
    if (options.contains("primes")) {
      s.primes.clear();
      const auto& primes = array(options["primes"], "options/primes");
      for (std::size_t i = 0; i < primes.size(); ++i)
        s.primes.push_back(natural(primes[i], "options/primes/" + std::to_string(i)));
    }
    if (options.contains("subdivisions")) s.subdivisions = natural(options["subdivisions"], "options/subdivisions");
  }
  return s;
}

inline ScenarioSpec parse_scenario_spec(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError("", std::string("invalid JSON: ") + e.what());
  }
  return spec_from_json(j);
}

// Parses and fully validates: group closure, action well-formedness,
// lattice relations, regularity (with the subdivisions it took).
inline Scenario parse_scenario(const std::string& text) { return build_scenario(parse_scenario_spec(text)); }

// Canonical form; parse(serialize(spec)) == spec.
inline Json to_json(const ScenarioSpec& s) {
  Json j;
  j["schema_version"] = s.schema_version;
  j["name"] = s.name;
  if (!s.description.empty()) j["description"] = s.description;
  j["group"] = {{"degree", s.degree}, {"generators", s.generators}};
  Json action = Json::object();
  for (std::size_t i = 0; i < s.vertex_action.size(); ++i) action[std::to_string(i)] = s.vertex_action[i];
  j["complex"] = {{"vertices", s.vertices}, {"maximal_simplices", s.maximal_simplices}, {"action", action}};
  if (s.lattice) {
    Json mats = Json::object();
    for (std::size_t i = 0; i < s.lattice->generators.size(); ++i) {
      const auto& m = s.lattice->generators[i];
      Json rows = Json::array();
      for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
      }
      mats[std::to_string(i)] = std::move(rows);
    }
    j["lattice"] = {{"rank", s.lattice->rank}, {"action", mats}};
  }
  j["options"] = {{"primes", s.primes}, {"subdivisions", s.subdivisions}};
  return j;
}

inline std::string serialize_scenario(const ScenarioSpec& s) { return to_json(s).dump(2) + "\n"; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A builtin name, or else a path to a scenario file.
inline ScenarioSpec load_spec(const std::string& name_or_path) {
  if (auto b = builtin_spec(name_or_path)) return *b;
  if (!std::ifstream(name_or_path)) throw InputError(name_or_path, "neither a builtin scenario nor a readable file");
  return parse_scenario_spec(read_file(name_or_path));
}

inline Scenario load_scenario(const std::string& name_or_path) { return build_scenario(load_spec(name_or_path)); }

}  // namespace equilef
