#include "preslab/config.hpp"

#include <cmath>
#include <limits>
#include <fstream>
#include <sstream>

namespace preslab {

const char* study_name(StudyKind kind) {
  switch (kind) {
    case StudyKind::Pressure: return "pressure";
    case StudyKind::Equilibrium: return "equilibrium";
    case StudyKind::Ldp: return "ldp";
    case StudyKind::Rate: return "rate";
    case StudyKind::Oracle: return "oracle";
    case StudyKind::Selfcheck: return "selfcheck";
  }
  return "?";
}

StudyKind study_from_name(const std::string& name) {
  for (StudyKind kind : {StudyKind::Pressure, StudyKind::Equilibrium, StudyKind::Ldp,
                         StudyKind::Rate, StudyKind::Oracle, StudyKind::Selfcheck})
    if (name == study_name(kind)) return kind;
  throw ConfigError("unknown study kind: " + name);
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double to_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("field '" + key + "': not a number: " + value);
  }
  if (pos != value.size()) throw ConfigError("field '" + key + "': not a number: " + value);
  return v;
}

long long to_int(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("field '" + key + "': not an integer: " + value);
  }
  if (pos != value.size()) throw ConfigError("field '" + key + "': not an integer: " + value);
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  return parts;
}

class Fields {
 public:
  explicit Fields(const std::map<std::string, std::string>& kv) : kv_(kv) {}

  bool has(const std::string& key) const { return kv_.count(key) > 0; }

  const std::string& require(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw ConfigError("missing required field '" + key + "'");
    return it->second;
  }

  std::string get(const std::string& key, const std::string& fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
  }

  double get_double(const std::string& key, double fallback) const {
    return has(key) ? to_double(key, kv_.at(key)) : fallback;
  }

  long long get_int(const std::string& key, long long fallback) const {
    return has(key) ? to_int(key, kv_.at(key)) : fallback;
  }

 private:
  const std::map<std::string, std::string>& kv_;
};

double parse_bound(const std::string& key, const std::string& text) {
  if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  return to_double(key, text);
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const long long lo = to_int("range", trim(text.substr(0, dots)));
    const long long hi = to_int("range", trim(text.substr(dots + 2)));
    if (hi < lo) throw ConfigError("range '" + text + "': descending bounds");
    for (long long v = lo; v <= hi; ++v) out.push_back(static_cast<int>(v));
    return out;
  }
  for (const std::string& part : split(text, ','))
    out.push_back(static_cast<int>(to_int("list", part)));
  if (out.empty()) throw ConfigError("empty integer list");
  return out;
}

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    kv[key] = value;
  }
  return kv;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_key_values(buffer.str());
}

RunConfig parse_run_config(const std::map<std::string, std::string>& kv, StudyKind study) {
  const Fields f(kv);
  RunConfig cfg;
  cfg.study = study;
  cfg.raw = kv;

  if (f.has("study") && f.require("study") != study_name(study))
    throw ConfigError(std::string("config study '") + f.require("study") +
                      "' does not match subcommand '" + study_name(study) + "'");

  // seed is mandatory everywhere; there is deliberately no wall-clock default
  cfg.seed = static_cast<std::uint64_t>(to_int("seed", f.require("seed")));

  cfg.out_dir = f.get("out", ".");
  cfg.basis_size = static_cast<int>(f.get_int("basis.k", 0));
  cfg.bins = static_cast<int>(f.get_int("bins", 16));
  cfg.min_count = f.get_int("ldp.min_count", 30);
  cfg.concentration_radius = f.get_double("equilibrium.radius", 0.1);
  cfg.oracle_grid = static_cast<int>(f.get_int("oracle.grid", 1024));

  if (study == StudyKind::Selfcheck) return cfg;

  // system
  cfg.system.kind = f.require("system.kind");
  if (cfg.system.kind == "expanding") {
    cfg.system.degree = static_cast<int>(to_int("system.k", f.require("system.k")));
    cfg.system.eps = f.get_double("system.eps", 0.0);
  } else if (cfg.system.kind == "torus") {
    const auto entries = parse_int_list(f.require("system.matrix"));
    if (entries.size() != 4)
      throw ConfigError("field 'system.matrix': need 4 integers a,b,c,d");
    cfg.system.matrix = {{{entries[0], entries[1]}, {entries[2], entries[3]}}};
  } else {
    throw ConfigError("field 'system.kind': expected 'expanding' or 'torus'");
  }

  // potential
  cfg.potential.kind = f.get("potential.kind", "constant");
  if (cfg.potential.kind == "constant") {
    cfg.potential.value = f.get_double("potential.value", 0.0);
  } else if (cfg.potential.kind == "trig") {
    for (const std::string& term : split(f.require("potential.coeffs"), ',')) {
      const auto colon = term.find(':');
      if (colon == std::string::npos)
        throw ConfigError("field 'potential.coeffs': expected index:coefficient terms");
      cfg.potential.coeffs.emplace_back(
          static_cast<int>(to_int("potential.coeffs", trim(term.substr(0, colon)))),
          to_double("potential.coeffs", trim(term.substr(colon + 1))));
    }
  } else if (cfg.potential.kind == "geometric") {
    cfg.potential.t = f.get_double("potential.t", 1.0);
  } else {
    throw ConfigError("field 'potential.kind': expected constant, trig or geometric");
  }

  // sampling parameters
  const bool needs_sampling = study != StudyKind::Oracle;
  if (needs_sampling || f.has("n_range")) cfg.n_range = parse_int_list(f.require("n_range"));
  if (needs_sampling || f.has("samples")) cfg.samples = f.get_int("samples", 0);
  if (needs_sampling && cfg.samples < 1) throw ConfigError("field 'samples': must be >= 1");

  if (study == StudyKind::Ldp || study == StudyKind::Rate) {
    for (int v : parse_int_list(f.require("constraint.obs"))) cfg.obs.push_back(v);
    if (study == StudyKind::Ldp) {
      for (const std::string& part : split(f.require("constraint.lo"), ','))
        cfg.lo.push_back(parse_bound("constraint.lo", part));
      for (const std::string& part : split(f.require("constraint.hi"), ','))
        cfg.hi.push_back(parse_bound("constraint.hi", part));
      if (cfg.lo.size() != cfg.obs.size() || cfg.hi.size() != cfg.obs.size())
        throw ConfigError("constraint.lo/hi must match constraint.obs length");
    }
  }
  if (study == StudyKind::Rate || (study == StudyKind::Ldp && f.has("rate.alpha_min"))) {
    cfg.alpha_min = f.get_double("rate.alpha_min", -1.0);
    cfg.alpha_max = f.get_double("rate.alpha_max", 1.0);
    cfg.alpha_step = f.get_double("rate.alpha_step", 0.05);
    cfg.beta_max = f.get_double("rate.beta_max", 4.0);
    cfg.beta_step = f.get_double("rate.beta_step", 0.25);
    if (cfg.beta_step > 0.25 + 1e-12)
      throw ConfigError("field 'rate.beta_step': spacing above 0.25 is not supported");
  }
  return cfg;
}

}  // namespace preslab
