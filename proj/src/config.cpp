#include "dirac1d/config.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

namespace dirac1d {

using nlohmann::json;

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::Simulate: return "simulate";
    case Mode::Decay: return "decay";
    case Mode::Scatter: return "scatter";
    case Mode::CheckBounds: return "check-bounds";
    case Mode::ScalarEvolve: return "scalar-evolve";
  }
  return "?";
}

std::optional<Mode> parse_mode(const std::string& name) {
  for (Mode m : {Mode::Simulate, Mode::Decay, Mode::Scatter, Mode::CheckBounds, Mode::ScalarEvolve})
    if (to_string(m) == name) return m;
  return std::nullopt;
}

namespace {

std::string join_issues(const std::vector<ConfigIssue>& issues) {
  std::ostringstream os;
  os << "invalid config:";
  for (const auto& i : issues) os << "\n  " << (i.pointer.empty() ? "/" : i.pointer) << ": " << i.message;
  return os.str();
}

/// Reads typed fields from one JSON object while recording every violation.
class Reader {
 public:
  explicit Reader(std::vector<ConfigIssue>& issues) : issues_(issues) {}

  void fail(const std::string& ptr, const std::string& msg) { issues_.push_back({ptr, msg}); }

  const json* object(const json& parent, const std::string& key, const std::string& ptr, bool required) {
    if (!parent.contains(key)) {
      if (required) fail(ptr, "required block is missing");
      return nullptr;
    }
    const json& j = parent.at(key);
    if (!j.is_object()) {
      fail(ptr, "must be an object");
      return nullptr;
    }
    return &j;
  }

  double number(const json& obj, const std::string& key, const std::string& ptr, std::optional<double> fallback) {
    if (!obj.contains(key)) {
      if (!fallback) fail(ptr, "required field is missing");
      return fallback.value_or(0.0);
    }
    const json& j = obj.at(key);
    if (!j.is_number()) {
      fail(ptr, "must be a number");
      return fallback.value_or(0.0);
    }
    const double x = j.get<double>();
    if (!std::isfinite(x)) fail(ptr, "must be finite");
    return x;
  }

  std::optional<double> optional_number(const json& obj, const std::string& key, const std::string& ptr) {
    if (!obj.contains(key)) return std::nullopt;
    return number(obj, key, ptr, 0.0);
  }

  long integer(const json& obj, const std::string& key, const std::string& ptr, std::optional<long> fallback) {
    if (!obj.contains(key)) {
      if (!fallback) fail(ptr, "required field is missing");
      return fallback.value_or(0);
    }
    const json& j = obj.at(key);
    if (!j.is_number_integer()) {
      fail(ptr, "must be an integer");
      return fallback.value_or(0);
    }
    return j.get<long>();
  }

  bool boolean(const json& obj, const std::string& key, const std::string& ptr, bool fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_boolean()) {
      fail(ptr, "must be a boolean");
      return fallback;
    }
    return obj.at(key).get<bool>();
  }

  std::string string(const json& obj, const std::string& key, const std::string& ptr,
                     std::optional<std::string> fallback) {
    if (!obj.contains(key)) {
      if (!fallback) fail(ptr, "required field is missing");
      return fallback.value_or("");
    }
    if (!obj.at(key).is_string()) {
      fail(ptr, "must be a string");
      return fallback.value_or("");
    }
    return obj.at(key).get<std::string>();
  }

  void unknown_keys(const json& obj, const std::string& ptr, std::initializer_list<const char*> known) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool ok = false;
      for (const char* k : known) ok = ok || it.key() == k;
      if (!ok) fail(ptr + "/" + it.key(), "unknown field");
    }
  }

 private:
  std::vector<ConfigIssue>& issues_;
};

std::optional<PotentialSpec> parse_potential(Reader& r, const json& root) {
  if (!root.contains("potential")) return std::nullopt;
  const json& j = root.at("potential");
  const std::string ptr = "/potential";
  try {
    if (j.is_string()) return PotentialSpec::from_preset(j.get<std::string>());
    if (!j.is_object()) {
      r.fail(ptr, "must be a preset string or an object");
      return std::nullopt;
    }
    r.unknown_keys(j, ptr, {"preset", "alpha1", "alpha2", "alpha3", "alpha4", "beta_sextic", "moduli_only"});
    if (j.contains("preset")) {
      for (const char* k : {"alpha1", "alpha2", "alpha3", "alpha4", "beta_sextic"})
        if (j.contains(k)) r.fail(ptr + "/" + k, "coefficients cannot be combined with a preset");
      return PotentialSpec::from_preset(r.string(j, "preset", ptr + "/preset", std::nullopt));
    }
    const double a1 = r.number(j, "alpha1", ptr + "/alpha1", 0.0);
    const double a2 = r.number(j, "alpha2", ptr + "/alpha2", 0.0);
    const double a3 = r.number(j, "alpha3", ptr + "/alpha3", 0.0);
    const double a4 = r.number(j, "alpha4", ptr + "/alpha4", 0.0);
    const double b = r.number(j, "beta_sextic", ptr + "/beta_sextic", 0.0);
    const bool moduli = r.boolean(j, "moduli_only", ptr + "/moduli_only", a3 == 0 && a4 == 0);
    if (moduli != (a3 == 0 && a4 == 0)) {
      r.fail(ptr + "/moduli_only", "must equal (alpha3 == 0 && alpha4 == 0)");
      return std::nullopt;
    }
    return PotentialSpec(a1, a2, a3, a4, b, moduli);
  } catch (const Error& e) {
    r.fail(ptr, e.what());
    return std::nullopt;
  }
}

std::optional<InitialProfile> parse_initial(Reader& r, const json& root, bool required) {
  const json* j = r.object(root, "initial", "/initial", required);
  if (!j) return std::nullopt;
  const std::string ptr = "/initial";
  const std::string family = r.string(*j, "family", ptr + "/family", std::nullopt);
  if (family == "gaussian") {
    r.unknown_keys(*j, ptr, {"family", "amplitude", "width", "center", "phase_k"});
    GaussianProfile g;
    g.amplitude = r.number(*j, "amplitude", ptr + "/amplitude", 1.0);
    g.width = r.number(*j, "width", ptr + "/width", 1.0);
    g.center = r.number(*j, "center", ptr + "/center", 0.0);
    g.phase_k = r.number(*j, "phase_k", ptr + "/phase_k", 0.0);
    if (!(g.width > 0)) r.fail(ptr + "/width", "must be positive");
    return g;
  }
  if (family == "sech") {
    r.unknown_keys(*j, ptr, {"family", "amplitude", "width"});
    SechProfile s;
    s.amplitude = r.number(*j, "amplitude", ptr + "/amplitude", 1.0);
    s.width = r.number(*j, "width", ptr + "/width", 1.0);
    if (!(s.width > 0)) r.fail(ptr + "/width", "must be positive");
    return s;
  }
  if (family == "from_file") {
    r.unknown_keys(*j, ptr, {"family", "path"});
    return FileProfile{r.string(*j, "path", ptr + "/path", std::nullopt)};
  }
  if (!family.empty()) r.fail(ptr + "/family", "must be one of gaussian, sech, from_file");
  return std::nullopt;
}

std::optional<GridBlock> parse_grid(Reader& r, const json& root, bool required) {
  const json* j = r.object(root, "grid", "/grid", required);
  if (!j) return std::nullopt;
  r.unknown_keys(*j, "/grid", {"L", "N"});
  GridBlock g;
  g.L = r.number(*j, "L", "/grid/L", std::nullopt);
  g.N = r.integer(*j, "N", "/grid/N", std::nullopt);
  if (j->contains("L") && !(g.L > 0)) r.fail("/grid/L", "must be positive");
  if (j->contains("N") && !is_power_of_two(g.N)) r.fail("/grid/N", "must be a power of two");
  return g;
}

std::optional<TimeBlock> parse_time(Reader& r, const json& root, bool required, bool need_final) {
  const json* j = r.object(root, "time", "/time", required);
  if (!j) return std::nullopt;
  r.unknown_keys(*j, "/time", {"dt", "T_final", "cadence", "h1_ceiling", "window", "samples", "snapshot_times"});
  TimeBlock t;
  t.dt = r.number(*j, "dt", "/time/dt", 0.01);
  if (!(t.dt > 0)) r.fail("/time/dt", "must be positive");
  t.T_final = r.optional_number(*j, "T_final", "/time/T_final");
  if (need_final && !t.T_final) r.fail("/time/T_final", "required field is missing");
  if (t.T_final && !(*t.T_final >= 0)) r.fail("/time/T_final", "must be >= 0");
  t.cadence = r.integer(*j, "cadence", "/time/cadence", 10);
  if (t.cadence < 1) r.fail("/time/cadence", "must be >= 1");
  t.h1_ceiling = r.number(*j, "h1_ceiling", "/time/h1_ceiling", 1e8);
  if (!(t.h1_ceiling > 0)) r.fail("/time/h1_ceiling", "must be positive");
  if (j->contains("window")) {
    const json& w = j->at("window");
    if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number()) {
      r.fail("/time/window", "must be [t_lo, t_hi]");
    } else {
      t.window_lo = w[0].get<double>();
      t.window_hi = w[1].get<double>();
      if (!(t.window_lo >= 1) || !(t.window_hi > t.window_lo) || !std::isfinite(t.window_hi))
        r.fail("/time/window", "must satisfy 1 <= t_lo < t_hi < inf");
    }
  }
  t.samples = r.integer(*j, "samples", "/time/samples", 20);
  if (t.samples < 2) r.fail("/time/samples", "must be >= 2");
  if (j->contains("snapshot_times")) {
    const json& s = j->at("snapshot_times");
    if (!s.is_array()) {
      r.fail("/time/snapshot_times", "must be an array of numbers");
    } else {
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (!s[i].is_number() || !std::isfinite(s[i].get<double>()) || s[i].get<double>() < 0)
          r.fail("/time/snapshot_times/" + std::to_string(i), "must be a finite number >= 0");
        else
          t.snapshot_times.push_back(s[i].get<double>());
      }
    }
  }
  return t;
}

std::optional<ScatteringBlock> parse_scattering(Reader& r, const json& root, bool required) {
  const json* j = r.object(root, "scattering", "/scattering", required);
  if (!j) return std::nullopt;
  r.unknown_keys(*j, "/scattering", {"box", "grid_density", "thresholds", "truncation_check"});
  ScatteringBlock s;
  if (j->contains("box")) {
    const json& b = j->at("box");
    if (!b.is_array() || b.size() != 4) {
      r.fail("/scattering/box", "must be [re_lo, re_hi, im_lo, im_hi]");
    } else {
      double v[4];
      bool ok = true;
      for (int i = 0; i < 4; ++i) {
        ok = ok && b[i].is_number() && std::isfinite(b[i].get<double>());
        v[i] = ok ? b[i].get<double>() : 0;
      }
      if (!ok) r.fail("/scattering/box", "entries must be finite numbers");
      s.box = {v[0], v[1], v[2], v[3]};
    }
  }
  s.grid_density = r.number(*j, "grid_density", "/scattering/grid_density", 10.0);
  if (!(s.grid_density >= 0)) r.fail("/scattering/grid_density", "must be >= 0");
  s.truncation_check = r.boolean(*j, "truncation_check", "/scattering/truncation_check", true);
  if (const json* th = r.object(*j, "thresholds", "/scattering/thresholds", false)) {
    r.unknown_keys(*th, "/scattering/thresholds", {"global_K", "axis_margin"});
    s.global_threshold = r.number(*th, "global_K", "/scattering/thresholds/global_K", 0.1);
    s.axis_margin = r.number(*th, "axis_margin", "/scattering/thresholds/axis_margin", 0.02);
    if (!(s.axis_margin > 0)) r.fail("/scattering/thresholds/axis_margin", "must be positive");
  }
  if (!(s.box.re_lo < s.box.re_hi) || !(s.box.im_lo < s.box.im_hi))
    r.fail("/scattering/box", "must satisfy re_lo < re_hi and im_lo < im_hi");
  else if (s.box.re_lo < s.axis_margin || s.box.im_lo < s.axis_margin)
    r.fail("/scattering/box", "must stay at least axis_margin away from both axes");
  return s;
}

}  // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : Error(ErrorKind::Config, join_issues(issues)), issues_(std::move(issues)) {}

ExperimentConfig parse_config(const std::string& text, std::optional<Mode> mode) {
  std::vector<ConfigIssue> issues;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::vector<ConfigIssue>{{"", std::string("not valid JSON: ") + e.what()}});
  }
  if (!root.is_object()) throw ConfigError(std::vector<ConfigIssue>{{"", "config must be a JSON object"}});

  Reader r(issues);
  r.unknown_keys(root, "", {"mode", "potential", "grid", "time", "initial", "scattering", "output"});
  ExperimentConfig cfg;

  std::optional<Mode> file_mode;
  if (root.contains("mode")) {
    const std::string m = r.string(root, "mode", "/mode", std::nullopt);
    file_mode = parse_mode(m);
    if (!file_mode) r.fail("/mode", "unknown mode '" + m + "'");
  }
  if (mode && file_mode && *mode != *file_mode) r.fail("/mode", "config mode disagrees with the requested mode");
  if (!mode && !file_mode && !root.contains("mode")) r.fail("/mode", "mode is required");
  cfg.mode = mode ? *mode : file_mode.value_or(Mode::Simulate);

  const bool evolves = cfg.mode == Mode::Simulate || cfg.mode == Mode::CheckBounds;
  cfg.potential = parse_potential(r, root);
  if (evolves && !root.contains("potential")) r.fail("/potential", "required block is missing");
  cfg.grid = parse_grid(r, root, true);
  cfg.time = parse_time(r, root, evolves || cfg.mode == Mode::ScalarEvolve,
                        evolves || cfg.mode == Mode::ScalarEvolve);
  cfg.initial = parse_initial(r, root, true);
  cfg.scattering = parse_scattering(r, root, cfg.mode == Mode::Scatter);
  cfg.output = r.string(root, "output", "/output", std::string("out"));

  if (evolves && cfg.grid && cfg.time && is_power_of_two(cfg.grid->N) && cfg.grid->L > 0 &&
      cfg.time->dt > 2 * cfg.grid->L / static_cast<double>(cfg.grid->N))
    r.fail("/time/dt", "must not exceed the grid spacing h = 2L/N");
  if (cfg.mode == Mode::Decay && cfg.grid && cfg.grid->L > 0 && cfg.time && cfg.time->window_hi >= cfg.grid->L)
    r.fail("/time/window", "window end must stay below L to avoid wrap-around");

  if (!issues.empty()) throw ConfigError(std::move(issues));
  return cfg;
}

std::string config_to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["mode"] = to_string(c.mode);
  if (c.potential) {
    const PotentialSpec& p = *c.potential;
    j["potential"] = {{"alpha1", p.alpha1()}, {"alpha2", p.alpha2()},           {"alpha3", p.alpha3()},
                      {"alpha4", p.alpha4()}, {"beta_sextic", p.beta_sextic()}, {"moduli_only", p.moduli_only()}};
  }
  if (c.grid) j["grid"] = {{"L", c.grid->L}, {"N", c.grid->N}};
  if (c.time) {
    const TimeBlock& t = *c.time;
    nlohmann::ordered_json tj;
    tj["dt"] = t.dt;
    if (t.T_final) tj["T_final"] = *t.T_final;
    tj["cadence"] = t.cadence;
    tj["h1_ceiling"] = t.h1_ceiling;
    tj["window"] = {t.window_lo, t.window_hi};
    tj["samples"] = t.samples;
    tj["snapshot_times"] = t.snapshot_times;
    j["time"] = tj;
  }
  if (c.initial) {
    nlohmann::ordered_json ij;
    if (const auto* g = std::get_if<GaussianProfile>(&*c.initial)) {
      ij = {{"family", "gaussian"}, {"amplitude", g->amplitude}, {"width", g->width}, {"center", g->center},
            {"phase_k", g->phase_k}};
    } else if (const auto* s = std::get_if<SechProfile>(&*c.initial)) {
      ij = {{"family", "sech"}, {"amplitude", s->amplitude}, {"width", s->width}};
    } else {
      ij = {{"family", "from_file"}, {"path", std::get<FileProfile>(*c.initial).path}};
    }
    j["initial"] = ij;
  }
  if (c.scattering) {
    const ScatteringBlock& s = *c.scattering;
    j["scattering"] = {{"box", {s.box.re_lo, s.box.re_hi, s.box.im_lo, s.box.im_hi}},
                       {"grid_density", s.grid_density},
                       {"thresholds", {{"global_K", s.global_threshold}, {"axis_margin", s.axis_margin}}},
                       {"truncation_check", s.truncation_check}};
  }
  j["output"] = c.output;
  return j.dump(2);
}

}  // namespace dirac1d
