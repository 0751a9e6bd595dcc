#include "doctest.h"

#include <algorithm>

#include "dirac1d/config.hpp"

using namespace dirac1d;

namespace {

const char* kSimulate = R"({
  "mode": "simulate",
  "potential": "mtm",
  "grid": {"L": 40, "N": 1024},
  "time": {"T_final": 2},
  "initial": {"family": "gaussian", "amplitude": 0.5}
})";

std::vector<ConfigIssue> issues_of(const std::string& text, std::optional<Mode> mode = std::nullopt) {
  try {
    parse_config(text, mode);
  } catch (const ConfigError& e) {
    return e.issues();
  }
  return {};
}

bool has_pointer(const std::vector<ConfigIssue>& issues, const std::string& ptr) {
  return std::any_of(issues.begin(), issues.end(), [&](const ConfigIssue& i) { return i.pointer == ptr; });
}

}  // namespace

TEST_CASE("modes") {
  for (Mode m : {Mode::Simulate, Mode::Decay, Mode::Scatter, Mode::CheckBounds, Mode::ScalarEvolve})
    CHECK(parse_mode(to_string(m)) == m);
  CHECK(to_string(Mode::CheckBounds) == "check-bounds");
  CHECK_FALSE(parse_mode("simulation"));
}

TEST_CASE("defaults and preset expansion") {
  const ExperimentConfig c = parse_config(kSimulate);
  CHECK(c.mode == Mode::Simulate);
  REQUIRE(c.potential);
  CHECK(*c.potential == PotentialSpec::mtm());
  CHECK(c.time->dt == 0.01);
  CHECK(c.time->cadence == 10);
  CHECK(*c.time->T_final == 2);
  const auto& g = std::get<GaussianProfile>(*c.initial);
  CHECK(g.amplitude == 0.5);
  CHECK(g.width == 1);
  CHECK(c.output == "out");
  CHECK_FALSE(c.scattering);

  const std::string echo = config_to_json(c);
  CHECK(echo.find("\"alpha2\": 4.0") != std::string::npos);
  CHECK(echo.find("\"moduli_only\": true") != std::string::npos);
}

TEST_CASE("round trip through the normalised echo") {
  const char* scatter = R"({
    "mode": "scatter", "grid": {"L": 15, "N": 1024},
    "initial": {"family": "sech", "amplitude": 0.9, "width": 1.5},
    "scattering": {"box": [0.1, 2, 0.1, 2], "grid_density": 0,
                   "thresholds": {"global_K": 0.05, "axis_margin": 0.05}, "truncation_check": false}
  })";
  const char* evolve = R"({
    "mode": "check-bounds", "potential": {"alpha1": 0.5, "alpha2": 1, "beta_sextic": 0.25},
    "grid": {"L": 20, "N": 512}, "time": {"dt": 0.005, "T_final": 1, "snapshot_times": [0.5, 1]},
    "initial": {"family": "from_file", "path": "x.snapshot"}, "output": "elsewhere"
  })";
  for (const char* text : {kSimulate, scatter, evolve}) {
    const ExperimentConfig c = parse_config(text);
    CHECK(parse_config(config_to_json(c)) == c);
    CHECK(config_to_json(parse_config(config_to_json(c))) == config_to_json(c));
  }
}

TEST_CASE("grid N must be a power of two") {
  const auto issues = issues_of(R"({"mode": "simulate", "potential": "mtm", "grid": {"L": 40, "N": 1000},
                                    "time": {"T_final": 1}, "initial": {"family": "gaussian"}})");
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].pointer == "/grid/N");
}

TEST_CASE("all problems are reported in one pass") {
  const auto issues = issues_of(R"({
    "mode": "simulate", "potential": {"preset": "mtm", "alpha1": 1},
    "grid": {"L": -1, "N": 1000, "M": 3},
    "time": {"dt": -0.1, "cadence": 0},
    "initial": {"family": "triangle"},
    "extra": true
  })");
  for (const char* ptr : {"/potential/alpha1", "/grid/L", "/grid/N", "/grid/M", "/time/dt", "/time/T_final",
                          "/time/cadence", "/initial/family", "/extra"})
    CHECK_MESSAGE(has_pointer(issues, ptr), ptr);
}

TEST_CASE("required blocks depend on the mode") {
  CHECK(has_pointer(issues_of(R"({"mode": "simulate", "grid": {"L": 1, "N": 8}, "time": {"T_final": 1},
                                  "initial": {"family": "gaussian"}})"),
                    "/potential"));
  CHECK(has_pointer(issues_of(R"({"mode": "scatter", "grid": {"L": 10, "N": 8}, "initial": {"family": "gaussian"}})"),
                    "/scattering"));
  CHECK(has_pointer(issues_of(R"({"grid": {"L": 10, "N": 8}, "initial": {"family": "gaussian"}})"), "/mode"));
  // decay needs neither potential nor time; a missing potential means the linear flow
  const auto c = parse_config(R"({"mode": "decay", "grid": {"L": 200, "N": 4096}, "initial": {"family": "gaussian"}})");
  CHECK_FALSE(c.potential);
}

TEST_CASE("cross-field and mode checks") {
  // dt = 0.2 exceeds h = 2 * 40 / 1024
  CHECK(has_pointer(issues_of(R"({"mode": "simulate", "potential": "mtm", "grid": {"L": 40, "N": 1024},
                                  "time": {"dt": 0.2, "T_final": 1}, "initial": {"family": "gaussian"}})"),
                    "/time/dt"));
  CHECK(has_pointer(issues_of(R"({"mode": "decay", "grid": {"L": 50, "N": 1024},
                                  "time": {"window": [10, 100]}, "initial": {"family": "gaussian"}})"),
                    "/time/window"));
  CHECK(has_pointer(issues_of(kSimulate, Mode::Scatter), "/mode"));
  CHECK(parse_config(kSimulate, Mode::Simulate).mode == Mode::Simulate);
  CHECK(has_pointer(issues_of(R"({"mode": "scatter", "grid": {"L": 10, "N": 64}, "initial": {"family": "gaussian"},
                                  "scattering": {"box": [0.01, 1, 0.1, 1]}})"),
                    "/scattering/box"));
  CHECK(has_pointer(issues_of(R"({"mode": "simulate", "potential": {"alpha3": 1, "moduli_only": true},
                                  "grid": {"L": 40, "N": 1024}, "time": {"T_final": 1},
                                  "initial": {"family": "gaussian"}})"),
                    "/potential/moduli_only"));
  CHECK(has_pointer(issues_of(R"({"mode": "simulate", "potential": "coupled_mode(", "grid": {"L": 40, "N": 1024},
                                  "time": {"T_final": 1}, "initial": {"family": "gaussian"}})"),
                    "/potential"));
}

TEST_CASE("malformed documents") {
  CHECK_THROWS_AS(parse_config("{"), ConfigError);
  CHECK_THROWS_AS(parse_config("[1, 2]"), ConfigError);
  CHECK(has_pointer(issues_of(R"({"mode": 3})"), "/mode"));
  CHECK(has_pointer(issues_of(R"({"mode": "simulate", "potential": "mtm", "grid": {"L": "big", "N": 8},
                                  "time": {"T_final": 1}, "initial": {"family": "gaussian"}})"),
                    "/grid/L"));
  try {
    parse_config("{");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
  }
}
