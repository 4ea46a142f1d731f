// Copyright 2026 The plet-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "plet/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>

#include "plet/error.hpp"

namespace plet {

namespace {

using nlohmann::json;

constexpr double kDeg = kPi / 180.0;
constexpr double kTwoPi = 2.0 * kPi;

// Reads typed fields out of one JSON object and rejects keys nobody asked
// for once the block has been consumed.
class Block {
 public:
  Block(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + ": expected an object");
  }
  ~Block() = default;

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key);
  }

  void number(const std::string& key, double& out, double scale = 1.0) {
    if (!has(key)) return;
    const auto& v = j_.at(key);
    if (!v.is_number()) throw ConfigError(where(key) + ": expected a number");
    out = v.get<double>() * scale;
    if (!std::isfinite(out)) throw ConfigError(where(key) + ": must be finite");
  }

  // null maps to +infinity (a disabled decoherence channel).
  void time_or_null(const std::string& key, double& out) {
    if (!has(key)) return;
    const auto& v = j_.at(key);
    if (v.is_null()) {
      out = std::numeric_limits<double>::infinity();
      return;
    }
    if (!v.is_number()) throw ConfigError(where(key) + ": expected a number or null");
    out = v.get<double>();
  }

  void integer(const std::string& key, int& out) {
    if (!has(key)) return;
    const auto& v = j_.at(key);
    if (!v.is_number_integer()) throw ConfigError(where(key) + ": expected an integer");
    out = v.get<int>();
  }

  void string(const std::string& key, std::string& out) {
    if (!has(key)) return;
    const auto& v = j_.at(key);
    if (!v.is_string()) throw ConfigError(where(key) + ": expected a string");
    out = v.get<std::string>();
  }

  void optional_string(const std::string& key, std::optional<std::string>& out) {
    if (!has(key)) return;
    const auto& v = j_.at(key);
    if (v.is_null()) {
      out.reset();
      return;
    }
    if (!v.is_string()) throw ConfigError(where(key) + ": expected a string or null");
    out = v.get<std::string>();
  }

  const json* child(const std::string& key) {
    if (!has(key)) return nullptr;
    return &j_.at(key);
  }

  const json& raw(const std::string& key) { return j_.at(key); }

  std::string where(const std::string& key) const { return path_ + "." + key; }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError(path_ + ": unknown key '" + it.key() + "'");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_trotter(const json& j, const std::string& path, TrotterSettings& t) {
  Block b(j, path);
  b.number("total_time_fs", t.total_time_fs);
  b.integer("n_steps", t.n_steps);
  b.number("rabi_01_hz", t.rabi_01, kTwoPi);
  b.number("rabi_02_hz", t.rabi_02, kTwoPi);
  std::string conv(to_string(t.convention));
  b.string("convention", conv);
  try {
    t.convention = rabi_convention_from_string(conv);
  } catch (const ContractViolation& e) {
    throw ConfigError(b.where("convention") + ": " + e.what());
  }
  b.finish();
  if (!(t.total_time_fs > 0.0)) throw ConfigError(path + ".total_time_fs: must be > 0");
  if (t.n_steps < 1) throw ConfigError(path + ".n_steps: must be >= 1");
  if (!(t.rabi_01 > 0.0) || !(t.rabi_02 > 0.0)) throw ConfigError(path + ": Rabi frequencies must be > 0");
}

void read_scan(const json& j, const std::string& path, ScanSpec& s) {
  Block b(j, path);
  b.number("start", s.start);
  b.number("stop", s.stop);
  b.integer("points", s.points);
  b.integer("refine_rounds", s.refine_rounds);
  b.finish();
  if (s.points < 1) throw ConfigError(path + ".points: must be >= 1");
  if (s.points > 1 && !(s.stop > s.start)) throw ConfigError(path + ": stop must exceed start");
  if (s.refine_rounds < 0) throw ConfigError(path + ".refine_rounds: must be >= 0");
}

json trotter_json(const TrotterSettings& t) {
  return {{"total_time_fs", t.total_time_fs},
          {"n_steps", t.n_steps},
          {"rabi_01_hz", t.rabi_01 / kTwoPi},
          {"rabi_02_hz", t.rabi_02 / kTwoPi},
          {"convention", to_string(t.convention)}};
}

json scan_json(const ScanSpec& s) {
  return {{"start", s.start}, {"stop", s.stop}, {"points", s.points}, {"refine_rounds", s.refine_rounds}};
}

json time_json(double tau) { return std::isinf(tau) ? json(nullptr) : json(tau); }

}  // namespace

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::polar_scan: return "polar_scan";
    case Scenario::phase_scan: return "phase_scan";
    case Scenario::degeneracy_scan: return "degeneracy_scan";
    case Scenario::trotter_accuracy: return "trotter_accuracy";
    case Scenario::noise_comparison: return "noise_comparison";
  }
  return "unknown";
}

Scenario scenario_from_string(std::string_view s) {
  for (auto sc : {Scenario::polar_scan, Scenario::phase_scan, Scenario::degeneracy_scan, Scenario::trotter_accuracy,
                  Scenario::noise_comparison}) {
    if (to_string(sc) == s) return sc;
  }
  throw ConfigError("unknown scenario '" + std::string(s) + "'");
}

ScenarioConfig default_config(Scenario scenario) {
  ScenarioConfig c;
  c.scenario = scenario;
  c.output_dir = "out/" + std::string(to_string(scenario));
  // Electron-transfer block, 70 steps of 0.471 fs.
  c.trotter.total_time_fs = 70 * 0.471;
  c.trotter.n_steps = 70;
  c.photo_trotter.total_time_fs = 7.91;
  c.photo_trotter.n_steps = 40;
  c.model.theta = 135.0 * kDeg;
  c.photo_trials = {0.0, 175.0, 36, 0};
  c.et_trials = {0.0, 345.0, 24, 0};
  switch (scenario) {
    case Scenario::polar_scan:
      c.trotter = c.photo_trotter;
      c.scan = {0.0, 180.0, 37, 0};
      break;
    case Scenario::phase_scan:
      c.scan = {0.0, 360.0, 25, 0};
      break;
    case Scenario::degeneracy_scan:
      c.model.omega_d1 = 3.86;
      c.model.omega_d2 = 3.86;
      c.initial_phase = kPi;
      c.trotter.total_time_fs = 70 * 0.659;
      c.scan = {0.95, 1.05, 81, 3};
      break;
    case Scenario::trotter_accuracy:
      c.trotter.total_time_fs = 32.91;
      break;
    case Scenario::noise_comparison:
      break;
  }
  c.qubit_noise.sideband_rabi = 0.5 * (c.sideband_rabi_a + c.sideband_rabi_b);
  return c;
}

ScenarioConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
  if (!doc.contains("scenario") || !doc.at("scenario").is_string()) {
    throw ConfigError("config.scenario: required string");
  }
  ScenarioConfig c = default_config(scenario_from_string(doc.at("scenario").get<std::string>()));

  Block root(doc, "config");
  std::string scenario_name;
  root.string("scenario", scenario_name);
  root.string("output_dir", c.output_dir);

  if (const json* m = root.child("model")) {
    Block b(*m, "config.model");
    b.number("omega_g_ev", c.model.omega_g);
    b.number("omega_d1_ev", c.model.omega_d1);
    b.number("omega_d2_ev", c.model.omega_d2);
    b.number("omega_a_ev", c.model.omega_a);
    b.number("mu1_ea0", c.model.mu1);
    b.number("mu2_ea0", c.model.mu2);
    b.number("v1_ev", c.model.v1);
    b.number("v2_ev", c.model.v2);
    b.number("e0_v_per_m", c.model.e0);
    b.number("theta_deg", c.model.theta, kDeg);
    if (b.has("omega_laser_rad_per_fs")) {
      const auto& v = b.raw("omega_laser_rad_per_fs");
      if (v.is_null()) {
        c.model.omega_laser.reset();
      } else if (v.is_number()) {
        c.model.omega_laser = v.get<double>();
      } else {
        throw ConfigError("config.model.omega_laser_rad_per_fs: expected a number or null");
      }
    }
    b.finish();
  }
  try {
    c.model.validate();
  } catch (const ContractViolation& e) {
    throw ConfigError(std::string("config.model: ") + e.what());
  }

  if (const json* t = root.child("trotter")) read_trotter(*t, "config.trotter", c.trotter);
  if (const json* t = root.child("photoexcitation_trotter")) {
    read_trotter(*t, "config.photoexcitation_trotter", c.photo_trotter);
  }
  root.number("initial_phase_deg", c.initial_phase, kDeg);

  if (const json* n = root.child("noise")) {
    Block nb(*n, "config.noise");
    if (const json* q = nb.child("qutrit")) {
      Block b(*q, "config.noise.qutrit");
      b.time_or_null("tau1_s", c.qutrit_noise.tau1);
      b.time_or_null("tau2_s", c.qutrit_noise.tau2);
      b.finish();
    }
    if (const json* q = nb.child("qubit")) {
      Block b(*q, "config.noise.qubit");
      b.time_or_null("tau_m_s", c.qubit_noise.tau_m);
      b.number("gamma_oop_per_s", c.qubit_noise.gamma_oop);
      b.number("gamma_ip_per_s", c.qubit_noise.gamma_ip);
      b.integer("n_max", c.qubit_noise.n_max);
      if (b.has("sideband_rabi_hz")) {
        const auto& v = b.raw("sideband_rabi_hz");
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
          throw ConfigError("config.noise.qubit.sideband_rabi_hz: expected [number, number]");
        }
        c.sideband_rabi_a = kTwoPi * v[0].get<double>();
        c.sideband_rabi_b = kTwoPi * v[1].get<double>();
      }
      b.finish();
    }
    nb.finish();
  }
  c.qubit_noise.sideband_rabi = 0.5 * (c.sideband_rabi_a + c.sideband_rabi_b);
  try {
    c.qutrit_noise.validate();
    c.qubit_noise.validate();
  } catch (const ContractViolation& e) {
    throw ConfigError(std::string("config.noise: ") + e.what());
  }

  if (const json* s = root.child("scan")) read_scan(*s, "config.scan", c.scan);
  if (const json* t = root.child("trials")) {
    Block b(*t, "config.trials");
    if (const json* s = b.child("photoexcitation")) read_scan(*s, "config.trials.photoexcitation", c.photo_trials);
    if (const json* s = b.child("electron_transfer")) read_scan(*s, "config.trials.electron_transfer", c.et_trials);
    b.finish();
  }
  root.string("fwhm_metric", c.fwhm_metric);
  static const std::set<std::string> kFwhmMetrics{"sigma_D1", "sigma_D2", "sigma_mean", "acceptor_average"};
  if (!kFwhmMetrics.count(c.fwhm_metric)) throw ConfigError("config.fwhm_metric: unknown metric '" + c.fwhm_metric + "'");

  if (const json* e = root.child("external")) {
    Block b(*e, "config.external");
    b.optional_string("photoexcitation", c.external_photoexcitation);
    b.optional_string("electron_transfer", c.external_electron_transfer);
    b.finish();
  }
  root.finish();
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  return parse_config(doc);
}

json config_to_json(const ScenarioConfig& c) {
  json model{{"omega_g_ev", c.model.omega_g},
             {"omega_d1_ev", c.model.omega_d1},
             {"omega_d2_ev", c.model.omega_d2},
             {"omega_a_ev", c.model.omega_a},
             {"mu1_ea0", c.model.mu1},
             {"mu2_ea0", c.model.mu2},
             {"v1_ev", c.model.v1},
             {"v2_ev", c.model.v2},
             {"e0_v_per_m", c.model.e0},
             {"theta_deg", c.model.theta / kDeg},
             {"omega_laser_rad_per_fs", c.model.omega_laser ? json(*c.model.omega_laser) : json(nullptr)}};
  json external{{"photoexcitation", c.external_photoexcitation ? json(*c.external_photoexcitation) : json(nullptr)},
                {"electron_transfer",
                 c.external_electron_transfer ? json(*c.external_electron_transfer) : json(nullptr)}};
  return {{"scenario", to_string(c.scenario)},
          {"output_dir", c.output_dir},
          {"model", model},
          {"trotter", trotter_json(c.trotter)},
          {"photoexcitation_trotter", trotter_json(c.photo_trotter)},
          {"initial_phase_deg", c.initial_phase / kDeg},
          {"noise",
           {{"qutrit", {{"tau1_s", time_json(c.qutrit_noise.tau1)}, {"tau2_s", time_json(c.qutrit_noise.tau2)}}},
            {"qubit",
             {{"tau_m_s", time_json(c.qubit_noise.tau_m)},
              {"gamma_oop_per_s", c.qubit_noise.gamma_oop},
              {"gamma_ip_per_s", c.qubit_noise.gamma_ip},
              {"n_max", c.qubit_noise.n_max},
              {"sideband_rabi_hz", {c.sideband_rabi_a / kTwoPi, c.sideband_rabi_b / kTwoPi}}}}}},
          {"scan", scan_json(c.scan)},
          {"trials", {{"photoexcitation", scan_json(c.photo_trials)}, {"electron_transfer", scan_json(c.et_trials)}}},
          {"fwhm_metric", c.fwhm_metric},
          {"external", external}};
}

}  // namespace plet
