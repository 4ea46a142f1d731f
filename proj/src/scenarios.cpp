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

#include "plet/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "plet/csv_io.hpp"
#include "plet/error.hpp"
#include "plet/model.hpp"
#include "plet/oracle.hpp"
#include "plet/parallel.hpp"
#include "plet/trotter.hpp"

namespace plet {

namespace {

using nlohmann::json;

constexpr double kDeg = kPi / 180.0;
// Amplitudes below this are treated as absent when forming a relative phase.
constexpr double kPhaseFloor = 1e-9;

double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  return a < 0.0 ? a + 2.0 * kPi : a;
}

std::string tag(const std::string& prefix, double v) { return prefix + "_" + format_number(v); }

json diagnostics_json(const IntegrationDiagnostics& d) {
  return {{"max_trace_drift", d.max_trace_drift},
          {"max_hermiticity_error", d.max_hermiticity_error},
          {"min_eigenvalue", d.min_eigenvalue},
          {"rk4_steps", d.rk4_steps}};
}

json per_state(const std::vector<std::string>& states, const std::vector<double>& values) {
  json j = json::object();
  for (std::size_t i = 0; i < states.size(); ++i) j[states[i]] = values[i];
  return j;
}

void require(const ScenarioConfig& c, Scenario s) {
  if (c.scenario != s) {
    throw ConfigError("config scenario is '" + std::string(to_string(c.scenario)) + "', expected '" +
                      std::string(to_string(s)) + "'");
  }
}

// ---------------------------------------------------------------- polar scan

struct PolarPoint {
  Trajectory oracle;
  Trajectory trotter;
  std::map<std::string, double> metrics;
};

double phase_or_nan(Complex b1, Complex b2) {
  if (std::abs(b1) <= kPhaseFloor || std::abs(b2) <= kPhaseFloor) return std::nan("");
  return relative_phase(b1, b2);
}

PolarPoint polar_point(const ScenarioConfig& c, double theta_deg) {
  PletModel model = c.model;
  model.theta = wrap_angle(theta_deg * kDeg);
  const TrotterPlan plan = build_plan(model, PletStep::photoexcitation, c.trotter.total_time_fs, c.trotter.n_steps);
  const QuantumState g = QuantumState::basis(qutrit_space(), 0);

  const EvolutionResult ref = reference_dynamics(model, plan, g);
  PolarPoint p{ref.trajectory, trotter_trajectory(plan, g), {}};

  CVector psi = g.amplitudes();
  for (int j = 1; j <= plan.n_steps; ++j) psi = step_unitary(plan, j).matrix() * psi;
  const QuantumState& exact = ref.states.back();

  const auto& po = p.oracle.populations.back();
  const auto& pt = p.trotter.populations.back();
  auto& m = p.metrics;
  m["rho_oracle"] = normalized_population_difference(po[1], po[2]);
  m["rho_trotter"] = normalized_population_difference(pt[1], pt[2]);
  m["rho_expected"] = std::cos(2.0 * model.theta);
  m["phi_oracle_deg"] = phase_or_nan(exact[1], exact[2]) / kDeg;
  m["phi_trotter_deg"] = phase_or_nan(psi(1), psi(2)) / kDeg;
  m["P_D1_final"] = po[1];
  m["P_D2_final"] = po[2];
  m["sigma_tro_D1"] = mean_distance(p.trotter, p.oracle, "D1");
  m["sigma_tro_D2"] = mean_distance(p.trotter, p.oracle, "D2");
  return p;
}

// Distance of an angle in degrees from the nearest of {0, 180}.
double quantization_error_deg(double phi_deg) {
  const double r = std::fmod(phi_deg, 180.0);
  return std::min(std::abs(r), std::abs(180.0 - r));
}

// ------------------------------------------------------------ ET helpers

std::vector<ScanRecord> et_records(const std::vector<EtRun>& runs, const std::vector<double>& values) {
  std::vector<ScanRecord> out;
  for (std::size_t i = 0; i < runs.size(); ++i) out.push_back({values[i], electron_transfer_metrics(runs[i])});
  return out;
}

json fwhm_json(const ScanResult& scan, const std::string& metric, const FeatureWidth& w) {
  return {{"metric", metric},
          {"width", w.width},
          {"width_percent", 100.0 * w.width},
          {"left", w.left},
          {"right", w.right},
          {"baseline", w.baseline},
          {"half_level", w.half_level},
          {"points", scan.records.size()}};
}

// Midpoints of the interval holding a crossing and of its two neighbours.
void bisect_around(const std::vector<double>& x, double crossing, std::set<double>& out) {
  const auto it = std::upper_bound(x.begin(), x.end(), crossing);
  if (it == x.begin() || it == x.end()) return;
  const std::ptrdiff_t k = it - x.begin();  // x[k-1] <= crossing < x[k]
  for (std::ptrdiff_t i = k - 2; i <= k; ++i) {
    if (i < 0 || i + 1 >= static_cast<std::ptrdiff_t>(x.size())) continue;
    out.insert(std::stod(format_number(0.5 * (x[i] + x[i + 1]))));
  }
}

}  // namespace

std::vector<double> scan_grid(const ScanSpec& spec) {
  std::vector<double> out;
  if (spec.points == 1) return {spec.start};
  for (int i = 0; i < spec.points; ++i) {
    const double v = spec.start + (spec.stop - spec.start) * i / (spec.points - 1);
    out.push_back(std::stod(format_number(v)));
  }
  return out;
}

EtRun electron_transfer_run(const PletModel& model, const TrotterSettings& trotter, double phi) {
  const TrotterPlan plan = build_plan(model, PletStep::electron_transfer, trotter.total_time_fs, trotter.n_steps);
  const QuantumState psi0 = initial_superposition(phi);
  return {reference_dynamics(model, plan, psi0).trajectory, trotter_trajectory(plan, psi0)};
}

std::map<std::string, double> electron_transfer_metrics(const EtRun& run) {
  std::map<std::string, double> m;
  for (const auto& [suffix, traj] : {std::pair<std::string, const Trajectory*>{"", &run.oracle},
                                     std::pair<std::string, const Trajectory*>{"_trotter", &run.trotter}}) {
    const double s1 = donor_deviation(*traj, "D1");
    const double s2 = donor_deviation(*traj, "D2");
    m["sigma_D1" + suffix] = s1;
    m["sigma_D2" + suffix] = s2;
    m["sigma_mean" + suffix] = 0.5 * (s1 + s2);
    m["acceptor_average" + suffix] = time_averaged_population(*traj, "A");
    const auto a = traj->column("A");
    m["acceptor_max" + suffix] = *std::max_element(a.begin() + 1, a.end());
  }
  for (const char* s : {"A", "D1", "D2"}) m[std::string("sigma_tro_") + s] = mean_distance(run.trotter, run.oracle, s);
  return m;
}

double mean_abs_deviation(const Trajectory& a, const Trajectory& b, const std::vector<std::string>& states) {
  if (a.steps != b.steps) throw ContractViolation("mean_abs_deviation: step grids differ");
  if (a.size() < 2) throw ContractViolation("mean_abs_deviation: need at least one step");
  double sum = 0.0;
  for (const auto& s : states) {
    const auto ca = a.column(s);
    const auto cb = b.column(s);
    for (std::size_t i = 1; i < ca.size(); ++i) sum += std::abs(ca[i] - cb[i]);
  }
  return sum / static_cast<double>(states.size() * (a.size() - 1));
}

ScenarioOutput run_polar_scan(const ScenarioConfig& c, int threads) {
  require(c, Scenario::polar_scan);
  const auto thetas = scan_grid(c.scan);
  auto points = parallel_map(thetas.size(), threads, [&](std::size_t i) { return polar_point(c, thetas[i]); });

  ScenarioOutput out;
  ScanResult scan{"theta_deg", {}};
  double rho_err_oracle = 0.0, rho_err_trotter = 0.0, phase_err_oracle = 0.0, phase_err_trotter = 0.0;
  int phase_points = 0;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    auto& p = points[i];
    const auto& m = p.metrics;
    rho_err_oracle = std::max(rho_err_oracle, std::abs(m.at("rho_oracle") - m.at("rho_expected")));
    rho_err_trotter = std::max(rho_err_trotter, std::abs(m.at("rho_trotter") - m.at("rho_expected")));
    if (!std::isnan(m.at("phi_oracle_deg"))) {
      phase_err_oracle = std::max(phase_err_oracle, quantization_error_deg(m.at("phi_oracle_deg")) * kDeg);
      ++phase_points;
    }
    if (!std::isnan(m.at("phi_trotter_deg"))) {
      phase_err_trotter = std::max(phase_err_trotter, quantization_error_deg(m.at("phi_trotter_deg")) * kDeg);
    }
    scan.records.push_back({thetas[i], m});
    out.trajectories.emplace_back(tag("theta", thetas[i]) + "_oracle.csv", std::move(p.oracle));
    out.trajectories.emplace_back(tag("theta", thetas[i]) + "_trotter.csv", std::move(p.trotter));
  }
  scan.normalize();
  out.summary = {{"scenario", "polar_scan"},
                 {"simulated_time_fs", c.trotter.total_time_fs},
                 {"n_steps", c.trotter.n_steps},
                 {"points", thetas.size()},
                 {"max_rho_error_oracle", rho_err_oracle},
                 {"max_rho_error_trotter", rho_err_trotter},
                 {"max_phase_quantization_error_oracle_rad", phase_err_oracle},
                 {"max_phase_quantization_error_trotter_rad", phase_err_trotter},
                 {"phase_defined_points", phase_points}};
  out.scan = std::move(scan);
  return out;
}

ScenarioOutput run_phase_scan(const ScenarioConfig& c, int threads) {
  require(c, Scenario::phase_scan);
  const auto phis = scan_grid(c.scan);
  auto runs = parallel_map(phis.size(), threads,
                           [&](std::size_t i) { return electron_transfer_run(c.model, c.trotter, phis[i] * kDeg); });
  ScenarioOutput out;
  ScanResult scan{"phi_deg", et_records(runs, phis)};
  scan.normalize();

  // Mirror symmetry: swapping D1 and D2 turns the phi state into the
  // 360 - phi state up to a global phase, so metrics at the two angles agree
  // with the D1/D2 labels exchanged. Exact for the oracle; the Trotter split
  // treats the two pathways asymmetrically and follows it only up to its
  // error.
  auto mirrored = [](std::string name) {
    const auto d1 = name.find("D1"), d2 = name.find("D2");
    if (d1 != std::string::npos) name[d1 + 1] = '2';
    if (d2 != std::string::npos) name[d2 + 1] = '1';
    return name;
  };
  double asym_oracle = 0.0, asym_trotter = 0.0;
  for (std::size_t i = 0; i < phis.size(); ++i) {
    for (std::size_t k = 0; k < phis.size(); ++k) {
      if (std::abs(phis[i] + phis[k] - 360.0) > 1e-9) continue;
      for (const auto& [name, v] : scan.records[i].metrics) {
        const bool trotter = name.find("trotter") != std::string::npos || name.rfind("sigma_tro", 0) == 0;
        double& slot = trotter ? asym_trotter : asym_oracle;
        slot = std::max(slot, std::abs(v - scan.records[k].metrics.at(mirrored(name))));
      }
    }
  }
  for (std::size_t i = 0; i < phis.size(); ++i) {
    out.trajectories.emplace_back(tag("phi", phis[i]) + "_oracle.csv", std::move(runs[i].oracle));
    out.trajectories.emplace_back(tag("phi", phis[i]) + "_trotter.csv", std::move(runs[i].trotter));
  }
  out.summary = {{"scenario", "phase_scan"},
                 {"simulated_time_fs", c.trotter.total_time_fs},
                 {"n_steps", c.trotter.n_steps},
                 {"points", phis.size()},
                 {"max_mirror_asymmetry_oracle", asym_oracle},
                 {"max_mirror_asymmetry_trotter", asym_trotter}};
  out.scan = std::move(scan);
  return out;
}

ScenarioOutput run_degeneracy_scan(const ScenarioConfig& c, int threads) {
  require(c, Scenario::degeneracy_scan);
  auto evaluate = [&](const std::vector<double>& ratios) {
    auto runs = parallel_map(ratios.size(), threads, [&](std::size_t i) {
      PletModel m = c.model;
      m.omega_d2 = ratios[i] * c.model.omega_d1;
      return electron_transfer_run(m, c.trotter, c.initial_phase);
    });
    return et_records(runs, ratios);
  };

  ScanResult scan{"omega_d2_over_omega_d1", evaluate(scan_grid(c.scan))};
  scan.normalize();
  std::optional<FeatureWidth> width;
  std::string width_error;
  auto measure = [&] {
    try {
      width = fwhm_of_feature(scan, c.fwhm_metric, 1.0, FeatureKind::dip);
    } catch (const ContractViolation& e) {
      width.reset();
      width_error = e.what();
    }
  };
  measure();
  int rounds_done = 0;
  for (int r = 0; r < c.scan.refine_rounds && width; ++r, ++rounds_done) {
    const auto x = scan.values();
    std::set<double> extra;
    bisect_around(x, width->left, extra);
    bisect_around(x, width->right, extra);
    for (double v : x) extra.erase(v);
    if (extra.empty()) break;
    auto added = evaluate({extra.begin(), extra.end()});
    scan.records.insert(scan.records.end(), added.begin(), added.end());
    scan.normalize();
    measure();
  }

  ScenarioOutput out;
  out.summary = {{"scenario", "degeneracy_scan"},
                 {"omega_d1_ev", c.model.omega_d1},
                 {"initial_phase_deg", c.initial_phase / kDeg},
                 {"simulated_time_fs", c.trotter.total_time_fs},
                 {"n_steps", c.trotter.n_steps},
                 {"refine_rounds", rounds_done}};
  if (width) {
    out.summary["fwhm"] = fwhm_json(scan, c.fwhm_metric, *width);
  } else {
    out.summary["fwhm"] = nullptr;
    out.summary["fwhm_error"] = width_error;
  }

  // Representative trajectories: the degenerate point and the lifted
  // regime shown next to the scan (omega_D2 = 3.76 eV for omega_D1 = 3.86).
  for (double ratio : {1.0, 0.974}) {
    PletModel m = c.model;
    m.omega_d2 = ratio * c.model.omega_d1;
    EtRun run = electron_transfer_run(m, c.trotter, c.initial_phase);
    const auto d1 = run.oracle.column("D1");
    const auto a = run.oracle.column("A");
    double donor_swing = 0.0;
    for (std::size_t i = 1; i < d1.size(); ++i) donor_swing = std::max(donor_swing, std::abs(d1[i] - 0.5));
    out.summary["ratio_" + format_number(ratio)] = {{"acceptor_max", *std::max_element(a.begin() + 1, a.end())},
                                                    {"donor_d1_max_swing", donor_swing},
                                                    {"acceptor_average", time_averaged_population(run.oracle, "A")}};
    out.trajectories.emplace_back(tag("ratio", ratio) + "_oracle.csv", std::move(run.oracle));
    out.trajectories.emplace_back(tag("ratio", ratio) + "_trotter.csv", std::move(run.trotter));
  }
  out.summary["points"] = scan.records.size();
  out.scan = std::move(scan);
  return out;
}

ScenarioOutput run_trotter_accuracy(const ScenarioConfig& c, int threads) {
  require(c, Scenario::trotter_accuracy);
  ScenarioOutput out;
  const std::vector<std::string> photo_states{"G", "D1", "D2"};
  const std::vector<std::string> et_states{"A", "D1", "D2"};

  auto average = [](const std::vector<std::vector<double>>& rows) {
    std::vector<double> mean(rows.front().size(), 0.0);
    for (const auto& r : rows) {
      for (std::size_t k = 0; k < r.size(); ++k) mean[k] += r[k] / static_cast<double>(rows.size());
    }
    return mean;
  };
  auto sigmas = [](const Trajectory& tro, const Trajectory& th, const std::vector<std::string>& states) {
    std::vector<double> v;
    for (const auto& s : states) v.push_back(mean_distance(tro, th, s));
    return v;
  };
  auto external_sigma = [&](const std::optional<std::string>& path, const Trajectory& th,
                            const std::vector<std::string>& states) -> json {
    if (!path) return nullptr;
    const Trajectory ext = ingest_external(*path, states);
    std::vector<double> v;
    try {
      v = sigmas(ext, th, states);
    } catch (const ContractViolation& e) {
      throw ParseError(*path + ": " + e.what());
    }
    return per_state(states, v);
  };

  // Photo-excitation block: trials over the polarization angle.
  const auto thetas = scan_grid(c.photo_trials);
  const QuantumState g = QuantumState::basis(qutrit_space(), 0);
  auto photo_pair = [&](double theta) {
    PletModel m = c.model;
    m.theta = wrap_angle(theta);
    const TrotterPlan plan =
        build_plan(m, PletStep::photoexcitation, c.photo_trotter.total_time_fs, c.photo_trotter.n_steps);
    return std::pair{reference_dynamics(m, plan, g).trajectory, trotter_trajectory(plan, g)};
  };
  auto photo_rows = parallel_map(thetas.size(), threads, [&](std::size_t i) {
    auto [th, tro] = photo_pair(thetas[i] * kDeg);
    return sigmas(tro, th, photo_states);
  });
  auto [photo_th, photo_tro] = photo_pair(c.model.theta);
  const auto photo_rep = sigmas(photo_tro, photo_th, photo_states);

  // Electron-transfer block: trials over the initial relative phase.
  const auto phis = scan_grid(c.et_trials);
  auto et_rows = parallel_map(phis.size(), threads, [&](std::size_t i) {
    const EtRun run = electron_transfer_run(c.model, c.trotter, phis[i] * kDeg);
    return sigmas(run.trotter, run.oracle, et_states);
  });
  EtRun et = electron_transfer_run(c.model, c.trotter, c.initial_phase);
  const auto et_rep = sigmas(et.trotter, et.oracle, et_states);

  out.summary = {
      {"scenario", "trotter_accuracy"},
      {"photoexcitation",
       {{"simulated_time_fs", c.photo_trotter.total_time_fs},
        {"n_steps", c.photo_trotter.n_steps},
        {"trials", thetas.size()},
        {"trial_variable", "theta_deg"},
        {"sigma_tro", per_state(photo_states, average(photo_rows))},
        {"representative_theta_deg", c.model.theta / kDeg},
        {"sigma_tro_representative", per_state(photo_states, photo_rep)},
        {"sigma_exp", external_sigma(c.external_photoexcitation, photo_th, photo_states)}}},
      {"electron_transfer",
       {{"simulated_time_fs", c.trotter.total_time_fs},
        {"n_steps", c.trotter.n_steps},
        {"trials", phis.size()},
        {"trial_variable", "phi_deg"},
        {"sigma_tro", per_state(et_states, average(et_rows))},
        {"representative_phi_deg", c.initial_phase / kDeg},
        {"sigma_tro_representative", per_state(et_states, et_rep)},
        {"sigma_exp", external_sigma(c.external_electron_transfer, et.oracle, et_states)}}}};
  out.trajectories.emplace_back("photoexcitation_th.csv", std::move(photo_th));
  out.trajectories.emplace_back("photoexcitation_tro.csv", std::move(photo_tro));
  out.trajectories.emplace_back("electron_transfer_th.csv", std::move(et.oracle));
  out.trajectories.emplace_back("electron_transfer_tro.csv", std::move(et.trotter));
  return out;
}

ScenarioOutput run_noise_comparison(const ScenarioConfig& c, int threads) {
  require(c, Scenario::noise_comparison);
  const PletModel& model = c.model;
  const TrotterPlan plan = build_plan(model, PletStep::electron_transfer, c.trotter.total_time_fs, c.trotter.n_steps);
  const QuantumState psi0 = initial_superposition(c.initial_phase);
  const std::vector<std::string> states{"A", "D1", "D2"};

  Trajectory th = reference_dynamics(model, plan, psi0).trajectory;
  Trajectory tro = trotter_trajectory(plan, psi0);

  const PulseSchedule schedule = compile_qutrit(plan, c.trotter.rabi_01, c.trotter.rabi_02, c.trotter.convention);
  const PauliDecomposition d = pauli_decompose(qubit_embed(h2_shifted(model)));
  const QubitCircuit circuit =
      compile_qubit(std::vector<PauliDecomposition>(plan.n_steps, d), plan.step_length_fs());

  // The two platform runs are independent.
  auto runs = parallel_map(2, threads, [&](std::size_t i) {
    return i == 0 ? simulate_qutrit_noisy(schedule, c.qutrit_noise, psi0)
                  : simulate_qubit_noisy(circuit, c.qubit_noise, psi0);
  });
  NoisyRun& qutrit = runs[0];
  NoisyRun& qubit = runs[1];
  Trajectory qutrit_ideal = simulate_schedule_ideal(schedule, psi0);
  Trajectory qubit_ideal = simulate_circuit_ideal(circuit, psi0);

  auto max_abs = [&](const Trajectory& a, const Trajectory& b) {
    double m = 0.0;
    for (const auto& s : states) {
      const auto ca = a.column(s), cb = b.column(s);
      for (std::size_t i = 1; i < ca.size(); ++i) m = std::max(m, std::abs(ca[i] - cb[i]));
    }
    return m;
  };
  const auto leak = qubit.trajectory.column("leak11");

  json gates = json::array();
  for (const auto& gte : circuit.gates) {
    static const char* kinds[] = {"rz", "rx", "h", "xx"};
    gates.push_back({{"gate", kinds[static_cast<int>(gte.kind)]},
                     {"target", gte.target},
                     {"angle_rad", gte.angle},
                     {"step_index", gte.step_index}});
  }

  ScenarioOutput out;
  out.summary = {
      {"scenario", "noise_comparison"},
      {"simulated_time_fs", plan.total_time_fs},
      {"n_steps", plan.n_steps},
      {"initial_phase_deg", c.initial_phase / kDeg},
      {"rabi_convention", to_string(c.trotter.convention)},
      {"sigma_tro", per_state(states, {mean_distance(tro, th, "A"), mean_distance(tro, th, "D1"),
                                       mean_distance(tro, th, "D2")})},
      {"qutrit",
       {{"total_duration_s", schedule.total_duration},
        {"simulated_lab_time_s", qutrit.total_lab_time},
        {"pulses", schedule.pulses.size()},
        {"mean_abs_deviation_vs_th", mean_abs_deviation(qutrit.trajectory, th, states)},
        {"max_abs_deviation_vs_th", max_abs(qutrit.trajectory, th)},
        {"max_abs_deviation_vs_ideal", max_abs(qutrit.trajectory, qutrit_ideal)},
        {"mean_abs_deviation_vs_ideal", mean_abs_deviation(qutrit.trajectory, qutrit_ideal, states)},
        {"diagnostics", diagnostics_json(qutrit.diagnostics)}}},
      {"qubit",
       {{"total_duration_s", qubit_circuit_duration(circuit, c.qubit_noise.sideband_rabi)},
        {"simulated_lab_time_s", qubit.total_lab_time},
        {"gates", circuit.gates.size()},
        {"sideband_rabi_rad_per_s", c.qubit_noise.sideband_rabi},
        {"n_max", c.qubit_noise.n_max},
        {"mean_abs_deviation_vs_th", mean_abs_deviation(qubit.trajectory, th, states)},
        {"max_abs_deviation_vs_th", max_abs(qubit.trajectory, th)},
        {"max_abs_deviation_vs_ideal", max_abs(qubit.trajectory, qubit_ideal)},
        {"mean_abs_deviation_vs_ideal", mean_abs_deviation(qubit.trajectory, qubit_ideal, states)},
        {"max_leak11", *std::max_element(leak.begin(), leak.end())},
        {"max_fock_top_population", qubit.max_fock_top_population},
        {"max_fock_top_population_in_phase", qubit.max_fock_top_population_ip},
        {"diagnostics", diagnostics_json(qubit.diagnostics)}}}};
  out.documents.emplace_back("schedule.json", schedule_to_json(schedule));
  out.documents.emplace_back("circuit.json", gates);
  out.trajectories.emplace_back("p_th.csv", std::move(th));
  out.trajectories.emplace_back("p_tro.csv", std::move(tro));
  out.trajectories.emplace_back("qutrit_pred.csv", std::move(qutrit.trajectory));
  out.trajectories.emplace_back("qubit_pred.csv", std::move(qubit.trajectory));
  out.trajectories.emplace_back("qubit_ideal.csv", std::move(qubit_ideal));
  return out;
}

ScenarioOutput run_scenario(const ScenarioConfig& c, int threads) {
  switch (c.scenario) {
    case Scenario::polar_scan: return run_polar_scan(c, threads);
    case Scenario::phase_scan: return run_phase_scan(c, threads);
    case Scenario::degeneracy_scan: return run_degeneracy_scan(c, threads);
    case Scenario::trotter_accuracy: return run_trotter_accuracy(c, threads);
    case Scenario::noise_comparison: return run_noise_comparison(c, threads);
  }
  throw ContractViolation("run_scenario: unknown scenario");
}

std::vector<std::filesystem::path> write_outputs(const ScenarioOutput& output, const std::filesystem::path& dir) {
  // Render everything first so a bad trajectory leaves no partial output.
  std::vector<std::pair<std::filesystem::path, std::string>> files;
  files.emplace_back(dir / "summary.json", output.summary.dump(2) + "\n");
  if (output.scan) files.emplace_back(dir / "scan.csv", scan_csv(*output.scan));
  for (const auto& [name, traj] : output.trajectories) files.emplace_back(dir / name, trajectory_csv(traj));
  for (const auto& [name, doc] : output.documents) files.emplace_back(dir / name, doc.dump(2) + "\n");

  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  for (const auto& [path, text] : files) {
    write_text_file(path, text);
    written.push_back(path);
  }
  return written;
}

}  // namespace plet
