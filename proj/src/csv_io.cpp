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

#include "plet/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "plet/error.hpp"

namespace plet {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_double(const std::string& s, double& out) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

bool parse_int(const std::string& s, int& out) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string trajectory_csv(const Trajectory& traj) {
  traj.validate();
  if (!traj.step_aligned()) throw ContractViolation("trajectory_csv: trajectory is not step aligned");
  std::string out = "step_index,sim_time_fs";
  for (const auto& l : traj.labels) out += ",P_" + l;
  if (traj.uncertainty) {
    for (const auto& l : traj.labels) out += ",err_" + l;
  }
  out += '\n';
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out += std::to_string(traj.steps[i]);
    out += ',' + format_number(traj.times_fs[i]);
    for (double p : traj.populations[i]) out += ',' + format_number(p);
    if (traj.uncertainty) {
      for (double e : (*traj.uncertainty)[i]) out += ',' + format_number(e);
    }
    out += '\n';
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path) {
  write_text_file(path, trajectory_csv(traj));
}

std::string scan_csv(const ScanResult& scan) {
  std::set<std::string> names;
  for (const auto& r : scan.records) {
    for (const auto& [k, v] : r.metrics) names.insert(k);
  }
  std::string out = scan.variable;
  for (const auto& n : names) out += ',' + n;
  out += '\n';
  for (const auto& r : scan.records) {
    out += format_number(r.value);
    for (const auto& n : names) {
      auto it = r.metrics.find(n);
      out += ',' + format_number(it == r.metrics.end() ? std::nan("") : it->second);
    }
    out += '\n';
  }
  return out;
}

void write_scan_csv(const ScanResult& scan, const std::filesystem::path& path) {
  write_text_file(path, scan_csv(scan));
}

Trajectory parse_trajectory_csv(const std::string& text, const std::vector<std::string>& labels,
                                const std::string& source) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> problems;
  auto fail = [&](const std::string& what) {
    throw ParseError(source + ": " + what);
  };
  if (!std::getline(in, line)) fail("empty file");
  auto header = split(line);
  for (auto& h : header) h = trim(h);
  if (header.size() < 2 || header[0] != "step_index" || header[1] != "sim_time_fs") {
    fail("header must start with step_index,sim_time_fs");
  }

  // Population columns come first, then optional err_ columns.
  Trajectory traj;
  traj.provenance = Provenance::external;
  std::vector<std::string> expected;
  for (const auto& l : labels) expected.push_back("P_" + l);
  std::size_t col = 2;
  for (const auto& e : expected) {
    if (col >= header.size() || header[col] != e) fail("expected column '" + e + "' at position " + std::to_string(col + 1));
    ++col;
  }
  traj.labels = labels;
  if (col < header.size() && header[col] == "P_leak11") {
    traj.labels.push_back("leak11");
    ++col;
  }
  const std::size_t n_pop = traj.labels.size();
  bool with_err = false;
  if (col < header.size()) {
    for (std::size_t k = 0; k < n_pop; ++k, ++col) {
      const std::string e = "err_" + traj.labels[k];
      if (col >= header.size() || header[col] != e) fail("expected column '" + e + "' at position " + std::to_string(col + 1));
    }
    with_err = true;
    if (col != header.size()) fail("unexpected column '" + header[col] + "'");
  }
  std::vector<std::vector<double>> errs;

  int line_no = 1;
  int expected_step = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    auto cells = split(line);
    if (cells.size() != header.size()) {
      problems.push_back(where + "expected " + std::to_string(header.size()) + " fields, found " +
                         std::to_string(cells.size()));
      continue;
    }
    for (auto& c : cells) c = trim(c);
    int step = 0;
    double t = 0.0;
    bool row_ok = true;
    if (!parse_int(cells[0], step)) {
      problems.push_back(where + "step_index '" + cells[0] + "' is not an integer");
      row_ok = false;
    } else if (step != expected_step) {
      problems.push_back(where + "step_index " + cells[0] + " but expected " + std::to_string(expected_step));
      row_ok = false;
    }
    if (!parse_double(cells[1], t) || !std::isfinite(t)) {
      problems.push_back(where + "sim_time_fs '" + cells[1] + "' is not a number");
      row_ok = false;
    }
    std::vector<double> pops(n_pop), err(n_pop);
    for (std::size_t k = 0; k < n_pop; ++k) {
      const std::string& c = cells[2 + k];
      if (!parse_double(c, pops[k]) || !(pops[k] >= 0.0 && pops[k] <= 1.0)) {
        problems.push_back(where + header[2 + k] + " = '" + c + "' is not a population in [0, 1]");
        row_ok = false;
      }
      if (with_err) {
        const std::string& ec = cells[2 + n_pop + k];
        if (!parse_double(ec, err[k]) || !(err[k] >= 0.0) || !std::isfinite(err[k])) {
          problems.push_back(where + header[2 + n_pop + k] + " = '" + ec + "' is not a nonnegative number");
          row_ok = false;
        }
      }
    }
    // Keep counting from the row's own index so one gap is one error.
    expected_step = (parse_int(cells[0], step) ? step : expected_step) + 1;
    if (!row_ok) continue;
    traj.push_back(step, t, std::move(pops));
    if (with_err) errs.push_back(std::move(err));
  }
  if (problems.empty() && traj.size() == 0) problems.push_back("no data rows");
  if (!problems.empty()) {
    std::string msg = source + ": " + std::to_string(problems.size()) + " problem(s)";
    for (const auto& p : problems) msg += "\n  " + p;
    throw ParseError(msg);
  }
  if (with_err) traj.uncertainty = std::move(errs);
  try {
    traj.validate();
  } catch (const ContractViolation& e) {
    throw ParseError(source + ": " + e.what());
  }
  return traj;
}

Trajectory ingest_external(const std::filesystem::path& path, const std::vector<std::string>& labels) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_trajectory_csv(buf.str(), labels, path.string());
}

}  // namespace plet
