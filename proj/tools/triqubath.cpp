// Copyright 2026 The triqubath Authors
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

// triqubath command-line front end.
//
//   triqubath sweep      --config fig1.json [--out rows.csv]
//   triqubath curve      --config fig2a.json
//   triqubath asymptotic --lambda2 1/3 --lambda3 1/3
//   triqubath bathpath   --config bath_ohmic.json
//   triqubath point      --config fig1.json --f 0.1 --phi 3pi/8
//
// Exit status: 0 success, 1 configuration or usage error, 2 numerical failure.
// Errors are reported on stderr as one JSON object per line.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "triqubath/config.hpp"
#include "triqubath/triqubath.hpp"

namespace {

using namespace triqubath;
using nlohmann::json;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Empty path or "-" means stdout.
void write_output(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << data;
  if (!out) throw IoError("write failed for '" + path + "'");
}

struct Options {
  std::string config;
  std::optional<std::string> lambda2, lambda3, phi, f, out;
  std::optional<std::uint64_t> seed;
};

double override_value(const std::string& flag, const std::string& text) {
  try {
    return parse_expression(text);
  } catch (const InvalidArgument& e) {
    throw ConfigError(flag, 0, e.what());
  }
}

RunConfig load(const Options& o) {
  RunConfig rc = o.config.empty() ? parse_config("{}") : parse_config(read_file(o.config));
  SweepConfig& c = rc.sweep;
  if (o.lambda2 || o.lambda3) {
    const double l2 = o.lambda2 ? override_value("--lambda2", *o.lambda2) : c.coupling.lambda2();
    const double l3 = o.lambda3 ? override_value("--lambda3", *o.lambda3) : c.coupling.lambda3();
    try {
      c.coupling = CouplingParams(l2, l3);
    } catch (const InvalidArgument& e) {
      throw ConfigError("--lambda2/--lambda3", 0, e.what());
    }
  }
  if (o.phi) {
    const double p = override_value("--phi", *o.phi);
    if (!(p >= 0.0) || !std::isfinite(p)) throw ConfigError("--phi", 0, "must be finite and >= 0");
    c.phi = {p, p, 1};
    rc.point.phi = p;
  }
  if (o.f) {
    const double f = override_value("--f", *o.f);
    if (!(f >= 0.0) || !std::isfinite(f)) throw ConfigError("--f", 0, "must be finite and >= 0");
    rc.point.f = f;
  }
  if (o.seed) c.optimizer.seed = *o.seed;
  if (o.out) c.output.csv = *o.out;
  return rc;
}

json angles_json(const LocalUnitary& u) { return json(u.angles); }

int cmd_sweep(const Options& o, bool curve) {
  const RunConfig rc = load(o);
  const SweepConfig& c = rc.sweep;
  const auto rows = curve ? run_curve(c) : run_sweep(c);
  // Render everything before writing so a failure leaves no partial output.
  const std::string csv = to_csv(rows);
  std::string ppm;
  if (!c.output.ppm.empty())
    ppm = emit_map(rows, c.f.count, curve ? 1 : c.phi.count, c.output.channel);
  write_output(c.output.csv, csv);
  if (!ppm.empty()) write_output(c.output.ppm, ppm);
  return 0;
}

int cmd_asymptotic(const Options& o) {
  const RunConfig rc = load(o);
  const auto& c = rc.sweep;
  const AsymptoticReport rep = run_asymptotic(c.coupling, c.initial_state());
  json m = json::array();
  for (int r = 0; r < 8; ++r) {
    json row = json::array();
    for (int q = 0; q < 8; ++q) row.push_back(format_complex_rational(rep.matrix(r, q)));
    m.push_back(row);
  }
  json out = {{"lambda2", c.coupling.lambda2()},
              {"lambda3", c.coupling.lambda3()},
              {"case", to_string(rep.special_case)},
              {"matrix", m},
              {"negativity", rep.negativity}};
  write_output(c.output.csv, out.dump(2) + "\n");
  return 0;
}

int cmd_bathpath(const Options& o) {
  const RunConfig rc = load(o);
  const auto& c = rc.sweep;
  if (!c.bath) throw ConfigError("/bath", 0, "bathpath needs a bath section");
  const std::vector<double> times = c.times.empty() ? std::vector<double>{0.0} : c.times;
  BathPath p;
  try {
    p = run_bath_path(*c.bath, times);
  } catch (const InvalidArgument& e) {
    throw ConfigError("/times", 0, e.what());
  }
  write_output(c.output.csv, bath_path_csv(p));
  return 0;
}

int cmd_point(const Options& o) {
  const RunConfig rc = load(o);
  const auto& c = rc.sweep;
  ClassifyOptions opt;
  opt.optimizer = c.optimizer;
  opt.detection_threshold = c.threshold;
  const DensityMatrix rho = evolve(c.initial_state(), c.coupling, DephasingPoint(rc.point.f, rc.point.phi));
  const EntanglementReport rep = classify(rho, opt);
  json out = {{"f", rc.point.f},
              {"phi", rc.point.phi},
              {"lambda2", c.coupling.lambda2()},
              {"lambda3", c.coupling.lambda3()},
              {"negativity", rep.negativity},
              {"tau3_lb", rep.tau3_lb},
              {"cgme_lb", rep.cgme_lb},
              {"ghz_fidelity_opt", rep.ghz_fidelity_opt},
              {"class", to_string(rep.cls)},
              {"exact", rep.exact},
              {"purity", rho.purity()},
              {"tau3_unitary", angles_json(rep.tau3_unitary)},
              {"cgme_unitary", angles_json(rep.cgme_unitary)}};
  if (rep.exact) out["cgme_cut"] = to_string(rep.cgme_cut);
  write_output(c.output.csv, out.dump(2) + "\n");
  return 0;
}

void report(const json& j) { std::cerr << j.dump() << std::endl; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement classes of three qubits under common-bath dephasing"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("--config", o.config, "JSON configuration file");
    sub->add_option("--lambda2", o.lambda2, "coupling of qubit 2 (e.g. 2/3)");
    sub->add_option("--lambda3", o.lambda3, "coupling of qubit 3");
    sub->add_option("--phi", o.phi, "fix phi (e.g. 3pi/8)");
    sub->add_option("--seed", o.seed, "optimizer seed");
    sub->add_option("--out", o.out, "output path, '-' for stdout");
  };
  auto* sweep = app.add_subcommand("sweep", "class map over the (f, phi) grid");
  auto* curve = app.add_subcommand("curve", "measures versus f at fixed phi");
  auto* asym = app.add_subcommand("asymptotic", "f -> infinity state and its special case");
  auto* bath = app.add_subcommand("bathpath", "(f(t), phi(t)) for a bath");
  auto* point = app.add_subcommand("point", "full report at one (f, phi)");
  for (auto* s : {sweep, curve, asym, bath, point}) add_common(s);
  point->add_option("--f", o.f, "dephasing strength f");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report({{"error", "usage"}, {"message", e.what()}});
    return 1;
  }

  try {
    if (*sweep) return cmd_sweep(o, false);
    if (*curve) return cmd_sweep(o, true);
    if (*asym) return cmd_asymptotic(o);
    if (*bath) return cmd_bathpath(o);
    if (*point) return cmd_point(o);
  } catch (const ConfigError& e) {
    json j = {{"error", "config"}, {"message", e.what()}};
    if (!e.field().empty()) j["field"] = e.field();
    if (e.line() > 0) j["line"] = e.line();
    report(j);
    return 1;
  } catch (const IoError& e) {
    report({{"error", "io"}, {"message", e.what()}});
    return 1;
  } catch (const InvalidArgument& e) {
    report({{"error", "config"}, {"message", e.what()}});
    return 1;
  } catch (const NumericalError& e) {
    report({{"error", "numerical"}, {"message", e.what()}, {"achieved_error", e.achieved_error()}});
    return 2;
  } catch (const InvariantViolation& e) {
    report({{"error", "numerical"}, {"message", e.what()}});
    return 2;
  } catch (const std::exception& e) {
    report({{"error", "internal"}, {"message", e.what()}});
    return 2;
  }
  return 1;
}
