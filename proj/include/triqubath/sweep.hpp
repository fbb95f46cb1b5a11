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

// Grid sweeps over the (f, phi) plane, CSV and PPM output.

#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <thread>
#include <variant>
#include <vector>

#include "triqubath/bath.hpp"
#include "triqubath/errors.hpp"
#include "triqubath/luopt.hpp"
#include "triqubath/measures.hpp"
#include "triqubath/model.hpp"

namespace triqubath {

struct Range {
  double min = 0.0;
  double max = 0.0;
  int count = 1;

  /// Evenly spaced, endpoints included; a single point sits at min.
  double at(int i) const {
    if (count == 1) return min;
    return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
};

struct OutputSpec {
  std::string csv;
  std::string ppm;
  std::string channel = "class";
};

struct SweepConfig {
  CouplingParams coupling{1.0, 1.0};
  std::variant<ProductState, DensityMatrix> initial = ProductState::plus();
  Range f{0.0, 0.0, 1};
  Range phi{0.0, 0.0, 1};
  OptimizerConfig optimizer;
  double threshold = 1e-9;
  std::optional<BathSpec> bath;
  std::vector<double> times;
  OutputSpec output;

  DensityMatrix initial_state() const {
    if (const auto* ps = std::get_if<ProductState>(&initial)) return initial_product_state(*ps);
    return std::get<DensityMatrix>(initial);
  }

  void validate() const {
    for (const auto* r : {&f, &phi}) {
      if (r->count < 1) throw InvalidArgument("grid counts must be >= 1");
      if (!std::isfinite(r->min) || !std::isfinite(r->max) || r->min < 0.0)
        throw InvalidArgument("grid ranges must be finite and nonnegative");
      if (r->max < r->min) throw InvalidArgument("grid max must be >= min");
    }
    optimizer.validate();
    if (!(threshold >= 0.0)) throw InvalidArgument("threshold must be >= 0");
    if (initial_state().dim() != 8) throw InvalidArgument("initial state must be three qubits");
  }
};

struct SweepRow {
  double f = 0.0;
  double phi = 0.0;
  std::array<double, 3> neg{};
  double tau3_lb = 0.0;
  double cgme_lb = 0.0;
  double ghz_fid = 0.0;
  EntanglementClass cls = EntanglementClass::Undetected;

  bool operator==(const SweepRow&) const = default;
};

/// Pool width: TRIQUBATH_THREADS if set, else the hardware concurrency.
inline unsigned pool_width() {
  if (const char* env = std::getenv("TRIQUBATH_THREADS")) {
    unsigned v = 0;
    const std::string_view s(env);
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc{} || r.ptr != s.data() + s.size() || v == 0)
      throw InvalidArgument("TRIQUBATH_THREADS must be a positive integer");
    return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(i) for i in [0, n) on `width` threads. Results go wherever body
/// writes them; the first failure by index is rethrown after all workers join.
template <class Body>
void parallel_for(std::size_t n, unsigned width, Body&& body) {
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::size_t err_index = n;
  std::exception_ptr err;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (i < err_index) {
          err_index = i;
          err = std::current_exception();
        }
      }
    }
  };
  const unsigned w = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, width), std::max<std::size_t>(n, 1)));
  std::vector<std::thread> threads;
  threads.reserve(w > 0 ? w - 1 : 0);
  for (unsigned t = 1; t < w; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (err) std::rethrow_exception(err);
}

inline SweepRow evaluate_point(const DensityMatrix& rho0, const SweepConfig& cfg, double f,
                               double phi, std::uint64_t stream) {
  ClassifyOptions opt;
  opt.optimizer = cfg.optimizer;
  opt.detection_threshold = cfg.threshold;
  opt.stream = stream;
  const EntanglementReport rep = classify(evolve(rho0, cfg.coupling, DephasingPoint(f, phi)), opt);
  SweepRow row;
  row.f = f;
  row.phi = phi;
  row.neg = rep.negativity;
  row.tau3_lb = rep.tau3_lb;
  row.cgme_lb = rep.cgme_lb;
  row.ghz_fid = rep.ghz_fidelity_opt;
  row.cls = rep.cls;
  return row;
}

/// One row per grid point, phi outer and f inner. The optimizer stream of a
/// point is its row index, so results do not depend on the pool width.
inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg, unsigned width = 0) {
  cfg.validate();
  if (width == 0) width = pool_width();
  const DensityMatrix rho0 = cfg.initial_state();
  const std::size_t nf = static_cast<std::size_t>(cfg.f.count);
  const std::size_t n = nf * static_cast<std::size_t>(cfg.phi.count);
  std::vector<SweepRow> rows(n);
  parallel_for(n, width, [&](std::size_t i) {
    const double phi = cfg.phi.at(static_cast<int>(i / nf));
    const double f = cfg.f.at(static_cast<int>(i % nf));
    rows[i] = evaluate_point(rho0, cfg, f, phi, i);
  });
  return rows;
}

/// Sweep over f at a single phi.
inline std::vector<SweepRow> run_curve(const SweepConfig& cfg, unsigned width = 0) {
  if (cfg.phi.count != 1 && cfg.phi.min != cfg.phi.max)
    throw InvalidArgument("curve: phi must be a single value");
  SweepConfig c = cfg;
  c.phi.count = 1;
  return run_sweep(c, width);
}

struct AsymptoticReport {
  SpecialCase special_case = SpecialCase::Generic;
  ComplexMatrix matrix;
  std::array<double, 3> negativity{};
};

inline AsymptoticReport run_asymptotic(const CouplingParams& c, const DensityMatrix& rho0) {
  AsymptoticReport rep;
  rep.special_case = detect_special_case(c);
  const DensityMatrix a = asymptotic_state(c, rho0);
  rep.matrix = a.matrix();
  for (Bipartition cut : kAllCuts)
    rep.negativity[static_cast<std::size_t>(single_party(cut))] = negativity(a, cut);
  return rep;
}

inline BathPath run_bath_path(const BathSpec& spec, const std::vector<double>& times) {
  return path(spec, times);
}

// ---- formatting ------------------------------------------------------------

/// Shortest representation that parses back to the same double.
inline std::string format_double(double v) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

inline double parse_double(std::string_view s) {
  double v = 0.0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size())
    throw InvalidArgument("csv: malformed number '" + std::string(s) + "'");
  return v;
}

/// p/q with q <= max_den when v is that rational to 1e-12, else the
/// shortest decimal.
inline std::string format_rational(double v, int max_den = 64) {
  if (v == 0.0) return "0";
  for (int q = 1; q <= max_den; ++q) {
    const double p = std::round(v * q);
    if (std::abs(v * q - p) < 1e-12 * q) {
      const auto pi = static_cast<long long>(p);
      return q == 1 ? std::to_string(pi) : std::to_string(pi) + "/" + std::to_string(q);
    }
  }
  return format_double(v);
}

inline std::string format_complex_rational(Complex z) {
  const double re = std::abs(z.real()) < 1e-15 ? 0.0 : z.real();
  const double im = std::abs(z.imag()) < 1e-15 ? 0.0 : z.imag();
  if (im == 0.0) return format_rational(re);
  const std::string ims = format_rational(std::abs(im)) + "i";
  if (re == 0.0) return (im < 0 ? "-" : "") + ims;
  return format_rational(re) + (im < 0 ? "-" : "+") + ims;
}

inline constexpr std::string_view kCsvHeader =
    "f,phi,neg1,neg2,neg3,two_neg1,two_neg2,two_neg3,tau3_lb,cgme_lb,ghz_fid,class";

inline std::string to_csv(const std::vector<SweepRow>& rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    const double vals[] = {r.f, r.phi, r.neg[0], r.neg[1], r.neg[2], 2 * r.neg[0], 2 * r.neg[1],
                           2 * r.neg[2], r.tau3_lb, r.cgme_lb, r.ghz_fid};
    for (double v : vals) {
      out += format_double(v);
      out += ',';
    }
    out += to_string(r.cls);
    out += '\n';
  }
  return out;
}

inline std::vector<SweepRow> parse_csv(std::string_view text) {
  std::vector<SweepRow> rows;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line_no == 1) {
      if (line != kCsvHeader) throw InvalidArgument("csv: unexpected header");
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string_view> cells;
    std::size_t p = 0;
    for (;;) {
      const std::size_t comma = line.find(',', p);
      cells.push_back(line.substr(p, comma == std::string_view::npos ? line.size() - p : comma - p));
      if (comma == std::string_view::npos) break;
      p = comma + 1;
    }
    if (cells.size() != 12)
      throw InvalidArgument("csv: line " + std::to_string(line_no) + " has " +
                            std::to_string(cells.size()) + " fields");
    SweepRow r;
    r.f = parse_double(cells[0]);
    r.phi = parse_double(cells[1]);
    for (std::size_t k = 0; k < 3; ++k) r.neg[k] = parse_double(cells[2 + k]);
    r.tau3_lb = parse_double(cells[8]);
    r.cgme_lb = parse_double(cells[9]);
    r.ghz_fid = parse_double(cells[10]);
    r.cls = class_from_string(std::string(cells[11]));
    rows.push_back(r);
  }
  return rows;
}

inline std::string bath_path_csv(const BathPath& p) {
  std::string out = "t,f,phi\n";
  for (std::size_t i = 0; i < p.times.size(); ++i)
    out += format_double(p.times[i]) + "," + format_double(p.points[i].f()) + "," +
           format_double(p.points[i].phi()) + "\n";
  return out;
}

// ---- maps ------------------------------------------------------------------

struct Rgb {
  std::uint8_t r, g, b;
};

inline Rgb class_color(EntanglementClass c) {
  switch (c) {
    case EntanglementClass::GHZ: return {255, 0, 0};
    case EntanglementClass::W: return {255, 255, 0};
    case EntanglementClass::BiseparableEntangled: return {173, 216, 230};
    case EntanglementClass::Undetected: return {255, 255, 255};
  }
  return {0, 0, 0};
}

/// Pixel for one row. "class_cut1" reports biseparable entanglement from the
/// 1|23 negativity only. Scalar channels are grey, black at zero and white at
/// the channel maximum (1/2 for negativities, 1 otherwise).
inline Rgb channel_pixel(const SweepRow& r, std::string_view channel) {
  auto grey = [](double v) {
    const auto g = static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(v, 0.0, 1.0)));
    return Rgb{g, g, g};
  };
  if (channel == "class") return class_color(r.cls);
  if (channel == "class_cut1")
    return class_color(class_from_measures(r.tau3_lb, r.cgme_lb, {r.neg[0], 0.0, 0.0}));
  if (channel == "neg1") return grey(2 * r.neg[0]);
  if (channel == "neg2") return grey(2 * r.neg[1]);
  if (channel == "neg3") return grey(2 * r.neg[2]);
  if (channel == "tau3") return grey(r.tau3_lb);
  if (channel == "cgme") return grey(r.cgme_lb);
  if (channel == "fid") return grey(r.ghz_fid);
  throw InvalidArgument("unknown map channel '" + std::string(channel) + "'");
}

inline bool is_map_channel(std::string_view c) {
  for (std::string_view k : {"class", "class_cut1", "neg1", "neg2", "neg3", "tau3", "cgme", "fid"})
    if (c == k) return true;
  return false;
}

/// Binary P6 image with f along x and phi increasing upward. Rows must form
/// the complete nf x nphi grid in sweep order.
inline std::string emit_map(const std::vector<SweepRow>& rows, int nf, int nphi,
                            std::string_view channel) {
  if (nf < 1 || nphi < 1) throw InvalidArgument("emit_map: empty grid");
  if (!is_map_channel(channel))
    throw InvalidArgument("unknown map channel '" + std::string(channel) + "'");
  if (rows.size() != static_cast<std::size_t>(nf) * static_cast<std::size_t>(nphi))
    throw InvalidArgument("emit_map: ragged grid (" + std::to_string(rows.size()) + " rows for " +
                          std::to_string(nf) + "x" + std::to_string(nphi) + ")");
  for (int j = 0; j < nphi; ++j)
    for (int i = 0; i < nf; ++i) {
      const auto& r = rows[static_cast<std::size_t>(j * nf + i)];
      if (r.phi != rows[static_cast<std::size_t>(j * nf)].phi || r.f != rows[static_cast<std::size_t>(i)].f)
        throw InvalidArgument("emit_map: ragged grid at row " + std::to_string(j * nf + i));
    }
  std::string out = "P6\n" + std::to_string(nf) + " " + std::to_string(nphi) + "\n255\n";
  for (int j = nphi - 1; j >= 0; --j)
    for (int i = 0; i < nf; ++i) {
      const Rgb p = channel_pixel(rows[static_cast<std::size_t>(j * nf + i)], channel);
      out += static_cast<char>(p.r);
      out += static_cast<char>(p.g);
      out += static_cast<char>(p.b);
    }
  return out;
}

}  // namespace triqubath
