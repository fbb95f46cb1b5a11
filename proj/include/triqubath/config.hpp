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

// JSON sweep configuration. Numbers may be given as JSON numbers or as short
// expressions such as "3pi/4", "2/3", "e/4" or "127*3pi/168".

#pragma once

#include <nlohmann/json.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "triqubath/errors.hpp"
#include "triqubath/sweep.hpp"

namespace triqubath {

/// Config problem with the JSON pointer of the offending field and, when
/// known, its 1-based line in the source text.
class ConfigError : public InvalidArgument {
 public:
  ConfigError(std::string field, int line, const std::string& message)
      : InvalidArgument(describe(field, line, message)), field_(std::move(field)), line_(line) {}

  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  static std::string describe(const std::string& field, int line, const std::string& message) {
    std::string s = "config";
    if (line > 0) s += " line " + std::to_string(line);
    if (!field.empty()) s += " field '" + field + "'";
    return s + ": " + message;
  }

  std::string field_;
  int line_;
};

// ---- scalar expressions ------------------------------------------------------

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  double parse() {
    const double v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw InvalidArgument("bad expression '" + std::string(s_) + "': " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  double expr() {
    double v = term();
    for (;;) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }
  double term() {
    double v = unary();
    for (;;) {
      if (eat('*')) v *= unary();
      else if (eat('/')) v /= unary();
      else return v;
    }
  }
  double unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return primary();
  }
  double primary() {
    skip();
    if (eat('(')) {
      const double v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
      double v = 0.0;
      auto r = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
      if (r.ec != std::errc{}) fail("bad number");
      pos_ = static_cast<std::size_t>(r.ptr - s_.data());
      // "3pi", "2e", "2sqrt(2)": implicit product with a following name.
      if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) v *= name();
      return v;
    }
    if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) return name();
    fail("expected a number");
  }
  double name() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::string_view id = s_.substr(start, pos_ - start);
    if (id == "pi") return M_PI;
    if (id == "e") return M_E;
    if (id == "inf") return std::numeric_limits<double>::infinity();
    if (id == "sqrt") {
      if (!eat('(')) fail("sqrt needs '('");
      const double v = expr();
      if (!eat(')')) fail("missing ')'");
      return std::sqrt(v);
    }
    fail("unknown name '" + std::string(id) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

// JSON pointer -> line of the value, from a light scan of valid JSON text.
inline std::map<std::string, int> json_line_index(std::string_view text) {
  std::map<std::string, int> out;
  struct Frame {
    bool object;
    std::string base;
    int index;
    std::string key;
  };
  std::vector<Frame> stack;
  int line = 1;
  auto here = [&]() -> std::string {
    if (stack.empty()) return "";
    const Frame& f = stack.back();
    return f.base + "/" + (f.object ? f.key : std::to_string(f.index));
  };
  bool expect_value = true;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c)) || c == ':') continue;
    if (c == '"') {
      std::string s;
      for (++i; i < text.size() && text[i] != '"'; ++i) {
        if (text[i] == '\\' && i + 1 < text.size()) ++i;
        s += text[i];
      }
      if (!stack.empty() && stack.back().object && !expect_value) {
        stack.back().key = s;
        expect_value = true;
        continue;
      }
      out.emplace(here(), line);
      expect_value = false;
      continue;
    }
    if (c == '{' || c == '[') {
      const std::string path = here();
      out.emplace(path, line);
      stack.push_back({c == '{', path, 0, ""});
      expect_value = c == '[';
      continue;
    }
    if (c == '}' || c == ']') {
      stack.pop_back();
      expect_value = false;
      continue;
    }
    if (c == ',') {
      if (!stack.empty()) {
        ++stack.back().index;
        expect_value = !stack.back().object;
      }
      continue;
    }
    // Bare scalar.
    out.emplace(here(), line);
    while (i + 1 < text.size() && !std::strchr(",}]\n \t\r", text[i + 1])) ++i;
    expect_value = false;
  }
  return out;
}

}  // namespace detail

/// Value of a scalar expression; see the file comment.
inline double parse_expression(std::string_view s) { return detail::ExprParser(s).parse(); }

// ---- config reader -----------------------------------------------------------

class ConfigReader {
 public:
  ConfigReader(const nlohmann::json& root, std::map<std::string, int> lines)
      : root_(root), lines_(std::move(lines)) {}

  [[noreturn]] void fail(const std::string& path, const std::string& message) const {
    auto it = lines_.find(path);
    throw ConfigError(path, it == lines_.end() ? 0 : it->second, message);
  }

  const nlohmann::json& at(const std::string& path) const {
    return root_.at(nlohmann::json::json_pointer(path));
  }
  bool has(const std::string& path) const {
    return root_.contains(nlohmann::json::json_pointer(path));
  }

  void only_keys(const std::string& path, std::initializer_list<std::string_view> allowed) const {
    const auto& obj = at(path);
    if (!obj.is_object()) fail(path, "expected an object");
    for (const auto& [key, value] : obj.items()) {
      bool ok = false;
      for (auto a : allowed) ok = ok || key == a;
      if (!ok) fail(path + "/" + key, "unknown key");
    }
  }

  double real(const std::string& path) const {
    const auto& v = at(path);
    try {
      if (v.is_number()) return v.get<double>();
      if (v.is_string()) return parse_expression(v.get<std::string>());
    } catch (const InvalidArgument& e) {
      fail(path, e.what());
    }
    fail(path, "expected a number or numeric expression");
  }

  Complex complex(const std::string& path) const {
    const auto& v = at(path);
    if (v.is_array()) {
      if (v.size() != 2) fail(path, "complex numbers are [re, im]");
      return {real(path + "/0"), real(path + "/1")};
    }
    return real(path);
  }

  long long integer(const std::string& path) const {
    const auto& v = at(path);
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<long long>();
  }

  std::string string(const std::string& path) const {
    const auto& v = at(path);
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
  }

 private:
  const nlohmann::json& root_;
  std::map<std::string, int> lines_;
};

namespace detail {

inline Range read_range(const ConfigReader& r, const std::string& path) {
  const auto& v = r.at(path);
  if (!v.is_object()) {
    const double x = r.real(path);
    return {x, x, 1};
  }
  r.only_keys(path, {"min", "max", "count"});
  Range out;
  out.min = r.real(path + "/min");
  out.max = r.has(path + "/max") ? r.real(path + "/max") : out.min;
  out.count = r.has(path + "/count") ? static_cast<int>(r.integer(path + "/count")) : 1;
  if (out.count < 1) r.fail(path + "/count", "must be >= 1");
  if (!std::isfinite(out.min) || out.min < 0.0) r.fail(path + "/min", "must be finite and >= 0");
  if (!std::isfinite(out.max) || out.max < out.min) r.fail(path + "/max", "must be finite and >= min");
  return out;
}

inline BathSpec read_bath(const ConfigReader& r, const std::string& path) {
  r.only_keys(path, {"kind", "eta", "omega_c", "modes", "beta", "phi_thermal_factor"});
  BathSpec spec;
  const std::string type = r.string(path + "/kind");
  if (type == "ohmic") {
    OhmicBath o;
    if (r.has(path + "/eta")) o.eta = r.real(path + "/eta");
    if (r.has(path + "/omega_c")) o.omega_c = r.real(path + "/omega_c");
    spec.kind = o;
  } else if (type == "discrete") {
    DiscreteBath d;
    const auto& modes = r.at(path + "/modes");
    if (!modes.is_array()) r.fail(path + "/modes", "expected an array");
    for (std::size_t k = 0; k < modes.size(); ++k) {
      const std::string mp = path + "/modes/" + std::to_string(k);
      r.only_keys(mp, {"g", "omega", "m"});
      BathMode m;
      m.g = r.real(mp + "/g");
      m.omega = r.real(mp + "/omega");
      if (r.has(mp + "/m")) m.m = r.real(mp + "/m");
      d.modes.push_back(m);
    }
    spec.kind = d;
  } else {
    r.fail(path + "/kind", "expected \"ohmic\" or \"discrete\"");
  }
  if (r.has(path + "/beta")) spec.beta = r.real(path + "/beta");
  if (r.has(path + "/phi_thermal_factor")) {
    const std::string pf = r.string(path + "/phi_thermal_factor");
    if (pf == "paper") spec.phi_factor = PhiThermalFactor::Paper;
    else if (pf == "physical") spec.phi_factor = PhiThermalFactor::Physical;
    else r.fail(path + "/phi_thermal_factor", "expected \"paper\" or \"physical\"");
  }
  try {
    spec.validate();
  } catch (const InvalidArgument& e) {
    r.fail(path, e.what());
  }
  return spec;
}

inline std::variant<ProductState, DensityMatrix> read_initial(const ConfigReader& r,
                                                              const std::string& path) {
  const auto& v = r.at(path);
  if (v.is_string()) {
    if (v.get<std::string>() == "plus") return ProductState::plus();
    r.fail(path, "expected \"plus\" or an object");
  }
  r.only_keys(path, {"product", "density_matrix"});
  if (r.has(path + "/product")) {
    const std::string pp = path + "/product";
    if (!r.at(pp).is_array() || r.at(pp).size() != 3) r.fail(pp, "expected three [alpha, beta] factors");
    std::array<ProductState::Factor, 3> fac;
    for (std::size_t q = 0; q < 3; ++q) {
      const std::string fp = pp + "/" + std::to_string(q);
      if (!r.at(fp).is_array() || r.at(fp).size() != 2) r.fail(fp, "expected [alpha, beta]");
      const Complex a = r.complex(fp + "/0"), b = r.complex(fp + "/1");
      const double n = std::sqrt(std::norm(a) + std::norm(b));
      if (!(n > 0.0) || !std::isfinite(n)) r.fail(fp, "factor must be nonzero and finite");
      fac[q] = {a / n, b / n};
    }
    return ProductState(fac);
  }
  if (r.has(path + "/density_matrix")) {
    const std::string mp = path + "/density_matrix";
    const auto& m = r.at(mp);
    if (!m.is_array() || m.size() != 8) r.fail(mp, "expected an 8x8 matrix");
    ComplexMatrix rho(8, 8);
    for (std::size_t i = 0; i < 8; ++i) {
      const std::string rp = mp + "/" + std::to_string(i);
      if (!r.at(rp).is_array() || r.at(rp).size() != 8) r.fail(rp, "expected 8 entries");
      for (std::size_t j = 0; j < 8; ++j)
        rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            r.complex(rp + "/" + std::to_string(j));
    }
    try {
      return DensityMatrix(rho);
    } catch (const InvalidArgument& e) {
      r.fail(mp, e.what());
    }
  }
  r.fail(path, "expected \"product\" or \"density_matrix\"");
}

}  // namespace detail

struct PointSpec {
  double f = 0.0;
  double phi = 0.0;
};

/// Everything a CLI subcommand may need; unused sections stay at defaults.
struct RunConfig {
  SweepConfig sweep;
  PointSpec point;
};

inline RunConfig parse_config(std::string_view text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    int line = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i)
      if (text[i] == '\n') ++line;
    throw ConfigError("", line, "JSON syntax error");
  }
  const ConfigReader r(root, detail::json_line_index(text));
  if (!root.is_object()) r.fail("", "top level must be an object");
  r.only_keys("", {"coupling", "initial", "grid", "optimizer", "threshold", "bath", "times",
                   "point", "output", "description"});

  RunConfig out;
  SweepConfig& c = out.sweep;
  if (r.has("/coupling")) {
    r.only_keys("/coupling", {"lambda2", "lambda3"});
    const double l2 = r.real("/coupling/lambda2"), l3 = r.real("/coupling/lambda3");
    try {
      c.coupling = CouplingParams(l2, l3);
    } catch (const InvalidArgument& e) {
      r.fail("/coupling", e.what());
    }
  }
  if (r.has("/initial")) c.initial = detail::read_initial(r, "/initial");
  if (r.has("/grid")) {
    r.only_keys("/grid", {"f", "phi"});
    if (r.has("/grid/f")) c.f = detail::read_range(r, "/grid/f");
    if (r.has("/grid/phi")) c.phi = detail::read_range(r, "/grid/phi");
  }
  if (r.has("/optimizer")) {
    r.only_keys("/optimizer", {"starts", "seed", "max_iterations", "tolerance"});
    auto& o = c.optimizer;
    if (r.has("/optimizer/starts")) {
      const long long s = r.integer("/optimizer/starts");
      if (s < 1) r.fail("/optimizer/starts", "must be >= 1");
      o.starts = static_cast<int>(s);
    }
    if (r.has("/optimizer/max_iterations")) {
      const long long m = r.integer("/optimizer/max_iterations");
      if (m < 1) r.fail("/optimizer/max_iterations", "must be >= 1");
      o.max_iterations = static_cast<int>(m);
    }
    if (r.has("/optimizer/seed")) {
      const auto& s = r.at("/optimizer/seed");
      if (!s.is_number_integer() || (s.is_number_integer() && !s.is_number_unsigned() && s.get<long long>() < 0))
        r.fail("/optimizer/seed", "expected a nonnegative 64-bit integer");
      o.seed = s.get<std::uint64_t>();
    }
    if (r.has("/optimizer/tolerance")) {
      o.tolerance = r.real("/optimizer/tolerance");
      if (!(o.tolerance > 0.0)) r.fail("/optimizer/tolerance", "must be > 0");
    }
  }
  if (r.has("/threshold")) {
    c.threshold = r.real("/threshold");
    if (!(c.threshold >= 0.0)) r.fail("/threshold", "must be >= 0");
  }
  if (r.has("/bath")) c.bath = detail::read_bath(r, "/bath");
  if (r.has("/times")) {
    const auto& t = r.at("/times");
    if (t.is_array()) {
      for (std::size_t k = 0; k < t.size(); ++k) c.times.push_back(r.real("/times/" + std::to_string(k)));
    } else {
      const Range tr = detail::read_range(r, "/times");
      for (int k = 0; k < tr.count; ++k) c.times.push_back(tr.at(k));
    }
  }
  if (r.has("/point")) {
    r.only_keys("/point", {"f", "phi"});
    if (r.has("/point/f")) out.point.f = r.real("/point/f");
    if (r.has("/point/phi")) out.point.phi = r.real("/point/phi");
  }
  if (r.has("/output")) {
    r.only_keys("/output", {"csv", "ppm", "channel"});
    if (r.has("/output/csv")) c.output.csv = r.string("/output/csv");
    if (r.has("/output/ppm")) c.output.ppm = r.string("/output/ppm");
    if (r.has("/output/channel")) {
      c.output.channel = r.string("/output/channel");
      if (!is_map_channel(c.output.channel)) r.fail("/output/channel", "unknown map channel");
    }
  }
  try {
    c.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError("", 0, e.what());
  }
  return out;
}

}  // namespace triqubath
