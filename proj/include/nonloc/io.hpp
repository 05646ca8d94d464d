// Copyright 2026 The nonloc Authors
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

#pragma once

// Interchange formats.
//
//   channel          {"lambda":[l1,l2,l3],"t":[t1,t2,t3]}        ("t" optional)
//   circulant spec   {"n":2,"m":2,"pi":[0,1],"coeffs":[[[re,im],...],...]}
//                    coeffs[alpha] lists the m*m entries of a^(alpha)
//                    row-major
//   family spec      {"kind":"gad","lambda":0.9,"p":1.0}  plus optional
//                    "lambda3", "t3", "axis"
//   classification   {"cp":..,"ch1":..,"ch2":..,"paper_generating":..,
//                     "horodecki_m":..,"chsh_s":..,"breaks_chsh_direct":..}
//   sweep CSV        lambda1,lambda2,lambda3,t3,cp,ch1,ch2,paper_generating,
//                    breaks_chsh_direct,horodecki_m
//                    booleans as 0/1, reals with 17 significant digits

#include <array>
#include <charconv>
#include <fstream>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "nonloc/channel.hpp"
#include "nonloc/circulant.hpp"
#include "nonloc/errors.hpp"
#include "nonloc/families.hpp"
#include "nonloc/nonlocality.hpp"
#include "nonloc/sweep.hpp"

namespace nonloc {

using json = nlohmann::json;

inline constexpr std::string_view kSweepCsvHeader =
    "lambda1,lambda2,lambda3,t3,cp,ch1,ch2,paper_generating,breaks_chsh_direct,horodecki_m";

namespace detail {

inline Vec3 read_vec3(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_array() || v.size() != 3) {
    throw DomainError(std::string("\"") + key + "\" must be an array of 3 numbers");
  }
  Vec3 out{};
  for (std::size_t k = 0; k < 3; ++k) {
    if (!v[k].is_number()) throw DomainError(std::string("\"") + key + "\" entries must be numbers");
    out[k] = v[k].get<double>();
  }
  return out;
}

template <typename F>
auto translate_json_errors(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw DomainError(std::string("JSON: ") + e.what());
  }
}

}  // namespace detail

inline json parse_json(std::string_view text) {
  return detail::translate_json_errors([&] { return json::parse(text); });
}

inline QubitChannel channel_from_json(const json& j) {
  return detail::translate_json_errors([&] {
    if (!j.is_object()) throw DomainError("channel JSON must be an object");
    const Vec3 lambda = detail::read_vec3(j, "lambda");
    const Vec3 t = j.contains("t") ? detail::read_vec3(j, "t") : Vec3{0.0, 0.0, 0.0};
    return QubitChannel(lambda, t);
  });
}

inline json to_json(const QubitChannel& ch) {
  return {{"lambda", ch.lambda()}, {"t", ch.t()}};
}

inline json to_json(const Classification& c) {
  return {{"cp", c.cp},
          {"ch1", c.ch1},
          {"ch2", c.ch2},
          {"paper_generating", c.paper_generating},
          {"horodecki_m", c.horodecki_m},
          {"chsh_s", c.chsh_s},
          {"breaks_chsh_direct", c.breaks_chsh_direct}};
}

inline Classification classification_from_json(const json& j) {
  return detail::translate_json_errors([&] {
    Classification c;
    c.cp = j.at("cp").get<bool>();
    c.ch1 = j.at("ch1").get<bool>();
    c.ch2 = j.at("ch2").get<bool>();
    c.paper_generating = j.at("paper_generating").get<bool>();
    c.horodecki_m = j.at("horodecki_m").get<double>();
    c.chsh_s = j.at("chsh_s").get<double>();
    c.breaks_chsh_direct = j.at("breaks_chsh_direct").get<bool>();
    return c;
  });
}

inline json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

template <MatrixLike M>
json matrix_to_json(const M& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw DomainError("complex entries must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

inline CirculantSpec circulant_spec_from_json(const json& j) {
  return detail::translate_json_errors([&] {
    const auto n = j.at("n").get<std::size_t>();
    const auto m = j.at("m").get<std::size_t>();
    const auto pi = j.at("pi").get<std::vector<std::size_t>>();
    std::vector<ComplexMatrix> blocks;
    for (const auto& block : j.at("coeffs")) {
      if (!block.is_array() || block.size() != m * m) {
        throw DomainError("each coefficient block must list m*m = " + std::to_string(m * m) +
                          " entries");
      }
      std::vector<Complex> entries;
      entries.reserve(block.size());
      for (const auto& e : block) entries.push_back(complex_from_json(e));
      blocks.emplace_back(m, m, std::move(entries));
    }
    return CirculantSpec(n, m, pi, std::move(blocks));
  });
}

inline json to_json(const CirculantSpec& spec) {
  json coeffs = json::array();
  for (const auto& block : spec.coeffs()) {
    json flat = json::array();
    for (const auto& e : block.entries()) flat.push_back(complex_to_json(e));
    coeffs.push_back(std::move(flat));
  }
  return {{"n", spec.n()}, {"m", spec.m()}, {"pi", spec.pi()}, {"coeffs", std::move(coeffs)}};
}

inline FamilySpec family_spec_from_json(const json& j) {
  return detail::translate_json_errors([&] {
    FamilySpec s;
    s.kind = family_kind_from_string(j.at("kind").get<std::string>());
    s.lambda = j.at("lambda").get<double>();
    s.lambda3 = j.value("lambda3", 0.0);
    s.t3 = j.value("t3", 0.0);
    s.p = j.value("p", 0.0);
    s.axis = j.value("axis", 3);
    return s;
  });
}

inline json to_json(const FamilySpec& s) {
  json j{{"kind", std::string(to_string(s.kind))}, {"lambda", s.lambda}};
  if (s.kind == FamilyKind::phase_covariant) {
    j["lambda3"] = s.lambda3;
    j["t3"] = s.t3;
  }
  if (uses_p(s.kind)) j["p"] = s.p;
  if (s.kind == FamilyKind::linear || s.kind == FamilyKind::dephasing) j["axis"] = s.axis;
  return j;
}

inline json to_json(const SweepRow& r) {
  return {{"lambda1", r.lambda1},
          {"lambda2", r.lambda2},
          {"lambda3", r.lambda3},
          {"t3", r.t3},
          {"cp", r.cp},
          {"ch1", r.ch1},
          {"ch2", r.ch2},
          {"paper_generating", r.paper_generating},
          {"breaks_chsh_direct", r.breaks_chsh_direct},
          {"horodecki_m", r.horodecki_m}};
}

inline json to_json(const RegionSummary& s) {
  return {{"rows", s.rows},
          {"cp_count", s.cp_count},
          {"ch1_count", s.ch1_count},
          {"ch2_count", s.ch2_count},
          {"generating_cp_count", s.generating_cp_count},
          {"generating_fraction_of_cp", s.generating_fraction_of_cp},
          {"discrepancy_count", s.discrepancy_count},
          {"generating_not_breaking", s.generating_not_breaking},
          {"breaking_not_generating", s.breaking_not_generating}};
}

inline json to_json(const FamilyCheck& c) {
  return {{"family", std::string(to_string(c.kind))},
          {"points", c.points},
          {"generating", c.generating},
          {"mismatches", c.mismatches},
          {"cp_failures", c.cp_failures},
          {"p_dependent", c.p_dependent},
          {"pass", c.pass()}};
}

// printf("%.17g") equivalent; round-trips every double.
inline void append_real(std::string& out, double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  out.append(buf.data(), res.ptr);
}

inline std::string csv_line(const SweepRow& r) {
  std::string line;
  line.reserve(96);
  for (double v : {r.lambda1, r.lambda2, r.lambda3, r.t3}) {
    append_real(line, v);
    line.push_back(',');
  }
  for (bool b : {r.cp, r.ch1, r.ch2, r.paper_generating, r.breaks_chsh_direct}) {
    line.push_back(b ? '1' : '0');
    line.push_back(',');
  }
  append_real(line, r.horodecki_m);
  return line;
}

namespace detail {

inline double parse_real(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw DomainError("CSV: bad number '" + std::string(s) + "'");
  }
  return v;
}

inline bool parse_flag(std::string_view s) {
  if (s == "1") return true;
  if (s == "0") return false;
  throw DomainError("CSV: bad boolean '" + std::string(s) + "'");
}

}  // namespace detail

inline SweepRow sweep_row_from_csv(std::string_view line) {
  std::array<std::string_view, 10> fields{};
  std::size_t count = 0, start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      if (count == fields.size()) throw DomainError("CSV: too many columns");
      fields[count++] = line.substr(start, i - start);
      start = i + 1;
    }
  }
  if (count != fields.size()) throw DomainError("CSV: expected 10 columns");
  return {detail::parse_real(fields[0]), detail::parse_real(fields[1]),
          detail::parse_real(fields[2]), detail::parse_real(fields[3]),
          detail::parse_flag(fields[4]), detail::parse_flag(fields[5]),
          detail::parse_flag(fields[6]), detail::parse_flag(fields[7]),
          detail::parse_flag(fields[8]), detail::parse_real(fields[9])};
}

enum class OutputFormat { csv, json };

inline OutputFormat output_format_from_string(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw DomainError("unknown output format '" + std::string(name) + "'");
}

// Streams the sweep to `out`. CSV: header plus one line per row. JSON:
// {"rows":[...],"summary":{...}}. Returns the region summary.
inline RegionSummary write_sweep(const SweepRequest& req, std::ostream& out, OutputFormat format) {
  RegionTally tally;
  bool first = true;
  if (format == OutputFormat::csv) {
    out << kSweepCsvHeader << '\n';
  } else {
    out << "{\"rows\":[";
  }
  run_sweep(req, [&](const SweepRow& row) {
    tally.add(row);
    if (format == OutputFormat::csv) {
      out << csv_line(row) << '\n';
    } else {
      out << (first ? "\n" : ",\n") << to_json(row).dump();
      first = false;
    }
  });
  const auto summary = tally.summary();
  if (format == OutputFormat::json) out << "\n],\"summary\":" << to_json(summary).dump() << "}\n";
  if (!out) throw IoError("write failed");
  return summary;
}

inline RegionSummary write_sweep_file(const SweepRequest& req, const std::string& path,
                                      OutputFormat format) {
  req.validate();
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  const auto summary = write_sweep(req, file, format);
  file.close();
  if (!file) throw IoError("error writing '" + path + "'");
  return summary;
}

}  // namespace nonloc
