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

// Command line front end.
//
//   nonloc check [FILE]        channel JSON -> classification JSON
//   nonloc choi [FILE]         channel JSON -> 4x4 Choi matrix as [[re,im],..] rows
//   nonloc sweep --mode M ...  grid sweep to CSV/JSON, summary on stdout
//   nonloc family KIND         analytic range + numeric grid cross-check
//   nonloc report              CH1/CH2 vs direct Horodecki discrepancy summary
//   nonloc circulant [FILE]    circulant spec JSON -> state / direct-sum checks
//
// FILE defaults to "-" (standard input).
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal-consistency
// failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nonloc/channel.hpp"
#include "nonloc/circulant.hpp"
#include "nonloc/errors.hpp"
#include "nonloc/families.hpp"
#include "nonloc/io.hpp"
#include "nonloc/nonlocality.hpp"
#include "nonloc/sweep.hpp"

namespace nonloc {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitInternal = 3,
};

namespace detail {

inline std::string read_input(const std::string& path, std::istream& in) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

inline std::optional<Bounds> bounds_option(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  return Bounds{v[0], v[1]};
}

}  // namespace detail

inline int cli_main(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                    std::ostream& err) {
  CLI::App app{"Nonlocality-generation analysis of qubit channels", "nonloc"};
  app.require_subcommand(1);

  // check
  std::string check_path = "-";
  auto* check = app.add_subcommand("check", "Classify a channel given as JSON");
  check->add_option("input", check_path, "Channel JSON file, '-' for stdin");

  // choi
  std::string choi_path = "-";
  auto* choi_cmd = app.add_subcommand("choi", "Print the Choi matrix of a channel");
  choi_cmd->add_option("input", choi_path, "Channel JSON file, '-' for stdin");

  // sweep
  std::string mode_name = "cube3d";
  std::string family_name = "depolarizing";
  std::string out_path;
  std::string format_name;
  std::vector<double> l1_bounds, l2_bounds, l3_bounds;
  SweepRequest req;
  auto* sweep = app.add_subcommand("sweep", "Classify every node of a parameter grid");
  sweep->add_option("--mode", mode_name, "cube3d | phase_covariant_2d (pc2d) | family_1d (family1d)");
  sweep->add_option("--t3", req.t3, "Fixed t3 (cube3d, phase_covariant_2d)");
  sweep->add_option("--res", req.resolution, "Points per axis (>= 2)");
  sweep->add_option("--l1", l1_bounds, "lambda1 (or family parameter) bounds: LO HI")->expected(2);
  sweep->add_option("--l2", l2_bounds, "lambda2 bounds: LO HI")->expected(2);
  sweep->add_option("--l3", l3_bounds, "lambda3 bounds: LO HI")->expected(2);
  sweep->add_option("--family", family_name, "Family for family_1d");
  sweep->add_option("--p", req.p, "p for gad / shifted_depolarizing");
  sweep->add_option("--axis", req.axis, "Axis for linear / dephasing");
  sweep->add_option("--threads", req.threads, "Worker threads (0: NONLOC_THREADS or all cores)");
  sweep->add_option("--out", out_path, "Output path")->required();
  sweep->add_option("--format", format_name, "csv | json (default from the file extension)");

  // family
  std::string kind_name;
  std::size_t grid = 201;
  auto* family = app.add_subcommand("family", "Analytic range and grid cross-check of a family");
  family->add_option("kind", kind_name, "Family name, or 'all'")->required();
  family->add_option("--grid", grid, "Grid points per parameter");

  // report
  double report_t3 = 0.0;
  std::size_t report_res = 51;
  auto* report = app.add_subcommand("report", "CH1/CH2 vs direct Horodecki discrepancy summary");
  report->add_option("--t3", report_t3, "Fixed t3");
  report->add_option("--res", report_res, "Points per axis");

  // circulant
  std::string circ_path = "-";
  auto* circ = app.add_subcommand("circulant", "Check a circulant operator spec");
  circ->add_option("input", circ_path, "Circulant spec JSON file, '-' for stdin");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (check->parsed()) {
      const auto ch = channel_from_json(parse_json(detail::read_input(check_path, in)));
      out << to_json(classify(ch)).dump() << '\n';
    } else if (choi_cmd->parsed()) {
      const auto ch = channel_from_json(parse_json(detail::read_input(choi_path, in)));
      out << matrix_to_json(choi(ch).matrix()).dump() << '\n';
    } else if (sweep->parsed()) {
      req.mode = sweep_mode_from_string(mode_name);
      req.family = family_kind_from_string(family_name);
      req.bounds = {detail::bounds_option(l1_bounds), detail::bounds_option(l2_bounds),
                    detail::bounds_option(l3_bounds)};
      OutputFormat format = OutputFormat::csv;
      if (!format_name.empty()) {
        format = output_format_from_string(format_name);
      } else if (out_path.size() >= 5 && out_path.ends_with(".json")) {
        format = OutputFormat::json;
      }
      const auto summary = write_sweep_file(req, out_path, format);
      out << to_json(summary).dump() << '\n';
    } else if (family->parsed()) {
      std::vector<FamilyKind> kinds;
      if (kind_name == "all") {
        kinds.assign(kAllFamilies.begin(), kAllFamilies.end());
      } else {
        kinds.push_back(family_kind_from_string(kind_name));
      }
      bool ok = true;
      for (FamilyKind kind : kinds) {
        const auto check_result = cross_check_family(kind, grid);
        out << to_string(kind) << ": range " << analytic_generating_range(kind).description
            << ", cross-check " << (check_result.pass() ? "PASS" : "FAIL") << " ("
            << check_result.points << " points, " << check_result.generating << " generating, "
            << check_result.mismatches << " mismatches, " << check_result.cp_failures
            << " CP failures, " << check_result.p_dependent << " p-dependent)\n";
        ok = ok && check_result.pass();
      }
      if (!ok) return kExitInternal;
    } else if (report->parsed()) {
      SweepRequest r;
      r.mode = SweepMode::cube3d;
      r.t3 = report_t3;
      r.resolution = report_res;
      RegionTally tally;
      run_sweep(r, [&](const SweepRow& row) { tally.add(row); });
      json j = to_json(tally.summary());
      j["t3"] = report_t3;
      j["resolution"] = report_res;
      out << j.dump(2) << '\n';
    } else if (circ->parsed()) {
      const auto spec = circulant_spec_from_json(parse_json(detail::read_input(circ_path, in)));
      const auto op = build_operator(spec);
      json j{{"dimension", spec.dimension()},
             {"trace", complex_to_json(trace(op))},
             {"hermitian", is_hermitian(op)},
             {"is_state", is_circulant_state(spec)},
             {"direct_sum", verify_direct_sum(spec)}};
      out << j.dump() << '\n';
    }
  } catch (const ConsistencyError& e) {
    err << "internal consistency failure: " << e.what() << '\n';
    return kExitInternal;
  } catch (const ConvergenceError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitInternal;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

inline int cli_main(int argc, const char* const* argv) {
  std::vector<std::string> args(argv, argv + argc);
  return cli_main(args, std::cin, std::cout, std::cerr);
}

}  // namespace nonloc
