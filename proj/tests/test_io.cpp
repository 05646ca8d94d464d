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

#include <catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nonloc/io.hpp"
#include "test_support.hpp"

using namespace nonloc;
using namespace std::complex_literals;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("channel JSON", "[io]") {
  const auto ch = channel_from_json(parse_json(R"({"lambda": [0.5, -0.25, 1], "t": [0, 0, 0.125]})"));
  CHECK(ch == QubitChannel({0.5, -0.25, 1}, {0, 0, 0.125}));
  CHECK(channel_from_json(parse_json(R"({"lambda": [1, 1, 1]})")) == QubitChannel::identity());
  CHECK(channel_from_json(to_json(ch)) == ch);

  CHECK_THROWS_AS(parse_json("{not json"), DomainError);
  CHECK_THROWS_AS(channel_from_json(parse_json("[]")), DomainError);
  CHECK_THROWS_AS(channel_from_json(parse_json(R"({"t": [0, 0, 0]})")), DomainError);
  CHECK_THROWS_AS(channel_from_json(parse_json(R"({"lambda": [1, 1]})")), DomainError);
  CHECK_THROWS_AS(channel_from_json(parse_json(R"({"lambda": [1, "a", 1]})")), DomainError);
  CHECK_THROWS_AS(channel_from_json(parse_json(R"({"lambda": [1.5, 0, 0]})")), DomainError);
}

TEST_CASE("classification JSON round trip", "[io]") {
  const auto c = classify(QubitChannel({0.9, 0.3, 0.5}, {0, 0, 0.1}));
  const auto j = to_json(c);
  const auto back = classification_from_json(j);
  CHECK(back.cp == c.cp);
  CHECK(back.ch1 == c.ch1);
  CHECK(back.ch2 == c.ch2);
  CHECK(back.paper_generating == c.paper_generating);
  CHECK(back.horodecki_m == c.horodecki_m);
  CHECK(back.chsh_s == c.chsh_s);
  CHECK(back.breaks_chsh_direct == c.breaks_chsh_direct);
  CHECK_THROWS_AS(classification_from_json(json::object()), DomainError);
}

TEST_CASE("complex and matrix JSON", "[io]") {
  CHECK(complex_to_json(1.5 - 2i) == json::array({1.5, -2.0}));
  CHECK(complex_from_json(json::array({1.5, -2.0})) == 1.5 - 2i);
  CHECK(complex_from_json(json(0.25)) == Complex(0.25));
  CHECK_THROWS_AS(complex_from_json(json::array({1.0})), DomainError);
  CHECK_THROWS_AS(complex_from_json(json("x")), DomainError);

  const auto m = matrix_to_json(pauli(2));
  CHECK(m.size() == 2);
  CHECK(m[0][1] == json::array({0.0, -1.0}));
  CHECK(m[1][0] == json::array({0.0, 1.0}));
}

TEST_CASE("circulant spec JSON", "[io]") {
  const auto spec = CirculantSpec::from_xstate(
      {.a = 0.4, .b = 0.1, .c = 0.2, .d = 0.3, .w = 0.1 + 0.05i, .z = 0.02});
  const auto back = circulant_spec_from_json(to_json(spec));
  CHECK(back.n() == 2);
  CHECK(back.pi() == spec.pi());
  CHECK(back.coeffs() == spec.coeffs());

  const auto text = R"({"n": 2, "m": 2, "pi": [0, 1],
                        "coeffs": [[0.5, 0, 0, 0.5], [0, 0, 0, 0]]})";
  const auto parsed = circulant_spec_from_json(parse_json(text));
  CHECK(is_circulant_state(parsed));
  CHECK_THROWS_AS(circulant_spec_from_json(parse_json(
                      R"({"n": 2, "m": 2, "pi": [0, 1], "coeffs": [[0.5, 0, 0], [0, 0, 0, 0]]})")),
                  DomainError);
  CHECK_THROWS_AS(circulant_spec_from_json(parse_json(
                      R"({"n": 2, "m": 3, "pi": [0, 1, 2], "coeffs": []})")),
                  DomainError);
  CHECK_THROWS_AS(circulant_spec_from_json(parse_json(R"({"n": 2})")), DomainError);
}

TEST_CASE("family spec JSON", "[io]") {
  const FamilySpec gad{.kind = FamilyKind::gad, .lambda = 0.5, .p = -0.5};
  const auto back = family_spec_from_json(to_json(gad));
  CHECK(back.kind == FamilyKind::gad);
  CHECK(back.lambda == 0.5);
  CHECK(back.p == -0.5);
  CHECK_FALSE(to_json(gad).contains("axis"));

  const FamilySpec lin{.kind = FamilyKind::linear, .lambda = 0.1, .axis = 2};
  CHECK(family_spec_from_json(to_json(lin)).axis == 2);
  CHECK_THROWS_AS(family_spec_from_json(parse_json(R"({"kind": "nope", "lambda": 0})")), DomainError);
  CHECK_THROWS_AS(family_spec_from_json(parse_json(R"({"kind": "gad"})")), DomainError);
}

TEST_CASE("CSV line format", "[io]") {
  SweepRow r{.lambda1 = -1,
             .lambda2 = 0.1,
             .lambda3 = 0.5,
             .t3 = 0,
             .cp = true,
             .ch1 = false,
             .ch2 = true,
             .paper_generating = true,
             .breaks_chsh_direct = false,
             .horodecki_m = 0.3};
  CHECK(csv_line(r) == "-1,0.10000000000000001,0.5,0,1,0,1,1,0,0.29999999999999999");
  CHECK(sweep_row_from_csv(csv_line(r)) == r);
  CHECK(kSweepCsvHeader ==
        "lambda1,lambda2,lambda3,t3,cp,ch1,ch2,paper_generating,breaks_chsh_direct,horodecki_m");

  CHECK_THROWS_AS(sweep_row_from_csv("1,2,3"), DomainError);
  CHECK_THROWS_AS(sweep_row_from_csv("0,0,0,0,1,0,0,0,0,0,7"), DomainError);
  CHECK_THROWS_AS(sweep_row_from_csv("0,0,0,0,2,0,0,0,0,0"), DomainError);
  CHECK_THROWS_AS(sweep_row_from_csv("0,0,x,0,1,0,0,0,0,0"), DomainError);
}

TEST_CASE("CSV round-trips every double bit for bit", "[io][property]") {
  testing::Rng rng(61);
  for (int trial = 0; trial < 10000; ++trial) {
    SweepRow r{.lambda1 = rng.uniform(-1, 1),
               .lambda2 = rng.uniform(-1, 1),
               .lambda3 = rng.uniform(-1e-300, 1e-300),
               .t3 = rng.uniform(-1, 1),
               .cp = trial % 2 == 0,
               .ch1 = trial % 3 == 0,
               .ch2 = trial % 5 == 0,
               .paper_generating = trial % 7 == 0,
               .breaks_chsh_direct = trial % 11 == 0,
               .horodecki_m = rng.uniform(0, 2)};
    REQUIRE(sweep_row_from_csv(csv_line(r)) == r);
  }
}

TEST_CASE("write_sweep CSV", "[io]") {
  SweepRequest req;
  req.resolution = 3;
  std::ostringstream out;
  const auto summary = write_sweep(req, out, OutputFormat::csv);
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 28);
  CHECK(lines[0] == kSweepCsvHeader);
  const auto rows = run_sweep(req);
  for (std::size_t k = 0; k < rows.size(); ++k) CHECK(sweep_row_from_csv(lines[k + 1]) == rows[k]);
  CHECK(summary.cp_count == 11);
  CHECK(summary.rows == 27);
}

TEST_CASE("write_sweep JSON", "[io]") {
  SweepRequest req;
  req.mode = SweepMode::phase_covariant_2d;
  req.resolution = 5;
  req.t3 = 0.2;
  std::ostringstream out;
  write_sweep(req, out, OutputFormat::json);
  const auto j = parse_json(out.str());
  REQUIRE(j.at("rows").size() == 25);
  CHECK(j["rows"][0]["t3"] == 0.2);
  CHECK(j["summary"]["rows"] == 25);
  CHECK(j["summary"].contains("generating_fraction_of_cp"));
  CHECK(j["summary"].contains("generating_cp_count"));
  CHECK_THROWS_AS(output_format_from_string("xml"), DomainError);
}

TEST_CASE("write_sweep_file", "[io]") {
  SweepRequest req;
  req.resolution = 4;
  const auto path = std::filesystem::temp_directory_path() / "nonloc_test_io_sweep.csv";
  const auto summary = write_sweep_file(req, path.string(), OutputFormat::csv);
  CHECK(summary.rows == 64);
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(lines_of(text.str()).size() == 65);
  std::filesystem::remove(path);

  CHECK_THROWS_AS(write_sweep_file(req, "/nonexistent-dir/x.csv", OutputFormat::csv), IoError);
  req.resolution = 0;
  CHECK_THROWS_AS(write_sweep_file(req, path.string(), OutputFormat::csv), DomainError);
  CHECK_FALSE(std::filesystem::exists(path));
}
