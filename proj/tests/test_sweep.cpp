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

#include <algorithm>
#include <cstdlib>
#include <map>
#include <tuple>

#include "nonloc/sweep.hpp"

using namespace nonloc;

namespace {

// X-state positivity on the t1 = t2 = 0 slice, written out directly. Grid
// nodes such as (-0.9, -0.8, 0.7) lie on the boundary for the decimal values
// but a few ulps outside for the stored doubles, hence the 1e-12 allowance.
bool cp_by_xstate(double l1, double l2, double l3, double t3) {
  constexpr double tol = 1e-12;
  const double a = (1 + l3 + t3) / 4, b = (1 - l3 - t3) / 4;
  const double c = (1 - l3 + t3) / 4, d = (1 + l3 - t3) / 4;
  const double w = (l1 + l2) / 4, z = (l1 - l2) / 4;
  return a >= -tol && b >= -tol && c >= -tol && d >= -tol && a * d - w * w >= -tol &&
         b * c - z * z >= -tol;
}

SweepRequest cube(std::size_t res, double t3 = 0.0, unsigned threads = 0) {
  SweepRequest r;
  r.mode = SweepMode::cube3d;
  r.resolution = res;
  r.t3 = t3;
  r.threads = threads;
  return r;
}

using Key = std::tuple<double, double, double>;

std::map<Key, SweepRow> by_lambda(const std::vector<SweepRow>& rows) {
  std::map<Key, SweepRow> out;
  for (const auto& r : rows) out[{r.lambda1, r.lambda2, r.lambda3}] = r;
  return out;
}

}  // namespace

TEST_CASE("cube3d res 3 enumerates 27 nodes with 11 CP", "[sweep]") {
  const auto rows = run_sweep(cube(3));
  REQUIRE(rows.size() == 27);

  const double v[3] = {-1, 0, 1};
  std::size_t k = 0, cp = 0;
  for (double l1 : v)
    for (double l2 : v)
      for (double l3 : v) {
        const auto& r = rows[k++];
        CHECK(r.lambda1 == l1);
        CHECK(r.lambda2 == l2);
        CHECK(r.lambda3 == l3);
        CHECK(r.t3 == 0.0);
        CHECK(r.cp == cp_by_xstate(l1, l2, l3, 0.0));
        cp += r.cp;
      }
  CHECK(cp == 11);

  const auto m = by_lambda(rows);
  // Tetrahedron vertices.
  CHECK(m.at({1, 1, 1}).cp);
  CHECK(m.at({1, -1, -1}).cp);
  CHECK(m.at({-1, 1, -1}).cp);
  CHECK(m.at({-1, -1, 1}).cp);
  CHECK_FALSE(m.at({1, 1, -1}).cp);
  CHECK_FALSE(m.at({-1, -1, -1}).cp);
  CHECK(m.at({0, 0, 0}).cp);
  CHECK(m.at({0, 0, 1}).cp);
  CHECK_FALSE(m.at({1, 1, 0}).cp);
}

TEST_CASE("CP agrees with X-state positivity on a finer cube", "[sweep]") {
  for (double t3 : {0.0, 0.3, -0.6}) {
    for (const auto& r : run_sweep(cube(21, t3))) {
      INFO(r.lambda1 << " " << r.lambda2 << " " << r.lambda3 << " " << r.t3);
      REQUIRE(r.cp == cp_by_xstate(r.lambda1, r.lambda2, r.lambda3, r.t3));
    }
  }
}

TEST_CASE("phase_covariant_2d corners", "[sweep]") {
  SweepRequest r;
  r.mode = SweepMode::phase_covariant_2d;
  r.resolution = 2;
  const auto rows = run_sweep(r);
  REQUIRE(rows.size() == 4);
  // (l1, l3): (-1,-1), (-1,1), (1,-1), (1,1)
  CHECK_FALSE(rows[0].cp);
  CHECK(rows[1].cp);
  CHECK_FALSE(rows[2].cp);
  CHECK(rows[3].cp);
  for (const auto& row : rows) CHECK(row.lambda1 == row.lambda2);
  CHECK(rows[1].lambda1 == -1.0);
  CHECK(rows[1].lambda3 == 1.0);
}

TEST_CASE("t3 = 1 collapses the CP set to the origin", "[sweep]") {
  const auto rows = run_sweep(cube(21, 1.0));
  std::size_t cp = 0;
  for (const auto& r : rows) {
    if (!r.cp) continue;
    ++cp;
    CHECK(r.lambda1 == 0.0);
    CHECK(r.lambda2 == 0.0);
    CHECK(r.lambda3 == 0.0);
  }
  CHECK(cp == 1);
}

TEST_CASE("CP region shrinks monotonically with |t3|", "[sweep]") {
  std::size_t prev = SIZE_MAX;
  for (double t3 : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
    const auto s = region_summary(run_sweep(cube(15, t3)));
    CHECK(s.cp_count <= prev);
    prev = s.cp_count;
    CHECK(region_summary(run_sweep(cube(15, -t3))).cp_count == s.cp_count);
  }
}

TEST_CASE("output does not depend on the worker count", "[sweep]") {
  const auto ref = run_sweep(cube(15, 0.25, 1));
  for (unsigned threads : {2u, 3u, 7u, 64u}) CHECK(run_sweep(cube(15, 0.25, threads)) == ref);

  std::vector<SweepRow> streamed;
  run_sweep(cube(15, 0.25, 4), [&](const SweepRow& r) { streamed.push_back(r); });
  CHECK(streamed == ref);
}

TEST_CASE("sweep verdicts respect the channel symmetries", "[sweep]") {
  const auto rows = run_sweep(cube(17, 0.1));
  const auto m = by_lambda(rows);
  for (const auto& r : rows) {
    const auto& mirror = m.at({-r.lambda1, -r.lambda2, r.lambda3});
    const auto& swap = m.at({r.lambda2, r.lambda1, r.lambda3});
    for (const SweepRow* o : {&mirror, &swap}) {
      REQUIRE(o->cp == r.cp);
      REQUIRE(o->ch1 == r.ch1);
      REQUIRE(o->ch2 == r.ch2);
      REQUIRE(o->breaks_chsh_direct == r.breaks_chsh_direct);
    }
  }
}

TEST_CASE("region_summary", "[sweep]") {
  CHECK_THROWS_AS(region_summary(std::vector<SweepRow>{}), DomainError);

  const auto s = region_summary(run_sweep(cube(11)));
  CHECK(s.rows == 1331);
  CHECK(s.cp_count > 0);
  CHECK(s.generating_cp_count <= s.cp_count);
  CHECK(s.discrepancy_count > 0);
  CHECK(s.discrepancy_count == s.generating_not_breaking + s.breaking_not_generating);
  CHECK(s.generating_fraction_of_cp ==
        static_cast<double>(s.generating_cp_count) / static_cast<double>(s.cp_count));

  SweepRow non_cp;
  non_cp.ch1 = true;
  const auto only = region_summary(std::vector<SweepRow>{non_cp});
  CHECK(only.rows == 1);
  CHECK(only.cp_count == 0);
  CHECK(only.ch1_count == 0);
  CHECK(only.generating_fraction_of_cp == 0.0);
}

TEST_CASE("family_1d sweeps the family domain", "[sweep]") {
  SweepRequest r;
  r.mode = SweepMode::family_1d;
  r.family = FamilyKind::depolarizing;
  r.resolution = 4;
  const auto rows = run_sweep(r);
  REQUIRE(rows.size() == 4);
  CHECK(rows.front().lambda1 == -1.0 / 3);
  CHECK(rows.back().lambda1 == 1.0);
  for (const auto& row : rows) {
    CHECK(row.cp);
    CHECK(row.lambda1 == row.lambda3);
  }

  r.family = FamilyKind::gad;
  r.p = 0.5;
  r.resolution = 5;
  const auto gad = run_sweep(r);
  CHECK(gad[1].lambda1 == -0.5);
  CHECK(gad[1].lambda3 == 0.25);
  CHECK(gad[1].t3 == 0.375);

  // Bounds outside the family domain fail inside a worker and propagate.
  r.family = FamilyKind::two_pauli;
  r.bounds[0] = Bounds{-1, 1};
  CHECK_THROWS_AS(run_sweep(r), DomainError);
}

TEST_CASE("custom bounds", "[sweep]") {
  auto r = cube(3);
  r.bounds[0] = Bounds{0, 0.5};
  r.bounds[2] = Bounds{0.5, 0.5};
  const auto rows = run_sweep(r);
  REQUIRE(rows.size() == 27);
  CHECK(rows[0].lambda1 == 0.0);
  CHECK(rows[9].lambda1 == 0.25);
  CHECK(rows[26].lambda1 == 0.5);
  for (const auto& row : rows) CHECK(row.lambda3 == 0.5);
}

TEST_CASE("invalid requests", "[sweep]") {
  CHECK_THROWS_AS(run_sweep(cube(1)), DomainError);
  auto r = cube(3);
  r.bounds[1] = Bounds{0.5, -0.5};
  CHECK_THROWS_AS(run_sweep(r), DomainError);
  r.bounds[1] = Bounds{-1.5, 1};
  CHECK_THROWS_AS(run_sweep(r), DomainError);
  CHECK_THROWS_AS(run_sweep(cube(3, std::nan(""))), DomainError);
  CHECK_THROWS_AS(sweep_mode_from_string("cube"), DomainError);
  CHECK(sweep_mode_from_string("pc2d") == SweepMode::phase_covariant_2d);
  CHECK(sweep_mode_from_string("family1d") == SweepMode::family_1d);
}

TEST_CASE("worker count", "[sweep]") {
  CHECK(sweep_worker_count(5) == 5);
  ::setenv("NONLOC_THREADS", "1", 1);
  CHECK(sweep_worker_count(0) == 1);
  ::setenv("NONLOC_THREADS", "junk", 1);
  CHECK(sweep_worker_count(0) >= 1);
  ::unsetenv("NONLOC_THREADS");
  CHECK(sweep_worker_count(0) >= 1);
}
