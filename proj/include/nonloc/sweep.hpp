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

// Grid sweeps over channel parameters.
//
// Rows are produced in canonical order (outer axis first, lambda1 -> lambda3
// for cube3d). Work is split into outer-axis slices that are classified
// concurrently and handed to the sink strictly in order, so output does not
// depend on the worker count.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "nonloc/channel.hpp"
#include "nonloc/errors.hpp"
#include "nonloc/families.hpp"
#include "nonloc/nonlocality.hpp"
#include "nonloc/numerics.hpp"

namespace nonloc {

enum class SweepMode { cube3d, phase_covariant_2d, family_1d };

inline std::string_view to_string(SweepMode mode) {
  switch (mode) {
    case SweepMode::cube3d: return "cube3d";
    case SweepMode::phase_covariant_2d: return "phase_covariant_2d";
    case SweepMode::family_1d: return "family_1d";
  }
  return "unknown";
}

// Accepts the short aliases pc2d and family1d as well.
inline SweepMode sweep_mode_from_string(std::string_view name) {
  if (name == "cube3d") return SweepMode::cube3d;
  if (name == "phase_covariant_2d" || name == "pc2d") return SweepMode::phase_covariant_2d;
  if (name == "family_1d" || name == "family1d") return SweepMode::family_1d;
  throw DomainError("unknown sweep mode '" + std::string(name) + "'");
}

struct Bounds {
  double lo = -1.0;
  double hi = 1.0;
};

struct SweepRequest {
  SweepMode mode = SweepMode::cube3d;
  double t3 = 0.0;
  std::size_t resolution = 101;
  // cube3d: lambda1, lambda2, lambda3. phase_covariant_2d: [0] lambda1 and
  // [2] lambda3. family_1d: [0] overrides the family's parameter domain.
  std::array<std::optional<Bounds>, 3> bounds{};
  FamilyKind family = FamilyKind::depolarizing;
  double p = 0.0;
  int axis = 3;
  // 0 picks NONLOC_THREADS or the hardware concurrency.
  unsigned threads = 0;

  Bounds axis_bounds(std::size_t k) const {
    if (bounds[k]) return *bounds[k];
    if (mode == SweepMode::family_1d && k == 0) {
      const auto d = family_domain(family);
      return {d.lo, d.hi};
    }
    return {};
  }

  std::size_t row_count() const {
    switch (mode) {
      case SweepMode::cube3d: return resolution * resolution * resolution;
      case SweepMode::phase_covariant_2d: return resolution * resolution;
      case SweepMode::family_1d: return resolution;
    }
    return 0;
  }

  void validate() const {
    if (resolution < 2) throw DomainError("sweep: resolution must be >= 2");
    for (std::size_t k = 0; k < 3; ++k) {
      const Bounds b = axis_bounds(k);
      if (!(b.lo <= b.hi)) throw DomainError("sweep: bounds must satisfy lo <= hi");
      if (!(b.lo >= -1.0 && b.hi <= 1.0)) throw DomainError("sweep: bounds must lie within [-1, 1]");
    }
    if (!std::isfinite(t3)) throw DomainError("sweep: t3 must be finite");
  }
};

struct SweepRow {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
  double t3 = 0.0;
  bool cp = false;
  bool ch1 = false;
  bool ch2 = false;
  bool paper_generating = false;
  bool breaks_chsh_direct = false;
  double horodecki_m = 0.0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

inline SweepRow make_row(const QubitChannel& ch) {
  const auto c = classify(ch);
  return {ch.lambda(0), ch.lambda(1), ch.lambda(2), ch.t(2), c.cp, c.ch1,
          c.ch2,        c.paper_generating, c.breaks_chsh_direct, c.horodecki_m};
}

struct RegionSummary {
  std::size_t rows = 0;
  std::size_t cp_count = 0;
  std::size_t ch1_count = 0;
  std::size_t ch2_count = 0;
  std::size_t generating_cp_count = 0;
  double generating_fraction_of_cp = 0.0;
  // CP rows where ch1 || ch2 and the direct Horodecki verdict disagree,
  // split by direction.
  std::size_t discrepancy_count = 0;
  std::size_t generating_not_breaking = 0;
  std::size_t breaking_not_generating = 0;
};

// Incremental region_summary for streamed sweeps. ch1/ch2 counts are over
// CP rows; points outside the channel set are not channels.
class RegionTally {
 public:
  void add(const SweepRow& row) {
    ++s_.rows;
    if (!row.cp) return;
    ++s_.cp_count;
    if (row.ch1) ++s_.ch1_count;
    if (row.ch2) ++s_.ch2_count;
    if (row.paper_generating) ++s_.generating_cp_count;
    if (row.paper_generating && !row.breaks_chsh_direct) ++s_.generating_not_breaking;
    if (!row.paper_generating && row.breaks_chsh_direct) ++s_.breaking_not_generating;
    if (row.paper_generating != row.breaks_chsh_direct) ++s_.discrepancy_count;
  }

  RegionSummary summary() const {
    if (s_.rows == 0) throw DomainError("region_summary: empty dataset");
    RegionSummary out = s_;
    out.generating_fraction_of_cp =
        out.cp_count == 0 ? 0.0
                          : static_cast<double>(out.generating_cp_count) /
                                static_cast<double>(out.cp_count);
    return out;
  }

 private:
  RegionSummary s_;
};

inline RegionSummary region_summary(std::span<const SweepRow> rows) {
  RegionTally tally;
  for (const auto& r : rows) tally.add(r);
  return tally.summary();
}

inline unsigned sweep_worker_count(unsigned requested) {
  unsigned n = requested;
  if (n == 0) {
    n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("NONLOC_THREADS")) {
      char* end = nullptr;
      const long cap = std::strtol(env, &end, 10);
      if (end != env && cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
  }
  return std::max(1u, n);
}

namespace detail {

inline QubitChannel sweep_channel(const SweepRequest& req, std::size_t outer, std::size_t i,
                                  std::size_t j) {
  const std::size_t n = req.resolution;
  auto node = [&](std::size_t axis, std::size_t idx) {
    const Bounds b = req.axis_bounds(axis);
    return linspace_node(b.lo, b.hi, n, idx);
  };
  switch (req.mode) {
    case SweepMode::cube3d:
      return {{node(0, outer), node(1, i), node(2, j)}, {0.0, 0.0, req.t3}};
    case SweepMode::phase_covariant_2d: {
      const double l1 = node(0, outer);
      return {{l1, l1, node(2, i)}, {0.0, 0.0, req.t3}};
    }
    case SweepMode::family_1d:
      return family_channel(
          FamilySpec{.kind = req.family, .lambda = node(0, outer), .p = req.p, .axis = req.axis});
  }
  throw DomainError("unknown sweep mode");
}

// Rows of one outer-axis slice in canonical order.
inline void sweep_slice(const SweepRequest& req, std::size_t outer, std::vector<SweepRow>& out) {
  out.clear();
  const std::size_t n = req.resolution;
  switch (req.mode) {
    case SweepMode::cube3d:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.push_back(make_row(sweep_channel(req, outer, i, j)));
      break;
    case SweepMode::phase_covariant_2d:
      for (std::size_t i = 0; i < n; ++i) out.push_back(make_row(sweep_channel(req, outer, i, 0)));
      break;
    case SweepMode::family_1d:
      out.push_back(make_row(sweep_channel(req, outer, 0, 0)));
      break;
  }
}

}  // namespace detail

// Classifies every grid node and passes the rows to `sink` in canonical
// order. Non-CP nodes are kept with cp = false.
template <typename Sink>
void run_sweep(const SweepRequest& req, Sink&& sink) {
  req.validate();
  const std::size_t slices = req.resolution;
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(sweep_worker_count(req.threads), slices));

  std::vector<std::vector<SweepRow>> buffers(workers);
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t base = 0; base < slices; base += workers) {
    const std::size_t batch = std::min<std::size_t>(workers, slices - base);
    auto work = [&](std::size_t w) {
      try {
        detail::sweep_slice(req, base + w, buffers[w]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    };
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 1; w < batch; ++w) pool.emplace_back(work, w);
      work(0);
    }
    for (std::size_t w = 0; w < batch; ++w) {
      if (errors[w]) std::rethrow_exception(errors[w]);
      for (const auto& row : buffers[w]) sink(row);
    }
  }
}

inline std::vector<SweepRow> run_sweep(const SweepRequest& req) {
  std::vector<SweepRow> rows;
  req.validate();
  rows.reserve(req.row_count());
  run_sweep(req, [&](const SweepRow& r) { rows.push_back(r); });
  return rows;
}

}  // namespace nonloc
