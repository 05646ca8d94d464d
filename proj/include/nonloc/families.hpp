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

// Named qubit channel families and their closed-form nonlocality ranges.
//
// Pauli (unital) families:
//   linear            lambda_axis = l, other eigenvalues 0         |l| <= 1
//   dephasing         lambda_axis = 1, other two = l               |l| <= 1
//   depolarizing      all lambda_k = l                             -1/3 <= l <= 1
//   two_pauli         lambda1 = lambda2 = l, lambda3 = 2 l - 1     0 <= l <= 1
// Phase-covariant (lambda2 = lambda1) families:
//   phase_covariant   lambda1 = l, lambda3, t3 free                |l|, |lambda3| <= 1
//   gad               lambda1 = l, lambda3 = l^2, t3 = p (1 - l^2) |l| <= 1, |p| <= 1
//   shifted_depol.    lambda_k = l, t3 = p (1 - l)                 0 <= l <= 1, |p| <= 1

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nonloc/channel.hpp"
#include "nonloc/errors.hpp"
#include "nonloc/nonlocality.hpp"
#include "nonloc/numerics.hpp"

namespace nonloc {

inline constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

enum class FamilyKind {
  linear,
  dephasing,
  depolarizing,
  two_pauli,
  phase_covariant,
  gad,
  shifted_depolarizing,
};

inline constexpr std::array<FamilyKind, 7> kAllFamilies = {
    FamilyKind::linear,          FamilyKind::dephasing, FamilyKind::depolarizing,
    FamilyKind::two_pauli,       FamilyKind::phase_covariant, FamilyKind::gad,
    FamilyKind::shifted_depolarizing,
};

inline std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::linear: return "linear";
    case FamilyKind::dephasing: return "dephasing";
    case FamilyKind::depolarizing: return "depolarizing";
    case FamilyKind::two_pauli: return "two_pauli";
    case FamilyKind::phase_covariant: return "phase_covariant";
    case FamilyKind::gad: return "gad";
    case FamilyKind::shifted_depolarizing: return "shifted_depolarizing";
  }
  return "unknown";
}

inline FamilyKind family_kind_from_string(std::string_view name) {
  for (FamilyKind k : kAllFamilies)
    if (to_string(k) == name) return k;
  throw DomainError("unknown channel family '" + std::string(name) + "'");
}

inline bool is_pauli_family(FamilyKind kind) {
  return kind == FamilyKind::linear || kind == FamilyKind::dephasing ||
         kind == FamilyKind::depolarizing || kind == FamilyKind::two_pauli;
}

// Families whose analytic range depends on p as a parameter at all.
inline bool uses_p(FamilyKind kind) {
  return kind == FamilyKind::gad || kind == FamilyKind::shifted_depolarizing;
}

struct FamilySpec {
  FamilyKind kind = FamilyKind::depolarizing;
  double lambda = 0.0;   // the family's scalar parameter (lambda1 for phase_covariant)
  double lambda3 = 0.0;  // phase_covariant only
  double t3 = 0.0;       // phase_covariant only
  double p = 0.0;        // gad, shifted_depolarizing
  int axis = 3;          // linear, dephasing: which eigenvalue is singled out (1..3)
};

struct ParamInterval {
  double lo;
  double hi;
  bool contains(double v) const { return v >= lo && v <= hi; }
};

// Printed domain of the scalar parameter lambda.
inline ParamInterval family_domain(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::depolarizing: return {-1.0 / 3.0, 1.0};
    case FamilyKind::two_pauli:
    case FamilyKind::shifted_depolarizing: return {0.0, 1.0};
    default: return {-1.0, 1.0};
  }
}

struct PauliProbabilities {
  double p0 = 1.0;
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;
};

// lambda_k = 2 (p0 + p_k) - 1, t = 0.
inline QubitChannel channel_from_pauli(const PauliProbabilities& p) {
  constexpr double tol = 1e-12;
  const std::array<double, 4> ps{p.p0, p.p1, p.p2, p.p3};
  double total = 0.0;
  for (double v : ps) {
    if (!(v >= -tol && v <= 1.0 + tol)) {
      throw DomainError("channel_from_pauli: probabilities must lie in [0, 1]");
    }
    total += v;
  }
  if (std::abs(total - 1.0) > tol) {
    throw DomainError("channel_from_pauli: probabilities sum to " + std::to_string(total));
  }
  auto eig = [&](double pk) { return std::clamp(2.0 * (p.p0 + pk) - 1.0, -1.0, 1.0); };
  return QubitChannel({eig(p.p1), eig(p.p2), eig(p.p3)}, {0.0, 0.0, 0.0});
}

// Fujiwara-Algoet: |1 +- lambda3| >= |lambda1 +- lambda2|. Unital only.
inline bool pauli_cp(const QubitChannel& ch) {
  if (ch.t(0) != 0.0 || ch.t(1) != 0.0 || ch.t(2) != 0.0) {
    throw UnsupportedRegionError("pauli_cp: channel is not unital (t != 0)");
  }
  const double l1 = ch.lambda(0), l2 = ch.lambda(1), l3 = ch.lambda(2);
  return std::abs(1.0 + l3) + kCpSlack >= std::abs(l1 + l2) &&
         std::abs(1.0 - l3) + kCpSlack >= std::abs(l1 - l2);
}

// |lambda3| + |t3| <= 1 and 4 lambda1^2 + t3^2 <= (1 + lambda3)^2.
inline bool phase_covariant_cp(double l1, double l3, double t3) {
  return std::abs(l3) + std::abs(t3) <= 1.0 + kCpSlack &&
         4.0 * l1 * l1 + t3 * t3 <= (1.0 + l3) * (1.0 + l3) + kCpSlack;
}

inline QubitChannel family_channel(const FamilySpec& spec) {
  const double l = spec.lambda;
  const auto domain = family_domain(spec.kind);
  if (!domain.contains(l)) {
    throw DomainError(std::string(to_string(spec.kind)) + ": lambda = " + std::to_string(l) +
                      " outside [" + std::to_string(domain.lo) + ", " +
                      std::to_string(domain.hi) + "]");
  }
  if (uses_p(spec.kind) && !(std::abs(spec.p) <= 1.0)) {
    throw DomainError(std::string(to_string(spec.kind)) + ": |p| must be <= 1");
  }
  const bool axial = spec.kind == FamilyKind::linear || spec.kind == FamilyKind::dephasing;
  if (axial && (spec.axis < 1 || spec.axis > 3)) {
    throw DomainError("axis must be 1, 2 or 3");
  }

  switch (spec.kind) {
    case FamilyKind::linear: {
      Vec3 lam{0.0, 0.0, 0.0};
      lam[spec.axis - 1] = l;
      return {lam, {0.0, 0.0, 0.0}};
    }
    case FamilyKind::dephasing: {
      Vec3 lam{l, l, l};
      lam[spec.axis - 1] = 1.0;
      return {lam, {0.0, 0.0, 0.0}};
    }
    case FamilyKind::depolarizing: return {{l, l, l}, {0.0, 0.0, 0.0}};
    case FamilyKind::two_pauli: return {{l, l, 2.0 * l - 1.0}, {0.0, 0.0, 0.0}};
    case FamilyKind::phase_covariant:
      if (!(std::abs(spec.lambda3) <= 1.0)) {
        throw DomainError("phase_covariant: |lambda3| must be <= 1");
      }
      return {{l, l, spec.lambda3}, {0.0, 0.0, spec.t3}};
    case FamilyKind::gad: return {{l, l, l * l}, {0.0, 0.0, spec.p * (1.0 - l * l)}};
    case FamilyKind::shifted_depolarizing: return {{l, l, l}, {0.0, 0.0, spec.p * (1.0 - l)}};
  }
  throw DomainError("unknown channel family");
}

// Family-specific CP test: Fujiwara-Algoet for Pauli families, the
// phase-covariant pair of inequalities otherwise.
inline bool family_cp(const FamilySpec& spec) {
  const auto ch = family_channel(spec);
  if (is_pauli_family(spec.kind)) return pauli_cp(ch);
  return phase_covariant_cp(ch.lambda(0), ch.lambda(2), ch.t(2));
}

struct GeneratingRange {
  std::string_view description;
  bool (*contains)(const FamilySpec&);
};

// Closed-form set of parameters for which ch1 or ch2 holds.
inline GeneratingRange analytic_generating_range(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::linear:
      return {"|lambda|<1", [](const FamilySpec& s) { return std::abs(s.lambda) < 1.0; }};
    case FamilyKind::dephasing:
      return {"none", [](const FamilySpec&) { return false; }};
    case FamilyKind::depolarizing:
      // Upper endpoint excluded: ch1's first inequality is strict.
      return {"-1/3<=lambda<1/sqrt(2)",
              [](const FamilySpec& s) { return s.lambda >= -1.0 / 3.0 && s.lambda < kInvSqrt2; }};
    case FamilyKind::two_pauli:
      return {"0<lambda<1", [](const FamilySpec& s) { return s.lambda > 0.0 && s.lambda < 1.0; }};
    case FamilyKind::phase_covariant:
      return {"lambda1^2<min(lambda3^2,1-lambda3^2) or |lambda1|=|lambda3|<1/sqrt(2) or "
              "|lambda3|<|lambda1|<1",
              [](const FamilySpec& s) {
                const double l1 = s.lambda, l3 = s.lambda3;
                const double a1 = std::abs(l1), a3 = std::abs(l3);
                return l1 * l1 < std::min(l3 * l3, 1.0 - l3 * l3) || (a1 == a3 && a3 < kInvSqrt2) ||
                       (a3 < a1 && a1 < 1.0);
              }};
    case FamilyKind::gad:
      return {"|lambda|<1", [](const FamilySpec& s) { return std::abs(s.lambda) < 1.0; }};
    case FamilyKind::shifted_depolarizing:
      return {"lambda<1/sqrt(2)", [](const FamilySpec& s) { return s.lambda < kInvSqrt2; }};
  }
  throw DomainError("unknown channel family");
}

inline constexpr std::array<double, 5> kCrossCheckP = {-1.0, -0.5, 0.0, 0.5, 1.0};

struct FamilyCheck {
  FamilyKind kind{};
  std::size_t points = 0;
  std::size_t generating = 0;
  std::size_t mismatches = 0;    // analytic range vs ch1 || ch2
  std::size_t cp_failures = 0;   // in-domain points failing the family CP check
  std::size_t p_dependent = 0;   // lambda values whose verdict changes with p
  bool pass() const { return mismatches == 0 && cp_failures == 0 && p_dependent == 0; }
};

// Numeric grid cross-check of analytic_generating_range against
// paper_conditions(family_channel(.)).
//   linear, dephasing      every axis, `grid` points over the domain
//   gad, shifted_depol.    `grid` points for each p in {-1, -1/2, 0, 1/2, 1}
//   phase_covariant        grid x grid over (lambda1, lambda3) in [-1, 1]^2,
//                          t3 = 0; no CP requirement (the domain is the CP set)
inline FamilyCheck cross_check_family(FamilyKind kind, std::size_t grid) {
  if (grid < 2) throw DomainError("cross_check_family: grid must have at least 2 points");
  const auto range = analytic_generating_range(kind);
  const auto domain = family_domain(kind);
  FamilyCheck out;
  out.kind = kind;

  auto visit = [&](const FamilySpec& spec, bool check_cp) {
    const bool numeric = paper_conditions(family_channel(spec)).generating();
    ++out.points;
    if (numeric) ++out.generating;
    if (numeric != range.contains(spec)) ++out.mismatches;
    if (check_cp && !(family_cp(spec) && is_completely_positive(family_channel(spec)))) {
      ++out.cp_failures;
    }
    return numeric;
  };

  if (kind == FamilyKind::phase_covariant) {
    for (std::size_t i = 0; i < grid; ++i)
      for (std::size_t j = 0; j < grid; ++j) {
        FamilySpec s{.kind = kind,
                     .lambda = linspace_node(-1.0, 1.0, grid, i),
                     .lambda3 = linspace_node(-1.0, 1.0, grid, j)};
        visit(s, false);
      }
    return out;
  }

  std::vector<int> axes = {3};
  if (kind == FamilyKind::linear || kind == FamilyKind::dephasing) axes = {1, 2, 3};
  for (int axis : axes)
    for (std::size_t i = 0; i < grid; ++i) {
      FamilySpec s{.kind = kind, .lambda = linspace_node(domain.lo, domain.hi, grid, i), .axis = axis};
      if (!uses_p(kind)) {
        visit(s, true);
        continue;
      }
      std::optional<bool> first;
      bool varies = false;
      for (double p : kCrossCheckP) {
        s.p = p;
        const bool v = visit(s, true);
        if (first && *first != v) varies = true;
        first = v;
      }
      if (varies) ++out.p_dependent;
    }
  return out;
}

}  // namespace nonloc
