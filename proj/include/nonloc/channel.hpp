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

// Canonical qubit channel
//
//   L[X] = 1/2 [ (I + t.sigma) Tr X + sum_k lambda_k sigma_k Tr(X sigma_k) ]
//
// acting on Bloch vectors as r_k -> lambda_k r_k + t_k, together with its
// Choi matrix (1 x L)[P+] and the X-state parametrization of that matrix.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "nonloc/errors.hpp"
#include "nonloc/numerics.hpp"

namespace nonloc {

// Absolute slack on the closed-form complete-positivity inequalities.
// Families such as generalized amplitude damping sit exactly on the CP
// boundary and rounding must not push them out.
inline constexpr double kCpSlack = 1e-12;

using Vec3 = std::array<double, 3>;

class QubitChannel {
 public:
  QubitChannel() : QubitChannel({1.0, 1.0, 1.0}, {0.0, 0.0, 0.0}) {}

  // Throws DomainError if any |lambda_k| > 1 or any parameter is not finite.
  QubitChannel(const Vec3& lambda, const Vec3& t) : lambda_(lambda), t_(t) {
    for (int k = 0; k < 3; ++k) {
      if (!std::isfinite(lambda_[k]) || !std::isfinite(t_[k])) {
        throw DomainError("QubitChannel: parameters must be finite");
      }
      if (std::abs(lambda_[k]) > 1.0) {
        throw DomainError("QubitChannel: |lambda_" + std::to_string(k + 1) +
                          "| = " + std::to_string(std::abs(lambda_[k])) + " exceeds 1");
      }
    }
  }

  static QubitChannel identity() { return {}; }

  const Vec3& lambda() const { return lambda_; }
  const Vec3& t() const { return t_; }
  double lambda(int k) const { return lambda_[k]; }
  double t(int k) const { return t_[k]; }

  // True when t1 = t2 = 0, the slice on which the Choi matrix is an X state.
  bool is_x_slice() const { return t_[0] == 0.0 && t_[1] == 0.0; }

  friend bool operator==(const QubitChannel&, const QubitChannel&) = default;

 private:
  Vec3 lambda_;
  Vec3 t_;
};

struct BlochState {
  Vec3 r{0.0, 0.0, 0.0};

  double norm() const { return std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]); }
  bool is_physical() const { return norm() <= 1.0 + 1e-12; }

  // (I + r.sigma) / 2
  Matrix2 density_matrix() const {
    Matrix2 rho = 0.5 * pauli(0);
    for (int k = 0; k < 3; ++k) rho = rho + (0.5 * r[k]) * pauli(k + 1);
    return rho;
  }

  friend bool operator==(const BlochState&, const BlochState&) = default;
};

// Two-qubit X state in the computational basis:
//
//   [ a  0  0  w ]
//   [ 0  b  z  0 ]
//   [ 0  z* c  0 ]
//   [ w* 0  0  d ]
struct XState {
  double a = 0.25;
  double b = 0.25;
  double c = 0.25;
  double d = 0.25;
  Complex w = 0.0;
  Complex z = 0.0;

  // Unit trace, non-negative diagonal, sqrt(ad) >= |w|, sqrt(bc) >= |z|.
  bool is_valid(double tol = 1e-12) const {
    if (std::abs(a + b + c + d - 1.0) > tol) return false;
    if (a < -tol || b < -tol || c < -tol || d < -tol) return false;
    return std::sqrt(std::max(a * d, 0.0)) + tol >= std::abs(w) &&
           std::sqrt(std::max(b * c, 0.0)) + tol >= std::abs(z);
  }

  Matrix4 matrix() const {
    Matrix4 m;
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    m(3, 3) = d;
    m(0, 3) = w;
    m(3, 0) = std::conj(w);
    m(1, 2) = z;
    m(2, 1) = std::conj(z);
    return m;
  }
};

// Choi matrix (1 x L)[P+] of a qubit channel. Hermitian with unit trace; PSD
// iff the channel is completely positive.
class ChoiMatrix {
 public:
  explicit ChoiMatrix(const Matrix4& m) : m_(m) {}
  const Matrix4& matrix() const { return m_; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

 private:
  Matrix4 m_;
};

inline BlochState apply(const QubitChannel& ch, const BlochState& x) {
  BlochState out;
  for (int k = 0; k < 3; ++k) out.r[k] = ch.lambda(k) * x.r[k] + ch.t(k);
  return out;
}

struct StationaryState {
  BlochState state;
  bool unique = true;
};

// Fixed point X* = L[X*], component k = t_k / (1 - lambda_k). A component
// with lambda_k = 1 and t_k = 0 is free; it is reported as 0 and the result
// is flagged non-unique.
inline StationaryState stationary_state(const QubitChannel& ch) {
  StationaryState out;
  for (int k = 0; k < 3; ++k) {
    const double l = ch.lambda(k);
    const double t = ch.t(k);
    if (l == 1.0) {
      if (t != 0.0) {
        throw DomainError("stationary_state: lambda_" + std::to_string(k + 1) +
                          " = 1 with nonzero t has no fixed point");
      }
      out.state.r[k] = 0.0;
      out.unique = false;
    } else {
      out.state.r[k] = t / (1.0 - l);
    }
  }
  return out;
}

inline void require_x_slice(const QubitChannel& ch, const char* what) {
  if (!ch.is_x_slice()) {
    throw UnsupportedRegionError(std::string(what) +
                                 ": closed form requires t1 = t2 = 0; use the numeric "
                                 "PSD check on the Choi matrix instead");
  }
}

// sqrt((1 +- lambda3)^2 - t3^2) >= |lambda1 +- lambda2| for both signs.
// A negative radicand means the inequality is violated.
inline bool is_completely_positive(const QubitChannel& ch) {
  require_x_slice(ch, "is_completely_positive");
  const double l1 = ch.lambda(0), l2 = ch.lambda(1), l3 = ch.lambda(2), t3 = ch.t(2);
  for (const double sign : {1.0, -1.0}) {
    const double radicand = (1.0 + sign * l3) * (1.0 + sign * l3) - t3 * t3;
    if (radicand < -kCpSlack) return false;
    if (std::sqrt(std::max(radicand, 0.0)) + kCpSlack < std::abs(l1 + sign * l2)) return false;
  }
  return true;
}

inline ChoiMatrix choi(const QubitChannel& ch) {
  using namespace std::complex_literals;
  const double l1 = ch.lambda(0), l2 = ch.lambda(1), l3 = ch.lambda(2);
  const double t1 = ch.t(0), t2 = ch.t(1), t3 = ch.t(2);
  const Complex tm = t1 - 1i * t2;
  const Complex tp = t1 + 1i * t2;
  Matrix4 m{
      {1.0 + l3 + t3, tm, 0.0, l1 + l2},
      {tp, 1.0 - l3 - t3, l1 - l2, 0.0},
      {0.0, l1 - l2, 1.0 - l3 + t3, tm},
      {l1 + l2, 0.0, tp, 1.0 + l3 - t3},
  };
  return ChoiMatrix(0.25 * m);
}

inline XState xstate_from_channel(const QubitChannel& ch) {
  require_x_slice(ch, "xstate_from_channel");
  const double l1 = ch.lambda(0), l2 = ch.lambda(1), l3 = ch.lambda(2), t3 = ch.t(2);
  XState x;
  x.z = (l1 - l2) / 4.0;
  x.w = (l1 + l2) / 4.0;
  x.a = (1.0 + l3 + t3) / 4.0;
  x.b = (1.0 - l3 - t3) / 4.0;
  x.c = (1.0 - l3 + t3) / 4.0;
  x.d = (1.0 + l3 - t3) / 4.0;
  return x;
}

// Inverse of xstate_from_channel. The state must lie in the image of the
// t1 = t2 = 0 slice: a + b = c + d = 1/2 and real w, z.
inline QubitChannel channel_from_xstate(const XState& x) {
  constexpr double tol = 1e-10;
  if (std::abs(x.a + x.b - 0.5) > tol || std::abs(x.c + x.d - 0.5) > tol) {
    throw DomainError("channel_from_xstate: need a + b = c + d = 1/2 (trace preservation)");
  }
  if (std::abs(x.w.imag()) > tol || std::abs(x.z.imag()) > tol) {
    throw DomainError("channel_from_xstate: w and z must be real");
  }
  const double w = x.w.real(), z = x.z.real();
  // Rounding may carry |lambda| = 1 a few ulps past the bound.
  auto snap = [](double l) {
    return std::abs(l) > 1.0 && std::abs(l) - 1.0 <= 1e-12 ? std::copysign(1.0, l) : l;
  };
  return QubitChannel({snap(2.0 * (w + z)), snap(2.0 * (w - z)), snap(2.0 * (x.a + x.d) - 1.0)},
                      {0.0, 0.0, 2.0 * (x.a + x.c) - 1.0});
}

}  // namespace nonloc
