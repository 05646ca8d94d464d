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

// CHSH analysis of Choi states.
//
// A two-qubit state violates CHSH iff the two largest eigenvalues of T^T T
// sum to more than 1 (Horodecki), where T_jk = Tr(rho sigma_j x sigma_k).
// For the Choi state of a channel those eigenvalues are lambda_k^2.
//
// Two verdicts are kept side by side and never merged:
//   ch1 / ch2           the channel-level conditions evaluated literally as
//                       printed in the source analysis
//   breaks_chsh_direct  max pairwise eigenvalue sum > 1
// They disagree on large regions; the identity channel breaks CHSH maximally
// yet satisfies neither ch1 nor ch2.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "nonloc/channel.hpp"
#include "nonloc/errors.hpp"
#include "nonloc/numerics.hpp"

namespace nonloc {

inline constexpr double kOracleTol = 1e-10;

struct CorrelationMatrix {
  std::array<std::array<double, 3>, 3> t{};

  double operator()(std::size_t j, std::size_t k) const { return t[j][k]; }

  // T^T T as a real symmetric 3x3 (T is real).
  Matrix3 gram() const {
    Matrix3 g;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        double acc = 0.0;
        for (std::size_t k = 0; k < 3; ++k) acc += t[k][i] * t[k][j];
        g(i, j) = acc;
      }
    return g;
  }
};

// s1 belongs to the sigma_3 x sigma_3 direction; s2 <= s3 span the
// sigma_1/sigma_2 block.
struct SValues {
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;

  std::array<double, 3> sorted_descending() const {
    std::array<double, 3> v{s1, s2, s3};
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
  }
};

struct HorodeckiResult {
  double m = 0.0;       // max{s1 + s2, s2 + s3, s3 + s1}
  double s = 0.0;       // 2 sqrt(m), the optimal CHSH value
  bool breaks = false;  // m > 1
};

struct PaperConditions {
  bool ch1 = false;
  bool ch2 = false;
  bool generating() const { return ch1 || ch2; }
};

struct Classification {
  bool cp = false;
  bool ch1 = false;
  bool ch2 = false;
  bool paper_generating = false;
  double horodecki_m = 0.0;
  double chsh_s = 0.0;
  bool breaks_chsh_direct = false;
};

inline CorrelationMatrix correlation_matrix_xstate(const XState& x) {
  using namespace std::complex_literals;
  const Complex w = x.w, z = x.z;
  const Complex wc = std::conj(w), zc = std::conj(z);
  CorrelationMatrix c;
  c.t[0][0] = (w + wc + z + zc).real();
  c.t[0][1] = (1i * (w - wc - z + zc)).real();
  c.t[1][0] = (-1i * (-w + wc - z + zc)).real();
  c.t[1][1] = (-w - wc + z + zc).real();
  c.t[2][2] = x.a - x.b - x.c + x.d;
  return c;
}

namespace detail {

// sigma_j x sigma_k is a signed/phased permutation matrix: one nonzero per
// row. Tr(rho P) = sum_r rho(col(r), r) P(r, col(r)).
struct PauliProduct {
  std::array<std::size_t, 4> col{};
  std::array<Complex, 4> val{};
};

inline const std::array<std::array<PauliProduct, 3>, 3>& pauli_products() {
  static const auto table = [] {
    std::array<std::array<PauliProduct, 3>, 3> out{};
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const Matrix4 p = kron(pauli(j + 1), pauli(k + 1));
        for (std::size_t r = 0; r < 4; ++r)
          for (std::size_t c = 0; c < 4; ++c)
            if (p(r, c) != 0.0) {
              out[j][k].col[r] = c;
              out[j][k].val[r] = p(r, c);
            }
      }
    return out;
  }();
  return table;
}

}  // namespace detail

// Independent route: all nine Pauli traces of an arbitrary two-qubit state.
inline CorrelationMatrix correlation_matrix_generic(const Matrix4& rho) {
  if (!is_hermitian(rho)) throw DomainError("correlation_matrix_generic: input is not Hermitian");
  const Complex tr = trace(rho);
  if (std::abs(tr - Complex(1.0)) > 1e-10) {
    throw DomainError("correlation_matrix_generic: trace " + std::to_string(tr.real()) +
                      " is not 1");
  }
  const auto& table = detail::pauli_products();
  CorrelationMatrix c;
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t k = 0; k < 3; ++k) {
      const auto& p = table[j][k];
      Complex acc = 0.0;
      for (std::size_t r = 0; r < 4; ++r) acc += rho(p.col[r], r) * p.val[r];
      c.t[j][k] = acc.real();
    }
  return c;
}

inline CorrelationMatrix correlation_matrix_generic(const ChoiMatrix& rho) {
  return correlation_matrix_generic(rho.matrix());
}

// Eigenvalues of T^T T by Jacobi, descending.
inline std::array<double, 3> s_values_oracle(const CorrelationMatrix& t) {
  return hermitian_eigenvalues(t.gram());
}

inline SValues s_values_closed_form(const XState& x) {
  const double diag = x.a - x.b - x.c + x.d;
  const double aw = std::abs(x.w), az = std::abs(x.z);
  return {diag * diag, 4.0 * (aw - az) * (aw - az), 4.0 * (aw + az) * (aw + az)};
}

// Independent of t.
inline SValues s_values_channel(const QubitChannel& ch) {
  const double l1 = ch.lambda(0), l2 = ch.lambda(1), l3 = ch.lambda(2);
  const double sum = std::abs(l1 + l2), diff = std::abs(l1 - l2);
  return {l3 * l3, 0.25 * (sum - diff) * (sum - diff), 0.25 * (sum + diff) * (sum + diff)};
}

inline HorodeckiResult horodecki(const SValues& sv) {
  HorodeckiResult r;
  r.m = std::max({sv.s1 + sv.s2, sv.s2 + sv.s3, sv.s3 + sv.s1});
  r.s = 2.0 * std::sqrt(std::max(r.m, 0.0));
  r.breaks = r.m > 1.0;
  return r;
}

// Strict/non-strict exactly as printed:
//   ch1: |l1+l2| + |l1-l2| < 2 sqrt(1 - l3^2)  and  (|l1+l2| - |l1-l2|)^2 <= 4 l3^2
//   ch2: |l1+l2| < 2                           and  (|l1+l2| - |l1-l2|)^2 >  4 l3^2
// evaluated through |a+b| + |a-b| = 2 max(|a|,|b|) and
// (|a+b| - |a-b|)^2 = 4 min(a^2, b^2), and max(|l1|,|l2|)^2 + l3^2 < 1
// decided in exact arithmetic, so boundary ties are not settled by rounding.
inline PaperConditions paper_conditions(const QubitChannel& ch) {
  const double a1 = std::abs(ch.lambda(0)), a2 = std::abs(ch.lambda(1));
  const double a3 = std::abs(ch.lambda(2));
  const double hi = std::max(a1, a2), lo = std::min(a1, a2);
  PaperConditions c;
  c.ch1 = exact_sum_of_squares_cmp(hi, a3, 1.0) < 0 && lo <= a3;
  c.ch2 = std::abs(ch.lambda(0) + ch.lambda(1)) < 2.0 && lo > a3;
  return c;
}

// Complete positivity uses the closed form on the t1 = t2 = 0 slice and the
// numeric PSD check of the Choi matrix elsewhere. The closed-form s-values
// are cross-checked against Jacobi eigenvalues of T^T T built from the Choi
// matrix; disagreement beyond 1e-10 throws ConsistencyError.
inline Classification classify(const QubitChannel& ch) {
  const ChoiMatrix rho = choi(ch);
  Classification out;
  out.cp = ch.is_x_slice() ? is_completely_positive(ch) : is_psd(rho.matrix(), kPsdTol);

  const auto cond = paper_conditions(ch);
  out.ch1 = cond.ch1;
  out.ch2 = cond.ch2;
  out.paper_generating = cond.generating();

  const SValues sv = s_values_channel(ch);
  const auto closed = sv.sorted_descending();
  const auto oracle = s_values_oracle(correlation_matrix_generic(rho));
  for (std::size_t k = 0; k < 3; ++k) {
    if (!(std::abs(closed[k] - oracle[k]) <= kOracleTol)) {
      throw ConsistencyError("classify: closed-form s-value " + std::to_string(closed[k]) +
                             " disagrees with T^T T eigenvalue " + std::to_string(oracle[k]));
    }
  }

  const auto h = horodecki(sv);
  out.horodecki_m = h.m;
  out.chsh_s = h.s;
  out.breaks_chsh_direct = h.breaks;
  return out;
}

}  // namespace nonloc
