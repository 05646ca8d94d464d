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

// Circulant operators on C^n x C^m.
//
// The base subspace span{e_k x f_k} is permuted by pi (with pi(0) = 0) and
// cyclically shifted to give m mutually orthogonal subspaces
//
//   Sigma_i = span{ e_k x f_{pi(k) + i mod m} : k = 0..n-1 },
//
// whose direct sum is the whole space. A circulant operator is a sum of one
// block per subspace:
//
//   O = sum_alpha sum_ij a^(alpha)_ij  e_ij x S^alpha f_{pi(i) pi(j)} (S^alpha)^T
//
// The two-qubit case n = m = 2, pi = id gives the X states.

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "nonloc/channel.hpp"
#include "nonloc/errors.hpp"
#include "nonloc/numerics.hpp"

namespace nonloc {

class CirculantSpec {
 public:
  // coeffs[alpha] is the m x m coefficient block a^(alpha).
  // Only n == m is accepted; the operator sum runs i, j over 0..m-1 while
  // e_ij lives in dimension n.
  CirculantSpec(std::size_t n, std::size_t m, std::vector<std::size_t> pi,
                std::vector<ComplexMatrix> coeffs)
      : n_(n), m_(m), pi_(std::move(pi)), coeffs_(std::move(coeffs)) {
    if (n_ == 0 || m_ == 0) throw DomainError("CirculantSpec: dimensions must be positive");
    if (n_ != m_) {
      throw DomainError("CirculantSpec: n = " + std::to_string(n_) + " differs from m = " +
                        std::to_string(m_) + "; only n = m is supported");
    }
    if (pi_.size() != m_) {
      throw DomainError("CirculantSpec: permutation has " + std::to_string(pi_.size()) +
                        " entries, expected " + std::to_string(m_));
    }
    std::vector<bool> seen(m_, false);
    for (std::size_t v : pi_) {
      if (v >= m_ || seen[v]) throw DomainError("CirculantSpec: pi is not a bijection of 0..m-1");
      seen[v] = true;
    }
    if (pi_[0] != 0) throw DomainError("CirculantSpec: pi must fix 0");
    if (coeffs_.size() != m_) {
      throw DomainError("CirculantSpec: expected " + std::to_string(m_) + " coefficient blocks, got " +
                        std::to_string(coeffs_.size()));
    }
    for (const auto& block : coeffs_) {
      if (block.rows() != m_ || block.cols() != m_) {
        throw DomainError("CirculantSpec: coefficient blocks must be " + std::to_string(m_) + "x" +
                          std::to_string(m_));
      }
    }
  }

  // Zero coefficients.
  static CirculantSpec zeros(std::size_t n, std::vector<std::size_t> pi) {
    return {n, n, std::move(pi), std::vector<ComplexMatrix>(n, ComplexMatrix(n, n))};
  }

  // n = m = 2, pi = id, a^(0) = [[a, w], [w*, d]], a^(1) = [[b, z], [z*, c]].
  static CirculantSpec from_xstate(const XState& x) {
    ComplexMatrix a0(2, 2, {x.a, x.w, std::conj(x.w), x.d});
    ComplexMatrix a1(2, 2, {x.b, x.z, std::conj(x.z), x.c});
    return {2, 2, {0, 1}, {std::move(a0), std::move(a1)}};
  }

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  std::size_t dimension() const { return n_ * m_; }
  const std::vector<std::size_t>& pi() const { return pi_; }
  const std::vector<ComplexMatrix>& coeffs() const { return coeffs_; }

 private:
  std::size_t n_;
  std::size_t m_;
  std::vector<std::size_t> pi_;
  std::vector<ComplexMatrix> coeffs_;
};

// Flat index of e_k x f_l.
inline std::size_t product_index(const CirculantSpec& spec, std::size_t k, std::size_t l) {
  return k * spec.m() + l;
}

// Orthonormal basis of Sigma_i as n column vectors of length n m.
inline std::vector<ComplexMatrix> subspace_basis(const CirculantSpec& spec, std::size_t i) {
  if (i >= spec.m()) {
    throw DomainError("subspace_basis: index " + std::to_string(i) + " out of range 0.." +
                      std::to_string(spec.m() - 1));
  }
  std::vector<ComplexMatrix> basis;
  basis.reserve(spec.n());
  for (std::size_t k = 0; k < spec.n(); ++k) {
    ComplexMatrix v(spec.dimension(), 1);
    v(product_index(spec, k, (spec.pi()[k] + i) % spec.m()), 0) = 1.0;
    basis.push_back(std::move(v));
  }
  return basis;
}

inline ComplexMatrix build_operator(const CirculantSpec& spec) {
  const std::size_t m = spec.m();
  ComplexMatrix op(spec.dimension(), spec.dimension());
  for (std::size_t alpha = 0; alpha < m; ++alpha) {
    const auto& a = spec.coeffs()[alpha];
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t row = product_index(spec, i, (spec.pi()[i] + alpha) % m);
      for (std::size_t j = 0; j < m; ++j) {
        const std::size_t col = product_index(spec, j, (spec.pi()[j] + alpha) % m);
        op(row, col) += a(i, j);
      }
    }
  }
  return op;
}

// PSD (tol 1e-10) with unit trace (tol 1e-12). Non-Hermitian operators are
// not states.
inline bool is_circulant_state(const CirculantSpec& spec) {
  const auto op = build_operator(spec);
  if (std::abs(trace(op) - Complex(1.0)) > 1e-12) return false;
  if (!is_hermitian(op)) return false;
  return is_psd(op, kPsdTol);
}

// Stacks every subspace basis vector as a column and checks V^dagger V = I
// with exactly n m columns, i.e. the subspaces are orthonormal and span the
// whole space.
inline bool verify_direct_sum(const CirculantSpec& spec) {
  const std::size_t dim = spec.dimension();
  std::vector<ComplexMatrix> columns;
  for (std::size_t i = 0; i < spec.m(); ++i) {
    auto b = subspace_basis(spec, i);
    columns.insert(columns.end(), std::make_move_iterator(b.begin()),
                   std::make_move_iterator(b.end()));
  }
  if (columns.size() != dim) return false;

  ComplexMatrix stacked(dim, dim);
  for (std::size_t c = 0; c < dim; ++c)
    for (std::size_t r = 0; r < dim; ++r) stacked(r, c) = columns[c](r, 0);

  const auto gram = matmul(adjoint(stacked), stacked);
  const auto id = ComplexMatrix::identity(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c)
      if (std::abs(gram(r, c) - id(r, c)) > 1e-12) return false;
  return true;
}

}  // namespace nonloc
