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

// Small dense complex matrices.
//
// Two storage flavours share one set of free functions:
//   FixedMatrix<R, C>  stack storage, used on the sweep hot path (2x2 .. 8x8)
//   ComplexMatrix      heap storage with runtime shape, used for nm x nm
//                      circulant work
//
// Eigenvalues of Hermitian input come from cyclic Jacobi sweeps. Complex
// Hermitian input is embedded as the real symmetric 2n x 2n matrix
// [[Re, -Im], [Im, Re]], whose spectrum is the original one with every
// eigenvalue doubled.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "nonloc/errors.hpp"

namespace nonloc {

using Complex = std::complex<double>;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr int kMaxJacobiSweeps = 100;

template <std::size_t R, std::size_t C>
class FixedMatrix {
 public:
  static constexpr std::size_t kRows = R;
  static constexpr std::size_t kCols = C;

  constexpr FixedMatrix() = default;

  // Row-major nested list; missing entries stay zero.
  constexpr FixedMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    std::size_t i = 0;
    for (const auto& row : rows) {
      std::size_t j = 0;
      for (const auto& v : row) {
        if (i < R && j < C) data_[i * C + j] = v;
        ++j;
      }
      ++i;
    }
  }

  static constexpr FixedMatrix identity()
    requires(R == C)
  {
    FixedMatrix m;
    for (std::size_t i = 0; i < R; ++i) m.data_[i * C + i] = 1.0;
    return m;
  }

  static constexpr std::size_t rows() { return R; }
  static constexpr std::size_t cols() { return C; }

  constexpr Complex& operator()(std::size_t i, std::size_t j) { return data_[i * C + j]; }
  constexpr const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * C + j];
  }

  std::span<const Complex> entries() const { return data_; }

  friend constexpr FixedMatrix operator+(FixedMatrix a, const FixedMatrix& b) {
    for (std::size_t k = 0; k < R * C; ++k) a.data_[k] += b.data_[k];
    return a;
  }
  friend constexpr FixedMatrix operator-(FixedMatrix a, const FixedMatrix& b) {
    for (std::size_t k = 0; k < R * C; ++k) a.data_[k] -= b.data_[k];
    return a;
  }
  friend constexpr FixedMatrix operator*(Complex s, FixedMatrix a) {
    for (auto& v : a.data_) v *= s;
    return a;
  }
  friend constexpr bool operator==(const FixedMatrix&, const FixedMatrix&) = default;

 private:
  std::array<Complex, R * C> data_{};
};

template <std::size_t N>
using SquareMatrix = FixedMatrix<N, N>;
using Matrix2 = SquareMatrix<2>;
using Matrix3 = SquareMatrix<3>;
using Matrix4 = SquareMatrix<4>;

// Runtime-shaped matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
      throw DimensionError("ComplexMatrix: " + std::to_string(data_.size()) +
                           " entries for a " + std::to_string(rows_) + "x" +
                           std::to_string(cols_) + " matrix");
    }
  }
  template <std::size_t R, std::size_t C>
  explicit ComplexMatrix(const FixedMatrix<R, C>& m)
      : rows_(R), cols_(C), data_(m.entries().begin(), m.entries().end()) {}

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Complex> entries() const { return data_; }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

template <typename M>
concept MatrixLike = requires(const M& m, std::size_t i) {
  { m.rows() } -> std::convertible_to<std::size_t>;
  { m.cols() } -> std::convertible_to<std::size_t>;
  { m(i, i) } -> std::convertible_to<Complex>;
};

// Real eigenvalues in descending order.
struct Spectrum {
  std::vector<double> eigenvalues;
};

// sigma_0 = I, sigma_1 = X, sigma_2 = Y, sigma_3 = Z.
inline Matrix2 pauli(int k) {
  using namespace std::complex_literals;
  switch (k) {
    case 0: return Matrix2{{1.0, 0.0}, {0.0, 1.0}};
    case 1: return Matrix2{{0.0, 1.0}, {1.0, 0.0}};
    case 2: return Matrix2{{0.0, -1i}, {1i, 0.0}};
    case 3: return Matrix2{{1.0, 0.0}, {0.0, -1.0}};
    default: throw DomainError("pauli: index must be 0..3, got " + std::to_string(k));
  }
}

template <MatrixLike M>
void require_square(const M& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected square");
  }
}

template <MatrixLike M>
Complex trace(const M& m) {
  require_square(m, "trace");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) acc += m(i, i);
  return acc;
}

template <std::size_t R, std::size_t C>
FixedMatrix<C, R> adjoint(const FixedMatrix<R, C>& m) {
  FixedMatrix<C, R> out;
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) out(j, i) = std::conj(m(i, j));
  return out;
}

inline ComplexMatrix adjoint(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
  return out;
}

template <std::size_t R, std::size_t K, std::size_t C>
FixedMatrix<R, C> matmul(const FixedMatrix<R, K>& a, const FixedMatrix<K, C>& b) {
  FixedMatrix<R, C> out;
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t k = 0; k < K; ++k) {
      const Complex aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < C; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: inner dimensions " + std::to_string(a.cols()) + " and " +
                         std::to_string(b.rows()) + " differ");
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

template <std::size_t R1, std::size_t C1, std::size_t R2, std::size_t C2>
FixedMatrix<R1 * R2, C1 * C2> kron(const FixedMatrix<R1, C1>& a, const FixedMatrix<R2, C2>& b) {
  FixedMatrix<R1 * R2, C1 * C2> out;
  for (std::size_t i = 0; i < R1; ++i)
    for (std::size_t j = 0; j < C1; ++j)
      for (std::size_t k = 0; k < R2; ++k)
        for (std::size_t l = 0; l < C2; ++l) out(i * R2 + k, j * C2 + l) = a(i, j) * b(k, l);
  return out;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

template <MatrixLike M>
bool is_hermitian(const M& m, double tol = kHermitianTol) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
  return true;
}

namespace detail {

// Cyclic Jacobi on a real symmetric row-major n x n buffer. On return the
// diagonal holds the eigenvalues (unsorted).
inline void jacobi_symmetric(std::span<double> a, std::size_t n) {
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };

  double norm2 = 0.0;
  for (double v : a) norm2 += v * v;
  if (norm2 == 0.0) return;
  const double threshold = norm2 * 1e-32;

  for (int sweep = 0; sweep <= kMaxJacobiSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += at(p, q) * at(p, q);
    if (off <= threshold) return;
    if (sweep == kMaxJacobiSweeps) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 1.0 / (2.0 * theta);
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        at(p, p) -= t * apq;
        at(q, q) += t * apq;
        at(p, q) = 0.0;
        at(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = at(p, k) = c * akp - s * akq;
          at(k, q) = at(q, k) = s * akp + c * akq;
        }
      }
    }
  }
  throw ConvergenceError("Jacobi eigenvalue iteration did not converge in " +
                         std::to_string(kMaxJacobiSweeps) + " sweeps");
}

// Fills `out` (size n) with the descending spectrum of Hermitian `m`, using
// `work` (size >= 4 n^2 + 2 n) as scratch.
template <MatrixLike M>
void hermitian_spectrum(const M& m, std::span<double> work, std::span<double> out) {
  require_square(m, "hermitian_eigenvalues");
  if (!is_hermitian(m)) throw NotHermitianError("hermitian_eigenvalues: input is not Hermitian");
  const std::size_t n = m.rows();

  bool real = true;
  for (std::size_t i = 0; i < n && real; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m(i, j).imag() != 0.0) {
        real = false;
        break;
      }

  if (real) {
    auto buf = work.first(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) buf[i * n + j] = 0.5 * (m(i, j).real() + m(j, i).real());
    jacobi_symmetric(buf, n);
    for (std::size_t i = 0; i < n; ++i) out[i] = buf[i * n + i];
    std::sort(out.begin(), out.end(), std::greater<>());
    return;
  }

  const std::size_t n2 = 2 * n;
  auto buf = work.first(n2 * n2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // Symmetrize so that tolerance-level asymmetry cannot leak in.
      const Complex h = 0.5 * (m(i, j) + std::conj(m(j, i)));
      buf[i * n2 + j] = h.real();
      buf[(i + n) * n2 + (j + n)] = h.real();
      buf[i * n2 + (j + n)] = -h.imag();
      buf[(i + n) * n2 + j] = h.imag();
    }
  jacobi_symmetric(buf, n2);
  // Diagonal entries are the doubled spectrum.
  auto diag = work.subspan(n2 * n2, n2);
  for (std::size_t i = 0; i < n2; ++i) diag[i] = buf[i * n2 + i];
  std::sort(diag.begin(), diag.end(), std::greater<>());
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.5 * (diag[2 * i] + diag[2 * i + 1]);
}

}  // namespace detail

template <std::size_t N>
std::array<double, N> hermitian_eigenvalues(const SquareMatrix<N>& m) {
  std::array<double, 4 * N * N + 2 * N> work{};
  std::array<double, N> out{};
  detail::hermitian_spectrum(m, work, out);
  return out;
}

inline Spectrum hermitian_eigenvalues(const ComplexMatrix& m) {
  require_square(m, "hermitian_eigenvalues");
  std::vector<double> work(4 * m.rows() * m.rows() + 2 * m.rows());
  Spectrum s{std::vector<double>(m.rows())};
  detail::hermitian_spectrum(m, work, s.eigenvalues);
  return s;
}

// True iff the smallest eigenvalue is >= -tol.
template <std::size_t N>
bool is_psd(const SquareMatrix<N>& m, double tol = kPsdTol) {
  const auto ev = hermitian_eigenvalues(m);
  return ev.back() >= -tol;
}

inline bool is_psd(const ComplexMatrix& m, double tol = kPsdTol) {
  const auto s = hermitian_eigenvalues(m);
  return s.eigenvalues.empty() || s.eigenvalues.back() >= -tol;
}

// Sign (-1, 0, 1) of the exact real sum of up to 16 finite doubles.
// Shewchuk's grow-expansion with zero elimination; no overflow assumed.
inline int exact_sum_sign(std::span<const double> terms) {
  if (terms.size() > 16) throw DomainError("exact_sum_sign: at most 16 terms");
  std::array<double, 17> h{};
  std::size_t n = 0;
  for (double x : terms) {
    double q = x;
    std::size_t m = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double s = q + h[i];
      const double bv = s - q;
      const double e = (q - (s - bv)) + (h[i] - bv);
      if (e != 0.0) h[m++] = e;
      q = s;
    }
    if (q != 0.0) h[m++] = q;
    n = m;
  }
  if (n == 0) return 0;
  return h[n - 1] > 0.0 ? 1 : -1;
}

inline int exact_sum_sign(std::initializer_list<double> terms) {
  return exact_sum_sign(std::span<const double>(terms.begin(), terms.size()));
}

// Sign of a^2 + b^2 - c, exact (squares split with fma).
inline int exact_sum_of_squares_cmp(double a, double b, double c) {
  const double pa = a * a, pb = b * b;
  return exact_sum_sign({pa, std::fma(a, a, -pa), pb, std::fma(b, b, -pb), -c});
}

// Node i of n uniformly spaced points on the closed interval [lo, hi].
// Grids symmetric about 0 produce exactly negated node pairs.
inline double linspace_node(double lo, double hi, std::size_t n, std::size_t i) {
  if (n < 2) return lo;
  const double span = hi - lo;
  const double last = static_cast<double>(n - 1);
  // Fill the upper half from hi so that node(i) and node(n-1-i) mirror.
  if (2 * i <= n - 1) return lo + span * static_cast<double>(i) / last;
  return hi - span * static_cast<double>(n - 1 - i) / last;
}

}  // namespace nonloc
