// Copyright 2026 The disent authors
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

#ifndef DISENT_COMPLEX_MATRIX_HPP_
#define DISENT_COMPLEX_MATRIX_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "disent/errors.hpp"
#include "disent/tolerances.hpp"

namespace disent {

using Complex = std::complex<double>;

// Dense square complex matrix, row-major. Quantum states live on dimensions
// 2, 4, 8, 16 (enforced by DensityMatrix); the raw carrier accepts any
// dimension up to 16 so the eigensolver can also serve small non-state
// matrices.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(int dim) : dim_(dim) {
    if (dim < 1 || dim > 16) {
      throw WrongDimension("ComplexMatrix dimension must be in [1, 16], got " +
                           std::to_string(dim));
    }
    a_.resize(static_cast<std::size_t>(dim) * dim, Complex(0.0, 0.0));
  }

  static ComplexMatrix identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
  }

  int dim() const { return dim_; }

  Complex& at(int r, int c) { return a_[static_cast<std::size_t>(r) * dim_ + c]; }
  const Complex& at(int r, int c) const {
    return a_[static_cast<std::size_t>(r) * dim_ + c];
  }

  Complex trace() const {
    Complex t = 0.0;
    for (int i = 0; i < dim_; ++i) t += at(i, i);
    return t;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix m(dim_);
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c) m.at(c, r) = std::conj(at(r, c));
    return m;
  }

  ComplexMatrix transpose() const {
    ComplexMatrix m(dim_);
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c) m.at(c, r) = at(r, c);
    return m;
  }

  // max |entry| of (this - this^dagger)
  double hermiticity_defect() const {
    double worst = 0.0;
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c)
        worst = std::max(worst, std::abs(at(r, c) - std::conj(at(c, r))));
    return worst;
  }

  double max_abs() const {
    double worst = 0.0;
    for (const Complex& z : a_) worst = std::max(worst, std::abs(z));
    return worst;
  }

  double max_abs_diff(const ComplexMatrix& o) const {
    double worst = 0.0;
    for (std::size_t i = 0; i < a_.size(); ++i)
      worst = std::max(worst, std::abs(a_[i] - o.a_[i]));
    return worst;
  }

  friend ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y) {
    ComplexMatrix m(x.dim_);
    for (std::size_t i = 0; i < x.a_.size(); ++i) m.a_[i] = x.a_[i] + y.a_[i];
    return m;
  }

  friend ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y) {
    ComplexMatrix m(x.dim_);
    for (std::size_t i = 0; i < x.a_.size(); ++i) m.a_[i] = x.a_[i] - y.a_[i];
    return m;
  }

  friend ComplexMatrix operator*(const Complex& s, const ComplexMatrix& x) {
    ComplexMatrix m(x.dim_);
    for (std::size_t i = 0; i < x.a_.size(); ++i) m.a_[i] = s * x.a_[i];
    return m;
  }

  friend ComplexMatrix operator*(double s, const ComplexMatrix& x) {
    return Complex(s, 0.0) * x;
  }

  friend ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y) {
    ComplexMatrix m(x.dim_);
    for (int r = 0; r < x.dim_; ++r) {
      for (int k = 0; k < x.dim_; ++k) {
        const Complex xv = x.at(r, k);
        if (xv == Complex(0.0, 0.0)) continue;
        for (int c = 0; c < x.dim_; ++c) m.at(r, c) += xv * y.at(k, c);
      }
    }
    return m;
  }

 private:
  int dim_;
  std::vector<Complex> a_;
};

// Kronecker product; the result's first factor indexes the high-order bits.
inline ComplexMatrix kron(const ComplexMatrix& x, const ComplexMatrix& y) {
  const int dx = x.dim(), dy = y.dim();
  if (dx * dy > 16) {
    throw DimensionOverflow("kron result dimension " + std::to_string(dx * dy) +
                            " exceeds 16");
  }
  ComplexMatrix m(dx * dy);
  for (int i = 0; i < dx; ++i)
    for (int j = 0; j < dx; ++j) {
      const Complex v = x.at(i, j);
      if (v == Complex(0.0, 0.0)) continue;
      for (int k = 0; k < dy; ++k)
        for (int l = 0; l < dy; ++l) m.at(i * dy + k, j * dy + l) = v * y.at(k, l);
    }
  return m;
}

// Eigenvalues of a Hermitian matrix, ascending. Cyclic Jacobi with complex
// rotations: each pivot (p, q) is first phased real, then annihilated by a
// standard real rotation; sweeps repeat until the off-diagonal Frobenius norm
// drops below tol::kJacobiOff. Deterministic and dependency-free; accuracy is
// far inside the 1e-10 contract for dimensions up to 16.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  if (m.hermiticity_defect() > tol::kEigGate) {
    throw NotHermitian("hermitian_eigenvalues: defect " +
                       std::to_string(m.hermiticity_defect()));
  }
  const int n = m.dim();

  // Work on the exactly Hermitian average of m and its adjoint.
  ComplexMatrix a = 0.5 * (m + m.adjoint());

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off2 = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off2 += 2.0 * std::norm(a.at(p, q));
    if (std::sqrt(off2) <= tol::kJacobiOff) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex beta = a.at(p, q);
        const double ab = std::abs(beta);
        if (ab == 0.0) continue;

        const Complex u = beta / ab;  // e^{i phase} of the pivot
        const double tau = (a.at(q, q).real() - a.at(p, p).real()) / (2.0 * ab);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // Columns: col_p <- c*col_p - s*conj(u)*col_q ; col_q <- s*col_p + c*conj(u)*col_q
        for (int i = 0; i < n; ++i) {
          const Complex ap = a.at(i, p), aq = a.at(i, q);
          a.at(i, p) = c * ap - s * std::conj(u) * aq;
          a.at(i, q) = s * ap + c * std::conj(u) * aq;
        }
        // Rows: row_p <- c*row_p - s*u*row_q ; row_q <- s*row_p + c*u*row_q
        for (int j = 0; j < n; ++j) {
          const Complex ap = a.at(p, j), aq = a.at(q, j);
          a.at(p, j) = c * ap - s * u * aq;
          a.at(q, j) = s * ap + c * u * aq;
        }
        // Restore exact Hermitian structure at the pivot.
        a.at(p, q) = 0.0;
        a.at(q, p) = 0.0;
        a.at(p, p) = Complex(a.at(p, p).real(), 0.0);
        a.at(q, q) = Complex(a.at(q, q).real(), 0.0);
      }
    }
  }

  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i) eig[i] = a.at(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

inline double min_hermitian_eigenvalue(const ComplexMatrix& m) {
  return hermitian_eigenvalues(m).front();
}

}  // namespace disent

#endif  // DISENT_COMPLEX_MATRIX_HPP_
