// Copyright 2026 The gauge_ladder Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "gauge_ladder/error.hpp"

namespace gauge_ladder {

using cplx = std::complex<double>;
using Index = std::int64_t;

/// Square sparse complex operator.
///
/// Storage is compressed row-major, so `entries()` enumerates the nonzeros
/// in (row, col) order. Assembly from unordered triplets sums duplicates.
class SparseOperator {
 public:
  using Matrix = Eigen::SparseMatrix<cplx, Eigen::RowMajor, std::int64_t>;

  struct Entry {
    Index row;
    Index col;
    cplx value;
  };

  SparseOperator() = default;
  explicit SparseOperator(Index dim) : m_(dim, dim) {}
  explicit SparseOperator(Matrix m) : m_(std::move(m)) {
    m_.makeCompressed();
  }

  static SparseOperator from_entries(Index dim, std::span<const Entry> entries) {
    std::vector<Eigen::Triplet<cplx, std::int64_t>> trips;
    trips.reserve(entries.size());
    for (const auto& e : entries) {
      if (e.row < 0 || e.row >= dim || e.col < 0 || e.col >= dim)
        throw Error(ErrorKind::out_of_range, "operator entry outside dimension");
      trips.emplace_back(e.row, e.col, e.value);
    }
    Matrix m(dim, dim);
    m.setFromTriplets(trips.begin(), trips.end());
    return SparseOperator(std::move(m));
  }

  static SparseOperator identity(Index dim) {
    Matrix m(dim, dim);
    m.setIdentity();
    return SparseOperator(std::move(m));
  }

  static SparseOperator diagonal(std::span<const double> values) {
    std::vector<Entry> e;
    e.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
      if (values[i] != 0.0)
        e.push_back({static_cast<Index>(i), static_cast<Index>(i), values[i]});
    return from_entries(static_cast<Index>(values.size()), e);
  }

  Index dim() const { return m_.rows(); }
  Index nonzeros() const { return m_.nonZeros(); }
  const Matrix& matrix() const { return m_; }

  std::vector<Entry> entries() const {
    std::vector<Entry> out;
    out.reserve(m_.nonZeros());
    for (Index r = 0; r < m_.outerSize(); ++r)
      for (Matrix::InnerIterator it(m_, r); it; ++it)
        out.push_back({r, it.col(), it.value()});
    return out;
  }

  cplx coeff(Index row, Index col) const { return m_.coeff(row, col); }

  /// Diagonal entries, real part.
  std::vector<double> diagonal_real() const {
    std::vector<double> d(dim(), 0.0);
    for (Index r = 0; r < m_.outerSize(); ++r)
      for (Matrix::InnerIterator it(m_, r); it; ++it)
        if (it.col() == r) d[r] = it.value().real();
    return d;
  }

  bool is_diagonal() const {
    for (Index r = 0; r < m_.outerSize(); ++r)
      for (Matrix::InnerIterator it(m_, r); it; ++it)
        if (it.col() != r && it.value() != cplx(0.0)) return false;
    return true;
  }

  SparseOperator adjoint() const { return SparseOperator(Matrix(m_.adjoint())); }

  /// Largest |entry|; the max-entry norm used for commutator checks.
  double max_abs() const {
    double best = 0.0;
    for (Index k = 0; k < m_.nonZeros(); ++k)
      best = std::max(best, std::abs(m_.valuePtr()[k]));
    return best;
  }

  double hermiticity_defect() const {
    return (*this - adjoint()).max_abs();
  }

  bool is_hermitian(double tol) const { return hermiticity_defect() <= tol; }

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const { return m_ * v; }

  Eigen::MatrixXcd to_dense() const { return Eigen::MatrixXcd(m_); }

  /// Rows/columns `keep` of this operator as a dense matrix.
  Eigen::MatrixXcd restrict_dense(std::span<const Index> keep) const {
    std::vector<Index> pos(dim(), -1);
    for (std::size_t k = 0; k < keep.size(); ++k) pos[keep[k]] = static_cast<Index>(k);
    const auto n = static_cast<Index>(keep.size());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t k = 0; k < keep.size(); ++k)
      for (Matrix::InnerIterator it(m_, keep[k]); it; ++it)
        if (pos[it.col()] >= 0) out(static_cast<Index>(k), pos[it.col()]) += it.value();
    return out;
  }

  SparseOperator& operator+=(const SparseOperator& o) {
    check_same(o);
    m_ = m_ + o.m_;
    return *this;
  }
  SparseOperator& operator-=(const SparseOperator& o) {
    check_same(o);
    m_ = m_ - o.m_;
    return *this;
  }
  SparseOperator& operator*=(cplx s) {
    m_ *= s;
    return *this;
  }

  friend SparseOperator operator+(SparseOperator a, const SparseOperator& b) { return a += b; }
  friend SparseOperator operator-(SparseOperator a, const SparseOperator& b) { return a -= b; }
  friend SparseOperator operator-(SparseOperator a) { return a *= -1.0; }
  friend SparseOperator operator*(cplx s, SparseOperator a) { return a *= s; }
  friend SparseOperator operator*(SparseOperator a, cplx s) { return a *= s; }
  friend SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
    a.check_same(b);
    Matrix prod = (a.m_ * b.m_).pruned(0.0);
    return SparseOperator(std::move(prod));
  }

  /// Drops stored entries with |value| <= tol.
  SparseOperator pruned(double tol = 0.0) const {
    Matrix m = m_;
    m.prune([tol](const Index&, const Index&, const cplx& v) { return std::abs(v) > tol; });
    return SparseOperator(std::move(m));
  }

 private:
  void check_same(const SparseOperator& o) const {
    if (o.dim() != dim())
      throw Error(ErrorKind::out_of_range, "operator dimensions differ");
  }

  Matrix m_;
};

inline SparseOperator commutator(const SparseOperator& a, const SparseOperator& b) {
  return a * b - b * a;
}

inline SparseOperator anticommutator(const SparseOperator& a, const SparseOperator& b) {
  return a * b + b * a;
}

/// Kronecker product; `a` is the slow (leftmost) factor.
inline SparseOperator kron(const SparseOperator& a, const SparseOperator& b) {
  const Index db = b.dim();
  const auto ea = a.entries();
  const auto eb = b.entries();
  std::vector<SparseOperator::Entry> out;
  out.reserve(ea.size() * eb.size());
  for (const auto& x : ea)
    for (const auto& y : eb)
      out.push_back({x.row * db + y.row, x.col * db + y.col, x.value * y.value});
  return SparseOperator::from_entries(a.dim() * db, out);
}

/// Ordered tensor product of factor spaces; factor 0 is the slowest index.
class TensorSpace {
 public:
  TensorSpace() = default;
  explicit TensorSpace(std::vector<Index> dims) : dims_(std::move(dims)) {
    total_ = 1;
    for (Index d : dims_) total_ *= d;
    strides_.assign(dims_.size(), 1);
    for (std::size_t k = dims_.size(); k-- > 1;)
      strides_[k - 1] = strides_[k] * dims_[k];
  }

  Index dim() const { return total_; }
  std::size_t factors() const { return dims_.size(); }
  Index factor_dim(std::size_t k) const { return dims_[k]; }

  std::vector<Index> decode(Index i) const {
    std::vector<Index> idx(dims_.size());
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      idx[k] = i / strides_[k];
      i %= strides_[k];
    }
    return idx;
  }

  Index encode(std::span<const Index> idx) const {
    Index i = 0;
    for (std::size_t k = 0; k < dims_.size(); ++k) i += idx[k] * strides_[k];
    return i;
  }

  /// Product of local operators; factors not named act as identity.
  SparseOperator embed(
      std::initializer_list<std::pair<std::size_t, const SparseOperator*>> parts) const {
    std::vector<const SparseOperator*> local(dims_.size(), nullptr);
    for (const auto& [k, op] : parts) {
      if (k >= dims_.size() || op->dim() != dims_[k])
        throw Error(ErrorKind::out_of_range, "local operator does not match factor");
      local[k] = op;
    }
    // identity stretches collapse into a single factor each
    SparseOperator acc = SparseOperator::identity(1);
    Index pending_identity = 1;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      if (local[k] == nullptr) {
        pending_identity *= dims_[k];
        continue;
      }
      if (pending_identity > 1) {
        acc = kron(acc, SparseOperator::identity(pending_identity));
        pending_identity = 1;
      }
      acc = kron(acc, *local[k]);
    }
    if (pending_identity > 1) acc = kron(acc, SparseOperator::identity(pending_identity));
    return acc;
  }

 private:
  std::vector<Index> dims_;
  std::vector<Index> strides_;
  Index total_ = 1;
};

}  // namespace gauge_ladder
