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
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "gauge_ladder/error.hpp"
#include "gauge_ladder/sparse_operator.hpp"

namespace gauge_ladder {

struct EigenSystem {
  Eigen::VectorXd values;    // ascending
  Eigen::MatrixXcd vectors;  // columns, largest component real and positive
};

inline double hermiticity_defect(const Eigen::MatrixXcd& h) {
  if (h.size() == 0) return 0.0;
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

/// Makes the entry of largest modulus real and positive (first such entry on ties).
inline void fix_phase(Eigen::Ref<Eigen::VectorXcd> v) {
  Index best = 0;
  double mag = -1.0;
  for (Index i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) > mag * (1.0 + 1e-12) + 1e-15) {
      mag = std::abs(v[i]);
      best = i;
    }
  if (mag > 0.0) v *= std::conj(v[best]) / std::abs(v[best]);
}

/// Dense Hermitian eigensolver with ascending eigenvalues; degenerate levels
/// are ordered by the basis index of their dominant component.
inline EigenSystem eigh(const Eigen::MatrixXcd& h, bool want_vectors = true) {
  if (h.rows() != h.cols()) throw Error(ErrorKind::numerical, "matrix is not square");
  EigenSystem out;
  if (h.rows() == 0) return out;
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (hermiticity_defect(h) > 1e-10 * scale)
    throw Error(ErrorKind::not_hermitian, "matrix is not Hermitian");
  const Eigen::MatrixXcd sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      sym, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::numerical, "eigensolver failed");
  out.values = es.eigenvalues();
  if (!want_vectors) return out;

  const Index n = h.rows();
  Eigen::MatrixXcd vecs = es.eigenvectors();
  std::vector<Index> dominant(n);
  for (Index k = 0; k < n; ++k) {
    fix_phase(vecs.col(k));
    vecs.col(k).cwiseAbs().maxCoeff(&dominant[k]);
  }
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  const double tie = 1e-10 * scale;
  Index start = 0;
  while (start < n) {
    Index stop = start + 1;
    while (stop < n && out.values[stop] - out.values[stop - 1] <= tie) ++stop;
    std::stable_sort(order.begin() + start, order.begin() + stop,
                     [&](Index a, Index b) { return dominant[a] < dominant[b]; });
    start = stop;
  }
  out.vectors.resize(n, n);
  Eigen::VectorXd vals(n);
  for (Index k = 0; k < n; ++k) {
    out.vectors.col(k) = vecs.col(order[k]);
    vals[k] = out.values[order[k]];
  }
  out.values = vals;
  return out;
}

inline std::vector<double> sorted_values(const Eigen::VectorXd& v) {
  std::vector<double> out(v.data(), v.data() + v.size());
  std::sort(out.begin(), out.end());
  return out;
}

/// Largest pairwise deviation of two sorted multisets; infinity on size mismatch.
inline double multiset_distance(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace gauge_ladder
