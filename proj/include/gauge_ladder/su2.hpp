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

#include <cmath>
#include <complex>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gauge_ladder/error.hpp"
#include "gauge_ladder/half_int.hpp"

namespace gauge_ladder {

enum class Axis { x = 0, y = 1, z = 2 };

inline constexpr Axis kAxes[] = {Axis::x, Axis::y, Axis::z};

inline char axis_name(Axis a) { return "xyz"[static_cast<int>(a)]; }

/// Generators T^j_a of one irreducible representation.
///
/// Rows and columns run over m = j, j-1, ..., -j (descending). Every
/// representation in the library uses this order.
struct SpinMatrixSet {
  HalfInt j;
  Eigen::MatrixXcd x, y, z;

  const Eigen::MatrixXcd& operator[](Axis a) const {
    switch (a) {
      case Axis::x: return x;
      case Axis::y: return y;
      case Axis::z: break;
    }
    return z;
  }
};

/// Position of m inside the descending-m basis of representation j.
inline int m_index(HalfInt j, HalfInt m) { return (j.twice() - m.twice()) / 2; }

/// m value stored at position k of the descending-m basis of j.
inline HalfInt m_at(HalfInt j, int k) { return j - HalfInt(k); }

namespace detail {

// <j, m+1 | J+ | j, m>
inline double raise_amplitude(HalfInt j, HalfInt m) {
  return std::sqrt(std::max(0.0, casimir(j) - m.value() * (m.value() + 1.0)));
}

// <j, m-1 | J- | j, m>
inline double lower_amplitude(HalfInt j, HalfInt m) {
  return std::sqrt(std::max(0.0, casimir(j) - m.value() * (m.value() - 1.0)));
}

inline bool valid_projection(HalfInt j, HalfInt m) {
  return j.twice() >= 0 && std::abs(m.twice()) <= j.twice() &&
         (j.twice() - m.twice()) % 2 == 0;
}

}  // namespace detail

inline SpinMatrixSet spin_matrices(HalfInt j) {
  const int d = dim(j);
  using cd = std::complex<double>;
  Eigen::MatrixXcd plus = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXcd tz = Eigen::MatrixXcd::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    const HalfInt m = m_at(j, k);
    tz(k, k) = m.value();
    if (k > 0) plus(k - 1, k) = detail::raise_amplitude(j, m);
  }
  Eigen::MatrixXcd minus = plus.adjoint();
  SpinMatrixSet s;
  s.j = j;
  s.x = 0.5 * (plus + minus);
  s.y = (plus - minus) / cd(0.0, 2.0);
  s.z = tz;
  return s;
}

/// Clebsch-Gordan table for one pair (j1, j2), built by the ladder
/// construction: the highest-weight state of every J is fixed by
/// J+|J J> = 0 inside the M = J subspace, then J- generates the rest.
class CouplingTable {
 public:
  CouplingTable(HalfInt j1, HalfInt j2) : j1_(j1), j2_(j2) {
    const int jmin2 = std::abs(j1.twice() - j2.twice());
    const int jmax2 = j1.twice() + j2.twice();
    for (int jt = jmin2; jt <= jmax2; jt += 2) build(half(jt));
  }

  HalfInt j1() const { return j1_; }
  HalfInt j2() const { return j2_; }

  /// <j1 m1; j2 m2 | J M>; zero outside the selection rules.
  double coefficient(HalfInt m1, HalfInt m2, HalfInt big_j, HalfInt big_m) const {
    if (m1 + m2 != big_m) return 0.0;
    auto it = states_.find(big_j.twice());
    if (it == states_.end()) return 0.0;
    if (std::abs(m2.twice()) > j2_.twice()) return 0.0;
    const auto& per_m = it->second;
    return per_m[m_index(big_j, big_m)][m_index(j1_, m1)];
  }

 private:
  void build(HalfInt big_j) {
    const int d1 = dim(j1_);
    // coefficients over m1 for fixed M, indexed by m_index(j1, m1)
    std::vector<double> top(d1, 0.0);
    const HalfInt m1_lo = std::max(-j1_, big_j - j2_);
    const HalfInt m1_hi = std::min(j1_, big_j + j2_);
    top[m_index(j1_, m1_lo)] = 1.0;
    for (HalfInt m1 = m1_lo; m1 < m1_hi; m1 += HalfInt(1)) {
      const HalfInt m2_next = big_j - m1 - HalfInt(1);
      const double num = detail::raise_amplitude(j1_, m1);
      const double den = detail::raise_amplitude(j2_, m2_next);
      top[m_index(j1_, m1 + HalfInt(1))] = -top[m_index(j1_, m1)] * num / den;
    }
    double norm = 0.0;
    for (double c : top) norm += c * c;
    norm = std::sqrt(norm);
    // Condon-Shortley: <j1 j1; j2 J-j1 | J J> > 0
    const double sign = top[0] < 0.0 ? -1.0 : 1.0;
    for (double& c : top) c *= sign / norm;

    std::vector<std::vector<double>> per_m;
    per_m.reserve(dim(big_j));
    per_m.push_back(top);
    for (HalfInt big_m = big_j; big_m > -big_j; big_m -= HalfInt(1)) {
      const auto& cur = per_m.back();
      std::vector<double> next(d1, 0.0);
      for (int k = 0; k < d1; ++k) {
        if (cur[k] == 0.0) continue;
        const HalfInt m1 = m_at(j1_, k);
        const HalfInt m2 = big_m - m1;
        if (std::abs(m2.twice()) > j2_.twice()) continue;
        if (k + 1 < d1) next[k + 1] += cur[k] * detail::lower_amplitude(j1_, m1);
        if (m2 > -j2_) next[k] += cur[k] * detail::lower_amplitude(j2_, m2);
      }
      const double b = detail::lower_amplitude(big_j, big_m);
      for (double& c : next) c /= b;
      per_m.push_back(std::move(next));
    }
    states_.emplace(big_j.twice(), std::move(per_m));
  }

  HalfInt j1_, j2_;
  // twice(J) -> [index of M][index of m1]
  std::map<int, std::vector<std::vector<double>>> states_;
};

namespace detail {

class CouplingCache {
 public:
  std::shared_ptr<const CouplingTable> get(HalfInt j1, HalfInt j2) {
    const auto key = std::make_pair(j1.twice(), j2.twice());
    {
      std::shared_lock lock(mutex_);
      if (auto it = tables_.find(key); it != tables_.end()) return it->second;
    }
    auto table = std::make_shared<const CouplingTable>(j1, j2);
    std::unique_lock lock(mutex_);
    // a concurrent insert of the same key wins; both tables are identical
    auto [it, inserted] = tables_.emplace(key, std::move(table));
    return it->second;
  }

 private:
  std::shared_mutex mutex_;
  std::map<std::pair<int, int>, std::shared_ptr<const CouplingTable>> tables_;
};

inline CouplingCache& coupling_cache() {
  static CouplingCache cache;
  return cache;
}

}  // namespace detail

/// Condon-Shortley Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M>.
inline double clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2,
                             HalfInt big_j, HalfInt big_m) {
  if (!detail::valid_projection(j1, m1) || !detail::valid_projection(j2, m2) ||
      !detail::valid_projection(big_j, big_m)) {
    throw Error(ErrorKind::invalid_state,
                "malformed angular momentum labels (" + j1.to_string() + "," +
                    m1.to_string() + ";" + j2.to_string() + "," +
                    m2.to_string() + "|" + big_j.to_string() + "," +
                    big_m.to_string() + ")");
  }
  if (m1 + m2 != big_m) return 0.0;
  if (big_j.twice() < std::abs(j1.twice() - j2.twice()) ||
      big_j.twice() > j1.twice() + j2.twice() ||
      (j1.twice() + j2.twice() - big_j.twice()) % 2 != 0) {
    return 0.0;
  }
  return detail::coupling_cache().get(j1, j2)->coefficient(m1, m2, big_j, big_m);
}

}  // namespace gauge_ladder
