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

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "gauge_ladder/error.hpp"
#include "gauge_ladder/half_int.hpp"
#include "gauge_ladder/sparse_operator.hpp"
#include "gauge_ladder/su2.hpp"

namespace gauge_ladder {

/// Truncated U(1) link: electric eigenvalues e_min..e_max, ascending.
struct U1LinkSpace {
  int e_min = 0;
  int e_max = 1;

  Index dim() const { return e_max - e_min + 1; }
  bool contains(int e) const { return e >= e_min && e <= e_max; }
  Index index_of(int e) const { return e - e_min; }
  int value_at(Index i) const { return e_min + static_cast<int>(i); }

  friend bool operator==(const U1LinkSpace&, const U1LinkSpace&) = default;
};

struct U1LinkOperators {
  SparseOperator electric;  // E
  SparseOperator raise;     // U
};

/// E is diagonal; U|e> = |e+1> with the amplitude leaving e_max dropped.
inline U1LinkOperators u1_link_operators(const U1LinkSpace& space) {
  if (space.e_max <= space.e_min)
    throw Error(ErrorKind::empty_window,
                "electric window [" + std::to_string(space.e_min) + ", " +
                    std::to_string(space.e_max) + "] is empty");
  const Index d = space.dim();
  std::vector<double> e(d);
  std::vector<SparseOperator::Entry> shift;
  for (Index i = 0; i < d; ++i) {
    e[i] = space.value_at(i);
    if (i + 1 < d) shift.push_back({i + 1, i, 1.0});
  }
  return {SparseOperator::diagonal(e), SparseOperator::from_entries(d, shift)};
}

/// Photon creation b^dag on a U(1) window with e_min = 0: the shift
/// operator dressed by sqrt(n+1).
inline SparseOperator photon_creation(const U1LinkSpace& space) {
  if (space.e_min != 0)
    throw Error(ErrorKind::invalid_model, "photon window must start at n = 0");
  const auto ops = u1_link_operators(space);
  std::vector<double> amp(space.dim());
  for (Index i = 0; i < space.dim(); ++i) amp[i] = std::sqrt(space.value_at(i) + 1.0);
  return ops.raise * SparseOperator::diagonal(amp);
}

struct RotorState {
  HalfInt j, m, n;
  friend bool operator==(const RotorState&, const RotorState&) = default;

  std::string to_string() const {
    return "|" + j.to_string() + "," + m.to_string() + "," + n.to_string() + ">";
  }
};

/// SU(2) rigid-rotor link truncated at j <= j_max.
/// Basis order: j ascending, then m descending, then n descending.
class RotorLinkSpace {
 public:
  explicit RotorLinkSpace(HalfInt j_max) : j_max_(j_max) {
    if (j_max.twice() < 0)
      throw Error(ErrorKind::invalid_representation, "negative j_max");
    for (int jt = 0; jt <= j_max.twice(); ++jt) {
      const HalfInt j = half(jt);
      offsets_.push_back(static_cast<Index>(states_.size()));
      for (int a = 0; a < gauge_ladder::dim(j); ++a)
        for (int b = 0; b < gauge_ladder::dim(j); ++b) states_.push_back({j, m_at(j, a), m_at(j, b)});
    }
  }

  HalfInt j_max() const { return j_max_; }
  Index dim() const { return static_cast<Index>(states_.size()); }
  const RotorState& state(Index i) const { return states_[i]; }

  bool contains(const RotorState& s) const {
    return s.j.twice() >= 0 && s.j <= j_max_ && detail::valid_projection(s.j, s.m) &&
           detail::valid_projection(s.j, s.n);
  }

  Index index_of(const RotorState& s) const {
    if (!contains(s))
      throw Error(ErrorKind::invalid_state, "rotor state " + s.to_string() + " not in space");
    const int d = gauge_ladder::dim(s.j);
    return offsets_[s.j.twice()] + m_index(s.j, s.m) * d + m_index(s.j, s.n);
  }

  friend bool operator==(const RotorLinkSpace& a, const RotorLinkSpace& b) {
    return a.j_max_ == b.j_max_;
  }

 private:
  HalfInt j_max_;
  std::vector<RotorState> states_;
  std::vector<Index> offsets_;
};

struct RotorOperators {
  SparseOperator casimir;          // J^2 = L^2 = R^2
  std::array<SparseOperator, 3> left;   // L_a, body frame
  std::array<SparseOperator, 3> right;  // R_a, space frame
};

/// L_a acts on m through the transpose of T^j_a, which gives the body-frame
/// algebra [L_a, L_b] = -i eps_abc L_c; R_a acts on n through T^j_a.
inline RotorOperators rotor_operators(const RotorLinkSpace& space) {
  const Index d = space.dim();
  std::vector<double> c2(d);
  std::array<std::vector<SparseOperator::Entry>, 3> le, re;
  for (Index col = 0; col < d; ++col) {
    const auto& s = space.state(col);
    c2[col] = casimir(s.j);
    const auto t = spin_matrices(s.j);
    const int dj = dim(s.j);
    const int mi = m_index(s.j, s.m);
    const int ni = m_index(s.j, s.n);
    for (Axis a : kAxes) {
      const auto& ta = t[a];
      const auto ai = static_cast<int>(a);
      for (int k = 0; k < dj; ++k) {
        // <j k n| L_a |j m n> = (T_a)_{m k}
        if (ta(mi, k) != cplx(0.0))
          le[ai].push_back({space.index_of({s.j, m_at(s.j, k), s.n}), col, ta(mi, k)});
        // <j m k| R_a |j m n> = (T_a)_{k n}
        if (ta(k, ni) != cplx(0.0))
          re[ai].push_back({space.index_of({s.j, s.m, m_at(s.j, k)}), col, ta(k, ni)});
      }
    }
  }
  RotorOperators ops;
  ops.casimir = SparseOperator::diagonal(c2);
  for (int a = 0; a < 3; ++a) {
    ops.left[a] = SparseOperator::from_entries(d, le[a]);
    ops.right[a] = SparseOperator::from_entries(d, re[a]);
  }
  return ops;
}

/// Group element operator U^j_{m m'} on the truncated rotor space,
///
///   U^j_{mm'} = sum sqrt(dim J / dim K) <J M; j m | K N> <K N' | J M'; j m'> |K N N'><J M M'|,
///
/// with matrix elements that would leave j <= j_max dropped.
inline SparseOperator group_element_operator(const RotorLinkSpace& space, HalfInt j_op,
                                             HalfInt m, HalfInt mp) {
  if (j_op.twice() < 0)
    throw Error(ErrorKind::invalid_representation, "negative group element label");
  if (!detail::valid_projection(j_op, m) || !detail::valid_projection(j_op, mp))
    throw Error(ErrorKind::invalid_state, "group element index out of range");
  std::vector<SparseOperator::Entry> e;
  for (Index col = 0; col < space.dim(); ++col) {
    const auto& s = space.state(col);
    const HalfInt big_n = s.m + m;
    const HalfInt big_np = s.n + mp;
    const int kmin = std::abs(s.j.twice() - j_op.twice());
    const int kmax = std::min(s.j.twice() + j_op.twice(), space.j_max().twice());
    for (int kt = kmin; kt <= kmax; kt += 2) {
      const HalfInt k = half(kt);
      if (std::abs(big_n.twice()) > kt || std::abs(big_np.twice()) > kt) continue;
      const double amp = std::sqrt(double(dim(s.j)) / double(dim(k))) *
                         clebsch_gordan(s.j, s.m, j_op, m, k, big_n) *
                         clebsch_gordan(s.j, s.n, j_op, mp, k, big_np);
      if (amp != 0.0) e.push_back({space.index_of({k, big_n, big_np}), col, amp});
    }
  }
  return SparseOperator::from_entries(space.dim(), e);
}

/// The fundamental connection U_{mn} = U^{1/2}_{mn}, indexed by colors (0 -> m=+1/2).
inline std::array<std::array<SparseOperator, 2>, 2> fundamental_connection(
    const RotorLinkSpace& space) {
  std::array<std::array<SparseOperator, 2>, 2> u;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      u[a][b] = group_element_operator(space, half(1), m_at(half(1), a), m_at(half(1), b));
  return u;
}

}  // namespace gauge_ladder
