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
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "gauge_ladder/error.hpp"
#include "gauge_ladder/half_int.hpp"
#include "gauge_ladder/linalg.hpp"
#include "gauge_ladder/models.hpp"

namespace gauge_ladder {

struct Su2SiteCharge {
  HalfInt j;
  HalfInt m;
  friend bool operator==(const Su2SiteCharge&, const Su2SiteCharge&) = default;
};

/// Static-charge sector. U(1) and JCM sectors carry one integer per site,
/// SU(2) sectors one (j_q, m_q) pair per site.
struct SectorKey {
  std::vector<int> charges;
  std::vector<Su2SiteCharge> su2;
  std::string label;

  bool is_su2() const { return !su2.empty(); }

  bool is_zero_su2() const {
    return is_su2() && std::all_of(su2.begin(), su2.end(),
                                   [](const Su2SiteCharge& c) { return c.j.twice() == 0; });
  }

  void validate() const {
    if (is_su2()) {
      for (const auto& c : su2)
        if (c.j.twice() < 0 || !detail::valid_projection(c.j, c.m))
          throw Error(ErrorKind::invalid_sector, "bad SU(2) static charge in sector " + label);
    } else {
      int total = 0;
      for (int q : charges) total += q;
      if (total != 0)
        throw Error(ErrorKind::invalid_sector,
                    "static charges must sum to zero, got " + std::to_string(total));
    }
  }

  friend bool operator==(const SectorKey& a, const SectorKey& b) {
    return a.charges == b.charges && a.su2 == b.su2;
  }
};

inline std::string join_ints(const std::vector<int>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

/// JCM sector q = q(1); the charges are {-q, q}.
inline SectorKey jcm_sector(int q) { return {{-q, q}, {}, "q=" + std::to_string(q)}; }

/// U(1) single-link sector q = q(0); the charges are {q, -q}.
inline SectorKey u1_link_sector(int q) { return {{q, -q}, {}, "q=" + std::to_string(q)}; }

inline SectorKey u1_chain_sector(std::vector<int> q) {
  SectorKey k{std::move(q), {}, ""};
  k.label = "q=" + join_ints(k.charges, ';');
  return k;
}

/// SU(2) single-link subsector (j_q, m_q, n_q).
inline SectorKey su2_link_sector(HalfInt jq, HalfInt mq = HalfInt(0), HalfInt nq = HalfInt(0)) {
  SectorKey k{{}, {{jq, mq}, {jq, nq}}, "jq=" + jq.to_string()};
  if (mq.twice() != 0 || nq.twice() != 0)
    k.label += ";mq=" + mq.to_string() + ";nq=" + nq.to_string();
  return k;
}

inline SectorKey su2_zero_sector(int n_sites) {
  SectorKey k{{}, std::vector<Su2SiteCharge>(n_sites, {HalfInt(0), HalfInt(0)}), "jq=0"};
  return k;
}

enum class Provenance { analytic, projected };

inline const char* to_string(Provenance p) {
  return p == Provenance::analytic ? "analytic" : "projected";
}

struct SectorBlock {
  SectorKey key;
  std::vector<std::string> basis_labels;
  Eigen::MatrixXcd matrix;
  Provenance provenance = Provenance::analytic;
  /// Projected blocks: orthonormal basis columns in the full model space.
  Eigen::SparseMatrix<cplx, Eigen::ColMajor, std::int64_t> embedding;

  Index dim() const { return matrix.rows(); }
  bool empty() const { return matrix.rows() == 0; }
};

inline EigenSystem diagonalize(const SectorBlock& b, bool want_vectors = true) {
  return eigh(b.matrix, want_vectors);
}

// ---------------------------------------------------------------------------
// Jaynes-Cummings ladder

inline SectorBlock jc_block(const JcmParams& p, int q) {
  if (q < 0) throw Error(ErrorKind::invalid_sector, "JCM sector needs q >= 0");
  SectorBlock b;
  b.key = jcm_sector(q);
  const std::string tag = "(" + std::to_string(q) + ")";
  if (q == 0) {
    b.basis_labels = {"site1" + tag};
    b.matrix = Eigen::MatrixXcd::Constant(1, 1, -0.5 * p.omega_a);
    return b;
  }
  const double c = 0.5 * p.rabi * std::sqrt(double(q));
  b.basis_labels = {"site1" + tag, "site0" + tag};
  b.matrix.resize(2, 2);
  b.matrix << p.omega_c * q - 0.5 * p.omega_a, c, c, p.omega_c * (q - 1) + 0.5 * p.omega_a;
  return b;
}

struct JcLadder {
  double e_plus = 0;
  double e_minus = 0;
  double mixing_angle = 0;
  Eigen::Vector2d plus;   // over (site1(q), site0(q))
  Eigen::Vector2d minus;
};

inline JcLadder jc_ladder(const JcmParams& p, int q) {
  if (q <= 0) throw Error(ErrorKind::invalid_sector, "ladder needs q >= 1");
  const double delta = p.omega_c - p.omega_a;
  const double coupling = p.rabi * std::sqrt(double(q));
  const double r = std::sqrt(delta * delta + coupling * coupling);
  JcLadder out;
  out.e_plus = p.omega_c * (q - 0.5) + 0.5 * r;
  out.e_minus = p.omega_c * (q - 0.5) - 0.5 * r;
  out.mixing_angle = delta == 0.0 ? std::numbers::pi / 2 : std::atan2(coupling, delta);
  const double c = std::cos(0.5 * out.mixing_angle);
  const double s = std::sin(0.5 * out.mixing_angle);
  out.plus << c, s;
  out.minus << -s, c;
  return out;
}

// ---------------------------------------------------------------------------
// U(1) link

inline SectorBlock u1_link_block(const GaugeParams& p, int q) {
  SectorBlock b;
  b.key = u1_link_sector(q);
  const std::string tag = "(" + std::to_string(q) + ")";
  b.basis_labels = {"D" + tag, "ppbar" + tag};
  const double c = 0.5 * p.g * p.g;
  b.matrix.resize(2, 2);
  b.matrix << c * q * q - p.mass, p.eps, p.eps, c * (q + 1) * (q + 1) + p.mass;
  return b;
}

struct U1Crossing {
  double root = 0;        // continuous charge where the diagonals meet
  int first_inverted = 0;  // first integer charge at or beyond the root
};

inline U1Crossing u1_crossing_charge(const GaugeParams& p) {
  if (p.g == 0.0) throw Error(ErrorKind::invalid_model, "crossing needs g != 0");
  U1Crossing c;
  c.root = -(2.0 * p.mass / (p.g * p.g) + 0.5);
  c.first_inverted = static_cast<int>(std::floor(c.root + 1e-9));
  return c;
}

// ---------------------------------------------------------------------------
// SU(2) link

inline SectorBlock su2_block_zero(const GaugeParams& p) {
  SectorBlock b;
  b.key = su2_link_sector(HalfInt(0));
  b.basis_labels = {"D", "ppbar", "Dbar"};
  const double t = std::sqrt(2.0) * p.eps;
  b.matrix.resize(3, 3);
  b.matrix << -2 * p.mass, t, 0, t, 3 * p.g * p.g / 8, t, 0, t, 2 * p.mass;
  return b;
}

struct Su2Couplings {
  double plus;   // eps sqrt((2j+2)/(2j+1))
  double minus;  // eps sqrt(2j/(2j+1))
};

inline Su2Couplings su2_couplings(const GaugeParams& p, HalfInt jq) {
  const double j = jq.value();
  return {p.eps * std::sqrt((2 * j + 2) / (2 * j + 1)), p.eps * std::sqrt(2 * j / (2 * j + 1))};
}

inline SectorBlock su2_block_charged(const GaugeParams& p, HalfInt jq, HalfInt mq = HalfInt(0),
                                     HalfInt nq = HalfInt(0)) {
  if (jq.twice() <= 0)
    throw Error(ErrorKind::invalid_sector, "charged block needs j_q > 0; use the zero block");
  SectorBlock b;
  b.key = su2_link_sector(jq, mq, nq);
  const std::string tag = "(" + jq.to_string() + ")";
  b.basis_labels = {"D" + tag, "ppbar+" + tag, "ppbar-" + tag, "Dbar" + tag};
  const double j = jq.value();
  const double c = 0.5 * p.g * p.g;
  const auto [a, bm] = su2_couplings(p, jq);
  b.matrix.resize(4, 4);
  b.matrix << -2 * p.mass + c * j * (j + 1), a, bm, 0,
              a, c * (j + 0.5) * (j + 1.5), 0, a,
              bm, 0, c * (j - 0.5) * (j + 0.5), bm,
              0, a, bm, 2 * p.mass + c * j * (j + 1);
  return b;
}

/// H = offset + hz1 s_z1 + hz2 s_z2 + hx1 s_x1 + hx2 s_x2
///       + hxz s_x1 s_z2 + hzx s_z1 s_x2 + jzz s_z1 s_z2,
/// spin-1/2 operators, with D = |dn dn>, ppbar+ = |dn up>, ppbar- = |up dn>, Dbar = |up up>.
struct TwoQubitCoefficients {
  double hz1 = 0, hz2 = 0;
  double hx1 = 0, hx2 = 0;
  double hxz = 0, hzx = 0;
  double jzz = 0;
  double offset = 0;
};

/// Exact two-qubit form of the charged block (j_q > 0) or of its
/// three-state restriction at j_q = 0, where ppbar- decouples.
inline TwoQubitCoefficients su2_two_qubit_coefficients(const GaugeParams& p, HalfInt jq) {
  if (jq.twice() < 0) throw Error(ErrorKind::invalid_representation, "negative j_q");
  const double j = jq.value();
  const double g2 = p.g * p.g;
  const auto [a, b] = su2_couplings(p, jq);
  TwoQubitCoefficients t;
  t.hz1 = 2 * p.mass - 0.25 * g2 * (2 * j + 1);
  t.hz2 = 2 * p.mass + 0.25 * g2 * (2 * j + 1);
  t.hx1 = a + b;
  t.hx2 = a + b;
  t.hxz = 2 * (a - b);
  t.hzx = 2 * (b - a);
  t.jzz = -0.25 * g2;
  t.offset = 0.5 * g2 * j * (j + 1) + g2 / 16;
  return t;
}

/// Single-qubit fields and a pure zz coupling, no correlated flip terms:
/// hx1 and hx2 carry the two meson couplings and jzz = -(g^2/2 j(j+1) + g^2/4).
inline TwoQubitCoefficients su2_two_qubit_uncorrelated(const GaugeParams& p, HalfInt jq) {
  if (jq.twice() < 0) throw Error(ErrorKind::invalid_representation, "negative j_q");
  const double j = jq.value();
  const double g2 = p.g * p.g;
  const auto [a, b] = su2_couplings(p, jq);
  TwoQubitCoefficients t;
  t.hz1 = 2 * p.mass - 0.25 * g2 * (2 * j + 1);
  t.hz2 = 2 * p.mass + 0.25 * g2 * (2 * j + 1);
  t.hx1 = a;
  t.hx2 = b;
  t.jzz = -(0.5 * g2 * j * (j + 1) + 0.25 * g2);
  return t;
}

/// 4x4 matrix in the order D, ppbar+, ppbar-, Dbar.
inline Eigen::Matrix4cd two_qubit_matrix(const TwoQubitCoefficients& t) {
  Eigen::Matrix2cd sx, sz, id;
  sx << 0, 0.5, 0.5, 0;
  sz << 0.5, 0, 0, -0.5;
  id.setIdentity();
  auto k = [](const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return r;
  };
  // spin-up first in each factor; D = |dn dn> sits at index 3 in that order
  Eigen::Matrix4cd h = t.offset * Eigen::Matrix4cd::Identity() + t.hz1 * k(sz, id) +
                       t.hz2 * k(id, sz) + t.hx1 * k(sx, id) + t.hx2 * k(id, sx) +
                       t.hxz * k(sx, sz) + t.hzx * k(sz, sx) + t.jzz * k(sz, sz);
  // product order (up up, up dn, dn up, dn dn) -> (D, ppbar+, ppbar-, Dbar)
  const int perm[4] = {3, 2, 1, 0};
  Eigen::Matrix4cd out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out(r, c) = h(perm[r], perm[c]);
  return out;
}

struct Su2Crossing {
  double paper_value = 0;    // 8M/(3g^2) - 1/2
  double numeric_value = 0;  // root of the D / ppbar- diagonal gap
  HalfInt first_inverted;    // first half-integer label at or beyond the root
};

inline Su2Crossing su2_crossing_charge(const GaugeParams& p) {
  if (p.g == 0.0) throw Error(ErrorKind::invalid_model, "crossing needs g != 0");
  const double c = 0.5 * p.g * p.g;
  auto gap = [&](double j) {
    return (-2 * p.mass + c * j * (j + 1)) - c * (j - 0.5) * (j + 0.5);
  };
  double lo = 0.0, hi = 64.0;
  double flo = gap(lo), fhi = gap(hi);
  if (flo == 0.0) hi = lo;
  else if (fhi == 0.0) lo = hi;
  else if ((flo < 0) == (fhi < 0))
    throw Error(ErrorKind::no_crossing, "no D / ppbar- crossing for j in [0, 64]");
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    const double fm = gap(mid);
    if (fm == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  Su2Crossing out;
  out.numeric_value = 0.5 * (lo + hi);
  out.paper_value = 8 * p.mass / (3 * p.g * p.g) - 0.5;
  out.first_inverted = half(static_cast<int>(std::ceil(2 * out.numeric_value - 1e-9)));
  return out;
}

}  // namespace gauge_ladder
