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

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "gauge_ladder/error.hpp"
#include "gauge_ladder/sparse_operator.hpp"
#include "gauge_ladder/su2.hpp"

namespace gauge_ladder {

/// Fermionic modes of a staggered chain, ordered site-major then color.
/// This order is the Jordan-Wigner order for every operator.
class FermionModeLayout {
 public:
  FermionModeLayout(int n_sites, int colors_per_site)
      : n_sites_(n_sites), colors_(colors_per_site) {
    if (n_sites <= 0 || colors_per_site <= 0 || n_sites * colors_per_site > 30)
      throw Error(ErrorKind::invalid_layout, "unsupported fermion layout");
  }

  int n_sites() const { return n_sites_; }
  int colors_per_site() const { return colors_; }
  int modes() const { return n_sites_ * colors_; }
  Index fock_dim() const { return Index{1} << modes(); }

  int mode_index(int site, int color) const {
    if (site < 0 || site >= n_sites_ || color < 0 || color >= colors_)
      throw Error(ErrorKind::out_of_range,
                  "fermion mode (site " + std::to_string(site) + ", color " +
                      std::to_string(color) + ") out of range");
    return site * colors_ + color;
  }

  /// Number of fermions at half filling: one per site for two colors,
  /// one per pair of sites for one color.
  int half_filling() const { return colors_ == 1 ? n_sites_ / 2 : n_sites_; }

  friend bool operator==(const FermionModeLayout&, const FermionModeLayout&) = default;

 private:
  int n_sites_;
  int colors_;
};

/// Occupation bitstring; bit k is mode k.
struct FermionBasisState {
  std::uint32_t bits = 0;

  bool occupied(int mode) const { return (bits >> mode) & 1u; }
  int count() const { return std::popcount(bits); }

  int site_count(const FermionModeLayout& layout, int site) const {
    int n = 0;
    for (int c = 0; c < layout.colors_per_site(); ++c)
      n += occupied(layout.mode_index(site, c));
    return n;
  }

  /// Mode 0 first, e.g. "01" for a particle in mode 1 of two.
  std::string to_string(const FermionModeLayout& layout) const {
    std::string s;
    for (int k = 0; k < layout.modes(); ++k) s += occupied(k) ? '1' : '0';
    return s;
  }
};

enum class LadderKind { creation, annihilation };

namespace detail {

inline double jordan_wigner_sign(std::uint32_t bits, int mode) {
  const std::uint32_t below = bits & ((std::uint32_t{1} << mode) - 1u);
  return (std::popcount(below) % 2) ? -1.0 : 1.0;
}

}  // namespace detail

inline SparseOperator fermion_operator(const FermionModeLayout& layout, LadderKind kind,
                                       int site, int color) {
  const int mode = layout.mode_index(site, color);
  const std::uint32_t bit = std::uint32_t{1} << mode;
  std::vector<SparseOperator::Entry> e;
  e.reserve(layout.fock_dim() / 2);
  for (std::uint32_t b = 0; b < layout.fock_dim(); ++b) {
    const bool occ = b & bit;
    if (kind == LadderKind::creation && !occ)
      e.push_back({Index(b | bit), Index(b), detail::jordan_wigner_sign(b, mode)});
    if (kind == LadderKind::annihilation && occ)
      e.push_back({Index(b & ~bit), Index(b), detail::jordan_wigner_sign(b, mode)});
  }
  return SparseOperator::from_entries(layout.fock_dim(), e);
}

inline SparseOperator creation(const FermionModeLayout& l, int site, int color = 0) {
  return fermion_operator(l, LadderKind::creation, site, color);
}

inline SparseOperator annihilation(const FermionModeLayout& l, int site, int color = 0) {
  return fermion_operator(l, LadderKind::annihilation, site, color);
}

/// Occupation of the listed site summed over colors.
inline SparseOperator site_number(const FermionModeLayout& layout, int site) {
  std::vector<double> d(layout.fock_dim());
  for (std::uint32_t b = 0; b < d.size(); ++b)
    d[b] = FermionBasisState{b}.site_count(layout, site);
  return SparseOperator::diagonal(d);
}

inline SparseOperator fermion_number(const FermionModeLayout& layout) {
  std::vector<double> d(layout.fock_dim());
  for (std::uint32_t b = 0; b < d.size(); ++b) d[b] = std::popcount(b);
  return SparseOperator::diagonal(d);
}

/// Staggered U(1) charge psi^dag psi - t(x), with t = 0 on even and 1 on odd sites.
inline SparseOperator charge_u1(const FermionModeLayout& layout, int site) {
  if (layout.colors_per_site() != 1)
    throw Error(ErrorKind::invalid_layout, "U(1) charge needs one color per site");
  if (site < 0 || site >= layout.n_sites())
    throw Error(ErrorKind::out_of_range, "site out of range");
  std::vector<double> d(layout.fock_dim());
  const double offset = site % 2 == 0 ? 0.0 : 1.0;
  for (std::uint32_t b = 0; b < d.size(); ++b)
    d[b] = FermionBasisState{b}.site_count(layout, site) - offset;
  return SparseOperator::diagonal(d);
}

/// Fundamental-representation SU(2) charge psi^dag_m (sigma_a/2)_mn psi_n.
/// Color 0 carries m = +1/2, color 1 carries m = -1/2.
inline SparseOperator charge_su2(const FermionModeLayout& layout, int site, Axis a) {
  if (layout.colors_per_site() != 2)
    throw Error(ErrorKind::invalid_layout, "SU(2) charge needs two colors per site");
  const auto t = spin_matrices(half(1))[a];
  SparseOperator q(layout.fock_dim());
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 2; ++n)
      if (t(m, n) != cplx(0.0))
        q += t(m, n) * (creation(layout, site, m) * annihilation(layout, site, n));
  return q;
}

/// Fock states with the given particle number, ascending by bitstring.
inline std::vector<std::uint32_t> fock_states_with_count(const FermionModeLayout& layout,
                                                         int count) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t b = 0; b < layout.fock_dim(); ++b)
    if (std::popcount(b) == count) out.push_back(b);
  return out;
}

}  // namespace gauge_ladder
