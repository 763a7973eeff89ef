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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gauge_ladder/error.hpp"
#include "gauge_ladder/fermions.hpp"
#include "gauge_ladder/half_int.hpp"
#include "gauge_ladder/links.hpp"
#include "gauge_ladder/sparse_operator.hpp"
#include "gauge_ladder/su2.hpp"

namespace gauge_ladder {

enum class ModelFamily { jcm, u1_link, u1_chain, su2_link, su2_chain };

inline const char* to_string(ModelFamily f) {
  switch (f) {
    case ModelFamily::jcm: return "jcm";
    case ModelFamily::u1_link: return "u1-link";
    case ModelFamily::u1_chain: return "u1-chain";
    case ModelFamily::su2_link: return "su2-link";
    case ModelFamily::su2_chain: return "su2-chain";
  }
  return "?";
}

inline ModelFamily parse_model_family(std::string_view s) {
  for (auto f : {ModelFamily::jcm, ModelFamily::u1_link, ModelFamily::u1_chain,
                 ModelFamily::su2_link, ModelFamily::su2_chain})
    if (s == to_string(f)) return f;
  throw Error(ErrorKind::invalid_model, "unknown model '" + std::string(s) + "'");
}

inline bool is_su2(ModelFamily f) {
  return f == ModelFamily::su2_link || f == ModelFamily::su2_chain;
}
inline bool is_u1(ModelFamily f) {
  return f == ModelFamily::u1_link || f == ModelFamily::u1_chain;
}

struct JcmParams {
  double omega_c = 1.0;
  double omega_a = 1.0;
  double rabi = 0.0;  // Omega_0
};

struct GaugeParams {
  double g = 1.0;
  double mass = 0.0;
  double eps = 0.0;
};

struct ModelSpec {
  ModelFamily family = ModelFamily::jcm;
  int n_sites = 2;
  JcmParams jcm;
  GaugeParams gauge;
  int photon_max = 8;
  /// U(1) static charges per site; empty means all zero. Used for default windows.
  std::vector<int> static_charges;
  /// Explicit U(1) windows per link; empty means the recursion default.
  std::vector<U1LinkSpace> u1_windows;
  /// Explicit SU(2) cutoffs per link; empty means J_max(n).
  std::vector<HalfInt> su2_jmax;
};

struct ModelOperators {
  ModelFamily family = ModelFamily::jcm;
  FermionModeLayout layout{2, 1};
  TensorSpace space;
  std::vector<U1LinkSpace> u1_links;
  std::vector<RotorLinkSpace> rotor_links;

  SparseOperator hamiltonian;
  /// gauss[site][component]; one component for U(1) and the JCM, three (x, y, z) for SU(2).
  std::vector<std::vector<SparseOperator>> gauss;
  SparseOperator fermion_number;
  std::optional<SparseOperator> excitation_number;

  Index dim() const { return space.dim(); }
  int n_links() const { return static_cast<int>(space.factors()) - 1; }

  std::uint32_t fermion_bits(Index i) const {
    return static_cast<std::uint32_t>(space.decode(i)[0]);
  }

  /// Fermion bitstring then link labels, e.g. "0110;0,1" or "11;(1/2,1/2,-1/2)".
  std::string basis_label(Index i) const {
    const auto idx = space.decode(i);
    std::string s = FermionBasisState{static_cast<std::uint32_t>(idx[0])}.to_string(layout);
    s += ';';
    for (std::size_t k = 1; k < idx.size(); ++k) {
      if (k > 1) s += ',';
      if (!rotor_links.empty()) {
        const auto& r = rotor_links[k - 1].state(idx[k]);
        s += "(" + r.j.to_string() + "," + r.m.to_string() + "," + r.n.to_string() + ")";
      } else {
        s += std::to_string(u1_links[k - 1].value_at(idx[k]));
      }
    }
    return s;
  }
};

namespace detail {

inline void check_sites(const ModelSpec& spec) {
  if (spec.n_sites < 2 || spec.n_sites % 2 != 0)
    throw Error(ErrorKind::invalid_model,
                "n_sites must be even and at least 2, got " + std::to_string(spec.n_sites));
  const bool link = spec.family == ModelFamily::jcm || spec.family == ModelFamily::u1_link ||
                    spec.family == ModelFamily::su2_link;
  if (link && spec.n_sites != 2)
    throw Error(ErrorKind::invalid_model, std::string(to_string(spec.family)) +
                                              " has exactly two sites");
}

inline std::vector<Index> factor_dims(Index fock, const std::vector<Index>& links) {
  std::vector<Index> d{fock};
  d.insert(d.end(), links.begin(), links.end());
  return d;
}

}  // namespace detail

/// Electric windows implied by Gauss's law for the given static charges at
/// any filling: the forward recursion from the left boundary intersected
/// with the backward recursion from the right boundary.
inline std::vector<U1LinkSpace> u1_recursion_windows(int n_sites, std::span<const int> charges) {
  if (n_sites < 2) throw Error(ErrorKind::invalid_model, "need at least two sites");
  std::vector<int> q(n_sites, 0);
  if (!charges.empty()) {
    if (static_cast<int>(charges.size()) != n_sites)
      throw Error(ErrorKind::invalid_sector, "one static charge per site is required");
    std::copy(charges.begin(), charges.end(), q.begin());
  }
  auto qmin = [](int x) { return x % 2 == 0 ? 0 : -1; };
  auto qmax = [](int x) { return x % 2 == 0 ? 1 : 0; };
  const int links = n_sites - 1;
  std::vector<int> lo(links), hi(links);
  int a = 0, b = 0;
  for (int x = 0; x < links; ++x) {
    a += q[x] + qmin(x);
    b += q[x] + qmax(x);
    lo[x] = a;
    hi[x] = b;
  }
  // E(N-2) = -q(N-1) - Q(N-1), then E(x-1) = E(x) - q(x) - Q(x)
  const int last = n_sites - 1;
  a = -q[last] - qmax(last);
  b = -q[last] - qmin(last);
  for (int x = links - 1; x >= 0; --x) {
    lo[x] = std::max(lo[x], a);
    hi[x] = std::min(hi[x], b);
    if (x > 0) {
      a -= q[x] + qmax(x);
      b -= q[x] + qmin(x);
    }
  }
  std::vector<U1LinkSpace> out;
  for (int x = 0; x < links; ++x) {
    if (hi[x] < lo[x])
      throw Error(ErrorKind::invalid_sector, "static charges admit no electric field on link " +
                                                 std::to_string(x));
    out.push_back({lo[x], std::max(hi[x], lo[x] + 1)});
  }
  return out;
}

/// Zero-charge cutoff J_max(n) = (n'+1)/2 with n' = min(n, 2M - n), N = 2M + 2.
inline HalfInt su2_default_jmax(int link, int n_sites) {
  const int big_m = (n_sites - 2) / 2;
  if (link < 0 || link > 2 * big_m)
    throw Error(ErrorKind::out_of_range, "link index out of range");
  return half(std::min(link, 2 * big_m - link) + 1);
}

inline ModelOperators build_jcm(const ModelSpec& spec) {
  if (spec.family != ModelFamily::jcm) throw Error(ErrorKind::invalid_model, "not a JCM spec");
  detail::check_sites(spec);
  if (spec.photon_max < 1)
    throw Error(ErrorKind::invalid_model, "photon cutoff must be at least 1");
  ModelOperators m;
  m.family = spec.family;
  m.layout = FermionModeLayout(2, 1);
  m.u1_links = {U1LinkSpace{0, spec.photon_max}};
  m.space = TensorSpace(detail::factor_dims(m.layout.fock_dim(), {m.u1_links[0].dim()}));

  const auto bdag_local = photon_creation(m.u1_links[0]);
  const auto nph_local = u1_link_operators(m.u1_links[0]).electric;
  const auto n0_f = site_number(m.layout, 0);
  const auto n1_f = site_number(m.layout, 1);
  const auto hop_f = creation(m.layout, 1) * annihilation(m.layout, 0);
  const auto q0_f = charge_u1(m.layout, 0);
  const auto q1_f = charge_u1(m.layout, 1);

  const auto nph = m.space.embed({{1, &nph_local}});
  const auto n0 = m.space.embed({{0, &n0_f}});
  const auto n1 = m.space.embed({{0, &n1_f}});
  const auto hop = m.space.embed({{0, &hop_f}, {1, &bdag_local}});
  const auto& p = spec.jcm;

  m.hamiltonian = p.omega_c * nph + (0.5 * p.omega_a) * (n0 - n1) +
                  (0.5 * p.rabi) * (hop + hop.adjoint());
  m.gauss = {{-nph - m.space.embed({{0, &q0_f}})}, {nph - m.space.embed({{0, &q1_f}})}};
  m.fermion_number = n0 + n1;
  m.excitation_number = nph + n0;
  return m;
}

inline ModelOperators build_u1(const ModelSpec& spec) {
  if (!is_u1(spec.family)) throw Error(ErrorKind::invalid_model, "not a U(1) spec");
  detail::check_sites(spec);
  const int n = spec.n_sites;
  const auto needed = u1_recursion_windows(n, spec.static_charges);
  ModelOperators m;
  m.family = spec.family;
  m.layout = FermionModeLayout(n, 1);
  if (spec.u1_windows.empty()) {
    m.u1_links = needed;
  } else {
    if (static_cast<int>(spec.u1_windows.size()) != n - 1)
      throw Error(ErrorKind::invalid_model, "one electric window per link is required");
    m.u1_links = spec.u1_windows;
    for (int x = 0; x < n - 1; ++x) {
      const auto& w = m.u1_links[x];
      if (w.e_max <= w.e_min)
        throw Error(ErrorKind::empty_window, "electric window on link " + std::to_string(x) +
                                                 " is empty");
      if (w.e_min > needed[x].e_min || w.e_max < needed[x].e_max)
        throw Error(ErrorKind::window_too_small,
                    "link " + std::to_string(x) + " window [" + std::to_string(w.e_min) + ", " +
                        std::to_string(w.e_max) + "] does not contain [" +
                        std::to_string(needed[x].e_min) + ", " +
                        std::to_string(needed[x].e_max) + "]");
    }
  }
  std::vector<Index> link_dims;
  for (const auto& w : m.u1_links) link_dims.push_back(w.dim());
  m.space = TensorSpace(detail::factor_dims(m.layout.fock_dim(), link_dims));

  std::vector<SparseOperator> e_full, u_local, e_sq;
  for (int x = 0; x < n - 1; ++x) {
    const auto ops = u1_link_operators(m.u1_links[x]);
    const auto e2 = ops.electric * ops.electric;
    e_full.push_back(m.space.embed({{std::size_t(x + 1), &ops.electric}}));
    e_sq.push_back(m.space.embed({{std::size_t(x + 1), &e2}}));
    u_local.push_back(ops.raise);
  }
  const auto& p = spec.gauge;
  SparseOperator h(m.space.dim());
  for (const auto& e2 : e_sq) h += (0.5 * p.g * p.g) * e2;
  for (int x = 0; x < n; ++x) {
    const auto nx = site_number(m.layout, x);
    h += (x % 2 == 0 ? p.mass : -p.mass) * m.space.embed({{0, &nx}});
  }
  for (int x = 0; x < n - 1; ++x) {
    const auto f = creation(m.layout, x) * annihilation(m.layout, x + 1);
    const auto hop = m.space.embed({{0, &f}, {std::size_t(x + 1), &u_local[x]}});
    h += p.eps * (hop + hop.adjoint());
  }
  m.hamiltonian = std::move(h);

  for (int x = 0; x < n; ++x) {
    const auto qx = charge_u1(m.layout, x);
    SparseOperator g = -m.space.embed({{0, &qx}});
    if (x < n - 1) g += e_full[x];
    if (x > 0) g -= e_full[x - 1];
    m.gauss.push_back({std::move(g)});
  }
  const auto nf = fermion_number(m.layout);
  m.fermion_number = m.space.embed({{0, &nf}});
  return m;
}

inline ModelOperators build_su2(const ModelSpec& spec) {
  if (!is_su2(spec.family)) throw Error(ErrorKind::invalid_model, "not an SU(2) spec");
  detail::check_sites(spec);
  const int n = spec.n_sites;
  ModelOperators m;
  m.family = spec.family;
  m.layout = FermionModeLayout(n, 2);
  if (!spec.su2_jmax.empty() && static_cast<int>(spec.su2_jmax.size()) != n - 1)
    throw Error(ErrorKind::invalid_model, "one j_max per link is required");
  std::vector<Index> link_dims;
  for (int x = 0; x < n - 1; ++x) {
    const HalfInt jm = spec.su2_jmax.empty() ? su2_default_jmax(x, n) : spec.su2_jmax[x];
    if (jm.twice() < 1)
      throw Error(ErrorKind::window_too_small, "link j_max must be at least 1/2");
    m.rotor_links.emplace_back(jm);
    link_dims.push_back(m.rotor_links.back().dim());
  }
  m.space = TensorSpace(detail::factor_dims(m.layout.fock_dim(), link_dims));

  const auto& p = spec.gauge;
  SparseOperator h(m.space.dim());
  std::vector<RotorOperators> rot;
  for (int x = 0; x < n - 1; ++x) {
    const auto k = std::size_t(x + 1);
    rot.push_back(rotor_operators(m.rotor_links[x]));
    h += (0.5 * p.g * p.g) * m.space.embed({{k, &rot.back().casimir}});
    const auto u = fundamental_connection(m.rotor_links[x]);
    SparseOperator hop(m.space.dim());
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const auto f = creation(m.layout, x, a) * annihilation(m.layout, x + 1, b);
        hop += m.space.embed({{0, &f}, {k, &u[a][b]}});
      }
    h += p.eps * (hop + hop.adjoint());
  }
  for (int x = 0; x < n; ++x) {
    const auto nx = site_number(m.layout, x);
    h += (x % 2 == 0 ? p.mass : -p.mass) * m.space.embed({{0, &nx}});
  }
  m.hamiltonian = std::move(h);

  for (int x = 0; x < n; ++x) {
    std::vector<SparseOperator> comps;
    for (Axis a : kAxes) {
      const auto ai = static_cast<int>(a);
      const auto qa = charge_su2(m.layout, x, a);
      SparseOperator g = -m.space.embed({{0, &qa}});
      if (x < n - 1) g += m.space.embed({{std::size_t(x + 1), &rot[x].left[ai]}});
      if (x > 0) g -= m.space.embed({{std::size_t(x), &rot[x - 1].right[ai]}});
      comps.push_back(std::move(g));
    }
    m.gauss.push_back(std::move(comps));
  }
  const auto nf = fermion_number(m.layout);
  m.fermion_number = m.space.embed({{0, &nf}});
  return m;
}

inline ModelOperators build_model(const ModelSpec& spec) {
  if (spec.family == ModelFamily::jcm) return build_jcm(spec);
  if (is_u1(spec.family)) return build_u1(spec);
  return build_su2(spec);
}

}  // namespace gauge_ladder
