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
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "gauge_ladder/error.hpp"
#include "gauge_ladder/fermions.hpp"
#include "gauge_ladder/linalg.hpp"
#include "gauge_ladder/links.hpp"
#include "gauge_ladder/models.hpp"
#include "gauge_ladder/sectors.hpp"

namespace gauge_ladder {

using SparseColumns = Eigen::SparseMatrix<cplx, Eigen::ColMajor, std::int64_t>;

namespace detail {

inline SparseColumns unit_columns(Index dim, const std::vector<Index>& rows) {
  std::vector<Eigen::Triplet<cplx, std::int64_t>> t;
  for (std::size_t k = 0; k < rows.size(); ++k) t.emplace_back(rows[k], Index(k), 1.0);
  SparseColumns s(dim, static_cast<Index>(rows.size()));
  s.setFromTriplets(t.begin(), t.end());
  return s;
}

inline int find_root(std::vector<int>& parent, int i) {
  while (parent[i] != i) i = parent[i] = parent[parent[i]];
  return i;
}

/// Per-site occupation counts and link representations, e.g. "occ=11;j=1/2".
inline std::string su2_configuration_label(const ModelOperators& m, Index i) {
  const auto idx = m.space.decode(i);
  const FermionBasisState f{static_cast<std::uint32_t>(idx[0])};
  std::string s = "occ=";
  for (int x = 0; x < m.layout.n_sites(); ++x) s += std::to_string(f.site_count(m.layout, x));
  s += ";j=";
  for (std::size_t k = 1; k < idx.size(); ++k) {
    if (k > 1) s += ',';
    s += m.rotor_links[k - 1].state(idx[k]).j.to_string();
  }
  return s;
}

inline void check_key_shape(const ModelOperators& m, const SectorKey& key) {
  key.validate();
  const auto n = static_cast<std::size_t>(m.layout.n_sites());
  if (is_su2(m.family)) {
    if (!key.is_su2() || key.su2.size() != n)
      throw Error(ErrorKind::invalid_sector, "SU(2) model needs one (j_q, m_q) per site");
  } else if (key.is_su2() || key.charges.size() != n) {
    throw Error(ErrorKind::invalid_sector, "U(1) model needs one static charge per site");
  }
}

/// Max-entry norm of (G - q) V over every generator.
inline double gauss_residual(const ModelOperators& m, const SectorKey& key,
                             const SparseColumns& v) {
  double worst = 0.0;
  for (std::size_t x = 0; x < m.gauss.size(); ++x)
    for (const auto& g : m.gauss[x]) {
      SparseColumns gv = g.matrix() * v;
      if (!key.is_su2()) gv -= double(key.charges[x]) * v;
      for (Index k = 0; k < gv.outerSize(); ++k)
        for (SparseColumns::InnerIterator it(gv, k); it; ++it)
          worst = std::max(worst, std::abs(it.value()));
    }
  return worst;
}

}  // namespace detail

/// Restricts a model to one static-charge sector at half filling and
/// compresses the Hamiltonian onto an orthonormal basis of that sector.
/// An empty sector yields a block of dimension zero.
inline SectorBlock project_physical(const ModelOperators& m, const SectorKey& key) {
  detail::check_key_shape(m, key);
  const int filling = m.layout.half_filling();
  SectorBlock block;
  block.key = key;
  block.provenance = Provenance::projected;

  if (!is_su2(m.family)) {
    std::vector<std::vector<double>> diag;
    for (const auto& site : m.gauss) {
      if (!site[0].is_diagonal())
        throw Error(ErrorKind::numerical, "U(1) Gauss generator is not diagonal");
      diag.push_back(site[0].diagonal_real());
    }
    std::vector<Index> keep;
    for (Index i = 0; i < m.dim(); ++i) {
      if (std::popcount(m.fermion_bits(i)) != filling) continue;
      bool ok = true;
      for (std::size_t x = 0; x < diag.size() && ok; ++x)
        ok = std::abs(diag[x][i] - key.charges[x]) < 1e-9;
      if (ok) keep.push_back(i);
    }
    for (Index i : keep) block.basis_labels.push_back(m.basis_label(i));
    block.matrix = m.hamiltonian.restrict_dense(keep);
    block.embedding = detail::unit_columns(m.dim(), keep);
    if (detail::gauss_residual(m, key, block.embedding) > 1e-9)
      throw Error(ErrorKind::numerical, "projected basis violates Gauss's law");
    return block;
  }

  if (!key.is_zero_su2())
    throw Error(ErrorKind::invalid_sector,
                "SU(2) projection covers the zero-charge sector; use the analytic charged blocks");

  // Candidates: half filling with every G_z eigenvalue zero.
  std::vector<std::vector<double>> gz;
  for (const auto& site : m.gauss) gz.push_back(site[2].diagonal_real());
  std::vector<Index> cand;
  for (Index i = 0; i < m.dim(); ++i) {
    if (std::popcount(m.fermion_bits(i)) != filling) continue;
    bool ok = true;
    for (std::size_t x = 0; x < gz.size() && ok; ++x) ok = std::abs(gz[x][i]) < 1e-9;
    if (ok) cand.push_back(i);
  }
  const auto nc = static_cast<Index>(cand.size());
  if (nc == 0) return block;

  // K = sum_a,x G_a^dag G_a restricted to the candidate columns.
  const SparseColumns sel = detail::unit_columns(m.dim(), cand);
  SparseColumns k(nc, nc);
  for (const auto& site : m.gauss)
    for (const auto& g : site) {
      const SparseColumns b = g.matrix() * sel;
      k += SparseColumns(b.adjoint() * b);
    }
  k.prune(1e-14, 1.0);

  std::vector<int> parent(nc);
  std::iota(parent.begin(), parent.end(), 0);
  for (Index c = 0; c < k.outerSize(); ++c)
    for (SparseColumns::InnerIterator it(k, c); it; ++it) {
      const int a = detail::find_root(parent, static_cast<int>(it.row()));
      const int b = detail::find_root(parent, static_cast<int>(c));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::map<int, std::vector<Index>> comps;  // root -> local candidate positions, ascending
  for (int i = 0; i < nc; ++i) comps[detail::find_root(parent, i)].push_back(i);

  std::vector<EigenSystem> solved;
  double lambda_max = 0.0;
  for (const auto& [root, members] : comps) {
    Eigen::MatrixXcd dense(members.size(), members.size());
    for (std::size_t r = 0; r < members.size(); ++r)
      for (std::size_t c = 0; c < members.size(); ++c)
        dense(r, c) = k.coeff(members[r], members[c]);
    solved.push_back(eigh(dense));
    if (solved.back().values.size() > 0)
      lambda_max = std::max(lambda_max, solved.back().values.maxCoeff());
  }
  const double threshold = std::max(1e-9 * lambda_max, 1e-12);

  std::vector<Eigen::Triplet<cplx, std::int64_t>> trips;
  std::map<std::string, int> seen;
  Index col = 0;
  std::size_t ci = 0;
  for (const auto& [root, members] : comps) {
    const auto& es = solved[ci++];
    const std::string base = detail::su2_configuration_label(m, cand[members.front()]);
    for (Index e = 0; e < es.values.size(); ++e) {
      if (es.values[e] > threshold) continue;
      for (std::size_t r = 0; r < members.size(); ++r)
        if (std::abs(es.vectors(r, e)) > 1e-14)
          trips.emplace_back(cand[members[r]], col, es.vectors(r, e));
      block.basis_labels.push_back(base + "#" + std::to_string(seen[base]++));
      ++col;
    }
  }
  block.embedding.resize(m.dim(), col);
  block.embedding.setFromTriplets(trips.begin(), trips.end());
  if (col == 0) return block;
  const SparseColumns hv = m.hamiltonian.matrix() * block.embedding;
  block.matrix = Eigen::MatrixXcd(SparseColumns(block.embedding.adjoint() * hv));
  if (detail::gauss_residual(m, key, block.embedding) > 1e-9)
    throw Error(ErrorKind::numerical, "projected basis violates Gauss's law");
  return block;
}

// ---------------------------------------------------------------------------

struct U1PhysicalState {
  FermionBasisState fermions;
  std::vector<int> fields;  // E(x) per link
};

/// Half-filling configurations with link fields fixed by Gauss's law,
/// sweeping from the left boundary. Configurations failing the right
/// boundary law are dropped.
inline std::vector<U1PhysicalState> u1_enumerate_physical(int n_sites,
                                                          const std::vector<int>& charges) {
  if (n_sites < 2 || n_sites % 2 != 0)
    throw Error(ErrorKind::invalid_model, "n_sites must be even and at least 2");
  if (static_cast<int>(charges.size()) != n_sites)
    throw Error(ErrorKind::invalid_sector, "one static charge per site is required");
  if (std::accumulate(charges.begin(), charges.end(), 0) != 0)
    throw Error(ErrorKind::invalid_sector, "static charges must sum to zero");
  const FermionModeLayout layout(n_sites, 1);
  std::vector<U1PhysicalState> out;
  for (auto bits : fock_states_with_count(layout, layout.half_filling())) {
    const FermionBasisState f{bits};
    auto charge = [&](int x) { return f.site_count(layout, x) - (x % 2); };
    U1PhysicalState s{f, {}};
    int e = 0;
    for (int x = 0; x < n_sites - 1; ++x) {
      e += charges[x] + charge(x);
      s.fields.push_back(e);
    }
    if (-e - charge(n_sites - 1) == charges[n_sites - 1]) out.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------

enum class Su2NamedState { D, ppbar, Dbar, D_charged, ppbar_plus, ppbar_minus, Dbar_charged };

namespace detail {

inline void require_su2_link(const ModelOperators& m) {
  if (!is_su2(m.family) || m.layout.n_sites() != 2)
    throw Error(ErrorKind::invalid_model, "named states live on the two-site SU(2) model");
}

inline Eigen::VectorXcd product_state(const ModelOperators& m, const Eigen::VectorXcd& f,
                                      Index link) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(m.dim());
  for (Index b = 0; b < f.size(); ++b)
    if (f[b] != cplx(0.0)) {
      const Index idx[2] = {b, link};
      v[m.space.encode(idx)] = f[b];
    }
  return v;
}

/// psi^dag_+(x) psi^dag_-(x) |vac>, i.e. (1/2) eps_mn psi^dag_m psi^dag_n |vac>.
inline Eigen::VectorXcd doubly_occupied(const FermionModeLayout& l, int site) {
  Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(l.fock_dim());
  vac[0] = 1.0;
  return creation(l, site, 0).apply(creation(l, site, 1).apply(vac));
}

/// Antisymmetric symbol over colors, color 0 first.
inline double levi_civita(int n, int k) { return n == k ? 0.0 : (n == 0 ? 1.0 : -1.0); }

}  // namespace detail

/// Meson hopping sum_mn psi^dag_m(0) U_mn psi_n(1) on the two-site SU(2) model.
inline SparseOperator su2_meson_operator(const ModelOperators& m) {
  detail::require_su2_link(m);
  const auto u = fundamental_connection(m.rotor_links[0]);
  SparseOperator hop(m.dim());
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const auto f = creation(m.layout, 0, a) * annihilation(m.layout, 1, b);
      hop += m.space.embed({{0, &f}, {1, &u[a][b]}});
    }
  return hop;
}

/// Normalized named state of the two-site SU(2) model. Charged states
/// carry the link state |j_q, m_q, -n_q> and need j_max >= j_q + 1/2.
inline Eigen::VectorXcd su2_build_named_state(const ModelOperators& m, Su2NamedState which,
                                              HalfInt jq = HalfInt(0), HalfInt mq = HalfInt(0),
                                              HalfInt nq = HalfInt(0)) {
  detail::require_su2_link(m);
  const auto& link = m.rotor_links[0];
  const HalfInt zero(0);
  const HalfInt h = half(1);
  switch (which) {
    case Su2NamedState::D:
      return detail::product_state(m, detail::doubly_occupied(m.layout, 1),
                                   link.index_of({zero, zero, zero}));
    case Su2NamedState::Dbar:
      return detail::product_state(m, detail::doubly_occupied(m.layout, 0),
                                   link.index_of({zero, zero, zero}));
    case Su2NamedState::ppbar: {
      if (link.j_max() < h)
        throw Error(ErrorKind::window_too_small, "meson state needs j_max >= 1/2");
      Eigen::VectorXcd v =
          su2_meson_operator(m).apply(su2_build_named_state(m, Su2NamedState::D)) /
          std::sqrt(2.0);
      return v / v.norm();
    }
    default: break;
  }

  if (jq.twice() < 0 || !detail::valid_projection(jq, mq) || !detail::valid_projection(jq, nq))
    throw Error(ErrorKind::invalid_state, "bad static charge labels");
  if (link.j_max() < jq + h)
    throw Error(ErrorKind::window_too_small,
                "charged states need j_max >= " + (jq + h).to_string());
  if (which == Su2NamedState::D_charged || which == Su2NamedState::Dbar_charged) {
    const int site = which == Su2NamedState::D_charged ? 1 : 0;
    return detail::product_state(m, detail::doubly_occupied(m.layout, site),
                                 link.index_of({jq, mq, -nq}));
  }

  const bool plus = which == Su2NamedState::ppbar_plus;
  if (!plus && jq.twice() == 0)
    throw Error(ErrorKind::invalid_state, "ppbar- needs j_q > 0");
  const HalfInt big_k = plus ? jq + h : jq - h;
  const double norm = std::sqrt(double(dim(jq)) / double(dim(big_k)));
  Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(m.layout.fock_dim());
  vac[0] = 1.0;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(m.dim());
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const HalfInt ma = m_at(h, a), nb = m_at(h, b);
      const HalfInt left = mq + ma, right = -nq + nb;
      if (!detail::valid_projection(big_k, left) || !detail::valid_projection(big_k, right))
        continue;
      const double c = norm * clebsch_gordan(jq, mq, h, ma, big_k, left) *
                       clebsch_gordan(jq, -nq, h, nb, big_k, right);
      if (c == 0.0) continue;
      for (int k = 0; k < 2; ++k) {
        const double eps = detail::levi_civita(b, k);
        if (eps == 0.0) continue;
        const Eigen::VectorXcd f =
            creation(m.layout, 0, a).apply(creation(m.layout, 1, k).apply(vac));
        v += (c * eps) * detail::product_state(m, f, link.index_of({big_k, left, right}));
      }
    }
  const double n = v.norm();
  if (n < 1e-12) throw Error(ErrorKind::numerical, "named state vanishes");
  return v / n;
}

}  // namespace gauge_ladder
