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

#include "gauge_ladder/error.hpp"
#include "gauge_ladder/half_int.hpp"
#include "gauge_ladder/linalg.hpp"
#include "gauge_ladder/sectors.hpp"
#include "gauge_ladder/sparse_operator.hpp"

namespace gauge_ladder {

enum class EvolveMethod { automatic, eigen, krylov };

inline const char* to_string(EvolveMethod m) {
  switch (m) {
    case EvolveMethod::automatic: return "auto";
    case EvolveMethod::eigen: return "eigen";
    case EvolveMethod::krylov: return "krylov";
  }
  return "?";
}

struct EvolveOptions {
  EvolveMethod method = EvolveMethod::automatic;
  Index dense_limit = 2048;
  int krylov_dim = 30;
  double tolerance = 1e-10;  // local error per Krylov step
};

struct EvolutionResult {
  std::vector<double> times;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> populations;  // [time][state]
  std::vector<double> energy;
  std::vector<double> norm;
  EvolveMethod method = EvolveMethod::eigen;

  double max_norm_drift() const {
    double d = 0.0;
    for (double n : norm) d = std::max(d, std::abs(n - 1.0));
    return d;
  }

  double max_energy_drift() const {
    double d = 0.0;
    for (double e : energy) d = std::max(d, std::abs(e - energy.front()));
    return d;
  }

  std::size_t column(const std::string& label) const {
    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw Error(ErrorKind::invalid_state, "no population " + label);
    return static_cast<std::size_t>(it - labels.begin());
  }

  double peak(const std::string& label) const {
    const auto c = column(label);
    double p = 0.0;
    for (const auto& row : populations) p = std::max(p, row[c]);
    return p;
  }
};

/// t_k = k t_max / n_steps for k = 0 .. n_steps; a single point when t_max = 0.
inline std::vector<double> uniform_times(double t_max, int n_steps) {
  if (t_max < 0.0 || n_steps < 1)
    throw Error(ErrorKind::out_of_range, "time grid needs t_max >= 0 and n_steps >= 1");
  if (t_max == 0.0) return {0.0};
  std::vector<double> t(n_steps + 1);
  for (int k = 0; k <= n_steps; ++k) t[k] = k * t_max / n_steps;
  return t;
}

namespace detail {

/// exp(-i H dt) v by Lanczos with full reorthogonalization.
inline Eigen::VectorXcd krylov_step(const SparseOperator& h, const Eigen::VectorXcd& v,
                                    double dt, int m_max) {
  const double beta0 = v.norm();
  if (beta0 == 0.0) return v;
  const Index n = v.size();
  const int m = static_cast<int>(std::min<Index>(m_max, n));
  Eigen::MatrixXcd q(n, m);
  std::vector<double> alpha, beta;
  q.col(0) = v / beta0;
  int used = 0;
  for (int k = 0; k < m; ++k) {
    used = k + 1;
    Eigen::VectorXcd w = h.apply(q.col(k));
    const double a = q.col(k).dot(w).real();
    alpha.push_back(a);
    for (int pass = 0; pass < 2; ++pass)
      w -= q.leftCols(k + 1) * (q.leftCols(k + 1).adjoint() * w);
    const double b = w.norm();
    if (k + 1 == m || b < 1e-13 * std::max(1.0, std::abs(a))) break;
    beta.push_back(b);
    q.col(k + 1) = w / b;
  }
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(used, used);
  for (int k = 0; k < used; ++k) {
    t(k, k) = alpha[k];
    if (k + 1 < used) t(k, k + 1) = t(k + 1, k) = beta[k];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  const Eigen::VectorXcd phase =
      (es.eigenvalues().cast<cplx>() * cplx(0.0, -dt)).array().exp().matrix();
  const Eigen::VectorXcd small =
      es.eigenvectors().cast<cplx>() *
      (phase.asDiagonal() * es.eigenvectors().row(0).transpose().cast<cplx>());
  return beta0 * (q.leftCols(used) * small);
}

/// Advances v by dt with step doubling: a step is accepted when one full
/// step and two half steps agree to `tol`.
inline Eigen::VectorXcd krylov_advance(const SparseOperator& h, Eigen::VectorXcd v, double dt,
                                       const EvolveOptions& opt, double& step) {
  double done = 0.0;
  int guard = 0;
  while (done < dt) {
    if (++guard > 1000000) throw Error(ErrorKind::numerical, "Krylov step control stalled");
    const double h_try = std::min(step, dt - done);
    const Eigen::VectorXcd full = krylov_step(h, v, h_try, opt.krylov_dim);
    const Eigen::VectorXcd half1 = krylov_step(h, v, 0.5 * h_try, opt.krylov_dim);
    const Eigen::VectorXcd half2 = krylov_step(h, half1, 0.5 * h_try, opt.krylov_dim);
    const double err = (full - half2).norm();
    if (err <= opt.tolerance) {
      v = half2;
      done += h_try;
      if (err < 0.1 * opt.tolerance) step = std::min(2.0 * step, std::max(dt, step));
    } else {
      step = 0.5 * h_try;
      if (step < 1e-14 * std::max(1.0, dt))
        throw Error(ErrorKind::numerical, "Krylov step size underflow");
    }
  }
  return v;
}

}  // namespace detail

/// Evolves `initial` under H and records |<s_k|psi(t)>|^2 for the columns of
/// `observed` together with the norm and <H>.
inline EvolutionResult evolve(const SparseOperator& h, const Eigen::VectorXcd& initial,
                              const std::vector<double>& times, const Eigen::MatrixXcd& observed,
                              std::vector<std::string> labels,
                              const EvolveOptions& opt = {}) {
  if (initial.size() != h.dim() || observed.rows() != h.dim())
    throw Error(ErrorKind::invalid_state, "state dimension does not match the operator");
  if (static_cast<Index>(labels.size()) != observed.cols())
    throw Error(ErrorKind::invalid_state, "one label per observed state is required");
  if (std::abs(initial.norm() - 1.0) > 1e-8)
    throw Error(ErrorKind::not_normalized, "initial state has norm " +
                                               std::to_string(initial.norm()));
  if (h.hermiticity_defect() > 1e-12 * std::max(1.0, h.max_abs()))
    throw Error(ErrorKind::not_hermitian, "evolution operator is not Hermitian");
  for (std::size_t k = 1; k < times.size(); ++k)
    if (times[k] < times[k - 1]) throw Error(ErrorKind::out_of_range, "times must ascend");

  EvolutionResult r;
  r.times = times;
  r.labels = std::move(labels);
  r.method = opt.method;
  if (r.method == EvolveMethod::automatic)
    r.method = h.dim() <= opt.dense_limit ? EvolveMethod::eigen : EvolveMethod::krylov;

  auto record = [&](const Eigen::VectorXcd& psi) {
    const Eigen::VectorXcd amp = observed.adjoint() * psi;
    std::vector<double> pop(amp.size());
    for (Index k = 0; k < amp.size(); ++k) pop[k] = std::norm(amp[k]);
    r.populations.push_back(std::move(pop));
    r.norm.push_back(psi.norm());
    r.energy.push_back(psi.dot(h.apply(psi)).real());
  };

  if (r.method == EvolveMethod::eigen) {
    const auto es = eigh(h.to_dense());
    const Eigen::VectorXcd c0 = es.vectors.adjoint() * initial;
    for (double t : times) {
      Eigen::VectorXcd ct(c0.size());
      for (Index k = 0; k < c0.size(); ++k)
        ct[k] = c0[k] * std::exp(cplx(0.0, -es.values[k] * t));
      record(es.vectors * ct);
    }
    return r;
  }

  Eigen::VectorXcd psi = initial;
  double now = 0.0;
  double step = 0.0;
  for (double t : times) {
    if (t > now) {
      if (step <= 0.0) step = t - now;
      psi = detail::krylov_advance(h, psi, t - now, opt, step);
      now = t;
    } else if (t < now) {
      throw Error(ErrorKind::out_of_range, "times must ascend");
    }
    record(psi);
  }
  return r;
}

/// Block evolution with populations over the block basis.
inline EvolutionResult evolve(const SectorBlock& block, const Eigen::VectorXcd& initial,
                              const std::vector<double>& times, const EvolveOptions& opt = {}) {
  const Index n = block.dim();
  std::vector<SparseOperator::Entry> e;
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c < n; ++c)
      if (block.matrix(r, c) != cplx(0.0)) e.push_back({r, c, block.matrix(r, c)});
  return evolve(SparseOperator::from_entries(n, e), initial, times,
                Eigen::MatrixXcd::Identity(n, n), block.basis_labels, opt);
}

inline Eigen::VectorXcd basis_state(const SectorBlock& block, const std::string& label) {
  const auto it = std::find(block.basis_labels.begin(), block.basis_labels.end(), label);
  if (it == block.basis_labels.end()) {
    std::string names;
    for (const auto& l : block.basis_labels) names += (names.empty() ? "" : ", ") + l;
    throw Error(ErrorKind::invalid_state,
                "unknown state '" + label + "'; valid names: " + names);
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(block.dim());
  v[it - block.basis_labels.begin()] = 1.0;
  return v;
}

// ---------------------------------------------------------------------------
// Rabi demos

struct RabiPreset {
  std::string name;
  GaugeParams params;
  HalfInt jq;
  std::string initial;
  std::string partner;  // resonant partner of the initial state
};

inline RabiPreset fig3b_preset() {
  const double two_pi = 2 * std::numbers::pi;
  return {"fig3b",
          {std::sqrt(two_pi) * 4, two_pi * 3, two_pi / std::sqrt(8.0)},
          HalfInt(0),
          "Dbar",
          "ppbar"};
}

inline RabiPreset fig3c_preset() {
  const double two_pi = 2 * std::numbers::pi;
  return {"fig3c",
          {std::sqrt(two_pi) * 2, two_pi * 2.25, two_pi / std::sqrt(8.0)},
          HalfInt(2),
          "D(2)",
          "ppbar-(2)"};
}

inline SectorBlock su2_link_block(const GaugeParams& p, HalfInt jq) {
  return jq.twice() == 0 ? su2_block_zero(p) : su2_block_charged(p, jq);
}

/// |<partner|H|initial>| of a block, the resonant Rabi coupling.
inline double block_coupling(const SectorBlock& b, const std::string& from,
                             const std::string& to) {
  const auto i = std::find(b.basis_labels.begin(), b.basis_labels.end(), from);
  const auto j = std::find(b.basis_labels.begin(), b.basis_labels.end(), to);
  if (i == b.basis_labels.end() || j == b.basis_labels.end())
    throw Error(ErrorKind::invalid_state, "unknown block state");
  return std::abs(b.matrix(j - b.basis_labels.begin(), i - b.basis_labels.begin()));
}

/// Two transfer periods pi / c of the resonant pair.
inline double default_t_max(const SectorBlock& b, const std::string& from,
                            const std::string& to) {
  const double c = block_coupling(b, from, to);
  if (c == 0.0) throw Error(ErrorKind::numerical, "states are not coupled");
  return 2.0 * std::numbers::pi / c;
}

inline EvolutionResult rabi_demo(const RabiPreset& preset, double t_max = -1.0,
                                 int n_steps = 399, const EvolveOptions& opt = {}) {
  const auto block = su2_link_block(preset.params, preset.jq);
  if (t_max < 0.0) t_max = default_t_max(block, preset.initial, preset.partner);
  return evolve(block, basis_state(block, preset.initial), uniform_times(t_max, n_steps), opt);
}

/// Charged-sector instability trace, starting from D(2).
inline EvolutionResult charged_rabi_demo(const GaugeParams& p = fig3c_preset().params,
                                         double t_max = -1.0, int n_steps = 399) {
  auto preset = fig3c_preset();
  preset.params = p;
  return rabi_demo(preset, t_max, n_steps);
}

}  // namespace gauge_ladder
