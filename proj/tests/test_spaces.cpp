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

#include <gtest/gtest.h>

#include "gauge_ladder/checks.hpp"
#include "gauge_ladder/fermions.hpp"
#include "gauge_ladder/links.hpp"
#include "gauge_ladder/sparse_operator.hpp"
#include "oracles.hpp"

using namespace gauge_ladder;

namespace {

Eigen::MatrixXcd dense_kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

/// Jordan-Wigner annihilator from Pauli strings; mode k is bit k of the index.
Eigen::MatrixXcd pauli_string_annihilator(int modes, int k) {
  Eigen::MatrixXcd lower(2, 2), z(2, 2), id = Eigen::MatrixXcd::Identity(2, 2);
  lower << 0, 1, 0, 0;
  z << 1, 0, 0, -1;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int mode = modes - 1; mode >= 0; --mode)
    out = dense_kron(out, mode > k ? id : (mode == k ? lower : z));
  return out;
}

Eigen::MatrixXcd random_matrix(int n, unsigned seed) {
  std::srand(seed);
  return Eigen::MatrixXcd::Random(n, n);
}

SparseOperator sparse_of(const Eigen::MatrixXcd& d) {
  std::vector<SparseOperator::Entry> e;
  for (Index r = 0; r < d.rows(); ++r)
    for (Index c = 0; c < d.cols(); ++c)
      if (d(r, c) != cplx(0.0)) e.push_back({r, c, d(r, c)});
  return SparseOperator::from_entries(d.rows(), e);
}

}  // namespace

TEST(SparseOperator, ArithmeticMatchesDense) {
  const auto a = random_matrix(5, 1), b = random_matrix(5, 2);
  const auto sa = sparse_of(a), sb = sparse_of(b);
  EXPECT_LT(max_abs((sa * sb).to_dense() - a * b), 1e-14);
  EXPECT_LT(max_abs((sa + sb).to_dense() - (a + b)), 1e-15);
  EXPECT_LT(max_abs(commutator(sa, sb).to_dense() - (a * b - b * a)), 1e-14);
  EXPECT_LT(max_abs(sa.adjoint().to_dense() - a.adjoint()), 1e-15);
  EXPECT_NEAR(sa.hermiticity_defect(), max_abs(a - a.adjoint()), 1e-15);
}

TEST(SparseOperator, KronAndEmbed) {
  const auto a = random_matrix(2, 3), b = random_matrix(3, 4), c = random_matrix(2, 5);
  const auto k = kron(sparse_of(a), sparse_of(b));
  EXPECT_LT(max_abs(k.to_dense() - dense_kron(a, b)), 1e-15);
  const TensorSpace space({2, 3, 2});
  const auto sa = sparse_of(a), sc = sparse_of(c);
  const auto e = space.embed({{0, &sa}, {2, &sc}});
  const Eigen::MatrixXcd want =
      dense_kron(dense_kron(a, Eigen::MatrixXcd::Identity(3, 3)), c);
  EXPECT_LT(max_abs(e.to_dense() - want), 1e-15);
}

TEST(SparseOperator, EntriesAreOrderedAndDuplicatesSum) {
  const SparseOperator::Entry in[] = {{1, 0, 2.0}, {0, 1, 1.0}, {1, 0, 0.5}};
  const auto op = SparseOperator::from_entries(2, in);
  const auto e = op.entries();
  ASSERT_EQ(e.size(), 2u);
  EXPECT_EQ(e[0].row, 0);
  EXPECT_EQ(e[1].row, 1);
  EXPECT_EQ(e[1].value, cplx(2.5));
  const SparseOperator::Entry bad[] = {{2, 0, 1.0}};
  EXPECT_THROW(SparseOperator::from_entries(2, bad), Error);
}

TEST(TensorSpace, EncodeDecodeRoundTrip) {
  const TensorSpace space({4, 3, 5});
  EXPECT_EQ(space.dim(), 60);
  for (Index i = 0; i < space.dim(); ++i) EXPECT_EQ(space.encode(space.decode(i)), i);
  const Index idx[] = {1, 2, 3};
  EXPECT_EQ(space.encode(idx), 1 * 15 + 2 * 5 + 3);
}

TEST(Fermions, MatchPauliStrings) {
  for (int colors : {1, 2}) {
    const FermionModeLayout l(3, colors);
    for (int x = 0; x < 3; ++x)
      for (int k = 0; k < colors; ++k) {
        const auto want = pauli_string_annihilator(l.modes(), l.mode_index(x, k));
        EXPECT_EQ(max_abs(annihilation(l, x, k).to_dense() - want), 0.0);
        EXPECT_EQ(max_abs(creation(l, x, k).to_dense() - want.adjoint()), 0.0);
      }
  }
}

TEST(Fermions, CanonicalAnticommutators) {
  EXPECT_EQ(checks::fermion_anticommutators().status, checks::Status::passed);
}

TEST(Fermions, OrderingSign) {
  const FermionModeLayout l(2, 1);
  const auto ab = creation(l, 1) * creation(l, 0);
  const auto ba = creation(l, 0) * creation(l, 1);
  EXPECT_EQ(ab.coeff(3, 0), -ba.coeff(3, 0));
  EXPECT_EQ(ba.coeff(3, 0), cplx(1.0));
}

TEST(Fermions, FockStatesAndLabels) {
  const FermionModeLayout l(4, 1);
  const auto s = fock_states_with_count(l, 2);
  EXPECT_EQ(s.size(), 6u);
  EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
  EXPECT_EQ(FermionBasisState{0b0010}.to_string(l), "0100");
  EXPECT_EQ(l.half_filling(), 2);
  EXPECT_EQ(FermionModeLayout(4, 2).half_filling(), 4);
  EXPECT_THROW(FermionModeLayout(16, 2), Error);
  EXPECT_THROW(l.mode_index(4, 0), Error);
}

TEST(Fermions, StaggeredCharges) {
  const FermionModeLayout l(2, 1);
  const auto q0 = charge_u1(l, 0).diagonal_real(), q1 = charge_u1(l, 1).diagonal_real();
  // bits: 00, 10 (mode 0), 01 (mode 1), 11
  EXPECT_EQ(q0, (std::vector<double>{0, 1, 0, 1}));
  EXPECT_EQ(q1, (std::vector<double>{-1, -1, 0, 0}));
  EXPECT_THROW(charge_u1(FermionModeLayout(2, 2), 0), Error);
}

TEST(Fermions, Su2ChargeIsFundamental) {
  const FermionModeLayout l(1, 2);
  const auto qz = charge_su2(l, 0, Axis::z).diagonal_real();
  EXPECT_EQ(qz, (std::vector<double>{0, 0.5, -0.5, 0}));
  // singly occupied site carries spin 1/2, empty and doubly occupied carry 0
  SparseOperator c2(l.fock_dim());
  for (Axis a : kAxes) c2 += charge_su2(l, 0, a) * charge_su2(l, 0, a);
  const auto d = c2.to_dense();
  EXPECT_NEAR(d(0, 0).real(), 0.0, 1e-15);
  EXPECT_NEAR(d(1, 1).real(), 0.75, 1e-15);
  EXPECT_NEAR(d(2, 2).real(), 0.75, 1e-15);
  EXPECT_NEAR(d(3, 3).real(), 0.0, 1e-15);
}

TEST(U1Link, Operators) {
  const U1LinkSpace w{-1, 2};
  const auto ops = u1_link_operators(w);
  EXPECT_EQ(ops.electric.diagonal_real(), (std::vector<double>{-1, 0, 1, 2}));
  EXPECT_EQ(ops.raise.coeff(w.index_of(1), w.index_of(0)), cplx(1.0));
  EXPECT_EQ(ops.raise.nonzeros(), 3);
  EXPECT_THROW(u1_link_operators({1, 1}), Error);
  EXPECT_THROW(u1_link_operators({2, 1}), Error);
}

TEST(U1Link, PhotonCreation) {
  const U1LinkSpace w{0, 4};
  const auto b = photon_creation(w);
  for (int n = 0; n < 4; ++n) EXPECT_NEAR(b.coeff(n + 1, n).real(), std::sqrt(n + 1.0), 1e-15);
  const auto num = (b * b.adjoint()).diagonal_real();
  for (int n = 0; n <= 4; ++n) EXPECT_NEAR(num[n], n, 1e-14);
  EXPECT_THROW(photon_creation({-1, 3}), Error);
}

TEST(RotorLink, DimensionsAndIndexing) {
  for (int t = 0; t <= 6; ++t) {
    const RotorLinkSpace s(half(t));
    EXPECT_EQ(static_cast<std::size_t>(s.dim()), oracle::rotor_dim(t));
    for (Index i = 0; i < s.dim(); ++i) EXPECT_EQ(s.index_of(s.state(i)), i);
  }
  const RotorLinkSpace s(half(1));
  EXPECT_EQ(s.state(0).to_string(), "|0,0,0>");
  EXPECT_FALSE(s.contains({HalfInt(1), HalfInt(0), HalfInt(0)}));
  EXPECT_THROW(s.index_of({HalfInt(1), HalfInt(0), HalfInt(0)}), Error);
}

TEST(RotorLink, CommutatorSuite) {
  const auto r = checks::rotor_commutators();
  EXPECT_EQ(r.status, checks::Status::passed) << r.value;
}

TEST(RotorLink, GroupElementOnSinglet) {
  const auto r = checks::group_element_singlet();
  EXPECT_EQ(r.status, checks::Status::passed) << r.value;
}

TEST(RotorLink, ConnectionEntriesCommuteAndHaveUnitDeterminant) {
  // multiplication operators: entries commute and det U = 1 away from the cutoff
  const RotorLinkSpace s(HalfInt(2));
  const auto u = fundamental_connection(s);
  std::vector<Index> deep;
  for (Index i = 0; i < s.dim(); ++i)
    if (s.state(i).j.twice() + 2 <= s.j_max().twice()) deep.push_back(i);
  auto deep_max = [&](const SparseOperator& op) {
    const auto d = op.to_dense();
    double w = 0.0;
    for (Index c : deep) w = std::max(w, d.col(c).cwiseAbs().maxCoeff());
    return w;
  };
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      EXPECT_LT(deep_max(commutator(u[a / 2][a % 2], u[b / 2][b % 2])), 1e-14);
  const auto det = u[0][0] * u[1][1] - u[0][1] * u[1][0] - SparseOperator::identity(s.dim());
  EXPECT_LT(deep_max(det), 1e-14);
}

TEST(RotorLink, GroupElementMatchesRacahCoupling) {
  const RotorLinkSpace s(half(3));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const auto op = group_element_operator(s, half(1), m_at(half(1), a), m_at(half(1), b));
      const auto d = op.to_dense();
      for (Index col = 0; col < s.dim(); ++col)
        for (Index row = 0; row < s.dim(); ++row) {
          const auto& in = s.state(col);
          const auto& out = s.state(row);
          const int ma = 1 - 2 * a, mb = 1 - 2 * b;
          const double want =
              std::sqrt((in.j.twice() + 1.0) / (out.j.twice() + 1.0)) *
              oracle::racah_cg(in.j.twice(), in.m.twice(), 1, ma, out.j.twice(), out.m.twice()) *
              oracle::racah_cg(in.j.twice(), in.n.twice(), 1, mb, out.j.twice(), out.n.twice());
          EXPECT_NEAR(d(row, col).real(), want, 1e-13);
          EXPECT_EQ(d(row, col).imag(), 0.0);
        }
    }
}

TEST(RotorLink, RejectsBadLabels) {
  const RotorLinkSpace s(HalfInt(1));
  EXPECT_THROW(group_element_operator(s, half(-1), HalfInt(0), HalfInt(0)), Error);
  EXPECT_THROW(group_element_operator(s, half(1), HalfInt(1), half(1)), Error);
  EXPECT_THROW(RotorLinkSpace(half(-1)), Error);
}
