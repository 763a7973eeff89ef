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
#include "gauge_ladder/half_int.hpp"
#include "gauge_ladder/su2.hpp"
#include "oracles.hpp"

using namespace gauge_ladder;

TEST(HalfInt, ParseAndPrint) {
  EXPECT_EQ(HalfInt::parse("3/2"), half(3));
  EXPECT_EQ(HalfInt::parse("-1/2"), half(-1));
  EXPECT_EQ(HalfInt::parse("2"), HalfInt(2));
  EXPECT_EQ(half(3).to_string(), "3/2");
  EXPECT_EQ(half(-1).to_string(), "-1/2");
  EXPECT_EQ(HalfInt(0).to_string(), "0");
  EXPECT_THROW(HalfInt::parse("1/3"), Error);
  EXPECT_THROW(HalfInt::parse("x"), Error);
  EXPECT_THROW(HalfInt::parse(""), Error);
}

TEST(HalfInt, Arithmetic) {
  EXPECT_EQ(half(1) + half(1), HalfInt(1));
  EXPECT_EQ(HalfInt(1) - half(1), half(1));
  EXPECT_LT(half(1), HalfInt(1));
  EXPECT_EQ(dim(half(3)), 4);
  EXPECT_DOUBLE_EQ(casimir(half(1)), 0.75);
  EXPECT_THROW(dim(half(-1)), Error);
}

TEST(SpinMatrices, MatchLadderConstruction) {
  for (int t = 0; t <= 8; ++t) {
    const auto s = spin_matrices(half(t));
    const auto o = oracle::spin(t);
    EXPECT_LT((s.x - o.x).cwiseAbs().maxCoeff(), 1e-14) << t;
    EXPECT_LT((s.y - o.y).cwiseAbs().maxCoeff(), 1e-14) << t;
    EXPECT_LT((s.z - o.z).cwiseAbs().maxCoeff(), 1e-14) << t;
  }
}

TEST(SpinMatrices, AlgebraCheck) {
  EXPECT_EQ(checks::spin_algebra().status, checks::Status::passed);
}

TEST(SpinMatrices, DescendingOrder) {
  EXPECT_EQ(m_index(half(3), half(3)), 0);
  EXPECT_EQ(m_index(half(3), half(-3)), 3);
  EXPECT_EQ(m_at(HalfInt(1), 2), HalfInt(-1));
  EXPECT_THROW(spin_matrices(half(-2)), Error);
}

TEST(ClebschGordan, MatchesRacahFormula) {
  double worst = 0.0;
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b)
      for (int jt = std::abs(a - b); jt <= a + b; jt += 2)
        for (int m1 = -a; m1 <= a; m1 += 2)
          for (int m2 = -b; m2 <= b; m2 += 2) {
            const int mt = m1 + m2;
            if (std::abs(mt) > jt) continue;
            const double got = clebsch_gordan(half(a), half(m1), half(b), half(m2), half(jt),
                                              half(mt));
            worst = std::max(worst, std::abs(got - oracle::racah_cg(a, m1, b, m2, jt, mt)));
          }
  EXPECT_LT(worst, 1e-12);
}

TEST(ClebschGordan, KnownValues) {
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(clebsch_gordan(half(1), half(1), half(1), half(-1), HalfInt(0), HalfInt(0)), r,
              1e-15);
  EXPECT_NEAR(clebsch_gordan(half(1), half(-1), half(1), half(1), HalfInt(0), HalfInt(0)), -r,
              1e-15);
  EXPECT_NEAR(clebsch_gordan(HalfInt(1), HalfInt(1), half(1), half(-1), half(3), half(1)),
              std::sqrt(1.0 / 3.0), 1e-15);
  EXPECT_EQ(clebsch_gordan(half(1), half(1), half(1), half(1), HalfInt(0), HalfInt(0)), 0.0);
}

TEST(ClebschGordan, EigenvectorsOfTotalSpin) {
  // coupled vectors diagonalize (J1 + J2)^2 and J_z in the product basis
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b) {
      const auto s1 = oracle::spin(a), s2 = oracle::spin(b);
      const int d1 = a + 1, d2 = b + 1;
      auto kron = [](const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
        Eigen::MatrixXcd r(x.rows() * y.rows(), x.cols() * y.cols());
        for (int i = 0; i < x.rows(); ++i)
          for (int j = 0; j < x.cols(); ++j) r.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
        return r;
      };
      const auto i1 = Eigen::MatrixXcd::Identity(d1, d1), i2 = Eigen::MatrixXcd::Identity(d2, d2);
      const Eigen::MatrixXcd jx = kron(s1.x, i2) + kron(i1, s2.x);
      const Eigen::MatrixXcd jy = kron(s1.y, i2) + kron(i1, s2.y);
      const Eigen::MatrixXcd jz = kron(s1.z, i2) + kron(i1, s2.z);
      const Eigen::MatrixXcd j2 = jx * jx + jy * jy + jz * jz;
      for (int jt = std::abs(a - b); jt <= a + b; jt += 2)
        for (int k = 0; k <= jt; ++k) {
          const HalfInt big_j = half(jt), big_m = m_at(big_j, k);
          Eigen::VectorXcd v(d1 * d2);
          for (int p = 0; p < d1; ++p)
            for (int q = 0; q < d2; ++q)
              v[p * d2 + q] = clebsch_gordan(half(a), m_at(half(a), p), half(b), m_at(half(b), q),
                                             big_j, big_m);
          EXPECT_NEAR(v.norm(), 1.0, 1e-12);
          EXPECT_LT((j2 * v - casimir(big_j) * v).cwiseAbs().maxCoeff(), 1e-12);
          EXPECT_LT((jz * v - big_m.value() * v).cwiseAbs().maxCoeff(), 1e-12);
        }
    }
}

TEST(ClebschGordan, Orthogonality) {
  const auto r = checks::cg_orthogonality();
  EXPECT_EQ(r.status, checks::Status::passed) << r.value;
}

TEST(ClebschGordan, RejectsMalformedLabels) {
  EXPECT_THROW(clebsch_gordan(half(1), HalfInt(1), half(1), half(1), HalfInt(1), HalfInt(1)), Error);
  EXPECT_THROW(clebsch_gordan(half(1), half(1), half(1), HalfInt(0), HalfInt(1), HalfInt(1)), Error);
  EXPECT_THROW(clebsch_gordan(half(1), half(1), half(1), half(1), half(-2), HalfInt(1)), Error);
}
