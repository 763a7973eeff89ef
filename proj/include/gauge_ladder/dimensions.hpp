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
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gauge_ladder/error.hpp"

namespace gauge_ladder {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {

inline void check_link(int n, int big_m) {
  if (big_m < 0) throw Error(ErrorKind::out_of_range, "M must be non-negative");
  if (n < 0 || n > 2 * big_m)
    throw Error(ErrorKind::out_of_range, "link index " + std::to_string(n) +
                                             " outside [0, " + std::to_string(2 * big_m) + "]");
}

inline BigInt factorial(int n) {
  BigInt r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

inline BigInt ipow(int base, int exp) {
  BigInt r = 1;
  for (int k = 0; k < exp; ++k) r *= base;
  return r;
}

}  // namespace detail

/// Chains have N = 2M + 2 sites and links n = 0 .. 2M.
inline int chain_m_param(int n_sites) {
  if (n_sites < 2 || n_sites % 2 != 0)
    throw Error(ErrorKind::invalid_model, "n_sites must be even and at least 2");
  return (n_sites - 2) / 2;
}

// U(1) ----------------------------------------------------------------------

inline BigInt dim_u1(int n, int big_m) {
  detail::check_link(n, big_m);
  return std::min(n, 2 * big_m - n) + 2;
}

/// Product of the per-link dimensions, (M+1)! (M+2)!.
inline BigInt d_gauge_u1(int big_m) {
  BigInt d = 1;
  for (int n = 0; n <= 2 * big_m; ++n) d *= dim_u1(n, big_m);
  return d;
}

inline BigInt d_gauge_u1_closed(int big_m) {
  return detail::factorial(big_m + 1) * detail::factorial(big_m + 2);
}

/// D_Gauge times the half-filling Fock dimension, N! (N/2 + 1).
inline BigInt bound_u1(int big_m) {
  return d_gauge_u1(big_m) * detail::binomial(2 * big_m + 2, big_m + 1);
}

inline BigInt bound_u1_closed(int big_m) {
  return detail::factorial(2 * big_m + 2) * (big_m + 2);
}

// SU(2) ---------------------------------------------------------------------

/// sum_{j=0}^{J_max(n)} (2j+1)^2 = (n'+2)(n'+3)(2n'+5)/6 with n' = min(n, 2M - n).
inline BigInt dim_su2(int n, int big_m) {
  detail::check_link(n, big_m);
  const int p = std::min(n, 2 * big_m - n);
  return BigInt(p + 2) * (p + 3) * (2 * p + 5) / 6;
}

inline BigInt d_gauge_su2(int big_m) {
  BigInt d = 1;
  for (int n = 0; n <= 2 * big_m; ++n) d *= dim_su2(n, big_m);
  return d;
}

/// (M+2)(2M+5)(M+2)!(M+3)!(2M+3)!^2 / (2^(4M+5) 3^(2M+3)).
inline BigInt d_gauge_su2_closed(int big_m) {
  const BigInt f = detail::factorial(2 * big_m + 3);
  const BigInt num = BigInt(big_m + 2) * (2 * big_m + 5) * detail::factorial(big_m + 2) *
                     detail::factorial(big_m + 3) * f * f;
  const BigInt den = detail::ipow(2, 4 * big_m + 5) * detail::ipow(3, 2 * big_m + 3);
  if (num % den != 0) throw Error(ErrorKind::numerical, "closed form is not an integer");
  return num / den;
}

/// D_Gauge times the half-filling Fock dimension C(4M+4, 2M+2).
inline BigInt bound_su2(int big_m) {
  return d_gauge_su2(big_m) * detail::binomial(4 * big_m + 4, 2 * big_m + 2);
}

struct BoundFraction {
  BigInt numerator;
  BigInt denominator;
};

/// (M+2)(M+2)!(M+3)!(2M+3)^2(2M+5)(4M+4)! / (3^(2M+3) 4^(4M+5)), unreduced.
inline BoundFraction bound_su2_printed(int big_m) {
  if (big_m < 0) throw Error(ErrorKind::out_of_range, "M must be non-negative");
  return {BigInt(big_m + 2) * detail::factorial(big_m + 2) * detail::factorial(big_m + 3) *
              (2 * big_m + 3) * (2 * big_m + 3) * (2 * big_m + 5) *
              detail::factorial(4 * big_m + 4),
          detail::ipow(3, 2 * big_m + 3) * detail::ipow(4, 4 * big_m + 5)};
}

}  // namespace gauge_ladder
