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

#include <charconv>
#include <compare>
#include <cstdlib>
#include <string>
#include <string_view>

#include "gauge_ladder/error.hpp"

namespace gauge_ladder {

/// Exact half-integer stored as twice its value.
///
/// Representation labels (j) and magnetic labels (m, n) share this type;
/// nothing in the library stores a spin label as floating point.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr explicit HalfInt(int integer) : twice_(2 * integer) {}

  static constexpr HalfInt from_twice(int twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }

  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  constexpr HalfInt& operator+=(HalfInt o) {
    twice_ += o.twice_;
    return *this;
  }
  constexpr HalfInt& operator-=(HalfInt o) {
    twice_ -= o.twice_;
    return *this;
  }
  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return a += b; }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return a -= b; }
  friend constexpr bool operator==(HalfInt, HalfInt) = default;
  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

  /// "3/2", "-1/2", "2", "0".
  std::string to_string() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

  /// Accepts "p/2", integers and decimal halves such as "1.5".
  static HalfInt parse(std::string_view text) {
    auto fail = [&] {
      return Error(ErrorKind::invalid_state,
                   "not a half-integer: '" + std::string(text) + "'");
    };
    if (text.empty()) throw fail();
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      int num = 0;
      auto num_part = text.substr(0, slash);
      auto den_part = text.substr(slash + 1);
      if (num_part.starts_with('+')) num_part.remove_prefix(1);
      auto [p, ec] = std::from_chars(num_part.data(),
                                     num_part.data() + num_part.size(), num);
      if (ec != std::errc() || p != num_part.data() + num_part.size())
        throw fail();
      if (den_part == "1") return HalfInt(num);
      if (den_part != "2") throw fail();
      return from_twice(num);
    }
    double v = 0.0;
    auto body = text;
    if (body.starts_with('+')) body.remove_prefix(1);
    auto [p, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
    if (ec != std::errc() || p != body.data() + body.size()) throw fail();
    double twice = 2.0 * v;
    long rounded = std::lround(twice);
    if (std::abs(twice - static_cast<double>(rounded)) > 1e-12) throw fail();
    return from_twice(static_cast<int>(rounded));
  }

 private:
  int twice_ = 0;
};

/// `half(3)` is 3/2.
constexpr HalfInt half(int twice) { return HalfInt::from_twice(twice); }

/// Number of states in the representation j, i.e. 2j+1.
inline int dim(HalfInt j) {
  if (j.twice() < 0)
    throw Error(ErrorKind::invalid_representation,
                "negative representation label j=" + j.to_string());
  return j.twice() + 1;
}

/// j(j+1) as a double.
constexpr double casimir(HalfInt j) { return j.value() * (j.value() + 1.0); }

}  // namespace gauge_ladder
