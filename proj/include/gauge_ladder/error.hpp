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

#include <stdexcept>
#include <string>

namespace gauge_ladder {

enum class ErrorKind {
  invalid_representation,
  invalid_state,
  out_of_range,
  invalid_layout,
  empty_window,
  window_too_small,
  invalid_model,
  invalid_sector,
  no_crossing,
  not_normalized,
  not_hermitian,
  numerical,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_representation: return "invalid_representation";
    case ErrorKind::invalid_state: return "invalid_state";
    case ErrorKind::out_of_range: return "out_of_range";
    case ErrorKind::invalid_layout: return "invalid_layout";
    case ErrorKind::empty_window: return "empty_window";
    case ErrorKind::window_too_small: return "window_too_small";
    case ErrorKind::invalid_model: return "invalid_model";
    case ErrorKind::invalid_sector: return "invalid_sector";
    case ErrorKind::no_crossing: return "no_crossing";
    case ErrorKind::not_normalized: return "not_normalized";
    case ErrorKind::not_hermitian: return "not_hermitian";
    case ErrorKind::numerical: return "numerical";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gauge_ladder
