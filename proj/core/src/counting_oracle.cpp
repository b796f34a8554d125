/* Copyright 2026 The forrelation-nmr Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "forrelation/counting_oracle.hpp"

#include <stdexcept>

namespace forr {

int CountingOracle::evaluate(std::string_view x, QueryMode mode) {
  return evaluate(bits_to_index(x, function_.n()), mode);
}

int CountingOracle::evaluate(std::uint64_t x, QueryMode mode) {
  if (x >= function_.size()) {
    throw std::invalid_argument("CountingOracle::evaluate: index " +
                                std::to_string(x) + " out of range for n=" +
                                std::to_string(function_.n()));
  }
  if (mode == QueryMode::kClassical) {
    classical_.fetch_add(1, std::memory_order_relaxed);
  } else {
    quantum_.fetch_add(1, std::memory_order_relaxed);
  }
  return function_(x);
}

}  // namespace forr
