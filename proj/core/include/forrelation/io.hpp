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

#ifndef FORRELATION_IO_HPP_
#define FORRELATION_IO_HPP_

#include <string>
#include <string_view>

#include "forrelation/forrelation.hpp"
#include "forrelation/spin_system.hpp"

namespace forr {

/// Instance document: {"k": int, "n": int, "oracles": ["D([..])", ...],
/// "target": optional real}.
ForrelationInstance instance_from_json(std::string_view json_text);
std::string instance_to_json(const ForrelationInstance& instance);

/// Spin-system document: {"shifts_hz": [...], "couplings_hz": {"1,2": J12,
/// ...}} with 1-based spin labels in the coupling keys.
SpinSystemParams spin_params_from_json(std::string_view json_text);
std::string spin_params_to_json(const SpinSystemParams& params);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

}  // namespace forr

#endif  // FORRELATION_IO_HPP_
