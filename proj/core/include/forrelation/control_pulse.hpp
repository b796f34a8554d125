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

#ifndef FORRELATION_CONTROL_PULSE_HPP_
#define FORRELATION_CONTROL_PULSE_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace forr {

/// Piecewise-constant RF control: M segments of dt seconds, each holding an
/// (x, y) quadrature amplitude pair in Hz for every channel. Channel c drives
/// the spin channel_spins[c].
struct ControlPulse {
  std::vector<int> channel_spins;
  int segments = 0;
  double dt = 0.0;
  std::vector<double> amplitudes;  // [segment][channel][quadrature], row-major

  ControlPulse() = default;
  ControlPulse(std::vector<int> channel_spins, int segments, double dt);

  int channels() const { return static_cast<int>(channel_spins.size()); }
  double duration() const { return segments * dt; }

  double& at(int segment, int channel, int quadrature);
  double at(int segment, int channel, int quadrature) const;

  void validate() const;
};

/// CSV form: "# channels=<spin list> dt=<s>" header, then a column header and
/// one row per segment of x/y amplitudes per channel.
std::string pulse_to_csv(const ControlPulse& pulse);
ControlPulse pulse_from_csv(std::string_view csv);

}  // namespace forr

#endif  // FORRELATION_CONTROL_PULSE_HPP_
