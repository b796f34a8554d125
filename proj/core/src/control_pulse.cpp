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

#include "forrelation/control_pulse.hpp"

#include <sstream>
#include <stdexcept>

namespace forr {

ControlPulse::ControlPulse(std::vector<int> spins, int segment_count,
                           double segment_dt)
    : channel_spins(std::move(spins)), segments(segment_count), dt(segment_dt) {
  amplitudes.assign(static_cast<std::size_t>(segments) * channels() * 2, 0.0);
  validate();
}

double& ControlPulse::at(int segment, int channel, int quadrature) {
  return amplitudes[(static_cast<std::size_t>(segment) * channels() + channel) *
                        2 +
                    quadrature];
}

double ControlPulse::at(int segment, int channel, int quadrature) const {
  return amplitudes[(static_cast<std::size_t>(segment) * channels() + channel) *
                        2 +
                    quadrature];
}

void ControlPulse::validate() const {
  if (segments < 1) throw std::invalid_argument("ControlPulse: segments must be >= 1");
  if (!(dt > 0.0)) throw std::invalid_argument("ControlPulse: dt must be > 0");
  if (channel_spins.empty()) {
    throw std::invalid_argument("ControlPulse: no channels");
  }
  if (amplitudes.size() !=
      static_cast<std::size_t>(segments) * channel_spins.size() * 2) {
    throw std::invalid_argument("ControlPulse: amplitude array size mismatch");
  }
}

std::string pulse_to_csv(const ControlPulse& pulse) {
  pulse.validate();
  std::ostringstream out;
  out.precision(17);
  out << "# channels=";
  for (std::size_t c = 0; c < pulse.channel_spins.size(); ++c) {
    if (c) out << ';';
    out << pulse.channel_spins[c];
  }
  out << " dt=" << pulse.dt << '\n';
  out << "segment";
  for (int c = 0; c < pulse.channels(); ++c) {
    out << ",ch" << c << "_x_hz,ch" << c << "_y_hz";
  }
  out << '\n';
  for (int s = 0; s < pulse.segments; ++s) {
    out << s;
    for (int c = 0; c < pulse.channels(); ++c) {
      out << ',' << pulse.at(s, c, 0) << ',' << pulse.at(s, c, 1);
    }
    out << '\n';
  }
  return out.str();
}

ControlPulse pulse_from_csv(std::string_view csv) {
  std::istringstream in{std::string(csv)};
  std::string line;
  if (!std::getline(in, line) || line.rfind("# channels=", 0) != 0) {
    throw std::invalid_argument("pulse csv: missing \"# channels=\" header");
  }

  const auto dt_pos = line.find(" dt=");
  if (dt_pos == std::string::npos) {
    throw std::invalid_argument("pulse csv: missing dt in header");
  }
  std::vector<int> spins;
  {
    std::string spin_list = line.substr(11, dt_pos - 11);
    std::istringstream spin_in(spin_list);
    std::string tok;
    while (std::getline(spin_in, tok, ';')) spins.push_back(std::stoi(tok));
  }
  const double dt = std::stod(line.substr(dt_pos + 4));

  std::vector<std::vector<double>> rows;
  bool saw_column_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (!saw_column_header && line.rfind("segment", 0) == 0) {
      saw_column_header = true;
      continue;
    }
    std::vector<double> row;
    std::istringstream row_in(line);
    std::string tok;
    while (std::getline(row_in, tok, ',')) row.push_back(std::stod(tok));
    if (row.size() != 1 + spins.size() * 2) {
      throw std::invalid_argument("pulse csv: bad column count in \"" + line +
                                  "\"");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("pulse csv: no segments");

  ControlPulse pulse(spins, static_cast<int>(rows.size()), dt);
  for (std::size_t s = 0; s < rows.size(); ++s) {
    for (std::size_t c = 0; c < spins.size(); ++c) {
      pulse.at(static_cast<int>(s), static_cast<int>(c), 0) = rows[s][1 + 2 * c];
      pulse.at(static_cast<int>(s), static_cast<int>(c), 1) = rows[s][2 + 2 * c];
    }
  }
  return pulse;
}

}  // namespace forr
