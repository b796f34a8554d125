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

#ifndef FORRELATION_EXPERIMENT_HPP_
#define FORRELATION_EXPERIMENT_HPP_

#include <optional>
#include <string>
#include <vector>

#include "forrelation/forrelation.hpp"
#include "forrelation/grape.hpp"
#include "forrelation/spin_system.hpp"

namespace forr {

struct ExperimentOptions {
  bool pulse_pathway = true;
  bool grape_pathway = false;
  double depolarize_p = 0.0;
  double epsilon = 1e-5;  // PPS polarization; outputs are calibrated by it
  std::uint64_t seed = 0;
  grape::Config grape_config;
};

/// One row of the experiment table. Pathways that were not run carry empty
/// optionals and the "skipped" classification marker.
struct InstanceRecord {
  int id = 0;
  int k = 0;
  int n = 0;
  std::string oracles;
  std::optional<double> target_phi;
  double brute_phi = 0.0;
  double circuit_phi = 0.0;
  double probe_ideal = 0.0;  // PPS pipeline with the ideal circuit unitary
  std::optional<double> probe_pulse;
  std::optional<double> probe_grape;
  std::string class_ideal;
  std::string class_pulse = "skipped";
  std::string class_grape = "skipped";
  std::optional<double> fidelity_pulse;  // final state vs noiseless theory
  std::optional<double> fidelity_grape;
  double tomo_roundtrip_error = 0.0;
  std::uint64_t quantum_queries = 0;
  std::uint64_t classical_queries_memoized = 0;
};

struct ExperimentReport {
  std::vector<InstanceRecord> records;
  double epsilon = 1e-5;
  double depolarize_p = 0.0;
  bool ok = true;  // every pathway met its tolerance
};

/// Runs each instance through the selected pathways: pseudo-pure preparation,
/// pathway unitary (ideal circuit / compiled pulse sequence / GRAPE pulse),
/// optional depolarizing noise, calibrated probe readout, tomography
/// round-trip and fidelity against the noiseless theory state. Stage errors
/// are rethrown annotated with the instance id and stage name.
ExperimentReport run_experiment(const std::vector<ForrelationInstance>& instances,
                                const SpinSystemParams& params,
                                const ExperimentOptions& options);

/// Lossless serializations; the CSV column order is fixed (see README) and
/// json -> parse -> json round-trips byte-identically.
std::string emit_csv(const ExperimentReport& report);
std::string emit_json(const ExperimentReport& report);
ExperimentReport report_from_json(std::string_view json_text);

/// Display form rounded to 4 decimals.
std::string emit_pretty(const ExperimentReport& report);

}  // namespace forr

#endif  // FORRELATION_EXPERIMENT_HPP_
