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

#include "forrelation/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "forrelation/circuit.hpp"
#include "forrelation/density.hpp"
#include "forrelation/pulse_compiler.hpp"

namespace forr {

namespace {

using nlohmann::json;

double clamp_expectation(double v) { return std::clamp(v, -1.0, 1.0); }

std::string classify_label(double v) {
  return to_string(classify(clamp_expectation(v)).label);
}

[[noreturn]] void stage_error(int id, const std::string& stage,
                              const std::exception& e) {
  throw std::runtime_error("instance " + std::to_string(id) + ", stage " +
                           stage + ": " + e.what());
}

}  // namespace

ExperimentReport run_experiment(
    const std::vector<ForrelationInstance>& instances,
    const SpinSystemParams& params, const ExperimentOptions& options) {
  ExperimentReport report;
  report.epsilon = options.epsilon;
  report.depolarize_p = options.depolarize_p;

  for (std::size_t index = 0; index < instances.size(); ++index) {
    const auto& instance = instances[index];
    InstanceRecord record;
    record.id = static_cast<int>(index + 1);
    record.k = instance.k;
    record.n = instance.n;
    record.oracles = instance.canonical_text();
    record.target_phi = instance.target;

    try {
      record.brute_phi = forrelation(instance);
      const auto counted = forrelation_counted(instance, true);
      record.classical_queries_memoized = counted.classical_queries;
    } catch (const std::exception& e) {
      stage_error(record.id, "brute-force", e);
    }

    try {
      record.circuit_phi =
          forrelation_amplitude(instance, &record.quantum_queries);
    } catch (const std::exception& e) {
      stage_error(record.id, "circuit", e);
    }

    const int m = instance.n + 1;
    Eigen::MatrixXcd ideal_unitary;
    DensityMatrix pps = pseudo_pure(options.epsilon, m);
    const std::string probe_word = "Z" + std::string(instance.n, 'I');
    const double calibration = expect_pauli(pps, probe_word);
    std::optional<DensityMatrix> theory_state;

    try {
      const auto ops = build_forrelation_circuit(instance, true);
      ideal_unitary = circuit_unitary(ops, m);
      DensityMatrix final_state = evolve(pps, ideal_unitary);
      theory_state = final_state;
      if (options.depolarize_p > 0.0) {
        final_state = depolarize(final_state, options.depolarize_p);
      }
      record.probe_ideal =
          expect_pauli(final_state, probe_word) / calibration;
      record.class_ideal = classify_label(record.probe_ideal);

      const DensityMatrix reconstructed =
          tomography(pauli_expectations(final_state), m);
      record.tomo_roundtrip_error =
          (reconstructed.matrix() - final_state.matrix()).cwiseAbs().maxCoeff();
    } catch (const std::exception& e) {
      stage_error(record.id, "ideal-pps", e);
    }

    if (options.pulse_pathway) {
      try {
        const auto ops = build_forrelation_circuit(instance, true);
        const PulseSequence seq = compile(ops, params);
        DensityMatrix final_state = evolve(pps, sequence_unitary(seq));
        if (options.depolarize_p > 0.0) {
          final_state = depolarize(final_state, options.depolarize_p);
        }
        record.probe_pulse =
            expect_pauli(final_state, probe_word) / calibration;
        record.class_pulse = classify_label(*record.probe_pulse);
        record.fidelity_pulse = fidelity(final_state, *theory_state);
      } catch (const std::exception& e) {
        stage_error(record.id, "pulse-compiled", e);
      }
    }

    if (options.grape_pathway) {
      try {
        grape::Config config = options.grape_config;
        config.seed = options.seed + index;
        const auto optimized = grape::optimize(params, ideal_unitary, config);
        const Eigen::MatrixXcd propagator =
            shaped_propagator(params, optimized.pulse);
        DensityMatrix final_state = evolve(pps, propagator);
        if (options.depolarize_p > 0.0) {
          final_state = depolarize(final_state, options.depolarize_p);
        }
        record.probe_grape =
            expect_pauli(final_state, probe_word) / calibration;
        record.class_grape = classify_label(*record.probe_grape);
        record.fidelity_grape = fidelity(final_state, *theory_state);
      } catch (const std::exception& e) {
        stage_error(record.id, "grape", e);
      }
    }

    // Tolerances: ideal pathways must reproduce the brute force; hardware
    // pathways must stay within the coherence budget of their pulse quality.
    const double scale = 1.0 - options.depolarize_p;
    if (std::abs(record.circuit_phi - record.brute_phi) > 1e-8 ||
        std::abs(record.probe_ideal - scale * record.brute_phi) > 1e-8) {
      report.ok = false;
    }
    if (record.probe_pulse) {
      const double budget = 2.0 * (1.0 - *record.fidelity_pulse) + 1e-6;
      if (std::abs(*record.probe_pulse - record.probe_ideal) > budget) {
        report.ok = false;
      }
    }
    if (record.probe_grape) {
      const double budget = 2.0 * (1.0 - *record.fidelity_grape) + 1e-6;
      if (std::abs(*record.probe_grape - record.probe_ideal) > budget) {
        report.ok = false;
      }
    }

    report.records.push_back(std::move(record));
  }
  return report;
}

namespace {

void csv_number(std::ostringstream& out, double v) { out << v; }

void csv_optional(std::ostringstream& out, const std::optional<double>& v) {
  if (v) {
    out << *v;
  } else {
    out << "skipped";
  }
}

json optional_to_json(const std::optional<double>& v) {
  if (v) return *v;
  return nullptr;
}

std::optional<double> optional_from_json(const json& v) {
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

}  // namespace

std::string emit_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << "id,k,n,oracles,target_phi,brute_phi,circuit_phi,probe_ideal,"
         "class_ideal,probe_pulse,class_pulse,fidelity_pulse,probe_grape,"
         "class_grape,fidelity_grape,tomo_roundtrip_error,quantum_queries,"
         "classical_queries_memoized\n";
  for (const auto& r : report.records) {
    out << r.id << ',' << r.k << ',' << r.n << ",\"" << r.oracles << "\",";
    csv_optional(out, r.target_phi);
    out << ',';
    csv_number(out, r.brute_phi);
    out << ',';
    csv_number(out, r.circuit_phi);
    out << ',';
    csv_number(out, r.probe_ideal);
    out << ',' << r.class_ideal << ',';
    csv_optional(out, r.probe_pulse);
    out << ',' << r.class_pulse << ',';
    csv_optional(out, r.fidelity_pulse);
    out << ',';
    csv_optional(out, r.probe_grape);
    out << ',' << r.class_grape << ',';
    csv_optional(out, r.fidelity_grape);
    out << ',';
    csv_number(out, r.tomo_roundtrip_error);
    out << ',' << r.quantum_queries << ',' << r.classical_queries_memoized
        << '\n';
  }
  return out.str();
}

std::string emit_json(const ExperimentReport& report) {
  json doc;
  doc["epsilon"] = report.epsilon;
  doc["depolarize_p"] = report.depolarize_p;
  doc["ok"] = report.ok;
  json records = json::array();
  for (const auto& r : report.records) {
    json rec;
    rec["id"] = r.id;
    rec["k"] = r.k;
    rec["n"] = r.n;
    rec["oracles"] = r.oracles;
    rec["target_phi"] = optional_to_json(r.target_phi);
    rec["brute_phi"] = r.brute_phi;
    rec["circuit_phi"] = r.circuit_phi;
    rec["probe_ideal"] = r.probe_ideal;
    rec["class_ideal"] = r.class_ideal;
    rec["probe_pulse"] = optional_to_json(r.probe_pulse);
    rec["class_pulse"] = r.class_pulse;
    rec["fidelity_pulse"] = optional_to_json(r.fidelity_pulse);
    rec["probe_grape"] = optional_to_json(r.probe_grape);
    rec["class_grape"] = r.class_grape;
    rec["fidelity_grape"] = optional_to_json(r.fidelity_grape);
    rec["tomo_roundtrip_error"] = r.tomo_roundtrip_error;
    rec["quantum_queries"] = r.quantum_queries;
    rec["classical_queries_memoized"] = r.classical_queries_memoized;
    records.push_back(std::move(rec));
  }
  doc["records"] = std::move(records);
  return doc.dump(2) + "\n";
}

ExperimentReport report_from_json(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("report json: ") + e.what());
  }
  ExperimentReport report;
  report.epsilon = doc.at("epsilon").get<double>();
  report.depolarize_p = doc.at("depolarize_p").get<double>();
  report.ok = doc.at("ok").get<bool>();
  for (const auto& rec : doc.at("records")) {
    InstanceRecord r;
    r.id = rec.at("id").get<int>();
    r.k = rec.at("k").get<int>();
    r.n = rec.at("n").get<int>();
    r.oracles = rec.at("oracles").get<std::string>();
    r.target_phi = optional_from_json(rec.at("target_phi"));
    r.brute_phi = rec.at("brute_phi").get<double>();
    r.circuit_phi = rec.at("circuit_phi").get<double>();
    r.probe_ideal = rec.at("probe_ideal").get<double>();
    r.class_ideal = rec.at("class_ideal").get<std::string>();
    r.probe_pulse = optional_from_json(rec.at("probe_pulse"));
    r.class_pulse = rec.at("class_pulse").get<std::string>();
    r.fidelity_pulse = optional_from_json(rec.at("fidelity_pulse"));
    r.probe_grape = optional_from_json(rec.at("probe_grape"));
    r.class_grape = rec.at("class_grape").get<std::string>();
    r.fidelity_grape = optional_from_json(rec.at("fidelity_grape"));
    r.tomo_roundtrip_error = rec.at("tomo_roundtrip_error").get<double>();
    r.quantum_queries = rec.at("quantum_queries").get<std::uint64_t>();
    r.classical_queries_memoized =
        rec.at("classical_queries_memoized").get<std::uint64_t>();
    report.records.push_back(std::move(r));
  }
  return report;
}

std::string emit_pretty(const ExperimentReport& report) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(4);
  out << "id  k  target    brute     circuit   probe     class\n";
  for (const auto& r : report.records) {
    out << r.id << "   " << r.k << "  ";
    if (r.target_phi) {
      out << std::setw(7) << *r.target_phi;
    } else {
      out << "      -";
    }
    out << "   " << std::setw(7) << r.brute_phi << "   " << std::setw(7)
        << r.circuit_phi << "   " << std::setw(7) << r.probe_ideal << "   "
        << r.class_ideal;
    if (r.probe_pulse) {
      out << "   pulse=" << std::setw(7) << *r.probe_pulse << " ("
          << r.class_pulse << ")";
    }
    if (r.probe_grape) {
      out << "   grape=" << std::setw(7) << *r.probe_grape << " ("
          << r.class_grape << ")";
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace forr
