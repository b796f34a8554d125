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

#include "forrelation/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace forr {

using nlohmann::json;

ForrelationInstance instance_from_json(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("instance json: ") + e.what());
  }
  if (!doc.contains("k") || !doc.contains("n") || !doc.contains("oracles")) {
    throw std::invalid_argument("instance json: need keys k, n, oracles");
  }
  const int k = doc.at("k").get<int>();
  const int n = doc.at("n").get<int>();
  const auto& oracles = doc.at("oracles");
  if (!oracles.is_array() || static_cast<int>(oracles.size()) != k) {
    throw std::invalid_argument("instance json: oracles must list k diagonals");
  }
  std::vector<BooleanFunction> functions;
  functions.reserve(oracles.size());
  for (const auto& text : oracles) {
    functions.push_back(parse_diagonal(text.get<std::string>(), n));
  }
  std::optional<double> target;
  if (doc.contains("target") && !doc.at("target").is_null()) {
    target = doc.at("target").get<double>();
  }
  return ForrelationInstance(std::move(functions), target);
}

std::string instance_to_json(const ForrelationInstance& instance) {
  json doc;
  doc["k"] = instance.k;
  doc["n"] = instance.n;
  json oracles = json::array();
  for (const auto& f : instance.functions) oracles.push_back(format_diagonal(f));
  doc["oracles"] = std::move(oracles);
  if (instance.target) doc["target"] = *instance.target;
  return doc.dump(2) + "\n";
}

SpinSystemParams spin_params_from_json(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("spin params json: ") + e.what());
  }
  if (!doc.contains("shifts_hz")) {
    throw std::invalid_argument("spin params json: missing shifts_hz");
  }
  SpinSystemParams params;
  for (const auto& v : doc.at("shifts_hz")) {
    params.shifts_hz.push_back(v.get<double>());
  }
  params.spins = static_cast<int>(params.shifts_hz.size());
  if (doc.contains("couplings_hz")) {
    for (const auto& [key, value] : doc.at("couplings_hz").items()) {
      const auto comma = key.find(',');
      if (comma == std::string::npos) {
        throw std::invalid_argument("spin params json: coupling key \"" + key +
                                    "\" is not \"j,k\"");
      }
      const int j = std::stoi(key.substr(0, comma)) - 1;  // 1-based labels
      const int k = std::stoi(key.substr(comma + 1)) - 1;
      params.couplings_hz[{std::min(j, k), std::max(j, k)}] =
          value.get<double>();
    }
  }
  params.validate();
  return params;
}

std::string spin_params_to_json(const SpinSystemParams& params) {
  json doc;
  doc["shifts_hz"] = params.shifts_hz;
  json couplings = json::object();
  for (const auto& [pair, value] : params.couplings_hz) {
    couplings[std::to_string(pair.first + 1) + "," +
              std::to_string(pair.second + 1)] = value;
  }
  doc["couplings_hz"] = std::move(couplings);
  return doc.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace forr
