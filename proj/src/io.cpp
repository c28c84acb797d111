// Copyright 2026 The tanglekit developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tanglekit/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tanglekit {

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open file: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

PureState parse_state_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("state file is not valid JSON: ") + e.what());
  }
  if (!doc.contains("n_qubits") || !doc["n_qubits"].is_number_integer()) {
    throw InputError("state file is missing an integer 'n_qubits' field");
  }
  if (!doc.contains("amplitudes") || !doc["amplitudes"].is_array()) {
    throw InputError("state file is missing an 'amplitudes' array");
  }
  const int n = doc["n_qubits"].get<int>();
  if (n < 1 || n > kMaxQubits) {
    throw InputError("state file n_qubits out of range: " + std::to_string(n));
  }
  const auto& amps = doc["amplitudes"];
  const std::size_t expected = std::size_t{1} << n;
  if (amps.size() != expected) {
    throw InputError("state file has " + std::to_string(amps.size()) +
                     " amplitudes, expected " + std::to_string(expected));
  }
  Vector v(static_cast<Eigen::Index>(expected));
  for (std::size_t i = 0; i < expected; ++i) {
    const auto& pair = amps[i];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      throw InputError("amplitude " + std::to_string(i) + " is not a [real, imaginary] pair");
    }
    v(static_cast<Eigen::Index>(i)) = Complex(pair[0].get<double>(), pair[1].get<double>());
  }
  return PureState(n, std::move(v), false);
}

std::string state_to_json(const PureState& psi) {
  nlohmann::json doc;
  doc["format"] = "tanglekit-state";
  doc["qubit_order"] = "q0-most-significant";
  doc["n_qubits"] = psi.n_qubits();
  nlohmann::json amps = nlohmann::json::array();
  for (Eigen::Index i = 0; i < psi.dim(); ++i) {
    const Complex a = psi.amplitude(i);
    amps.push_back({a.real(), a.imag()});
  }
  doc["amplitudes"] = std::move(amps);
  return doc.dump(2) + "\n";
}

PureState read_state_file(const std::filesystem::path& path) {
  return parse_state_json(slurp(path));
}

void write_state_file(const std::filesystem::path& path, const PureState& psi) {
  std::ofstream out(path);
  if (!out) {
    throw InputError("cannot write file: " + path.string());
  }
  out << state_to_json(psi);
}

FilterSpec read_filter_file(const std::filesystem::path& path) {
  return parse_filter(slurp(path));
}

}  // namespace tanglekit
