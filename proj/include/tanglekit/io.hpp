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

#pragma once

#include <filesystem>
#include <string>

#include "tanglekit/filter_engine.hpp"
#include "tanglekit/qstate.hpp"

namespace tanglekit {

/// State files are JSON with two required fields:
///   n_qubits    integer
///   amplitudes  list of [real, imaginary] pairs, basis index ascending,
///               qubit 0 most significant
/// Unknown fields are ignored. Values are written with full double precision,
/// so a write/read round trip reproduces amplitudes to better than 1e-15
/// relative error.
PureState parse_state_json(const std::string& text);
std::string state_to_json(const PureState& psi);

PureState read_state_file(const std::filesystem::path& path);
void write_state_file(const std::filesystem::path& path, const PureState& psi);

/// Filter files hold the text form accepted by parse_filter(); surrounding
/// whitespace and newlines between tokens are insignificant.
FilterSpec read_filter_file(const std::filesystem::path& path);

}  // namespace tanglekit
