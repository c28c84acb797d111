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

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "tanglekit/qstate.hpp"

namespace tanglekit {

/// Pauli labels; the integer values index the contraction metric.
enum class Pauli : int { I = 0, X = 1, Y = 2, Z = 3 };

/// Standard 2x2 matrix of a Pauli label in the computational basis.
Eigen::Matrix2cd pauli_matrix(Pauli mu);

/// An N-tuple of Pauli labels defining one bilinear form <psi| s1 x ... x sN |psi*>.
using PauliString = std::vector<Pauli>;

/// Diagonal of the contraction metric g = diag{-1, 1, 0, 1}. Contracted Greek
/// indices are summed over {0, 1, 3} with weights {-1, 1, 1}; the Y component
/// carries weight zero and is skipped.
inline constexpr std::array<double, 4> kMetricDiagonal{-1.0, 1.0, 0.0, 1.0};
inline constexpr std::array<Pauli, 3> kMetricSupport{Pauli::I, Pauli::X, Pauli::Z};

/// The antilinear expectation value <L>_C = <psi| L |psi*>, where |psi*>
/// conjugates amplitudes in the computational basis. Bilinear in the
/// conjugated amplitudes; requires a normalized state.
Complex bilinear_form(const PureState& psi, const PauliString& s);

/// Same form without the normalization check, for homogeneity and
/// SL(2,C)-transformed (hence non-unit-norm) inputs.
Complex bilinear_form_raw(const PureState& psi, const PauliString& s);

/// True iff the string contains an odd number of Y slots. Exactly those
/// strings have identically vanishing antilinear expectation value.
bool parity_is_comb(const PauliString& s);

/// Randomized nullity check of a candidate order-1 comb.
struct Order1CombReport {
  PauliString string;
  int trials = 0;
  double tol = 0.0;
  double max_abs = 0.0;
  bool passed = false;             // max_abs < tol over all trials
  bool parity_odd = false;         // parity_is_comb(string)
  bool consistent_with_parity = false;  // passed == parity_odd
};

Order1CombReport verify_comb_order1(const PauliString& s, int trials, std::uint64_t seed,
                                    double tol);

/// Randomized check of the order-2 single-qubit comb: for Haar-random
/// one-qubit states, sum_{mu in {0,1,3}} g^{mu mu} <sigma_mu>_C^2 == 0.
struct Order2CombReport {
  int trials = 0;
  double tol = 0.0;
  double max_abs = 0.0;
  bool passed = false;
};

Order2CombReport verify_comb_order2(int trials, std::uint64_t seed, double tol);

}  // namespace tanglekit
