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
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tanglekit/filter_engine.hpp"
#include "tanglekit/qstate.hpp"

namespace tanglekit {

/// The local groups exercised by the invariance checks: determinant-one
/// invertible operators (the stochastic-local-operation group for qubits) and
/// its unitary subgroup.
enum class LocalGroup { SL2C, SU2 };

/// Random determinant-one 2x2 matrix: complex Gaussian entries divided by a
/// principal square root of the determinant. Resamples while |det| < 1e-6
/// before normalization (at most 100 attempts).
Eigen::Matrix2cd random_sl2(std::uint64_t seed);

/// Haar-random SU(2) element.
Eigen::Matrix2cd random_su2(std::uint64_t seed);

/// N site-local invertible 2x2 operators.
struct LocalOperatorTuple {
  std::vector<Eigen::Matrix2cd> ops;

  static LocalOperatorTuple random(int n_qubits, LocalGroup group, std::uint64_t seed);
  static LocalOperatorTuple identity(int n_qubits);
};

/// Applies ops[k] to qubit k. SL(2,C) elements are not norm-preserving, so
/// renormalization is opt-in; a zero result under renormalize throws.
PureState apply_local(const PureState& psi, const LocalOperatorTuple& t, bool renormalize);

/// Filter-value invariance under random local tuples. SL2C mode compares the
/// complex value on the raw transformed state against the original (exact
/// invariance); SU2 mode compares moduli on renormalized states.
struct InvarianceReport {
  std::string filter_name;
  LocalGroup mode = LocalGroup::SL2C;
  int trials = 0;
  double tol = 0.0;
  Complex reference_value;
  double max_deviation = 0.0;
  bool passed = false;
};

InvarianceReport invariance_check(const FilterSpec& f, const PureState& psi, LocalGroup mode,
                                  int trials, std::uint64_t seed, double tol);

/// Moduli of the three 4-qubit filters and their zero flags at the given
/// tolerance.
struct FilterSignature {
  std::array<double, 3> moduli{};  // F4_1, F4_2, F4_3
  std::array<bool, 3> nonzero{};
  double tol = 0.0;
};

/// Necessary-condition classes: a finite filter value cannot be reached from
/// a vanishing one by stochastic local operations, so differing zero patterns
/// witness inequivalence. Labels never claim equivalence.
enum class FourQubitClass { Ghz4, Phi2, Phi3, None, Unclassified };

std::string class_label(FourQubitClass c);

struct ClassifyResult {
  FilterSignature signature;
  FourQubitClass label = FourQubitClass::Unclassified;
};

/// Default zero threshold on moduli of normalized states; separates numeric
/// zeros from the smallest reference nonzero value (8/9) by eight orders.
inline constexpr double kSignatureTol = 1e-8;

ClassifyResult classify4(const PureState& psi, double tol = kSignatureTol);

}  // namespace tanglekit
