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

#include <Eigen/Dense>

#include "tanglekit/qstate.hpp"

namespace tanglekit {

/// Two-qubit pure-state concurrence |<sigma_y x sigma_y>_C| in [0, 1].
double concurrence_pure(const PureState& psi);

/// The squared concurrence from the permutation-invariant second filter;
/// equals concurrence_pure(psi)^2.
double concurrence_sq_pure(const PureState& psi);

/// Which 3-qubit filter realizes the 3-tangle.
enum class Tau3Form { F3_1, F3_2 };

/// 3-tangle of a pure 3-qubit state as a filter expectation modulus.
double tau3_filter(const PureState& psi, Tau3Form which = Tau3Form::F3_1);

/// Polynomial route to the 3-tangle. `raw_abs` is |d1 - 2*d2 + 4*d3| over the
/// printed monomials; `value` carries the factor 4 that aligns the polynomial
/// with the filter expectation (GHZ -> 1), confirmed by the cross-formula
/// equality suite.
struct Tau3Terms {
  Complex d1;
  Complex d2;
  Complex d3;
  double raw_abs = 0.0;
  double value = 0.0;
};

Tau3Terms tau3_poly_terms(const PureState& psi);
double tau3_poly(const PureState& psi);

/// R = sqrt(rho) (sigma_y x sigma_y) rho* (sigma_y x sigma_y) sqrt(rho);
/// Hermitian positive semidefinite for a valid two-qubit density matrix.
Eigen::Matrix4cd build_R(const DensityMatrix& rho);

/// Descending eigenvalues of R, clamped at zero. Computed from the similar
/// matrix rho (sigma_y x sigma_y) rho* (sigma_y x sigma_y) (same spectrum, no
/// matrix square roots), falling back to the explicit Hermitian form when the
/// general eigensolver leaves a complex residue.
std::array<double, 4> r_eigenvalues(const DensityMatrix& rho);

/// Mixed-state two-qubit concurrence max(0, sqrt(l1)-sqrt(l2)-sqrt(l3)-sqrt(l4))
/// over the descending eigenvalues of R. Coincides with concurrence_pure on
/// pure-state projectors.
double wootters_concurrence(const DensityMatrix& rho);

/// The fourth-order companion of R: the four-label metric contraction
///   sum sqrt(rho) S_mn rho* S_kl rho S_mn rho* S_kl sqrt(rho)
/// with S_mn = sigma_m x sigma_n, labels over {0,1,3}, one metric weight per
/// label, no prefactor. Exposed with pure-state diagnostics only: for
/// rho = |psi><psi| it collapses to 9 C(psi)^4 |psi><psi|.
Eigen::Matrix4cd build_R2(const DensityMatrix& rho);

}  // namespace tanglekit
