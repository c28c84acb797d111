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

#include "tanglekit/monotones.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tanglekit/comb.hpp"
#include "tanglekit/filter_engine.hpp"

namespace tanglekit {

namespace {

void check_qubits(const PureState& psi, int expected, const char* what) {
  if (psi.n_qubits() != expected) {
    throw DimensionError(std::string(what) + " requires a " + std::to_string(expected) +
                         "-qubit state, got " + std::to_string(psi.n_qubits()));
  }
}

void check_qubits(const DensityMatrix& rho, int expected, const char* what) {
  if (rho.n_qubits() != expected) {
    throw DimensionError(std::string(what) + " requires a " + std::to_string(expected) +
                         "-qubit density matrix, got " + std::to_string(rho.n_qubits()));
  }
}

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

Eigen::Matrix4cd spin_flip() {
  return kron2(pauli_matrix(Pauli::Y), pauli_matrix(Pauli::Y));
}

/// Hermitian square root. Eigenvalues indistinguishable from round-off
/// (negative, or below 1e-13 of the largest) are clamped to zero first; the
/// square root would otherwise inflate them to sqrt(eps)-size noise in the
/// null space, which rank-deficient inputs (pure projectors) cannot afford.
Eigen::Matrix4cd hermitian_sqrt(const Eigen::Matrix4cd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es((m + m.adjoint()) / 2.0);
  Eigen::Vector4d d = es.eigenvalues();
  const double floor = d.maxCoeff() * 1e-13;
  for (int i = 0; i < 4; ++i) d(i) = d(i) > floor ? std::sqrt(d(i)) : 0.0;
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double concurrence_pure(const PureState& psi) {
  check_qubits(psi, 2, "concurrence");
  return std::abs(bilinear_form(psi, PauliString{Pauli::Y, Pauli::Y}));
}

double concurrence_sq_pure(const PureState& psi) {
  check_qubits(psi, 2, "squared concurrence");
  return evaluate(builtin(BuiltinFilter::F2_2), psi).modulus;
}

double tau3_filter(const PureState& psi, Tau3Form which) {
  check_qubits(psi, 3, "3-tangle");
  const BuiltinFilter f =
      which == Tau3Form::F3_1 ? BuiltinFilter::F3_1 : BuiltinFilter::F3_2;
  return evaluate(builtin(f), psi).modulus;
}

Tau3Terms tau3_poly_terms(const PureState& psi) {
  check_qubits(psi, 3, "3-tangle polynomial");
  psi.require_normalized();
  // Amplitude a(bcd) at index b*4 + c*2 + d under the q0-most-significant
  // convention, matching the ket subscripts literally.
  auto a = [&](int idx) { return psi.amplitude(idx); };
  const Complex a000 = a(0b000), a001 = a(0b001), a010 = a(0b010), a011 = a(0b011);
  const Complex a100 = a(0b100), a101 = a(0b101), a110 = a(0b110), a111 = a(0b111);

  Tau3Terms t;
  t.d1 = a000 * a000 * a111 * a111 + a001 * a001 * a110 * a110 +
         a010 * a010 * a101 * a101 + a100 * a100 * a011 * a011;
  t.d2 = a000 * a111 * a011 * a100 + a000 * a111 * a101 * a010 +
         a000 * a111 * a110 * a001 + a011 * a100 * a101 * a010 +
         a011 * a100 * a110 * a001 + a101 * a010 * a110 * a001;
  t.d3 = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100;
  t.raw_abs = std::abs(t.d1 - 2.0 * t.d2 + 4.0 * t.d3);
  t.value = 4.0 * t.raw_abs;
  return t;
}

double tau3_poly(const PureState& psi) { return tau3_poly_terms(psi).value; }

Eigen::Matrix4cd build_R(const DensityMatrix& rho) {
  check_qubits(rho, 2, "R matrix");
  const Eigen::Matrix4cd root = hermitian_sqrt(rho.matrix());
  const Eigen::Matrix4cd flip = spin_flip();
  return root * flip * rho.matrix().conjugate() * flip * root;
}

std::array<double, 4> r_eigenvalues(const DensityMatrix& rho) {
  check_qubits(rho, 2, "R matrix spectrum");
  const Eigen::Matrix4cd flip = spin_flip();

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> rho_es(rho.matrix());
  const bool near_singular = rho_es.eigenvalues().minCoeff() < 1e-6;

  Eigen::Vector4d values;
  bool done = false;
  if (!near_singular) {
    // Same spectrum as R without matrix square roots.
    const Eigen::Matrix4cd similar = rho.matrix() * flip * rho.matrix().conjugate() * flip;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(similar);
    if (es.info() == Eigen::Success &&
        es.eigenvalues().imag().cwiseAbs().maxCoeff() <= 1e-9) {
      values = es.eigenvalues().real();
      done = true;
    }
  }
  if (!done) {
    // Rank-deficient input: the general eigensolver turns round-off in the
    // zero eigenvalues into sqrt(eps)-size errors. R = X X^dagger with
    // X = sqrt(rho) flip sqrt(rho*), and the singular values of X are the
    // sqrt-eigenvalues of R with the null-space noise staying quadratically
    // small, so square those instead.
    const Eigen::Vector4d d = rho_es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Eigen::Matrix4cd root =
        rho_es.eigenvectors() * d.asDiagonal() * rho_es.eigenvectors().adjoint();
    const Eigen::Matrix4cd x = root * flip * root.conjugate();
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(x);
    values = svd.singularValues().cwiseAbs2();
  }

  std::array<double, 4> out{values(0), values(1), values(2), values(3)};
  for (double& v : out) v = std::max(v, 0.0);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double wootters_concurrence(const DensityMatrix& rho) {
  const auto lambda = r_eigenvalues(rho);
  const double c = std::sqrt(lambda[0]) - std::sqrt(lambda[1]) - std::sqrt(lambda[2]) -
                   std::sqrt(lambda[3]);
  return std::max(0.0, c);
}

Eigen::Matrix4cd build_R2(const DensityMatrix& rho) {
  check_qubits(rho, 2, "R2 matrix");
  const Eigen::Matrix4cd root = hermitian_sqrt(rho.matrix());
  const Eigen::Matrix4cd conj = rho.matrix().conjugate();

  Eigen::Matrix4cd pair[3][3];
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n)
      pair[m][n] = kron2(pauli_matrix(kMetricSupport[m]), pauli_matrix(kMetricSupport[n]));

  auto weight = [](int s) { return kMetricDiagonal[static_cast<int>(kMetricSupport[s])]; };

  Eigen::Matrix4cd acc = Eigen::Matrix4cd::Zero();
  for (int m = 0; m < 3; ++m) {
    for (int n = 0; n < 3; ++n) {
      for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) {
          const double w = weight(m) * weight(n) * weight(k) * weight(l);
          acc += w * root * pair[m][n] * conj * pair[k][l] * rho.matrix() * pair[m][n] * conj *
                 pair[k][l] * root;
        }
      }
    }
  }
  return acc;
}

}  // namespace tanglekit
