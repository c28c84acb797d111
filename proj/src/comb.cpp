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

#include "tanglekit/comb.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "tanglekit/rng.hpp"

namespace tanglekit {

Eigen::Matrix2cd pauli_matrix(Pauli mu) {
  const Complex i{0.0, 1.0};
  Eigen::Matrix2cd m;
  switch (mu) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, -i, i, 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

bool parity_is_comb(const PauliString& s) {
  int ny = 0;
  for (Pauli p : s) {
    if (p == Pauli::Y) ++ny;
  }
  return (ny % 2) == 1;
}

namespace {

// A Pauli string maps each basis ket to exactly one basis ket with a phase:
// per qubit, I and Z keep the bit (Z adds a sign on bit 1), X and Y flip it
// (Y contributes +i on bit 0, -i on bit 1). So the full form reduces to one
// pass over the amplitudes.
Complex bilinear_kernel(const PureState& psi, const PauliString& s) {
  const int n = psi.n_qubits();
  std::uint64_t flip = 0, y_mask = 0, z_mask = 0;
  int n_y = 0;
  for (int k = 0; k < n; ++k) {
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - k);
    switch (s[k]) {
      case Pauli::I: break;
      case Pauli::X: flip |= bit; break;
      case Pauli::Y: flip |= bit; y_mask |= bit; ++n_y; break;
      case Pauli::Z: z_mask |= bit; break;
    }
  }
  static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const auto& a = psi.amplitudes();
  const std::uint64_t dim = std::uint64_t{1} << n;
  Complex acc = 0.0;
  for (std::uint64_t j = 0; j < dim; ++j) {
    const int y_ones = std::popcount(j & y_mask);
    const int z_ones = std::popcount(j & z_mask);
    // i^{#y on bit0} * (-i)^{#y on bit1} = i^{n_y - 2*y_ones}
    Complex phase = kIPow[((n_y - 2 * y_ones) % 4 + 4) % 4];
    if (z_ones & 1) phase = -phase;
    acc += std::conj(a(static_cast<Eigen::Index>(j ^ flip))) * phase *
           std::conj(a(static_cast<Eigen::Index>(j)));
  }
  return acc;
}

void check_string_width(const PureState& psi, const PauliString& s) {
  if (static_cast<int>(s.size()) != psi.n_qubits()) {
    throw DimensionError("Pauli string has " + std::to_string(s.size()) + " slots, state has " +
                         std::to_string(psi.n_qubits()) + " qubits");
  }
}

}  // namespace

Complex bilinear_form(const PureState& psi, const PauliString& s) {
  check_string_width(psi, s);
  psi.require_normalized();
  return bilinear_kernel(psi, s);
}

Complex bilinear_form_raw(const PureState& psi, const PauliString& s) {
  check_string_width(psi, s);
  return bilinear_kernel(psi, s);
}

Order1CombReport verify_comb_order1(const PauliString& s, int trials, std::uint64_t seed,
                                    double tol) {
  if (trials < 1) {
    throw InputError("trials must be >= 1");
  }
  Order1CombReport report;
  report.string = s;
  report.trials = trials;
  report.tol = tol;
  report.parity_odd = parity_is_comb(s);
  const int n = static_cast<int>(s.size());
  for (int t = 0; t < trials; ++t) {
    const PureState psi = random_haar_state(n, Rng::derive(seed, t));
    report.max_abs = std::max(report.max_abs, std::abs(bilinear_form(psi, s)));
  }
  report.passed = report.max_abs < tol;
  report.consistent_with_parity = (report.passed == report.parity_odd);
  return report;
}

Order2CombReport verify_comb_order2(int trials, std::uint64_t seed, double tol) {
  if (trials < 1) {
    throw InputError("trials must be >= 1");
  }
  Order2CombReport report;
  report.trials = trials;
  report.tol = tol;
  for (int t = 0; t < trials; ++t) {
    const PureState psi = random_haar_state(1, Rng::derive(seed, t));
    Complex sum = 0.0;
    for (Pauli mu : kMetricSupport) {
      const Complex e = bilinear_form(psi, PauliString{mu});
      sum += kMetricDiagonal[static_cast<int>(mu)] * e * e;
    }
    report.max_abs = std::max(report.max_abs, std::abs(sum));
  }
  report.passed = report.max_abs < tol;
  return report;
}

}  // namespace tanglekit
