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

#include "tanglekit/slocc.hpp"

#include <cmath>
#include <string>

#include "tanglekit/detail/dd_eval.hpp"
#include "tanglekit/rng.hpp"

namespace tanglekit {

Eigen::Matrix2cd random_sl2(std::uint64_t seed) {
  Rng rng(seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    Eigen::Matrix2cd m;
    m << rng.next_complex_normal(), rng.next_complex_normal(), rng.next_complex_normal(),
        rng.next_complex_normal();
    const Complex det = m.determinant();
    if (std::abs(det) < 1e-6) continue;
    return m / std::sqrt(det);
  }
  throw InputError("random_sl2: could not draw a well-conditioned matrix in 100 attempts");
}

Eigen::Matrix2cd random_su2(std::uint64_t seed) {
  Rng rng(seed);
  double norm_sq = 0.0;
  Complex z1, z2;
  do {
    z1 = rng.next_complex_normal();
    z2 = rng.next_complex_normal();
    norm_sq = std::norm(z1) + std::norm(z2);
  } while (norm_sq == 0.0);
  const double inv = 1.0 / std::sqrt(norm_sq);
  Eigen::Matrix2cd u;
  u << z1 * inv, -std::conj(z2) * inv, z2 * inv, std::conj(z1) * inv;
  return u;
}

LocalOperatorTuple LocalOperatorTuple::random(int n_qubits, LocalGroup group,
                                              std::uint64_t seed) {
  LocalOperatorTuple t;
  t.ops.reserve(n_qubits);
  for (int k = 0; k < n_qubits; ++k) {
    const std::uint64_t site_seed = Rng::derive(seed, k);
    t.ops.push_back(group == LocalGroup::SL2C ? random_sl2(site_seed) : random_su2(site_seed));
  }
  return t;
}

LocalOperatorTuple LocalOperatorTuple::identity(int n_qubits) {
  LocalOperatorTuple t;
  t.ops.assign(n_qubits, Eigen::Matrix2cd::Identity());
  return t;
}

PureState apply_local(const PureState& psi, const LocalOperatorTuple& t, bool renormalize) {
  const int n = psi.n_qubits();
  if (static_cast<int>(t.ops.size()) != n) {
    throw DimensionError("operator tuple has " + std::to_string(t.ops.size()) +
                         " entries, state has " + std::to_string(n) + " qubits");
  }
  Vector amps = psi.amplitudes();
  for (int k = 0; k < n; ++k) {
    const Eigen::Matrix2cd& v = t.ops[k];
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - k);
    const std::uint64_t dim = std::uint64_t{1} << n;
    for (std::uint64_t j = 0; j < dim; ++j) {
      if (j & bit) continue;
      const auto j0 = static_cast<Eigen::Index>(j);
      const auto j1 = static_cast<Eigen::Index>(j | bit);
      const Complex a0 = amps(j0);
      const Complex a1 = amps(j1);
      amps(j0) = v(0, 0) * a0 + v(0, 1) * a1;
      amps(j1) = v(1, 0) * a0 + v(1, 1) * a1;
    }
  }
  if (renormalize && amps.norm() == 0.0) {
    throw InputError("apply_local: transformed state is the zero vector");
  }
  return PureState(n, std::move(amps), renormalize);
}

InvarianceReport invariance_check(const FilterSpec& f, const PureState& psi, LocalGroup mode,
                                  int trials, std::uint64_t seed, double tol) {
  if (trials < 1) {
    throw InputError("trials must be >= 1");
  }
  InvarianceReport report;
  report.filter_name = f.name;
  report.mode = mode;
  report.trials = trials;
  report.tol = tol;
  const FilterValue reference = evaluate(f, psi);
  report.reference_value = reference.value;
  // SL(2,C) tuples can be arbitrarily ill-conditioned; the exact cancellation
  // behind invariance then needs more than double precision (see dd_eval).
  const Complex reference_ext =
      mode == LocalGroup::SL2C ? detail::evaluate_extended(f, psi) : reference.value;

  for (int t = 0; t < trials; ++t) {
    const auto tuple =
        LocalOperatorTuple::random(psi.n_qubits(), mode, Rng::derive(seed, t));
    double deviation = 0.0;
    if (mode == LocalGroup::SL2C) {
      const Complex v = detail::evaluate_extended_transformed(f, psi, tuple.ops);
      deviation = std::abs(v - reference_ext);
    } else {
      const PureState phi = apply_local(psi, tuple, true);
      deviation = std::abs(evaluate(f, phi).modulus - reference.modulus);
    }
    report.max_deviation = std::max(report.max_deviation, deviation);
  }
  report.passed = report.max_deviation < tol;
  return report;
}

std::string class_label(FourQubitClass c) {
  switch (c) {
    case FourQubitClass::Ghz4: return "ghz4";
    case FourQubitClass::Phi2: return "phi2";
    case FourQubitClass::Phi3: return "phi3";
    case FourQubitClass::None: return "none";
    case FourQubitClass::Unclassified: return "unclassified-signature";
  }
  return "?";
}

ClassifyResult classify4(const PureState& psi, double tol) {
  if (psi.n_qubits() != 4) {
    throw DimensionError("classify4 requires a 4-qubit state, got " +
                         std::to_string(psi.n_qubits()));
  }
  ClassifyResult result;
  result.signature.tol = tol;
  const std::array<BuiltinFilter, 3> filters{BuiltinFilter::F4_1, BuiltinFilter::F4_2,
                                             BuiltinFilter::F4_3};
  for (int i = 0; i < 3; ++i) {
    result.signature.moduli[i] = evaluate(builtin(filters[i]), psi).modulus;
    result.signature.nonzero[i] = result.signature.moduli[i] > tol;
  }
  const auto& nz = result.signature.nonzero;
  if (nz[0] && nz[1] && nz[2]) {
    result.label = FourQubitClass::Ghz4;
  } else if (nz[0] && !nz[1]) {
    result.label = FourQubitClass::Phi2;
  } else if (!nz[0] && !nz[1] && nz[2]) {
    result.label = FourQubitClass::Phi3;
  } else if (!nz[0] && !nz[1] && !nz[2]) {
    result.label = FourQubitClass::None;
  } else {
    // e.g. (nonzero, nonzero, zero) or (zero, nonzero, *): signatures the
    // classification rule does not name; reported verbatim.
    result.label = FourQubitClass::Unclassified;
  }
  return result;
}

}  // namespace tanglekit
