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

#include <complex>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "tanglekit/errors.hpp"

namespace tanglekit {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Register widths are capped at desk scale; dense vectors only.
inline constexpr int kMaxQubits = 12;

/// Normalization tolerance enforced by operations that require unit states.
inline constexpr double kNormTol = 1e-9;

/// Pure state of an N-qubit register as a dense amplitude vector.
///
/// Index convention: qubit 0 is the leftmost tensor factor and therefore the
/// MOST significant bit of the basis-state index. The ket |1000> of a 4-qubit
/// register is basis index 8. All modules and file formats share this
/// convention.
class PureState {
 public:
  /// Builds a state from 2^n_qubits amplitudes. With normalize = true the
  /// vector is rescaled to unit norm (rejecting the zero vector); with
  /// normalize = false the amplitudes are stored as given.
  PureState(int n_qubits, Vector amplitudes, bool normalize);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return amps_.size(); }
  const Vector& amplitudes() const { return amps_; }
  Complex amplitude(Eigen::Index basis_index) const { return amps_(basis_index); }

  double norm() const { return amps_.norm(); }
  bool is_normalized(double tol = kNormTol) const;

  /// Throws InputError unless the state has unit norm within tol.
  void require_normalized(double tol = kNormTol) const;

  PureState normalized() const;
  PureState scaled(Complex factor) const;
  PureState conjugated() const;

  /// Bit of `basis_index` carried by qubit k under the q0-most-significant
  /// convention.
  static int qubit_bit(std::uint64_t basis_index, int n_qubits, int qubit) {
    return static_cast<int>((basis_index >> (n_qubits - 1 - qubit)) & 1u);
  }

 private:
  int n_qubits_;
  Vector amps_;
};

/// Checked constructor mirroring the PureState invariants; see the class doc
/// for the index convention.
PureState make_state(int n_qubits, Vector amplitudes, bool normalize);

/// Hermitian, unit-trace, positive semidefinite operator on an N-qubit
/// register. Construction validates Hermiticity and trace to 1e-10 and the
/// spectrum down to -1e-10 (round-off slack for square-root pipelines).
class DensityMatrix {
 public:
  DensityMatrix(int n_qubits, Matrix matrix);

  static DensityMatrix from_pure(const PureState& psi);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }

  static constexpr double kHermitianTol = 1e-10;
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kPositivityTol = -1e-10;

 private:
  int n_qubits_;
  Matrix m_;
};

/// Disjoint nonempty blocks of qubit indices covering {0, ..., N-1}.
struct Partition {
  explicit Partition(std::vector<std::vector<int>> blocks);

  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  int n_qubits() const { return n_qubits_; }

 private:
  std::vector<std::vector<int>> blocks_;  // each block sorted ascending
  int n_qubits_;
};

/// Named states used throughout the test and verification surface. Phi1 is
/// the four-qubit GHZ state, so Ghz4 doubles as that name.
enum class CatalogState { Bell, Ghz3, W3, Ghz4, W4, Phi2, Phi3 };

PureState catalog_state(CatalogState name);

/// Case-insensitive lookup: "bell", "ghz3", "w3", "ghz4", "phi1" (alias of
/// ghz4), "w4", "phi2", "phi3". Returns nullopt for unknown names.
std::optional<CatalogState> catalog_from_name(std::string_view name);
std::string catalog_name(CatalogState name);

/// Kronecker-style composition; qubits of `a` come before (more significant
/// than) qubits of `b`.
PureState tensor_product(const PureState& a, const PureState& b);

/// Reduced density matrix on the kept qubits (ascending original order).
/// Throws DimensionError for an empty, repeated, or out-of-range keep set.
DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<int> keep);

/// Normalized state drawn from the unitarily invariant measure: i.i.d.
/// complex Gaussian amplitudes, then normalization. Deterministic per seed.
PureState random_haar_state(int n_qubits, std::uint64_t seed);

/// Independent Haar-random states per partition block, composed so that each
/// block's qubits land at their original positions (blocks may interleave).
PureState random_product_state(const Partition& partition, std::uint64_t seed);

}  // namespace tanglekit
