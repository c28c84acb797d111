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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tanglekit/comb.hpp"
#include "tanglekit/qstate.hpp"

namespace tanglekit {

/// One position of a filter factor: either a fixed Pauli label or a
/// contraction index that is summed against the metric.
struct Slot {
  enum class Kind { Fixed, Contracted };

  Kind kind = Kind::Fixed;
  Pauli pauli = Pauli::I;  // meaningful when kind == Fixed
  std::string label;       // meaningful when kind == Contracted

  static Slot fixed(Pauli p) { return Slot{Kind::Fixed, p, {}}; }
  static Slot contracted(std::string name) {
    return Slot{Kind::Contracted, Pauli::I, std::move(name)};
  }
  bool is_fixed() const { return kind == Kind::Fixed; }

  friend bool operator==(const Slot&, const Slot&) = default;
};

/// An order-n filter: n factors of n_qubits slots each, evaluated on n
/// embedded copies of the state, with every contraction label paired across
/// exactly two slots and summed against the metric. `prefactor` scales the
/// final expectation value.
struct FilterSpec {
  std::string name;  // report label; "custom" for parsed specs
  int n_qubits = 0;
  double prefactor = 1.0;
  std::vector<std::vector<Slot>> factors;

  int order() const { return static_cast<int>(factors.size()); }

  /// Contraction labels in order of first appearance.
  std::vector<std::string> labels() const;
};

/// The evaluated expectation value. The modulus is the entanglement monotone;
/// the complex phase depends on the global phase of the state and is reported
/// for diagnostics only.
struct FilterValue {
  Complex value;
  double modulus = 0.0;

  static FilterValue of(Complex v) { return FilterValue{v, std::abs(v)}; }
};

/// Invariant violations as human-readable strings; empty means valid.
/// Checked: factor widths match n_qubits, order >= 1, every label appears in
/// exactly two slots, prefactor is finite and nonzero.
std::vector<std::string> validate(const FilterSpec& f);

/// Expectation value of the filter on a normalized state:
///   prefactor * sum over label assignments in {0,1,3}^L of
///     (product of metric weights) * (product of factor bilinear forms).
FilterValue evaluate(const FilterSpec& f, const PureState& psi);

/// As evaluate(), but skips the normalization check (homogeneity tests and
/// determinant-one transformed states).
FilterValue evaluate_raw(const FilterSpec& f, const PureState& psi);

/// The seven built-in filters: two per width for 2 and 3 qubits plus the
/// three 4-qubit filters of order 3, 4 and 6.
enum class BuiltinFilter { F2_1, F2_2, F3_1, F3_2, F4_1, F4_2, F4_3 };

inline constexpr std::array<BuiltinFilter, 7> kAllBuiltins{
    BuiltinFilter::F2_1, BuiltinFilter::F2_2, BuiltinFilter::F3_1, BuiltinFilter::F3_2,
    BuiltinFilter::F4_1, BuiltinFilter::F4_2, BuiltinFilter::F4_3};

FilterSpec builtin(BuiltinFilter which);
std::string builtin_name(BuiltinFilter which);
std::optional<BuiltinFilter> builtin_from_name(std::string_view name);

/// Text form: optional `p` or `p/q` prefactor followed by `*`, then factors
/// joined by `•`, each a parenthesized comma-separated slot list with tokens
/// I, X, Y, Z for fixed Paulis and #name for contraction labels. Example:
///   (#m,#n,Y,Y)•(#m,Y,#l,Y)•(Y,#n,#l,Y)
std::string to_string(const FilterSpec& f);

/// Parses the text form; throws InputError on syntax errors or when the
/// result violates an invariant (unpaired labels, ragged widths).
FilterSpec parse_filter(std::string_view text);

/// Product-state nullity over every two-block bipartition of the register.
struct BipartitionCheck {
  std::vector<int> block;  // first block (contains qubit 0); rest implied
  double max_modulus = 0.0;
  bool passed = false;
};

struct NullityReport {
  std::string filter_name;
  int trials_per_partition = 0;
  double tol = 0.0;
  std::vector<BipartitionCheck> partitions;
  bool passed = false;
};

/// Evaluates the filter on `trials` random product states for each two-block
/// bipartition; nullity on those implies nullity on all finer splits.
NullityReport nullity_suite(const FilterSpec& f, int trials, std::uint64_t seed, double tol);

}  // namespace tanglekit
