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

#include "tanglekit/detail/dd_eval.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>

namespace tanglekit::detail {

namespace {

// Double-double value a.hi + a.lo with the usual error-free transformations
// (Dekker/Knuth; products via fma).
struct DD {
  double hi = 0.0;
  double lo = 0.0;
};

inline DD quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DD two_sum(double a, double b) {
  const double s = a + b;
  const double v = s - a;
  return {s, (a - (s - v)) + (b - v)};
}

inline DD two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DD dd_add(DD a, DD b) {
  DD s = two_sum(a.hi, b.hi);
  const DD t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DD dd_neg(DD a) { return {-a.hi, -a.lo}; }
inline DD dd_sub(DD a, DD b) { return dd_add(a, dd_neg(b)); }

inline DD dd_mul(DD a, DD b) {
  DD p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline DD dd_mul(DD a, double b) {
  DD p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}

struct DDC {
  DD re;
  DD im;
};

inline DDC ddc_from(Complex z) { return {{z.real(), 0.0}, {z.imag(), 0.0}}; }
inline Complex ddc_round(DDC z) { return {z.re.hi + z.re.lo, z.im.hi + z.im.lo}; }
inline DDC ddc_add(DDC a, DDC b) { return {dd_add(a.re, b.re), dd_add(a.im, b.im)}; }
inline DDC ddc_neg(DDC a) { return {dd_neg(a.re), dd_neg(a.im)}; }
inline DDC ddc_conj(DDC a) { return {a.re, dd_neg(a.im)}; }

inline DDC ddc_mul(DDC a, DDC b) {
  return {dd_sub(dd_mul(a.re, b.re), dd_mul(a.im, b.im)),
          dd_add(dd_mul(a.re, b.im), dd_mul(a.im, b.re))};
}

// Multiplication by i^k is a sign/swap shuffle, exact in any precision.
inline DDC ddc_mul_ipow(DDC a, int k) {
  switch (k & 3) {
    case 0: return a;
    case 1: return {dd_neg(a.im), a.re};
    case 2: return ddc_neg(a);
    default: return {a.im, dd_neg(a.re)};
  }
}

std::vector<DDC> state_to_ddc(const PureState& psi) {
  std::vector<DDC> amps(static_cast<std::size_t>(psi.dim()));
  for (Eigen::Index i = 0; i < psi.dim(); ++i) amps[static_cast<std::size_t>(i)] = ddc_from(psi.amplitude(i));
  return amps;
}

void apply_site(std::vector<DDC>& amps, int n, int qubit, const Eigen::Matrix2cd& v) {
  const std::uint64_t bit = std::uint64_t{1} << (n - 1 - qubit);
  const std::uint64_t dim = std::uint64_t{1} << n;
  const DDC v00 = ddc_from(v(0, 0)), v01 = ddc_from(v(0, 1));
  const DDC v10 = ddc_from(v(1, 0)), v11 = ddc_from(v(1, 1));
  for (std::uint64_t j = 0; j < dim; ++j) {
    if (j & bit) continue;
    const DDC a0 = amps[j];
    const DDC a1 = amps[j | bit];
    amps[j] = ddc_add(ddc_mul(v00, a0), ddc_mul(v01, a1));
    amps[j | bit] = ddc_add(ddc_mul(v10, a0), ddc_mul(v11, a1));
  }
}

// Mirrors the production bilinear kernel (same slot-to-mask bookkeeping).
DDC bilinear_ddc(const std::vector<DDC>& amps, int n, const PauliString& s) {
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
  const std::uint64_t dim = std::uint64_t{1} << n;
  DDC acc{};
  for (std::uint64_t j = 0; j < dim; ++j) {
    const int y_ones = std::popcount(j & y_mask);
    const int z_ones = std::popcount(j & z_mask);
    DDC term = ddc_mul(ddc_conj(amps[j ^ flip]), ddc_conj(amps[j]));
    term = ddc_mul_ipow(term, n_y - 2 * y_ones);
    if (z_ones & 1) term = ddc_neg(term);
    acc = ddc_add(acc, term);
  }
  return acc;
}

Complex contract_ddc(const FilterSpec& f, const std::vector<DDC>& amps) {
  const std::vector<std::string> labels = f.labels();
  const int n_labels = static_cast<int>(labels.size());
  auto label_id = [&](const std::string& name) {
    return static_cast<int>(std::find(labels.begin(), labels.end(), name) - labels.begin());
  };

  struct FactorTable {
    std::vector<int> slot_labels;
    std::vector<int> slot_pos;
    std::vector<DDC> values;
  };
  std::vector<FactorTable> tables;
  tables.reserve(f.factors.size());
  for (const auto& factor : f.factors) {
    FactorTable table;
    PauliString base(factor.size(), Pauli::I);
    for (std::size_t k = 0; k < factor.size(); ++k) {
      if (factor[k].is_fixed()) {
        base[k] = factor[k].pauli;
      } else {
        table.slot_labels.push_back(label_id(factor[k].label));
        table.slot_pos.push_back(static_cast<int>(k));
      }
    }
    const int slots = static_cast<int>(table.slot_pos.size());
    std::size_t combos = 1;
    for (int s = 0; s < slots; ++s) combos *= 3;
    table.values.resize(combos);
    for (std::size_t c = 0; c < combos; ++c) {
      PauliString instantiated = base;
      std::size_t rem = c;
      for (int s = 0; s < slots; ++s) {
        instantiated[table.slot_pos[s]] = kMetricSupport[rem % 3];
        rem /= 3;
      }
      table.values[c] = bilinear_ddc(amps, f.n_qubits, instantiated);
    }
    tables.push_back(std::move(table));
  }

  constexpr std::array<double, 3> kSupportWeight = {-1.0, 1.0, 1.0};
  std::size_t assignments = 1;
  for (int l = 0; l < n_labels; ++l) assignments *= 3;

  std::vector<int> digits(std::max(n_labels, 1), 0);
  DDC acc{};
  for (std::size_t a = 0; a < assignments; ++a) {
    std::size_t rem = a;
    for (int l = 0; l < n_labels; ++l) {
      digits[l] = static_cast<int>(rem % 3);
      rem /= 3;
    }
    double weight = 1.0;
    for (int l = 0; l < n_labels; ++l) weight *= kSupportWeight[digits[l]];
    DDC term{{1.0, 0.0}, {0.0, 0.0}};
    for (const auto& table : tables) {
      std::size_t idx = 0;
      for (std::size_t s = table.slot_labels.size(); s-- > 0;) {
        idx = idx * 3 + static_cast<std::size_t>(digits[table.slot_labels[s]]);
      }
      term = ddc_mul(term, table.values[idx]);
    }
    if (weight < 0.0) term = ddc_neg(term);
    acc = ddc_add(acc, term);
  }
  return f.prefactor * ddc_round(acc);
}

}  // namespace

Complex evaluate_extended(const FilterSpec& f, const PureState& psi) {
  return contract_ddc(f, state_to_ddc(psi));
}

Complex evaluate_extended_transformed(const FilterSpec& f, const PureState& psi,
                                      const std::vector<Eigen::Matrix2cd>& ops) {
  std::vector<DDC> amps = state_to_ddc(psi);
  for (int k = 0; k < psi.n_qubits(); ++k) {
    apply_site(amps, psi.n_qubits(), k, ops[static_cast<std::size_t>(k)]);
  }
  return contract_ddc(f, amps);
}

}  // namespace tanglekit::detail
