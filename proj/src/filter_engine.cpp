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

#include "tanglekit/filter_engine.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

#include "tanglekit/rng.hpp"

namespace tanglekit {

std::vector<std::string> FilterSpec::labels() const {
  std::vector<std::string> out;
  for (const auto& factor : factors) {
    for (const auto& slot : factor) {
      if (!slot.is_fixed() && std::find(out.begin(), out.end(), slot.label) == out.end()) {
        out.push_back(slot.label);
      }
    }
  }
  return out;
}

std::vector<std::string> validate(const FilterSpec& f) {
  std::vector<std::string> violations;
  if (f.n_qubits < 1) {
    violations.push_back("n_qubits must be >= 1");
  }
  if (f.factors.empty()) {
    violations.push_back("filter has no factors (order must be >= 1)");
  }
  for (std::size_t i = 0; i < f.factors.size(); ++i) {
    if (static_cast<int>(f.factors[i].size()) != f.n_qubits) {
      violations.push_back("width mismatch: factor " + std::to_string(i + 1) + " has " +
                           std::to_string(f.factors[i].size()) + " slots, expected " +
                           std::to_string(f.n_qubits));
    }
  }
  std::map<std::string, int> label_counts;
  for (const auto& factor : f.factors) {
    for (const auto& slot : factor) {
      if (!slot.is_fixed()) ++label_counts[slot.label];
    }
  }
  for (const auto& [label, count] : label_counts) {
    if (count != 2) {
      violations.push_back("unpaired label: #" + label + " appears in " + std::to_string(count) +
                           " slots, expected 2");
    }
  }
  if (!std::isfinite(f.prefactor) || f.prefactor == 0.0) {
    violations.push_back("prefactor must be finite and nonzero");
  }
  return violations;
}

namespace {

constexpr std::array<Pauli, 3> kSupport = kMetricSupport;  // {I, X, Z}
constexpr std::array<double, 3> kSupportWeight = {-1.0, 1.0, 1.0};

void require_valid(const FilterSpec& f) {
  const auto violations = validate(f);
  if (!violations.empty()) {
    std::string msg = "invalid filter";
    for (const auto& v : violations) msg += "; " + v;
    throw InputError(msg);
  }
}

// The contraction sum factorizes per label assignment into a product of
// independent bilinear forms, so each factor is tabulated once over the
// 3^(contracted slots) instantiations it can take and the global sum walks
// 3^L assignments over table lookups.
Complex contract(const FilterSpec& f, const PureState& psi) {
  const std::vector<std::string> labels = f.labels();
  const int n_labels = static_cast<int>(labels.size());
  auto label_id = [&](const std::string& name) {
    return static_cast<int>(std::find(labels.begin(), labels.end(), name) - labels.begin());
  };

  struct FactorTable {
    std::vector<int> slot_labels;   // global label id per contracted slot
    std::vector<int> slot_pos;      // slot position per contracted slot
    std::vector<Complex> values;    // indexed by base-3 digits of its slots
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
        instantiated[table.slot_pos[s]] = kSupport[rem % 3];
        rem /= 3;
      }
      table.values[c] = bilinear_form_raw(psi, instantiated);
    }
    tables.push_back(std::move(table));
  }

  std::size_t assignments = 1;
  for (int l = 0; l < n_labels; ++l) assignments *= 3;

  std::vector<int> digits(std::max(n_labels, 1), 0);
  Complex acc = 0.0;
  for (std::size_t a = 0; a < assignments; ++a) {
    std::size_t rem = a;
    for (int l = 0; l < n_labels; ++l) {
      digits[l] = static_cast<int>(rem % 3);
      rem /= 3;
    }
    double weight = 1.0;
    for (int l = 0; l < n_labels; ++l) weight *= kSupportWeight[digits[l]];
    Complex term = weight;
    for (const auto& table : tables) {
      std::size_t idx = 0;
      for (std::size_t s = table.slot_labels.size(); s-- > 0;) {
        idx = idx * 3 + static_cast<std::size_t>(digits[table.slot_labels[s]]);
      }
      term *= table.values[idx];
    }
    acc += term;
  }
  return f.prefactor * acc;
}

void check_filter_width(const FilterSpec& f, const PureState& psi) {
  if (f.n_qubits != psi.n_qubits()) {
    throw DimensionError("filter acts on " + std::to_string(f.n_qubits) + " qubits, state has " +
                         std::to_string(psi.n_qubits()));
  }
}

}  // namespace

FilterValue evaluate(const FilterSpec& f, const PureState& psi) {
  require_valid(f);
  check_filter_width(f, psi);
  psi.require_normalized();
  return FilterValue::of(contract(f, psi));
}

FilterValue evaluate_raw(const FilterSpec& f, const PureState& psi) {
  require_valid(f);
  check_filter_width(f, psi);
  return FilterValue::of(contract(f, psi));
}

namespace {

std::vector<Slot> make_factor(std::initializer_list<const char*> tokens) {
  std::vector<Slot> factor;
  for (const char* t : tokens) {
    if (t[0] == '#') {
      factor.push_back(Slot::contracted(std::string(t + 1)));
    } else {
      switch (t[0]) {
        case 'I': factor.push_back(Slot::fixed(Pauli::I)); break;
        case 'X': factor.push_back(Slot::fixed(Pauli::X)); break;
        case 'Y': factor.push_back(Slot::fixed(Pauli::Y)); break;
        case 'Z': factor.push_back(Slot::fixed(Pauli::Z)); break;
      }
    }
  }
  return factor;
}

}  // namespace

FilterSpec builtin(BuiltinFilter which) {
  FilterSpec f;
  f.name = builtin_name(which);
  switch (which) {
    case BuiltinFilter::F2_1:
      f.n_qubits = 2;
      f.factors = {make_factor({"Y", "Y"})};
      break;
    case BuiltinFilter::F2_2:
      f.n_qubits = 2;
      f.prefactor = 1.0 / 3.0;
      f.factors = {make_factor({"#m", "#n"}), make_factor({"#m", "#n"})};
      break;
    case BuiltinFilter::F3_1:
      f.n_qubits = 3;
      f.factors = {make_factor({"#m", "Y", "Y"}), make_factor({"#m", "Y", "Y"})};
      break;
    case BuiltinFilter::F3_2:
      f.n_qubits = 3;
      f.prefactor = 1.0 / 3.0;
      f.factors = {make_factor({"#m", "#n", "#l"}), make_factor({"#m", "#n", "#l"})};
      break;
    case BuiltinFilter::F4_1:
      f.n_qubits = 4;
      f.factors = {make_factor({"#m", "#n", "Y", "Y"}), make_factor({"#m", "Y", "#l", "Y"}),
                   make_factor({"Y", "#n", "#l", "Y"})};
      break;
    case BuiltinFilter::F4_2:
      f.n_qubits = 4;
      f.factors = {make_factor({"#m", "#n", "Y", "Y"}), make_factor({"#m", "Y", "#l", "Y"}),
                   make_factor({"Y", "#n", "Y", "#t"}), make_factor({"Y", "Y", "#l", "#t"})};
      break;
    case BuiltinFilter::F4_3:
      // The order-6 filter contracts two index pairs within factors 1-2 and
      // one pair each across factors 3-4 and 5-6; the written form reuses the
      // same two Greek letters for the last four factors, which here become
      // the independent pairs (r1,t1) and (r2,t2).
      f.n_qubits = 4;
      f.prefactor = 0.5;
      f.factors = {make_factor({"#m", "#n", "Y", "Y"}),   make_factor({"#m", "#n", "Y", "Y"}),
                   make_factor({"#r1", "Y", "#t1", "Y"}), make_factor({"#r1", "Y", "#t1", "Y"}),
                   make_factor({"Y", "#r2", "#t2", "Y"}), make_factor({"Y", "#r2", "#t2", "Y"})};
      break;
  }
  return f;
}

std::string builtin_name(BuiltinFilter which) {
  switch (which) {
    case BuiltinFilter::F2_1: return "F2_1";
    case BuiltinFilter::F2_2: return "F2_2";
    case BuiltinFilter::F3_1: return "F3_1";
    case BuiltinFilter::F3_2: return "F3_2";
    case BuiltinFilter::F4_1: return "F4_1";
    case BuiltinFilter::F4_2: return "F4_2";
    case BuiltinFilter::F4_3: return "F4_3";
  }
  return "?";
}

std::optional<BuiltinFilter> builtin_from_name(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (BuiltinFilter which : kAllBuiltins) {
    if (upper == builtin_name(which)) return which;
  }
  return std::nullopt;
}

std::string to_string(const FilterSpec& f) {
  std::ostringstream out;
  if (f.prefactor != 1.0) {
    out.precision(17);
    out << f.prefactor << " * ";
  }
  for (std::size_t i = 0; i < f.factors.size(); ++i) {
    if (i > 0) out << "•";
    out << "(";
    for (std::size_t k = 0; k < f.factors[i].size(); ++k) {
      if (k > 0) out << ",";
      const Slot& slot = f.factors[i][k];
      if (slot.is_fixed()) {
        out << "IXYZ"[static_cast<int>(slot.pauli)];
      } else {
        out << "#" << slot.label;
      }
    }
    out << ")";
  }
  return out.str();
}

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool consume(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  // The factor separator is the UTF-8 bullet; '*' after the prefactor is
  // consumed separately.
  bool consume_bullet() {
    skip_ws();
    static constexpr std::string_view kBullet = "•";
    if (text.substr(pos, kBullet.size()) == kBullet) {
      pos += kBullet.size();
      return true;
    }
    return false;
  }
};

double parse_prefactor(Cursor& c) {
  c.skip_ws();
  const std::size_t start = c.pos;
  while (c.pos < c.text.size() &&
         (std::isdigit(static_cast<unsigned char>(c.text[c.pos])) || c.text[c.pos] == '.' ||
          c.text[c.pos] == '-' || c.text[c.pos] == '+' || c.text[c.pos] == 'e' ||
          c.text[c.pos] == 'E')) {
    ++c.pos;
  }
  if (c.pos == start) {
    throw InputError("filter parse error: expected a prefactor before '*'");
  }
  double num = std::stod(std::string(c.text.substr(start, c.pos - start)));
  if (c.consume('/')) {
    c.skip_ws();
    const std::size_t dstart = c.pos;
    while (c.pos < c.text.size() &&
           (std::isdigit(static_cast<unsigned char>(c.text[c.pos])) || c.text[c.pos] == '.')) {
      ++c.pos;
    }
    if (c.pos == dstart) {
      throw InputError("filter parse error: expected a denominator after '/'");
    }
    const double den = std::stod(std::string(c.text.substr(dstart, c.pos - dstart)));
    if (den == 0.0) {
      throw InputError("filter parse error: zero denominator in prefactor");
    }
    num /= den;
  }
  return num;
}

Slot parse_slot(Cursor& c) {
  c.skip_ws();
  if (c.pos >= c.text.size()) {
    throw InputError("filter parse error: unexpected end of input in a factor");
  }
  const char head = c.text[c.pos];
  if (head == '#') {
    ++c.pos;
    const std::size_t start = c.pos;
    while (c.pos < c.text.size() &&
           (std::isalnum(static_cast<unsigned char>(c.text[c.pos])) || c.text[c.pos] == '_')) {
      ++c.pos;
    }
    if (c.pos == start) {
      throw InputError("filter parse error: '#' must be followed by a label name");
    }
    return Slot::contracted(std::string(c.text.substr(start, c.pos - start)));
  }
  ++c.pos;
  switch (std::toupper(static_cast<unsigned char>(head))) {
    case 'I': return Slot::fixed(Pauli::I);
    case 'X': return Slot::fixed(Pauli::X);
    case 'Y': return Slot::fixed(Pauli::Y);
    case 'Z': return Slot::fixed(Pauli::Z);
    default:
      throw InputError(std::string("filter parse error: unknown slot token '") + head + "'");
  }
}

}  // namespace

FilterSpec parse_filter(std::string_view text) {
  Cursor c{text};
  FilterSpec f;
  f.name = "custom";

  // Optional prefactor: everything before a top-level '*'.
  const std::size_t star = text.find('*');
  const std::size_t paren = text.find('(');
  if (star != std::string_view::npos && (paren == std::string_view::npos || star < paren)) {
    f.prefactor = parse_prefactor(c);
    if (!c.consume('*')) {
      throw InputError("filter parse error: expected '*' after the prefactor");
    }
  }

  while (true) {
    if (!c.consume('(')) {
      throw InputError("filter parse error: expected '(' to open a factor");
    }
    std::vector<Slot> factor;
    while (true) {
      factor.push_back(parse_slot(c));
      if (c.consume(',')) continue;
      if (c.consume(')')) break;
      throw InputError("filter parse error: expected ',' or ')' in a factor");
    }
    f.factors.push_back(std::move(factor));
    if (c.consume_bullet()) continue;
    if (c.done()) break;
    throw InputError("filter parse error: unexpected trailing text");
  }

  f.n_qubits = static_cast<int>(f.factors.front().size());
  const auto violations = validate(f);
  if (!violations.empty()) {
    std::string msg = "filter rejected";
    for (const auto& v : violations) msg += "; " + v;
    throw InputError(msg);
  }
  return f;
}

NullityReport nullity_suite(const FilterSpec& f, int trials, std::uint64_t seed, double tol) {
  require_valid(f);
  if (trials < 1) {
    throw InputError("trials must be >= 1");
  }
  NullityReport report;
  report.filter_name = f.name.empty() ? to_string(f) : f.name;
  report.trials_per_partition = trials;
  report.tol = tol;

  const int n = f.n_qubits;
  // Two-block bipartitions, canonicalized so qubit 0 sits in the first block:
  // masks over qubits 1..n-1, excluding the full set.
  const std::uint64_t limit = std::uint64_t{1} << (n - 1);
  for (std::uint64_t m = 1; m < limit; ++m) {
    std::vector<int> block_a{0};
    std::vector<int> block_b;
    for (int q = 1; q < n; ++q) {
      if ((m >> (q - 1)) & 1u) {
        block_b.push_back(q);
      } else {
        block_a.push_back(q);
      }
    }
    const Partition partition({block_a, block_b});

    BipartitionCheck check;
    check.block = block_a;
    for (int t = 0; t < trials; ++t) {
      const PureState psi =
          random_product_state(partition, Rng::derive(Rng::derive(seed, m), t));
      check.max_modulus = std::max(check.max_modulus, evaluate(f, psi).modulus);
    }
    check.passed = check.max_modulus < tol;
    report.partitions.push_back(std::move(check));
  }
  report.passed = std::all_of(report.partitions.begin(), report.partitions.end(),
                              [](const BipartitionCheck& c) { return c.passed; });
  return report;
}

}  // namespace tanglekit
