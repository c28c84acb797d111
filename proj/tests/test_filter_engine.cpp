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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "tanglekit/filter_engine.hpp"
#include "tanglekit/qstate.hpp"
#include "tanglekit/rng.hpp"
#include "test_support.hpp"

using namespace tanglekit;

namespace {

std::map<std::string, int> label_counts(const FilterSpec& f) {
  std::map<std::string, int> counts;
  for (const auto& factor : f.factors)
    for (const auto& slot : factor)
      if (!slot.is_fixed()) ++counts[slot.label];
  return counts;
}

}  // namespace

TEST_CASE("builtin structure") {
  const FilterSpec f21 = builtin(BuiltinFilter::F2_1);
  CHECK(f21.order() == 1);
  CHECK(f21.labels().empty());
  CHECK(f21.prefactor == 1.0);
  CHECK(f21.factors[0] == std::vector<Slot>{Slot::fixed(Pauli::Y), Slot::fixed(Pauli::Y)});

  const FilterSpec f22 = builtin(BuiltinFilter::F2_2);
  CHECK(f22.order() == 2);
  CHECK(f22.labels().size() == 2);
  CHECK(f22.prefactor == doctest::Approx(1.0 / 3.0));

  const FilterSpec f41 = builtin(BuiltinFilter::F4_1);
  CHECK(f41.order() == 3);
  CHECK(f41.labels().size() == 3);
  for (const auto& [label, count] : label_counts(f41)) {
    INFO("label ", label);
    CHECK(count == 2);
  }

  const FilterSpec f42 = builtin(BuiltinFilter::F4_2);
  CHECK(f42.order() == 4);
  CHECK(f42.labels().size() == 4);

  // The order-6 filter's written form reuses two Greek letters across four
  // factors; structurally that is three independent pairs of paired labels.
  const FilterSpec f43 = builtin(BuiltinFilter::F4_3);
  CHECK(f43.order() == 6);
  CHECK(f43.prefactor == 0.5);
  CHECK(f43.labels().size() == 6);
  for (const auto& [label, count] : label_counts(f43)) {
    INFO("label ", label);
    CHECK(count == 2);
  }

  for (const BuiltinFilter which : kAllBuiltins) {
    CHECK(validate(builtin(which)).empty());
  }

  // every fixed slot in the built-ins is sigma_y
  for (const BuiltinFilter which : kAllBuiltins) {
    for (const auto& factor : builtin(which).factors)
      for (const auto& slot : factor)
        if (slot.is_fixed()) CHECK(slot.pauli == Pauli::Y);
  }
}

TEST_CASE("builtin name lookup") {
  CHECK(builtin_from_name("F4_1") == BuiltinFilter::F4_1);
  CHECK(builtin_from_name("f2_2") == BuiltinFilter::F2_2);
  CHECK(!builtin_from_name("F5_1").has_value());
}

TEST_CASE("validate flags violations") {
  FilterSpec unpaired;
  unpaired.n_qubits = 2;
  unpaired.factors = {{Slot::contracted("m"), Slot::fixed(Pauli::Y)}};
  const auto v1 = validate(unpaired);
  REQUIRE(v1.size() == 1);
  CHECK(v1[0].find("unpaired label") != std::string::npos);

  FilterSpec ragged;
  ragged.n_qubits = 4;
  ragged.factors = {{Slot::fixed(Pauli::Y), Slot::fixed(Pauli::Y), Slot::fixed(Pauli::Y)}};
  const auto v2 = validate(ragged);
  REQUIRE(!v2.empty());
  CHECK(v2[0].find("width mismatch") != std::string::npos);

  FilterSpec empty;
  empty.n_qubits = 2;
  CHECK(!validate(empty).empty());
}

TEST_CASE("reference four-qubit expectation values") {
  const PureState phi1 = catalog_state(CatalogState::Ghz4);
  const PureState phi2 = catalog_state(CatalogState::Phi2);
  const PureState phi3 = catalog_state(CatalogState::Phi3);
  const PureState w4 = catalog_state(CatalogState::W4);

  const FilterSpec f41 = builtin(BuiltinFilter::F4_1);
  CHECK(evaluate(f41, phi1).modulus == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(evaluate(f41, phi2).modulus == doctest::Approx(8.0 / 9.0).epsilon(1e-9));
  CHECK(evaluate(f41, phi3).modulus < 1e-12);

  const FilterSpec f42 = builtin(BuiltinFilter::F4_2);
  CHECK(evaluate(f42, phi1).modulus == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(evaluate(f42, phi2).modulus < 1e-12);
  CHECK(evaluate(f42, phi3).modulus < 1e-12);

  const FilterSpec f43 = builtin(BuiltinFilter::F4_3);
  CHECK(evaluate(f43, phi1).modulus == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(evaluate(f43, phi3).modulus == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(evaluate(f43, phi2).modulus < 1e-12);

  for (const BuiltinFilter which :
       {BuiltinFilter::F4_1, BuiltinFilter::F4_2, BuiltinFilter::F4_3}) {
    CHECK(evaluate(builtin(which), w4).modulus < 1e-12);
  }

  const PureState bell = catalog_state(CatalogState::Bell);
  CHECK(evaluate(builtin(BuiltinFilter::F2_1), bell).modulus ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("evaluate guards") {
  const PureState bell = catalog_state(CatalogState::Bell);
  CHECK_THROWS_AS(evaluate(builtin(BuiltinFilter::F3_1), bell), DimensionError);
  CHECK_THROWS_AS(evaluate(builtin(BuiltinFilter::F2_1), bell.scaled(2.0)), InputError);
  CHECK_NOTHROW(evaluate_raw(builtin(BuiltinFilter::F2_1), bell.scaled(2.0)));
}

TEST_CASE("homogeneity of order n in |c|^(2n)") {
  Rng rng(55);
  for (const BuiltinFilter which : kAllBuiltins) {
    const FilterSpec f = builtin(which);
    for (int t = 0; t < 10; ++t) {
      const PureState psi = random_haar_state(f.n_qubits, Rng::derive(56, 10 * t + f.order()));
      const Complex c{0.5 + rng.next_uniform(), rng.next_uniform() - 0.5};
      const double base = evaluate_raw(f, psi).modulus;
      const double scaled = evaluate_raw(f, psi.scaled(c)).modulus;
      const double expected = std::pow(std::abs(c), 2.0 * f.order()) * base;
      if (expected > 1e-14) {
        CHECK(std::abs(scaled - expected) / expected < 1e-10);
      }
    }
  }
}

TEST_CASE("permutation invariance of the symmetric filters") {
  const FilterSpec f22 = builtin(BuiltinFilter::F2_2);
  for (int t = 0; t < 30; ++t) {
    const PureState psi = random_haar_state(2, Rng::derive(60, t));
    const double base = evaluate(f22, psi).modulus;
    CHECK(std::abs(evaluate(f22, testsupport::permute_qubits(psi, {1, 0})).modulus - base) <
          1e-10);
  }

  const FilterSpec f32 = builtin(BuiltinFilter::F3_2);
  std::vector<int> perm{0, 1, 2};
  for (int t = 0; t < 15; ++t) {
    const PureState psi = random_haar_state(3, Rng::derive(61, t));
    const double base = evaluate(f32, psi).modulus;
    std::sort(perm.begin(), perm.end());
    do {
      CHECK(std::abs(evaluate(f32, testsupport::permute_qubits(psi, perm)).modulus - base) <
            1e-10);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST_CASE("two- and three-qubit cross-filter identities") {
  const FilterSpec f21 = builtin(BuiltinFilter::F2_1);
  const FilterSpec f22 = builtin(BuiltinFilter::F2_2);
  for (int t = 0; t < 500; ++t) {
    const PureState psi = random_haar_state(2, Rng::derive(62, t));
    const double c = evaluate(f21, psi).modulus;
    CHECK(std::abs(evaluate(f22, psi).modulus - c * c) < 1e-9);
  }

  const FilterSpec f31 = builtin(BuiltinFilter::F3_1);
  const FilterSpec f32 = builtin(BuiltinFilter::F3_2);
  for (int t = 0; t < 500; ++t) {
    const PureState psi = random_haar_state(3, Rng::derive(63, t));
    CHECK(std::abs(evaluate(f31, psi).modulus - evaluate(f32, psi).modulus) < 1e-9);
  }
}

TEST_CASE("contraction engine matches the quadruple-sum oracle") {
  for (const BuiltinFilter which : kAllBuiltins) {
    const FilterSpec f = builtin(which);
    for (int t = 0; t < 10; ++t) {
      const PureState psi = random_haar_state(f.n_qubits, Rng::derive(64, 100 * f.order() + t));
      const Complex engine = evaluate(f, psi).value;
      const Complex oracle = testsupport::filter_oracle(f, psi);
      INFO(f.name, " trial ", t);
      CHECK(std::abs(engine - oracle) < 1e-12);
    }
  }
}

TEST_CASE("serialization round trip") {
  for (const BuiltinFilter which : kAllBuiltins) {
    const FilterSpec f = builtin(which);
    const FilterSpec parsed = parse_filter(to_string(f));
    CHECK(validate(parsed).empty());
    CHECK(parsed.order() == f.order());
    for (int t = 0; t < 5; ++t) {
      const PureState psi = random_haar_state(f.n_qubits, Rng::derive(65, t));
      CHECK(std::abs(evaluate(parsed, psi).value - evaluate(f, psi).value) < 1e-14);
    }
  }
}

TEST_CASE("parsing the documented text form") {
  const FilterSpec f = parse_filter("(#m,#n,Y,Y)•(#m,Y,#l,Y)•(Y,#n,#l,Y)");
  CHECK(f.n_qubits == 4);
  CHECK(f.order() == 3);
  CHECK(f.prefactor == 1.0);
  const FilterSpec f41 = builtin(BuiltinFilter::F4_1);
  for (int t = 0; t < 5; ++t) {
    const PureState psi = random_haar_state(4, Rng::derive(66, t));
    CHECK(std::abs(evaluate(f, psi).value - evaluate(f41, psi).value) < 1e-14);
  }

  const FilterSpec g = parse_filter("1/3 * (#m,#n)•(#m,#n)");
  CHECK(g.prefactor == doctest::Approx(1.0 / 3.0));
  const FilterSpec g2 = parse_filter("0.5 * (Y,Y)");
  CHECK(g2.prefactor == 0.5);
  const FilterSpec ws = parse_filter("  ( #m , Y )\n• ( #m , Y )  ");
  CHECK(ws.order() == 2);

  // a label may pair up within a single factor
  const FilterSpec same = parse_filter("(#m,#m)");
  CHECK(validate(same).empty());
  for (int t = 0; t < 5; ++t) {
    const PureState psi = random_haar_state(2, Rng::derive(67, t));
    CHECK(std::abs(evaluate(same, psi).value - testsupport::filter_oracle(same, psi)) < 1e-12);
  }
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(parse_filter("(#m,Y)"), InputError);            // unpaired label
  CHECK_THROWS_AS(parse_filter("(#m,#m,#m)"), InputError);        // tripled label
  CHECK_THROWS_AS(parse_filter("(Y,Y)•(Y)"), InputError);    // ragged widths
  CHECK_THROWS_AS(parse_filter("(Q,Y)"), InputError);             // unknown token
  CHECK_THROWS_AS(parse_filter("(Y,Y"), InputError);              // unclosed
  CHECK_THROWS_AS(parse_filter("(#,Y)"), InputError);             // empty label
  CHECK_THROWS_AS(parse_filter("1/0 * (Y,Y)"), InputError);       // zero denominator
  CHECK_THROWS_AS(parse_filter("(Y,Y) trailing"), InputError);
  CHECK_THROWS_AS(parse_filter(""), InputError);
}

TEST_CASE("nullity suite across bipartitions") {
  const auto r21 = nullity_suite(builtin(BuiltinFilter::F2_1), 500, 7, 1e-10);
  CHECK(r21.passed);
  CHECK(r21.partitions.size() == 1);

  const auto r31 = nullity_suite(builtin(BuiltinFilter::F3_1), 200, 8, 1e-10);
  CHECK(r31.passed);
  CHECK(r31.partitions.size() == 3);

  const auto r41 = nullity_suite(builtin(BuiltinFilter::F4_1), 200, 9, 1e-10);
  CHECK(r41.passed);
  CHECK(r41.partitions.size() == 7);  // includes both pair-pair splits
  int pair_pair = 0;
  for (const auto& p : r41.partitions) {
    if (p.block.size() == 2) ++pair_pair;
    CHECK(p.passed);
  }
  CHECK(pair_pair == 3);  // {0,1}, {0,2}, {0,3} against their complements
}

TEST_CASE("a non-filter operator fails the nullity suite") {
  // sigma_z x sigma_z is no filter: product states witness nonzero values
  FilterSpec zz;
  zz.name = "ZZ";
  zz.n_qubits = 2;
  zz.factors = {{Slot::fixed(Pauli::Z), Slot::fixed(Pauli::Z)}};
  const auto r = nullity_suite(zz, 50, 10, 1e-10);
  CHECK(!r.passed);
  CHECK(r.partitions[0].max_modulus > 1e-3);
}
