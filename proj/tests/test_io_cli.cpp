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

#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "tanglekit/io.hpp"
#include "tanglekit/qstate.hpp"
#include "tanglekit/rng.hpp"

using namespace tanglekit;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

fs::path temp_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "tanglekit_test";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args, const std::string& env = "") {
  const fs::path out_file = temp_dir() / "cli_out.txt";
  const std::string cmd = env + (env.empty() ? "" : " ") + std::string(TANGLEKIT_CLI_PATH) +
                          " " + args + " > " + out_file.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WEXITSTATUS(raw);
  std::ifstream in(out_file);
  std::ostringstream buf;
  buf << in.rdbuf();
  r.out = buf.str();
  return r;
}

}  // namespace

TEST_CASE("state file round trip keeps full precision") {
  for (int t = 0; t < 20; ++t) {
    const PureState psi = random_haar_state(1 + (t % 4), Rng::derive(90, t));
    const PureState back = parse_state_json(state_to_json(psi));
    REQUIRE(back.n_qubits() == psi.n_qubits());
    for (Eigen::Index i = 0; i < psi.dim(); ++i) {
      const double denom = std::max(std::abs(psi.amplitude(i)), 1e-300);
      CHECK(std::abs(back.amplitude(i) - psi.amplitude(i)) / denom < 1e-15);
    }
  }
}

TEST_CASE("state files on disk") {
  const fs::path p = temp_dir() / "bell.state";
  write_state_file(p, catalog_state(CatalogState::Bell));
  const PureState bell = read_state_file(p);
  CHECK(bell.n_qubits() == 2);
  CHECK(std::abs(bell.amplitude(0) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK_THROWS_AS(read_state_file(temp_dir() / "missing.state"), InputError);
}

TEST_CASE("state parser rejects malformed documents") {
  CHECK_THROWS_AS(parse_state_json("not json"), InputError);
  CHECK_THROWS_AS(parse_state_json("{}"), InputError);
  CHECK_THROWS_AS(parse_state_json(R"({"n_qubits": 1})"), InputError);
  CHECK_THROWS_AS(parse_state_json(R"({"n_qubits": 1, "amplitudes": [[1,0]]})"), InputError);
  CHECK_THROWS_AS(parse_state_json(R"({"n_qubits": 1, "amplitudes": [[1,0],[0]]})"), InputError);
  CHECK_THROWS_AS(parse_state_json(R"({"n_qubits": 0, "amplitudes": []})"), InputError);
  CHECK_THROWS_AS(parse_state_json(R"({"n_qubits": 40, "amplitudes": []})"), InputError);
  // unknown fields are fine
  CHECK_NOTHROW(parse_state_json(R"({"n_qubits":1,"amplitudes":[[1,0],[0,0]],"extra":3})"));
}

TEST_CASE("filter files") {
  const fs::path p = temp_dir() / "f41.filter";
  {
    std::ofstream out(p);
    out << "(#m,#n,Y,Y)•(#m,Y,#l,Y)•(Y,#n,#l,Y)\n";
  }
  const FilterSpec f = read_filter_file(p);
  CHECK(f.n_qubits == 4);
  CHECK(f.order() == 3);

  const fs::path bad = temp_dir() / "bad.filter";
  {
    std::ofstream out(bad);
    out << "(#m,Y)\n";
  }
  CHECK_THROWS_AS(read_filter_file(bad), InputError);
}

TEST_CASE("cli: eval reproduces the reference values") {
  auto phi1 = run_cli("eval --catalog phi1 F4_1");
  CHECK(phi1.exit_code == 0);
  CHECK(phi1.out.find("modulus: 1.000000000") != std::string::npos);

  auto phi2 = run_cli("eval --catalog phi2 F4_1");
  CHECK(phi2.exit_code == 0);
  CHECK(phi2.out.find("modulus: 0.888888889") != std::string::npos);

  auto w4 = run_cli("eval --catalog w4 F4_2");
  CHECK(w4.exit_code == 0);
  CHECK(w4.out.find("modulus: 0.000000000") != std::string::npos);
}

TEST_CASE("cli: eval through a state file and a filter file") {
  const fs::path state = temp_dir() / "phi3.state";
  auto wrote = run_cli("catalog phi3 -o " + state.string());
  CHECK(wrote.exit_code == 0);

  auto ev = run_cli("eval " + state.string() + " F4_3");
  CHECK(ev.exit_code == 0);
  CHECK(ev.out.find("modulus: 1.000000000") != std::string::npos);

  const fs::path filter = temp_dir() / "yy.filter";
  {
    std::ofstream out(filter);
    out << "(Y,Y,Y,Y)";
  }
  auto custom = run_cli("eval " + state.string() + " " + filter.string());
  CHECK(custom.exit_code == 0);
}

TEST_CASE("cli: exit code contract") {
  CHECK(run_cli("eval --catalog ghz3 F4_1").exit_code == 3);          // width mismatch
  CHECK(run_cli("eval missing.state F2_1").exit_code == 2);           // unreadable state
  CHECK(run_cli("eval --catalog nope F2_1").exit_code == 2);          // unknown catalog
  CHECK(run_cli("eval --catalog bell missing.filter").exit_code == 2);
  CHECK(run_cli("monotone --catalog ghz3 concurrence").exit_code == 3);
  CHECK(run_cli("reduce --catalog bell --keep 5").exit_code == 3);
  CHECK(run_cli("nonsense").exit_code == 2);

  const fs::path unnorm = temp_dir() / "unnorm.state";
  {
    std::ofstream out(unnorm);
    out << R"({"n_qubits": 1, "amplitudes": [[2.0, 0.0], [0.0, 0.0]]})";
  }
  CHECK(run_cli("eval " + unnorm.string() + " F2_1").exit_code == 3);  // width first
  CHECK(run_cli("monotone " + unnorm.string() + " concurrence").exit_code == 3);
  const fs::path unnorm2 = temp_dir() / "unnorm2.state";
  {
    std::ofstream out(unnorm2);
    out << R"({"n_qubits": 2, "amplitudes": [[2,0],[0,0],[0,0],[0,0]]})";
  }
  CHECK(run_cli("eval " + unnorm2.string() + " F2_1").exit_code == 2);  // unnormalized
}

TEST_CASE("cli: monotones") {
  auto bell = run_cli("monotone --catalog bell concurrence");
  CHECK(bell.exit_code == 0);
  CHECK(bell.out.find("concurrence: 1.000000000") != std::string::npos);

  auto ghz3 = run_cli("monotone --catalog ghz3 tau3_poly");
  CHECK(ghz3.exit_code == 0);
  CHECK(ghz3.out.find("tau3_poly: 1.000000000") != std::string::npos);
  CHECK(ghz3.out.find("d1: 0.250000000") != std::string::npos);

  auto w3 = run_cli("monotone --catalog w3 tau3_filter --form f3_2");
  CHECK(w3.exit_code == 0);
  CHECK(w3.out.find("tau3_filter: 0.000000000") != std::string::npos);
}

TEST_CASE("cli: classify") {
  auto phi1 = run_cli("classify --catalog phi1");
  CHECK(phi1.exit_code == 0);
  CHECK(phi1.out.find("label: ghz4") != std::string::npos);
  CHECK(phi1.out.find("F4_3: 0.500000000") != std::string::npos);

  auto phi3 = run_cli("classify --catalog phi3");
  CHECK(phi3.out.find("label: phi3") != std::string::npos);

  auto w4 = run_cli("classify --catalog w4");
  CHECK(w4.out.find("label: none") != std::string::npos);
}

TEST_CASE("cli: reduce") {
  auto marginal = run_cli("reduce --catalog phi1 --keep 0");
  CHECK(marginal.exit_code == 0);
  CHECK(marginal.out.find("0.500000000") != std::string::npos);

  auto pair = run_cli("reduce --catalog phi2 --keep 0,1");
  CHECK(pair.exit_code == 0);
  CHECK(pair.out.find("wootters_concurrence: 0.000000000") != std::string::npos);

  // a Bell pair inside a 3-qubit register keeps its concurrence
  const fs::path bell3 = temp_dir() / "bell3.state";
  write_state_file(bell3, tensor_product(catalog_state(CatalogState::Bell),
                                         make_state(1, Vector::Unit(2, 0), false)));
  auto kept = run_cli("reduce " + bell3.string() + " --keep 0,1");
  CHECK(kept.exit_code == 0);
  CHECK(kept.out.find("wootters_concurrence: 1.000000000") != std::string::npos);
}

TEST_CASE("cli: verify suites pass at small scale") {
  CHECK(run_cli("verify combs --trials 60").exit_code == 0);
  CHECK(run_cli("verify filters --trials 25").exit_code == 0);
  CHECK(run_cli("verify invariance --trials 10").exit_code == 0);

  auto a = run_cli("verify filters --trials 10 --seed 3 --format json");
  auto b = run_cli("verify filters --trials 10 --seed 3 --format json");
  CHECK(a.out == b.out);
}

TEST_CASE("cli: json output round-trips and is deterministic") {
  auto a = run_cli("eval --catalog phi2 F4_1 --format json");
  REQUIRE(a.exit_code == 0);
  const json doc = json::parse(a.out);
  CHECK(doc["command"] == "eval");
  CHECK(doc["modulus"].get<double>() == doctest::Approx(8.0 / 9.0).epsilon(1e-12));
  CHECK(doc["value"]["re"].get<double>() == doctest::Approx(8.0 / 9.0).epsilon(1e-12));
  CHECK(json::parse(json::parse(a.out).dump()) == doc);

  auto b = run_cli("eval --catalog phi2 F4_1 --format json");
  CHECK(a.out == b.out);

  auto v = run_cli("verify combs --trials 40 --format json");
  REQUIRE(v.exit_code == 0);
  const json vdoc = json::parse(v.out);
  CHECK(vdoc["passed"].get<bool>());
  CHECK(vdoc["checks"].is_array());
  CHECK(vdoc["checks"].size() == 3);

  auto c = run_cli("classify --catalog phi2 --format json");
  const json cdoc = json::parse(c.out);
  CHECK(cdoc["label"] == "phi2");
  CHECK(cdoc["signature"].size() == 3);
}

TEST_CASE("cli: seed handling") {
  auto a = run_cli("verify combs --trials 30 --format json");
  auto b = run_cli("verify combs --trials 30 --format json", "TANGLEKIT_SEED=123");
  auto c = run_cli("verify combs --trials 30 --seed 7 --format json", "TANGLEKIT_SEED=123");
  CHECK(json::parse(a.out)["seed"].get<std::uint64_t>() == 0);
  CHECK(json::parse(b.out)["seed"].get<std::uint64_t>() == 123);
  CHECK(json::parse(c.out)["seed"].get<std::uint64_t>() == 7);  // flag wins
  CHECK(run_cli("verify combs --trials 5", "TANGLEKIT_SEED=abc").exit_code == 2);
}
