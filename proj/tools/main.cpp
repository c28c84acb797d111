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

// tanglekit command-line surface: state I/O, filter evaluation, entanglement
// monotones, verification suites, and four-qubit classification reports.
//
// Exit codes: 0 success, 1 verification failure, 2 input/parse error,
// 3 dimension error.

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tanglekit/comb.hpp"
#include "tanglekit/filter_engine.hpp"
#include "tanglekit/io.hpp"
#include "tanglekit/monotones.hpp"
#include "tanglekit/qstate.hpp"
#include "tanglekit/rng.hpp"
#include "tanglekit/slocc.hpp"

namespace {

using nlohmann::json;
using namespace tanglekit;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitDimension = 3;

struct RunConfig {
  double tol = 1e-10;
  bool tol_explicit = false;
  int trials = 500;
  std::uint64_t seed = 0;
  std::string format = "text";  // text | json

  bool json_mode() const { return format == "json"; }
};

std::string fixed9(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(9) << v;
  return out.str();
}

std::string fixed9(Complex v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(9) << v.real() << (v.imag() < 0 ? " - " : " + ")
      << std::abs(v.imag()) << "i";
  return out.str();
}

json complex_json(Complex v) { return json{{"re", v.real()}, {"im", v.imag()}}; }

/// Resolves the state argument: an explicit file path or a --catalog name.
PureState load_state(const std::string& state_file, const std::string& catalog,
                     std::string* origin) {
  if (!catalog.empty() && !state_file.empty()) {
    throw InputError("give either a state file or --catalog, not both");
  }
  if (!catalog.empty()) {
    const auto name = catalog_from_name(catalog);
    if (!name) {
      throw InputError("unknown catalog state: " + catalog);
    }
    *origin = "catalog:" + catalog_name(*name);
    return catalog_state(*name);
  }
  if (state_file.empty()) {
    throw InputError("a state file or --catalog NAME is required");
  }
  *origin = state_file;
  return read_state_file(state_file);
}

FilterSpec load_filter(const std::string& name_or_file) {
  if (const auto which = builtin_from_name(name_or_file)) {
    return builtin(*which);
  }
  return read_filter_file(name_or_file);
}

void emit(const json& doc, const RunConfig& config, const std::string& text) {
  if (config.json_mode()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

// ---------------------------------------------------------------------------
// eval

int cmd_eval(const std::string& state_arg, const std::string& catalog,
             const std::string& filter_arg, const RunConfig& config) {
  std::string origin;
  const PureState psi = load_state(state_arg, catalog, &origin);
  const FilterSpec f = load_filter(filter_arg);
  const FilterValue v = evaluate(f, psi);

  json doc{{"command", "eval"},
           {"state", origin},
           {"n_qubits", psi.n_qubits()},
           {"filter", f.name},
           {"filter_spec", to_string(f)},
           {"value", complex_json(v.value)},
           {"modulus", v.modulus}};
  std::ostringstream text;
  text << "filter:  " << f.name << "  " << to_string(f) << "\n"
       << "state:   " << origin << " (" << psi.n_qubits() << " qubits)\n"
       << "value:   " << fixed9(v.value) << "\n"
       << "modulus: " << fixed9(v.modulus) << "\n";
  emit(doc, config, text.str());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// monotone

int cmd_monotone(const std::string& state_arg, const std::string& catalog,
                 const std::string& measure, const std::string& form, const RunConfig& config) {
  std::string origin;
  const PureState psi = load_state(state_arg, catalog, &origin);

  json doc{{"command", "monotone"}, {"state", origin}, {"measure", measure}};
  std::ostringstream text;
  if (measure == "concurrence") {
    const double c = concurrence_pure(psi);
    doc["value"] = c;
    text << "concurrence: " << fixed9(c) << "\n";
  } else if (measure == "concurrence_sq") {
    const double c2 = concurrence_sq_pure(psi);
    doc["value"] = c2;
    text << "concurrence_sq: " << fixed9(c2) << "\n";
  } else if (measure == "tau3_filter") {
    const Tau3Form which = form == "f3_2" ? Tau3Form::F3_2 : Tau3Form::F3_1;
    const double t3 = tau3_filter(psi, which);
    doc["value"] = t3;
    doc["form"] = form.empty() ? "f3_1" : form;
    text << "tau3_filter: " << fixed9(t3) << "\n";
  } else if (measure == "tau3_poly") {
    const Tau3Terms terms = tau3_poly_terms(psi);
    doc["value"] = terms.value;
    doc["raw_abs"] = terms.raw_abs;
    doc["d1"] = complex_json(terms.d1);
    doc["d2"] = complex_json(terms.d2);
    doc["d3"] = complex_json(terms.d3);
    text << "tau3_poly: " << fixed9(terms.value) << "\n"
         << "raw |d1 - 2*d2 + 4*d3|: " << fixed9(terms.raw_abs) << "\n"
         << "d1: " << fixed9(terms.d1) << "\n"
         << "d2: " << fixed9(terms.d2) << "\n"
         << "d3: " << fixed9(terms.d3) << "\n";
  } else {
    throw InputError("unknown measure: " + measure);
  }
  emit(doc, config, text.str());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct CheckLine {
  std::string name;
  bool passed = false;
  double max_deviation = 0.0;
  double tol = 0.0;
  std::string detail;
};

json check_json(const CheckLine& c) {
  json j{{"name", c.name},
         {"passed", c.passed},
         {"max_deviation", c.max_deviation},
         {"tol", c.tol}};
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

std::string check_text(const CheckLine& c) {
  std::ostringstream out;
  out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": max deviation " << std::scientific
      << std::setprecision(3) << c.max_deviation << " (tol " << c.tol << ")";
  if (!c.detail.empty()) out << " " << c.detail;
  out << "\n";
  return out.str();
}

void run_comb_suite(const RunConfig& config, std::vector<CheckLine>& checks) {
  {
    const auto r =
        verify_comb_order1(PauliString{Pauli::Y}, config.trials, config.seed, config.tol);
    checks.push_back({"comb order-1 sigma_y nullity", r.passed, r.max_abs, r.tol, ""});
  }
  {
    const auto r = verify_comb_order2(config.trials, config.seed, config.tol);
    checks.push_back({"comb order-2 metric identity", r.passed, r.max_abs, r.tol, ""});
  }
  {
    // Exhaustive parity agreement for every Pauli string with N <= 3.
    int checked = 0, consistent = 0;
    double worst_null = 0.0;  // largest |value| among odd-parity strings
    for (int n = 1; n <= 3; ++n) {
      const int count = 1 << (2 * n);
      for (int code = 0; code < count; ++code) {
        PauliString s(n);
        int rem = code;
        for (int k = 0; k < n; ++k) {
          s[k] = static_cast<Pauli>(rem & 3);
          rem >>= 2;
        }
        const auto r =
            verify_comb_order1(s, config.trials, Rng::derive(config.seed, code + n), config.tol);
        ++checked;
        if (r.consistent_with_parity) ++consistent;
        if (r.parity_odd) worst_null = std::max(worst_null, r.max_abs);
      }
    }
    checks.push_back({"odd-N_y parity agreement, all strings N<=3", consistent == checked,
                      worst_null, config.tol,
                      std::to_string(consistent) + "/" + std::to_string(checked) +
                          " strings consistent"});
  }
}

void run_filter_suite(const RunConfig& config, std::vector<CheckLine>& checks) {
  for (const BuiltinFilter which : kAllBuiltins) {
    const FilterSpec f = builtin(which);
    const auto r = nullity_suite(f, config.trials, config.seed, config.tol);
    double worst = 0.0;
    for (const auto& p : r.partitions) worst = std::max(worst, p.max_modulus);
    checks.push_back({"product nullity " + f.name + " (" + std::to_string(r.partitions.size()) +
                          " bipartitions)",
                      r.passed, worst, r.tol, ""});
  }
}

void run_invariance_suite(const RunConfig& config, std::vector<CheckLine>& checks) {
  const double sl_tol = config.tol_explicit ? config.tol : 1e-8;
  const double su_tol = config.tol;
  constexpr int kStatesPerFilter = 5;
  for (const BuiltinFilter which : kAllBuiltins) {
    const FilterSpec f = builtin(which);
    double sl_dev = 0.0, su_dev = 0.0;
    bool sl_ok = true, su_ok = true;
    for (int s = 0; s < kStatesPerFilter; ++s) {
      const PureState psi =
          random_haar_state(f.n_qubits, Rng::derive(Rng::derive(config.seed, s), 101));
      const auto sl = invariance_check(f, psi, LocalGroup::SL2C, config.trials,
                                       Rng::derive(config.seed, 2 * s), sl_tol);
      const auto su = invariance_check(f, psi, LocalGroup::SU2, config.trials,
                                       Rng::derive(config.seed, 2 * s + 1), su_tol);
      sl_dev = std::max(sl_dev, sl.max_deviation);
      su_dev = std::max(su_dev, su.max_deviation);
      sl_ok = sl_ok && sl.passed;
      su_ok = su_ok && su.passed;
    }
    checks.push_back({"SL(2,C) invariance " + f.name, sl_ok, sl_dev, sl_tol,
                      std::to_string(kStatesPerFilter) + " states"});
    checks.push_back({"SU(2) modulus invariance " + f.name, su_ok, su_dev, su_tol,
                      std::to_string(kStatesPerFilter) + " states"});
  }
}

int cmd_verify(const std::string& suite, const RunConfig& config) {
  std::vector<CheckLine> checks;
  if (suite == "combs" || suite == "all") run_comb_suite(config, checks);
  if (suite == "filters" || suite == "all") run_filter_suite(config, checks);
  if (suite == "invariance" || suite == "all") run_invariance_suite(config, checks);
  if (checks.empty()) {
    throw InputError("unknown suite: " + suite + " (expected combs|filters|invariance|all)");
  }

  bool all_passed = true;
  json jchecks = json::array();
  std::ostringstream text;
  for (const auto& c : checks) {
    all_passed = all_passed && c.passed;
    jchecks.push_back(check_json(c));
    text << check_text(c);
  }
  text << "result: " << (all_passed ? "PASS" : "FAIL") << " (" << checks.size() << " checks)\n";
  json doc{{"command", "verify"},
           {"suite", suite},
           {"trials", config.trials},
           {"seed", config.seed},
           {"checks", jchecks},
           {"passed", all_passed}};
  emit(doc, config, text.str());
  return all_passed ? kExitOk : kExitVerifyFailed;
}

// ---------------------------------------------------------------------------
// classify

int cmd_classify(const std::string& state_arg, const std::string& catalog,
                 const RunConfig& config) {
  std::string origin;
  const PureState psi = load_state(state_arg, catalog, &origin);
  const double tol = config.tol_explicit ? config.tol : kSignatureTol;
  const ClassifyResult r = classify4(psi, tol);

  const char* names[3] = {"F4_1", "F4_2", "F4_3"};
  json jsig = json::array();
  std::ostringstream text;
  text << "state: " << origin << "\n";
  for (int i = 0; i < 3; ++i) {
    jsig.push_back(json{{"filter", names[i]},
                        {"modulus", r.signature.moduli[i]},
                        {"nonzero", r.signature.nonzero[i]}});
    text << names[i] << ": " << fixed9(r.signature.moduli[i]) << " ("
         << (r.signature.nonzero[i] ? "nonzero" : "zero") << ")\n";
  }
  text << "label: " << class_label(r.label) << "\n";
  json doc{{"command", "classify"},
           {"state", origin},
           {"tol", tol},
           {"signature", jsig},
           {"label", class_label(r.label)}};
  emit(doc, config, text.str());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// reduce

int cmd_reduce(const std::string& state_arg, const std::string& catalog,
               const std::vector<int>& keep, const RunConfig& config) {
  std::string origin;
  const PureState psi = load_state(state_arg, catalog, &origin);
  const DensityMatrix reduced = partial_trace(DensityMatrix::from_pure(psi), keep);

  json jrows = json::array();
  std::ostringstream text;
  text << "state: " << origin << "\n"
       << "kept qubits:";
  for (int q : keep) text << " " << q;
  text << "\nreduced density matrix (" << reduced.dim() << "x" << reduced.dim() << "):\n";
  for (Eigen::Index i = 0; i < reduced.dim(); ++i) {
    json jrow = json::array();
    text << "  ";
    for (Eigen::Index j = 0; j < reduced.dim(); ++j) {
      jrow.push_back(complex_json(reduced.matrix()(i, j)));
      text << "[" << fixed9(reduced.matrix()(i, j)) << "] ";
    }
    jrows.push_back(std::move(jrow));
    text << "\n";
  }
  json doc{{"command", "reduce"},
           {"state", origin},
           {"keep", keep},
           {"n_qubits", reduced.n_qubits()},
           {"matrix", jrows}};
  if (reduced.n_qubits() == 2) {
    const double c = wootters_concurrence(reduced);
    doc["wootters_concurrence"] = c;
    text << "wootters_concurrence: " << fixed9(c) << "\n";
  }
  emit(doc, config, text.str());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// catalog (writes the state files the other commands consume)

int cmd_catalog(const std::string& name, const std::string& output, const RunConfig& config) {
  const auto which = catalog_from_name(name);
  if (!which) {
    throw InputError("unknown catalog state: " + name);
  }
  const PureState psi = catalog_state(*which);
  if (output.empty()) {
    std::cout << state_to_json(psi);
  } else {
    write_state_file(output, psi);
    if (!config.json_mode()) {
      std::cout << "wrote " << catalog_name(*which) << " (" << psi.n_qubits() << " qubits) to "
                << output << "\n";
    }
  }
  return kExitOk;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("TANGLEKIT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InputError(std::string("TANGLEKIT_SEED is not an unsigned integer: ") + env);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tanglekit: entanglement monotones from antilinear expectation values"};
  app.require_subcommand(1);

  RunConfig config;
  std::string state_arg, catalog_arg, filter_arg, measure_arg, suite_arg, form_arg, name_arg,
      output_arg;
  std::vector<int> keep_arg;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--tol", config.tol, "tolerance for checks and zero flags")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--trials", config.trials, "random trials per check")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", config.seed, "master seed (default 0 or TANGLEKIT_SEED)");
    cmd->add_option("--format", config.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
  };
  auto add_state = [&](CLI::App* cmd) {
    cmd->add_option("state", state_arg, "state file (JSON)");
    cmd->add_option("--catalog", catalog_arg, "use a built-in catalog state instead of a file");
  };

  CLI::App* eval = app.add_subcommand("eval", "evaluate a filter expectation value on a state");
  add_state(eval);
  eval->add_option("filter", filter_arg, "built-in filter name or filter definition file");
  add_common(eval);

  CLI::App* monotone = app.add_subcommand("monotone", "compute a named entanglement measure");
  add_state(monotone);
  monotone->add_option("measure", measure_arg,
                       "concurrence|concurrence_sq|tau3_filter|tau3_poly");
  monotone->add_option("--form", form_arg, "3-tangle filter form (f3_1|f3_2)")
      ->check(CLI::IsMember({"f3_1", "f3_2"}));
  add_common(monotone);

  CLI::App* verify = app.add_subcommand("verify", "run randomized verification suites");
  verify->add_option("suite", suite_arg, "combs|filters|invariance|all")
      ->required()
      ->check(CLI::IsMember({"combs", "filters", "invariance", "all"}));
  add_common(verify);

  CLI::App* classify = app.add_subcommand("classify", "four-qubit filter signature and class");
  add_state(classify);
  add_common(classify);

  CLI::App* reduce = app.add_subcommand("reduce", "partial trace to the kept qubits");
  add_state(reduce);
  reduce->add_option("--keep", keep_arg, "qubit indices to keep, e.g. --keep 0,1")
      ->required()
      ->delimiter(',');
  add_common(reduce);

  CLI::App* catalog = app.add_subcommand("catalog", "write a catalog state as a state file");
  catalog->add_option("name", name_arg, "bell|ghz3|w3|ghz4|phi1|phi2|phi3|w4")->required();
  catalog->add_option("-o,--output", output_arg, "output path (default: stdout)");
  add_common(catalog);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion") {
      return app.exit(e);
    }
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    CLI::App* cmd = app.get_subcommands().front();
    config.tol_explicit = cmd->count("--tol") > 0;
    if (cmd->count("--seed") == 0) config.seed = default_seed();

    // With --catalog the state positional is absent, so the first positional
    // is really the filter / measure.
    auto shift_positional = [&](std::string& target, const char* what) {
      if (target.empty() && !catalog_arg.empty() && !state_arg.empty()) {
        target = state_arg;
        state_arg.clear();
      }
      if (target.empty()) {
        throw InputError(std::string(what) + " argument is required");
      }
    };

    if (cmd == eval) {
      shift_positional(filter_arg, "filter");
      return cmd_eval(state_arg, catalog_arg, filter_arg, config);
    }
    if (cmd == monotone) {
      shift_positional(measure_arg, "measure");
      return cmd_monotone(state_arg, catalog_arg, measure_arg, form_arg, config);
    }
    if (cmd == verify) return cmd_verify(suite_arg, config);
    if (cmd == classify) return cmd_classify(state_arg, catalog_arg, config);
    if (cmd == reduce) return cmd_reduce(state_arg, catalog_arg, keep_arg, config);
    if (cmd == catalog) return cmd_catalog(name_arg, output_arg, config);
    std::cerr << "error: no command\n";
    return kExitInput;
  } catch (const DimensionError& e) {
    std::cerr << "dimension error: " << e.what() << "\n";
    return kExitDimension;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
