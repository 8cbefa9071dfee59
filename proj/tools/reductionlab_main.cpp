// Command-line front end over the reductionlab C API.
//
// Exit codes: 0 ok, 1 usage, 2 missing file, 3 parse error, 4 validation
// error, 5 zero-probability outcome, 6 a check exceeded its tolerance,
// 7 internal error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "reductionlab.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitChecksFailed = 6;

struct Flags {
  std::optional<double> tolerance;
  bool json = false;
  bool timing = false;
};

struct StringDeleter {
  void operator()(char* s) const { rl_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct ModelDeleter {
  void operator()(rl_model* m) const { rl_model_free(m); }
};
struct StateDeleter {
  void operator()(rl_state* s) const { rl_state_free(s); }
};
struct ScenarioDeleter {
  void operator()(rl_scenario* s) const { rl_scenario_free(s); }
};

int report_error(rl_status status) {
  std::cerr << "error: " << rl_last_error() << "\n";
  return static_cast<int>(status);
}

// --tolerance wins over REDUCTIONLAB_TOL; both override the operator tolerance.
std::optional<rl_options> make_options(const Flags& flags) {
  rl_options opts;
  rl_options_default(&opts);
  opts.timing = flags.timing ? 1 : 0;
  if (flags.tolerance) {
    opts.tol_op = *flags.tolerance;
  } else if (const char* env = std::getenv("REDUCTIONLAB_TOL"); env && *env) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0)) {
      std::cerr << "error: REDUCTIONLAB_TOL must be a positive number, got '" << env << "'\n";
      return std::nullopt;
    }
    opts.tol_op = v;
  }
  return opts;
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss << std::setprecision(15) << v;
  return ss.str();
}

void print_checks(const Json& checks) {
  std::cout << std::left << std::setw(26) << "check" << std::setw(6) << "pass" << std::setw(26) << "max_deviation"
            << "tolerance\n";
  for (const auto& c : checks) {
    std::cout << std::left << std::setw(26) << c["check"].get<std::string>() << std::setw(6)
              << (c["pass"].get<bool>() ? "yes" : "NO") << std::setw(26) << fmt(c["max_deviation"].get<double>())
              << fmt(c["tolerance"].get<double>());
    if (c.contains("elapsed_ms")) std::cout << "  (" << fmt(c["elapsed_ms"].get<double>()) << " ms)";
    std::cout << "\n";
  }
}

void print_matrix(const Json& m, const std::string& indent = "  ") {
  for (const auto& row : m) {
    std::cout << indent;
    const char* sep = "";
    for (const auto& z : row) {
      std::cout << sep << "(" << fmt(z[0].get<double>()) << ", " << fmt(z[1].get<double>()) << ")";
      sep = " ";
    }
    std::cout << "\n";
  }
}

void print_distribution(const Json& d, const std::string& indent = "  ") {
  for (const auto& e : d)
    std::cout << indent << fmt(e["outcome"].get<double>()) << ": " << fmt(e["probability"].get<double>()) << "\n";
}

void print_joint(const Json& j) {
  for (const auto& e : j)
    std::cout << "  (" << fmt(e["a"].get<double>()) << ", " << fmt(e["x"].get<double>())
              << "): " << fmt(e["probability"].get<double>()) << "\n";
}

int cmd_verify(const std::string& path, const Flags& flags) {
  const auto opts = make_options(flags);
  if (!opts) return RL_ERR_USAGE;
  rl_model* raw = nullptr;
  if (auto st = rl_model_load(path.c_str(), &raw); st != RL_OK) return report_error(st);
  std::unique_ptr<rl_model, ModelDeleter> model(raw);

  char* out = nullptr;
  int pass = 0;
  if (auto st = rl_model_verify(model.get(), &*opts, &out, &pass); st != RL_OK) return report_error(st);
  OwnedString text(out);
  if (flags.json) {
    std::cout << text.get();
  } else {
    const Json doc = Json::parse(text.get());
    std::cout << "model " << (doc["model"].get<std::string>().empty() ? path : doc["model"].get<std::string>())
              << " (object dim " << doc["object_dim"] << ", apparatus dim " << doc["apparatus_dim"] << ")\n";
    print_checks(doc["checks"]);
    const Json& pp = doc["projection_postulate"];
    if (pp.is_null()) {
      std::cout << "projection postulate: not classified (model does not measure its observable)\n";
    } else {
      std::cout << "projection postulate: " << (pp["projective"].get<bool>() ? "satisfied" : "violated")
                << " (max deviation " << fmt(pp["max_deviation"].get<double>()) << ")\n";
    }
    std::cout << (pass ? "PASS" : "FAIL") << "\n";
  }
  return pass ? 0 : kExitChecksFailed;
}

int cmd_reduce(const std::string& path, const std::string& state_spec, double outcome, const Flags& flags) {
  rl_model* raw = nullptr;
  if (auto st = rl_model_load(path.c_str(), &raw); st != RL_OK) return report_error(st);
  std::unique_ptr<rl_model, ModelDeleter> model(raw);

  rl_state* raw_state = nullptr;
  if (auto st = rl_state_parse(state_spec.c_str(), rl_model_object_dim(model.get()), &raw_state); st != RL_OK)
    return report_error(st);
  std::unique_ptr<rl_state, StateDeleter> rho(raw_state);

  char* out = nullptr;
  double p = 0.0;
  if (auto st = rl_reduce(model.get(), rho.get(), outcome, &out, &p, nullptr); st != RL_OK) return report_error(st);
  OwnedString text(out);
  if (flags.json) {
    std::cout << text.get();
  } else {
    const Json doc = Json::parse(text.get());
    std::cout << "outcome " << fmt(outcome) << "\nprobability " << fmt(p) << "\nreduced state:\n";
    print_matrix(doc["state"]);
  }
  return 0;
}

int cmd_entangled(const std::string& path, const Flags& flags) {
  const auto opts = make_options(flags);
  if (!opts) return RL_ERR_USAGE;
  rl_scenario* raw = nullptr;
  if (auto st = rl_scenario_load(path.c_str(), &raw); st != RL_OK) return report_error(st);
  std::unique_ptr<rl_scenario, ScenarioDeleter> scenario(raw);

  char* out = nullptr;
  int pass = 0;
  if (auto st = rl_entangled(scenario.get(), &*opts, &out, &pass); st != RL_OK) return report_error(st);
  OwnedString text(out);
  if (flags.json) {
    std::cout << text.get();
  } else {
    const Json doc = Json::parse(text.get());
    std::cout << "joint distribution (formula):\n";
    print_joint(doc["formula_joint"]);
    if (!doc["oracle_joint"].is_null()) {
      std::cout << "joint distribution (apparatus oracle):\n";
      print_joint(doc["oracle_joint"]);
      std::cout << "total variation formula vs oracle: " << fmt(doc["formula_oracle_tv"].get<double>()) << "\n";
    }
    std::cout << "prior state:\n";
    print_matrix(doc["prior_state"]);
    for (const auto& post : doc["posteriors"]) {
      std::cout << "posterior given a = " << fmt(post["outcome"].get<double>()) << " (probability "
                << fmt(post["probability"].get<double>()) << "):\n";
      print_matrix(post["state"]);
      std::cout << "  conditional of X:\n";
      print_distribution(post["conditional"], "    ");
    }
    if (doc["independent"].get<bool>()) std::cout << "outcomes are independent: every conditional equals the marginal\n";
    print_checks(doc["checks"]);
    std::cout << (pass ? "PASS" : "FAIL") << "\n";
  }
  return pass ? 0 : kExitChecksFailed;
}

// Accepts "lo..hi", "lo:hi", "lo-hi" or a single value.
bool parse_dims(const std::string& text, std::size_t& lo, std::size_t& hi) {
  std::size_t pos = text.find("..");
  std::size_t skip = 2;
  if (pos == std::string::npos) {
    pos = text.find_first_of(":-");
    skip = 1;
  }
  try {
    std::size_t used = 0;
    if (pos == std::string::npos) {
      lo = hi = std::stoul(text, &used);
      return used == text.size();
    }
    const std::string a = text.substr(0, pos);
    const std::string b = text.substr(pos + skip);
    lo = std::stoul(a, &used);
    if (used != a.size()) return false;
    hi = std::stoul(b, &used);
    return used == b.size();
  } catch (const std::exception&) {
    return false;
  }
}

int cmd_sweep(std::uint64_t seed, long long trials, const std::string& dims, const Flags& flags) {
  const auto opts = make_options(flags);
  if (!opts) return RL_ERR_USAGE;
  if (trials < 1) {
    std::cerr << "error: --trials must be at least 1\n";
    return RL_ERR_USAGE;
  }
  std::size_t lo = 0;
  std::size_t hi = 0;
  if (!parse_dims(dims, lo, hi)) {
    std::cerr << "error: --dims expects lo..hi, got '" << dims << "'\n";
    return RL_ERR_USAGE;
  }
  char* out = nullptr;
  int pass = 0;
  if (auto st = rl_sweep(seed, static_cast<std::size_t>(trials), lo, hi, &*opts, &out, &pass); st != RL_OK)
    return report_error(st);
  OwnedString text(out);
  if (flags.json) {
    std::cout << text.get();
  } else {
    std::cout << "sweep seed " << seed << ", " << trials << " trials, dims " << lo << ".." << hi << "\n";
    print_checks(Json::parse(text.get())["checks"]);
    std::cout << (pass ? "PASS" : "FAIL") << "\n";
  }
  return pass ? 0 : kExitChecksFailed;
}

int cmd_export_zoo(const std::string& out_dir, const std::string& only) {
  char* names_raw = nullptr;
  if (auto st = rl_zoo_names(&names_raw); st != RL_OK) return report_error(st);
  const Json names = Json::parse(OwnedString(names_raw).get());

  bool found = false;
  for (const auto& entry : names) {
    const std::string name = entry.get<std::string>();
    if (!only.empty() && name != only) continue;
    found = true;
    rl_model* raw = nullptr;
    if (auto st = rl_model_zoo(name.c_str(), &raw); st != RL_OK) return report_error(st);
    std::unique_ptr<rl_model, ModelDeleter> model(raw);
    char* text_raw = nullptr;
    if (auto st = rl_model_export(model.get(), &text_raw); st != RL_OK) return report_error(st);
    OwnedString text(text_raw);
    if (out_dir.empty()) {
      std::cout << text.get();
      continue;
    }
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    const auto path = std::filesystem::path(out_dir) / (name + ".json");
    std::ofstream f(path, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << path.string() << "\n";
      return RL_ERR_NOT_FOUND;
    }
    f << text.get();
    std::cout << path.string() << "\n";
  }
  if (!found) {
    std::cerr << "error: unknown zoo model '" << only << "'\n";
    return RL_ERR_USAGE;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reductionlab: measurement models and state reduction without the projection postulate"};
  app.require_subcommand(1);
  app.set_version_flag("--version", rl_version());

  Flags flags;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tolerance", flags.tolerance, "operator tolerance (overrides REDUCTIONLAB_TOL)")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--json", flags.json, "machine-readable output");
    sub->add_flag("--timing", flags.timing, "include elapsed milliseconds in reports");
  };

  std::string model_path;
  auto* verify = app.add_subcommand("verify", "run the structural checks on a model file");
  verify->add_option("model", model_path, "model file")->required();
  add_common(verify);

  std::string state_spec;
  double outcome = 0.0;
  auto* reduce = app.add_subcommand("reduce", "reduced object state for one outcome");
  reduce->add_option("model", model_path, "model file")->required();
  reduce->add_option("--state", state_spec, "input state: k, +, -, +i, -i, uniform, mixed, random:SEED, @file")
      ->required();
  reduce->add_option("--outcome", outcome, "measurement outcome")->required();
  add_common(reduce);

  std::string scenario_path;
  auto* entangled = app.add_subcommand("entangled", "joint statistics and Bayes states of an entangled pair");
  entangled->add_option("scenario", scenario_path, "scenario file")->required();
  add_common(entangled);

  std::uint64_t seed = 42;
  long long trials = 30;
  std::string dims = "2..4";
  auto* sweep = app.add_subcommand("sweep", "seeded random property sweep");
  sweep->add_option("--seed", seed, "base seed (trial i uses seed + i)");
  sweep->add_option("--trials", trials, "number of random trials");
  sweep->add_option("--dims", dims, "dimension range lo..hi");
  add_common(sweep);

  std::string out_dir;
  std::string only;
  auto* export_zoo = app.add_subcommand("export-zoo", "write the fixture models as model files");
  export_zoo->add_option("--out", out_dir, "directory to write <name>.json files into (stdout if omitted)");
  export_zoo->add_option("--name", only, "export a single fixture");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return RL_ERR_USAGE;
  }

  if (*verify) return cmd_verify(model_path, flags);
  if (*reduce) return cmd_reduce(model_path, state_spec, outcome, flags);
  if (*entangled) return cmd_entangled(scenario_path, flags);
  if (*sweep) return cmd_sweep(seed, trials, dims, flags);
  if (*export_zoo) return cmd_export_zoo(out_dir, only);
  return RL_ERR_USAGE;
}
