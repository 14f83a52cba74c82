// crowdrate command-line front end. Talks to the library only through the C API.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "crowdrate/crowdrate.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInfeasible = 2;

struct ParamsDeleter {
  void operator()(crowdrate_params* p) const { crowdrate_params_destroy(p); }
};
struct OutcomeDeleter {
  void operator()(crowdrate_outcome* o) const { crowdrate_outcome_destroy(o); }
};
using Params = std::unique_ptr<crowdrate_params, ParamsDeleter>;
using Outcome = std::unique_ptr<crowdrate_outcome, OutcomeDeleter>;

std::string take(char* s) {
  std::string out = s ? s : "";
  crowdrate_string_free(s);
  return out;
}

int inputError(const std::string& what) {
  std::cerr << "error: " << what << '\n';
  return kExitInput;
}

// Loads and validates the config file; nullptr after printing the reason.
Params loadValid(const std::string& path) {
  crowdrate_params* raw = nullptr;
  if (crowdrate_params_load(path.c_str(), &raw) != CROWDRATE_OK) {
    inputError(crowdrate_last_error());
    return nullptr;
  }
  Params p(raw);
  char* report = nullptr;
  const auto status = crowdrate_params_validate(p.get(), &report);
  const std::string text = take(report);
  if (status != CROWDRATE_OK) {
    inputError(text);
    return nullptr;
  }
  if (!text.empty()) std::cerr << text;  // warnings only
  return p;
}

// Writes to `out` or stdout. False if the file cannot be written.
bool emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return true;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) return false;
  f << text;
  f.close();
  return static_cast<bool>(f);
}

struct Protocol {
  double alpha = -1.0;
  double beta = -1.0;
  double gamma1 = -1.0;
  double gamma0 = 0.0;

  void attach(CLI::App* app) {
    app->add_option("--alpha", alpha, "promotion probability")->required();
    app->add_option("--beta", beta, "demotion probability")->required();
    app->add_option("--gamma1", gamma1, "payment to a good-rated winner")->required();
    app->add_option("--gamma0", gamma0, "payment to a bad-rated winner");
  }
  [[nodiscard]] crowdrate_design design() const { return {alpha, beta, gamma0, gamma1}; }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"crowdrate: rating protocol design for crowdsourcing contests"};
  app.require_subcommand(1);

  std::string config;
  std::string out;
  int gridM = 100;
  int oracleR = 100;
  bool oracle = false;
  int threads = 1;

  auto* design = app.add_subcommand("design", "optimal protocol for a parameter file");
  design->add_option("config", config, "parameter file")->required();
  design->add_option("--grid-m", gridM, "gamma1 grid resolution");
  design->add_flag("--oracle", oracle, "cross-check against the brute-force oracle");
  design->add_option("--oracle-r", oracleR, "oracle grid resolution");
  design->add_option("--out", out, "write the outcome block here");

  std::string vary;
  double from = 0.0;
  double to = 0.0;
  double step = 0.0;
  auto* sweep = app.add_subcommand("sweep", "optimal protocol over a parameter grid, as CSV");
  sweep->add_option("config", config, "base parameter file")->required();
  sweep->add_option("--vary", vary, "parameter to vary")->required();
  sweep->add_option("--from", from)->required();
  sweep->add_option("--to", to)->required();
  sweep->add_option("--step", step)->required();
  sweep->add_option("--grid-m", gridM, "gamma1 grid resolution");
  sweep->add_option("--threads", threads, "grid points evaluated concurrently");
  sweep->add_option("--out", out, "CSV output path");

  Protocol protocol;
  auto* check = app.add_subcommand("check", "sustainability margins of a given protocol");
  check->add_option("config", config, "parameter file")->required();
  protocol.attach(check);
  check->add_option("--out", out, "CSV output path");

  auto sim = crowdrate_sim_config_default();
  std::uint64_t seed = sim.seed;
  std::int64_t periods = sim.periods;
  int replicates = sim.replicates;
  int population = sim.population;
  int chainPopulation = sim.chain_population;
  int deviationWorker = 0;
  int deviationRating = 1;
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo estimates against analytic values");
  simulate->add_option("config", config, "parameter file")->required();
  protocol.attach(simulate);
  simulate->add_option("--seed", seed);
  simulate->add_option("--periods", periods, "chain length");
  simulate->add_option("--replicates", replicates);
  simulate->add_option("--population", population, "paths per replicate in the utility estimates");
  simulate->add_option("--chain-population", chainPopulation, "agents per worker type in the chain");
  simulate->add_option("--threads", threads);
  simulate->add_option("--deviate-worker", deviationWorker, "1 or 2: play CA once");
  simulate->add_option("--deviate-rating", deviationRating, "start rating of the deviator");
  simulate->add_option("--out", out, "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  Params params = loadValid(config);
  if (!params) return kExitInput;

  crowdrate_designer_config dc = crowdrate_designer_config_default();
  dc.gamma_grid = gridM;
  dc.oracle_grid = oracleR;

  if (*design) {
    crowdrate_outcome* raw = nullptr;
    const auto status = crowdrate_optimize(params.get(), dc, &raw);
    if (status != CROWDRATE_OK && status != CROWDRATE_INFEASIBLE) {
      return inputError(crowdrate_last_error());
    }
    Outcome outcome(raw);
    char* block = nullptr;
    crowdrate_outcome_format(outcome.get(), &block);
    std::string text = take(block);
    if (oracle && crowdrate_outcome_feasible(outcome.get())) {
      int agrees = 0;
      char* report = nullptr;
      if (crowdrate_cross_check(outcome.get(), dc, &agrees, &report) != CROWDRATE_OK) {
        return inputError(crowdrate_last_error());
      }
      text += take(report);
    }
    if (!emit(text, out)) return inputError("cannot write " + out);
    if (!crowdrate_outcome_feasible(outcome.get())) {
      std::cerr << "infeasible\n";
      return kExitInfeasible;
    }
    return kExitOk;
  }

  if (*sweep) {
    char* csv = nullptr;
    if (crowdrate_sweep_csv(params.get(), vary.c_str(), from, to, step, dc, threads, &csv) !=
        CROWDRATE_OK) {
      return inputError(crowdrate_last_error());
    }
    if (!emit(take(csv), out)) return inputError("cannot write " + out);
    return kExitOk;
  }

  if (*check) {
    int sustainable = 0;
    char* report = nullptr;
    if (crowdrate_check(params.get(), protocol.design(), &sustainable, &report) != CROWDRATE_OK) {
      return inputError(crowdrate_last_error());
    }
    std::string text = take(report);
    text += sustainable ? "status=sustainable\n" : "status=unsustainable\n";
    if (!emit(text, out)) return inputError("cannot write " + out);
    return sustainable ? kExitOk : kExitInfeasible;
  }

  sim.seed = seed;
  sim.periods = periods;
  sim.replicates = replicates;
  sim.population = population;
  sim.chain_population = chainPopulation;
  sim.threads = threads;
  sim.deviation_worker = deviationWorker;
  sim.deviation_rating = deviationRating;
  char* csv = nullptr;
  if (crowdrate_simulate_csv(params.get(), protocol.design(), sim, &csv) != CROWDRATE_OK) {
    return inputError(crowdrate_last_error());
  }
  if (!emit(take(csv), out)) return inputError("cannot write " + out);
  return kExitOk;
}
