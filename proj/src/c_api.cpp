#include "crowdrate/crowdrate.h"

#include <cstring>
#include <exception>
#include <new>
#include <sstream>
#include <string>

#include "crowdrate/designer.hpp"
#include "crowdrate/domain.hpp"
#include "crowdrate/errors.hpp"
#include "crowdrate/incentives.hpp"
#include "crowdrate/simulator.hpp"
#include "crowdrate/sweep.hpp"
#include "format.hpp"

struct crowdrate_params {
  crowdrate::IntrinsicParams value;
};

struct crowdrate_outcome {
  crowdrate::IntrinsicParams params;
  crowdrate::designer::DesignOutcome value;
};

namespace {

thread_local std::string lastError;

crowdrate_status fail(crowdrate_status status, const std::string& message) {
  lastError = message;
  return status;
}

// Maps the C++ exception hierarchy onto status codes.
template <class F>
crowdrate_status guarded(F&& f) {
  try {
    lastError.clear();
    return f();
  } catch (const crowdrate::ParseError& e) {
    return fail(CROWDRATE_PARSE_ERROR, e.what());
  } catch (const crowdrate::Infeasible& e) {
    return fail(CROWDRATE_INFEASIBLE, e.what());
  } catch (const crowdrate::Error& e) {
    return fail(CROWDRATE_DOMAIN_ERROR, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CROWDRATE_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(CROWDRATE_INTERNAL_ERROR, e.what());
  }
}

char* duplicate(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

crowdrate::designer::DesignerConfig toConfig(crowdrate_designer_config c) {
  crowdrate::designer::DesignerConfig out;
  out.gammaGridResolution = c.gamma_grid;
  out.oracleGridResolution = c.oracle_grid;
  return out;
}

crowdrate::DesignParams toDesign(crowdrate_design d) { return {d.alpha, d.beta, d.gamma0, d.gamma1}; }

// Protocol values for check/simulate: only the [0,1] bounds and gamma0 < gamma1.
bool designInBounds(crowdrate_design d, std::string& why) {
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!unit(d.alpha)) why = "alpha out of range";
  else if (!unit(d.beta)) why = "beta out of range";
  else if (!unit(d.gamma0)) why = "gamma0 out of range";
  else if (!unit(d.gamma1)) why = "gamma1 out of range";
  else if (!(d.gamma0 < d.gamma1)) why = "gamma0 must be below gamma1";
  else return true;
  return false;
}

}  // namespace

extern "C" {

const char* crowdrate_last_error(void) { return lastError.c_str(); }

void crowdrate_string_free(char* s) { delete[] s; }

crowdrate_status crowdrate_params_create_default(crowdrate_params** out) {
  if (!out) return fail(CROWDRATE_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    *out = new crowdrate_params{};
    return CROWDRATE_OK;
  });
}

crowdrate_status crowdrate_params_load(const char* path, crowdrate_params** out) {
  if (!path || !out) return fail(CROWDRATE_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto value = crowdrate::loadParams(path);
    *out = new crowdrate_params{value};
    return CROWDRATE_OK;
  });
}

crowdrate_status crowdrate_params_parse(const char* text, crowdrate_params** out) {
  if (!text || !out) return fail(CROWDRATE_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto value = crowdrate::parseParams(text);
    *out = new crowdrate_params{value};
    return CROWDRATE_OK;
  });
}

void crowdrate_params_destroy(crowdrate_params* p) { delete p; }

crowdrate_status crowdrate_params_set(crowdrate_params* p, const char* key, double value) {
  if (!p || !key) return fail(CROWDRATE_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    crowdrate::setParam(p->value, key, value);
    return CROWDRATE_OK;
  });
}

crowdrate_status crowdrate_params_get(const crowdrate_params* p, const char* key, double* out) {
  if (!p || !key || !out) return fail(CROWDRATE_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = crowdrate::getParam(p->value, key);
    return CROWDRATE_OK;
  });
}

crowdrate_status crowdrate_params_validate(const crowdrate_params* p, char** report) {
  if (!p) return fail(CROWDRATE_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto r = crowdrate::validate(p->value);
    if (report) *report = duplicate(r.describe());
    if (r.ok()) return CROWDRATE_OK;
    return fail(CROWDRATE_DOMAIN_ERROR, r.describe());
  });
}

crowdrate_designer_config crowdrate_designer_config_default(void) {
  const crowdrate::designer::DesignerConfig c;
  return {c.gammaGridResolution, c.oracleGridResolution};
}

crowdrate_sim_config crowdrate_sim_config_default(void) {
  const crowdrate::sim::SimConfig c;
  return {c.periods, c.replicates, c.seed, 1000, 1, c.threads, 0, 1};
}

crowdrate_status crowdrate_optimize(const crowdrate_params* p, crowdrate_designer_config config,
                                    crowdrate_outcome** out) {
  if (!p || !out) return fail(CROWDRATE_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto report = crowdrate::validate(p->value);
    if (!report.ok()) return fail(CROWDRATE_DOMAIN_ERROR, report.describe());
    auto outcome = crowdrate::designer::solve(p->value, toConfig(config));
    const bool feasible = outcome.feasible;
    *out = new crowdrate_outcome{p->value, std::move(outcome)};
    if (!feasible) return fail(CROWDRATE_INFEASIBLE, "infeasible");
    return CROWDRATE_OK;
  });
}

void crowdrate_outcome_destroy(crowdrate_outcome* o) { delete o; }

int crowdrate_outcome_feasible(const crowdrate_outcome* o) { return o && o->value.feasible ? 1 : 0; }

crowdrate_design crowdrate_outcome_design(const crowdrate_outcome* o) {
  if (!o) return {0.0, 0.0, 0.0, 0.0};
  const auto& d = o->value.design;
  return {d.alpha, d.beta, d.gamma0, d.gamma1};
}

double crowdrate_outcome_utility(const crowdrate_outcome* o) { return o ? o->value.utility : 0.0; }

crowdrate_status crowdrate_outcome_format(const crowdrate_outcome* o, char** text) {
  if (!o || !text) return fail(CROWDRATE_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *text = duplicate(o->value.keyValueBlock(o->params));
    return CROWDRATE_OK;
  });
}

crowdrate_status crowdrate_outcome_csv(const crowdrate_outcome* o, char** text) {
  if (!o || !text) return fail(CROWDRATE_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *text = duplicate(crowdrate::designer::csvHeader() + o->value.csvRow(o->params));
    return CROWDRATE_OK;
  });
}

crowdrate_status crowdrate_cross_check(const crowdrate_outcome* o, crowdrate_designer_config config,
                                       int* agrees, char** report) {
  if (!o || !agrees) return fail(CROWDRATE_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto cfg = toConfig(config);
    const auto oracle = crowdrate::designer::bruteForceOracle(o->params, cfg);
    const auto check = crowdrate::designer::crossCheck(o->value, oracle, cfg);
    *agrees = check.agrees ? 1 : 0;
    if (report) *report = duplicate(check.report);
    return CROWDRATE_OK;
  });
}

crowdrate_status crowdrate_check(const crowdrate_params* p, crowdrate_design design, int* sustainable,
                                 char** report) {
  if (!p || !sustainable) return fail(CROWDRATE_INVALID_ARGUMENT, "null argument");
  std::string why;
  if (!designInBounds(design, why)) return fail(CROWDRATE_DOMAIN_ERROR, why);
  return guarded([&] {
    const auto r = crowdrate::incentives::isSustainable(toDesign(design), p->value);
    *sustainable = r.feasible() ? 1 : 0;
    if (report) *report = duplicate(r.csv());
    return CROWDRATE_OK;
  });
}

crowdrate_status crowdrate_sweep_csv(const crowdrate_params* base, const char* key, double from,
                                     double to, double step, crowdrate_designer_config config,
                                     int threads, char** csv) {
  if (!base || !key || !csv) return fail(CROWDRATE_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    crowdrate::sweep::SweepSpec spec;
    spec.key = key;
    spec.from = from;
    spec.to = to;
    spec.step = step;
    spec.base = base->value;
    spec.config = toConfig(config);
    spec.threads = threads;
    *csv = duplicate(crowdrate::sweep::csv(crowdrate::sweep::run(spec)));
    return CROWDRATE_OK;
  });
}

crowdrate_status crowdrate_simulate_csv(const crowdrate_params* p, crowdrate_design design,
                                        crowdrate_sim_config config, char** csv) {
  if (!p || !csv) return fail(CROWDRATE_INVALID_ARGUMENT, "null argument");
  std::string why;
  if (!designInBounds(design, why)) return fail(CROWDRATE_DOMAIN_ERROR, why);
  return guarded([&] {
    const auto report = crowdrate::validate(p->value);
    if (!report.ok()) return fail(CROWDRATE_DOMAIN_ERROR, report.describe());
    if (!(p->value.delta < 1.0)) return fail(CROWDRATE_DOMAIN_ERROR, "delta must be below 1");
    crowdrate::sim::SimConfig cfg;
    cfg.periods = config.periods;
    cfg.replicates = config.replicates;
    cfg.seed = config.seed;
    cfg.population = config.population;
    cfg.threads = config.threads;
    if (config.deviation_worker == 1 || config.deviation_worker == 2) {
      cfg.deviation = crowdrate::sim::Deviation{
          config.deviation_worker == 1 ? crowdrate::Worker::One : crowdrate::Worker::Two,
          config.deviation_rating == 0 ? crowdrate::Rating::Bad : crowdrate::Rating::Good};
    } else if (config.deviation_worker != 0) {
      return fail(CROWDRATE_DOMAIN_ERROR, "deviation worker must be 0, 1 or 2");
    }
    const auto d = toDesign(design);
    auto chainCfg = cfg;
    chainCfg.population = config.chain_population;
    auto chain = crowdrate::sim::runChain(d, p->value, chainCfg);
    const auto utility = crowdrate::sim::runUtility(d, p->value, cfg);
    chain.vInf = utility.vInf;
    chain.deviationValue = utility.deviationValue;
    std::string out = crowdrate::sim::comparisonCsv(chain, d, p->value, true, true);
    if (cfg.deviation) {
      const double analytic = crowdrate::incentives::deviationValue(
          cfg.deviation->rating, d, p->value, cfg.deviation->worker);
      const auto& e = *utility.deviationValue;
      const double z = e.stderr > 0.0 ? (e.mean - analytic) / e.stderr : 0.0;
      std::ostringstream os;
      os << "deviation_worker" << config.deviation_worker << "_rating" << config.deviation_rating
         << ',' << crowdrate::fmtNumber(analytic) << ',' << crowdrate::fmtNumber(e.mean) << ','
         << crowdrate::fmtNumber(e.stderr) << ',' << crowdrate::fmtNumber(z) << '\n';
      out += os.str();
    }
    *csv = duplicate(out);
    return CROWDRATE_OK;
  });
}

}  // extern "C"
