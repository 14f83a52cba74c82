#include "crowdrate/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <thread>
#include <vector>

#include "crowdrate/errors.hpp"
#include "crowdrate/incentives.hpp"
#include "crowdrate/monitored_payoffs.hpp"
#include "crowdrate/rating_dynamics.hpp"
#include "crowdrate/requester.hpp"
#include "crowdrate/rng.hpp"
#include "format.hpp"

namespace crowdrate::sim {

void validate(const SimConfig& config) {
  if (config.periods < 1) throw DomainError("simulator: periods must be positive");
  if (config.replicates < 1) throw DomainError("simulator: replicates must be positive");
  if (config.population < 1) throw DomainError("simulator: population must be positive");
  if (config.burnIn < 0) throw DomainError("simulator: burn-in must be nonnegative");
  if (config.threads < 1) throw DomainError("simulator: threads must be positive");
}

namespace {

// Draws a realized strategy with one uniform from the cumulative mix vector.
class ActionSampler {
 public:
  ActionSampler(Strategy intended, const IntrinsicParams& p) {
    const auto mix = payoffs::mixVector(intended, p);
    double acc = 0.0;
    for (std::size_t i = 0; i < 3; ++i) cdf_[i] = acc += mix[i];
  }
  Strategy operator()(Rng& rng) const {
    const double u = rng.uniform();
    if (u < cdf_[0]) return Strategy::CN;
    if (u < cdf_[1]) return Strategy::CA;
    if (u < cdf_[2]) return Strategy::SN;
    return Strategy::SA;
  }

 private:
  std::array<double, 3> cdf_{};
};

Rating nextRating(Rating theta, Strategy observed, const DesignParams& design, Rng& rng) {
  const double good = rating::ratingUpdateLaw(theta, observed, design).good;
  // Degenerate laws consume no randomness, so beta = 0 never demotes.
  if (good >= 1.0) return Rating::Good;
  if (good <= 0.0) return Rating::Bad;
  return rng.bernoulli(good) ? Rating::Good : Rating::Bad;
}

// Runs job(r) for every replicate, optionally on several threads. Each
// replicate writes only its own slot, so the reduction order is fixed.
void forEachReplicate(int replicates, int threads, const std::function<void(int)>& job) {
  if (threads <= 1 || replicates == 1) {
    for (int r = 0; r < replicates; ++r) job(r);
    return;
  }
  std::vector<std::thread> pool;
  const int n = std::min(threads, replicates);
  for (int t = 0; t < n; ++t) {
    pool.emplace_back([&, t] {
      for (int r = t; r < replicates; r += n) job(r);
    });
  }
  for (auto& th : pool) th.join();
}

Estimate summarize(const std::vector<double>& xs) {
  const auto n = static_cast<double>(xs.size());
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / n;
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

// Batch-means error for a single long replicate.
Estimate batchMeans(const std::vector<double>& series) {
  constexpr std::size_t kBatches = 20;
  if (series.size() < kBatches * 2) return summarize(series);
  const std::size_t len = series.size() / kBatches;
  std::vector<double> batches;
  for (std::size_t b = 0; b < kBatches; ++b) {
    double s = 0.0;
    for (std::size_t i = b * len; i < (b + 1) * len; ++i) s += series[i];
    batches.push_back(s / static_cast<double>(len));
  }
  return summarize(batches);
}

constexpr std::uint64_t kChainStream = 0x1000;
constexpr std::uint64_t kUtilityStream = 0x2000;

}  // namespace

SimResult runChain(const DesignParams& design, const IntrinsicParams& p, const SimConfig& config) {
  validate(config);
  const int R = config.replicates;
  const int N = config.population;
  std::vector<double> eta0(R), social(R);
  std::vector<std::int64_t> demotions(R), promotions(R);
  std::vector<char> sumsOk(R, 1);
  std::vector<double> series0;
  std::vector<double> seriesSocial;
  const bool keepSeries = R == 1;

  forEachReplicate(R, config.threads, [&](int r) {
    Rng rng(config.seed, kChainStream + static_cast<std::uint64_t>(r));
    // [type][agent]; everyone starts with a good rating.
    std::array<std::vector<Rating>, 2> ratings{std::vector<Rating>(N, Rating::Good),
                                               std::vector<Rating>(N, Rating::Good)};
    std::array<std::vector<Strategy>, 2> realized{std::vector<Strategy>(N), std::vector<Strategy>(N)};
    double sum0 = 0.0;
    double sumSocial = 0.0;
    const ActionSampler compliant(Strategy::CN, p);
    const double population = 2.0 * N;
    for (std::int64_t t = 0; t < config.burnIn + config.periods; ++t) {
      std::int64_t bad = 0;
      std::int64_t good = 0;
      for (auto& type : ratings) {
        for (Rating th : type) (th == Rating::Good ? good : bad) += 1;
      }
      if (bad + good != 2 * static_cast<std::int64_t>(N)) sumsOk[r] = 0;
      double matchUtility = 0.0;
      for (int a = 0; a < N; ++a) {
        for (std::size_t type = 0; type < 2; ++type) realized[type][a] = compliant(rng);
        const std::size_t winner = rng.coin() ? 0 : 1;
        const double delivered = realized[winner][a] == Strategy::CN ? 1.0 : 0.0;
        matchUtility += delivered - design.price(ratings[winner][a]);
      }
      for (std::size_t type = 0; type < 2; ++type) {
        for (int a = 0; a < N; ++a) {
          const Rating before = ratings[type][a];
          const Rating after = nextRating(before, realized[type][a], design, rng);
          if (t >= config.burnIn) {
            if (before == Rating::Good && after == Rating::Bad) ++demotions[r];
            if (before == Rating::Bad && after == Rating::Good) ++promotions[r];
          }
          ratings[type][a] = after;
        }
      }
      if (t < config.burnIn) continue;
      const double frac0 = static_cast<double>(bad) / population;
      const double u = matchUtility / N;
      sum0 += frac0;
      sumSocial += u;
      if (keepSeries) {
        series0.push_back(frac0);
        seriesSocial.push_back(u);
      }
    }
    const auto T = static_cast<double>(config.periods);
    eta0[r] = sum0 / T;
    social[r] = sumSocial / T;
  });

  SimResult out;
  out.eta0 = keepSeries ? batchMeans(series0) : summarize(eta0);
  out.eta1 = {1.0 - out.eta0.mean, out.eta0.stderr};
  out.socialUtility = keepSeries ? batchMeans(seriesSocial) : summarize(social);
  for (int r = 0; r < R; ++r) {
    out.demotions += demotions[r];
    out.promotions += promotions[r];
    if (!sumsOk[r]) out.etaSumsToOne = false;
  }
  return out;
}

namespace {

// Mean discounted payoff over `population` paths of worker w from rating theta.
double discountedMean(const DesignParams& design, const IntrinsicParams& p, Worker w, Rating start,
                      bool deviateFirst, std::int64_t horizon, int population, Rng& rng) {
  const std::array<payoffs::PayoffMatrix, 2> matrices{payoffs::PayoffMatrix(w, design.gamma0, p),
                                                      payoffs::PayoffMatrix(w, design.gamma1, p)};
  // [rating][observed is CN] -> probability of a good rating next period.
  std::array<std::array<double, 2>, 2> promote{};
  for (Rating th : {Rating::Bad, Rating::Good}) {
    promote[index(th)][0] = rating::ratingUpdateLaw(th, Strategy::CA, design).good;
    promote[index(th)][1] = rating::ratingUpdateLaw(th, Strategy::CN, design).good;
  }
  const ActionSampler compliant(Strategy::CN, p);
  const ActionSampler attack(Strategy::CA, p);
  double total = 0.0;
  for (int a = 0; a < population; ++a) {
    std::size_t theta = index(start);
    double discount = 1.0;
    double value = 0.0;
    for (std::int64_t t = 0; t < horizon; ++t) {
      const Strategy own = (deviateFirst && t == 0) ? attack(rng) : compliant(rng);
      const Strategy opp = compliant(rng);
      const auto& v = matrices[theta];
      const double share = v.prizeShare(own, opp);
      const bool wins = share == 1.0 || (share == 0.5 && rng.coin());
      value += discount * (v.constant(own, opp) + (wins ? v.gamma() : 0.0));
      const double good = promote[theta][own == Strategy::CN ? 1 : 0];
      theta = good >= 1.0 ? 1 : good <= 0.0 ? 0 : rng.bernoulli(good) ? 1 : 0;
      discount *= p.delta;
    }
    total += value;
  }
  return total / population;
}

}  // namespace

SimResult runUtility(const DesignParams& design, const IntrinsicParams& p, const SimConfig& config) {
  validate(config);
  SimResult out;
  out.horizon = p.delta <= 0.0
                    ? 1
                    : static_cast<std::int64_t>(std::floor(std::log(1e-6) / std::log(p.delta))) + 1;
  const double maxPayoff = 1.0 + std::max(p.c1, p.c2) + std::max(p.s1, p.s2) + p.d;
  out.truncationBound = p.delta <= 0.0 ? 0.0
                                       : std::pow(p.delta, static_cast<double>(out.horizon)) *
                                             maxPayoff / (1.0 - p.delta);
  const int R = config.replicates;
  // Jobs: 4 compliant (worker, rating) pairs and optionally one deviation.
  const int jobs = config.deviation ? 5 : 4;
  std::vector<double> values(static_cast<std::size_t>(R) * jobs);
  forEachReplicate(R, config.threads, [&](int r) {
    for (int j = 0; j < jobs; ++j) {
      Worker w;
      Rating start;
      bool deviate = false;
      if (j < 4) {
        w = kWorkers[j / 2];
        start = j % 2 == 0 ? Rating::Bad : Rating::Good;
      } else {
        w = config.deviation->worker;
        start = config.deviation->rating;
        deviate = true;
      }
      Rng rng(config.seed, kUtilityStream + static_cast<std::uint64_t>(r) * 8 + j);
      values[static_cast<std::size_t>(r) * jobs + j] =
          discountedMean(design, p, w, start, deviate, out.horizon, config.population, rng);
    }
  });
  auto column = [&](int j) {
    std::vector<double> xs(R);
    for (int r = 0; r < R; ++r) xs[r] = values[static_cast<std::size_t>(r) * jobs + j];
    return summarize(xs);
  };
  for (int j = 0; j < 4; ++j) out.vInf[j / 2][j % 2] = column(j);
  if (config.deviation) out.deviationValue = column(4);
  return out;
}

std::string comparisonCsv(const SimResult& result, const DesignParams& design,
                          const IntrinsicParams& p, bool chain, bool utility) {
  std::ostringstream os;
  os << "metric,analytic,empirical,stderr,z\n";
  auto row = [&](const std::string& metric, double analytic, const Estimate& e) {
    const double z = e.stderr > 0.0 ? (e.mean - analytic) / e.stderr : 0.0;
    os << metric << ',' << fmtNumber(analytic) << ',' << fmtNumber(e.mean) << ','
       << fmtNumber(e.stderr) << ',' << fmtNumber(z) << '\n';
  };
  if (chain) {
    const auto eta = rating::stationary(design, p);
    row("eta0", eta.eta0, result.eta0);
    row("eta1", eta.eta1, result.eta1);
    row("social_utility", requester::socialUtility(design, p).closedForm, result.socialUtility);
  }
  if (utility) {
    for (Worker w : kWorkers) {
      const auto lt = incentives::longTermUtilities(design, p, w);
      const auto id = std::to_string(index(w) + 1);
      row("vinf0_worker" + id, lt.vInf0, result.vInf[index(w)][0]);
      row("vinf1_worker" + id, lt.vInf1, result.vInf[index(w)][1]);
    }
  }
  return os.str();
}

}  // namespace crowdrate::sim
