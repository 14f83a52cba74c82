#include "crowdrate/monitored_payoffs.hpp"

namespace crowdrate::payoffs {

PayoffMatrix::PayoffMatrix(Worker w, double gamma, const IntrinsicParams& p) : gamma_(gamma) {
  const double c = p.effortCost(w);
  const double s = p.attackCost(w);
  const double d = p.d;
  // Rows: own CN, CA, SN, SA; columns: opponent CN, CA, SN, SA.
  share_ = {{{0.5, 0.0, 1.0, 1.0},
             {1.0, 0.5, 1.0, 1.0},
             {0.0, 0.0, 0.5, 0.0},
             {0.0, 0.0, 1.0, 0.5}}};
  constant_ = {{{-c, -c - d, -c, -c - d},
                {-c - s, -c - s - d, -c - s, -c - s - d},
                {0.0, -d, 0.0, -d},
                {-s, -s - d, -s, -s - d}}};
}

MixVector mixVector(Strategy intended, const IntrinsicParams& p) {
  MixVector m{};
  for (Strategy realized : kStrategies) {
    const double stage1 = crowdsources(realized) == crowdsources(intended) ? 1.0 - p.eps1 : p.eps1;
    const double stage2 = attacks(realized) == attacks(intended) ? 1.0 - p.eps2 : p.eps2;
    m[index(realized)] = stage1 * stage2;
  }
  return m;
}

double expectedPayoff(Worker w, Strategy intended, Strategy opponentIntended, double gamma,
                      const IntrinsicParams& p) {
  const PayoffMatrix v(w, gamma, p);
  const auto own = mixVector(intended, p);
  const auto opp = mixVector(opponentIntended, p);
  double total = 0.0;
  for (Strategy x : kStrategies) {
    double row = 0.0;
    for (Strategy y : kStrategies) row += v(x, y) * opp[index(y)];
    total += own[index(x)] * row;
  }
  return total;
}

double ratingPayoff(Worker w, Strategy intended, Rating theta, const DesignParams& design,
                    const rating::StationaryDistribution& eta, const IntrinsicParams& p) {
  const double gamma = design.price(theta);
  // One value per opponent rating; the focal prize does not depend on it.
  std::array<double, 2> byOpponent{};
  for (Rating opponentRating : {Rating::Bad, Rating::Good}) {
    byOpponent[index(opponentRating)] = expectedPayoff(w, intended, Strategy::CN, gamma, p);
  }
  // Convex combination written so equal entries come back unchanged.
  return byOpponent[0] + eta.eta1 * (byOpponent[1] - byOpponent[0]);
}

DominanceReport deviationDominance(Worker w, double gamma, const IntrinsicParams& p) {
  DominanceReport r{};
  r.cn = expectedPayoff(w, Strategy::CN, Strategy::CN, gamma, p);
  r.ca = expectedPayoff(w, Strategy::CA, Strategy::CN, gamma, p);
  r.sn = expectedPayoff(w, Strategy::SN, Strategy::CN, gamma, p);
  r.sa = expectedPayoff(w, Strategy::SA, Strategy::CN, gamma, p);
  r.caDominates = r.ca >= r.sn && r.ca >= r.sa;
  return r;
}

}  // namespace crowdrate::payoffs
