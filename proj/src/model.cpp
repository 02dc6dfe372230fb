#include "idlewage/model.hpp"

#include <string>

#include "idlewage/errors.hpp"

namespace idlewage {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw ValidationError(std::string("model: ") + what);
}

}  // namespace

void DemandParams::validate() const {
  require(std::isfinite(lambda_max) && lambda_max >= 0.0, "demand lambda_max must be >= 0");
  require(std::isfinite(kappa), "demand kappa must be finite");
  require(std::isfinite(beta_p) && beta_p < 0.0, "demand beta_p must be < 0");
  require(std::isfinite(beta_T) && beta_T < 0.0, "demand beta_T must be < 0");
}

void PickupParams::validate() const {
  require(std::isfinite(k_T) && k_T > 0.0, "pickup k_T must be > 0");
  require(std::isfinite(alpha_T) && alpha_T < 0.0, "pickup alpha_T must be < 0");
}

void SupplyParams::validate() const {
  require(std::isfinite(pool_size) && pool_size > 0.0, "supply pool_size must be > 0");
  require(risk_beta > 0.0 && risk_beta <= 1.0, "supply risk_beta must lie in (0, 1]");
  require(std::isfinite(elasticity) && elasticity > 0.0, "supply elasticity must be > 0");
}

void PeriodScenario::validate() const {
  demand.validate();
  pickup.validate();
  supply.validate();
  require(std::isfinite(trip_time) && trip_time > 0.0, "trip_time must be > 0");
}

void DayScenario::validate() const {
  if (periods.size() != kHoursPerDay) {
    throw ValidationError("model: expected 24 periods, got " + std::to_string(periods.size()));
  }
  for (const auto& p : periods) p.validate();
}

const PeriodScenario& DayScenario::hour(int h) const {
  const int n = static_cast<int>(periods.size());
  if (n == 0) throw ValidationError("model: day has no periods");
  const int idx = (((h - 1) % n) + n) % n;
  return periods[static_cast<std::size_t>(idx)];
}

PeriodScenario make_period(double lambda_max, double pool_size, double risk_beta) {
  PeriodScenario s;
  s.demand.lambda_max = lambda_max;
  s.supply.pool_size = pool_size;
  s.supply.risk_beta = risk_beta;
  return s;
}

double idle_from_time(const PickupParams& pk, double pickup) {
  if (!(pickup > 0.0)) {
    throw DomainError("model: idle_from_time requires pickup time > 0");
  }
  if (pickup == kInfinity) return 0.0;
  return idle_from_time_unchecked(pk, pickup);
}

}  // namespace idlewage
