#pragma once

// Functional forms of the ride-hailing market: logistic demand, power-law
// pickup time, risk-weighted driver supply, rider surplus and the social cost
// of labour. Units: dollars, hours, and per-hour rates throughout.
//
// An infinite pickup time (no idle drivers) is encoded as
// std::numeric_limits<double>::infinity(); demand and surplus are exactly 0
// there, and idle_from_time(+inf) is exactly 0.

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace idlewage {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Calibrated constants shared by every hour of the built-in day.
namespace defaults {
inline constexpr double kappa = 1.768;
inline constexpr double beta_p = -0.669;   // per dollar
inline constexpr double beta_T = -1.134;   // per hour of pickup
inline constexpr double k_T = 0.127;       // hours
inline constexpr double alpha_T = -0.515;
inline constexpr double elasticity = 1.2;
inline constexpr double trip_time = 0.25;  // hours
}  // namespace defaults

struct DemandParams {
  double lambda_max = 0.0;  // riders/hour
  double kappa = defaults::kappa;
  double beta_p = defaults::beta_p;
  double beta_T = defaults::beta_T;

  void validate() const;
  bool operator==(const DemandParams&) const = default;
};

// T(I) = k_T * I^alpha_T with alpha_T < 0.
struct PickupParams {
  double k_T = defaults::k_T;
  double alpha_T = defaults::alpha_T;

  void validate() const;
  bool operator==(const PickupParams&) const = default;
};

// l(e, J) = pool_size * ((risk_beta * e + J) / (1 + 1/elasticity))^elasticity
struct SupplyParams {
  double pool_size = 1.0;  // drivers
  double risk_beta = 1.0;  // weight of trip earnings, in (0, 1]
  double elasticity = defaults::elasticity;

  void validate() const;
  bool operator==(const SupplyParams&) const = default;
};

struct PeriodScenario {
  DemandParams demand;
  PickupParams pickup;
  SupplyParams supply;
  double trip_time = defaults::trip_time;  // hours

  void validate() const;
  bool operator==(const PeriodScenario&) const = default;
};

inline constexpr std::size_t kHoursPerDay = 24;

// 24 hourly periods; hour indices wrap (hour 25 is hour 1).
struct DayScenario {
  std::vector<PeriodScenario> periods;

  void validate() const;
  // 1-based, cyclic.
  const PeriodScenario& hour(int h) const;
  bool operator==(const DayScenario&) const = default;
};

// A period with the calibrated globals and the given hourly parameters.
PeriodScenario make_period(double lambda_max, double pool_size, double risk_beta);

// Rider utility u(p, T) = kappa + beta_p p + beta_T T.
inline double utility(const DemandParams& d, double price, double pickup) {
  return d.kappa + d.beta_p * price + d.beta_T * pickup;
}

inline double demand(const DemandParams& d, double price, double pickup) {
  if (pickup == kInfinity || d.lambda_max == 0.0) return 0.0;
  const double u = utility(d, price, pickup);
  // lambda * e^u / (1 + e^u), written to avoid overflow for large u.
  return d.lambda_max / (1.0 + std::exp(-u));
}

inline double pickup_time(const PickupParams& pk, double idle) {
  if (idle == 0.0) return kInfinity;
  return pk.k_T * std::pow(idle, pk.alpha_T);
}

// Inverse of pickup_time. Throws DomainError for pickup <= 0.
double idle_from_time(const PickupParams& pk, double pickup);

// Unchecked inverse for the solver's inner loops (pickup in (0, inf)).
inline double idle_from_time_unchecked(const PickupParams& pk, double pickup) {
  return std::pow(pickup / pk.k_T, 1.0 / pk.alpha_T);
}

inline double supply_scale(const SupplyParams& s) { return 1.0 + 1.0 / s.elasticity; }

inline double supply(const SupplyParams& s, double earnings, double idle_wage) {
  const double pay = s.risk_beta * earnings + idle_wage;
  if (pay <= 0.0) return 0.0;
  return s.pool_size * std::pow(pay / supply_scale(s), s.elasticity);
}

// Idle wage that attracts `labour` drivers when trips pay nothing, i.e.
// the inverse of J -> l(0, J). This is also the integrand of social_cost.
inline double required_wage(const SupplyParams& s, double labour) {
  if (labour <= 0.0) return 0.0;
  return supply_scale(s) * std::pow(labour / s.pool_size, 1.0 / s.elasticity);
}

// Integral of demand over prices above `price`:
// -(lambda / beta_p) * ln(1 + e^u).
inline double surplus(const DemandParams& d, double price, double pickup) {
  if (pickup == kInfinity || d.lambda_max == 0.0) return 0.0;
  const double u = utility(d, price, pickup);
  const double softplus = u > 0.0 ? u + std::log1p(std::exp(-u)) : std::log1p(std::exp(u));
  return -(d.lambda_max / d.beta_p) * softplus;
}

// Integral of required_wage over [0, labour]: A^(-1/eps) * L^(1 + 1/eps).
inline double social_cost(const SupplyParams& s, double labour) {
  if (labour <= 0.0) return 0.0;
  return std::pow(s.pool_size, -1.0 / s.elasticity) *
         std::pow(labour, 1.0 + 1.0 / s.elasticity);
}

}  // namespace idlewage
