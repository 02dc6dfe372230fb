#include "idlewage/analytic.hpp"

#include <algorithm>
#include <cmath>

#include "idlewage/errors.hpp"

namespace idlewage {

namespace {

// Pi(tau, J) = t1 tau + t2 tau^2 + j1 J + j2 J^2 + x tau J.
struct Quadratic {
  double t1, t2, j1, j2, x;

  double operator()(double tau, double J) const {
    return t1 * tau + t2 * tau * tau + j1 * J + j2 * J * J + x * tau * J;
  }
};

Quadratic profit_quadratic(const TwoPeriodExample& ex) {
  ex.validate();
  // High period (L_h)(tau - J); low period (m (1 - tau) + a J)(m tau - J)
  // with m = r / 2 and a = 1 + eps.
  const double a = 1.0 + ex.epsilon;
  const double m = ex.low_demand_ratio / 2.0;
  return Quadratic{1.0 + m * m, -(1.0 + m * m), -(1.0 + m), -2.0 * a, (1.0 + m) + a * (1.0 + m)};
}

}  // namespace

void TwoPeriodExample::validate() const {
  if (!(std::isfinite(epsilon) && epsilon > 0.0)) {
    throw ValidationError("analytic: epsilon must be > 0");
  }
  if (!(low_demand_ratio > 0.0 && low_demand_ratio <= 1.0)) {
    throw ValidationError("analytic: low_demand_ratio must lie in (0, 1]");
  }
}

FlexibleWages flexible_optimum(const TwoPeriodExample& ex) {
  ex.validate();
  // With tau = 1 each period earns (price * share - J) (1 + eps) J, which
  // peaks at half the per-driver fare revenue.
  return FlexibleWages{0.5, ex.low_demand_ratio / 4.0};
}

IdleOnlyCase case_a_idle_only(const TwoPeriodExample& ex) {
  const Quadratic q = profit_quadratic(ex);
  const double J = std::max(0.0, -(q.j1 + q.x) / (2.0 * q.j2));
  return IdleOnlyCase{J, q(1.0, J)};
}

NoIdleCase case_b_no_idle(const TwoPeriodExample& ex) {
  const Quadratic q = profit_quadratic(ex);
  const double tau = std::clamp(-q.t1 / (2.0 * q.t2), 0.0, 1.0);
  return NoIdleCase{tau, q(tau, 0.0)};
}

JointCase case_c_joint(const TwoPeriodExample& ex) {
  const Quadratic q = profit_quadratic(ex);
  const double det = 4.0 * q.t2 * q.j2 - q.x * q.x;
  if (det > 0.0) {
    // Concave: the stationary point is the unconstrained maximum.
    const double tau = (q.x * q.j1 - 2.0 * q.j2 * q.t1) / det;
    const double J = (q.x * q.t1 - 2.0 * q.t2 * q.j1) / det;
    if (tau >= 0.0 && tau <= 1.0 && J >= 0.0) return JointCase{J, tau, q(tau, J)};
  }
  // Otherwise the maximum sits on the boundary tau = 1 or J = 0.
  const IdleOnlyCase a = case_a_idle_only(ex);
  const NoIdleCase b = case_b_no_idle(ex);
  if (b.profit > a.profit) return JointCase{0.0, b.commission, b.profit};
  return JointCase{a.idle_wage, 1.0, a.profit};
}

double example_profit_surface(const TwoPeriodExample& ex, double commission, double idle_wage) {
  if (!(commission >= 0.0 && commission <= 1.0)) {
    throw ValidationError("analytic: commission must lie in [0, 1]");
  }
  if (!(std::isfinite(idle_wage) && idle_wage >= 0.0)) {
    throw ValidationError("analytic: idle wage must be >= 0");
  }
  return profit_quadratic(ex)(commission, idle_wage);
}

double tau_one_threshold(double low_demand_ratio) {
  TwoPeriodExample{1.0, low_demand_ratio}.validate();
  // d Pi / d tau = 0 at tau = 1 with J = (1 + m) / 4, solved for a = 1 + eps.
  const double m = low_demand_ratio / 2.0;
  const double a = (4.0 * (1.0 + m * m) / (1.0 + m) - (1.0 + m)) / (1.0 + m);
  return a - 1.0;
}

double idle_only_crossover(double low_demand_ratio) {
  TwoPeriodExample{1.0, low_demand_ratio}.validate();
  // (1 + eps)(1 + m)^2 / 8 = (1 + m^2) / 4
  const double m = low_demand_ratio / 2.0;
  return 2.0 * (1.0 + m * m) / ((1.0 + m) * (1.0 + m)) - 1.0;
}

}  // namespace idlewage
