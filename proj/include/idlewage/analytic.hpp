#pragma once

// Closed-form two-period example with one shared (J, tau).
//
// High period: D_h = L_h at price 1. Low period: D_l = r L_l at price 1/2
// (r = 1/2 in the base example). Supply is l(e, J) = e + (1 + eps) J. Solving
// the supply equation in each period gives
//   L_h = (1 - tau) + (1 + eps) J,      L_l = (1 - tau) r / 2 + (1 + eps) J,
// and the total profit tau p D - J L of both periods is a quadratic in
// (tau, J). With r = 1/2 it reads
//   17/16 tau - 17/16 tau^2 - 2(1 + eps) J^2 - 5/4 J + (10 + 5 eps)/4 J tau.

namespace idlewage {

struct TwoPeriodExample {
  double epsilon = 0.5;           // risk premium on idle-wage income
  double low_demand_ratio = 0.5;  // r in D_l = r L_l

  void validate() const;
};

struct FlexibleWages {
  double high = 0.0;  // J_h with tau = 1
  double low = 0.0;   // J_l with tau = 1
};

struct IdleOnlyCase {
  double idle_wage = 0.0;
  double profit = 0.0;
};

struct NoIdleCase {
  double commission = 0.0;
  double profit = 0.0;
};

struct JointCase {
  double idle_wage = 0.0;
  double commission = 0.0;
  double profit = 0.0;
};

// Per-period idle wages when each period may set its own J (tau = 1).
FlexibleWages flexible_optimum(const TwoPeriodExample& ex);

// (a) tau = 1, best shared J.
IdleOnlyCase case_a_idle_only(const TwoPeriodExample& ex);

// (b) J = 0, best shared tau.
NoIdleCase case_b_no_idle(const TwoPeriodExample& ex);

// (c) best (J, tau) over J >= 0, tau in [0, 1].
JointCase case_c_joint(const TwoPeriodExample& ex);

// Total profit of both periods. Throws ValidationError unless tau is in
// [0, 1] and J >= 0.
double example_profit_surface(const TwoPeriodExample& ex, double commission, double idle_wage);

// Smallest eps at which (c) chooses tau = 1 (0.72 for r = 1/2).
double tau_one_threshold(double low_demand_ratio);

// eps at which (a) and (b) give equal profit (0.36 for r = 1/2).
double idle_only_crossover(double low_demand_ratio);

}  // namespace idlewage
