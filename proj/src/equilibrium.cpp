#include "idlewage/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "idlewage/errors.hpp"
#include "idlewage/objectives.hpp"

namespace idlewage {

void PolicyPoint::validate() const {
  if (!(std::isfinite(price) && price >= 0.0)) {
    throw ValidationError("equilibrium: price must be finite and >= 0");
  }
  if (!(std::isfinite(idle_wage) && idle_wage >= 0.0)) {
    throw ValidationError("equilibrium: idle wage must be finite and >= 0");
  }
  if (!(commission >= 0.0 && commission <= 1.0)) {
    throw ValidationError("equilibrium: commission must lie in [0, 1]");
  }
}

void SolverConfig::validate() const {
  if (!(z_min > 0.0 && z_min < z_max && std::isfinite(z_max))) {
    throw ValidationError("equilibrium: solver window requires 0 < z_min < z_max < inf");
  }
  if (scan_points < 2) throw ValidationError("equilibrium: scan_points must be >= 2");
  if (!(bisect_tol > 0.0)) throw ValidationError("equilibrium: bisect_tol must be > 0");
  if (!(tol_eq > 0.0)) throw ValidationError("equilibrium: tol_eq must be > 0");
}

Equilibrium zero_equilibrium(const PolicyPoint& policy) {
  Equilibrium eq;
  eq.policy = policy;
  return eq;
}

double EquilibriumResiduals::max() const {
  return std::max(std::max(demand, balance), std::max(earnings, supply));
}

EquilibriumResiduals equilibrium_residuals(const PeriodScenario& s, const Equilibrium& eq) {
  const auto& pol = eq.policy;
  const double T = pickup_time(s.pickup, eq.idle);
  EquilibriumResiduals r;
  r.demand = std::abs(eq.throughput - demand(s.demand, pol.price, T));
  // (t + inf) * 0 is taken as 0.
  const double busy = eq.throughput == 0.0 ? 0.0 : (s.trip_time + T) * eq.throughput;
  r.balance = std::abs(eq.labour - (eq.idle + busy));
  const double e = eq.labour > 0.0
                       ? (1.0 - pol.commission) * pol.price * eq.throughput / eq.labour
                       : 0.0;
  r.earnings = std::abs(eq.earnings - e);
  r.supply = std::abs(eq.labour - supply(s.supply, eq.earnings, pol.idle_wage));
  return r;
}

double residual(const PeriodScenario& s, const PolicyPoint& policy, double z) {
  if (!(z > 0.0)) throw DomainError("equilibrium: residual requires pickup time z > 0");
  const double q = demand(s.demand, policy.price, z);
  const double idle = idle_from_time(s.pickup, z);
  const double l1 = idle + (s.trip_time + z) * q;
  const double e = l1 > 0.0 ? (1.0 - policy.commission) * policy.price * q / l1 : 0.0;
  const double l2 = supply(s.supply, e, policy.idle_wage);
  return l2 - l1;
}

// ---------------------------------------------------------------------------

PickupGrid::PickupGrid(const PickupParams& pickup, const SolverConfig& cfg) {
  cfg.validate();
  const auto n = static_cast<std::size_t>(cfg.scan_points);
  times_.resize(n);
  idle_.resize(n);
  const double log_lo = std::log(cfg.z_min);
  const double step = (std::log(cfg.z_max) - log_lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    times_[i] = std::exp(log_lo + step * static_cast<double>(i));
  }
  times_.front() = cfg.z_min;
  times_.back() = cfg.z_max;
  for (std::size_t i = 0; i < n; ++i) idle_[i] = idle_from_time_unchecked(pickup, times_[i]);
}

GapCurve::GapCurve(std::vector<double> values) : values_(std::move(values)) {
  const std::size_t n = values_.size();
  if (n == 0) return;
  run_bounds_.push_back(0);
  int direction = 0;  // +1 rising, -1 falling, 0 undecided
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double d = values_[i + 1] - values_[i];
    const int step = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
    if (step == 0) continue;
    if (direction != 0 && step != direction) run_bounds_.push_back(i);
    direction = step;
  }
  run_bounds_.push_back(n - 1);
}

void GapCurve::crossings(double idle_wage, std::vector<std::size_t>& cells) const {
  cells.clear();
  // The pay gap is positive at i iff idle_wage > values_[i]; within a
  // monotone run that predicate switches at most once.
  for (std::size_t r = 0; r + 1 < run_bounds_.size(); ++r) {
    std::size_t lo = run_bounds_[r];
    std::size_t hi = run_bounds_[r + 1];
    const bool pos_lo = idle_wage > values_[lo];
    if (pos_lo == (idle_wage > values_[hi])) continue;
    while (hi - lo > 1) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if ((idle_wage > values_[mid]) == pos_lo) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    cells.push_back(lo);
  }
}

PriceProfile::PriceProfile(const PeriodScenario& s, const PickupGrid& grid, double price)
    : price_(price), risk_beta_(s.supply.risk_beta) {
  const auto times = grid.times();
  const auto idle = grid.idle();
  const std::size_t n = times.size();
  trip_pay_.resize(n);
  required_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double q = demand(s.demand, price, times[i]);
    const double l1 = idle[i] + (s.trip_time + times[i]) * q;
    trip_pay_[i] = price * q / l1;
    required_[i] = required_wage(s.supply, l1);
  }
}

GapCurve PriceProfile::gap_curve(double commission) const {
  const double weight = risk_beta_ * (1.0 - commission);
  std::vector<double> values(required_.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = required_[i] - weight * trip_pay_[i];
  }
  return GapCurve(std::move(values));
}

// ---------------------------------------------------------------------------

EquilibriumSolver::EquilibriumSolver(const PeriodScenario& s, const SolverConfig& cfg)
    : scenario_(s), cfg_(cfg), grid_(s.pickup, cfg) {
  scenario_.validate();
}

Equilibrium EquilibriumSolver::at_pickup(const PolicyPoint& policy, double z) const {
  Equilibrium eq;
  eq.policy = policy;
  eq.pickup = z;
  eq.throughput = demand(scenario_.demand, policy.price, z);
  eq.idle = idle_from_time_unchecked(scenario_.pickup, z);
  eq.labour = eq.idle + (scenario_.trip_time + z) * eq.throughput;
  eq.earnings = (1.0 - policy.commission) * policy.price * eq.throughput / eq.labour;
  return eq;
}

Equilibrium EquilibriumSolver::refine(const PolicyPoint& policy, double lo, double hi,
                                      bool positive_at_lo) const {
  const auto& s = scenario_;
  const double weight = s.supply.risk_beta * (1.0 - policy.commission);
  auto gap_positive = [&](double z) {
    const double q = demand(s.demand, policy.price, z);
    const double l1 = idle_from_time_unchecked(s.pickup, z) + (s.trip_time + z) * q;
    return policy.idle_wage + weight * policy.price * q / l1 > required_wage(s.supply, l1);
  };
  double mid = lo + 0.5 * (hi - lo);
  // Bisect to the bracket tolerance, then keep going (down to adjacent
  // doubles) until the supply equation holds to tol_eq.
  while (mid > lo && mid < hi) {
    if (hi - lo <= cfg_.bisect_tol && std::abs(residual(s, policy, mid)) <= cfg_.tol_eq) break;
    if (gap_positive(mid) == positive_at_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
    mid = lo + 0.5 * (hi - lo);
  }
  return at_pickup(policy, mid);
}

std::size_t EquilibriumSolver::solve_into(const GapCurve& curve, const PolicyPoint& policy,
                                          std::vector<Equilibrium>& out,
                                          std::vector<std::size_t>& scratch) const {
  const auto times = grid_.times();
  curve.crossings(policy.idle_wage, scratch);
  for (const std::size_t i : scratch) {
    const bool pos_lo = policy.idle_wage > curve.at(i);
    out.push_back(refine(policy, times[i], times[i + 1], pos_lo));
  }
  if (policy.idle_wage == 0.0) out.push_back(zero_equilibrium(policy));
  return scratch.size();
}

EquilibriumSet EquilibriumSolver::solve(const PolicyPoint& policy) const {
  policy.validate();
  EquilibriumSet result;
  std::vector<std::size_t> scratch;
  const auto curve = profile(policy.price).gap_curve(policy.commission);
  const std::size_t roots = solve_into(curve, policy, result.equilibria, scratch);
  if (roots == 0 && policy.idle_wage > 0.0) {
    result.diagnostic =
        "equilibrium: no sign change of the labour residual in [" + std::to_string(cfg_.z_min) +
        ", " + std::to_string(cfg_.z_max) +
        "] h although J > 0 guarantees an equilibrium; widen the scan window";
  }
  std::sort(result.equilibria.begin(), result.equilibria.end(),
            [](const Equilibrium& a, const Equilibrium& b) {
              if (a.throughput != b.throughput) return a.throughput < b.throughput;
              return a.labour < b.labour;
            });
  return result;
}

EquilibriumSet find_equilibria(const PeriodScenario& s, const PolicyPoint& policy,
                               const SolverConfig& cfg) {
  return EquilibriumSolver(s, cfg).solve(policy);
}

const Equilibrium& select_equilibrium(const PeriodScenario& s, std::span<const Equilibrium> eqs,
                                      Objective objective) {
  if (eqs.empty()) throw std::invalid_argument("equilibrium: select_equilibrium on empty list");
  std::size_t best = 0;
  double best_value = evaluate(objective, s, eqs[0]);
  for (std::size_t i = 1; i < eqs.size(); ++i) {
    const double v = evaluate(objective, s, eqs[i]);
    const auto& a = eqs[i];
    const auto& b = eqs[best];
    const bool better =
        v > best_value ||
        (v == best_value && (a.throughput < b.throughput ||
                             (a.throughput == b.throughput && a.labour < b.labour)));
    if (better) {
      best = i;
      best_value = v;
    }
  }
  return eqs[best];
}

}  // namespace idlewage
