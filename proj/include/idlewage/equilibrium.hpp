#pragma once

// Enumeration of the equilibria (e, I, L, Q) induced by a platform decision
// (p, J, tau) in one period.
//
// Every equilibrium with finite pickup time z solves L2(z) = L1(z), where
//   Q(z)  = D(p, z),  I(z) = T^-1(z),  L1(z) = I(z) + (t + z) Q(z),
//   e(z)  = (1 - tau) p Q(z) / L1(z),  L2(z) = l(e(z), J).
// The solver scans z on a geometric grid, brackets every sign change of
// L2 - L1 and bisects each bracket. When J = 0 the all-zero tuple is an
// equilibrium as well and is always reported.
//
// Because l is strictly increasing in the pay risk_beta * e + J, the sign of
// L2 - L1 equals the sign of the pay gap
//   J + risk_beta (1 - tau) p Q / L1 - required_wage(L1),
// which the scan evaluates with no transcendental calls once a price profile
// has been built. Grid search reuses one profile for every (J, tau).

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "idlewage/model.hpp"

namespace idlewage {

enum class Objective;

struct PolicyPoint {
  double price = 0.0;       // $/trip
  double idle_wage = 0.0;   // $/hour
  double commission = 0.0;  // fraction of the fare kept by the platform

  void validate() const;
  bool operator==(const PolicyPoint&) const = default;
};

struct Equilibrium {
  double earnings = 0.0;    // e, $/hour per driver
  double idle = 0.0;        // I, drivers
  double labour = 0.0;      // L, drivers
  double throughput = 0.0;  // Q, trips/hour
  double pickup = kInfinity;  // T(I), hours
  PolicyPoint policy;

  bool is_zero() const { return labour == 0.0 && throughput == 0.0; }
  bool operator==(const Equilibrium&) const = default;
};

Equilibrium zero_equilibrium(const PolicyPoint& policy);

struct SolverConfig {
  double z_min = 1e-4;   // hours
  double z_max = 50.0;   // hours
  int scan_points = 4096;
  double bisect_tol = 1e-10;  // hours
  double tol_eq = 1e-8;       // drivers

  void validate() const;
  bool operator==(const SolverConfig&) const = default;
};

// Absolute residuals of the four equilibrium equations.
struct EquilibriumResiduals {
  double demand = 0.0;    // |Q - D(p, T(I))|
  double balance = 0.0;   // |L - I - (t + T(I)) Q|
  double earnings = 0.0;  // |e - (1 - tau) p Q / L|
  double supply = 0.0;    // |L - l(e, J)|

  double max() const;
};

EquilibriumResiduals equilibrium_residuals(const PeriodScenario& s, const Equilibrium& eq);

// L2(z) - L1(z). Throws DomainError for z <= 0.
double residual(const PeriodScenario& s, const PolicyPoint& policy, double z);

struct EquilibriumSet {
  std::vector<Equilibrium> equilibria;  // ascending throughput
  std::string diagnostic;               // empty unless the scan window missed

  bool ok() const { return diagnostic.empty(); }
};

EquilibriumSet find_equilibria(const PeriodScenario& s, const PolicyPoint& policy,
                               const SolverConfig& cfg = {});

// Best equilibrium under `objective`; ties go to the smaller Q, then smaller L.
// Throws std::invalid_argument on an empty list.
const Equilibrium& select_equilibrium(const PeriodScenario& s, std::span<const Equilibrium> eqs,
                                      Objective objective);

// Geometric grid of pickup times together with the idle counts they imply.
class PickupGrid {
 public:
  PickupGrid(const PickupParams& pickup, const SolverConfig& cfg);

  std::size_t size() const { return times_.size(); }
  std::span<const double> times() const { return times_; }
  std::span<const double> idle() const { return idle_; }

 private:
  std::vector<double> times_;
  std::vector<double> idle_;
};

// Sign structure of the pay gap along the grid for one (price, commission).
// `required_minus_trip_pay` is required_wage(L1) - risk_beta (1 - tau) p Q / L1;
// the pay gap at a grid point is J minus that value.
class GapCurve {
 public:
  GapCurve() = default;
  explicit GapCurve(std::vector<double> required_minus_trip_pay);

  // Lower indices of grid cells [i, i + 1] across which the pay gap changes
  // sign, ascending. Same cells as a linear scan, found per monotone run.
  void crossings(double idle_wage, std::vector<std::size_t>& cells) const;

  double at(std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<double> values_;
  std::vector<std::size_t> run_bounds_;  // monotone runs [b_j, b_{j+1}]
};

// Per-price quantities that do not depend on (J, tau).
class PriceProfile {
 public:
  PriceProfile(const PeriodScenario& s, const PickupGrid& grid, double price);

  double price() const { return price_; }
  GapCurve gap_curve(double commission) const;

 private:
  double price_;
  double risk_beta_;
  std::vector<double> trip_pay_;  // p Q / L1
  std::vector<double> required_;  // required_wage(L1)
};

// Reusable solver bound to one period. Thread-safe for concurrent const use.
class EquilibriumSolver {
 public:
  explicit EquilibriumSolver(const PeriodScenario& s, const SolverConfig& cfg = {});

  const PeriodScenario& scenario() const { return scenario_; }
  const SolverConfig& config() const { return cfg_; }
  const PickupGrid& grid() const { return grid_; }

  EquilibriumSet solve(const PolicyPoint& policy) const;

  PriceProfile profile(double price) const { return PriceProfile(scenario_, grid_, price); }

  // Appends the equilibria of `policy` to `out` (unsorted, zero tuple
  // included when J = 0). `curve` must come from profile(policy.price)
  // .gap_curve(policy.commission). Returns the number of finite roots found.
  std::size_t solve_into(const GapCurve& curve, const PolicyPoint& policy,
                         std::vector<Equilibrium>& out,
                         std::vector<std::size_t>& scratch) const;

 private:
  Equilibrium refine(const PolicyPoint& policy, double lo, double hi, bool positive_at_lo) const;
  Equilibrium at_pickup(const PolicyPoint& policy, double z) const;

  PeriodScenario scenario_;
  SolverConfig cfg_;
  PickupGrid grid_;
};

}  // namespace idlewage
