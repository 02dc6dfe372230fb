#pragma once

// Exhaustive grid search over platform decisions (price, idle wage,
// commission) for one period, a sequence of periods sharing one commission,
// and the minimum-wage block heuristic.
//
// All searches are deterministic. Cells are compared by objective value and
// exact ties go to the lexicographically smallest (p, J, tau); results do not
// depend on the number of worker threads.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "idlewage/equilibrium.hpp"
#include "idlewage/model.hpp"
#include "idlewage/objectives.hpp"

namespace idlewage {

// Inclusive arithmetic grid min, min + step, ..., max.
struct GridRange {
  double min = 0.0;
  double max = 0.0;
  double step = 1.0;

  std::vector<double> values() const;
  bool operator==(const GridRange&) const = default;
};

struct GridSpec {
  GridRange price{0.0, 5.0, 0.01};
  GridRange idle_wage{0.0, 2.8, 0.05};
  double tau_step = 0.05;  // commission grid covers [0, 1] with both ends

  void validate() const;
  std::vector<double> taus() const;
  bool operator==(const GridSpec&) const = default;
};

struct ExecutionConfig {
  SolverConfig solver;
  unsigned threads = 1;
};

enum class Regime { SinglePeriod, FlexibleJ, FixedJTau, MinWageBlocks };

std::string_view to_string(Regime regime);

// Per-period prices and idle wages under one shared commission.
struct DaySchedule {
  std::vector<double> prices;
  std::vector<double> idle_wages;
  double commission = 1.0;

  bool operator==(const DaySchedule&) const = default;
};

struct OptimResult {
  DaySchedule best_schedule;
  std::vector<Equilibrium> equilibria;  // selected equilibrium per period
  double value = 0.0;                   // sum over periods, $/hour each
  Regime regime = Regime::SinglePeriod;
  Objective objective = Objective::Profit;
  std::size_t cells_evaluated = 0;
  std::size_t window_misses = 0;  // cells with J > 0 and no root in the scan window

  bool operator==(const OptimResult&) const = default;
};

// Best price and equilibrium for one (J, tau) cell.
struct CellBest {
  double value = -kInfinity;
  double price = 0.0;
  Equilibrium eq;

  bool found() const { return value > -kInfinity; }
  bool operator==(const CellBest&) const = default;
};

// For one period: for every (J, tau) on the given axes and each objective,
// the best price on the price grid and the selected equilibrium.
class PeriodTable {
 public:
  static PeriodTable build(const PeriodScenario& s, const GridSpec& g,
                           std::span<const double> idle_wages, std::span<const double> taus,
                           const ExecutionConfig& exec);

  const PeriodScenario& scenario() const { return scenario_; }
  std::span<const double> idle_wages() const { return idle_wages_; }
  std::span<const double> taus() const { return taus_; }
  const CellBest& best(Objective obj, std::size_t j, std::size_t t) const;
  std::size_t cells_evaluated() const { return cells_evaluated_; }
  std::size_t window_misses() const { return window_misses_; }

 private:
  PeriodScenario scenario_;
  std::vector<double> idle_wages_;
  std::vector<double> taus_;
  std::array<std::vector<CellBest>, 2> best_;
  std::size_t cells_evaluated_ = 0;
  std::size_t window_misses_ = 0;
};

using DayTables = std::vector<PeriodTable>;

DayTables build_tables(std::span<const PeriodScenario> periods, const GridSpec& g,
                       std::span<const double> taus, const ExecutionConfig& exec);

// Best price for a fixed (J, tau), J possibly off the grid.
CellBest optimize_price(const PeriodScenario& s, Objective obj, double idle_wage,
                        double commission, const GridSpec& g, const ExecutionConfig& exec);

// ---- single period --------------------------------------------------------

OptimResult optimize_single_period(const PeriodScenario& s, Objective obj, const GridSpec& g,
                                   const ExecutionConfig& exec = {});
OptimResult optimize_single_period(const PeriodTable& table, Objective obj);

// Same search with the commission pinned to `commission` (must be on the grid).
OptimResult optimize_single_period_at_tau(const PeriodTable& table, Objective obj,
                                          double commission);

struct SweepPoint {
  double idle_wage = 0.0;
  double value = 0.0;
  double best_tau = 0.0;
  double best_price = 0.0;
  bool tau1_optimal = false;  // tau = 1 reaches the per-J maximum
};

inline constexpr double kValueTieTolerance = 1e-9;

std::vector<SweepPoint> sweep_idle_wage(const PeriodScenario& s, Objective obj,
                                        std::span<const double> idle_wages, const GridSpec& g,
                                        const ExecutionConfig& exec = {});
std::vector<SweepPoint> sweep_idle_wage(const PeriodTable& table, Objective obj);

// ---- several periods sharing one commission ------------------------------

// Each period optimised on its own with tau = 1.
OptimResult optimize_day_flexible(std::span<const PeriodScenario> periods, Objective obj,
                                  const GridSpec& g, const ExecutionConfig& exec = {});
OptimResult optimize_day_flexible(const DayTables& tables, Objective obj);

struct TauPoint {
  double tau = 0.0;
  double value = 0.0;
};

// v(tau): (p_h, J_h) optimised per period for every tau on the grid.
std::vector<TauPoint> value_vs_tau(std::span<const PeriodScenario> periods, Objective obj,
                                   const GridSpec& g, const ExecutionConfig& exec = {});
std::vector<TauPoint> value_vs_tau(const DayTables& tables, Objective obj);

// One (J, tau) for the whole horizon; prices still per period.
OptimResult optimize_day_fixed(std::span<const PeriodScenario> periods, Objective obj,
                               const GridSpec& g, const ExecutionConfig& exec = {});
OptimResult optimize_day_fixed(const DayTables& tables, Objective obj);

// Best value for every shared (J, tau) cell, J-major. Used for the fixed-day curves.
struct FixedCell {
  double idle_wage = 0.0;
  double tau = 0.0;
  double value = -kInfinity;
};
std::vector<FixedCell> fixed_day_cells(const DayTables& tables, Objective obj);

// ---- minimum-wage blocks --------------------------------------------------

// Two disjoint cyclic sub-blocks of b1 and b2 hours that must jointly pay at
// least j_min in idle wages.
struct BlockConstraint {
  int b1 = 4;
  int b2 = 4;
  double j_min = 0.0;

  void validate() const;
  bool operator==(const BlockConstraint&) const = default;
};

// 1-based start hours of the two sub-blocks.
struct BlockPair {
  int h1 = 1;
  int h2 = 1;
  auto operator<=>(const BlockPair&) const = default;
};

// Start pairs whose sub-blocks [h1, h1 + b1 - 1] and [h2, h2 + b2 - 1]
// (hours mod 24) are disjoint, in lexicographic order.
std::vector<BlockPair> admissible_blocks(int b1, int b2);

struct BlockMax {
  double value = 0.0;
  std::optional<BlockPair> pair;  // empty when no pair is admissible
};

// Largest two-block wage sum over admissible pairs. Ties go to the
// lexicographically smallest pair.
BlockMax block_wage_max(std::span<const double> hourly, int b1, int b2);

double block_sum(std::span<const double> hourly, BlockPair pair, int b1, int b2);

// Largest block sum of trip earnings attainable with J = 0 for some grid
// commission, each period choosing its price freely. When this reaches
// j_min, the constrained problem is known to be feasible.
double reference_block_earnings(const DayScenario& day, const GridSpec& g, int b1, int b2,
                                const ExecutionConfig& exec = {});

// Heuristic: flexible optimum J0, fix the best block pair of J0, and if the
// pair pays less than j_min raise its idle wages uniformly to the bound and
// re-optimise those periods' prices. Throws InfeasibleError when the
// reference condition fails or the result is worse than shutting down.
OptimResult optimize_min_wage(const DayScenario& day, Objective obj, const GridSpec& g,
                              const BlockConstraint& c, const ExecutionConfig& exec = {});
// Variant reusing flexible-regime tables (tau = 1 column) and a precomputed
// reference_block_earnings value.
OptimResult optimize_min_wage(const DayScenario& day, const DayTables& flexible_tables,
                              double reference_earnings, Objective obj, const GridSpec& g,
                              const BlockConstraint& c, const ExecutionConfig& exec = {});

}  // namespace idlewage
