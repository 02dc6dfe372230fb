#include "idlewage/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "idlewage/errors.hpp"
#include "idlewage/parallel.hpp"

namespace idlewage {

namespace {

constexpr std::size_t kObjectives = 2;

std::size_t index_of(Objective obj) { return obj == Objective::Profit ? 0 : 1; }

// Snap a computed grid value to the nearest multiple of 1e-9 when it is
// within round-off of one, so that 0.05 * 3 reads back as 0.15.
double snap(double v) {
  const double scaled = v * 1e9;
  const double k = std::round(scaled);
  return std::abs(scaled - k) < 1e-3 ? k / 1e9 : v;
}

void check_range(const GridRange& r, const char* name) {
  const bool ok = std::isfinite(r.min) && std::isfinite(r.max) && std::isfinite(r.step) &&
                  r.step > 0.0 && r.min >= 0.0 && r.max >= r.min;
  if (!ok) {
    throw ValidationError(std::string("optimize: ") + name +
                          " grid needs 0 <= min <= max and step > 0");
  }
}

std::size_t find_tau(std::span<const double> taus, double tau) {
  for (std::size_t t = 0; t < taus.size(); ++t) {
    if (std::abs(taus[t] - tau) <= 1e-9) return t;
  }
  throw ValidationError("optimize: commission " + std::to_string(tau) +
                        " is not on the table's commission axis");
}

// Exact ties on value go to the lexicographically smaller key.
bool better(double value, double best_value, std::span<const double> key,
            std::span<const double> best_key) {
  if (value != best_value) return value > best_value;
  return std::lexicographical_compare(key.begin(), key.end(), best_key.begin(),
                                      best_key.end());
}

struct ScanState {
  std::array<std::vector<CellBest>, kObjectives> best;
  std::size_t cells = 0;
  std::size_t misses = 0;
};

}  // namespace

std::vector<double> GridRange::values() const {
  check_range(*this, "value");
  const auto n = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9));
  std::vector<double> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) out[i] = snap(min + static_cast<double>(i) * step);
  return out;
}

void GridSpec::validate() const {
  check_range(price, "price");
  check_range(idle_wage, "idle wage");
  const bool tau_ok = std::isfinite(tau_step) && tau_step > 0.0 && tau_step <= 1.0 &&
                      std::abs(std::round(1.0 / tau_step) * tau_step - 1.0) <= 1e-9;
  if (!tau_ok) {
    throw ValidationError("optimize: tau_step must divide [0, 1] into whole steps");
  }
}

std::vector<double> GridSpec::taus() const {
  validate();
  const auto n = static_cast<std::size_t>(std::round(1.0 / tau_step));
  std::vector<double> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) out[i] = static_cast<double>(i) / static_cast<double>(n);
  return out;
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::SinglePeriod: return "single";
    case Regime::FlexibleJ: return "flexible";
    case Regime::FixedJTau: return "fixed";
    case Regime::MinWageBlocks: return "minwage";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------

PeriodTable PeriodTable::build(const PeriodScenario& s, const GridSpec& g,
                               std::span<const double> idle_wages,
                               std::span<const double> taus, const ExecutionConfig& exec) {
  g.validate();
  if (idle_wages.empty() || taus.empty()) {
    throw ValidationError("optimize: idle wage and commission axes must be nonempty");
  }
  for (double J : idle_wages) {
    if (!(std::isfinite(J) && J >= 0.0)) throw ValidationError("optimize: idle wages must be >= 0");
  }
  for (double tau : taus) {
    if (!(tau >= 0.0 && tau <= 1.0)) throw ValidationError("optimize: commissions must lie in [0, 1]");
  }

  PeriodTable table;
  table.scenario_ = s;
  table.idle_wages_.assign(idle_wages.begin(), idle_wages.end());
  table.taus_.assign(taus.begin(), taus.end());

  const EquilibriumSolver solver(s, exec.solver);
  const auto prices = g.price.values();
  const std::size_t nJ = idle_wages.size();
  const std::size_t nT = taus.size();
  const std::size_t nP = prices.size();

  // Contiguous price chunks, each scanned in ascending order; chunks are
  // merged in order with strict improvement so the first maximiser wins
  // regardless of how many workers ran.
  const std::size_t chunks =
      exec.threads <= 1 ? 1 : std::min<std::size_t>(nP, std::size_t{exec.threads} * 4);
  std::vector<ScanState> states(chunks);

  parallel_for(chunks, exec.threads, [&](std::size_t c) {
    ScanState& st = states[c];
    for (auto& b : st.best) b.assign(nJ * nT, CellBest{});
    std::vector<Equilibrium> eqs;
    std::vector<std::size_t> scratch;
    const std::size_t begin = nP * c / chunks;
    const std::size_t end = nP * (c + 1) / chunks;
    for (std::size_t ip = begin; ip < end; ++ip) {
      const double p = prices[ip];
      const PriceProfile profile = solver.profile(p);
      for (std::size_t t = 0; t < nT; ++t) {
        const GapCurve curve = profile.gap_curve(taus[t]);
        for (std::size_t j = 0; j < nJ; ++j) {
          const PolicyPoint policy{p, idle_wages[j], taus[t]};
          eqs.clear();
          const std::size_t roots = solver.solve_into(curve, policy, eqs, scratch);
          ++st.cells;
          if (roots == 0 && policy.idle_wage > 0.0) ++st.misses;
          if (eqs.empty()) continue;
          for (std::size_t k = 0; k < kObjectives; ++k) {
            const Objective obj = k == 0 ? Objective::Profit : Objective::Welfare;
            const Equilibrium& eq = select_equilibrium(s, eqs, obj);
            const double v = evaluate(obj, s, eq);
            CellBest& cell = st.best[k][j * nT + t];
            if (v > cell.value) cell = CellBest{v, p, eq};
          }
        }
      }
    }
  });

  for (auto& b : table.best_) b.assign(nJ * nT, CellBest{});
  for (const auto& st : states) {
    table.cells_evaluated_ += st.cells;
    table.window_misses_ += st.misses;
    for (std::size_t k = 0; k < kObjectives; ++k) {
      for (std::size_t i = 0; i < nJ * nT; ++i) {
        if (st.best[k][i].value > table.best_[k][i].value) table.best_[k][i] = st.best[k][i];
      }
    }
  }
  return table;
}

const CellBest& PeriodTable::best(Objective obj, std::size_t j, std::size_t t) const {
  return best_[index_of(obj)].at(j * taus_.size() + t);
}

DayTables build_tables(std::span<const PeriodScenario> periods, const GridSpec& g,
                       std::span<const double> taus, const ExecutionConfig& exec) {
  const auto idle_wages = g.idle_wage.values();
  DayTables tables;
  tables.reserve(periods.size());
  for (const auto& s : periods) tables.push_back(PeriodTable::build(s, g, idle_wages, taus, exec));
  return tables;
}

CellBest optimize_price(const PeriodScenario& s, Objective obj, double idle_wage,
                        double commission, const GridSpec& g, const ExecutionConfig& exec) {
  const double J[] = {idle_wage};
  const double tau[] = {commission};
  return PeriodTable::build(s, g, J, tau, exec).best(obj, 0, 0);
}

// ---- single period --------------------------------------------------------

namespace {

OptimResult single_from_cells(const PeriodTable& table, Objective obj, std::size_t t_begin,
                              std::size_t t_end) {
  const auto J = table.idle_wages();
  const auto taus = table.taus();
  const CellBest* best = nullptr;
  double best_key[3] = {0.0, 0.0, 0.0};
  for (std::size_t j = 0; j < J.size(); ++j) {
    for (std::size_t t = t_begin; t < t_end; ++t) {
      const CellBest& cell = table.best(obj, j, t);
      if (!cell.found()) continue;
      const double key[3] = {cell.price, J[j], taus[t]};
      if (!best || better(cell.value, best->value, key, best_key)) {
        best = &cell;
        std::copy(key, key + 3, best_key);
      }
    }
  }
  OptimResult r;
  r.regime = Regime::SinglePeriod;
  r.objective = obj;
  r.cells_evaluated = table.cells_evaluated();
  r.window_misses = table.window_misses();
  if (best) {
    r.best_schedule = DaySchedule{{best->price}, {best_key[1]}, best_key[2]};
    r.equilibria = {best->eq};
    r.value = best->value;
  }
  return r;
}

}  // namespace

OptimResult optimize_single_period(const PeriodTable& table, Objective obj) {
  return single_from_cells(table, obj, 0, table.taus().size());
}

OptimResult optimize_single_period(const PeriodScenario& s, Objective obj, const GridSpec& g,
                                   const ExecutionConfig& exec) {
  const auto J = g.idle_wage.values();
  const auto taus = g.taus();
  return optimize_single_period(PeriodTable::build(s, g, J, taus, exec), obj);
}

OptimResult optimize_single_period_at_tau(const PeriodTable& table, Objective obj,
                                          double commission) {
  const std::size_t t = find_tau(table.taus(), commission);
  return single_from_cells(table, obj, t, t + 1);
}

std::vector<SweepPoint> sweep_idle_wage(const PeriodTable& table, Objective obj) {
  const auto J = table.idle_wages();
  const auto taus = table.taus();
  const bool has_tau1 = taus.back() == 1.0;
  std::vector<SweepPoint> curve;
  curve.reserve(J.size());
  for (std::size_t j = 0; j < J.size(); ++j) {
    const CellBest* best = nullptr;
    double best_key[2] = {0.0, 0.0};
    double best_tau = 0.0;
    for (std::size_t t = 0; t < taus.size(); ++t) {
      const CellBest& cell = table.best(obj, j, t);
      if (!cell.found()) continue;
      const double key[2] = {cell.price, taus[t]};
      if (!best || better(cell.value, best->value, key, best_key)) {
        best = &cell;
        std::copy(key, key + 2, best_key);
        best_tau = taus[t];
      }
    }
    SweepPoint pt;
    pt.idle_wage = J[j];
    if (best) {
      pt.value = best->value;
      pt.best_tau = best_tau;
      pt.best_price = best->price;
      const CellBest& at1 = table.best(obj, j, taus.size() - 1);
      pt.tau1_optimal = has_tau1 && at1.found() && at1.value >= best->value - kValueTieTolerance;
    }
    curve.push_back(pt);
  }
  return curve;
}

std::vector<SweepPoint> sweep_idle_wage(const PeriodScenario& s, Objective obj,
                                        std::span<const double> idle_wages, const GridSpec& g,
                                        const ExecutionConfig& exec) {
  const auto taus = g.taus();
  return sweep_idle_wage(PeriodTable::build(s, g, idle_wages, taus, exec), obj);
}

// ---- several periods ------------------------------------------------------

namespace {

void add_counts(OptimResult& r, const DayTables& tables) {
  for (const auto& t : tables) {
    r.cells_evaluated += t.cells_evaluated();
    r.window_misses += t.window_misses();
  }
}

}  // namespace

OptimResult optimize_day_flexible(const DayTables& tables, Objective obj) {
  OptimResult r;
  r.regime = Regime::FlexibleJ;
  r.objective = obj;
  r.best_schedule.commission = 1.0;
  for (const auto& table : tables) {
    const OptimResult one = optimize_single_period_at_tau(table, obj, 1.0);
    const double price = one.equilibria.empty() ? 0.0 : one.best_schedule.prices[0];
    const double J = one.equilibria.empty() ? 0.0 : one.best_schedule.idle_wages[0];
    r.best_schedule.prices.push_back(price);
    r.best_schedule.idle_wages.push_back(J);
    r.equilibria.push_back(one.equilibria.empty() ? zero_equilibrium({price, J, 1.0})
                                                  : one.equilibria[0]);
    r.value += one.value;
  }
  add_counts(r, tables);
  return r;
}

OptimResult optimize_day_flexible(std::span<const PeriodScenario> periods, Objective obj,
                                  const GridSpec& g, const ExecutionConfig& exec) {
  const double tau1[] = {1.0};
  return optimize_day_flexible(build_tables(periods, g, tau1, exec), obj);
}

std::vector<TauPoint> value_vs_tau(const DayTables& tables, Objective obj) {
  std::vector<TauPoint> curve;
  if (tables.empty()) return curve;
  const auto taus = tables.front().taus();
  for (std::size_t t = 0; t < taus.size(); ++t) {
    double total = 0.0;
    for (const auto& table : tables) {
      double best = -kInfinity;
      for (std::size_t j = 0; j < table.idle_wages().size(); ++j) {
        best = std::max(best, table.best(obj, j, t).value);
      }
      if (best > -kInfinity) total += best;
    }
    curve.push_back({taus[t], total});
  }
  return curve;
}

std::vector<TauPoint> value_vs_tau(std::span<const PeriodScenario> periods, Objective obj,
                                   const GridSpec& g, const ExecutionConfig& exec) {
  const auto taus = g.taus();
  return value_vs_tau(build_tables(periods, g, taus, exec), obj);
}

std::vector<FixedCell> fixed_day_cells(const DayTables& tables, Objective obj) {
  std::vector<FixedCell> cells;
  if (tables.empty()) return cells;
  const auto J = tables.front().idle_wages();
  const auto taus = tables.front().taus();
  for (std::size_t j = 0; j < J.size(); ++j) {
    for (std::size_t t = 0; t < taus.size(); ++t) {
      FixedCell cell{J[j], taus[t], 0.0};
      for (const auto& table : tables) {
        const CellBest& b = table.best(obj, j, t);
        if (!b.found()) {
          cell.value = -kInfinity;
          break;
        }
        cell.value += b.value;
      }
      cells.push_back(cell);
    }
  }
  return cells;
}

OptimResult optimize_day_fixed(const DayTables& tables, Objective obj) {
  OptimResult r;
  r.regime = Regime::FixedJTau;
  r.objective = obj;
  add_counts(r, tables);
  if (tables.empty()) return r;
  const auto J = tables.front().idle_wages();
  const auto taus = tables.front().taus();
  const std::size_t n = tables.size();

  double best_value = -kInfinity;
  std::vector<double> best_key;
  std::size_t best_j = 0;
  std::size_t best_t = 0;
  std::vector<double> key(n + 2);
  for (std::size_t j = 0; j < J.size(); ++j) {
    for (std::size_t t = 0; t < taus.size(); ++t) {
      double total = 0.0;
      bool complete = true;
      for (std::size_t h = 0; h < n; ++h) {
        const CellBest& b = tables[h].best(obj, j, t);
        if (!b.found()) {
          complete = false;
          break;
        }
        total += b.value;
        key[h] = b.price;
      }
      if (!complete) continue;
      key[n] = J[j];
      key[n + 1] = taus[t];
      if (best_key.empty() || better(total, best_value, key, best_key)) {
        best_value = total;
        best_key = key;
        best_j = j;
        best_t = t;
      }
    }
  }
  if (best_key.empty()) return r;
  r.value = best_value;
  r.best_schedule.commission = taus[best_t];
  for (const auto& table : tables) {
    const CellBest& b = table.best(obj, best_j, best_t);
    r.best_schedule.prices.push_back(b.price);
    r.best_schedule.idle_wages.push_back(J[best_j]);
    r.equilibria.push_back(b.eq);
  }
  return r;
}

OptimResult optimize_day_fixed(std::span<const PeriodScenario> periods, Objective obj,
                               const GridSpec& g, const ExecutionConfig& exec) {
  const auto taus = g.taus();
  return optimize_day_fixed(build_tables(periods, g, taus, exec), obj);
}

// ---- minimum-wage blocks --------------------------------------------------

double reference_block_earnings(const DayScenario& day, const GridSpec& g, int b1, int b2,
                                const ExecutionConfig& exec) {
  day.validate();
  const auto taus = g.taus();
  const auto prices = g.price.values();
  // best[h][t]: largest trip earnings of period h at J = 0 and commission t.
  std::vector<std::vector<double>> best(kHoursPerDay, std::vector<double>(taus.size(), 0.0));
  parallel_for(kHoursPerDay, exec.threads, [&](std::size_t h) {
    const EquilibriumSolver solver(day.periods[h], exec.solver);
    std::vector<Equilibrium> eqs;
    std::vector<std::size_t> scratch;
    for (const double p : prices) {
      const PriceProfile profile = solver.profile(p);
      for (std::size_t t = 0; t < taus.size(); ++t) {
        eqs.clear();
        solver.solve_into(profile.gap_curve(taus[t]), {p, 0.0, taus[t]}, eqs, scratch);
        for (const auto& eq : eqs) best[h][t] = std::max(best[h][t], eq.earnings);
      }
    }
  });
  double result = 0.0;
  std::vector<double> hourly(kHoursPerDay);
  for (std::size_t t = 0; t < taus.size(); ++t) {
    for (std::size_t h = 0; h < kHoursPerDay; ++h) hourly[h] = best[h][t];
    result = std::max(result, block_wage_max(hourly, b1, b2).value);
  }
  return result;
}

OptimResult optimize_min_wage(const DayScenario& day, const DayTables& flexible_tables,
                              double reference_earnings, Objective obj, const GridSpec& g,
                              const BlockConstraint& c, const ExecutionConfig& exec) {
  c.validate();
  day.validate();
  if (flexible_tables.size() != kHoursPerDay) {
    throw ValidationError("optimize: minimum-wage search needs 24 period tables");
  }
  if (reference_earnings < c.j_min) {
    throw InfeasibleError("optimize: minimum block wage " + std::to_string(c.j_min) +
                          " exceeds the best block earnings reachable without idle wage (" +
                          std::to_string(reference_earnings) + ")");
  }

  OptimResult r = optimize_day_flexible(flexible_tables, obj);
  r.regime = Regime::MinWageBlocks;
  auto& J = r.best_schedule.idle_wages;
  const BlockMax top = block_wage_max(J, c.b1, c.b2);
  if (top.value >= c.j_min) return r;

  // Raise the idle wages of the chosen blocks uniformly to the bound.
  std::vector<std::size_t> hours;
  auto add_block = [&](int start, int length) {
    for (int k = 0; k < length; ++k) hours.push_back(static_cast<std::size_t>((start - 1 + k) % 24));
  };
  add_block(top.pair->h1, c.b1);
  add_block(top.pair->h2, c.b2);
  if (top.value > 0.0) {
    const double factor = c.j_min / top.value;
    for (auto h : hours) J[h] *= factor;
  } else {
    for (auto h : hours) J[h] = c.j_min / static_cast<double>(hours.size());
  }
  while (block_sum(J, *top.pair, c.b1, c.b2) < c.j_min) {
    for (auto h : hours) J[h] = std::nextafter(J[h], kInfinity);
  }

  for (auto h : hours) {
    const PeriodScenario& s = day.periods[h];
    const CellBest cell = optimize_price(s, obj, J[h], 1.0, g, exec);
    if (!cell.found()) {
      throw InfeasibleError("optimize: no equilibrium for block hour " + std::to_string(h + 1) +
                            " at idle wage " + std::to_string(J[h]));
    }
    r.best_schedule.prices[h] = cell.price;
    r.equilibria[h] = cell.eq;
    r.cells_evaluated += g.price.values().size();
  }
  double total = 0.0;
  for (std::size_t h = 0; h < kHoursPerDay; ++h) {
    total += evaluate(obj, day.periods[h], r.equilibria[h]);
  }
  r.value = total;
  if (r.value < 0.0) {
    throw InfeasibleError("optimize: minimum block wage " + std::to_string(c.j_min) +
                          " leaves a day value below shutting down");
  }
  return r;
}

OptimResult optimize_min_wage(const DayScenario& day, Objective obj, const GridSpec& g,
                              const BlockConstraint& c, const ExecutionConfig& exec) {
  c.validate();
  day.validate();
  const double tau1[] = {1.0};
  const auto tables = build_tables(day.periods, g, tau1, exec);
  const double reference = reference_block_earnings(day, g, c.b1, c.b2, exec);
  return optimize_min_wage(day, tables, reference, obj, g, c, exec);
}

}  // namespace idlewage
