#include "idlewage/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "idlewage/analytic.hpp"
#include "idlewage/errors.hpp"
#include "idlewage/objectives.hpp"

namespace idlewage {

namespace {

constexpr Objective kBothObjectives[] = {Objective::Welfare, Objective::Profit};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Fixed-width text table for standard output.
void print_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out << (i ? "  " : "") << std::string(width[i] - cells[i].size(), ' ') << cells[i];
    }
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

ResultTable make_table(std::vector<std::string> columns, const ScenarioConfig& config,
                       std::string_view regime, std::string_view objective,
                       std::string_view experiment) {
  ResultTable t(std::move(columns));
  t.set_meta("experiment", std::string(experiment));
  t.set_meta("regime", std::string(regime));
  t.set_meta("objective", std::string(objective));
  t.set_meta("scenario_hash", scenario_hash(config));
  t.set_meta("tool_version", IDLEWAGE_VERSION);
  return t;
}

void report_counts(std::ostream& log, std::string_view what, std::size_t cells,
                   std::size_t misses) {
  log << "optimize: " << what << ": " << cells << " cells evaluated";
  if (misses) log << ", " << misses << " cells without a root in the scan window";
  log << '\n';
}

std::vector<TableCell> schedule_row(int hour, const OptimResult& r, std::size_t h,
                                    const PeriodScenario& s) {
  const Equilibrium& eq = r.equilibria[h];
  return {static_cast<double>(hour), r.best_schedule.prices[h], r.best_schedule.idle_wages[h],
          r.best_schedule.commission, eq.throughput, eq.labour, eq.earnings,
          evaluate(r.objective, s, eq)};
}

const std::vector<std::string> kScheduleColumns = {"hour", "price", "idle_wage", "commission",
                                                   "throughput", "labour", "earnings", "value"};

// Per-J best over tau for the shared-(J, tau) day, ties to the smaller tau.
struct FixedSweepPoint {
  double idle_wage;
  double value;
  double best_tau;
  bool tau1_optimal;
};

std::vector<FixedSweepPoint> fixed_sweep(const DayTables& tables, Objective obj) {
  const auto cells = fixed_day_cells(tables, obj);
  const std::size_t nT = tables.front().taus().size();
  std::vector<FixedSweepPoint> curve;
  for (std::size_t i = 0; i < cells.size(); i += nT) {
    FixedSweepPoint pt{cells[i].idle_wage, -kInfinity, 0.0, false};
    for (std::size_t t = 0; t < nT; ++t) {
      if (cells[i + t].value > pt.value) {
        pt.value = cells[i + t].value;
        pt.best_tau = cells[i + t].tau;
      }
    }
    const auto& last = cells[i + nT - 1];
    pt.tau1_optimal = last.tau == 1.0 && last.value >= pt.value - kValueTieTolerance;
    curve.push_back(pt);
  }
  return curve;
}

}  // namespace

unsigned resolve_threads(std::optional<unsigned> flag) {
  if (flag && *flag > 0) return *flag;
  if (const char* env = std::getenv("IDLEWAGE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<PeriodScenario> two_period_day(const ScenarioConfig& config, double risk_beta,
                                           std::array<double, 2> pools) {
  const DayScenario day = config.day(risk_beta);
  std::vector<PeriodScenario> periods;
  for (int k = 0; k < 2; ++k) {
    PeriodScenario s = day.hour(config.experiments.table2_hours[static_cast<std::size_t>(k)]);
    s.supply.pool_size = pools[static_cast<std::size_t>(k)];
    s.validate();
    periods.push_back(s);
  }
  return periods;
}

Table2Row table2_row(const ScenarioConfig& config, double risk_beta, std::array<double, 2> pools,
                     const ExecutionConfig& exec) {
  const auto periods = two_period_day(config, risk_beta, pools);
  const auto tables = build_tables(periods, config.grid, config.grid.taus(), exec);
  return Table2Row{risk_beta, pools, optimize_day_fixed(tables, Objective::Welfare),
                   optimize_day_fixed(tables, Objective::Profit)};
}

std::vector<std::filesystem::path> reproduce_all(const ScenarioConfig& config,
                                                 const std::filesystem::path& out_dir,
                                                 const ExecutionConfig& exec, std::ostream& log) {
  config.validate();
  std::filesystem::create_directories(out_dir);
  const auto& ex = config.experiments;
  const auto& g = config.grid;
  const auto J = g.idle_wage.values();
  const auto taus = g.taus();
  std::vector<std::filesystem::path> written;
  auto emit = [&](const ResultTable& t, const char* name) {
    const auto path = out_dir / name;
    emit_table(t, path);
    written.push_back(path);
    log << "cli: wrote " << path.string() << '\n';
  };

  // Single-period sweep over J.
  {
    auto t = make_table({"risk_beta", "objective", "idle_wage", "value", "best_tau", "best_price",
                         "tau1_optimal"},
                        config, to_string(Regime::SinglePeriod), "both", "fig1");
    t.set_meta("hour", std::to_string(ex.sweep_hour));
    for (double beta : ex.sweep_risk_betas) {
      const auto table =
          PeriodTable::build(config.day(beta).hour(ex.sweep_hour), g, J, taus, exec);
      report_counts(log, "fig1 beta " + fmt(beta), table.cells_evaluated(),
                    table.window_misses());
      for (Objective obj : kBothObjectives) {
        for (const auto& pt : sweep_idle_wage(table, obj)) {
          t.add_row({beta, std::string(to_string(obj)), pt.idle_wage, pt.value, pt.best_tau,
                     pt.best_price, pt.tau1_optimal ? 1.0 : 0.0});
        }
      }
    }
    emit(t, "fig1.csv");
  }

  // Full day: value against a shared tau, and the shared-(J, tau) sweep.
  {
    auto fig2 = make_table({"risk_beta", "objective", "tau", "value"}, config,
                           to_string(Regime::FlexibleJ), "both", "fig2");
    auto fig4 = make_table({"risk_beta", "objective", "idle_wage", "value", "best_tau",
                            "tau1_optimal"},
                           config, to_string(Regime::FixedJTau), "both", "fig4");
    for (double beta : ex.day_risk_betas) {
      const auto tables = build_tables(config.day(beta).periods, g, taus, exec);
      std::size_t cells = 0;
      std::size_t misses = 0;
      for (const auto& tb : tables) {
        cells += tb.cells_evaluated();
        misses += tb.window_misses();
      }
      report_counts(log, "full day beta " + fmt(beta), cells, misses);
      for (Objective obj : kBothObjectives) {
        for (const auto& pt : value_vs_tau(tables, obj)) {
          fig2.add_row({beta, std::string(to_string(obj)), pt.tau, pt.value});
        }
        for (const auto& pt : fixed_sweep(tables, obj)) {
          fig4.add_row({beta, std::string(to_string(obj)), pt.idle_wage, pt.value, pt.best_tau,
                        pt.tau1_optimal ? 1.0 : 0.0});
        }
      }
    }
    emit(fig2, "fig2.csv");
    emit(fig4, "fig4.csv");
  }

  // Hourly idle wages with per-period J (tau = 1), and the minimum-wage runs.
  {
    const double tau1[] = {1.0};
    const DayScenario day = config.day(ex.min_wage_risk_beta);
    const auto tables = build_tables(day.periods, g, tau1, exec);
    const auto welfare = optimize_day_flexible(tables, Objective::Welfare);
    const auto profit = optimize_day_flexible(tables, Objective::Profit);
    report_counts(log, "flexible day", welfare.cells_evaluated, welfare.window_misses);

    auto fig3 = make_table({"hour", "J_welfare", "J_profit", "price_welfare", "price_profit"},
                           config, to_string(Regime::FlexibleJ), "both", "fig3");
    fig3.set_meta("risk_beta", fmt(ex.min_wage_risk_beta));
    for (std::size_t h = 0; h < kHoursPerDay; ++h) {
      fig3.add_row({static_cast<double>(h + 1), welfare.best_schedule.idle_wages[h],
                    profit.best_schedule.idle_wages[h], welfare.best_schedule.prices[h],
                    profit.best_schedule.prices[h]});
    }
    emit(fig3, "fig3.csv");

    auto fig5 = make_table({"objective", "j_min", "value", "unconstrained_value", "block_h1",
                            "block_h2", "status"},
                           config, to_string(Regime::MinWageBlocks), "both", "fig5");
    fig5.set_meta("risk_beta", fmt(ex.min_wage_risk_beta));
    const BlockConstraint base = config.block;
    const double reference = reference_block_earnings(day, g, base.b1, base.b2, exec);
    fig5.set_meta("reference_block_earnings", format_number(reference));
    for (Objective obj : kBothObjectives) {
      const double unconstrained = obj == Objective::Welfare ? welfare.value : profit.value;
      for (double jmin : ex.min_wage_levels) {
        BlockConstraint c = base;
        c.j_min = jmin;
        try {
          const auto r = optimize_min_wage(day, tables, reference, obj, g, c, exec);
          const auto top = block_wage_max(r.best_schedule.idle_wages, c.b1, c.b2);
          fig5.add_row({std::string(to_string(obj)), jmin, r.value, unconstrained,
                        static_cast<double>(top.pair->h1), static_cast<double>(top.pair->h2),
                        std::string("ok")});
        } catch (const InfeasibleError&) {
          const double nan = std::nan("");
          fig5.add_row({std::string(to_string(obj)), jmin, nan, unconstrained, nan, nan,
                        std::string("infeasible")});
        }
      }
    }
    emit(fig5, "fig5.csv");
  }

  // Shared (J, tau) on the two-period day.
  {
    auto t = make_table({"risk_beta", "pool_low", "pool_high", "welfare_J", "welfare_tau",
                         "welfare_value", "profit_J", "profit_tau", "profit_value"},
                        config, to_string(Regime::FixedJTau), "both", "table2");
    t.set_meta("hours", std::to_string(ex.table2_hours[0]) + " " +
                            std::to_string(ex.table2_hours[1]));
    for (double beta : ex.table2_risk_betas) {
      for (const auto& pools : ex.table2_pools) {
        const Table2Row row = table2_row(config, beta, pools, exec);
        report_counts(log, "table2 beta " + fmt(beta), row.welfare.cells_evaluated,
                      row.welfare.window_misses);
        t.add_row({beta, pools[0], pools[1], row.welfare.best_schedule.idle_wages.at(0),
                   row.welfare.best_schedule.commission, row.welfare.value,
                   row.profit.best_schedule.idle_wages.at(0), row.profit.best_schedule.commission,
                   row.profit.value});
      }
    }
    emit(t, "table2.csv");
  }
  return written;
}

// ---------------------------------------------------------------------------

namespace {

struct CommonOptions {
  std::string config_path;
  unsigned threads = 0;
  bool deterministic = true;
};

struct Context {
  ScenarioConfig config;
  ExecutionConfig exec;
};

Context load_context(const CommonOptions& common) {
  Context ctx;
  ctx.config = common.config_path.empty() ? default_config() : load_config(common.config_path);
  ctx.exec.solver = ctx.config.solver;
  ctx.exec.threads =
      resolve_threads(common.threads > 0 ? std::optional<unsigned>(common.threads) : std::nullopt);
  return ctx;
}

Objective objective_from(const std::string& name) {
  const auto obj = parse_objective(name);
  if (!obj) throw ValidationError("cli: unknown objective '" + name + "'");
  return *obj;
}

void maybe_emit(const ResultTable& t, const std::string& out_path, std::ostream& err) {
  if (out_path.empty()) return;
  emit_table(t, out_path);
  err << "cli: wrote " << out_path << '\n';
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equilibrium solver and policy optimiser for ride-hailing with idle wages",
               "idlewage"};
  app.set_version_flag("--version", std::string(IDLEWAGE_VERSION));
  app.require_subcommand(1);
  app.fallthrough();

  CommonOptions common;
  app.add_option("--config", common.config_path, "JSON scenario configuration")
      ->check(CLI::ExistingFile);
  app.add_option("--threads", common.threads,
                 "Worker threads (default: IDLEWAGE_THREADS, else all cores)");
  app.add_flag("--seedless-deterministic", common.deterministic,
               "Documents that results never depend on seeds or thread count (always on)");

  const auto objectives = CLI::IsMember({"profit", "welfare"});
  std::function<int()> action;

  // equilibrium
  auto* eq_cmd = app.add_subcommand("equilibrium", "List every equilibrium of one policy");
  int eq_hour = 19;
  double eq_p = 0.0, eq_J = 0.0, eq_tau = 0.0;
  std::optional<double> eq_beta;
  std::string eq_out;
  eq_cmd->add_option("--hour", eq_hour, "Hour of the day, 1..24")->check(CLI::Range(1, 24));
  eq_cmd->add_option("--p", eq_p, "Price per trip")->required();
  eq_cmd->add_option("--J", eq_J, "Idle wage per hour")->required();
  eq_cmd->add_option("--tau", eq_tau, "Commission in [0, 1]")->required();
  eq_cmd->add_option("--beta", eq_beta, "Override the risk weight");
  eq_cmd->add_option("--out", eq_out, "CSV output path");
  eq_cmd->callback([&] {
    action = [&] {
      const Context ctx = load_context(common);
      const PeriodScenario s = ctx.config.day(eq_beta.value_or(ctx.config.risk_beta)).hour(eq_hour);
      const PolicyPoint pol{eq_p, eq_J, eq_tau};
      const auto set = find_equilibria(s, pol, ctx.config.solver);
      if (!set.ok()) err << set.diagnostic << '\n';
      out << "hour " << eq_hour << ", p = " << fmt(eq_p) << ", J = " << fmt(eq_J)
          << ", tau = " << fmt(eq_tau) << ": " << set.equilibria.size() << " equilibria\n";
      auto t = make_table({"throughput", "labour", "idle", "earnings", "pickup", "profit",
                           "welfare", "res_demand", "res_balance", "res_earnings",
                           "res_supply"},
                          ctx.config, "equilibrium", "none", "equilibrium");
      std::vector<std::vector<std::string>> rows;
      for (const auto& e : set.equilibria) {
        const auto r = equilibrium_residuals(s, e);
        t.add_row({e.throughput, e.labour, e.idle, e.earnings, e.pickup, profit(s, e),
                   welfare(s, e), r.demand, r.balance, r.earnings, r.supply});
        rows.push_back({fmt(e.throughput), fmt(e.labour), fmt(e.idle), fmt(e.earnings),
                        fmt(e.pickup), fmt(profit(s, e)), fmt(welfare(s, e)), fmt(r.max())});
      }
      print_table(out, {"Q", "L", "I", "e", "T", "profit", "welfare", "max_residual"}, rows);
      maybe_emit(t, eq_out, err);
      return kExitOk;
    };
  });

  // sweep-j
  auto* sweep_cmd = app.add_subcommand("sweep-j", "Best value for every idle wage, one period");
  int sweep_hour = 0;
  std::string sweep_obj, sweep_out;
  std::optional<double> sweep_beta;
  sweep_cmd->add_option("--hour", sweep_hour, "Hour of the day (default from config)")
      ->check(CLI::Range(1, 24));
  sweep_cmd->add_option("--objective", sweep_obj)->required()->check(objectives);
  sweep_cmd->add_option("--beta", sweep_beta, "Override the risk weight");
  sweep_cmd->add_option("--out", sweep_out, "CSV output path");
  sweep_cmd->callback([&] {
    action = [&] {
      const Context ctx = load_context(common);
      const int hour = sweep_hour > 0 ? sweep_hour : ctx.config.experiments.sweep_hour;
      const Objective obj = objective_from(sweep_obj);
      const PeriodScenario s = ctx.config.day(sweep_beta.value_or(ctx.config.risk_beta)).hour(hour);
      const auto J = ctx.config.grid.idle_wage.values();
      const auto table = PeriodTable::build(s, ctx.config.grid, J, ctx.config.grid.taus(), ctx.exec);
      report_counts(err, "sweep-j", table.cells_evaluated(), table.window_misses());
      auto t = make_table({"idle_wage", "value", "best_tau", "best_price", "tau1_optimal"},
                          ctx.config, to_string(Regime::SinglePeriod), to_string(obj), "sweep-j");
      std::vector<std::vector<std::string>> rows;
      for (const auto& pt : sweep_idle_wage(table, obj)) {
        t.add_row({pt.idle_wage, pt.value, pt.best_tau, pt.best_price, pt.tau1_optimal ? 1.0 : 0.0});
        rows.push_back({fmt(pt.idle_wage), fmt(pt.value), fmt(pt.best_tau), fmt(pt.best_price),
                        pt.tau1_optimal ? "*" : ""});
      }
      print_table(out, {"J", "value", "tau", "p", "tau=1"}, rows);
      maybe_emit(t, sweep_out, err);
      return kExitOk;
    };
  });

  // optimize
  auto* opt_cmd = app.add_subcommand("optimize", "Optimise one regime");
  std::string regime_name, opt_obj, opt_out;
  int opt_hour = 0;
  std::optional<double> opt_beta, opt_jmin;
  opt_cmd->add_option("regime", regime_name, "single | flexible | fixed | minwage")
      ->required()
      ->check(CLI::IsMember({"single", "flexible", "fixed", "minwage"}));
  opt_cmd->add_option("--objective", opt_obj)->required()->check(objectives);
  opt_cmd->add_option("--hour", opt_hour, "Hour for the single-period regime")
      ->check(CLI::Range(1, 24));
  opt_cmd->add_option("--beta", opt_beta, "Override the risk weight");
  opt_cmd->add_option("--j-min", opt_jmin, "Minimum block wage (minwage regime)");
  opt_cmd->add_option("--out", opt_out, "CSV output path");
  opt_cmd->callback([&] {
    action = [&] {
      const Context ctx = load_context(common);
      const Objective obj = objective_from(opt_obj);
      const auto& g = ctx.config.grid;
      const DayScenario day = ctx.config.day(opt_beta.value_or(ctx.config.risk_beta));
      OptimResult r;
      std::vector<int> hours;
      if (regime_name == "single") {
        const int hour = opt_hour > 0 ? opt_hour : ctx.config.experiments.sweep_hour;
        r = optimize_single_period(day.hour(hour), obj, g, ctx.exec);
        hours = {hour};
      } else {
        for (int h = 1; h <= static_cast<int>(kHoursPerDay); ++h) hours.push_back(h);
        if (regime_name == "flexible") {
          r = optimize_day_flexible(day.periods, obj, g, ctx.exec);
        } else if (regime_name == "fixed") {
          r = optimize_day_fixed(day.periods, obj, g, ctx.exec);
        } else {
          BlockConstraint c = ctx.config.block;
          if (opt_jmin) c.j_min = *opt_jmin;
          r = optimize_min_wage(day, obj, g, c, ctx.exec);
        }
      }
      report_counts(err, regime_name, r.cells_evaluated, r.window_misses);
      auto t = make_table(kScheduleColumns, ctx.config, to_string(r.regime), to_string(obj),
                          "optimize");
      std::vector<std::vector<std::string>> rows;
      for (std::size_t i = 0; i < hours.size(); ++i) {
        const auto row = schedule_row(hours[i], r, i, day.hour(hours[i]));
        t.add_row(row);
        std::vector<std::string> text;
        for (const auto& cell : row) text.push_back(fmt(std::get<double>(cell)));
        rows.push_back(text);
      }
      out << to_string(r.regime) << " " << to_string(obj) << ": value " << fmt(r.value)
          << ", commission " << fmt(r.best_schedule.commission) << '\n';
      print_table(out, kScheduleColumns, rows);
      maybe_emit(t, opt_out, err);
      return kExitOk;
    };
  });

  // value-vs-tau
  auto* vt_cmd = app.add_subcommand("value-vs-tau", "Full-day value with a shared commission");
  std::string vt_obj, vt_out;
  std::optional<double> vt_beta;
  vt_cmd->add_option("--objective", vt_obj)->required()->check(objectives);
  vt_cmd->add_option("--beta", vt_beta, "Override the risk weight");
  vt_cmd->add_option("--out", vt_out, "CSV output path");
  vt_cmd->callback([&] {
    action = [&] {
      const Context ctx = load_context(common);
      const Objective obj = objective_from(vt_obj);
      const DayScenario day = ctx.config.day(vt_beta.value_or(ctx.config.risk_beta));
      const auto curve = value_vs_tau(day.periods, obj, ctx.config.grid, ctx.exec);
      auto t = make_table({"tau", "value"}, ctx.config, to_string(Regime::FlexibleJ),
                          to_string(obj), "value-vs-tau");
      std::vector<std::vector<std::string>> rows;
      for (const auto& pt : curve) {
        t.add_row({pt.tau, pt.value});
        rows.push_back({fmt(pt.tau), fmt(pt.value)});
      }
      print_table(out, {"tau", "value"}, rows);
      maybe_emit(t, vt_out, err);
      return kExitOk;
    };
  });

  // table2
  auto* t2_cmd = app.add_subcommand("table2", "Shared (J, tau) on the two-period day");
  double t2_beta = kDefaultRiskBeta, t2_a4 = 0.0, t2_a19 = 0.0;
  std::string t2_obj, t2_out;
  t2_cmd->add_option("--beta", t2_beta, "Risk weight")->required();
  t2_cmd->add_option("--A4", t2_a4, "Pool size of the low-demand hour")->required();
  t2_cmd->add_option("--A19", t2_a19, "Pool size of the high-demand hour")->required();
  t2_cmd->add_option("--objective", t2_obj)->required()->check(objectives);
  t2_cmd->add_option("--out", t2_out, "CSV output path");
  t2_cmd->callback([&] {
    action = [&] {
      const Context ctx = load_context(common);
      const Objective obj = objective_from(t2_obj);
      const auto periods = two_period_day(ctx.config, t2_beta, {t2_a4, t2_a19});
      const auto r = optimize_day_fixed(periods, obj, ctx.config.grid, ctx.exec);
      report_counts(err, "table2", r.cells_evaluated, r.window_misses);
      auto t = make_table({"risk_beta", "pool_low", "pool_high", "idle_wage", "commission",
                           "value"},
                          ctx.config, to_string(Regime::FixedJTau), to_string(obj), "table2");
      const double J = r.best_schedule.idle_wages.empty() ? 0.0 : r.best_schedule.idle_wages[0];
      t.add_row({t2_beta, t2_a4, t2_a19, J, r.best_schedule.commission, r.value});
      print_table(out, {"beta", "A_low", "A_high", "J", "tau", "value"},
                  {{fmt(t2_beta), fmt(t2_a4), fmt(t2_a19), fmt(J),
                    fmt(r.best_schedule.commission), fmt(r.value)}});
      maybe_emit(t, t2_out, err);
      return kExitOk;
    };
  });

  // analytic
  auto* an_cmd = app.add_subcommand("analytic", "Closed-form two-period example");
  std::vector<double> an_eps = {1.0};
  double an_ratio = 0.5;
  std::string an_out;
  an_cmd->add_option("--epsilon", an_eps, "Risk premium values (repeatable)");
  an_cmd->add_option("--low-ratio", an_ratio, "Low-period demand per driver");
  an_cmd->add_option("--out", an_out, "CSV output path");
  an_cmd->callback([&] {
    action = [&] {
      const Context ctx = load_context(common);
      auto t = make_table({"epsilon", "case", "idle_wage", "commission", "profit"}, ctx.config,
                          "analytic", "profit", "analytic");
      std::vector<std::vector<std::string>> rows;
      auto add = [&](double eps, const char* name, double J, double tau, double value) {
        t.add_row({eps, std::string(name), J, tau, value});
        rows.push_back({fmt(eps), name, fmt(J), fmt(tau), fmt(value)});
      };
      for (double eps : an_eps) {
        const TwoPeriodExample ex{eps, an_ratio};
        const auto a = case_a_idle_only(ex);
        const auto b = case_b_no_idle(ex);
        const auto c = case_c_joint(ex);
        add(eps, "a", a.idle_wage, 1.0, a.profit);
        add(eps, "b", 0.0, b.commission, b.profit);
        add(eps, "c", c.idle_wage, c.commission, c.profit);
      }
      print_table(out, {"epsilon", "case", "J", "tau", "profit"}, rows);
      maybe_emit(t, an_out, err);
      return kExitOk;
    };
  });

  // reproduce-all
  auto* rep_cmd = app.add_subcommand("reproduce-all", "Write every figure and table CSV");
  std::string rep_out = "results";
  rep_cmd->add_option("--out", rep_out, "Output directory");
  rep_cmd->callback([&] {
    action = [&] {
      const Context ctx = load_context(common);
      const auto start = std::chrono::steady_clock::now();
      const auto files = reproduce_all(ctx.config, rep_out, ctx.exec, err);
      const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
      for (const auto& f : files) out << f.string() << '\n';
      err << "cli: reproduce-all finished in " << fmt(took.count()) << " s with "
          << ctx.exec.threads << " threads\n";
      return kExitOk;
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << IDLEWAGE_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "cli: " << e.what() << '\n';
    return kExitUsage;
  }
  if (!action) {
    err << "cli: no subcommand given\n";
    return kExitUsage;
  }
  return action();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  } catch (const InfeasibleError& e) {
    err << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kExitFailure;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace idlewage
