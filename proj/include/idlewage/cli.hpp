#pragma once

// Command-line front end and the experiment drivers behind reproduce-all.
//
// Exit codes: 0 success, 1 unexpected failure, 2 usage or configuration
// error, 3 infeasible minimum-wage constraint.

#include <array>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "idlewage/optimize.hpp"
#include "idlewage/scenario.hpp"

namespace idlewage {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInfeasible = 3;

// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// --threads if given, else IDLEWAGE_THREADS, else the hardware concurrency.
unsigned resolve_threads(std::optional<unsigned> flag);

// The two-period day of the fixed-wage table: config.experiments.table2_hours
// with their pool sizes replaced by `pools`.
std::vector<PeriodScenario> two_period_day(const ScenarioConfig& config, double risk_beta,
                                           std::array<double, 2> pools);

struct Table2Row {
  double risk_beta = 0.0;
  std::array<double, 2> pools{};
  OptimResult welfare;
  OptimResult profit;
};

Table2Row table2_row(const ScenarioConfig& config, double risk_beta, std::array<double, 2> pools,
                     const ExecutionConfig& exec);

// Writes fig1.csv ... fig5.csv and table2.csv into out_dir (created if
// needed) and returns their paths. Progress goes to `log`.
std::vector<std::filesystem::path> reproduce_all(const ScenarioConfig& config,
                                                 const std::filesystem::path& out_dir,
                                                 const ExecutionConfig& exec, std::ostream& log);

}  // namespace idlewage
