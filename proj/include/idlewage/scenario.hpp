#pragma once

// Built-in calibration, JSON configuration and CSV result tables.

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "idlewage/equilibrium.hpp"
#include "idlewage/model.hpp"
#include "idlewage/optimize.hpp"

namespace idlewage {

inline constexpr std::array<double, kHoursPerDay> kBuiltinLambda = {
    30, 15, 10, 5, 15, 18, 39, 70, 120, 100, 80, 77, 73, 77, 79, 85, 100, 145, 163, 150, 130, 120,
    110, 70};
inline constexpr std::array<double, kHoursPerDay> kBuiltinPool = {
    13, 11, 12, 4.5, 4, 6, 11, 17.5, 22, 32.5, 28.5, 28, 25, 23, 23.3, 24, 25, 29, 45, 50, 43, 32,
    29, 28.5};
inline constexpr double kDefaultRiskBeta = 0.2;

// The calibrated 24-hour day with the given supply risk weight.
DayScenario builtin_day(double risk_beta = kDefaultRiskBeta);

struct GlobalParams {
  double kappa = defaults::kappa;
  double beta_p = defaults::beta_p;
  double beta_T = defaults::beta_T;
  double k_T = defaults::k_T;
  double alpha_T = defaults::alpha_T;
  double elasticity = defaults::elasticity;
  double trip_time = defaults::trip_time;

  bool operator==(const GlobalParams&) const = default;
};

struct HourParams {
  double lambda = 0.0;
  double pool_size = 1.0;

  bool operator==(const HourParams&) const = default;
};

// Inputs of the reproduction experiments.
struct ExperimentConfig {
  int sweep_hour = 19;                                      // single-period sweeps
  std::vector<double> sweep_risk_betas = {0.2, 0.35, 0.5, 0.65, 0.8, 0.95};
  std::vector<double> day_risk_betas = {0.2, 0.5, 0.8, 1.0};  // value vs tau, fixed-day sweep
  std::array<int, 2> table2_hours = {4, 19};
  std::vector<double> table2_risk_betas = {0.2, 0.35, 0.5, 0.65, 0.8, 0.95};
  std::vector<std::array<double, 2>> table2_pools = {
      {3.5, 44.0}, {4.0, 44.5}, {4.5, 45.0}, {5.0, 45.5}, {5.5, 46.0}};
  double min_wage_risk_beta = 0.25;
  std::vector<double> min_wage_levels = {0, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20};

  void validate() const;
  bool operator==(const ExperimentConfig&) const = default;
};

struct ScenarioConfig {
  GlobalParams globals;
  std::vector<HourParams> hours;  // 24 rows
  double risk_beta = kDefaultRiskBeta;
  GridSpec grid;
  SolverConfig solver;
  BlockConstraint block;
  ExperimentConfig experiments;

  void validate() const;
  DayScenario day() const { return day(risk_beta); }
  DayScenario day(double beta) const;
  bool operator==(const ScenarioConfig&) const = default;
};

ScenarioConfig default_config();

// Parses JSON text; blank text yields the defaults. Missing keys keep their
// defaults, unknown keys are rejected. Throws ParseError (with 1-based line
// and column) on malformed JSON and ValidationError on bad values.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);

// Canonical JSON of every field; parse_config(config_to_json(c)) == c.
std::string config_to_json(const ScenarioConfig& config);

// FNV-1a 64-bit of the canonical JSON, as 16 hex digits.
std::string scenario_hash(const ScenarioConfig& config);

// ---------------------------------------------------------------------------

using TableCell = std::variant<double, std::string>;

class ResultTable {
 public:
  explicit ResultTable(std::vector<std::string> columns);

  // Keys regime, objective, scenario_hash and tool_version are required
  // before emission; others are free-form. Insertion order is kept.
  void set_meta(const std::string& key, const std::string& value);
  void add_row(std::vector<TableCell> row);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<TableCell>>& rows() const { return rows_; }
  const std::vector<std::pair<std::string, std::string>>& metadata() const { return meta_; }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<TableCell>> rows_;
  std::vector<std::pair<std::string, std::string>> meta_;
};

// 17 significant digits; "inf", "-inf" and "nan" for non-finite values.
std::string format_number(double v);

// CSV text: "# key: value" lines, the header row, then data rows.
std::string format_table(const ResultTable& table);

// Writes format_table(table). Throws std::runtime_error naming the path.
void emit_table(const ResultTable& table, const std::filesystem::path& path);

}  // namespace idlewage
