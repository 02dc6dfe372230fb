#include "idlewage/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <iterator>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "idlewage/errors.hpp"

namespace idlewage {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& what) { throw ValidationError("scenario: " + what); }

bool valid_beta(double b) { return b > 0.0 && b <= 1.0; }

// Walks one JSON object, rejecting keys it was not told about.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) invalid(where() + " must be an object");
  }

  void allow(std::initializer_list<const char*> keys) const {
    for (const auto& item : j_.items()) {
      const bool known = std::any_of(keys.begin(), keys.end(),
                                     [&](const char* k) { return item.key() == k; });
      if (!known) invalid("unknown key '" + join(item.key()) + "'");
    }
  }

  const json* child(const char* key) const {
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  void number(const char* key, double& out) const {
    if (const json* v = child(key)) out = as_number(*v, join(key));
  }

  void integer(const char* key, int& out) const {
    if (const json* v = child(key)) {
      if (!v->is_number_integer()) invalid("'" + join(key) + "' must be an integer");
      out = v->get<int>();
    }
  }

  void numbers(const char* key, std::vector<double>& out) const {
    if (const json* v = child(key)) {
      if (!v->is_array()) invalid("'" + join(key) + "' must be an array of numbers");
      out.clear();
      for (const auto& x : *v) out.push_back(as_number(x, join(key)));
    }
  }

  std::string join(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  static double as_number(const json& v, const std::string& name) {
    if (!v.is_number()) invalid("'" + name + "' must be a number");
    return v.get<double>();
  }

 private:
  std::string where() const { return path_.empty() ? "configuration" : "'" + path_ + "'"; }

  const json& j_;
  std::string path_;
};

void read_range(const ObjectReader& parent, const char* key, GridRange& r) {
  if (const json* v = parent.child(key)) {
    ObjectReader o(*v, parent.join(key));
    o.allow({"min", "max", "step"});
    o.number("min", r.min);
    o.number("max", r.max);
    o.number("step", r.step);
  }
}

json range_json(const GridRange& r) { return {{"min", r.min}, {"max", r.max}, {"step", r.step}}; }

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  const std::size_t pos = std::min(byte > 0 ? byte - 1 : 0, text.size());
  std::size_t line = 1;
  std::size_t line_start = 0;
  for (std::size_t i = 0; i < pos; ++i) {
    if (text[i] == '\n') {
      ++line;
      line_start = i + 1;
    }
  }
  return {line, pos - line_start + 1};
}

}  // namespace

DayScenario builtin_day(double risk_beta) {
  DayScenario day;
  for (std::size_t h = 0; h < kHoursPerDay; ++h) {
    day.periods.push_back(make_period(kBuiltinLambda[h], kBuiltinPool[h], risk_beta));
  }
  day.validate();
  return day;
}

void ExperimentConfig::validate() const {
  auto hour_ok = [](int h) { return h >= 1 && h <= static_cast<int>(kHoursPerDay); };
  if (!hour_ok(sweep_hour)) invalid("experiments.sweep_hour must lie in 1..24");
  if (!hour_ok(table2_hours[0]) || !hour_ok(table2_hours[1]) ||
      table2_hours[0] == table2_hours[1]) {
    invalid("experiments.table2_hours must be two distinct hours in 1..24");
  }
  for (const auto* list : {&sweep_risk_betas, &day_risk_betas, &table2_risk_betas}) {
    for (double b : *list) {
      if (!valid_beta(b)) invalid("experiment risk_beta values must lie in (0, 1]");
    }
  }
  if (!valid_beta(min_wage_risk_beta)) invalid("experiments.min_wage_risk_beta must lie in (0, 1]");
  for (const auto& pools : table2_pools) {
    if (!(pools[0] > 0.0 && pools[1] > 0.0 && std::isfinite(pools[0]) && std::isfinite(pools[1]))) {
      invalid("experiments.table2_pools entries must be > 0");
    }
  }
  for (double j : min_wage_levels) {
    if (!(std::isfinite(j) && j >= 0.0)) invalid("experiments.min_wage_levels must be >= 0");
  }
}

DayScenario ScenarioConfig::day(double beta) const {
  DayScenario d;
  for (const auto& h : hours) {
    PeriodScenario s;
    s.demand = DemandParams{h.lambda, globals.kappa, globals.beta_p, globals.beta_T};
    s.pickup = PickupParams{globals.k_T, globals.alpha_T};
    s.supply = SupplyParams{h.pool_size, beta, globals.elasticity};
    s.trip_time = globals.trip_time;
    d.periods.push_back(s);
  }
  return d;
}

void ScenarioConfig::validate() const {
  if (hours.size() != kHoursPerDay) {
    invalid("expected 24 periods, got " + std::to_string(hours.size()));
  }
  if (!valid_beta(risk_beta)) invalid("risk_beta must lie in (0, 1]");
  day().validate();
  grid.validate();
  solver.validate();
  block.validate();
  experiments.validate();
}

ScenarioConfig default_config() {
  ScenarioConfig c;
  for (std::size_t h = 0; h < kHoursPerDay; ++h) c.hours.push_back({kBuiltinLambda[h], kBuiltinPool[h]});
  return c;
}

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig c = default_config();
  if (std::all_of(text.begin(), text.end(), [](unsigned char ch) { return std::isspace(ch); })) {
    return c;
  }
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    throw ParseError("scenario: malformed JSON at line " + std::to_string(line) + ", column " +
                         std::to_string(column),
                     line, column);
  }

  const ObjectReader top(root, "");
  top.allow({"globals", "hours", "risk_beta", "grid", "solver", "block", "experiments"});
  top.number("risk_beta", c.risk_beta);

  if (const json* g = top.child("globals")) {
    const ObjectReader o(*g, "globals");
    o.allow({"kappa", "beta_p", "beta_T", "k_T", "alpha_T", "elasticity", "trip_time"});
    o.number("kappa", c.globals.kappa);
    o.number("beta_p", c.globals.beta_p);
    o.number("beta_T", c.globals.beta_T);
    o.number("k_T", c.globals.k_T);
    o.number("alpha_T", c.globals.alpha_T);
    o.number("elasticity", c.globals.elasticity);
    o.number("trip_time", c.globals.trip_time);
  }

  if (const json* h = top.child("hours")) {
    if (!h->is_array()) invalid("'hours' must be an array");
    c.hours.clear();
    for (std::size_t i = 0; i < h->size(); ++i) {
      const ObjectReader o((*h)[i], "hours[" + std::to_string(i) + "]");
      o.allow({"lambda", "pool_size"});
      if (!o.child("lambda") || !o.child("pool_size")) {
        invalid("hours[" + std::to_string(i) + "] needs both 'lambda' and 'pool_size'");
      }
      HourParams row;
      o.number("lambda", row.lambda);
      o.number("pool_size", row.pool_size);
      c.hours.push_back(row);
    }
  }

  if (const json* g = top.child("grid")) {
    const ObjectReader o(*g, "grid");
    o.allow({"price", "idle_wage", "tau_step"});
    read_range(o, "price", c.grid.price);
    read_range(o, "idle_wage", c.grid.idle_wage);
    o.number("tau_step", c.grid.tau_step);
  }

  if (const json* s = top.child("solver")) {
    const ObjectReader o(*s, "solver");
    o.allow({"z_min", "z_max", "scan_points", "bisect_tol", "tol_eq"});
    o.number("z_min", c.solver.z_min);
    o.number("z_max", c.solver.z_max);
    o.integer("scan_points", c.solver.scan_points);
    o.number("bisect_tol", c.solver.bisect_tol);
    o.number("tol_eq", c.solver.tol_eq);
  }

  if (const json* b = top.child("block")) {
    const ObjectReader o(*b, "block");
    o.allow({"b1", "b2", "j_min"});
    o.integer("b1", c.block.b1);
    o.integer("b2", c.block.b2);
    o.number("j_min", c.block.j_min);
  }

  if (const json* x = top.child("experiments")) {
    const ObjectReader o(*x, "experiments");
    auto& e = c.experiments;
    o.allow({"sweep_hour", "sweep_risk_betas", "day_risk_betas", "table2_hours",
             "table2_risk_betas", "table2_pools", "min_wage_risk_beta", "min_wage_levels"});
    o.integer("sweep_hour", e.sweep_hour);
    o.numbers("sweep_risk_betas", e.sweep_risk_betas);
    o.numbers("day_risk_betas", e.day_risk_betas);
    o.numbers("table2_risk_betas", e.table2_risk_betas);
    o.number("min_wage_risk_beta", e.min_wage_risk_beta);
    o.numbers("min_wage_levels", e.min_wage_levels);
    if (const json* th = o.child("table2_hours")) {
      if (!th->is_array() || th->size() != 2 || !(*th)[0].is_number_integer() ||
          !(*th)[1].is_number_integer()) {
        invalid("'experiments.table2_hours' must be two integers");
      }
      e.table2_hours = {(*th)[0].get<int>(), (*th)[1].get<int>()};
    }
    if (const json* tp = o.child("table2_pools")) {
      if (!tp->is_array()) invalid("'experiments.table2_pools' must be an array of pairs");
      e.table2_pools.clear();
      for (const auto& pair : *tp) {
        if (!pair.is_array() || pair.size() != 2) {
          invalid("'experiments.table2_pools' entries must be [A_low, A_high] pairs");
        }
        e.table2_pools.push_back({ObjectReader::as_number(pair[0], "experiments.table2_pools"),
                                  ObjectReader::as_number(pair[1], "experiments.table2_pools")});
      }
    }
  }

  c.validate();
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("scenario: cannot read " + path.string());
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_config(text);
}

std::string config_to_json(const ScenarioConfig& c) {
  json hours = json::array();
  for (const auto& h : c.hours) hours.push_back({{"lambda", h.lambda}, {"pool_size", h.pool_size}});
  json pools = json::array();
  for (const auto& p : c.experiments.table2_pools) pools.push_back({p[0], p[1]});
  const auto& e = c.experiments;
  const json root = {
      {"globals",
       {{"kappa", c.globals.kappa},
        {"beta_p", c.globals.beta_p},
        {"beta_T", c.globals.beta_T},
        {"k_T", c.globals.k_T},
        {"alpha_T", c.globals.alpha_T},
        {"elasticity", c.globals.elasticity},
        {"trip_time", c.globals.trip_time}}},
      {"hours", hours},
      {"risk_beta", c.risk_beta},
      {"grid",
       {{"price", range_json(c.grid.price)},
        {"idle_wage", range_json(c.grid.idle_wage)},
        {"tau_step", c.grid.tau_step}}},
      {"solver",
       {{"z_min", c.solver.z_min},
        {"z_max", c.solver.z_max},
        {"scan_points", c.solver.scan_points},
        {"bisect_tol", c.solver.bisect_tol},
        {"tol_eq", c.solver.tol_eq}}},
      {"block", {{"b1", c.block.b1}, {"b2", c.block.b2}, {"j_min", c.block.j_min}}},
      {"experiments",
       {{"sweep_hour", e.sweep_hour},
        {"sweep_risk_betas", e.sweep_risk_betas},
        {"day_risk_betas", e.day_risk_betas},
        {"table2_hours", {e.table2_hours[0], e.table2_hours[1]}},
        {"table2_risk_betas", e.table2_risk_betas},
        {"table2_pools", pools},
        {"min_wage_risk_beta", e.min_wage_risk_beta},
        {"min_wage_levels", e.min_wage_levels}}},
  };
  return root.dump(2) + "\n";
}

std::string scenario_hash(const ScenarioConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : config_to_json(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

// ---------------------------------------------------------------------------

ResultTable::ResultTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) invalid("result table needs at least one column");
}

void ResultTable::set_meta(const std::string& key, const std::string& value) {
  for (auto& [k, v] : meta_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  meta_.emplace_back(key, value);
}

void ResultTable::add_row(std::vector<TableCell> row) {
  if (row.size() != columns_.size()) {
    invalid("result row has " + std::to_string(row.size()) + " cells, table has " +
            std::to_string(columns_.size()) + " columns");
  }
  rows_.push_back(std::move(row));
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string format_table(const ResultTable& table) {
  for (const char* key : {"regime", "objective", "scenario_hash", "tool_version"}) {
    const auto& meta = table.metadata();
    const bool present = std::any_of(meta.begin(), meta.end(),
                                     [&](const auto& kv) { return kv.first == key; });
    if (!present) invalid(std::string("result table is missing metadata '") + key + "'");
  }
  std::ostringstream out;
  for (const auto& [k, v] : table.metadata()) out << "# " << k << ": " << v << '\n';
  const auto& cols = table.columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << csv_field(cols[i]);
  out << '\n';
  for (const auto& row : table.rows()) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (const double* d = std::get_if<double>(&row[i])) {
        out << format_number(*d);
      } else {
        out << csv_field(std::get<std::string>(row[i]));
      }
    }
    out << '\n';
  }
  return out.str();
}

void emit_table(const ResultTable& table, const std::filesystem::path& path) {
  const std::string text = format_table(table);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("scenario: cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (!out) throw std::runtime_error("scenario: failed writing " + path.string());
}

}  // namespace idlewage
