#include "idlewage/objectives.hpp"

namespace idlewage {

std::string_view to_string(Objective obj) {
  return obj == Objective::Profit ? "profit" : "welfare";
}

std::optional<Objective> parse_objective(std::string_view name) {
  if (name == "profit") return Objective::Profit;
  if (name == "welfare") return Objective::Welfare;
  return std::nullopt;
}

double profit(const PeriodScenario&, const Equilibrium& eq) {
  const auto& pol = eq.policy;
  return pol.commission * pol.price * eq.throughput - pol.idle_wage * eq.labour;
}

double welfare(const PeriodScenario& s, const Equilibrium& eq) {
  return surplus(s.demand, eq.policy.price, eq.pickup) + eq.policy.price * eq.throughput -
         social_cost(s.supply, eq.labour);
}

double evaluate(Objective obj, const PeriodScenario& s, const Equilibrium& eq) {
  return obj == Objective::Profit ? profit(s, eq) : welfare(s, eq);
}

}  // namespace idlewage
