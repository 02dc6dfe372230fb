#pragma once

#include <optional>
#include <string_view>

#include "idlewage/equilibrium.hpp"
#include "idlewage/model.hpp"

namespace idlewage {

enum class Objective { Profit, Welfare };

std::string_view to_string(Objective obj);
std::optional<Objective> parse_objective(std::string_view name);

// Commission revenue minus the idle wage bill: tau p Q - J L.
double profit(const PeriodScenario& s, const Equilibrium& eq);

// Rider surplus plus fares minus the drivers' social cost. The idle wage is
// a transfer between platform and drivers and does not appear.
double welfare(const PeriodScenario& s, const Equilibrium& eq);

double evaluate(Objective obj, const PeriodScenario& s, const Equilibrium& eq);

}  // namespace idlewage
