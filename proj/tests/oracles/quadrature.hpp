#pragma once

// Integral definitions of rider surplus and social cost, evaluated by
// adaptive quadrature instead of their closed forms.

#include <cmath>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "idlewage/model.hpp"

namespace oracle {

// Integral of D(z, T) over prices z in [p, inf).
inline double surplus_by_quadrature(const idlewage::DemandParams& d, double p, double T) {
  auto D = [&](double z) {
    const double u = d.kappa + d.beta_p * z + d.beta_T * T;
    return d.lambda_max * std::exp(u) / (1.0 + std::exp(u));
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate(D, p, std::numeric_limits<double>::infinity());
}

// Integral over [0, L] of the inverse of J -> l(0, J).
inline double social_cost_by_quadrature(const idlewage::SupplyParams& s, double L) {
  auto inverse_supply = [&](double z) {
    return (1.0 + 1.0 / s.elasticity) * std::pow(z / s.pool_size, 1.0 / s.elasticity);
  };
  boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(inverse_supply, 0.0, L);
}

}  // namespace oracle
