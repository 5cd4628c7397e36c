#include "cavmag/polarization.hpp"

#include <cmath>

#include "cavmag/errors.hpp"

namespace cavmag::polarization {

double AngularCouplingModel::delta() const {
  if (!(gamma1_max.hz() > 0.0))
    throw ConfigError("damping ratio undefined: gamma1_max must be > 0");
  return gamma2_max.hz() / gamma1_max.hz();
}

double effective_mutual_mode1(const LoopContributions& c) {
  return (c.mode1_h[0] + c.mode1_h[1]) / 2.0;
}

double effective_mutual_mode2(const LoopContributions& c) {
  return (c.mode2_h[0] + c.mode2_h[1] + c.mode2_h[2] + c.mode2_h[3]) / 2.0;
}

std::pair<DampingRate, DampingRate> gamma_of_angle(const AngularCouplingModel& model,
                                                   Angle theta) {
  const double cs = std::cos(theta.radians());
  const double sn = std::sin(theta.radians());
  return {DampingRate(model.gamma1_max.hz() * cs * cs),
          DampingRate(model.gamma2_max.hz() * sn * sn)};
}

double order_parameter(DampingRate gamma1, DampingRate gamma2) {
  const double a = gamma1.hz() * gamma1.hz();
  const double b = gamma2.hz() * gamma2.hz();
  if (a + b == 0.0)
    throw ConfigError("order parameter undefined: both radiative rates are zero");
  return (a - b) / (a + b);
}

double order_parameter(const AngularCouplingModel& model, Angle theta) {
  const double delta = model.delta();
  const double cs = std::cos(theta.radians());
  const double sn = std::sin(theta.radians());
  const double c4 = cs * cs * cs * cs;
  const double s4 = sn * sn * sn * sn;
  const double num = c4 - delta * delta * s4;
  const double den = c4 + delta * delta * s4;
  if (den == 0.0)
    throw ConfigError("order parameter undefined: both radiative rates are zero");
  return num / den;
}

std::pair<Angle, Angle> critical_angles(double delta) {
  if (!(delta > 0.0)) throw ConfigError("critical_angles requires delta > 0");
  const double theta_c1 = std::atan(1.0 / std::sqrt(delta)) * 180.0 / std::numbers::pi;
  return {Angle(theta_c1), Angle(180.0 - theta_c1)};
}

TransitionMap transition_map(const std::vector<double>& theta_grid_deg,
                             const std::vector<double>& delta_grid) {
  if (theta_grid_deg.empty() || delta_grid.empty())
    throw ConfigError("transition_map requires non-empty grids");
  TransitionMap map;
  map.theta_grid_deg = theta_grid_deg;
  map.delta_grid = delta_grid;
  map.values.reserve(theta_grid_deg.size() * delta_grid.size());
  for (double delta : delta_grid) {
    if (!(delta > 0.0)) throw ConfigError("transition_map requires delta > 0");
    AngularCouplingModel model{DampingRate(1.0), DampingRate(delta)};
    for (double theta : theta_grid_deg)
      map.values.push_back(order_parameter(model, Angle(theta)));
  }
  // Zero contour delta(theta) = cot^2(theta), sampled where it exists.
  for (double theta : theta_grid_deg) {
    const double rad = Angle(theta).radians();
    const double sn = std::sin(rad);
    if (std::abs(sn) < 1e-12) continue;
    const double cot = std::cos(rad) / sn;
    const double delta = cot * cot;
    if (delta >= delta_grid.front() && delta <= delta_grid.back())
      map.zero_contour.emplace_back(theta, delta);
  }
  return map;
}

double cooperativity(double g_hz, DampingRate k_total, DampingRate gamma_total) {
  if (!(k_total.hz() > 0.0) || !(gamma_total.hz() > 0.0))
    throw ConfigError("cooperativity requires positive total linewidths");
  return g_hz * g_hz / (k_total.hz() * gamma_total.hz());
}

}  // namespace cavmag::polarization
