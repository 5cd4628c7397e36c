#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "cavmag/core.hpp"

namespace cavmag::polarization {

// Angular projection model: maximal radiative rates of the two photon modes,
// attained at 0 and 90 degrees respectively.  gamma1(theta) = gamma1_max*
// cos^2(theta), gamma2(theta) = gamma2_max*sin^2(theta).
struct AngularCouplingModel {
  DampingRate gamma1_max;
  DampingRate gamma2_max;

  // Damping ratio delta = gamma2_max / gamma1_max; requires gamma1_max > 0.
  double delta() const;
};

// Signed loop-flux contributions to the effective mutual inductances: two for
// mode 1, four for mode 2.  Signs encode the flux direction through each
// current loop.
struct LoopContributions {
  std::array<double, 2> mode1_h{};
  std::array<double, 4> mode2_h{};
};

// Order parameter samples over a (theta, delta) grid plus the sampled
// zero contour delta(theta) = cot^2(theta).
struct TransitionMap {
  std::vector<double> theta_grid_deg;
  std::vector<double> delta_grid;
  std::vector<double> values;  // row-major, delta outer, theta inner
  std::vector<std::pair<double, double>> zero_contour;  // (theta_deg, delta)

  double at(std::size_t delta_index, std::size_t theta_index) const {
    return values[delta_index * theta_grid_deg.size() + theta_index];
  }
};

// Effective mode-1 mutual inductance: the average of its two loop
// contributions.
double effective_mutual_mode1(const LoopContributions& c);

// Effective mode-2 mutual inductance: the sum of its four loop contributions
// divided by two.
double effective_mutual_mode2(const LoopContributions& c);

// Radiative rates of both photon modes at rotation angle theta.
std::pair<DampingRate, DampingRate> gamma_of_angle(const AngularCouplingModel& model,
                                                   Angle theta);

// Dissipation order parameter from raw rates: (g1^2 - g2^2)/(g1^2 + g2^2).
double order_parameter(DampingRate gamma1, DampingRate gamma2);

// Projection-model order parameter
// (cos^4 - delta^2 sin^4)/(cos^4 + delta^2 sin^4) at angle theta.
double order_parameter(const AngularCouplingModel& model, Angle theta);

// Angles where the order parameter crosses zero: arctan(delta^-1/2) and its
// mirror 180 deg - arctan(delta^-1/2).
std::pair<Angle, Angle> critical_angles(double delta);

// Order parameter evaluated on the full (theta, delta) grid with the sampled
// zero contour.
TransitionMap transition_map(const std::vector<double>& theta_grid_deg,
                             const std::vector<double>& delta_grid);

// Coupling-to-loss figure of merit g^2 / (K * Gamma).
double cooperativity(double g_hz, DampingRate k_total, DampingRate gamma_total);

}  // namespace cavmag::polarization
