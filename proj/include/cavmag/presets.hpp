#pragma once

#include <vector>

#include "cavmag/circuit.hpp"
#include "cavmag/hybrid.hpp"
#include "cavmag/polarization.hpp"

namespace cavmag::presets {

// Rotation angles at which the bundled reference device was characterized.
std::vector<double> reference_angles();

// Fitted equivalent-circuit parameters of the reference device (a planar
// two-mode resonator on a microstrip feedline) at one of the reference
// angles: 0, 30, 60 or 90 degrees.
circuit::TwoModeCircuit reference_circuit(double angle_deg);

// Three-mode parameters of the reference device loaded with a ferrimagnetic
// film, at one of the reference angles.
hybrid::HybridModeSet reference_hybrid(double angle_deg);

// Maximal radiative rates of the reference device's two photon modes.
polarization::AngularCouplingModel reference_angular_model();

// Kittel constants of the reference film.
hybrid::KittelParams reference_kittel();

}  // namespace cavmag::presets
