#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "cavmag/core.hpp"

namespace cavmag::hybrid {

// One mode of the three-mode model: resonance frequency plus intrinsic and
// extrinsic HWHM damping rates.  The derived complex frequency is
// omega - i*2*pi*(beta + gamma) in rad/s.
struct ModeParams {
  Frequency f0;
  DampingRate beta;
  DampingRate gamma;
};

// Photon mode 1, photon mode 2, magnon.  The magnon resonance is not stored
// here; it is derived from the applied field through the Kittel relation.
struct ModeTriplet {
  ModeParams photon1;
  ModeParams photon2;
  ModeParams magnon;  // f0 ignored in field-parameterized evaluations
};

// Coherent coupling strengths between the three modes, linear Hz.
struct CouplingSet {
  double g12_hz = 0.0;
  double g23_hz = 0.0;
  double g31_hz = 0.0;

  CouplingSet() = default;
  CouplingSet(double g12, double g23, double g31);
};

// Kittel-relation constants: gyromagnetic ratio over 2*pi and effective
// magnetization 4*pi*Ms.
struct KittelParams {
  double gyro_mhz_per_oe = 0.0;
  double m_eff_g = 0.0;

  KittelParams() = default;
  KittelParams(double gyro, double m_eff);
};

struct HybridModeSet {
  ModeTriplet modes;
  CouplingSet couplings;
  KittelParams kittel;
};

// |S21| samples over a (field, frequency) grid, row-major with field as the
// outer index.  Values are linear magnitude unless values_in_db is set.
struct FieldSweepMap {
  std::vector<double> h_grid_oe;
  std::vector<double> f_grid_hz;
  std::vector<double> values;
  bool values_in_db = false;
  Angle angle;
  std::string provenance;

  double at(std::size_t h_index, std::size_t f_index) const {
    return values[h_index * f_grid_hz.size() + f_index];
  }
  void validate() const;
};

// In-plane ferromagnetic resonance frequency gyro*sqrt(H*(H + m_eff)).
Frequency kittel_frequency(double h_oe, const KittelParams& k);

// Unique non-negative field solving H*(H + m_eff) = (f/gyro)^2.
double kittel_field(Frequency f, const KittelParams& k);

// Complex-symmetric 3x3 mode matrix in rad/s: diagonal omega_i - i*2*pi*(beta_i
// + gamma_i), off-diagonal 2*pi*g_ij - i*2*pi*sqrt(gamma_i*gamma_j).  Explicit
// per-mode frequencies; no field dependence.
Eigen::Matrix3cd coupling_matrix_from_modes(const ModeTriplet& modes,
                                            const CouplingSet& couplings);

// Same matrix with the magnon frequency taken from the Kittel relation at the
// given applied field.
Eigen::Matrix3cd coupling_matrix(const HybridModeSet& params, double h_oe);

// Eigenvalues of the mode matrix, sorted by ascending real part with
// ascending imaginary part as tie-break.  Real parts are the hybrid
// resonance positions (rad/s), imaginary parts the negative linewidths.
std::array<std::complex<double>, 3> eigenbranches(const Eigen::Matrix3cd& matrix);

// Eigenvalues along a field sweep with branch identity maintained by
// nearest-eigenvalue continuity from slice to slice instead of per-slice
// sorting, so branches stay continuous through anticrossings.
std::vector<std::array<std::complex<double>, 3>> branch_sweep(
    const HybridModeSet& params, const std::vector<double>& h_grid_oe);

// Input-output transmission 1 + K^T M^-1 K with K_i = sqrt(2)*sqrt(2*pi*
// gamma_i) and M = i*(omega*I - coupling_matrix).
ComplexS21 s21_hybrid(const HybridModeSet& params, double h_oe, Frequency f);

// Evaluates s21_hybrid over the full grid; deterministic result independent
// of evaluation order or thread count.
FieldSweepMap field_sweep(const HybridModeSet& params,
                          const std::vector<double>& h_grid_oe,
                          const std::vector<double>& f_grid_hz,
                          std::size_t threads = 1);

}  // namespace cavmag::hybrid
