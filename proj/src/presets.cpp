#include "cavmag/presets.hpp"

#include "cavmag/errors.hpp"

namespace cavmag::presets {

namespace {

struct CircuitRow {
  double angle_deg;
  double f1_ghz, f2_ghz;
  double m1_nh, m2_nh;
};

struct HybridRow {
  double angle_deg;
  double f1_ghz, f2_ghz;
  double g31_mhz, g23_mhz;
  double gamma1_mhz, gamma2_mhz;
};

constexpr CircuitRow kCircuitRows[] = {
    {0.0, 3.9350, 5.6778, 0.2150, 0.0000},
    {30.0, 3.7557, 5.6778, 0.1840, 0.0930},
    {60.0, 3.8816, 5.7342, 0.1100, 0.1620},
    {90.0, 3.8816, 5.7138, 0.0000, 0.1820},
};

constexpr HybridRow kHybridRows[] = {
    {0.0, 3.9350, 5.6778, 56.5, 0.0, 3.00, 0.0},
    {30.0, 3.7557, 5.6778, 80.0, 76.0, 2.20, 3.5},
    {60.0, 3.8816, 5.7342, 98.0, 50.0, 0.75, 10.0},
    {90.0, 3.8816, 5.7138, 0.0, 30.0, 0.00, 13.0},
};

// Angle-independent element values shared by every characterized row.
constexpr double kLineL_nH = 0.9196;
constexpr double kLineC_pF = 1.2884;
constexpr double kZ0_ohm = 50.0;
constexpr double kC1_pF = 0.2193;
constexpr double kC2_pF = 0.2988;
constexpr double kR1_ohm = 0.9831;
constexpr double kR2_ohm = 0.8007;
constexpr double kBeta1_MHz = 11.0;
constexpr double kBeta2_MHz = 25.0;
constexpr double kBeta3_MHz = 1.0;
constexpr double kGamma3_MHz = 0.01;

template <typename Row, std::size_t N>
const Row& row_at(const Row (&rows)[N], double angle_deg) {
  for (const Row& row : rows)
    if (row.angle_deg == angle_deg) return row;
  throw ConfigError("no reference parameters at " + std::to_string(angle_deg) +
                    " deg; characterized angles are 0, 30, 60, 90");
}

}  // namespace

std::vector<double> reference_angles() { return {0.0, 30.0, 60.0, 90.0}; }

circuit::TwoModeCircuit reference_circuit(double angle_deg) {
  const CircuitRow& row = row_at(kCircuitRows, angle_deg);
  const circuit::TransmissionLine line(kLineL_nH * 1e-9, kLineC_pF * 1e-12, kZ0_ohm);
  const auto mode1 = circuit::ResonatorRLC::from_resonance(
      Frequency(row.f1_ghz * 1e9), kC1_pF * 1e-12, kR1_ohm, row.m1_nh * 1e-9);
  const auto mode2 = circuit::ResonatorRLC::from_resonance(
      Frequency(row.f2_ghz * 1e9), kC2_pF * 1e-12, kR2_ohm, row.m2_nh * 1e-9);
  return circuit::TwoModeCircuit(line, mode1, mode2, 0.0);
}

hybrid::HybridModeSet reference_hybrid(double angle_deg) {
  const HybridRow& row = row_at(kHybridRows, angle_deg);
  hybrid::HybridModeSet set;
  set.modes.photon1 = {Frequency(row.f1_ghz * 1e9), DampingRate(kBeta1_MHz * 1e6),
                       DampingRate(row.gamma1_mhz * 1e6)};
  set.modes.photon2 = {Frequency(row.f2_ghz * 1e9), DampingRate(kBeta2_MHz * 1e6),
                       DampingRate(row.gamma2_mhz * 1e6)};
  set.modes.magnon = {Frequency(0.0), DampingRate(kBeta3_MHz * 1e6),
                      DampingRate(kGamma3_MHz * 1e6)};
  set.couplings = hybrid::CouplingSet(0.0, row.g23_mhz * 1e6, row.g31_mhz * 1e6);
  set.kittel = reference_kittel();
  return set;
}

polarization::AngularCouplingModel reference_angular_model() {
  return {DampingRate(3.0e6), DampingRate(13.0e6)};
}

hybrid::KittelParams reference_kittel() { return hybrid::KittelParams(2.8, 1750.0); }

}  // namespace cavmag::presets
