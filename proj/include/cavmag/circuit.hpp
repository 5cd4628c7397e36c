#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "cavmag/core.hpp"

namespace cavmag::circuit {

// Feedline section: series inductance L, total shunt capacitance C split into
// two identical admittances Y1 = Y2 = i*omega*C/2, reference impedance Z0.
struct TransmissionLine {
  double inductance_h = 0.0;
  double capacitance_f = 0.0;
  double z0_ohm = 50.0;

  TransmissionLine() = default;
  TransmissionLine(double l_h, double c_f, double z0);
};

// One RLC photon mode inductively coupled to the line through mutual
// inductance M.  The resonance frequency is 1/(2*pi*sqrt(L*C)).
struct ResonatorRLC {
  double inductance_h = 0.0;
  double capacitance_f = 0.0;
  double resistance_ohm = 0.0;
  double mutual_h = 0.0;

  ResonatorRLC() = default;
  ResonatorRLC(double l_h, double c_f, double r_ohm, double m_h);

  // Builds the resonator from its resonance frequency instead of L,
  // reconstructing L = 1/(omega0^2 * C).
  static ResonatorRLC from_resonance(Frequency f0, double c_f, double r_ohm, double m_h);

  Frequency resonance() const;
};

// Full two-mode equivalent circuit: feedline plus two resonators with an
// optional inter-resonator mutual inductance M12.
struct TwoModeCircuit {
  TransmissionLine line;
  ResonatorRLC mode1;
  ResonatorRLC mode2;
  double mutual12_h = 0.0;

  TwoModeCircuit() = default;
  TwoModeCircuit(TransmissionLine l, ResonatorRLC m1, ResonatorRLC m2, double m12_h);
};

// Two-port transfer matrix; B carries ohms, C carries siemens.
struct ABCDMatrix {
  std::complex<double> a, b, c, d;

  std::complex<double> determinant() const { return a * d - b * c; }
};

// Reflected impedance of the two coupled resonators seen by the line.
std::complex<double> delta_impedance(const TwoModeCircuit& circuit, Frequency f);

// Series branch impedance of the loaded line: i*omega*L + delta_impedance.
std::complex<double> series_impedance(const TwoModeCircuit& circuit, Frequency f);

// Shunt-series-shunt cascade [Y1][Zs][Y2] as a single ABCD matrix.
ABCDMatrix abcd_cascade(std::complex<double> zs, std::complex<double> y1,
                        std::complex<double> y2);

// Transmission coefficient of the loaded line between Z0 terminations.
ComplexS21 s21_circuit(const TwoModeCircuit& circuit, Frequency f);

// Evaluates s21_circuit over a frequency grid; points are independent so the
// sweep may run on several threads, with results assembled in grid order.
std::vector<ComplexS21> s21_sweep(const TwoModeCircuit& circuit,
                                  const std::vector<double>& f_grid_hz,
                                  std::size_t threads = 1);

// Conductor/dielectric HWHM loss rate omega0^2*R*C/2, returned in Hz.
DampingRate intrinsic_damping(const ResonatorRLC& res);

// Radiative HWHM loss rate omega0^4*M^2*C/(2*Z0), returned in Hz.
DampingRate extrinsic_damping(const ResonatorRLC& res, double z0_ohm);

}  // namespace cavmag::circuit
