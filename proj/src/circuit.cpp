#include "cavmag/circuit.hpp"

#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "cavmag/errors.hpp"

namespace cavmag::circuit {

using cplx = std::complex<double>;
constexpr cplx kJ{0.0, 1.0};

TransmissionLine::TransmissionLine(double l_h, double c_f, double z0)
    : inductance_h(l_h), capacitance_f(c_f), z0_ohm(z0) {
  if (!(l_h > 0.0)) throw ConfigError("line inductance must be > 0 H");
  if (!(c_f > 0.0)) throw ConfigError("line capacitance must be > 0 F");
  if (!(z0 > 0.0)) throw ConfigError("line impedance must be > 0 ohm");
}

ResonatorRLC::ResonatorRLC(double l_h, double c_f, double r_ohm, double m_h)
    : inductance_h(l_h), capacitance_f(c_f), resistance_ohm(r_ohm), mutual_h(m_h) {
  if (!(l_h > 0.0)) throw ConfigError("resonator inductance must be > 0 H");
  if (!(c_f > 0.0)) throw ConfigError("resonator capacitance must be > 0 F");
  if (!(r_ohm >= 0.0)) throw ConfigError("resonator resistance must be >= 0 ohm");
  if (!(m_h >= 0.0)) throw ConfigError("mutual inductance must be >= 0 H");
}

ResonatorRLC ResonatorRLC::from_resonance(Frequency f0, double c_f, double r_ohm,
                                          double m_h) {
  if (!(f0.hz() > 0.0)) throw ConfigError("resonance frequency must be > 0 Hz");
  if (!(c_f > 0.0)) throw ConfigError("resonator capacitance must be > 0 F");
  const double w0 = f0.angular();
  return ResonatorRLC(1.0 / (w0 * w0 * c_f), c_f, r_ohm, m_h);
}

Frequency ResonatorRLC::resonance() const {
  return Frequency::from_angular(1.0 / std::sqrt(inductance_h * capacitance_f));
}

TwoModeCircuit::TwoModeCircuit(TransmissionLine l, ResonatorRLC m1, ResonatorRLC m2,
                               double m12_h)
    : line(l), mode1(m1), mode2(m2), mutual12_h(m12_h) {
  if (!(m12_h >= 0.0)) throw ConfigError("inter-resonator mutual inductance must be >= 0 H");
}

std::complex<double> delta_impedance(const TwoModeCircuit& circuit, Frequency f) {
  if (!(f.hz() > 0.0)) throw ConfigError("delta_impedance requires f > 0");
  const double w = f.angular();
  const ResonatorRLC& r1 = circuit.mode1;
  const ResonatorRLC& r2 = circuit.mode2;
  const double w1 = r1.resonance().angular();
  const double w2 = r2.resonance().angular();
  const double m12 = circuit.mutual12_h;

  const double det1 = 1.0 - (w * w) / (w1 * w1);
  const double det2 = 1.0 - (w * w) / (w2 * w2);
  const cplx branch1 = det1 + kJ * w * r1.resistance_ohm * r1.capacitance_f;
  const cplx branch2 = det2 + kJ * w * r2.resistance_ohm * r2.capacitance_f;
  const double cross = std::pow(w, 4) * m12 * m12 * r1.capacitance_f * r2.capacitance_f;
  const cplx den = branch1 * branch2 - cross;

  // !(> ) instead of (<) so an exactly-zero denominator (zero scale) is
  // still caught rather than slipping past an underflowed threshold.
  const double den_scale = std::abs(branch1) * std::abs(branch2) + std::abs(cross);
  if (!(std::abs(den) > 1e-30 * den_scale))
    throw SingularityError("delta_impedance denominator vanishes at f = " +
                           std::to_string(f.hz()) + " Hz");

  const cplx num =
      r1.capacitance_f * r1.mutual_h * r1.mutual_h * det2 +
      r2.capacitance_f * r2.mutual_h * r2.mutual_h * det1 +
      2.0 * w * w * m12 * r1.mutual_h * r2.mutual_h * r1.capacitance_f * r2.capacitance_f +
      kJ * w * r1.capacitance_f * r2.capacitance_f *
          (r1.resistance_ohm * r2.mutual_h * r2.mutual_h +
           r2.resistance_ohm * r1.mutual_h * r1.mutual_h);

  return kJ * std::pow(w, 3) * num / den;
}

std::complex<double> series_impedance(const TwoModeCircuit& circuit, Frequency f) {
  return kJ * f.angular() * circuit.line.inductance_h + delta_impedance(circuit, f);
}

ABCDMatrix abcd_cascade(std::complex<double> zs, std::complex<double> y1,
                        std::complex<double> y2) {
  return ABCDMatrix{1.0 + y2 * zs, zs, y1 + y2 * (1.0 + y1 * zs), 1.0 + y1 * zs};
}

ComplexS21 s21_circuit(const TwoModeCircuit& circuit, Frequency f) {
  const cplx zs = series_impedance(circuit, f);
  const cplx y = kJ * f.angular() * circuit.line.capacitance_f / 2.0;
  const ABCDMatrix m = abcd_cascade(zs, y, y);
  const double z0 = circuit.line.z0_ohm;

  const cplx den = m.a + m.b / z0 + m.c * z0 + m.d;
  const double den_scale =
      std::abs(m.a) + std::abs(m.b) / z0 + std::abs(m.c) * z0 + std::abs(m.d);
  if (!(std::abs(den) > 1e-30 * den_scale))
    throw SingularityError("s21 denominator vanishes at f = " + std::to_string(f.hz()) +
                           " Hz");
  return ComplexS21{2.0 / den};
}

std::vector<ComplexS21> s21_sweep(const TwoModeCircuit& circuit,
                                  const std::vector<double>& f_grid_hz,
                                  std::size_t threads) {
  std::vector<ComplexS21> out(f_grid_hz.size());
  const std::size_t n = f_grid_hz.size();
  if (threads < 1) threads = 1;
  if (threads == 1 || n < 2 * threads) {
    for (std::size_t i = 0; i < n; ++i) out[i] = s21_circuit(circuit, Frequency(f_grid_hz[i]));
    return out;
  }

  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t lo = t * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i)
          out[i] = s21_circuit(circuit, Frequency(f_grid_hz[i]));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

DampingRate intrinsic_damping(const ResonatorRLC& res) {
  const double w0 = res.resonance().angular();
  return DampingRate(w0 * w0 * res.resistance_ohm * res.capacitance_f / 2.0 / kTwoPi);
}

DampingRate extrinsic_damping(const ResonatorRLC& res, double z0_ohm) {
  if (!(z0_ohm > 0.0)) throw ConfigError("extrinsic_damping requires Z0 > 0");
  const double w0 = res.resonance().angular();
  return DampingRate(std::pow(w0, 4) * res.mutual_h * res.mutual_h * res.capacitance_f /
                     (2.0 * z0_ohm) / kTwoPi);
}

}  // namespace cavmag::circuit
