#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "cavmag/circuit.hpp"
#include "cavmag/core.hpp"
#include "cavmag/errors.hpp"
#include "cavmag/presets.hpp"
#include "oracles.hpp"

using namespace cavmag;
using namespace cavmag::circuit;
using cplx = std::complex<double>;

namespace {

// Synthetic circuit with every term active, including the inter-resonator
// mutual that the bundled reference device does not exercise.
TwoModeCircuit coupled_test_circuit() {
  return TwoModeCircuit(
      TransmissionLine(0.9e-9, 1.3e-12, 50.0),
      ResonatorRLC::from_resonance(Frequency(4.0e9), 0.22e-12, 1.0, 0.20e-9),
      ResonatorRLC::from_resonance(Frequency(5.5e9), 0.30e-12, 0.8, 0.15e-9),
      0.05e-9);
}

}  // namespace

TEST_CASE("resonator reconstructs its inductance from the resonance frequency") {
  const auto res = ResonatorRLC::from_resonance(Frequency(3.935e9), 0.2193e-12, 0.9831,
                                                0.215e-9);
  CHECK(res.resonance().hz() == doctest::Approx(3.935e9).epsilon(1e-14));
  const double w0 = Frequency(3.935e9).angular();
  CHECK(res.inductance_h == doctest::Approx(1.0 / (w0 * w0 * 0.2193e-12)).epsilon(1e-15));
}

TEST_CASE("type invariants reject non-physical construction") {
  CHECK_THROWS_AS(TransmissionLine(0.0, 1e-12, 50.0), ConfigError);
  CHECK_THROWS_AS(TransmissionLine(1e-9, -1e-12, 50.0), ConfigError);
  CHECK_THROWS_AS(TransmissionLine(1e-9, 1e-12, 0.0), ConfigError);
  CHECK_THROWS_AS(ResonatorRLC(1e-9, 1e-12, -0.1, 0.0), ConfigError);
  CHECK_THROWS_AS(ResonatorRLC(1e-9, 0.0, 0.1, 0.0), ConfigError);
  CHECK_THROWS_AS(ResonatorRLC::from_resonance(Frequency(0.0), 1e-12, 0.1, 0.0),
                  ConfigError);
}

TEST_CASE("reflected impedance matches an independent mesh solve") {
  std::vector<TwoModeCircuit> circuits;
  for (double angle : presets::reference_angles())
    circuits.push_back(presets::reference_circuit(angle));
  circuits.push_back(coupled_test_circuit());

  for (const auto& c : circuits) {
    for (double f_hz : linspace(3.0e9, 7.0e9, 201)) {
      const cplx got = delta_impedance(c, Frequency(f_hz));
      const cplx ref = oracles::mesh_delta_impedance(c, f_hz);
      CHECK(std::abs(got - ref) <= 1e-9 * (1.0 + std::abs(ref)));
    }
  }
}

TEST_CASE("reflected impedance at the first resonance of the reference device") {
  const auto c = presets::reference_circuit(0.0);
  const cplx dz = delta_impedance(c, Frequency(3.935e9));
  // on resonance the reflection is (almost) purely resistive
  CHECK(dz.real() == doctest::Approx(28.742757701005964).epsilon(1e-9));
  CHECK(std::abs(dz.imag()) < 0.01);
}

TEST_CASE("decoupled resonators reflect nothing") {
  auto c = presets::reference_circuit(0.0);
  c.mode1.mutual_h = 0.0;
  c.mode2.mutual_h = 0.0;
  for (double f_hz : {3.2e9, 3.935e9, 5.6778e9, 6.4e9}) {
    CHECK(delta_impedance(c, Frequency(f_hz)) == cplx(0.0, 0.0));
    // the loaded line then reduces to the bare series inductance
    const cplx zs = series_impedance(c, Frequency(f_hz));
    CHECK(zs.real() == 0.0);
    CHECK(zs.imag() ==
          doctest::Approx(Frequency(f_hz).angular() * c.line.inductance_h).epsilon(1e-15));
  }
}

TEST_CASE("cascade matrix equals the explicit shunt-series-shunt product") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> real_part(-30.0, 30.0);
  for (int k = 0; k < 50; ++k) {
    const cplx zs(real_part(rng), real_part(rng));
    const cplx y1(real_part(rng) / 100.0, real_part(rng) / 100.0);
    const cplx y2(real_part(rng) / 100.0, real_part(rng) / 100.0);
    const ABCDMatrix m = abcd_cascade(zs, y1, y2);
    const auto ref = oracles::stepwise_abcd(zs, y1, y2);
    CHECK(std::abs(m.a - cplx((double)ref.a.real(), (double)ref.a.imag())) < 1e-12);
    CHECK(std::abs(m.b - cplx((double)ref.b.real(), (double)ref.b.imag())) < 1e-10);
    CHECK(std::abs(m.c - cplx((double)ref.c.real(), (double)ref.c.imag())) < 1e-12);
    CHECK(std::abs(m.d - cplx((double)ref.d.real(), (double)ref.d.imag())) < 1e-12);
    // reciprocity of the two-port
    CHECK(std::abs(m.determinant() - 1.0) < 1e-12);
  }
}

TEST_CASE("transmission matches the stepwise matrix route on the reference device") {
  for (double angle : presets::reference_angles()) {
    const auto c = presets::reference_circuit(angle);
    for (double f_hz : linspace(3.2e9, 6.4e9, 101)) {
      const Frequency f(f_hz);
      const cplx zs = series_impedance(c, f);
      const cplx y{0.0, f.angular() * c.line.capacitance_f / 2.0};
      const cplx ref = oracles::stepwise_s21(zs, y, y, c.line.z0_ohm);
      const ComplexS21 got = s21_circuit(c, f);
      CHECK(std::abs(got.value - ref) < 1e-12);
    }
  }
}

TEST_CASE("transmission at the first resonance of the reference device") {
  const ComplexS21 s = s21_circuit(presets::reference_circuit(0.0), Frequency(3.935e9));
  CHECK(s.re() == doctest::Approx(0.317452053127).epsilon(1e-9));
  CHECK(s.im() == doctest::Approx(-0.571382685387).epsilon(1e-9));
  CHECK(s.magnitude() == doctest::Approx(0.6536466776436116).epsilon(1e-9));
}

TEST_CASE("passivity over the reference device") {
  for (double angle : presets::reference_angles()) {
    const auto c = presets::reference_circuit(angle);
    for (const auto& s : s21_sweep(c, linspace(3.0e9, 7.0e9, 401)))
      CHECK(s.magnitude() <= 1.0 + 1e-12);
  }
}

TEST_CASE("sweep is independent of the thread count") {
  const auto c = coupled_test_circuit();
  const auto grid = linspace(3.0e9, 7.0e9, 257);
  const auto serial = s21_sweep(c, grid, 1);
  const auto parallel = s21_sweep(c, grid, 4);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i)
    CHECK(serial[i].value == parallel[i].value);
}

TEST_CASE("damping rates follow the loss formulas") {
  const auto c = presets::reference_circuit(0.0);

  const long double w1 = 2.0L * std::numbers::pi_v<long double> * 3.935e9L;
  const long double beta1 =
      w1 * w1 * 0.9831L * 0.2193e-12L / 2.0L / (2.0L * std::numbers::pi_v<long double>);
  CHECK(intrinsic_damping(c.mode1).hz() == doctest::Approx((double)beta1).epsilon(1e-12));

  const long double gamma1 = w1 * w1 * w1 * w1 * 0.215e-9L * 0.215e-9L * 0.2193e-12L /
                             (2.0L * 50.0L) / (2.0L * std::numbers::pi_v<long double>);
  CHECK(extrinsic_damping(c.mode1, 50.0).hz() ==
        doctest::Approx((double)gamma1).epsilon(1e-12));

  // a decoupled resonator radiates nothing
  CHECK(extrinsic_damping(presets::reference_circuit(0.0).mode2, 50.0).hz() == 0.0);
  CHECK_THROWS_AS(extrinsic_damping(c.mode1, 0.0), ConfigError);
}

TEST_CASE("vanishing denominator raises a singularity error") {
  // A lossless decoupled branch makes the denominator exactly zero when the
  // drive hits the resonance bit-exactly.  Powers of two keep every
  // conversion on the way exact; the small search below finds an f whose
  // angular form reproduces the target without rounding.
  const double w_target = 34359738368.0;  // 2^35 rad/s, about 5.47 GHz
  double f_hz = w_target / kTwoPi;
  bool exact = (kTwoPi * f_hz == w_target);
  double up = f_hz, down = f_hz;
  for (int k = 0; k < 100 && !exact; ++k) {
    up = std::nextafter(up, 1e30);
    down = std::nextafter(down, 0.0);
    if (kTwoPi * up == w_target) { f_hz = up; exact = true; }
    if (!exact && kTwoPi * down == w_target) { f_hz = down; exact = true; }
  }
  REQUIRE(exact);

  const double c1 = 9.094947017729282e-13;      // 2^-40 F
  const double l1 = 9.313225746154785e-10;      // 2^-30 H
  const TwoModeCircuit lossless(
      TransmissionLine(0.9e-9, 1.3e-12, 50.0),
      ResonatorRLC(l1, c1, 0.0, 0.2e-9),
      ResonatorRLC::from_resonance(Frequency(5.5e9), 0.3e-12, 0.0, 0.1e-9), 0.0);
  REQUIRE(lossless.mode1.resonance().angular() == w_target);

  CHECK_THROWS_AS(delta_impedance(lossless, Frequency(f_hz)), SingularityError);

  // any resistance moves the pole off the real axis again
  TwoModeCircuit lossy = lossless;
  lossy.mode1.resistance_ohm = 0.01;
  CHECK_NOTHROW(delta_impedance(lossy, Frequency(f_hz)));
}

TEST_CASE("lossy reference device never trips the singularity guard") {
  for (double angle : presets::reference_angles()) {
    const auto c = presets::reference_circuit(angle);
    CHECK_NOTHROW(s21_sweep(c, linspace(3.5e9, 6.0e9, 2501)));
    CHECK_NOTHROW(s21_circuit(c, c.mode1.resonance()));
    CHECK_NOTHROW(s21_circuit(c, c.mode2.resonance()));
  }
}
