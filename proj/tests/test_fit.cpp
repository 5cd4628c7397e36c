#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstring>
#include <vector>

#include "cavmag/circuit.hpp"
#include "cavmag/core.hpp"
#include "cavmag/errors.hpp"
#include "cavmag/fit.hpp"
#include "cavmag/hybrid.hpp"
#include "cavmag/presets.hpp"

using namespace cavmag;
using namespace cavmag::fit;
using Eigen::VectorXd;

namespace {

VectorXd vec(std::initializer_list<double> v) {
  VectorXd x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double d : v) x(i++) = d;
  return x;
}

Spectrum simulate(const circuit::TwoModeCircuit& c, double f_lo, double f_hi,
                  std::size_t points) {
  Spectrum spec;
  spec.f_grid_hz = linspace(f_lo, f_hi, points);
  for (const auto& s : circuit::s21_sweep(c, spec.f_grid_hz)) spec.s21.push_back(s.value);
  spec.source = "synthetic";
  return spec;
}

// Symmetric magnitude dip with exactly known center, half width and depth.
double lorentzian_dip(double f, double f0, double hw, double depth) {
  return 1.0 - depth * hw * hw / (hw * hw + (f - f0) * (f - f0));
}

}  // namespace

TEST_CASE("minimizer solves a linear least-squares problem in a few steps") {
  const auto residual = [](const VectorXd& x) {
    return vec({x(0) + 2.0 * x(1) - 4.0, 3.0 * x(0) - x(1) - 5.0, x(0) + x(1) - 3.0});
  };
  const LMOutcome out =
      lm_minimize(residual, vec({0.0, 0.0}), vec({-10.0, -10.0}), vec({10.0, 10.0}), {});
  CHECK(out.converged);
  CHECK(out.iterations <= 5);
  CHECK(out.x(0) == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(out.x(1) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(out.cost < 1e-16);
}

TEST_CASE("minimizer handles the classic banana valley") {
  const auto residual = [](const VectorXd& x) {
    return vec({10.0 * (x(1) - x(0) * x(0)), 1.0 - x(0)});
  };
  const LMOutcome out =
      lm_minimize(residual, vec({-1.2, 1.0}), vec({-5.0, -5.0}), vec({5.0, 5.0}), {});
  CHECK(out.converged);
  CHECK(out.x(0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(out.x(1) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("accepted objective values never increase") {
  const auto residual = [](const VectorXd& x) {
    return vec({10.0 * (x(1) - x(0) * x(0)), 1.0 - x(0)});
  };
  const LMOutcome out =
      lm_minimize(residual, vec({-1.2, 1.0}), vec({-5.0, -5.0}), vec({5.0, 5.0}), {});
  REQUIRE(out.trace.size() >= 2);
  for (std::size_t i = 1; i < out.trace.size(); ++i)
    CHECK(out.trace[i] <= out.trace[i - 1]);
}

TEST_CASE("minimizer is deterministic") {
  const auto residual = [](const VectorXd& x) {
    return vec({10.0 * (x(1) - x(0) * x(0)), 1.0 - x(0)});
  };
  const LMOutcome a =
      lm_minimize(residual, vec({-1.2, 1.0}), vec({-5.0, -5.0}), vec({5.0, 5.0}), {});
  const LMOutcome b =
      lm_minimize(residual, vec({-1.2, 1.0}), vec({-5.0, -5.0}), vec({5.0, 5.0}), {});
  CHECK(std::memcmp(a.x.data(), b.x.data(), sizeof(double) * a.x.size()) == 0);
  CHECK(a.cost == b.cost);
  CHECK(a.trace == b.trace);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("minimum outside the box parks the solution on the bound") {
  const auto residual = [](const VectorXd& x) { return vec({x(0) - 3.0}); };
  const LMOutcome out = lm_minimize(residual, vec({0.5}), vec({0.0}), vec({1.0}), {});
  CHECK(out.converged);
  CHECK(out.x(0) == 1.0);
}

TEST_CASE("no free parameters short-circuits to a converged evaluation") {
  const auto residual = [](const VectorXd&) { return vec({1.0, -2.0}); };
  const LMOutcome out = lm_minimize(residual, VectorXd(0), VectorXd(0), VectorXd(0), {});
  CHECK(out.converged);
  CHECK(out.status == "no free parameters");
  CHECK(out.iterations == 0);
  CHECK(out.cost == doctest::Approx(5.0));
}

TEST_CASE("singular trial evaluations reject the step instead of aborting") {
  // The first damped step overshoots far into the throwing region; the
  // search must back off and still reach the minimum at x = 2.9.
  const auto residual = [](const VectorXd& x) {
    if (x(0) > 3.0) throw SingularityError("model blows up");
    return vec({std::exp(x(0)) - std::exp(2.9)});
  };
  const LMOutcome out = lm_minimize(residual, vec({0.0}), vec({-50.0}), vec({50.0}), {});
  CHECK(out.converged);
  CHECK(out.x(0) == doctest::Approx(2.9).epsilon(1e-6));
}

TEST_CASE("resonance extraction recovers an analytic dip") {
  Spectrum spec;
  spec.f_grid_hz = linspace(3.8e9, 4.2e9, 801);
  for (double f : spec.f_grid_hz)
    spec.s21.push_back({lorentzian_dip(f, 4.0e9, 20e6, 0.4), 0.0});

  const auto found = extract_resonances(spec);
  REQUIRE(found.size() == 1);
  CHECK(found[0].f0_hz == doctest::Approx(4.0e9).epsilon(1e-5));
  CHECK(found[0].hwhm_hz == doctest::Approx(20e6).epsilon(0.10));
  CHECK(found[0].depth == doctest::Approx(0.4).epsilon(0.10));
}

TEST_CASE("resonance extraction separates well-spaced dips in ascending order") {
  Spectrum spec;
  spec.f_grid_hz = linspace(3.8e9, 4.3e9, 1001);
  for (double f : spec.f_grid_hz)
    spec.s21.push_back({lorentzian_dip(f, 3.95e9, 15e6, 0.3) *
                            lorentzian_dip(f, 4.18e9, 10e6, 0.25),
                        0.0});

  const auto found = extract_resonances(spec);
  REQUIRE(found.size() == 2);
  CHECK(found[0].f0_hz == doctest::Approx(3.95e9).epsilon(1e-4));
  CHECK(found[1].f0_hz == doctest::Approx(4.18e9).epsilon(1e-4));
}

TEST_CASE("resonance extraction respects the prominence threshold") {
  Spectrum spec;
  spec.f_grid_hz = linspace(3.8e9, 4.2e9, 401);
  for (double f : spec.f_grid_hz)
    spec.s21.push_back({lorentzian_dip(f, 4.0e9, 20e6, 0.005), 0.0});
  CHECK(extract_resonances(spec, 0.01).empty());
  CHECK(extract_resonances(spec, 0.001).size() == 1);
}

TEST_CASE("flat traces yield no resonances and short traces are rejected") {
  Spectrum flat;
  flat.f_grid_hz = linspace(3.8e9, 4.2e9, 101);
  flat.s21.assign(101, {1.0, 0.0});
  CHECK(extract_resonances(flat).empty());

  Spectrum tiny;
  tiny.f_grid_hz = linspace(3.8e9, 4.2e9, 15);
  tiny.s21.assign(15, {1.0, 0.0});
  CHECK_THROWS_AS(extract_resonances(tiny), ConfigError);
}

TEST_CASE("resonance extraction finds the reference device dips") {
  // one bright mode at 0 degrees, two at 30 degrees
  const auto at0 = extract_resonances(
      simulate(presets::reference_circuit(0.0), 3.7e9, 6.0e9, 1151));
  REQUIRE(at0.size() == 1);
  CHECK(std::abs(at0[0].f0_hz - 3.935e9) < 5e6);

  const auto at30 = extract_resonances(
      simulate(presets::reference_circuit(30.0), 3.6e9, 6.0e9, 1201));
  REQUIRE(at30.size() == 2);
  CHECK(std::abs(at30[0].f0_hz - 3.7557e9) < 5e6);
  CHECK(std::abs(at30[1].f0_hz - 5.6778e9) < 5e6);
}

TEST_CASE("ridge extraction follows two separated dip trajectories") {
  hybrid::FieldSweepMap map;
  map.h_grid_oe = linspace(0.0, 10.0, 11);
  map.f_grid_hz = linspace(3.8e9, 4.5e9, 701);
  for (double h : map.h_grid_oe)
    for (double f : map.f_grid_hz)
      map.values.push_back(lorentzian_dip(f, 4.0e9, 8e6, 0.3) *
                           lorentzian_dip(f, 4.3e9 + 0.01e9 * h, 8e6, 0.3));

  const auto points = extract_ridges(map);
  std::vector<int> tracks;
  for (const auto& p : points)
    if (std::find(tracks.begin(), tracks.end(), p.track_id) == tracks.end())
      tracks.push_back(p.track_id);
  REQUIRE(tracks.size() == 2);

  for (const auto& p : points) {
    CHECK(p.depth > 0.2);
    const bool flat = std::abs(p.f_hz - 4.0e9) < 2e6;
    const bool diagonal = std::abs(p.f_hz - (4.3e9 + 0.01e9 * p.h_oe)) < 2e6;
    CHECK((flat || diagonal));
  }
  // every slice contributes a point to each track
  for (int t : tracks) {
    std::size_t count = 0;
    for (const auto& p : points)
      if (p.track_id == t) ++count;
    CHECK(count == map.h_grid_oe.size());
  }
}

TEST_CASE("canonical parameter name lists") {
  const std::vector<std::string> circuit_names = {
      "mode1.f0", "mode1.c", "mode1.r", "mode1.m", "mode2.f0", "mode2.c",
      "mode2.r",  "mode2.m", "line.l",  "line.c",  "line.z0",  "m12"};
  CHECK(circuit_param_names() == circuit_names);
  const std::vector<std::string> hybrid_names = {
      "couplings.g12", "couplings.g23", "couplings.g31", "kittel.gyro", "kittel.m_eff"};
  CHECK(hybrid_param_names() == hybrid_names);
}

TEST_CASE("fit config carries default bounds and validates free parameters") {
  const auto truth = presets::reference_circuit(0.0);
  FitConfig cfg = circuit_fit_config(truth, {"mode1.r"});
  const ParamSpec* r = cfg.find("mode1.r");
  REQUIRE(r != nullptr);
  CHECK(r->free);
  CHECK(r->lower == doctest::Approx(0.9831 / 2.0));
  CHECK(r->upper == doctest::Approx(0.9831 * 2.0));
  CHECK(cfg.find("no.such.param") == nullptr);
  CHECK_NOTHROW(cfg.validate());

  // a zero-valued initial cannot get default bounds; it demands explicit ones
  FitConfig zero_cfg = circuit_fit_config(truth, {"mode2.m"});
  CHECK_THROWS_AS(zero_cfg.validate(), ConfigError);
  zero_cfg.find("mode2.m")->upper = 0.1e-9;
  CHECK_NOTHROW(zero_cfg.validate());

  FitConfig bad_tol = circuit_fit_config(truth, {"mode1.r"});
  bad_tol.gradient_tol = 0.0;
  CHECK_THROWS_AS(bad_tol.validate(), ConfigError);
}

TEST_CASE("reassembled circuit reproduces the parameter values") {
  const auto truth = presets::reference_circuit(30.0);
  const FitConfig cfg = circuit_fit_config(truth, {});
  std::vector<FittedParam> params;
  for (const auto& p : cfg.params)
    params.push_back({p.name, p.initial, 0.0, p.free, p.lower, p.upper});
  const auto back = circuit_from_params(params);
  CHECK(back.mode1.resonance().hz() == doctest::Approx(truth.mode1.resonance().hz()));
  CHECK(back.mode1.capacitance_f == truth.mode1.capacitance_f);
  CHECK(back.mode2.mutual_h == truth.mode2.mutual_h);
  CHECK(back.line.z0_ohm == truth.line.z0_ohm);
}

TEST_CASE("loss-network scaling leaves the transmission invariant") {
  // With no inter-resonator mutual, only omega0, R*C and C*M^2 are
  // observable: scaling (C, R, M) -> (u*C, R/u, M/sqrt(u)) at fixed
  // resonance is invisible to any fit.  This is why round-trip fits lock
  // the capacitances.
  const auto base = presets::reference_circuit(0.0);
  const double u = 0.7;
  const circuit::TwoModeCircuit scaled(
      base.line,
      circuit::ResonatorRLC::from_resonance(
          base.mode1.resonance(), base.mode1.capacitance_f * u,
          base.mode1.resistance_ohm / u, base.mode1.mutual_h / std::sqrt(u)),
      circuit::ResonatorRLC::from_resonance(
          base.mode2.resonance(), base.mode2.capacitance_f * u,
          base.mode2.resistance_ohm / u, base.mode2.mutual_h / std::sqrt(u)),
      0.0);
  for (double f : linspace(3.7e9, 6.0e9, 301)) {
    const auto a = circuit::s21_circuit(base, Frequency(f));
    const auto b = circuit::s21_circuit(scaled, Frequency(f));
    CHECK(std::abs(a.value - b.value) < 1e-12);
  }
}

TEST_CASE("stage-1 fit recovers an identifiable parameter set exactly") {
  const auto truth = presets::reference_circuit(0.0);
  const Spectrum data = simulate(truth, 3.80e9, 4.07e9, 271);

  // resonance seeded the way the tool itself would (from the dip location),
  // loss and coupling started a full 20% off
  auto init = truth;
  init.mode1 = circuit::ResonatorRLC::from_resonance(
      Frequency(3.937e9), truth.mode1.capacitance_f, truth.mode1.resistance_ohm * 1.2,
      truth.mode1.mutual_h * 0.8);
  FitConfig cfg = circuit_fit_config(init, {"mode1.f0", "mode1.r", "mode1.m"});

  const FitResult result = fit_circuit(data, cfg);
  CHECK(result.converged);
  CHECK(result.value("mode1.f0") == doctest::Approx(3.935e9).epsilon(1e-4));
  CHECK(result.value("mode1.r") == doctest::Approx(0.9831).epsilon(0.01));
  CHECK(result.value("mode1.m") == doctest::Approx(0.215e-9).epsilon(0.01));

  const ResidualReport report = residual_report(result);
  CHECK(report.rms < 1e-6);
  CHECK(report.n_points == data.f_grid_hz.size());
  CHECK(report.converged);

  // bound respect: nothing reported outside its box
  for (const auto& p : result.params) {
    CHECK(p.value >= p.lower);
    CHECK(p.value <= p.upper);
  }
}

TEST_CASE("stage-1 fit with complex residuals also recovers the parameters") {
  const auto truth = presets::reference_circuit(0.0);
  const Spectrum data = simulate(truth, 3.80e9, 4.07e9, 271);
  auto init = truth;
  init.mode1 = circuit::ResonatorRLC::from_resonance(
      Frequency(3.937e9), truth.mode1.capacitance_f, truth.mode1.resistance_ohm * 0.85,
      truth.mode1.mutual_h * 1.15);
  FitConfig cfg = circuit_fit_config(init, {"mode1.f0", "mode1.r", "mode1.m"});
  cfg.residual = ResidualKind::complex_parts;

  const FitResult result = fit_circuit(data, cfg);
  CHECK(result.converged);
  CHECK(result.value("mode1.r") == doctest::Approx(0.9831).epsilon(0.01));
  CHECK(result.value("mode1.m") == doctest::Approx(0.215e-9).epsilon(0.01));
}

TEST_CASE("stage-1 fit is deterministic") {
  const auto truth = presets::reference_circuit(0.0);
  const Spectrum data = simulate(truth, 3.80e9, 4.07e9, 201);
  auto init = truth;
  init.mode1 = circuit::ResonatorRLC::from_resonance(
      Frequency(3.937e9), truth.mode1.capacitance_f, truth.mode1.resistance_ohm * 1.2,
      truth.mode1.mutual_h * 0.8);
  const FitConfig cfg = circuit_fit_config(init, {"mode1.f0", "mode1.r", "mode1.m"});

  const FitResult a = fit_circuit(data, cfg);
  const FitResult b = fit_circuit(data, cfg);
  CHECK(a.objective == b.objective);
  CHECK(a.iterations == b.iterations);
  for (std::size_t i = 0; i < a.params.size(); ++i)
    CHECK(a.params[i].value == b.params[i].value);
}

TEST_CASE("decoupled-line data drives both mutual inductances to zero") {
  auto dark = presets::reference_circuit(30.0);
  dark.mode1.mutual_h = 0.0;
  dark.mode2.mutual_h = 0.0;
  const Spectrum data = simulate(dark, 3.6e9, 6.0e9, 601);

  auto init = presets::reference_circuit(30.0);  // bright starting point
  FitConfig cfg = circuit_fit_config(init, {"mode1.m", "mode2.m"});
  cfg.find("mode1.m")->lower = 0.0;
  cfg.find("mode2.m")->lower = 0.0;

  const FitResult result = fit_circuit(data, cfg);
  CHECK(result.value("mode1.m") < 1e-12);  // 1e-3 nH
  CHECK(result.value("mode2.m") < 1e-12);
}

TEST_CASE("a mode that is dark in the data pins its coupling at the lower bound") {
  const auto truth = presets::reference_circuit(90.0);  // mode 1 decoupled here
  const Spectrum data = simulate(truth, 3.6e9, 6.0e9, 601);

  auto init = truth;
  init.mode1 = circuit::ResonatorRLC::from_resonance(
      truth.mode1.resonance(), truth.mode1.capacitance_f, truth.mode1.resistance_ohm,
      0.02e-9);
  FitConfig cfg = circuit_fit_config(init, {"mode1.m"});
  cfg.find("mode1.m")->lower = 0.0;
  cfg.find("mode1.m")->upper = 0.1e-9;

  const FitResult result = fit_circuit(data, cfg);
  CHECK(result.value("mode1.m") < 1e-12);
}

TEST_CASE("magnitude-only data cannot feed a complex-residual fit") {
  Spectrum data;
  data.f_grid_hz = linspace(3.8e9, 4.1e9, 31);
  data.s21.assign(31, {0.8, 0.0});
  data.magnitude_only = true;
  data.source = "mag.csv";

  FitConfig cfg = circuit_fit_config(presets::reference_circuit(0.0), {"mode1.r"});
  cfg.residual = ResidualKind::complex_parts;
  CHECK_THROWS_WITH_AS(fit_circuit(data, cfg),
                       doctest::Contains("mag.csv"), ConfigError);
}

TEST_CASE("stage-2 ridge fit recovers both couplings at 30 degrees") {
  const auto truth = presets::reference_hybrid(30.0);
  const auto map = hybrid::field_sweep(truth, linspace(650.0, 1450.0, 161),
                                       linspace(3.6e9, 5.85e9, 451));

  auto init = truth;
  init.couplings = hybrid::CouplingSet(0.0, 76e6 * 1.15, 80e6 * 0.85);
  FitConfig cfg = hybrid_fit_config(init, {"couplings.g31", "couplings.g23"});

  const FitResult result = fit_hybrid(map, init, cfg);
  CHECK(result.converged);
  CHECK(result.value("couplings.g31") == doctest::Approx(80e6).epsilon(0.02));
  CHECK(result.value("couplings.g23") == doctest::Approx(76e6).epsilon(0.02));
}

TEST_CASE("stage-2 surface fit sharpens the recovery at 0 degrees") {
  const auto truth = presets::reference_hybrid(0.0);
  const auto map = hybrid::field_sweep(truth, linspace(700.0, 860.0, 81),
                                       linspace(3.80e9, 4.07e9, 136));

  auto init = truth;
  init.couplings = hybrid::CouplingSet(0.0, 0.0, 45e6);
  FitConfig cfg = hybrid_fit_config(init, {"couplings.g31"});
  cfg.hybrid_objective = HybridObjective::surface;

  const FitResult result = fit_hybrid(map, init, cfg);
  CHECK(result.converged);
  CHECK(result.value("couplings.g31") == doctest::Approx(56.5e6).epsilon(0.005));
}

TEST_CASE("a map without anticrossings sends the couplings to zero") {
  auto quiet = presets::reference_hybrid(30.0);
  quiet.couplings = hybrid::CouplingSet(0.0, 0.0, 0.0);
  const auto map = hybrid::field_sweep(quiet, linspace(650.0, 1450.0, 81),
                                       linspace(3.6e9, 5.85e9, 451));

  auto init = quiet;
  init.couplings = hybrid::CouplingSet(0.0, 5e6, 5e6);
  FitConfig cfg = hybrid_fit_config(init, {"couplings.g31", "couplings.g23"});
  cfg.find("couplings.g31")->lower = 0.0;
  cfg.find("couplings.g31")->upper = 20e6;
  cfg.find("couplings.g23")->lower = 0.0;
  cfg.find("couplings.g23")->upper = 20e6;

  const FitResult result = fit_hybrid(map, init, cfg);
  CHECK(result.value("couplings.g31") < 1e6);
  CHECK(result.value("couplings.g23") < 1e6);
}

TEST_CASE("a featureless map is a descriptive error naming the field window") {
  hybrid::FieldSweepMap map;
  map.h_grid_oe = linspace(700.0, 720.0, 3);
  map.f_grid_hz = linspace(3.8e9, 4.1e9, 31);
  map.values.assign(3 * 31, 1.0);

  const auto fixed = presets::reference_hybrid(0.0);
  FitConfig cfg = hybrid_fit_config(fixed, {"couplings.g31"});
  CHECK_THROWS_WITH_AS(fit_hybrid(map, fixed, cfg), doctest::Contains("700"),
                       ConfigError);
}

TEST_CASE("fitted hybrid parameters reapply onto the mode set") {
  const auto base = presets::reference_hybrid(0.0);
  std::vector<FittedParam> params = {
      {"couplings.g12", 1e6, 0.0, false, 0.0, 2e6},
      {"couplings.g23", 2e6, 0.0, false, 0.0, 4e6},
      {"couplings.g31", 60e6, 0.0, true, 40e6, 80e6},
      {"kittel.gyro", 2.9, 0.0, false, 2.0, 3.0},
      {"kittel.m_eff", 1700.0, 0.0, false, 1000.0, 2000.0},
  };
  const auto applied = hybrid_from_params(base, params);
  CHECK(applied.couplings.g31_hz == 60e6);
  CHECK(applied.couplings.g12_hz == 1e6);
  CHECK(applied.kittel.gyro_mhz_per_oe == 2.9);
  CHECK(applied.kittel.m_eff_g == 1700.0);
  // untouched parts carried over
  CHECK(applied.modes.photon1.f0.hz() == base.modes.photon1.f0.hz());
}

TEST_CASE("a zero-iteration budget reports non-convergence with the last objective") {
  const auto truth = presets::reference_circuit(0.0);
  const Spectrum data = simulate(truth, 3.85e9, 4.02e9, 86);
  auto init = truth;
  init.mode1 = circuit::ResonatorRLC::from_resonance(
      Frequency(3.95e9), truth.mode1.capacitance_f, truth.mode1.resistance_ohm * 1.5,
      truth.mode1.mutual_h);
  FitConfig cfg = circuit_fit_config(init, {"mode1.f0", "mode1.r"});
  cfg.max_iterations = 0;

  const FitResult result = fit_circuit(data, cfg);
  CHECK(!result.converged);
  CHECK(result.status == "max iterations reached");
  CHECK(result.objective > 0.0);
  REQUIRE(result.objective_trace.size() == 1);
  CHECK(result.objective_trace[0] == result.objective);

  const ResidualReport report = residual_report(result);
  CHECK(!report.converged);
  CHECK(report.objective == result.objective);
}

TEST_CASE("result lookup by name rejects unknown parameters") {
  FitResult result;
  result.params.push_back({"couplings.g31", 1.0, 0.0, true, 0.0, 2.0});
  CHECK(result.value("couplings.g31") == 1.0);
  CHECK_THROWS_AS(result.value("bogus"), ConfigError);
}

TEST_CASE("spectra validate their own consistency") {
  Spectrum s;
  s.f_grid_hz = {1e9, 2e9};
  s.s21 = {{1.0, 0.0}};
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s.s21.push_back({1.0, 0.0});
  CHECK_NOTHROW(s.validate());
  s.f_grid_hz = {2e9, 1e9};
  CHECK_THROWS_AS(s.validate(), ConfigError);
}
