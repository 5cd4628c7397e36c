#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cavmag/circuit.hpp"
#include "cavmag/core.hpp"
#include "cavmag/hybrid.hpp"

namespace cavmag::fit {

// One S21 trace over frequency, complex or magnitude-only.
struct Spectrum {
  std::vector<double> f_grid_hz;
  std::vector<std::complex<double>> s21;
  bool magnitude_only = false;
  std::optional<double> angle_deg;
  std::optional<double> field_oe;
  std::string source;

  void validate() const;
  double magnitude(std::size_t i) const { return std::abs(s21[i]); }
};

// One named model parameter with its role in a fit.
struct ParamSpec {
  std::string name;
  double initial = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool free = false;
};

enum class ResidualKind { magnitude, complex_parts };
enum class HybridObjective { ridge, surface };

struct FitConfig {
  std::vector<ParamSpec> params;
  int max_iterations = 200;
  double gradient_tol = 1e-10;
  double step_tol = 1e-12;
  double objective_tol = 1e-14;
  ResidualKind residual = ResidualKind::magnitude;
  HybridObjective hybrid_objective = HybridObjective::ridge;
  double ridge_prominence = 0.005;

  void validate() const;
  const ParamSpec* find(const std::string& name) const;
  ParamSpec* find(const std::string& name);
};

struct FittedParam {
  std::string name;
  double value = 0.0;
  double std_error = 0.0;  // NaN when not estimable
  bool free = false;
  double lower = 0.0;
  double upper = 0.0;
};

struct FitResult {
  std::vector<FittedParam> params;
  double objective = 0.0;
  std::vector<double> residuals;
  int iterations = 0;
  bool converged = false;
  std::string status;
  std::vector<double> objective_trace;  // initial value then each accepted step

  double value(const std::string& name) const;
};

// Aggregate residual statistics plus the parameter table of a finished fit.
struct ResidualReport {
  double rms = 0.0;
  double max_abs = 0.0;
  std::size_t n_points = 0;
  bool converged = false;
  int iterations = 0;
  double objective = 0.0;
  std::vector<FittedParam> params;
  std::vector<double> residuals;
  std::vector<double> objective_trace;
};

struct ResonanceEstimate {
  double f0_hz = 0.0;
  double hwhm_hz = 0.0;
  double depth = 0.0;  // baseline minus minimum, linear magnitude
};

// A |S21| dip located in one field slice of a sweep map.  Points sharing a
// track id belong to one continuously-followed dip trajectory.
struct RidgePoint {
  double h_oe = 0.0;
  double f_hz = 0.0;
  double depth = 0.0;
  int track_id = 0;
};

// Damped least-squares (Levenberg-Marquardt) minimizer options and outcome.
struct LMOptions {
  int max_iterations = 200;
  double gradient_tol = 1e-10;
  double step_tol = 1e-12;
  double objective_tol = 1e-14;
};

struct LMOutcome {
  Eigen::VectorXd x;
  double cost = 0.0;
  std::vector<double> residuals;
  std::vector<double> std_errors;  // per free coordinate, NaN when not estimable
  int iterations = 0;
  bool converged = false;
  std::string status;
  std::vector<double> trace;
};

// Minimizes sum of squared residuals over box-bounded x.  The Jacobian is
// built from central differences with 1e-6 relative steps, falling back to
// one-sided differences at active bounds.  Deterministic: identical inputs
// give bitwise-identical outcomes.  Residual evaluations that throw
// SingularityError at trial points reject the step instead of aborting.
LMOutcome lm_minimize(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& residual_fn,
    const Eigen::VectorXd& x0, const Eigen::VectorXd& lower,
    const Eigen::VectorXd& upper, const LMOptions& options);

// Locates |S21| dips in a spectrum: local minima at least `prominence` below
// the median baseline, with parabolic sub-grid refinement and HWHM estimated
// from the half-depth crossings.  Needs at least 16 grid points.
std::vector<ResonanceEstimate> extract_resonances(const Spectrum& spec,
                                                  double prominence = 0.01);

// Locates dip trajectories in a field sweep map, slice by slice.  Track
// identity follows nearest-frequency continuity from the previous slice, so
// when two dips merge near an anticrossing the surviving minimum joins the
// nearer track.
std::vector<RidgePoint> extract_ridges(const hybrid::FieldSweepMap& map,
                                       double prominence = 0.005);

// Canonical parameter names for the circuit model, in fit-vector order.
std::vector<std::string> circuit_param_names();

// Builds a FitConfig covering every circuit parameter; parameters listed in
// free_names are unlocked with default bounds [initial/2, initial*2].
FitConfig circuit_fit_config(const circuit::TwoModeCircuit& initial,
                             const std::vector<std::string>& free_names);

// Reassembles a circuit from named parameter values (fit-vector order).
circuit::TwoModeCircuit circuit_from_params(const std::vector<FittedParam>& params);

// Stage 1: least-squares fit of the circuit model to one or more spectra.
// The objective is the sum of squared |S21| (or stacked re/im) residuals over
// all spectra in order.
FitResult fit_circuit(const std::vector<Spectrum>& spectra, const FitConfig& cfg);
FitResult fit_circuit(const Spectrum& spectrum, const FitConfig& cfg);

// Canonical parameter names for the hybrid model fit.
std::vector<std::string> hybrid_param_names();

// Builds a FitConfig over the hybrid coupling (and optionally Kittel)
// parameters with the mode frequencies and dampings of `initial` held fixed.
FitConfig hybrid_fit_config(const hybrid::HybridModeSet& initial,
                            const std::vector<std::string>& free_names);

// Stage 2: fits coupling strengths to a field sweep map with photon-mode
// frequencies and dampings fixed.  Ridge objective: squared distance between
// model eigenbranch real parts and extracted dip trajectories.  Surface
// objective: squared |S21| residuals over the full grid.
FitResult fit_hybrid(const hybrid::FieldSweepMap& map,
                     const hybrid::HybridModeSet& fixed, const FitConfig& cfg);

// Applies fitted parameter values onto a hybrid mode set.
hybrid::HybridModeSet hybrid_from_params(const hybrid::HybridModeSet& base,
                                         const std::vector<FittedParam>& params);

ResidualReport residual_report(const FitResult& result);

}  // namespace cavmag::fit
