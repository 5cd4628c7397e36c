#include "cavmag/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cavmag/errors.hpp"

namespace cavmag::fit {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

void Spectrum::validate() const {
  if (f_grid_hz.size() != s21.size())
    throw ConfigError("spectrum: grid and data lengths differ");
  for (std::size_t i = 1; i < f_grid_hz.size(); ++i)
    if (!(f_grid_hz[i] > f_grid_hz[i - 1]))
      throw ConfigError("spectrum: frequency grid must be strictly increasing");
}

void FitConfig::validate() const {
  if (!(gradient_tol > 0.0 && step_tol > 0.0 && objective_tol > 0.0))
    throw ConfigError("fit config: tolerances must be > 0");
  if (max_iterations < 0) throw ConfigError("fit config: max_iterations must be >= 0");
  if (!(ridge_prominence > 0.0))
    throw ConfigError("fit config: ridge prominence must be > 0");
  for (const auto& p : params) {
    if (!(p.lower <= p.initial && p.initial <= p.upper))
      throw ConfigError("fit config: bounds of '" + p.name +
                        "' do not contain the initial value");
    if (p.free && !(p.lower < p.upper))
      throw ConfigError("fit config: free parameter '" + p.name +
                        "' needs explicit bounds with lower < upper");
  }
}

const ParamSpec* FitConfig::find(const std::string& name) const {
  for (const auto& p : params)
    if (p.name == name) return &p;
  return nullptr;
}

ParamSpec* FitConfig::find(const std::string& name) {
  for (auto& p : params)
    if (p.name == name) return &p;
  return nullptr;
}

double FitResult::value(const std::string& name) const {
  for (const auto& p : params)
    if (p.name == name) return p.value;
  throw ConfigError("fit result has no parameter named '" + name + "'");
}

// ===== damped least squares =====

namespace {

// Relative scale of one coordinate for difference steps and tolerance checks.
double coordinate_scale(double x, double x0, double lo, double hi) {
  double s = std::max(std::abs(x), std::abs(x0));
  if (std::isfinite(hi - lo)) s = std::max(s, 1e-3 * (hi - lo));
  return s > 0.0 ? s : 1e-12;
}

Eigen::MatrixXd numeric_jacobian(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& fn,
    const Eigen::VectorXd& x, const Eigen::VectorXd& x0, const Eigen::VectorXd& lo,
    const Eigen::VectorXd& hi, Eigen::Index m) {
  const Eigen::Index p = x.size();
  Eigen::MatrixXd jac(m, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    const double h = 1e-6 * coordinate_scale(x(j), x0(j), lo(j), hi(j));
    Eigen::VectorXd xp = x, xm = x;
    xp(j) = std::min(x(j) + h, hi(j));
    xm(j) = std::max(x(j) - h, lo(j));
    if (xp(j) == xm(j)) {
      jac.col(j).setZero();
      continue;
    }
    jac.col(j) = (fn(xp) - fn(xm)) / (xp(j) - xm(j));
  }
  return jac;
}

std::vector<double> standard_errors(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& fn,
    const Eigen::VectorXd& x, const Eigen::VectorXd& x0, const Eigen::VectorXd& lo,
    const Eigen::VectorXd& hi, double cost, Eigen::Index m) {
  const Eigen::Index p = x.size();
  std::vector<double> errors(static_cast<std::size_t>(p), kNaN);
  if (m <= p || p == 0) return errors;
  const Eigen::MatrixXd jac = numeric_jacobian(fn, x, x0, lo, hi, m);
  const Eigen::MatrixXd jtj = jac.transpose() * jac;
  const double s2 = cost / static_cast<double>(m - p);
  const Eigen::MatrixXd cov =
      jtj.completeOrthogonalDecomposition().pseudoInverse() * s2;
  for (Eigen::Index j = 0; j < p; ++j) {
    const double v = cov(j, j);
    errors[static_cast<std::size_t>(j)] = v >= 0.0 ? std::sqrt(v) : kNaN;
  }
  return errors;
}

}  // namespace

LMOutcome lm_minimize(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& residual_fn,
    const Eigen::VectorXd& x0, const Eigen::VectorXd& lower,
    const Eigen::VectorXd& upper, const LMOptions& options) {
  const Eigen::Index p = x0.size();
  if (lower.size() != p || upper.size() != p)
    throw ConfigError("lm_minimize: bound vectors must match parameter count");
  for (Eigen::Index j = 0; j < p; ++j)
    if (!(lower(j) <= x0(j) && x0(j) <= upper(j)))
      throw ConfigError("lm_minimize: initial point outside bounds");

  LMOutcome out;
  out.x = x0;
  Eigen::VectorXd r = residual_fn(x0);
  const Eigen::Index m = r.size();
  out.cost = r.squaredNorm();
  out.trace.push_back(out.cost);

  if (p == 0) {
    out.converged = true;
    out.status = "no free parameters";
    out.residuals.assign(r.data(), r.data() + m);
    return out;
  }

  double lambda = 1e-3;
  bool done = false;
  while (out.iterations < options.max_iterations && !done) {
    ++out.iterations;
    const Eigen::MatrixXd jac = numeric_jacobian(residual_fn, out.x, x0, lower, upper, m);
    const Eigen::VectorXd grad = jac.transpose() * r;
    const Eigen::MatrixXd jtj = jac.transpose() * jac;

    double grad_scaled = 0.0;
    for (Eigen::Index j = 0; j < p; ++j)
      grad_scaled = std::max(grad_scaled, std::abs(grad(j)) *
                                              coordinate_scale(out.x(j), x0(j),
                                                               lower(j), upper(j)));
    if (grad_scaled <= options.gradient_tol * std::max(1.0, out.cost)) {
      out.converged = true;
      out.status = "gradient tolerance reached";
      break;
    }

    const double max_diag = std::max(jtj.diagonal().maxCoeff(), 0.0);
    bool accepted = false;
    while (!accepted) {
      Eigen::MatrixXd damped = jtj;
      for (Eigen::Index j = 0; j < p; ++j) {
        const double d = std::max(jtj(j, j), 1e-30 * max_diag + 1e-300);
        damped(j, j) = jtj(j, j) + lambda * d;
      }
      const Eigen::VectorXd step = damped.ldlt().solve(-grad);
      Eigen::VectorXd x_new = out.x + step;
      for (Eigen::Index j = 0; j < p; ++j)
        x_new(j) = std::clamp(x_new(j), lower(j), upper(j));

      double cost_new = std::numeric_limits<double>::infinity();
      Eigen::VectorXd r_new;
      try {
        r_new = residual_fn(x_new);
        cost_new = r_new.squaredNorm();
      } catch (const SingularityError&) {
        // singular model at a trial point: reject the step
      }

      if (cost_new < out.cost) {
        double rel_step = 0.0;
        for (Eigen::Index j = 0; j < p; ++j)
          rel_step = std::max(rel_step, std::abs(x_new(j) - out.x(j)) /
                                            coordinate_scale(out.x(j), x0(j), lower(j),
                                                             upper(j)));
        const double dcost = out.cost - cost_new;
        out.x = x_new;
        r = r_new;
        out.cost = cost_new;
        out.trace.push_back(out.cost);
        lambda = std::max(lambda * 0.3, 1e-14);
        accepted = true;
        if (rel_step <= options.step_tol) {
          out.converged = true;
          out.status = "step tolerance reached";
          done = true;
        } else if (dcost <= options.objective_tol * std::max(1.0, out.cost)) {
          out.converged = true;
          out.status = "objective tolerance reached";
          done = true;
        }
      } else {
        // A rejected step that is already below the step tolerance means no
        // resolvable descent direction remains: numerically at a minimum.
        double rel_step = 0.0;
        for (Eigen::Index j = 0; j < p; ++j)
          rel_step = std::max(rel_step, std::abs(x_new(j) - out.x(j)) /
                                            coordinate_scale(out.x(j), x0(j), lower(j),
                                                             upper(j)));
        if (rel_step <= options.step_tol) {
          out.converged = true;
          out.status = "step tolerance reached";
          done = true;
          break;
        }
        lambda *= 3.0;
        if (lambda > 1e14) {
          out.status = "no descent step found";
          done = true;
          break;
        }
      }
    }
  }

  if (out.status.empty())
    out.status = out.converged ? "converged" : "max iterations reached";
  out.residuals.assign(r.data(), r.data() + m);
  out.std_errors = standard_errors(residual_fn, out.x, x0, lower, upper, out.cost, m);
  return out;
}

// ===== feature extraction =====

namespace {

double median(std::vector<double> v) {
  const std::size_t n = v.size();
  auto mid = v.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (n % 2 == 1) return *mid;
  const double hi = *mid;
  const double lo = *std::max_element(v.begin(), mid);
  return 0.5 * (lo + hi);
}

// Vertex abscissa of the parabola through three points; returns x1 when the
// points are not strictly convex.
double parabola_vertex(double xa, double ya, double xb, double yb, double xc,
                       double yc) {
  const double den = (xa - xb) * (xa - xc) * (xb - xc);
  if (den == 0.0) return xb;
  const double a = (xc * (yb - ya) + xb * (ya - yc) + xa * (yc - yb)) / den;
  if (!(a > 0.0)) return xb;
  const double b =
      (xc * xc * (ya - yb) + xb * xb * (yc - ya) + xa * xa * (yb - yc)) / den;
  const double vx = -b / (2.0 * a);
  return (vx > xa && vx < xc) ? vx : xb;
}

// Frequency where the trace crosses `level` between samples j and j+1.
double crossing(const std::vector<double>& f, const std::vector<double>& m,
                std::size_t j, double level) {
  const double y0 = m[j], y1 = m[j + 1];
  if (y1 == y0) return f[j];
  const double t = std::clamp((level - y0) / (y1 - y0), 0.0, 1.0);
  return f[j] + t * (f[j + 1] - f[j]);
}

struct SliceDip {
  std::size_t index;
  double f_refined;
  double depth;
};

std::vector<SliceDip> slice_dips(const std::vector<double>& f,
                                 const std::vector<double>& mag, double prominence) {
  std::vector<SliceDip> dips;
  if (f.size() < 3) return dips;
  const double baseline = median(mag);
  for (std::size_t i = 1; i + 1 < f.size(); ++i) {
    if (!(mag[i] < mag[i - 1] && mag[i] <= mag[i + 1])) continue;
    const double depth = baseline - mag[i];
    if (depth < prominence) continue;
    const double f0 = parabola_vertex(f[i - 1], mag[i - 1], f[i], mag[i], f[i + 1],
                                      mag[i + 1]);
    dips.push_back({i, f0, depth});
  }
  return dips;
}

}  // namespace

std::vector<ResonanceEstimate> extract_resonances(const Spectrum& spec,
                                                  double prominence) {
  spec.validate();
  if (spec.f_grid_hz.size() < 16)
    throw ConfigError("extract_resonances needs at least 16 grid points");
  std::vector<double> mag(spec.s21.size());
  for (std::size_t i = 0; i < spec.s21.size(); ++i) mag[i] = spec.magnitude(i);
  const double baseline = median(mag);

  std::vector<ResonanceEstimate> out;
  for (const SliceDip& dip : slice_dips(spec.f_grid_hz, mag, prominence)) {
    const std::size_t i = dip.index;
    const double level = mag[i] + dip.depth / 2.0;

    double f_lo = spec.f_grid_hz.front();
    for (std::size_t j = i; j > 0; --j) {
      if (mag[j - 1] >= level) {
        f_lo = crossing(spec.f_grid_hz, mag, j - 1, level);
        break;
      }
    }
    double f_hi = spec.f_grid_hz.back();
    for (std::size_t j = i; j + 1 < mag.size(); ++j) {
      if (mag[j + 1] >= level) {
        f_hi = crossing(spec.f_grid_hz, mag, j, level);
        break;
      }
    }
    out.push_back({dip.f_refined, (f_hi - f_lo) / 2.0, baseline - mag[i]});
  }
  return out;
}

std::vector<RidgePoint> extract_ridges(const hybrid::FieldSweepMap& map,
                                       double prominence) {
  map.validate();
  const std::size_t rows = map.h_grid_oe.size();
  const std::size_t cols = map.f_grid_hz.size();
  const double span = cols > 1 ? map.f_grid_hz.back() - map.f_grid_hz.front() : 0.0;
  const double match_tol = 0.02 * span;

  std::vector<RidgePoint> out;
  struct Track {
    int id;
    double last_f;
  };
  std::vector<Track> active;
  int next_id = 0;

  std::vector<double> mag(cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double v = map.at(r, j);
      mag[j] = map.values_in_db ? std::pow(10.0, v / 20.0) : v;
    }
    const auto dips = slice_dips(map.f_grid_hz, mag, prominence);

    // Assign dips to previous-slice tracks, closest pairs first.
    struct Pair {
      double dist;
      std::size_t dip;
      std::size_t track;
    };
    std::vector<Pair> pairs;
    for (std::size_t d = 0; d < dips.size(); ++d)
      for (std::size_t t = 0; t < active.size(); ++t) {
        const double dist = std::abs(dips[d].f_refined - active[t].last_f);
        if (dist <= match_tol) pairs.push_back({dist, d, t});
      }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
      if (a.dist != b.dist) return a.dist < b.dist;
      if (a.dip != b.dip) return a.dip < b.dip;
      return a.track < b.track;
    });

    std::vector<int> dip_track(dips.size(), -1);
    std::vector<bool> track_used(active.size(), false);
    for (const Pair& pr : pairs) {
      if (dip_track[pr.dip] != -1 || track_used[pr.track]) continue;
      dip_track[pr.dip] = active[pr.track].id;
      track_used[pr.track] = true;
    }

    std::vector<Track> next_active;
    for (std::size_t d = 0; d < dips.size(); ++d) {
      int id = dip_track[d];
      if (id == -1) id = next_id++;
      next_active.push_back({id, dips[d].f_refined});
      out.push_back({map.h_grid_oe[r], dips[d].f_refined, dips[d].depth, id});
    }
    active = std::move(next_active);
  }
  return out;
}

// ===== circuit-stage fit =====

std::vector<std::string> circuit_param_names() {
  return {"mode1.f0", "mode1.c", "mode1.r", "mode1.m", "mode2.f0", "mode2.c",
          "mode2.r",  "mode2.m", "line.l",  "line.c",  "line.z0",  "m12"};
}

namespace {

double circuit_param_value(const circuit::TwoModeCircuit& c, const std::string& name) {
  if (name == "mode1.f0") return c.mode1.resonance().hz();
  if (name == "mode1.c") return c.mode1.capacitance_f;
  if (name == "mode1.r") return c.mode1.resistance_ohm;
  if (name == "mode1.m") return c.mode1.mutual_h;
  if (name == "mode2.f0") return c.mode2.resonance().hz();
  if (name == "mode2.c") return c.mode2.capacitance_f;
  if (name == "mode2.r") return c.mode2.resistance_ohm;
  if (name == "mode2.m") return c.mode2.mutual_h;
  if (name == "line.l") return c.line.inductance_h;
  if (name == "line.c") return c.line.capacitance_f;
  if (name == "line.z0") return c.line.z0_ohm;
  if (name == "m12") return c.mutual12_h;
  throw ConfigError("unknown circuit parameter '" + name + "'");
}

FitConfig make_fit_config(const std::vector<std::string>& all_names,
                          const std::function<double(const std::string&)>& value_of,
                          const std::vector<std::string>& free_names) {
  FitConfig cfg;
  for (const auto& name : all_names) {
    const double v = value_of(name);
    cfg.params.push_back({name, v, v, v, false});
  }
  for (const auto& name : free_names) {
    ParamSpec* p = cfg.find(name);
    if (p == nullptr) throw ConfigError("unknown fit parameter '" + name + "'");
    p->free = true;
    if (p->initial > 0.0) {
      p->lower = p->initial / 2.0;
      p->upper = p->initial * 2.0;
    }
    // Zero-valued initials keep the degenerate [0, 0] bounds; FitConfig::
    // validate then demands explicit bounds from the caller.
  }
  return cfg;
}

// Named parameter values in config order, with free coordinates substituted.
std::vector<FittedParam> assemble_params(const FitConfig& cfg,
                                         const Eigen::VectorXd& x_free) {
  std::vector<FittedParam> out;
  Eigen::Index k = 0;
  for (const auto& p : cfg.params) {
    const double v = p.free ? x_free(k++) : p.initial;
    out.push_back({p.name, v, kNaN, p.free, p.lower, p.upper});
  }
  return out;
}

double param_value(const std::vector<FittedParam>& params, const std::string& name) {
  for (const auto& p : params)
    if (p.name == name) return p.value;
  throw ConfigError("missing fit parameter '" + name + "'");
}

FitResult package_result(const FitConfig& cfg, const LMOutcome& outcome) {
  FitResult result;
  result.params = assemble_params(cfg, outcome.x);
  std::size_t k = 0;
  for (auto& p : result.params)
    if (p.free) p.std_error = outcome.std_errors[k++];
  result.objective = outcome.cost;
  result.residuals = outcome.residuals;
  result.iterations = outcome.iterations;
  result.converged = outcome.converged;
  result.status = outcome.status;
  result.objective_trace = outcome.trace;
  return result;
}

LMOptions lm_options(const FitConfig& cfg) {
  return {cfg.max_iterations, cfg.gradient_tol, cfg.step_tol, cfg.objective_tol};
}

void split_free(const FitConfig& cfg, Eigen::VectorXd& x0, Eigen::VectorXd& lo,
                Eigen::VectorXd& hi) {
  Eigen::Index n = 0;
  for (const auto& p : cfg.params)
    if (p.free) ++n;
  x0.resize(n);
  lo.resize(n);
  hi.resize(n);
  Eigen::Index k = 0;
  for (const auto& p : cfg.params) {
    if (!p.free) continue;
    x0(k) = p.initial;
    lo(k) = p.lower;
    hi(k) = p.upper;
    ++k;
  }
}

}  // namespace

FitConfig circuit_fit_config(const circuit::TwoModeCircuit& initial,
                             const std::vector<std::string>& free_names) {
  return make_fit_config(
      circuit_param_names(),
      [&](const std::string& n) { return circuit_param_value(initial, n); },
      free_names);
}

circuit::TwoModeCircuit circuit_from_params(const std::vector<FittedParam>& params) {
  const circuit::TransmissionLine line(param_value(params, "line.l"),
                                       param_value(params, "line.c"),
                                       param_value(params, "line.z0"));
  const auto mode1 = circuit::ResonatorRLC::from_resonance(
      Frequency(param_value(params, "mode1.f0")), param_value(params, "mode1.c"),
      param_value(params, "mode1.r"), param_value(params, "mode1.m"));
  const auto mode2 = circuit::ResonatorRLC::from_resonance(
      Frequency(param_value(params, "mode2.f0")), param_value(params, "mode2.c"),
      param_value(params, "mode2.r"), param_value(params, "mode2.m"));
  return circuit::TwoModeCircuit(line, mode1, mode2, param_value(params, "m12"));
}

FitResult fit_circuit(const std::vector<Spectrum>& spectra, const FitConfig& cfg) {
  cfg.validate();
  if (spectra.empty()) throw ConfigError("fit_circuit requires at least one spectrum");
  std::size_t n_points = 0;
  for (const auto& s : spectra) {
    s.validate();
    if (s.magnitude_only && cfg.residual == ResidualKind::complex_parts)
      throw ConfigError("complex-residual fit requires phase data, but '" + s.source +
                        "' is magnitude-only");
    n_points += s.f_grid_hz.size();
  }
  const std::size_t n_res =
      cfg.residual == ResidualKind::complex_parts ? 2 * n_points : n_points;

  auto residual_fn = [&](const Eigen::VectorXd& x) {
    const auto params = assemble_params(cfg, x);
    const auto model = circuit_from_params(params);
    Eigen::VectorXd r(static_cast<Eigen::Index>(n_res));
    Eigen::Index k = 0;
    for (const auto& s : spectra) {
      for (std::size_t i = 0; i < s.f_grid_hz.size(); ++i) {
        const ComplexS21 m = circuit::s21_circuit(model, Frequency(s.f_grid_hz[i]));
        if (cfg.residual == ResidualKind::complex_parts) {
          r(k++) = m.re() - s.s21[i].real();
          r(k++) = m.im() - s.s21[i].imag();
        } else {
          r(k++) = m.magnitude() - s.magnitude(i);
        }
      }
    }
    return r;
  };

  Eigen::VectorXd x0, lo, hi;
  split_free(cfg, x0, lo, hi);
  return package_result(cfg, lm_minimize(residual_fn, x0, lo, hi, lm_options(cfg)));
}

FitResult fit_circuit(const Spectrum& spectrum, const FitConfig& cfg) {
  return fit_circuit(std::vector<Spectrum>{spectrum}, cfg);
}

// ===== hybrid-stage fit =====

std::vector<std::string> hybrid_param_names() {
  return {"couplings.g12", "couplings.g23", "couplings.g31", "kittel.gyro",
          "kittel.m_eff"};
}

namespace {

double hybrid_param_value(const hybrid::HybridModeSet& h, const std::string& name) {
  if (name == "couplings.g12") return h.couplings.g12_hz;
  if (name == "couplings.g23") return h.couplings.g23_hz;
  if (name == "couplings.g31") return h.couplings.g31_hz;
  if (name == "kittel.gyro") return h.kittel.gyro_mhz_per_oe;
  if (name == "kittel.m_eff") return h.kittel.m_eff_g;
  throw ConfigError("unknown hybrid parameter '" + name + "'");
}

}  // namespace

FitConfig hybrid_fit_config(const hybrid::HybridModeSet& initial,
                            const std::vector<std::string>& free_names) {
  return make_fit_config(
      hybrid_param_names(),
      [&](const std::string& n) { return hybrid_param_value(initial, n); }, free_names);
}

hybrid::HybridModeSet hybrid_from_params(const hybrid::HybridModeSet& base,
                                         const std::vector<FittedParam>& params) {
  hybrid::HybridModeSet out = base;
  out.couplings = hybrid::CouplingSet(param_value(params, "couplings.g12"),
                                      param_value(params, "couplings.g23"),
                                      param_value(params, "couplings.g31"));
  out.kittel = hybrid::KittelParams(param_value(params, "kittel.gyro"),
                                    param_value(params, "kittel.m_eff"));
  return out;
}

FitResult fit_hybrid(const hybrid::FieldSweepMap& map,
                     const hybrid::HybridModeSet& fixed, const FitConfig& cfg) {
  cfg.validate();
  map.validate();

  // Work on linear magnitude regardless of how the map arrived.
  hybrid::FieldSweepMap linear = map;
  if (linear.values_in_db) {
    for (double& v : linear.values) v = std::pow(10.0, v / 20.0);
    linear.values_in_db = false;
  }

  Eigen::VectorXd x0, lo, hi;
  split_free(cfg, x0, lo, hi);

  if (cfg.hybrid_objective == HybridObjective::ridge) {
    const auto points = extract_ridges(linear, cfg.ridge_prominence);
    if (points.empty()) {
      std::ostringstream os;
      os << "no dip trajectory extractable in field window [" << map.h_grid_oe.front()
         << ", " << map.h_grid_oe.back() << "] Oe";
      throw ConfigError(os.str());
    }

    // Group points by field slice so each slice's eigenvalues are solved once.
    std::vector<std::pair<double, std::vector<double>>> slices;
    for (const auto& pt : points) {
      if (slices.empty() || slices.back().first != pt.h_oe)
        slices.push_back({pt.h_oe, {}});
      slices.back().second.push_back(pt.f_hz);
    }

    auto residual_fn = [&, slices](const Eigen::VectorXd& x) {
      const auto model = hybrid_from_params(fixed, assemble_params(cfg, x));
      Eigen::VectorXd r(static_cast<Eigen::Index>(points.size()));
      Eigen::Index k = 0;
      for (const auto& [h, dips] : slices) {
        const auto branches = hybrid::eigenbranches(hybrid::coupling_matrix(model, h));
        for (double f_dip : dips) {
          double best = std::numeric_limits<double>::infinity();
          for (const auto& ev : branches) {
            const double d = f_dip - ev.real() / kTwoPi;
            if (std::abs(d) < std::abs(best)) best = d;
          }
          r(k++) = best;
        }
      }
      return r;
    };
    return package_result(cfg, lm_minimize(residual_fn, x0, lo, hi, lm_options(cfg)));
  }

  auto residual_fn = [&](const Eigen::VectorXd& x) {
    const auto model = hybrid_from_params(fixed, assemble_params(cfg, x));
    Eigen::VectorXd r(static_cast<Eigen::Index>(linear.values.size()));
    Eigen::Index k = 0;
    for (std::size_t i = 0; i < linear.h_grid_oe.size(); ++i)
      for (std::size_t j = 0; j < linear.f_grid_hz.size(); ++j) {
        const auto s = hybrid::s21_hybrid(model, linear.h_grid_oe[i],
                                          Frequency(linear.f_grid_hz[j]));
        r(k++) = s.magnitude() - linear.at(i, j);
      }
    return r;
  };
  return package_result(cfg, lm_minimize(residual_fn, x0, lo, hi, lm_options(cfg)));
}

ResidualReport residual_report(const FitResult& result) {
  ResidualReport report;
  report.n_points = result.residuals.size();
  report.converged = result.converged;
  report.iterations = result.iterations;
  report.objective = result.objective;
  report.params = result.params;
  report.residuals = result.residuals;
  report.objective_trace = result.objective_trace;
  double sum2 = 0.0;
  for (double r : result.residuals) {
    sum2 += r * r;
    report.max_abs = std::max(report.max_abs, std::abs(r));
  }
  report.rms = report.n_points > 0 ? std::sqrt(sum2 / static_cast<double>(report.n_points))
                                   : 0.0;
  return report;
}

}  // namespace cavmag::fit
