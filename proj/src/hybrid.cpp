#include "cavmag/hybrid.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "cavmag/errors.hpp"

namespace cavmag::hybrid {

using cplx = std::complex<double>;
constexpr cplx kJ{0.0, 1.0};

CouplingSet::CouplingSet(double g12, double g23, double g31)
    : g12_hz(g12), g23_hz(g23), g31_hz(g31) {
  if (!(g12 >= 0.0 && g23 >= 0.0 && g31 >= 0.0))
    throw ConfigError("coupling strengths must be >= 0 Hz");
}

KittelParams::KittelParams(double gyro, double m_eff)
    : gyro_mhz_per_oe(gyro), m_eff_g(m_eff) {
  if (!(gyro > 0.0)) throw ConfigError("gyromagnetic ratio must be > 0 MHz/Oe");
  if (!(m_eff > 0.0)) throw ConfigError("effective magnetization must be > 0 G");
}

void FieldSweepMap::validate() const {
  if (values.size() != h_grid_oe.size() * f_grid_hz.size())
    throw ConfigError("field sweep map: value count does not match grid dimensions");
  for (std::size_t i = 1; i < h_grid_oe.size(); ++i)
    if (!(h_grid_oe[i] > h_grid_oe[i - 1]))
      throw ConfigError("field sweep map: field grid must be strictly increasing");
  for (std::size_t i = 1; i < f_grid_hz.size(); ++i)
    if (!(f_grid_hz[i] > f_grid_hz[i - 1]))
      throw ConfigError("field sweep map: frequency grid must be strictly increasing");
}

Frequency kittel_frequency(double h_oe, const KittelParams& k) {
  if (!(h_oe >= 0.0)) throw ConfigError("applied field must be >= 0 Oe");
  return Frequency(k.gyro_mhz_per_oe * 1e6 * std::sqrt(h_oe * (h_oe + k.m_eff_g)));
}

double kittel_field(Frequency f, const KittelParams& k) {
  const double f_mhz = f.hz() / 1e6;
  const double q = (f_mhz / k.gyro_mhz_per_oe) * (f_mhz / k.gyro_mhz_per_oe);
  if (q == 0.0) return 0.0;
  // Stable larger-root form of H^2 + m_eff*H - q = 0.
  return 2.0 * q / (k.m_eff_g + std::sqrt(k.m_eff_g * k.m_eff_g + 4.0 * q));
}

namespace {

cplx complex_frequency(const ModeParams& m) {
  return m.f0.angular() - kJ * (m.beta.angular() + m.gamma.angular());
}

cplx off_diagonal(double g_hz, const ModeParams& mi, const ModeParams& mj) {
  return kTwoPi * g_hz - kJ * kTwoPi * std::sqrt(mi.gamma.hz() * mj.gamma.hz());
}

}  // namespace

Eigen::Matrix3cd coupling_matrix_from_modes(const ModeTriplet& modes,
                                            const CouplingSet& couplings) {
  const cplx o12 = off_diagonal(couplings.g12_hz, modes.photon1, modes.photon2);
  const cplx o23 = off_diagonal(couplings.g23_hz, modes.photon2, modes.magnon);
  const cplx o31 = off_diagonal(couplings.g31_hz, modes.magnon, modes.photon1);
  Eigen::Matrix3cd m;
  m << complex_frequency(modes.photon1), o12, o31,
       o12, complex_frequency(modes.photon2), o23,
       o31, o23, complex_frequency(modes.magnon);
  return m;
}

Eigen::Matrix3cd coupling_matrix(const HybridModeSet& params, double h_oe) {
  ModeTriplet modes = params.modes;
  modes.magnon.f0 = kittel_frequency(h_oe, params.kittel);
  return coupling_matrix_from_modes(modes, params.couplings);
}

std::array<std::complex<double>, 3> eigenbranches(const Eigen::Matrix3cd& matrix) {
  Eigen::ComplexEigenSolver<Eigen::Matrix3cd> solver(matrix, false);
  if (solver.info() != Eigen::Success) {
    std::ostringstream os;
    os << "eigensolver failed to converge on matrix:\n" << matrix;
    throw SingularityError(os.str());
  }
  std::array<cplx, 3> ev{solver.eigenvalues()(0), solver.eigenvalues()(1),
                         solver.eigenvalues()(2)};
  std::sort(ev.begin(), ev.end(), [](const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return ev;
}

std::vector<std::array<std::complex<double>, 3>> branch_sweep(
    const HybridModeSet& params, const std::vector<double>& h_grid_oe) {
  std::vector<std::array<cplx, 3>> out;
  out.reserve(h_grid_oe.size());
  static constexpr int kPerms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                       {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (double h : h_grid_oe) {
    auto ev = eigenbranches(coupling_matrix(params, h));
    if (!out.empty()) {
      const auto& prev = out.back();
      double best = std::numeric_limits<double>::infinity();
      int best_perm = 0;
      for (int p = 0; p < 6; ++p) {
        double cost = 0.0;
        for (int i = 0; i < 3; ++i) cost += std::abs(ev[kPerms[p][i]] - prev[i]);
        if (cost < best) {
          best = cost;
          best_perm = p;
        }
      }
      std::array<cplx, 3> matched;
      for (int i = 0; i < 3; ++i) matched[i] = ev[kPerms[best_perm][i]];
      ev = matched;
    }
    out.push_back(ev);
  }
  return out;
}

ComplexS21 s21_hybrid(const HybridModeSet& params, double h_oe, Frequency f) {
  if (!(f.hz() > 0.0)) throw ConfigError("s21_hybrid requires f > 0");
  const Eigen::Matrix3cd hc = coupling_matrix(params, h_oe);
  const double w = f.angular();

  // M = i*(w*I - hc); symmetric, so solve via cofactors.
  const cplx a = kJ * (w - hc(0, 0)), b = -kJ * hc(0, 1), c = -kJ * hc(0, 2);
  const cplx e = kJ * (w - hc(1, 1)), g = -kJ * hc(1, 2);
  const cplx i = kJ * (w - hc(2, 2));

  const cplx c11 = e * i - g * g;
  const cplx c12 = -(b * i - g * c);
  const cplx c13 = b * g - e * c;
  const cplx c22 = a * i - c * c;
  const cplx c23 = -(a * g - b * c);
  const cplx c33 = a * e - b * b;
  const cplx det = a * c11 + b * c12 + c * c13;

  // !(> ) instead of (<) so an exactly-zero determinant (zero scale) is
  // still caught rather than slipping past an underflowed threshold.
  const double scale = (std::abs(a) + std::abs(b) + std::abs(c)) *
                       (std::abs(b) + std::abs(e) + std::abs(g)) *
                       (std::abs(c) + std::abs(g) + std::abs(i));
  if (!(std::abs(det) > 1e-30 * scale))
    throw SingularityError("mode matrix singular at H = " + std::to_string(h_oe) +
                           " Oe, f = " + std::to_string(f.hz()) + " Hz");

  const double k1 = std::sqrt(2.0 * params.modes.photon1.gamma.angular());
  const double k2 = std::sqrt(2.0 * params.modes.photon2.gamma.angular());
  const double k3 = std::sqrt(2.0 * params.modes.magnon.gamma.angular());

  const cplx quad = (k1 * (c11 * k1 + c12 * k2 + c13 * k3) +
                     k2 * (c12 * k1 + c22 * k2 + c23 * k3) +
                     k3 * (c13 * k1 + c23 * k2 + c33 * k3)) /
                    det;
  return ComplexS21{1.0 + quad};
}

FieldSweepMap field_sweep(const HybridModeSet& params,
                          const std::vector<double>& h_grid_oe,
                          const std::vector<double>& f_grid_hz, std::size_t threads) {
  if (h_grid_oe.empty() || f_grid_hz.empty())
    throw ConfigError("field_sweep requires non-empty grids");
  FieldSweepMap map;
  map.h_grid_oe = h_grid_oe;
  map.f_grid_hz = f_grid_hz;
  map.values.resize(h_grid_oe.size() * f_grid_hz.size());
  map.validate();

  const std::size_t rows = h_grid_oe.size();
  const std::size_t cols = f_grid_hz.size();
  auto fill_row = [&](std::size_t r) {
    for (std::size_t j = 0; j < cols; ++j) {
      try {
        map.values[r * cols + j] =
            s21_hybrid(params, h_grid_oe[r], Frequency(f_grid_hz[j])).magnitude();
      } catch (const SingularityError& err) {
        throw SingularityError(std::string(err.what()) + " [grid row " +
                               std::to_string(r) + ", col " + std::to_string(j) + "]");
      }
    }
  };

  if (threads < 1) threads = 1;
  if (threads == 1 || rows == 1) {
    for (std::size_t r = 0; r < rows; ++r) fill_row(r);
    return map;
  }

  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  const std::size_t chunk = (rows + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t lo = t * chunk;
    const std::size_t hi = std::min(rows, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t r = lo; r < hi; ++r) fill_row(r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return map;
}

}  // namespace cavmag::hybrid
