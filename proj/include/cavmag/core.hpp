#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "cavmag/errors.hpp"

namespace cavmag {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Linear frequency in Hz.  All public interfaces speak linear Hz; the angular
// form omega = 2*pi*f (rad/s) is produced only where a formula needs it.
class Frequency {
 public:
  Frequency() = default;
  explicit Frequency(double hz) : hz_(hz) {
    if (!(hz >= 0.0))
      throw ConfigError("frequency must be >= 0 Hz, got " + std::to_string(hz));
  }
  static Frequency from_angular(double rad_per_s) { return Frequency(rad_per_s / kTwoPi); }

  double hz() const { return hz_; }
  double angular() const { return kTwoPi * hz_; }

 private:
  double hz_ = 0.0;
};

// Converts linear frequency to angular frequency (rad/s).
inline double to_angular(Frequency f) { return f.angular(); }

// Half-width-at-half-maximum decay rate in Hz.  Stored linear; converted to
// rad/s inside formula evaluators only.
class DampingRate {
 public:
  DampingRate() = default;
  explicit DampingRate(double hz) : hz_(hz) {
    if (!(hz >= 0.0))
      throw ConfigError("damping rate must be >= 0 Hz, got " + std::to_string(hz));
  }

  double hz() const { return hz_; }
  double angular() const { return kTwoPi * hz_; }

 private:
  double hz_ = 0.0;
};

// Dimensionless complex scattering amplitude.
struct ComplexS21 {
  std::complex<double> value{0.0, 0.0};

  double re() const { return value.real(); }
  double im() const { return value.imag(); }
  double magnitude() const { return std::abs(value); }
};

// 20*log10|s|; |s| = 0 maps to the -infinity sentinel used by the emitters.
inline double db_magnitude(const ComplexS21& s) {
  const double mag = s.magnitude();
  if (mag == 0.0) return -std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(mag);
}

// Rotation angle in degrees; the raw value is preserved and a normalized
// representative in [0, 180) is available on demand.
class Angle {
 public:
  Angle() = default;
  explicit Angle(double degrees) : deg_(degrees) {}

  double degrees() const { return deg_; }
  double radians() const { return deg_ * std::numbers::pi / 180.0; }
  double normalized_degrees() const {
    double d = std::fmod(deg_, 180.0);
    if (d < 0.0) d += 180.0;
    return d;
  }

 private:
  double deg_ = 0.0;
};

// Uniformly spaced grid of `points` values from start to stop inclusive;
// a single point collapses to {start}.
inline std::vector<double> linspace(double start, double stop, std::size_t points) {
  if (points == 0) throw ConfigError("grid needs at least one point");
  if (points == 1) return {start};
  if (!(stop > start))
    throw ConfigError("grid requires stop > start for more than one point");
  std::vector<double> grid(points);
  const double step = (stop - start) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i)
    grid[i] = start + step * static_cast<double>(i);
  grid.back() = stop;
  return grid;
}

}  // namespace cavmag
