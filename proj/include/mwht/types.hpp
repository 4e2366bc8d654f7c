#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace mwht {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Uniform grid of ordinary frequencies (Hz). Sample k is start + k * step.
class FrequencyGrid {
 public:
  FrequencyGrid(double start_hz, double step_hz, std::size_t count);

  // `count` samples from lo to hi inclusive.
  static FrequencyGrid spanning(double lo_hz, double hi_hz, std::size_t count);

  // Grid covering at least [lo, hi] on which `anchor` and anchor * (1 +- k * fraction)
  // land exactly on samples; the step is fraction * anchor / steps_per_fraction.
  static FrequencyGrid snapped(double lo_hz, double hi_hz, double anchor_hz, double fraction,
                               std::size_t steps_per_fraction);

  double start_hz() const noexcept { return start_; }
  double step_hz() const noexcept { return step_; }
  std::size_t count() const noexcept { return count_; }
  double stop_hz() const noexcept { return at(count_ - 1); }

  double at(std::size_t k) const noexcept { return start_ + static_cast<double>(k) * step_; }
  double angular_at(std::size_t k) const noexcept { return kTwoPi * at(k); }
  double angular_step() const noexcept { return kTwoPi * step_; }

  bool contains(double f_hz) const noexcept;

  // Index of the sample equal to f (within 1e-6 step), or npos.
  std::size_t index_of(double f_hz) const noexcept;

  // Same span, step halved.
  FrequencyGrid refined() const;

  std::vector<double> frequencies() const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  double start_;
  double step_;
  std::size_t count_;
};

// Sampled complex transfer function.
class ComplexResponse {
 public:
  ComplexResponse(FrequencyGrid grid, std::vector<cplx> values);

  const FrequencyGrid& grid() const noexcept { return grid_; }
  std::span<const cplx> values() const noexcept { return values_; }
  cplx operator[](std::size_t k) const noexcept { return values_[k]; }
  std::size_t size() const noexcept { return values_.size(); }

  // Linear interpolation of real and imaginary parts; f must lie within the grid span.
  cplx interpolate(double f_hz) const;

 private:
  FrequencyGrid grid_;
  std::vector<cplx> values_;
};

enum class SampleKind { real, complex };

// Uniformly sampled waveform. Real signals keep zero imaginary parts.
class TimeSignal {
 public:
  TimeSignal(double start_s, double sample_rate_hz, std::vector<cplx> samples, SampleKind kind);

  static TimeSignal real(double start_s, double sample_rate_hz, std::span<const double> samples);

  double start_s() const noexcept { return start_; }
  double sample_rate_hz() const noexcept { return rate_; }
  double dt() const noexcept { return 1.0 / rate_; }
  double time_at(std::size_t n) const noexcept { return start_ + static_cast<double>(n) / rate_; }
  std::size_t size() const noexcept { return samples_.size(); }
  SampleKind kind() const noexcept { return kind_; }
  bool is_real() const noexcept { return kind_ == SampleKind::real; }

  std::span<const cplx> samples() const noexcept { return samples_; }
  cplx operator[](std::size_t n) const noexcept { return samples_[n]; }
  std::vector<double> real_part() const;

  double energy() const;
  double peak_abs() const;

 private:
  double start_;
  double rate_;
  std::vector<cplx> samples_;
  SampleKind kind_;
};

// Unwrapped phase (radians) over a frequency grid.
class PhaseCurve {
 public:
  PhaseCurve(FrequencyGrid grid, std::vector<double> phase_rad);

  const FrequencyGrid& grid() const noexcept { return grid_; }
  std::span<const double> phase_rad() const noexcept { return phase_; }
  double operator[](std::size_t k) const noexcept { return phase_[k]; }
  std::size_t size() const noexcept { return phase_.size(); }

 private:
  FrequencyGrid grid_;
  std::vector<double> phase_;
};

// Real-valued curve sampled on a frequency grid (group delay in seconds, magnitudes, ...).
struct SampledCurve {
  FrequencyGrid grid;
  std::vector<double> values;
};

}  // namespace mwht
