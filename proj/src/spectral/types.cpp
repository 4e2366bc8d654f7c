#include "mwht/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mwht/errors.hpp"
#include "mwht/simd/kernels.hpp"

namespace mwht {

namespace {

bool all_finite(std::span<const cplx> v) {
  return std::all_of(v.begin(), v.end(),
                     [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

}  // namespace

FrequencyGrid::FrequencyGrid(double start_hz, double step_hz, std::size_t count)
    : start_(start_hz), step_(step_hz), count_(count) {
  if (!(std::isfinite(start_hz) && std::isfinite(step_hz)))
    throw ValidationError("frequency grid: non-finite start or step");
  if (!(step_hz > 0.0)) throw ValidationError("frequency grid: step must be positive");
  if (count < 2) throw ValidationError("frequency grid: at least 2 samples required");
  if (start_hz < 0.0) throw ValidationError("frequency grid: negative start frequency");
}

FrequencyGrid FrequencyGrid::spanning(double lo_hz, double hi_hz, std::size_t count) {
  if (count < 2) throw ValidationError("frequency grid: at least 2 samples required");
  if (!(hi_hz > lo_hz)) throw ValidationError("frequency grid: empty band");
  return FrequencyGrid(lo_hz, (hi_hz - lo_hz) / static_cast<double>(count - 1), count);
}

FrequencyGrid FrequencyGrid::snapped(double lo_hz, double hi_hz, double anchor_hz, double fraction,
                                     std::size_t steps_per_fraction) {
  if (!(anchor_hz > 0.0) || !(fraction > 0.0) || steps_per_fraction == 0)
    throw ValidationError("snapped grid: anchor, fraction and steps must be positive");
  if (!(hi_hz > lo_hz)) throw ValidationError("snapped grid: empty band");
  const double step = fraction * anchor_hz / static_cast<double>(steps_per_fraction);
  // Number of steps from the anchor down to lo (rounded outward, never below 0 Hz).
  auto below = static_cast<long long>(std::ceil((anchor_hz - lo_hz) / step - 1e-9));
  below = std::min<long long>(below, static_cast<long long>(std::floor(anchor_hz / step)));
  auto above = static_cast<long long>(std::ceil((hi_hz - anchor_hz) / step - 1e-9));
  const double start = anchor_hz - static_cast<double>(below) * step;
  const auto count = static_cast<std::size_t>(below + above + 1);
  return FrequencyGrid(std::max(start, 0.0), step, count);
}

bool FrequencyGrid::contains(double f_hz) const noexcept {
  const double tol = 1e-9 * step_;
  return f_hz >= start_ - tol && f_hz <= stop_hz() + tol;
}

std::size_t FrequencyGrid::index_of(double f_hz) const noexcept {
  const double pos = (f_hz - start_) / step_;
  const double k = std::round(pos);
  if (k < 0.0 || k >= static_cast<double>(count_)) return npos;
  if (std::abs(pos - k) > 1e-6) return npos;
  return static_cast<std::size_t>(k);
}

FrequencyGrid FrequencyGrid::refined() const { return FrequencyGrid(start_, step_ / 2.0, 2 * count_ - 1); }

std::vector<double> FrequencyGrid::frequencies() const {
  std::vector<double> f(count_);
  for (std::size_t k = 0; k < count_; ++k) f[k] = at(k);
  return f;
}

ComplexResponse::ComplexResponse(FrequencyGrid grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.count())
    throw ValidationError("complex response: value count does not match grid");
  if (!all_finite(values_)) throw NumericalError("complex response: non-finite value");
}

cplx ComplexResponse::interpolate(double f_hz) const {
  if (!grid_.contains(f_hz)) {
    std::ostringstream os;
    os << "interpolation at " << f_hz << " Hz outside response span [" << grid_.start_hz() << ", "
       << grid_.stop_hz() << "] Hz";
    throw RangeError(os.str());
  }
  const double pos = std::clamp((f_hz - grid_.start_hz()) / grid_.step_hz(), 0.0,
                                static_cast<double>(grid_.count() - 1));
  auto i = static_cast<std::size_t>(std::floor(pos));
  if (i >= grid_.count() - 1) return values_.back();
  const double t = pos - static_cast<double>(i);
  const cplx a = values_[i];
  const cplx b = values_[i + 1];
  return {a.real() + t * (b.real() - a.real()), a.imag() + t * (b.imag() - a.imag())};
}

TimeSignal::TimeSignal(double start_s, double sample_rate_hz, std::vector<cplx> samples, SampleKind kind)
    : start_(start_s), rate_(sample_rate_hz), samples_(std::move(samples)), kind_(kind) {
  if (!(sample_rate_hz > 0.0) || !std::isfinite(sample_rate_hz))
    throw ValidationError("time signal: sample rate must be positive");
  if (samples_.size() < 2) throw ValidationError("time signal: at least 2 samples required");
  if (!all_finite(samples_)) throw ValidationError("time signal: non-finite sample");
  if (kind_ == SampleKind::real)
    for (auto& s : samples_) s.imag(0.0);
}

TimeSignal TimeSignal::real(double start_s, double sample_rate_hz, std::span<const double> samples) {
  std::vector<cplx> c(samples.begin(), samples.end());
  return TimeSignal(start_s, sample_rate_hz, std::move(c), SampleKind::real);
}

std::vector<double> TimeSignal::real_part() const {
  std::vector<double> r(samples_.size());
  std::transform(samples_.begin(), samples_.end(), r.begin(), [](cplx z) { return z.real(); });
  return r;
}

double TimeSignal::energy() const { return simd::sum_norm(samples_); }

double TimeSignal::peak_abs() const {
  double m = 0.0;
  for (auto z : samples_) m = std::max(m, std::abs(z));
  return m;
}

PhaseCurve::PhaseCurve(FrequencyGrid grid, std::vector<double> phase_rad)
    : grid_(grid), phase_(std::move(phase_rad)) {
  if (phase_.size() != grid_.count()) throw ValidationError("phase curve: length does not match grid");
  for (std::size_t k = 1; k < phase_.size(); ++k) {
    if (!(std::abs(phase_[k] - phase_[k - 1]) < kPi))
      throw ResolutionError("phase curve: adjacent samples differ by pi or more", grid_.at(k));
  }
}

}  // namespace mwht
