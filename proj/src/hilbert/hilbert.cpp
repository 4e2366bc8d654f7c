#include "mwht/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "mwht/errors.hpp"
#include "mwht/fft.hpp"
#include "mwht/simd/kernels.hpp"

namespace mwht {

namespace {

constexpr double kTargetTolerance = 1e-8;

struct Partial {
  double value = 0.0;
  double error = 0.0;
};

// (1/pi) * integral of x(tau)/(t - tau) over [knots.front(), knots.back()] with the
// window (t - eps, t + eps) removed. `x` is smooth between consecutive knots.
Partial excluded_window_integral(const std::function<double(double)>& x, std::span<const double> knots,
                                 double t, double eps) {
  using boost::math::quadrature::gauss_kronrod;
  auto kernel = [&](double tau) { return x(tau) / (t - tau); };
  Partial sum;
  auto add = [&](double lo, double hi) {
    if (!(hi > lo)) return;
    double err = 0.0;
    sum.value += gauss_kronrod<double, 15>::integrate(kernel, lo, hi, 15, 1e-14, &err);
    sum.error += err;
  };
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    const double lo = knots[k], hi = knots[k + 1];
    add(lo, std::min(hi, t - eps));
    add(std::max(lo, t + eps), hi);
  }
  sum.value /= kPi;
  sum.error /= kPi;
  return sum;
}

// Richardson over eps, eps/2, eps/4. The removed window contributes odd powers of eps
// only, so the two elimination steps use factors 2 and 8.
double richardson_pv(const std::function<double(double)>& x, std::vector<double> knots, double t,
                     double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ValidationError("PV quadrature: epsilon must be positive");
  if (!std::isfinite(t)) throw ValidationError("PV quadrature: t must be finite");
  std::sort(knots.begin(), knots.end());
  const double scale = std::max({1.0, std::abs(knots.front()), std::abs(knots.back())});
  // The window may hold no knot other than one sitting exactly at t.
  double nearest = std::numeric_limits<double>::infinity();
  for (double k : knots) {
    const double d = std::abs(k - t);
    if (d > 1e-14 * scale) nearest = std::min(nearest, d);
  }
  double eps = std::min(epsilon, 0.5 * nearest);

  double achieved = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt < 6; ++attempt, eps /= 4.0) {
    const Partial i0 = excluded_window_integral(x, knots, t, eps);
    const Partial i1 = excluded_window_integral(x, knots, t, eps / 2.0);
    const Partial i2 = excluded_window_integral(x, knots, t, eps / 4.0);
    const double r_coarse = 2.0 * i1.value - i0.value;
    const double r_fine = 2.0 * i2.value - i1.value;
    const double estimate = (8.0 * r_fine - r_coarse) / 7.0;
    achieved = std::abs(estimate - r_fine) + i0.error + i1.error + i2.error;
    if (achieved <= kTargetTolerance) return estimate;
  }
  std::ostringstream os;
  os << "PV quadrature at t = " << t << " did not reach " << kTargetTolerance << " (achieved " << achieved << ")";
  throw QuadratureError(os.str(), achieved);
}

}  // namespace

double AnalyticPulse::operator()(double t) const noexcept {
  const double a = std::abs(t);
  if (a > 1.0) return 0.0;
  return kind == PulseKind::rect ? 1.0 : 1.0 - a;
}

std::vector<double> AnalyticPulse::breakpoints() const {
  if (kind == PulseKind::rect) return {-1.0, 1.0};
  return {-1.0, 0.0, 1.0};
}

TimeSignal hilbert_spectral(const TimeSignal& signal) {
  ComplexSpectrum spectrum = fft_forward(signal);
  simd::hilbert_multiplier(spectrum.bins);
  return fft_inverse(spectrum);
}

double hilbert_pv_quadrature(const AnalyticPulse& pulse, double t, double epsilon) {
  if (is_closed_form_pole(pulse, t)) {
    std::ostringstream os;
    os << "rect Hilbert transform has a pole at t = " << t;
    throw DomainError(os.str());
  }
  return richardson_pv([&](double tau) { return pulse(tau); }, pulse.breakpoints(), t, epsilon);
}

double hilbert_pv_quadrature(const TimeSignal& signal, double t, double epsilon) {
  if (!signal.is_real()) throw ValidationError("PV quadrature: signal must be real");
  const std::vector<double> y = signal.real_part();
  std::vector<double> knots(signal.size());
  for (std::size_t n = 0; n < knots.size(); ++n) knots[n] = signal.time_at(n);
  const double t0 = signal.start_s(), rate = signal.sample_rate_hz();
  auto x = [&](double tau) {
    const double pos = (tau - t0) * rate;
    const auto last = static_cast<double>(y.size() - 1);
    if (pos <= 0.0) return y.front();
    if (pos >= last) return y.back();
    const auto k = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(k);
    return y[k] + frac * (y[k + 1] - y[k]);
  };
  return richardson_pv(x, std::move(knots), t, epsilon);
}

double rect_hilbert_closed_form(double t) noexcept {
  if (t == 1.0) return std::numeric_limits<double>::infinity();
  if (t == -1.0) return -std::numeric_limits<double>::infinity();
  return std::log(std::abs((t + 1.0) / (t - 1.0))) / kPi;
}

double tri_hilbert_closed_form(double t) noexcept {
  if (t == 0.0) return 0.0;
  if (t == 1.0) return 2.0 * std::numbers::ln2 / kPi;
  if (t == -1.0) return -2.0 * std::numbers::ln2 / kPi;
  const double t2 = t * t;
  if (std::abs(t) > 2.0) {
    // Far field: both logs are near zero and cancel to O(1/t), so keep their digits.
    return -(std::log1p(-2.0 / (t + 1.0)) - t * std::log1p(-1.0 / t2)) / kPi;
  }
  return -(std::log(std::abs((t - 1.0) / (t + 1.0))) + t * std::log(std::abs(t2 / (t2 - 1.0)))) / kPi;
}

double hilbert_closed_form(const AnalyticPulse& pulse, double t) noexcept {
  return pulse.kind == PulseKind::rect ? rect_hilbert_closed_form(t) : tri_hilbert_closed_form(t);
}

bool is_closed_form_pole(const AnalyticPulse& pulse, double t) noexcept {
  return pulse.kind == PulseKind::rect && std::abs(t) == 1.0;
}

}  // namespace mwht
