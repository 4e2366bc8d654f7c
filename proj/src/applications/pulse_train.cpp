#include <cmath>
#include <sstream>

#include "mwht/applications.hpp"
#include "mwht/errors.hpp"

namespace mwht {

namespace {

// Sample-domain quantities that are integers up to rounding are made exact, so pulses
// are sampled symmetrically about their centers.
double snap_integer(double x) {
  const double r = std::round(x);
  return std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x)) ? r : x;
}

}  // namespace

void ModulatedPulseTrain::validate() const {
  std::ostringstream os;
  if (num_periods < 1) os << "pulse train needs at least one period; ";
  if (!(pulse_width_s > 0.0)) os << "pulse width must be positive; ";
  if (!(period_s > 0.0)) os << "period must be positive; ";
  if (pulse_width_s > 0.0 && period_s > 0.0 && !(pulse_width_s < period_s)) os << "pulse width must be below the period; ";
  if (!(carrier_hz >= 0.0) || !std::isfinite(carrier_hz)) os << "carrier must be non-negative; ";
  if (!(sample_rate_hz > 0.0)) os << "sample rate must be positive; ";
  if (carrier_hz > 0.0 && sample_rate_hz < 8.0 * carrier_hz) os << "sample rate below 8 x carrier; ";
  if (os.tellp() == 0 && sample_count() < 2) os << "train shorter than two samples; ";
  if (os.tellp() > 0) {
    std::string msg = os.str();
    msg.resize(msg.size() - 2);
    throw ConfigError("pulse train: " + msg);
  }
}

std::size_t ModulatedPulseTrain::sample_count() const {
  return static_cast<std::size_t>(std::llround(duration_s() * sample_rate_hz));
}

std::vector<double> ModulatedPulseTrain::pulse_centers_s() const {
  std::vector<double> c(static_cast<std::size_t>(std::max(num_periods, 0)));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = (static_cast<double>(k) + 0.5) * period_s;
  return c;
}

ModulatedPulseTrain ModulatedPulseTrain::rect_default(double carrier_hz) {
  const double w = 5.0 / carrier_hz;
  return {PulseKind::rect, carrier_hz, w, 4.0 * w, 4, 16.0 * carrier_hz};
}

ModulatedPulseTrain ModulatedPulseTrain::tri_default(double carrier_hz) {
  const double w = 10.0 / carrier_hz;
  return {PulseKind::tri, carrier_hz, w, 4.0 * w, 4, 16.0 * carrier_hz};
}

TimeSignal generate_pulse_train(const ModulatedPulseTrain& spec) {
  spec.validate();
  const std::size_t n = spec.sample_count();
  const double per = snap_integer(spec.period_s * spec.sample_rate_hz);
  const double half_width = snap_integer(0.5 * spec.pulse_width_s * spec.sample_rate_hz);
  const double cycles_per_sample = spec.carrier_hz / spec.sample_rate_hz;
  const AnalyticPulse pulse{spec.pulse_kind};
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = static_cast<double>(i);
    const double k = std::floor(s / per);
    const double local = s - (k + 0.5) * per;
    double v = pulse(local / half_width);
    if (spec.carrier_hz > 0.0) v *= std::cos(kTwoPi * std::fmod(s * cycles_per_sample, 1.0));
    x[i] = v;
  }
  return TimeSignal::real(0.0, spec.sample_rate_hz, x);
}

}  // namespace mwht
