#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "device_bins.hpp"
#include "mwht/applications.hpp"
#include "mwht/errors.hpp"
#include "mwht/fft.hpp"

namespace mwht {

namespace {

double suppression_from_powers(double kept, double suppressed) {
  if (!(kept > 0.0)) return -kSsbFloorDb;
  if (suppressed <= kept * std::pow(10.0, -kSsbFloorDb / 10.0)) return kSsbFloorDb;
  return std::clamp(10.0 * std::log10(kept / suppressed), -kSsbFloorDb, kSsbFloorDb);
}

struct SidebandPowers {
  double upper = 0.0;
  double lower = 0.0;
};

class SsbCombiner {
 public:
  SsbCombiner(const ComplexSpectrum& x, const detail::DeviceBins& branch, double sign, double center_hz)
      : x_(x), branch_(branch), sign_(sign), center_(center_hz) {}

  cplx combined(std::size_t k, double delay_s) const {
    const double f = x_.frequency(k);
    cplx shift = std::polar(1.0, -kTwoPi * f * delay_s);
    if (x_.source_kind == SampleKind::real && x_.size() % 2 == 0 && k == x_.size() / 2) shift = shift.real();
    return x_.bins[k] * (shift + sign_ * branch_.h[k]);
  }

  SidebandPowers powers(double delay_s) const {
    SidebandPowers p;
    for (std::size_t k = 0; k < x_.size(); ++k) {
      const double f = x_.frequency(k);
      if (f <= 0.0 || f == center_) continue;
      const double power = std::norm(combined(k, delay_s));
      (f > center_ ? p.upper : p.lower) += power;
    }
    return p;
  }

  double suppression_db(double delay_s, Sideband kept) const {
    const SidebandPowers p = powers(delay_s);
    return kept == Sideband::upper ? suppression_from_powers(p.upper, p.lower)
                                   : suppression_from_powers(p.lower, p.upper);
  }

 private:
  const ComplexSpectrum& x_;
  const detail::DeviceBins& branch_;
  double sign_;
  double center_;
};

}  // namespace

double sideband_suppression_db(const TimeSignal& signal, double center_hz, Sideband kept) {
  const ComplexSpectrum s = fft_forward(signal);
  double upper = 0.0, lower = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double f = s.frequency(k);
    if (f <= 0.0 || f == center_hz) continue;
    (f > center_hz ? upper : lower) += std::norm(s.bins[k]);
  }
  return kept == Sideband::upper ? suppression_from_powers(upper, lower) : suppression_from_powers(lower, upper);
}

SsbResult ssb_modulate(const TimeSignal& signal, const Device& branch, const SsbSpec& spec) {
  if (!(spec.center_hz > 0.0)) throw ConfigError("ssb: center frequency must be positive");
  if (spec.delay_branch_s && !std::isfinite(*spec.delay_branch_s)) throw ConfigError("ssb: delay must be finite");
  if (!spec.delay_branch_s && spec.delay_search_steps < 2) throw ConfigError("ssb: need at least 2 delay steps");

  const ComplexSpectrum x = fft_forward(signal);
  const detail::DeviceBins bins = detail::device_bins(branch, x);
  detail::require_coverage(bins, branch.name());
  const double sign = spec.sideband == Sideband::upper ? 1.0 : -1.0;
  const SsbCombiner combiner(x, bins, sign, spec.center_hz);

  double delay = 0.0;
  double best = 0.0;
  if (spec.delay_branch_s) {
    delay = *spec.delay_branch_s;
    best = combiner.suppression_db(delay, spec.sideband);
  } else {
    // One carrier period of delay offsets; k/N is computed exactly so finer grids nest.
    const double period = 1.0 / spec.center_hz;
    const std::size_t steps = spec.delay_search_steps;
    best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k <= steps; ++k) {
      const double d = (static_cast<double>(k) / static_cast<double>(steps)) * period;
      const double s = combiner.suppression_db(d, spec.sideband);
      if (s > best) {
        best = s;
        delay = d;
      }
    }
    if (spec.refine && best < kSsbFloorDb) {
      // Search in units of the grid step: the minimizer's tolerance has an absolute part
      // far wider than a picosecond bracket.
      const double h = period / static_cast<double>(steps);
      const double grid_delay = delay;
      const auto [u, neg] = boost::math::tools::brent_find_minima(
          [&](double uu) { return -combiner.suppression_db(grid_delay + uu * h, spec.sideband); }, -1.0, 1.0,
          std::numeric_limits<double>::digits);
      if (-neg > best) {
        best = -neg;
        delay = grid_delay + u * h;
      }
    }
  }

  ComplexSpectrum y = x;
  for (std::size_t k = 0; k < y.size(); ++k) y.bins[k] = combiner.combined(k, delay);

  SsbResult result{fft_inverse(y), delay, best, best >= kSsbFloorDb, std::nullopt};
  if (spec.delay_branch_s && best < 20.0) {
    std::ostringstream os;
    os << "delay branch misaligned: sideband suppression only " << best << " dB at delay " << delay << " s";
    result.warning = os.str();
  }
  return result;
}

TimeSignal two_tone(double center_hz, double offset_hz, double sample_rate_hz, std::size_t count) {
  if (count < 2 || !(sample_rate_hz > 0.0)) throw ConfigError("two-tone: need a positive rate and >= 2 samples");
  if (!(offset_hz > 0.0) || !(offset_hz < center_hz)) throw ConfigError("two-tone: need 0 < offset < center");
  if (!(center_hz + offset_hz < 0.5 * sample_rate_hz)) throw ConfigError("two-tone: upper tone above Nyquist");
  const double bin = sample_rate_hz / static_cast<double>(count);
  std::size_t tone_bins[2];
  const double tones[2] = {center_hz - offset_hz, center_hz + offset_hz};
  for (int i = 0; i < 2; ++i) {
    const double b = tones[i] / bin;
    if (std::abs(b - std::round(b)) > 1e-6) {
      std::ostringstream os;
      os << "two-tone: " << tones[i] << " Hz is not on a " << bin << " Hz FFT bin";
      throw ConfigError(os.str());
    }
    tone_bins[i] = static_cast<std::size_t>(std::llround(b));
  }
  std::vector<double> x(count);
  for (std::size_t n = 0; n < count; ++n)
    for (std::size_t b : tone_bins)
      x[n] += std::cos(kTwoPi * static_cast<double>((b * n) % count) / static_cast<double>(count));
  return TimeSignal::real(0.0, sample_rate_hz, x);
}

}  // namespace mwht
