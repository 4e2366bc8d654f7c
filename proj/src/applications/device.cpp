#include <cmath>
#include <sstream>

#include "device_bins.hpp"
#include "mwht/errors.hpp"
#include "mwht/fft.hpp"
#include "mwht/hilbert.hpp"
#include "mwht/phase.hpp"

namespace mwht {

namespace detail {

DeviceBins device_bins(const Device& device, const ComplexSpectrum& spectrum) {
  const std::size_t n = spectrum.size();
  DeviceBins out;
  out.h.assign(n, cplx{});
  const bool real_source = spectrum.source_kind == SampleKind::real;
  for (std::size_t k = 0; k < n; ++k) {
    const double f = spectrum.frequency(k);
    const double power = std::norm(spectrum.bins[k]);
    out.total_energy += power;
    const std::optional<cplx> h = device.at(std::abs(f));
    if (!h) {
      out.zeroed_energy += power;
      continue;
    }
    if (real_source && n % 2 == 0 && k == n / 2)
      out.h[k] = h->real();
    else
      out.h[k] = f >= 0.0 ? *h : std::conj(*h);
  }
  return out;
}

void require_coverage(const DeviceBins& bins, const std::string& device_name) {
  const double fraction = bins.total_energy > 0.0 ? bins.zeroed_energy / bins.total_energy : 0.0;
  if (fraction > 0.05) {
    std::ostringstream os;
    os << "device '" << device_name << "' does not cover " << 100.0 * fraction
       << "% of the signal energy (limit 5%)";
    throw CoverageError(os.str());
  }
}

}  // namespace detail

Device::Device(std::string name, Transfer transfer) : name_(std::move(name)), transfer_(std::move(transfer)) {
  if (!transfer_) throw ValidationError("device: empty transfer function");
}

std::optional<cplx> Device::at(double f_hz) const { return transfer_(f_hz); }

Device Device::sampled(ComplexResponse response, std::string name) {
  return Device(std::move(name), [r = std::move(response)](double f) -> std::optional<cplx> {
    if (f < r.grid().start_hz() || f > r.grid().stop_hz()) return std::nullopt;
    return r.interpolate(f);
  });
}

Device Device::cascade(CascadeSpec spec) {
  return Device("cascade", [s = std::move(spec)](double f) -> std::optional<cplx> {
    cplx h{1.0, 0.0};
    for (const auto& unit : s.units) h *= unit_transfer_at(unit, f);
    return h;
  });
}

Device Device::identity() {
  return Device("identity", [](double) -> std::optional<cplx> { return cplx{1.0, 0.0}; });
}

Device Device::pure_delay(double tau_s) {
  return Device("delay", [tau_s](double f) -> std::optional<cplx> { return std::polar(1.0, -kTwoPi * f * tau_s); });
}

Device Device::ideal_hilbert() {
  return Device("ideal", [](double f) -> std::optional<cplx> {
    if (f == 0.0) return cplx{};
    return cplx{0.0, -1.0};
  });
}

Device Device::band_hilbert(double center_hz) {
  if (!(center_hz > 0.0)) throw ValidationError("band Hilbert: center frequency must be positive");
  return Device("band-ideal", [center_hz](double f) -> std::optional<cplx> {
    // DC must stay real for a real impulse response.
    if (f == 0.0 || f == center_hz) return cplx{};
    return f > center_hz ? cplx{0.0, -1.0} : cplx{0.0, 1.0};
  });
}

DeviceOutput apply_device(const Device& device, const TimeSignal& signal) {
  ComplexSpectrum spectrum = fft_forward(signal);
  const detail::DeviceBins bins = detail::device_bins(device, spectrum);
  detail::require_coverage(bins, device.name());
  for (std::size_t k = 0; k < spectrum.size(); ++k) spectrum.bins[k] *= bins.h[k];
  const double fraction = bins.total_energy > 0.0 ? bins.zeroed_energy / bins.total_energy : 0.0;
  return DeviceOutput{fft_inverse(spectrum), fraction};
}

DeviceOutput apply_device(const ComplexResponse& response, const TimeSignal& signal) {
  return apply_device(Device::sampled(response), signal);
}

std::vector<double> envelope(const TimeSignal& signal, double carrier_hz) {
  std::vector<double> env(signal.size());
  if (carrier_hz > 0.0 && signal.is_real()) {
    const TimeSignal h = hilbert_spectral(signal);
    for (std::size_t n = 0; n < env.size(); ++n) env[n] = std::hypot(signal[n].real(), h[n].real());
  } else {
    for (std::size_t n = 0; n < env.size(); ++n) env[n] = std::abs(signal[n]);
  }
  return env;
}

double estimate_bulk_delay(const ComplexResponse& response, double center_hz) {
  const PhaseCurve phase = unwrap_phase(response);
  const FrequencyGrid& g = phase.grid();
  const double tol = 1e-9 * g.step_hz();
  struct Side {
    double lo, hi;
    std::vector<double> w, p;
  } sides[2] = {{0.8 * center_hz, 0.85 * center_hz, {}, {}}, {1.15 * center_hz, 1.2 * center_hz, {}, {}}};
  for (auto& s : sides) {
    for (std::size_t k = 0; k < g.count(); ++k) {
      const double f = g.at(k);
      if (f >= s.lo - tol && f <= s.hi + tol) {
        s.w.push_back(kTwoPi * f);
        s.p.push_back(phase[k]);
      }
    }
    if (s.w.size() < 2) throw CoverageError("bulk delay: response must cover 0.8..0.85 and 1.15..1.2 x center");
  }
  double sxy = 0.0, sxx = 0.0;
  for (const auto& s : sides) {
    double mw = 0.0, mp = 0.0;
    for (std::size_t i = 0; i < s.w.size(); ++i) {
      mw += s.w[i];
      mp += s.p[i];
    }
    mw /= static_cast<double>(s.w.size());
    mp /= static_cast<double>(s.w.size());
    for (std::size_t i = 0; i < s.w.size(); ++i) {
      sxy += (s.w[i] - mw) * (s.p[i] - mp);
      sxx += (s.w[i] - mw) * (s.w[i] - mw);
    }
  }
  return -sxy / sxx;
}

double estimate_bulk_delay(const CascadeSpec& spec) {
  const double f0 = spec.units.front().center_freq_hz();
  const ComplexResponse r = evaluate_resolved([&](const FrequencyGrid& g) { return cascade_transfer(spec, g); },
                                              model_grid(f0, 0.8, 1.2, kDefaultModelPoints));
  return estimate_bulk_delay(r, f0);
}

}  // namespace mwht
