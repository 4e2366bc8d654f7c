#include <algorithm>
#include <cmath>

#include "mwht/applications.hpp"
#include "mwht/errors.hpp"
#include "mwht/fft.hpp"

namespace mwht {

namespace {

void require_matching(const TimeSignal& input, const TimeSignal& output) {
  if (input.size() != output.size() || input.sample_rate_hz() != output.sample_rate_hz())
    throw ValidationError("metric: input and output must share length and sample rate");
}

// Linear interpolation on the periodic extension of the record.
double periodic_at(const std::vector<double>& env, double start_s, double rate_hz, double t) {
  const auto n = static_cast<double>(env.size());
  double pos = std::fmod((t - start_s) * rate_hz, n);
  if (pos < 0.0) pos += n;
  const auto k = static_cast<std::size_t>(pos) % env.size();
  const double frac = pos - std::floor(pos);
  return env[k] + frac * (env[(k + 1) % env.size()] - env[k]);
}

struct Peak {
  double value;
  double time_s;
};

Peak periodic_peak(const std::vector<double>& env, double start_s, double rate_hz, double lo_s, double hi_s) {
  const auto n = static_cast<long long>(env.size());
  const auto first = static_cast<long long>(std::ceil((lo_s - start_s) * rate_hz));
  const auto last = static_cast<long long>(std::floor((hi_s - start_s) * rate_hz));
  Peak best{-1.0, lo_s};
  for (long long i = first; i <= last; ++i) {
    const double v = env[static_cast<std::size_t>(((i % n) + n) % n)];
    if (v > best.value) best = {v, start_s + static_cast<double>(i) / rate_hz};
  }
  return best;
}

double ratio_db(double num, double den, bool& clipped) {
  if (!(den > 0.0)) {
    clipped = true;
    return kMetricClipDb;
  }
  const double db = 20.0 * std::log10(num / den);
  if (db > kMetricClipDb) {
    clipped = true;
    return kMetricClipDb;
  }
  return db;
}

struct EdgeScan {
  double edge_mean = 0.0;
  double center_mean = 0.0;
  double worst_alignment_s = 0.0;
};

EdgeScan scan_edges(const std::vector<double>& env, const TimeSignal& sig, const ModulatedPulseTrain& spec,
                    double delay_s) {
  const double hw = 0.5 * spec.pulse_width_s;
  const double search = spec.pulse_width_s / 3.0;
  EdgeScan s;
  std::size_t edges = 0, centers = 0;
  for (double c : spec.pulse_centers_s()) {
    for (double e : {c - hw, c + hw}) {
      const double nominal = e + delay_s;
      const Peak p = periodic_peak(env, sig.start_s(), sig.sample_rate_hz(), nominal - search, nominal + search);
      s.edge_mean += p.value;
      s.worst_alignment_s = std::max(s.worst_alignment_s, std::abs(p.time_s - nominal));
      ++edges;
    }
    s.center_mean += periodic_at(env, sig.start_s(), sig.sample_rate_hz(), c + delay_s);
    ++centers;
  }
  s.edge_mean /= static_cast<double>(edges);
  s.center_mean /= static_cast<double>(centers);
  return s;
}

double center_mean(const std::vector<double>& env, const TimeSignal& sig, const ModulatedPulseTrain& spec,
                   double delay_s) {
  double sum = 0.0;
  const auto centers = spec.pulse_centers_s();
  for (double c : centers) sum += periodic_at(env, sig.start_s(), sig.sample_rate_hz(), c + delay_s);
  return sum / static_cast<double>(centers.size());
}

}  // namespace

EdgeReport edge_detection_metric(const TimeSignal& input, const TimeSignal& output, const ModulatedPulseTrain& spec,
                                 double bulk_delay_s) {
  spec.validate();
  require_matching(input, output);
  EdgeReport r;
  r.bulk_delay_s = bulk_delay_s;
  const EdgeScan in = scan_edges(envelope(input, spec.carrier_hz), input, spec, 0.0);
  const EdgeScan out = scan_edges(envelope(output, spec.carrier_hz), output, spec, bulk_delay_s);
  if (!(out.edge_mean > 0.0) || !std::isfinite(out.edge_mean)) {
    r.failure = "no edge response in the output envelope";
    return r;
  }
  r.detected = true;
  bool ignored = false;
  r.input_edge_to_center_ratio_db = ratio_db(in.edge_mean, in.center_mean, ignored);
  r.edge_to_center_ratio_db = ratio_db(out.edge_mean, out.center_mean, r.clipped);
  r.edge_alignment_error_s = out.worst_alignment_s;
  return r;
}

PeakReport peak_clipping_metric(const TimeSignal& input, const TimeSignal& output, const ModulatedPulseTrain& spec,
                                double bulk_delay_s) {
  spec.validate();
  require_matching(input, output);
  PeakReport r;
  r.bulk_delay_s = bulk_delay_s;
  const double in_center = center_mean(envelope(input, spec.carrier_hz), input, spec, 0.0);
  const double out_center = center_mean(envelope(output, spec.carrier_hz), output, spec, bulk_delay_s);
  if (!(in_center > 0.0) || !std::isfinite(out_center)) {
    r.failure = "input has no peak at the pulse centers";
    return r;
  }
  r.detected = true;
  r.center_suppression_db = ratio_db(in_center, out_center, r.clipped);

  // Second transform recovers the input up to the bins the transform removes.
  ComplexSpectrum spec_in = fft_forward(input);
  spec_in.bins[0] = cplx{};
  if (spec_in.size() % 2 == 0) spec_in.bins[spec_in.size() / 2] = cplx{};
  const TimeSignal ac = fft_inverse(spec_in);
  const TimeSignal twice = hilbert_spectral(hilbert_spectral(input));
  double err = 0.0;
  for (std::size_t n = 0; n < ac.size(); ++n) err = std::max(err, std::abs(twice[n] + ac[n]));
  const double scale = ac.peak_abs();
  r.recovery_error = scale > 0.0 ? err / scale : err;
  return r;
}

}  // namespace mwht
