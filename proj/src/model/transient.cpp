#include "mwht/transient.hpp"

#include <cmath>
#include <sstream>

#include "mwht/errors.hpp"

namespace mwht {

namespace {

std::size_t delay_in_samples(double delay_s, double dt_s, const char* what) {
  const double ratio = delay_s / dt_s;
  const double n = std::round(ratio);
  if (delay_s == 0.0) return 0;
  if (n < 1.0 || std::abs(n * dt_s - delay_s) > 1e-3 * delay_s) {
    std::ostringstream os;
    os << what << " of " << delay_s << " s is not an integer number of " << dt_s << " s steps";
    throw ConfigError(os.str());
  }
  return static_cast<std::size_t>(n);
}

std::vector<cplx> phasor_drive(double drive_freq_hz, double dt_s, std::size_t count) {
  std::vector<cplx> x(count);
  const double w = kTwoPi * drive_freq_hz;
  for (std::size_t n = 0; n < count; ++n) x[n] = std::polar(1.0, w * static_cast<double>(n) * dt_s);
  return x;
}

std::size_t sample_count(const CouplerResonatorParams& params, double drive_freq_hz, double duration_s,
                         double dt_s) {
  if (!(dt_s > 0.0)) throw ConfigError("transient: time step must be positive");
  if (!(drive_freq_hz > 0.0)) throw ConfigError("transient: drive frequency must be positive");
  if (drive_freq_hz >= 0.5 / dt_s) throw ConfigError("transient: drive frequency at or above Nyquist");
  const double tau = unit_group_delay_at(params, drive_freq_hz);
  if (duration_s < 5.0 * tau) {
    std::ostringstream os;
    os << "transient: duration " << duration_s << " s shorter than 5x the group delay (" << 5.0 * tau
       << " s)";
    throw ConfigError(os.str());
  }
  return static_cast<std::size_t>(std::ceil(duration_s / dt_s)) + 1;
}

}  // namespace

FlowGraphSimulator::FlowGraphSimulator(const CouplerResonatorParams& params, double dt_s)
    : through_(params.through_mag()),
      coupling_sq_(params.coupling_mag() * params.coupling_mag()),
      dt_(dt_s),
      section_samples_(0),
      loop_samples_(0) {
  if (!(dt_s > 0.0)) throw ConfigError("flow-graph simulator: time step must be positive");
  section_samples_ = delay_in_samples(params.coupled_section_delay_s(), dt_s, "coupled-section delay");
  loop_samples_ = delay_in_samples(params.loop_delay_s(), dt_s, "loop delay");
}

std::vector<cplx> FlowGraphSimulator::run(std::span<const cplx> input) {
  const std::size_t n = input.size();
  const std::size_t turn = section_samples_ + loop_samples_;
  const std::size_t to_output = 2 * section_samples_ + loop_samples_;
  circulating_.assign(n, cplx{});
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx s = input[i];
    if (i >= turn) s += through_ * circulating_[i - turn];
    circulating_[i] = s;
    cplx y{};
    if (i >= section_samples_) y += through_ * input[i - section_samples_];
    if (i >= to_output) y -= coupling_sq_ * circulating_[i - to_output];
    out[i] = y;
  }
  return out;
}

double default_transient_dt(const CouplerResonatorParams& params) {
  return 1.0 / (64.0 * params.center_freq_hz());
}

TimeSignal transient_simulate(const CouplerResonatorParams& params, double drive_freq_hz, double duration_s,
                              double dt_s) {
  return analyze_transient(params, drive_freq_hz, duration_s, dt_s).output;
}

TransientAnalysis analyze_transient(const CouplerResonatorParams& params, double drive_freq_hz,
                                    double duration_s, double dt_s) {
  FlowGraphSimulator sim(params, dt_s);
  const std::size_t count = sample_count(params, drive_freq_hz, duration_s, dt_s);
  const std::vector<cplx> drive = phasor_drive(drive_freq_hz, dt_s, count);
  // The recurrence has real coefficients, so the real part of the phasor response is
  // the response to cos(w t).
  std::vector<cplx> response = sim.run(drive);

  TransientAnalysis a{.output = TimeSignal(0.0, 1.0 / dt_s, response, SampleKind::real)};
  a.envelope.resize(count);
  for (std::size_t n = 0; n < count; ++n) a.envelope[n] = response[n] * std::conj(drive[n]);

  const std::size_t tail = std::max<std::size_t>(count / 10, 1);
  cplx sum{};
  for (std::size_t n = count - tail; n < count; ++n) sum += a.envelope[n];
  a.steady_phasor = sum / static_cast<double>(tail);
  a.analytic_phasor = unit_transfer_at(params, drive_freq_hz);
  a.steady_amplitude = std::abs(a.steady_phasor);
  a.steady_phase_rad = std::arg(a.steady_phasor);
  a.amplitude_error = a.steady_amplitude - std::abs(a.analytic_phasor);
  a.phase_error_rad = std::arg(a.steady_phasor / a.analytic_phasor);

  const double limit = 0.1 * std::abs(a.analytic_phasor);
  std::size_t settle = 0;
  for (std::size_t n = count; n-- > 0;) {
    if (std::abs(a.envelope[n] - a.analytic_phasor) > limit) {
      settle = n + 1;
      break;
    }
  }
  a.settle_time_s = static_cast<double>(settle) * dt_s;
  a.analytic_group_delay_s = unit_group_delay_at(params, drive_freq_hz);
  return a;
}

}  // namespace mwht
