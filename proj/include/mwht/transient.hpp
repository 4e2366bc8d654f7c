#pragma once

#include <vector>

#include "mwht/model.hpp"
#include "mwht/types.hpp"

namespace mwht {

// Discrete-time realization of the coupler/loop flow graph with integer-sample delay
// lines. With x the input, r = |T|, Ns and N0 the section and loop delays in samples:
//
//   s[n] = x[n] + r * s[n - Ns - N0]            (energy circulating in the loop)
//   y[n] = r * x[n - Ns] - |C|^2 * s[n - 2 Ns - N0]
//
// which is T x + C^2 D sum_k (T D)^k x with C^2 = -|C|^2 exp(j 2 theta).
class FlowGraphSimulator {
 public:
  // Throws ConfigError unless dt divides both delays to within 0.1%.
  FlowGraphSimulator(const CouplerResonatorParams& params, double dt_s);

  std::size_t section_delay_samples() const noexcept { return section_samples_; }
  std::size_t loop_delay_samples() const noexcept { return loop_samples_; }
  double dt_s() const noexcept { return dt_; }

  // Runs the recurrence over `input` from a state of rest.
  std::vector<cplx> run(std::span<const cplx> input);

 private:
  double through_;
  double coupling_sq_;
  double dt_;
  std::size_t section_samples_;
  std::size_t loop_samples_;
  std::vector<cplx> circulating_;
};

// 1/(64 f0)
double default_transient_dt(const CouplerResonatorParams& params);

// Output port waveform for a unit-amplitude cosine at drive_freq_hz switched on at t = 0.
TimeSignal transient_simulate(const CouplerResonatorParams& params, double drive_freq_hz, double duration_s,
                              double dt_s);

struct TransientAnalysis {
  TimeSignal output;                // real waveform (cosine drive)
  std::vector<cplx> envelope{};      // complex envelope y(t) exp(-j w t) under phasor drive
  cplx steady_phasor{};              // mean envelope over the final tenth of the run
  cplx analytic_phasor{};            // S21 at the drive frequency
  double steady_amplitude = 0.0;
  double steady_phase_rad = 0.0;
  double amplitude_error = 0.0;           // |steady| - |analytic|
  double phase_error_rad = 0.0;           // wrapped angle(steady / analytic)
  double settle_time_s = 0.0;             // after this the envelope stays within 10% of steady state
  double analytic_group_delay_s = 0.0;
};

TransientAnalysis analyze_transient(const CouplerResonatorParams& params, double drive_freq_hz,
                                    double duration_s, double dt_s);

}  // namespace mwht
