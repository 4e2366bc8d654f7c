#include <doctest.h>

#include <cmath>

#include "mwht/errors.hpp"
#include "mwht/fft.hpp"
#include "mwht/transient.hpp"

using namespace mwht;

TEST_CASE("delay lines must be whole numbers of steps") {
  const auto p = CouplerResonatorParams::standard(0.5);
  CHECK_THROWS_AS(FlowGraphSimulator(p, 0.7e-12), ConfigError);
  CHECK_THROWS_AS(FlowGraphSimulator(p, 0.0), ConfigError);
  const FlowGraphSimulator sim(p, default_transient_dt(p));
  CHECK(sim.section_delay_samples() == 32);
  CHECK(sim.loop_delay_samples() == 96);
}

TEST_CASE("impulse response transforms to the analytic S21") {
  const auto p = CouplerResonatorParams::standard(0.7);
  const double dt = default_transient_dt(p);
  FlowGraphSimulator sim(p, dt);
  const std::size_t n = 1 << 15;  // the loop decays by 0.71 per 128-step round trip
  std::vector<cplx> impulse(n);
  impulse[0] = 1.0;
  const std::vector<cplx> h = sim.run(impulse);
  const ComplexSpectrum spec = fft_forward(TimeSignal(0.0, 1.0 / dt, h, SampleKind::complex));
  for (std::size_t k = 1; k < n / 2; k += 97) {
    CAPTURE(k);
    CHECK(std::abs(spec.bins[k] - unit_transfer_at(p, spec.frequency(k))) < 1e-10);
  }
}

TEST_CASE("steady state matches S21 and settle time follows the group delay") {
  double prev_settle = INFINITY;
  for (double c : {0.3, 0.5, 0.7}) {
    CAPTURE(c);
    const auto p = CouplerResonatorParams::standard(c);
    const double tau = unit_group_delay_at(p, 10e9);
    const TransientAnalysis a = analyze_transient(p, 10e9, 30.0 * tau, default_transient_dt(p));
    CHECK(std::abs(a.amplitude_error) < 1e-6);
    CHECK(std::abs(a.phase_error_rad) < 1e-6);
    CHECK(a.settle_time_s < prev_settle);
    CHECK(a.settle_time_s / tau > 0.5);
    CHECK(a.settle_time_s / tau < 2.0);
    CHECK(a.output.is_real());
    prev_settle = a.settle_time_s;
  }
}

TEST_CASE("off-center drive also converges to S21") {
  const auto p = CouplerResonatorParams::standard(0.5);
  const double f = 10.3125e9;
  const TransientAnalysis a = analyze_transient(p, f, 40e-9, default_transient_dt(p));
  CHECK(std::abs(a.steady_phasor - unit_transfer_at(p, f)) < 1e-6);
}

TEST_CASE("transient configuration errors") {
  const auto p = CouplerResonatorParams::standard(0.3);
  const double dt = default_transient_dt(p);
  CHECK_THROWS_AS(analyze_transient(p, 10e9, 1e-9, dt), ConfigError);      // shorter than 5 group delays
  CHECK_THROWS_AS(analyze_transient(p, 400e9, 100e-9, dt), ConfigError);   // above Nyquist
  CHECK_THROWS_AS(analyze_transient(p, -1.0, 100e-9, dt), ConfigError);
  const TimeSignal s = transient_simulate(p, 10e9, 50e-9, dt);
  CHECK(s.size() == static_cast<std::size_t>(std::ceil(50e-9 / dt)) + 1);
}
