#include <doctest.h>

#include <cmath>
#include <vector>

#include "mwht/applications.hpp"
#include "mwht/errors.hpp"
#include "mwht/fft.hpp"

using namespace mwht;

namespace {

double max_abs_diff(const TimeSignal& a, const TimeSignal& b) {
  double m = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) m = std::max(m, std::abs(a[n] - b[n]));
  return m;
}

TimeSignal scaled(const TimeSignal& x, double k) {
  std::vector<double> y = x.real_part();
  for (double& v : y) v *= k;
  return TimeSignal::real(x.start_s(), x.sample_rate_hz(), y);
}

const CascadeSpec& model_cascade() {
  static const CascadeSpec spec = CascadeSpec::identical(CouplerResonatorParams::standard(0.71), 2);
  return spec;
}

}  // namespace

TEST_CASE("pulse train validation aggregates problems") {
  ModulatedPulseTrain bad;
  bad.pulse_width_s = 3e-9;
  bad.sample_rate_hz = 20e9;
  bad.num_periods = 0;
  try {
    bad.validate();
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("period") != std::string::npos);
    CHECK(msg.find("below the period") != std::string::npos);
    CHECK(msg.find("8 x carrier") != std::string::npos);
  }
  CHECK_NOTHROW(ModulatedPulseTrain::rect_default().validate());
  CHECK_NOTHROW(ModulatedPulseTrain::tri_default().validate());
}

TEST_CASE("pulse train shape") {
  const ModulatedPulseTrain spec = ModulatedPulseTrain::rect_default();
  const TimeSignal x = generate_pulse_train(spec);
  CHECK(x.size() == spec.sample_count());
  CHECK(x.size() == 4 * 4 * 5 * 16);
  const std::vector<double> env = envelope(x, spec.carrier_hz);
  const double dt = 1.0 / spec.sample_rate_hz;
  for (double c : spec.pulse_centers_s()) {
    for (double off : {-0.25, 0.0, 0.25}) {
      const auto k = static_cast<std::size_t>(std::llround((c + off * spec.pulse_width_s) / dt));
      CHECK(env[k] == doctest::Approx(1.0).epsilon(0.02));
    }
    const auto gap = static_cast<std::size_t>(std::llround((c + 0.5 * spec.period_s) / dt)) % x.size();
    CHECK(env[gap] < 0.02);
  }
  // Energy sits around the carrier.
  const ComplexSpectrum s = fft_forward(x);
  double near = 0, total = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double f = std::abs(s.frequency(k)), p = std::norm(s.bins[k]);
    total += p;
    if (f > 0.5 * spec.carrier_hz && f < 1.5 * spec.carrier_hz) near += p;
  }
  CHECK(near / total > 0.9);
}

TEST_CASE("tri train peaks at the pulse centers") {
  ModulatedPulseTrain spec = ModulatedPulseTrain::tri_default();
  spec.carrier_hz = 0.0;
  const TimeSignal x = generate_pulse_train(spec);
  const double dt = 1.0 / spec.sample_rate_hz;
  for (double c : spec.pulse_centers_s()) {
    const auto k = static_cast<std::size_t>(std::llround(c / dt));
    CHECK(x[k].real() == doctest::Approx(1.0));
    CHECK(x[k - 3].real() == doctest::Approx(x[k + 3].real()));
  }
}

TEST_CASE("identity and pure-delay devices") {
  const TimeSignal x = generate_pulse_train(ModulatedPulseTrain::rect_default());
  CHECK(max_abs_diff(apply_device(Device::identity(), x).output, x) < 1e-12);

  // An integer-sample delay is an exact circular shift.
  const double dt = x.dt();
  const TimeSignal y = apply_device(Device::pure_delay(3 * dt), x).output;
  double worst = 0;
  for (std::size_t n = 0; n < x.size(); ++n) worst = std::max(worst, std::abs(y[n] - x[(n + x.size() - 3) % x.size()]));
  CHECK(worst < 1e-12);

  // A fractional delay of a periodic band-limited tone.
  const std::size_t n = 1000;
  const double rate = 100e9, f = 37 * rate / n, tau = 0.123e-9;
  std::vector<double> tone(n);
  for (std::size_t i = 0; i < n; ++i) tone[i] = std::cos(kTwoPi * f * i / rate);
  const TimeSignal d = apply_device(Device::pure_delay(tau), TimeSignal::real(0.0, rate, tone)).output;
  for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(d[i].real() - std::cos(kTwoPi * f * (i / rate - tau))) < 1e-9);
}

TEST_CASE("ideal device equals the spectral Hilbert transform") {
  ModulatedPulseTrain spec = ModulatedPulseTrain::rect_default();
  spec.carrier_hz = 0.0;
  const TimeSignal x = generate_pulse_train(spec);
  CHECK(max_abs_diff(apply_device(Device::ideal_hilbert(), x).output, hilbert_spectral(x)) < 1e-10);
}

TEST_CASE("the all-pass cascade is passive and lossless") {
  const TimeSignal x = generate_pulse_train(ModulatedPulseTrain::rect_default());
  const DeviceOutput y = apply_device(Device::cascade(model_cascade()), x);
  CHECK(y.zeroed_energy_fraction == 0.0);
  CHECK(y.output.energy() <= x.energy() * (1 + 1e-9));
  CHECK(y.output.energy() == doctest::Approx(x.energy()).epsilon(1e-9));
}

TEST_CASE("band-limited device coverage") {
  const TimeSignal x = generate_pulse_train(ModulatedPulseTrain::rect_default());
  const auto unit = CouplerResonatorParams::standard(0.71);
  const ComplexResponse narrow = unit_transfer(unit, model_grid(10e9, 0.9, 1.1, 2001));
  CHECK_THROWS_AS(apply_device(narrow, x), CoverageError);
  const ComplexResponse wide = unit_transfer(unit, FrequencyGrid::spanning(0.0, 80e9, 8001));
  const DeviceOutput ok = apply_device(wide, x);
  CHECK(ok.zeroed_energy_fraction <= 0.05);
}

TEST_CASE("bulk delay") {
  const double tau = 0.37e-9;
  const FrequencyGrid g = model_grid(10e9, 0.75, 1.25, 2001);
  std::vector<cplx> v(g.count());
  for (std::size_t k = 0; k < g.count(); ++k) v[k] = std::polar(1.0, -g.angular_at(k) * tau + 0.3);
  CHECK(estimate_bulk_delay(ComplexResponse(g, v), 10e9) == doctest::Approx(tau).epsilon(1e-9));
  CHECK_THROWS_AS(estimate_bulk_delay(ComplexResponse(FrequencyGrid(9.5e9, 1e6, 1001), std::vector<cplx>(1001, 1.0)), 10e9),
                  CoverageError);
  // Far from resonance each unit looks like the section delay plus one loop transit.
  const double d = estimate_bulk_delay(model_cascade());
  CHECK(d > 0.0);
  CHECK(d < 2 * 0.25e-9);
}

TEST_CASE("edge detection on the modeled cascade") {
  const ModulatedPulseTrain spec = ModulatedPulseTrain::rect_default();
  const TimeSignal x = generate_pulse_train(spec);
  const double d = estimate_bulk_delay(model_cascade());
  const TimeSignal y = apply_device(Device::cascade(model_cascade()), x).output;
  const EdgeReport r = edge_detection_metric(x, y, spec, d);
  REQUIRE(r.detected);
  CHECK_FALSE(r.clipped);
  CHECK(r.edge_to_center_ratio_db >= 6.0);
  CHECK(r.edge_to_center_ratio_db > r.input_edge_to_center_ratio_db + 6.0);
  CHECK(r.edge_alignment_error_s <= 1.5 / spec.carrier_hz);

  // Amplitude scaling leaves a ratio metric unchanged.
  const EdgeReport s = edge_detection_metric(scaled(x, 7.0), scaled(y, 7.0), spec, d);
  CHECK(std::abs(s.edge_to_center_ratio_db - r.edge_to_center_ratio_db) < 0.01);

  // Identity does nothing useful.
  const EdgeReport id = edge_detection_metric(x, x, spec);
  CHECK(std::abs(id.edge_to_center_ratio_db - id.input_edge_to_center_ratio_db) < 1e-9);
  CHECK(id.edge_to_center_ratio_db < 3.0);
}

TEST_CASE("edge detection with the ideal transform clips") {
  ModulatedPulseTrain spec = ModulatedPulseTrain::rect_default();
  spec.carrier_hz = 0.0;
  const TimeSignal x = generate_pulse_train(spec);
  const EdgeReport r = edge_detection_metric(x, apply_device(Device::ideal_hilbert(), x).output, spec);
  REQUIRE(r.detected);
  CHECK(r.clipped);
  CHECK(r.edge_to_center_ratio_db == kMetricClipDb);
  CHECK_THROWS_AS(edge_detection_metric(x, TimeSignal::real(0, 1, std::vector<double>(4, 0.0)), spec), ValidationError);
}

TEST_CASE("peak clipping on the modeled cascade") {
  const ModulatedPulseTrain spec = ModulatedPulseTrain::tri_default();
  const TimeSignal x = generate_pulse_train(spec);
  const double d = estimate_bulk_delay(model_cascade());
  const PeakReport r = peak_clipping_metric(x, apply_device(Device::cascade(model_cascade()), x).output, spec, d);
  REQUIRE(r.detected);
  CHECK(r.center_suppression_db >= 6.0);
  CHECK(r.recovery_error <= 1e-6);

  ModulatedPulseTrain base = spec;
  base.carrier_hz = 0.0;
  const TimeSignal xb = generate_pulse_train(base);
  const PeakReport ideal = peak_clipping_metric(xb, apply_device(Device::ideal_hilbert(), xb).output, base);
  CHECK(ideal.clipped);
  CHECK(ideal.recovery_error <= 1e-6);
}

TEST_CASE("two-tone generator") {
  const TimeSignal t = two_tone(10e9, 0.5e9, 81.92e9, 4096);
  CHECK(t.size() == 4096);
  CHECK(sideband_suppression_db(t, 10e9, Sideband::upper) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK_THROWS_AS(two_tone(10e9, 0.5e9, 80e9, 1000), ConfigError);
  CHECK_THROWS_AS(two_tone(10e9, 11e9, 81.92e9, 4096), ConfigError);
  CHECK_THROWS_AS(two_tone(10e9, 0.5e9, 20e9, 4096), ConfigError);
}

TEST_CASE("sideband suppression of pure tones") {
  const std::size_t n = 4096;
  const double rate = 81.92e9, up = 10.5e9;
  std::vector<cplx> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = std::polar(1.0, kTwoPi * up * i / rate);
  const TimeSignal s(0.0, rate, z, SampleKind::complex);
  CHECK(sideband_suppression_db(s, 10e9, Sideband::upper) == kSsbFloorDb);
  CHECK(sideband_suppression_db(s, 10e9, Sideband::lower) == -kSsbFloorDb);
}

TEST_CASE("single-sideband modulation") {
  const TimeSignal t = two_tone(10e9, 0.5e9, 81.92e9, 4096);
  double db[2];
  int i = 0;
  for (Sideband sb : {Sideband::upper, Sideband::lower}) {
    SsbSpec spec;
    spec.sideband = sb;
    const SsbResult ideal = ssb_modulate(t, Device::band_hilbert(10e9), spec);
    CHECK(ideal.suppression_db >= 60.0);
    CHECK_FALSE(ideal.warning);
    CHECK(sideband_suppression_db(ideal.output, 10e9, sb) == doctest::Approx(ideal.suppression_db).epsilon(1e-3));
    db[i++] = ideal.suppression_db;

    const SsbResult model = ssb_modulate(t, Device::cascade(model_cascade()), spec);
    CHECK(model.suppression_db >= 60.0);
  }
  CHECK(std::abs(db[0] - db[1]) <= 0.1);
}

TEST_CASE("ssb delay search refines monotonically on nested grids") {
  const TimeSignal t = two_tone(10e9, 0.5e9, 81.92e9, 4096);
  double prev = -1e9;
  for (std::size_t steps : {16, 64, 256, 1024}) {
    SsbSpec spec;
    spec.refine = false;
    spec.delay_search_steps = steps;
    const double db = ssb_modulate(t, Device::band_hilbert(10e9), spec).suppression_db;
    CHECK(db >= prev);
    prev = db;
  }
  SsbSpec refined;
  CHECK(ssb_modulate(t, Device::band_hilbert(10e9), refined).suppression_db >= prev);
}

TEST_CASE("a poor fixed delay is flagged") {
  const TimeSignal t = two_tone(10e9, 0.5e9, 81.92e9, 4096);
  SsbSpec spec;
  spec.delay_branch_s = 0.0;
  const SsbResult r = ssb_modulate(t, Device::band_hilbert(10e9), spec);
  CHECK(r.delay_s == 0.0);
  CHECK(r.suppression_db < 20.0);
  CHECK(r.warning.has_value());
  spec.delay_search_steps = 1;
  spec.delay_branch_s.reset();
  CHECK_THROWS_AS(ssb_modulate(t, Device::band_hilbert(10e9), spec), ConfigError);
}
