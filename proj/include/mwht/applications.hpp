#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mwht/hilbert.hpp"
#include "mwht/model.hpp"
#include "mwht/types.hpp"

namespace mwht {

// Periodic pulse train, optionally multiplied by cos(2 pi carrier t). Pulse k is
// centered at (k + 1/2) * period. The width is the full base width for both shapes.
struct ModulatedPulseTrain {
  PulseKind pulse_kind = PulseKind::rect;
  double carrier_hz = 10e9;  // 0 gives an unmodulated train
  double pulse_width_s = 0.5e-9;
  double period_s = 2e-9;
  int num_periods = 4;
  double sample_rate_hz = 160e9;

  // Throws ConfigError on a width not below the period, undersampling (< 8 x carrier)
  // or an empty train.
  void validate() const;
  std::size_t sample_count() const;
  std::vector<double> pulse_centers_s() const;
  double duration_s() const { return num_periods * period_s; }

  // Pulses whose main lobe spans the 40% band around the carrier.
  static ModulatedPulseTrain rect_default(double carrier_hz = 10e9);
  static ModulatedPulseTrain tri_default(double carrier_hz = 10e9);
};

TimeSignal generate_pulse_train(const ModulatedPulseTrain& spec);

// Linear time-invariant two-port seen through its transfer function at f >= 0.
// Negative frequencies use conj(H(-f)), as for any real impulse response.
class Device {
 public:
  using Transfer = std::function<std::optional<cplx>(double f_hz)>;

  Device(std::string name, Transfer transfer);

  // Linear interpolation of the samples; frequencies outside the span are not covered.
  static Device sampled(ComplexResponse response, std::string name = "sampled");
  static Device cascade(CascadeSpec spec);
  static Device identity();
  static Device pure_delay(double tau_s);
  // -i sgn(f), zero at DC.
  static Device ideal_hilbert();
  // -i sgn(f - center) for f > 0: the band-pass counterpart realized by a phaser.
  static Device band_hilbert(double center_hz);

  const std::string& name() const noexcept { return name_; }
  std::optional<cplx> at(double f_hz) const;

 private:
  std::string name_;
  Transfer transfer_;
};

struct DeviceOutput {
  TimeSignal output;
  double zeroed_energy_fraction;  // share of input energy on bins the device does not cover
};

// Frequency-domain multiplication on the signal's FFT bins (periodic extension of the
// record). Uncovered bins are zeroed; more than 5% of the energy there is a CoverageError.
DeviceOutput apply_device(const Device& device, const TimeSignal& signal);
DeviceOutput apply_device(const ComplexResponse& response, const TimeSignal& signal);

// |x + i H(x)| for carrier_hz > 0, |x| for an unmodulated signal.
std::vector<double> envelope(const TimeSignal& signal, double carrier_hz);

// Asymptotic delay from a common-slope least-squares fit of the unwrapped phase over
// [0.8, 0.85] x center and [1.15, 1.2] x center, each side with its own intercept.
// The response must cover 0.8..1.2 x center.
double estimate_bulk_delay(const ComplexResponse& response, double center_hz);
double estimate_bulk_delay(const CascadeSpec& spec);

// Ratios above this are reported as clipped.
inline constexpr double kMetricClipDb = 120.0;

struct EdgeReport {
  bool detected = false;
  std::string failure;  // set when !detected
  bool clipped = false;
  double edge_to_center_ratio_db = 0.0;
  double input_edge_to_center_ratio_db = 0.0;
  double edge_alignment_error_s = 0.0;  // worst edge, after removing bulk_delay_s
  double bulk_delay_s = 0.0;
};

EdgeReport edge_detection_metric(const TimeSignal& input, const TimeSignal& output, const ModulatedPulseTrain& spec,
                                 double bulk_delay_s = 0.0);

struct PeakReport {
  bool detected = false;
  std::string failure;
  bool clipped = false;
  double center_suppression_db = 0.0;
  // max |H(H(x)) + x'| / max |x'| with x' the input minus its DC and Nyquist parts.
  double recovery_error = 0.0;
  double bulk_delay_s = 0.0;
};

PeakReport peak_clipping_metric(const TimeSignal& input, const TimeSignal& output, const ModulatedPulseTrain& spec,
                                double bulk_delay_s = 0.0);

enum class Sideband { upper, lower };

struct SsbSpec {
  // Fixed delay-line copy; when absent it is calibrated over one carrier period.
  std::optional<double> delay_branch_s;
  Sideband sideband = Sideband::upper;
  double center_hz = 10e9;
  std::size_t delay_search_steps = 1024;
  bool refine = true;  // polish the best grid delay with a bracketed 1-D minimizer
};

// Suppression is capped here; reaching it means the suppressed side is at round-off.
inline constexpr double kSsbFloorDb = 200.0;

struct SsbResult {
  TimeSignal output;
  double delay_s;
  double suppression_db;  // kept over suppressed sideband power
  bool at_floor;
  std::optional<std::string> warning;
};

// output = x(t - d) + s * branch(x), s = +1 keeps the upper sideband, -1 the lower.
SsbResult ssb_modulate(const TimeSignal& signal, const Device& branch, const SsbSpec& spec);

// Power above center over power below it (positive frequencies), in dB, for `kept`.
double sideband_suppression_db(const TimeSignal& signal, double center_hz, Sideband kept);

// cos(2 pi (fc - df) t) + cos(2 pi (fc + df) t) over `count` samples. Both tones must fall
// on FFT bins of the record (ConfigError otherwise).
TimeSignal two_tone(double center_hz, double offset_hz, double sample_rate_hz, std::size_t count);

}  // namespace mwht
