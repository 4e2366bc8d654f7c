#pragma once

#include <vector>

#include "mwht/types.hpp"

namespace mwht {

// One branch-line coupler closing a transmission-line loop resonator.
//
// The coupler is ideal and frequency-flat in magnitude: |T| = sqrt(1 - |C|^2). The through
// path is a transmission-line section, so angle(T) = theta(w) = -w * coupled_section_delay_s,
// and the coupled path lags it by a quarter cycle, angle(C) = theta - pi/2. The uncoupled
// part of the loop is a lossless line D = exp(-j w loop_delay_s).
class CouplerResonatorParams {
 public:
  CouplerResonatorParams(double coupling_mag, double center_freq_hz, double loop_delay_s,
                         double coupled_section_delay_s);

  // Half-wave coupled section (theta = pi at f0) and the shortest 3/2-wavelength loop
  // completing a two-wavelength resonator: tau0 = 3*pi/w0.
  static CouplerResonatorParams standard(double coupling_mag, double center_freq_hz = 10e9);

  CouplerResonatorParams with_coupling(double coupling_mag) const;

  double coupling_mag() const noexcept { return coupling_; }
  double through_mag() const noexcept { return through_; }
  double center_freq_hz() const noexcept { return f0_; }
  double loop_delay_s() const noexcept { return loop_delay_; }
  double coupled_section_delay_s() const noexcept { return section_delay_; }
  // Delay of one full turn: coupled section plus uncoupled loop.
  double round_trip_delay_s() const noexcept { return section_delay_ + loop_delay_; }

  double theta(double omega) const noexcept { return -omega * section_delay_; }
  cplx through(double omega) const;               // T
  cplx coupling(double omega) const;              // C
  cplx coupling_squared(double omega) const;      // C^2 = T^2 - exp(j 2 theta)
  cplx loop(double omega) const;                  // D

 private:
  double coupling_;
  double through_;
  double f0_;
  double loop_delay_;
  double section_delay_;
};

struct CascadeSpec {
  explicit CascadeSpec(std::vector<CouplerResonatorParams> units);
  static CascadeSpec identical(const CouplerResonatorParams& unit, std::size_t count);

  std::vector<CouplerResonatorParams> units;
};

// S21 = T + C^2 D / (1 - T D) at a single frequency.
cplx unit_transfer_at(const CouplerResonatorParams& params, double f_hz);

ComplexResponse unit_transfer(const CouplerResonatorParams& params, const FrequencyGrid& grid);
ComplexResponse cascade_transfer(const CascadeSpec& spec, const FrequencyGrid& grid);

// Grid over [lo_frac, hi_frac] * f0 with f0 and f0 * (1 +- 0.2) on samples and at least
// `min_points` samples across the +-20% band.
FrequencyGrid model_grid(double center_freq_hz, double lo_frac = 0.8, double hi_frac = 1.2,
                         std::size_t min_points = 2001);

// Group delay of the unit at one frequency, from central differences on a local grid
// refined until converged.
double unit_group_delay_at(const CouplerResonatorParams& params, double f_hz);

struct PeakDelay {
  double peak_delay_s;
  // Width of the band around f0 where delay >= peak / 2; +inf when the delay is flat.
  double half_delay_bandwidth_hz;
  double lower_edge_hz;
  double upper_edge_hz;
  bool bounded() const noexcept;
};

PeakDelay peak_delay_and_bandwidth(const CouplerResonatorParams& params);

}  // namespace mwht
