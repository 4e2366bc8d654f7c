#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mwht/errors.hpp"
#include "mwht/model.hpp"
#include "mwht/phase.hpp"
#include "mwht/simd/kernels.hpp"

namespace mwht {

CouplerResonatorParams::CouplerResonatorParams(double coupling_mag, double center_freq_hz,
                                               double loop_delay_s, double coupled_section_delay_s)
    : coupling_(coupling_mag),
      through_(0.0),
      f0_(center_freq_hz),
      loop_delay_(loop_delay_s),
      section_delay_(coupled_section_delay_s) {
  if (!(coupling_mag >= 0.0 && coupling_mag <= 1.0)) {
    std::ostringstream os;
    os << "coupling magnitude " << coupling_mag << " outside [0, 1]";
    throw ValidationError(os.str());
  }
  if (!(center_freq_hz > 0.0) || !std::isfinite(center_freq_hz))
    throw ValidationError("center frequency must be positive");
  if (!(loop_delay_s > 0.0) || !std::isfinite(loop_delay_s))
    throw ValidationError("loop delay must be positive");
  if (!(coupled_section_delay_s >= 0.0) || !std::isfinite(coupled_section_delay_s))
    throw ValidationError("coupled-section delay must be non-negative");
  through_ = std::sqrt(1.0 - coupling_mag * coupling_mag);
}

CouplerResonatorParams CouplerResonatorParams::standard(double coupling_mag, double center_freq_hz) {
  return {coupling_mag, center_freq_hz, 1.5 / center_freq_hz, 0.5 / center_freq_hz};
}

CouplerResonatorParams CouplerResonatorParams::with_coupling(double coupling_mag) const {
  return {coupling_mag, f0_, loop_delay_, section_delay_};
}

cplx CouplerResonatorParams::through(double omega) const { return std::polar(through_, theta(omega)); }

cplx CouplerResonatorParams::coupling(double omega) const {
  return std::polar(coupling_, theta(omega) - kPi / 2.0);
}

cplx CouplerResonatorParams::coupling_squared(double omega) const {
  // T^2 and exp(j 2 theta) share one polar evaluation so |C| = 0 gives exactly zero.
  const double two_theta = 2.0 * theta(omega);
  return std::polar(through_ * through_, two_theta) - std::polar(1.0, two_theta);
}

cplx CouplerResonatorParams::loop(double omega) const { return std::polar(1.0, -omega * loop_delay_); }

CascadeSpec::CascadeSpec(std::vector<CouplerResonatorParams> u) : units(std::move(u)) {
  if (units.empty()) throw ValidationError("cascade: at least one unit required");
}

CascadeSpec CascadeSpec::identical(const CouplerResonatorParams& unit, std::size_t count) {
  return CascadeSpec(std::vector<CouplerResonatorParams>(count, unit));
}

cplx unit_transfer_at(const CouplerResonatorParams& params, double f_hz) {
  const double omega = kTwoPi * f_hz;
  const cplx t = params.through(omega);
  // Decoupled: nothing enters the loop, even where T D = 1.
  if (params.coupling_mag() == 0.0) return t;
  const cplx c2 = params.coupling_squared(omega);
  const cplx d = params.loop(omega);
  const cplx denom = 1.0 - t * d;
  if (denom == cplx{0.0, 0.0}) {
    std::ostringstream os;
    os << "uncoupled lossless loop resonates exactly at " << f_hz << " Hz (T D = 1)";
    throw SingularSampleError(os.str(), f_hz);
  }
  return t + c2 * d / denom;
}

ComplexResponse unit_transfer(const CouplerResonatorParams& params, const FrequencyGrid& grid) {
  std::vector<cplx> values(grid.count());
  for (std::size_t k = 0; k < grid.count(); ++k) values[k] = unit_transfer_at(params, grid.at(k));
  return ComplexResponse(grid, std::move(values));
}

ComplexResponse cascade_transfer(const CascadeSpec& spec, const FrequencyGrid& grid) {
  const ComplexResponse first = unit_transfer(spec.units.front(), grid);
  std::vector<cplx> acc(first.values().begin(), first.values().end());
  for (std::size_t u = 1; u < spec.units.size(); ++u) {
    const ComplexResponse next = unit_transfer(spec.units[u], grid);
    simd::complex_multiply(acc, next.values(), acc);
  }
  return ComplexResponse(grid, std::move(acc));
}

FrequencyGrid model_grid(double center_freq_hz, double lo_frac, double hi_frac, std::size_t min_points) {
  if (!(lo_frac < 1.0 && hi_frac > 1.0 && lo_frac >= 0.0))
    throw ValidationError("model grid: band must straddle the center frequency");
  const auto steps = static_cast<std::size_t>(std::ceil(static_cast<double>(std::max<std::size_t>(min_points, 3) - 1) / 2.0));
  return FrequencyGrid::snapped(lo_frac * center_freq_hz, hi_frac * center_freq_hz, center_freq_hz, 0.2,
                                steps);
}

double unit_group_delay_at(const CouplerResonatorParams& params, double f_hz) {
  // Three-sample grids centered on f; halve the step until two successive
  // Richardson-combined estimates agree.
  auto central = [&](double h) {
    const FrequencyGrid g(f_hz - h, h, 3);
    return group_delay(unwrap_phase(unit_transfer(params, g))).values[1];
  };
  double h = 1e-3 * f_hz;
  double coarse = 0.0;
  // Start where one step moves the phase by well under pi/8.
  for (int i = 0; i < 60; ++i, h /= 2.0) {
    try {
      coarse = central(h);
    } catch (const ResolutionError&) {
      continue;
    }
    if (kTwoPi * h * std::abs(coarse) <= kPi / 8.0) break;
  }
  double best = coarse;
  double prev_extrapolated = std::numeric_limits<double>::quiet_NaN();
  for (int i = 0; i < 60; ++i) {
    h /= 2.0;
    const double fine = central(h);
    const double extrapolated = (4.0 * fine - coarse) / 3.0;
    best = extrapolated;
    if (std::abs(extrapolated - prev_extrapolated) <= 1e-10 * std::abs(extrapolated)) break;
    // Phase steps near the rounding floor stop improving the estimate.
    if (kTwoPi * h * std::abs(fine) < 1e-6) break;
    prev_extrapolated = extrapolated;
    coarse = fine;
  }
  return best;
}

bool PeakDelay::bounded() const noexcept { return std::isfinite(half_delay_bandwidth_hz); }

PeakDelay peak_delay_and_bandwidth(const CouplerResonatorParams& params) {
  const double f0 = params.center_freq_hz();
  PeakDelay out{};
  out.peak_delay_s = unit_group_delay_at(params, f0);
  const double c = params.coupling_mag();
  if (c == 0.0 || c == 1.0) {
    out.half_delay_bandwidth_hz = std::numeric_limits<double>::infinity();
    out.lower_edge_hz = 0.0;
    out.upper_edge_hz = std::numeric_limits<double>::infinity();
    return out;
  }
  const double half = 0.5 * out.peak_delay_s;
  // Delay falls monotonically from a resonance to the neighbouring anti-resonance,
  // half a free spectral range away.
  const double half_fsr = 0.5 / params.round_trip_delay_s();
  auto edge = [&](double outer) {
    double inner_f = f0;
    double outer_f = outer;
    if (unit_group_delay_at(params, outer_f) >= half)
      throw NotFoundError("half-delay edge not found within half a free spectral range");
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (inner_f + outer_f);
      if (unit_group_delay_at(params, mid) >= half)
        inner_f = mid;
      else
        outer_f = mid;
      if (std::abs(outer_f - inner_f) <= 1e-7 * std::abs(outer_f - f0)) break;
    }
    return 0.5 * (inner_f + outer_f);
  };
  out.lower_edge_hz = edge(std::max(f0 - half_fsr, 0.5 * f0 * 1e-3));
  out.upper_edge_hz = edge(f0 + half_fsr);
  out.half_delay_bandwidth_hz = out.upper_edge_hz - out.lower_edge_hz;
  return out;
}

}  // namespace mwht
