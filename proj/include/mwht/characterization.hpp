#pragma once

#include <optional>
#include <vector>

#include "mwht/model.hpp"
#include "mwht/types.hpp"

namespace mwht {

inline constexpr double kDefaultAlpha = 0.35;

// Net phase fall across the resonance once the linear trend set by the slope at
// 0.8 * center is removed:
//   phi(0.8 w0) - phi(1.2 w0) + 0.4 w0 * dphi/dw |_{0.8 w0}
// 0.8 * center and 1.2 * center must be grid samples with >= 100 samples between them.
double rotated_phase(const PhaseCurve& phase, double center_hz);

struct TransitionBand {
  double width_hz;        // omega_R - omega_L, in Hz
  double lower_hz;        // omega_L
  double upper_hz;        // omega_R
  double asymmetry_hz;    // (center - lower) - (upper - center)
  bool symmetric(double step_hz) const noexcept;
};

// Band whose edges are where the phase slope first departs from the asymptotic slope
// at 0.8 * center (resp. 1.2 * center) by the relative factor alpha, scanning from the
// outside toward the center. Edges are located to sub-sample accuracy by linear
// interpolation of the slope.
TransitionBand transition_bandwidth(const PhaseCurve& phase, double center_hz, double alpha = kDefaultAlpha);

struct CharacterizationReport {
  std::optional<double> coupling_mag;  // absent for measured data
  double center_hz;
  double alpha;
  double rotated_phase_rad;
  double transition_bandwidth_hz;
  double omega_L_hz;
  double omega_R_hz;
  double peak_delay_s;
  double half_delay_bandwidth_hz;
  std::size_t grid_points;
};

// Evaluates the unit model on an automatically resolved snapped grid and collects all
// figures of merit. Coupling must lie strictly inside (0, 1).
CharacterizationReport characterize_unit(const CouplerResonatorParams& params, double alpha = kDefaultAlpha);

// Figures of merit of a sampled (e.g. measured) response. Peak delay is the sampled
// delay at center; half-delay bandwidth is measured on the grid.
CharacterizationReport characterize_response(const ComplexResponse& response, double center_hz,
                                             double alpha = kDefaultAlpha);

// One report per coupling value, same order; evaluated concurrently.
std::vector<CharacterizationReport> coupling_sweep(std::span<const double> coupling_values,
                                                   const CouplerResonatorParams& base_params,
                                                   double alpha = kDefaultAlpha);

// Rotated phase of the unit model alone (no delay metrics).
double unit_rotated_phase(const CouplerResonatorParams& params);

// Coupling whose unit rotated phase equals target_rad, by bisection on (0.05, 0.95)
// to 1e-4. Throws RangeError when the target is outside the sampled range.
double find_coupling_for_rotated_phase(double target_rad, const CouplerResonatorParams& base_params);

}  // namespace mwht
