#include "mwht/phase.hpp"

#include <algorithm>
#include <sstream>

#include "mwht/simd/kernels.hpp"

namespace mwht {

PhaseCurve unwrap_phase(const ComplexResponse& response) {
  const auto& grid = response.grid();
  const std::size_t n = response.size();
  std::vector<double> phase(n);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx z = response[k];
    if (z == cplx{0.0, 0.0}) {
      std::ostringstream os;
      os << "phase undefined: zero magnitude at " << grid.at(k) << " Hz";
      throw SingularSampleError(os.str(), grid.at(k));
    }
    const double raw = std::arg(z);
    if (k == 0) {
      phase[0] = raw;
      continue;
    }
    // Pick the 2*pi branch of `raw` nearest the previous unwrapped sample.
    const double turns = std::round((phase[k - 1] - raw) / kTwoPi);
    phase[k] = raw + kTwoPi * turns;
    if (std::abs(phase[k] - phase[k - 1]) >= kPi * (1.0 - 1e-12)) {
      std::ostringstream os;
      os << "phase unwrap ambiguous near " << grid.at(k) << " Hz; refine the grid";
      throw ResolutionError(os.str(), grid.at(k));
    }
  }
  return PhaseCurve(grid, std::move(phase));
}

SampledCurve group_delay(const PhaseCurve& phase) {
  const auto& grid = phase.grid();
  if (grid.count() < 3) throw ValidationError("group delay: at least 3 grid samples required");
  std::vector<double> slope(grid.count());
  simd::central_difference(phase.phase_rad(), grid.angular_step(), slope);
  for (auto& s : slope) s = -s;
  return {grid, std::move(slope)};
}

double max_phase_step(const PhaseCurve& phase) {
  double m = 0.0;
  for (std::size_t k = 1; k < phase.size(); ++k) m = std::max(m, std::abs(phase[k] - phase[k - 1]));
  return m;
}

SampledCurve magnitude_db(const ComplexResponse& response) {
  std::vector<double> mag(response.size());
  simd::magnitude(response.values(), mag);
  for (auto& m : mag) m = 20.0 * std::log10(m);
  return {response.grid(), std::move(mag)};
}

ComplexResponse evaluate_resolved(const ResponseModel& model, FrequencyGrid grid, int max_doublings) {
  for (int pass = 0;; ++pass) {
    ComplexResponse response = model(grid);
    if (pass == max_doublings) return response;
    bool resolved = false;
    try {
      resolved = max_phase_step(unwrap_phase(response)) <= kSafePhaseStep;
    } catch (const ResolutionError&) {
      resolved = false;
    }
    if (resolved) return response;
    grid = grid.refined();
  }
}

}  // namespace mwht
