#pragma once

#include <cmath>
#include <functional>

#include "mwht/errors.hpp"
#include "mwht/types.hpp"

namespace mwht {

// Per-sample phase change below which unwrapping is considered safely resolved.
inline constexpr double kSafePhaseStep = kPi / 4.0;
inline constexpr std::size_t kDefaultModelPoints = 2001;

// Continuous phase whose samples equal arg(response) modulo 2*pi.
// Throws SingularSampleError on a zero-magnitude sample and ResolutionError when an
// adjacent jump is ambiguous (|delta| reaches pi).
PhaseCurve unwrap_phase(const ComplexResponse& response);

// tau = -d(phi)/d(omega), seconds. Central differences inside, one-sided at the ends.
SampledCurve group_delay(const PhaseCurve& phase);

double max_phase_step(const PhaseCurve& phase);

// Sampled |H| in dB.
SampledCurve magnitude_db(const ComplexResponse& response);

using ResponseModel = std::function<ComplexResponse(const FrequencyGrid&)>;

// Evaluates `model` on `grid`, doubling the resolution until every adjacent unwrapped
// phase step is at most kSafePhaseStep.
ComplexResponse evaluate_resolved(const ResponseModel& model, FrequencyGrid grid, int max_doublings = 10);

}  // namespace mwht
