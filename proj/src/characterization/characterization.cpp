#include "mwht/characterization.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>
#include <thread>

#include "mwht/errors.hpp"
#include "mwht/phase.hpp"

namespace mwht {

namespace {

struct WindowIndices {
  std::size_t lower;   // 0.8 * center
  std::size_t center;
  std::size_t upper;   // 1.2 * center
};

WindowIndices window_indices(const FrequencyGrid& grid, double center_hz) {
  if (!(center_hz > 0.0)) throw ValidationError("characterization: center frequency must be positive");
  WindowIndices w{grid.index_of(0.8 * center_hz), grid.index_of(center_hz), grid.index_of(1.2 * center_hz)};
  if (w.lower == FrequencyGrid::npos || w.upper == FrequencyGrid::npos || w.center == FrequencyGrid::npos) {
    std::ostringstream os;
    os << "characterization: 0.8, 1.0 and 1.2 x " << center_hz
       << " Hz must be samples of the grid (use a snapped grid)";
    throw CoverageError(os.str());
  }
  if (w.upper - w.lower < 100) throw CoverageError("characterization: fewer than 100 samples across 0.8..1.2 x center");
  return w;
}

// Position where `departure` first reaches alpha walking from `from` toward `to`.
double departure_crossing(const FrequencyGrid& grid, const std::vector<double>& slope, std::size_t from,
                          std::size_t to, double alpha) {
  const double reference = slope[from];
  const int dir = to > from ? 1 : -1;
  auto departure = [&](std::size_t i) { return (slope[i] - reference) / reference; };
  double prev = departure(from);
  for (std::size_t i = from; i != to;) {
    const std::size_t next = static_cast<std::size_t>(static_cast<long long>(i) + dir);
    const double d = departure(next);
    if (d >= alpha) {
      const double frac = (alpha - prev) / (d - prev);
      return grid.at(i) + dir * frac * grid.step_hz();
    }
    prev = d;
    i = next;
  }
  std::ostringstream os;
  os << "transition bandwidth: slope departure never reaches alpha = " << alpha;
  throw NotFoundError(os.str());
}

// Half-peak crossing of a sampled delay curve walking outward from `center`.
double half_delay_crossing(const SampledCurve& delay, std::size_t center, int dir) {
  const double half = 0.5 * delay.values[center];
  std::size_t i = center;
  while (true) {
    if ((dir < 0 && i == 0) || (dir > 0 && i + 1 == delay.values.size()))
      return dir < 0 ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
    const std::size_t next = static_cast<std::size_t>(static_cast<long long>(i) + dir);
    if (delay.values[next] < half) {
      const double a = delay.values[i], b = delay.values[next];
      const double frac = (a - half) / (a - b);
      return delay.grid.at(i) + dir * frac * delay.grid.step_hz();
    }
    i = next;
  }
}

void require_interior_coupling(const CouplerResonatorParams& params) {
  const double c = params.coupling_mag();
  if (!(c > 0.0 && c < 1.0)) {
    std::ostringstream os;
    os << "characterization undefined at the limit coupling |C| = " << c;
    throw DomainError(os.str());
  }
}

PhaseCurve resolved_unit_phase(const CouplerResonatorParams& params) {
  const FrequencyGrid grid = model_grid(params.center_freq_hz(), 0.75, 1.25, kDefaultModelPoints);
  const ComplexResponse response =
      evaluate_resolved([&](const FrequencyGrid& g) { return unit_transfer(params, g); }, grid);
  return unwrap_phase(response);
}

}  // namespace

bool TransitionBand::symmetric(double step_hz) const noexcept { return std::abs(asymmetry_hz) <= step_hz; }

double rotated_phase(const PhaseCurve& phase, double center_hz) {
  const WindowIndices w = window_indices(phase.grid(), center_hz);
  const SampledCurve delay = group_delay(phase);
  const double slope_lower = -delay.values[w.lower];
  return phase[w.lower] - phase[w.upper] + 0.4 * kTwoPi * center_hz * slope_lower;
}

TransitionBand transition_bandwidth(const PhaseCurve& phase, double center_hz, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("transition bandwidth: alpha must be positive");
  const WindowIndices w = window_indices(phase.grid(), center_hz);
  const SampledCurve delay = group_delay(phase);
  std::vector<double> slope(delay.values.size());
  std::transform(delay.values.begin(), delay.values.end(), slope.begin(), [](double t) { return -t; });
  if (slope[w.lower] == 0.0 || slope[w.upper] == 0.0)
    throw DomainError("transition bandwidth: asymptotic slope is zero");

  TransitionBand band{};
  band.lower_hz = departure_crossing(phase.grid(), slope, w.lower, w.center, alpha);
  band.upper_hz = departure_crossing(phase.grid(), slope, w.upper, w.center, alpha);
  band.width_hz = band.upper_hz - band.lower_hz;
  band.asymmetry_hz = (center_hz - band.lower_hz) - (band.upper_hz - center_hz);
  return band;
}

CharacterizationReport characterize_unit(const CouplerResonatorParams& params, double alpha) {
  require_interior_coupling(params);
  const double f0 = params.center_freq_hz();
  const PhaseCurve phase = resolved_unit_phase(params);
  const TransitionBand band = transition_bandwidth(phase, f0, alpha);
  if (!band.symmetric(phase.grid().step_hz())) {
    std::ostringstream os;
    os << "transition band of the unit model is asymmetric by " << band.asymmetry_hz << " Hz";
    throw NumericalError(os.str());
  }
  const PeakDelay peak = peak_delay_and_bandwidth(params);
  return CharacterizationReport{
      .coupling_mag = params.coupling_mag(),
      .center_hz = f0,
      .alpha = alpha,
      .rotated_phase_rad = rotated_phase(phase, f0),
      .transition_bandwidth_hz = band.width_hz,
      .omega_L_hz = band.lower_hz,
      .omega_R_hz = band.upper_hz,
      .peak_delay_s = peak.peak_delay_s,
      .half_delay_bandwidth_hz = peak.half_delay_bandwidth_hz,
      .grid_points = phase.size(),
  };
}

CharacterizationReport characterize_response(const ComplexResponse& response, double center_hz, double alpha) {
  const PhaseCurve phase = unwrap_phase(response);
  const TransitionBand band = transition_bandwidth(phase, center_hz, alpha);
  const SampledCurve delay = group_delay(phase);
  const std::size_t c = phase.grid().index_of(center_hz);
  const double lo = half_delay_crossing(delay, c, -1);
  const double hi = half_delay_crossing(delay, c, +1);
  return CharacterizationReport{
      .coupling_mag = std::nullopt,
      .center_hz = center_hz,
      .alpha = alpha,
      .rotated_phase_rad = rotated_phase(phase, center_hz),
      .transition_bandwidth_hz = band.width_hz,
      .omega_L_hz = band.lower_hz,
      .omega_R_hz = band.upper_hz,
      .peak_delay_s = delay.values[c],
      .half_delay_bandwidth_hz = hi - lo,
      .grid_points = phase.size(),
  };
}

std::vector<CharacterizationReport> coupling_sweep(std::span<const double> coupling_values,
                                                   const CouplerResonatorParams& base_params, double alpha) {
  std::vector<CouplerResonatorParams> units;
  units.reserve(coupling_values.size());
  std::ostringstream bad;
  for (double c : coupling_values) {
    if (!(c > 0.0 && c < 1.0)) {
      bad << (bad.tellp() > 0 ? ", " : "") << c;
      continue;
    }
    units.push_back(base_params.with_coupling(c));
  }
  if (bad.tellp() > 0) throw DomainError("coupling sweep: values outside (0, 1): " + bad.str());

  std::vector<std::optional<CharacterizationReport>> slots(units.size());
  const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < std::min(workers, units.size()); ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < units.size(); i += workers) slots[i] = characterize_unit(units[i], alpha);
    }));
  }
  for (auto& j : jobs) j.get();

  std::vector<CharacterizationReport> reports;
  reports.reserve(slots.size());
  for (auto& s : slots) reports.push_back(*s);
  return reports;
}

double unit_rotated_phase(const CouplerResonatorParams& params) {
  require_interior_coupling(params);
  return rotated_phase(resolved_unit_phase(params), params.center_freq_hz());
}

double find_coupling_for_rotated_phase(double target_rad, const CouplerResonatorParams& base_params) {
  double lo = 0.05, hi = 0.95;
  const double at_lo = unit_rotated_phase(base_params.with_coupling(lo));
  const double at_hi = unit_rotated_phase(base_params.with_coupling(hi));
  if (!(target_rad <= at_lo && target_rad >= at_hi)) {
    std::ostringstream os;
    os << "rotated phase " << target_rad << " rad outside the achievable range [" << at_hi << ", " << at_lo
       << "] rad for |C| in (0.05, 0.95)";
    throw RangeError(os.str());
  }
  while (hi - lo > 1e-4) {
    const double mid = 0.5 * (lo + hi);
    if (unit_rotated_phase(base_params.with_coupling(mid)) > target_rad)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace mwht
