#pragma once

#include <vector>

#include "mwht/applications.hpp"
#include "mwht/fft.hpp"

namespace mwht::detail {

struct DeviceBins {
  std::vector<cplx> h;           // multiplier per FFT bin, zero where uncovered
  double zeroed_energy = 0.0;    // sum |X|^2 over uncovered bins
  double total_energy = 0.0;
};

// Transfer of `device` on the bins of `spectrum`. For real sources the unpaired Nyquist
// bin takes Re H so the output stays real.
DeviceBins device_bins(const Device& device, const ComplexSpectrum& spectrum);

// Throws CoverageError when more than 5% of the energy falls on uncovered bins.
void require_coverage(const DeviceBins& bins, const std::string& device_name);

}  // namespace mwht::detail
