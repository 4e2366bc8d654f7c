#pragma once

#include <vector>

#include "mwht/types.hpp"

namespace mwht {

// Discrete spectrum of a TimeSignal in FFT bin order (bin k <-> k * rate / n for
// k < n/2, negative frequencies above). Forward transform is unnormalized; the
// inverse divides by n.
struct ComplexSpectrum {
  double start_s = 0.0;
  double sample_rate_hz = 1.0;
  SampleKind source_kind = SampleKind::complex;
  std::vector<cplx> bins;

  std::size_t size() const noexcept { return bins.size(); }
  double bin_spacing_hz() const noexcept { return sample_rate_hz / static_cast<double>(bins.size()); }
  // Signed frequency of bin k.
  double frequency(std::size_t k) const noexcept;
};

ComplexSpectrum fft_forward(const TimeSignal& signal);

// Real-sourced spectra return a real signal (imaginary residue discarded).
TimeSignal fft_inverse(const ComplexSpectrum& spectrum);

// Raw transforms on contiguous data, in place; `inverse` includes the 1/n factor.
void fft_in_place(std::vector<cplx>& data, bool inverse);

}  // namespace mwht
