#include "mwht/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <memory>
#include <mutex>

#include "mwht/errors.hpp"
#include "mwht/simd/kernels.hpp"

namespace mwht {

namespace {

// FFTW's planner is not re-entrant; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n)
      : ptr(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (!ptr) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(ptr); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* ptr;
};

class FftwPlan {
 public:
  FftwPlan(std::size_t n, fftw_complex* in, fftw_complex* out, int sign) {
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_1d(static_cast<int>(n), in, out, sign, FFTW_ESTIMATE);
    if (!plan_) throw NumericalError("fft: planner failed");
  }
  ~FftwPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  FftwPlan(const FftwPlan&) = delete;
  FftwPlan& operator=(const FftwPlan&) = delete;
  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_{};
};

}  // namespace

double ComplexSpectrum::frequency(std::size_t k) const noexcept {
  const std::size_t n = bins.size();
  const double df = bin_spacing_hz();
  if (k <= (n - 1) / 2) return static_cast<double>(k) * df;
  return -static_cast<double>(n - k) * df;
}

void fft_in_place(std::vector<cplx>& data, bool inverse) {
  const std::size_t n = data.size();
  if (n < 2) throw ValidationError("fft: at least 2 samples required");
  FftwBuffer in(n), out(n);
  FftwPlan plan(n, in.ptr, out.ptr, inverse ? FFTW_BACKWARD : FFTW_FORWARD);
  static_assert(sizeof(cplx) == sizeof(fftw_complex));
  std::memcpy(in.ptr, data.data(), n * sizeof(cplx));
  plan.execute();
  std::memcpy(static_cast<void*>(data.data()), out.ptr, n * sizeof(cplx));
  if (inverse) simd::complex_scale(data, 1.0 / static_cast<double>(n));
}

ComplexSpectrum fft_forward(const TimeSignal& signal) {
  ComplexSpectrum spec;
  spec.start_s = signal.start_s();
  spec.sample_rate_hz = signal.sample_rate_hz();
  spec.source_kind = signal.kind();
  spec.bins.assign(signal.samples().begin(), signal.samples().end());
  fft_in_place(spec.bins, false);
  return spec;
}

TimeSignal fft_inverse(const ComplexSpectrum& spectrum) {
  std::vector<cplx> data = spectrum.bins;
  for (auto z : data)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw ValidationError("fft: non-finite spectrum bin");
  fft_in_place(data, true);
  return TimeSignal(spectrum.start_s, spectrum.sample_rate_hz, std::move(data), spectrum.source_kind);
}

}  // namespace mwht
