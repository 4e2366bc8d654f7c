#pragma once

// Data-parallel inner loops shared by the spectral, model and application code.
//
// Every kernel has a portable scalar reference in namespace `scalar` and, on x86-64,
// an AVX2/FMA variant in namespace `avx2`. The unqualified entry points dispatch at
// runtime to the best variant the host supports; tests compare the variants directly.

#include <complex>
#include <span>
#include <string_view>

namespace mwht::simd {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

// ISA in use by the dispatching entry points. Setting MWHT_SIMD=scalar in the
// environment pins the scalar path.
Isa active_isa() noexcept;
bool avx2_available() noexcept;
// Overrides the dispatch choice (tests, benchmarks). Requesting avx2 on a host
// without it falls back to scalar. Returns the previous setting.
Isa set_isa(Isa isa) noexcept;
std::string_view isa_name(Isa isa) noexcept;

// out[i] = a[i] * b[i]
void complex_multiply(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out);
// data[i] *= s
void complex_scale(std::span<cplx> data, double s);
// Spectrum multiplier -i*sgn(f) in FFT bin order; DC bin and (even-length) Nyquist bin zeroed.
void hilbert_multiplier(std::span<cplx> spectrum);
// sum |z|^2
double sum_norm(std::span<const cplx> data);
// out[i] = |z[i]|
void magnitude(std::span<const cplx> data, std::span<double> out);
// dy/dx on a uniform grid: 2nd-order central differences inside, 1st-order one-sided at ends.
void central_difference(std::span<const double> y, double h, std::span<double> out);

namespace scalar {
void complex_multiply(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out);
void complex_scale(std::span<cplx> data, double s);
void hilbert_multiplier(std::span<cplx> spectrum);
double sum_norm(std::span<const cplx> data);
void magnitude(std::span<const cplx> data, std::span<double> out);
void central_difference(std::span<const double> y, double h, std::span<double> out);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define MWHT_HAVE_AVX2_KERNELS 1
namespace avx2 {
void complex_multiply(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out);
void complex_scale(std::span<cplx> data, double s);
void hilbert_multiplier(std::span<cplx> spectrum);
double sum_norm(std::span<const cplx> data);
void magnitude(std::span<const cplx> data, std::span<double> out);
void central_difference(std::span<const double> y, double h, std::span<double> out);
}  // namespace avx2
#else
#define MWHT_HAVE_AVX2_KERNELS 0
#endif

}  // namespace mwht::simd
