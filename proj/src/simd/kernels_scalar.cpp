#include <cassert>
#include <cmath>

#include "mwht/simd/kernels.hpp"

namespace mwht::simd::scalar {

void complex_multiply(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
  assert(a.size() == b.size() && a.size() == out.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = {ar * br - ai * bi, ar * bi + ai * br};
  }
}

void complex_scale(std::span<cplx> data, double s) {
  for (auto& z : data) z = {z.real() * s, z.imag() * s};
}

void hilbert_multiplier(std::span<cplx> spectrum) {
  const std::size_t n = spectrum.size();
  if (n == 0) return;
  spectrum[0] = 0.0;
  const std::size_t half = n / 2;
  // (a + ib)(-i) = b - ia for positive bins; (a + ib)(+i) = -b + ia for negative bins.
  for (std::size_t k = 1; k < (n + 1) / 2; ++k) {
    const cplx z = spectrum[k];
    spectrum[k] = {z.imag(), -z.real()};
  }
  for (std::size_t k = half + 1; k < n; ++k) {
    const cplx z = spectrum[k];
    spectrum[k] = {-z.imag(), z.real()};
  }
  if (n % 2 == 0) spectrum[half] = 0.0;
}

double sum_norm(std::span<const cplx> data) {
  double acc = 0.0;
  for (auto z : data) acc += z.real() * z.real() + z.imag() * z.imag();
  return acc;
}

void magnitude(std::span<const cplx> data, std::span<double> out) {
  assert(data.size() == out.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double re = data[i].real(), im = data[i].imag();
    out[i] = std::sqrt(re * re + im * im);
  }
}

void central_difference(std::span<const double> y, double h, std::span<double> out) {
  const std::size_t n = y.size();
  assert(out.size() == n && n >= 2);
  out[0] = (y[1] - y[0]) / h;
  out[n - 1] = (y[n - 1] - y[n - 2]) / h;
  const double inv = 1.0 / (2.0 * h);
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (y[i + 1] - y[i - 1]) * inv;
}

}  // namespace mwht::simd::scalar
