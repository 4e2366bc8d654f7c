// AVX2 variants. This translation unit is compiled with -mavx2 -mfma -ffp-contract=off and
// is only entered after a runtime CPU check; operation order mirrors the scalar reference
// so element-wise kernels agree bit for bit.

#include <immintrin.h>

#include <cassert>
#include <cmath>

#include "mwht/simd/kernels.hpp"

namespace mwht::simd::avx2 {

namespace {

inline const double* as_doubles(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* as_doubles(cplx* p) { return reinterpret_cast<double*>(p); }

// [a, b] -> [b, -a] for each complex lane
inline __m256d times_minus_i(__m256d v) {
  const __m256d sw = _mm256_permute_pd(v, 0x5);
  return _mm256_xor_pd(sw, _mm256_set_pd(-0.0, 0.0, -0.0, 0.0));
}

// [a, b] -> [-b, a]
inline __m256d times_plus_i(__m256d v) {
  const __m256d sw = _mm256_permute_pd(v, 0x5);
  return _mm256_xor_pd(sw, _mm256_set_pd(0.0, -0.0, 0.0, -0.0));
}

}  // namespace

void complex_multiply(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
  assert(a.size() == b.size() && a.size() == out.size());
  const std::size_t n = a.size();
  const double* pa = as_doubles(a.data());
  const double* pb = as_doubles(b.data());
  double* po = as_doubles(out.data());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    const __m256d b_re = _mm256_movedup_pd(vb);
    const __m256d b_im = _mm256_permute_pd(vb, 0xF);
    const __m256d a_sw = _mm256_permute_pd(va, 0x5);
    const __m256d t1 = _mm256_mul_pd(va, b_re);
    const __m256d t2 = _mm256_mul_pd(a_sw, b_im);
    _mm256_storeu_pd(po + 2 * i, _mm256_addsub_pd(t1, t2));
  }
  if (i < n) scalar::complex_multiply(a.subspan(i), b.subspan(i), out.subspan(i));
}

void complex_scale(std::span<cplx> data, double s) {
  const std::size_t n = data.size();
  double* p = as_doubles(data.data());
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) _mm256_storeu_pd(p + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(p + 2 * i), vs));
  if (i < n) scalar::complex_scale(data.subspan(i), s);
}

void hilbert_multiplier(std::span<cplx> spectrum) {
  const std::size_t n = spectrum.size();
  if (n == 0) return;
  double* p = as_doubles(spectrum.data());
  spectrum[0] = 0.0;
  const std::size_t half = n / 2;
  const std::size_t pos_end = (n + 1) / 2;

  std::size_t k = 1;
  for (; k + 2 <= pos_end; k += 2) _mm256_storeu_pd(p + 2 * k, times_minus_i(_mm256_loadu_pd(p + 2 * k)));
  for (; k < pos_end; ++k) spectrum[k] = {spectrum[k].imag(), -spectrum[k].real()};

  k = half + 1;
  for (; k + 2 <= n; k += 2) _mm256_storeu_pd(p + 2 * k, times_plus_i(_mm256_loadu_pd(p + 2 * k)));
  for (; k < n; ++k) spectrum[k] = {-spectrum[k].imag(), spectrum[k].real()};

  if (n % 2 == 0) spectrum[half] = 0.0;
}

double sum_norm(std::span<const cplx> data) {
  const std::size_t n = data.size();
  const double* p = as_doubles(data.data());
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v0 = _mm256_loadu_pd(p + 2 * i);
    const __m256d v1 = _mm256_loadu_pd(p + 2 * i + 4);
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(v0, v0));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(v1, v1));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
  double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  if (i < n) total += scalar::sum_norm(data.subspan(i));
  return total;
}

void magnitude(std::span<const cplx> data, std::span<double> out) {
  assert(data.size() == out.size());
  const std::size_t n = data.size();
  const double* p = as_doubles(data.data());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v0 = _mm256_loadu_pd(p + 2 * i);
    const __m256d v1 = _mm256_loadu_pd(p + 2 * i + 4);
    // hadd -> [|z0|^2, |z2|^2, |z1|^2, |z3|^2]
    const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
    const __m256d ordered = _mm256_permute4x64_pd(h, 0xD8);
    _mm256_storeu_pd(out.data() + i, _mm256_sqrt_pd(ordered));
  }
  if (i < n) scalar::magnitude(data.subspan(i), out.subspan(i));
}

void central_difference(std::span<const double> y, double h, std::span<double> out) {
  const std::size_t n = y.size();
  assert(out.size() == n && n >= 2);
  out[0] = (y[1] - y[0]) / h;
  out[n - 1] = (y[n - 1] - y[n - 2]) / h;
  const double inv = 1.0 / (2.0 * h);
  const __m256d vinv = _mm256_set1_pd(inv);
  std::size_t i = 1;
  for (; i + 4 < n; i += 4) {
    const __m256d hi = _mm256_loadu_pd(y.data() + i + 1);
    const __m256d lo = _mm256_loadu_pd(y.data() + i - 1);
    _mm256_storeu_pd(out.data() + i, _mm256_mul_pd(_mm256_sub_pd(hi, lo), vinv));
  }
  for (; i + 1 < n; ++i) out[i] = (y[i + 1] - y[i - 1]) * inv;
}

}  // namespace mwht::simd::avx2
