#include <atomic>
#include <cstdlib>
#include <cstring>

#include "mwht/simd/kernels.hpp"

namespace mwht::simd {

namespace {

bool detect_avx2() noexcept {
#if MWHT_HAVE_AVX2_KERNELS && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa initial_isa() noexcept {
  if (const char* env = std::getenv("MWHT_SIMD"); env && std::strcmp(env, "scalar") == 0) return Isa::scalar;
  return detect_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() noexcept {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

bool avx2_available() noexcept {
  static const bool ok = detect_avx2();
  return ok;
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

Isa set_isa(Isa isa) noexcept {
  if (isa == Isa::avx2 && !avx2_available()) isa = Isa::scalar;
  return current().exchange(isa);
}

std::string_view isa_name(Isa isa) noexcept { return isa == Isa::avx2 ? "avx2" : "scalar"; }

#if MWHT_HAVE_AVX2_KERNELS
#define MWHT_DISPATCH(fn, ...) \
  (active_isa() == Isa::avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define MWHT_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

void complex_multiply(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
  MWHT_DISPATCH(complex_multiply, a, b, out);
}

void complex_scale(std::span<cplx> data, double s) { MWHT_DISPATCH(complex_scale, data, s); }

void hilbert_multiplier(std::span<cplx> spectrum) { MWHT_DISPATCH(hilbert_multiplier, spectrum); }

double sum_norm(std::span<const cplx> data) { return MWHT_DISPATCH(sum_norm, data); }

void magnitude(std::span<const cplx> data, std::span<double> out) { MWHT_DISPATCH(magnitude, data, out); }

void central_difference(std::span<const double> y, double h, std::span<double> out) {
  MWHT_DISPATCH(central_difference, y, h, out);
}

#undef MWHT_DISPATCH

}  // namespace mwht::simd
