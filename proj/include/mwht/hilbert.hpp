#pragma once

#include <vector>

#include "mwht/types.hpp"

namespace mwht {

enum class PulseKind { rect, tri };

// Unit half-width pulses: rect is 1 on |t| <= 1; tri is 1 - |t| on |t| <= 1.
struct AnalyticPulse {
  PulseKind kind;

  double operator()(double t) const noexcept;
  // Points where the pulse or its slope is discontinuous.
  std::vector<double> breakpoints() const;
};

// Multiplies the spectrum by -i sgn(f). DC and, for even lengths, the Nyquist bin are
// zeroed. Real input gives real output.
TimeSignal hilbert_spectral(const TimeSignal& signal);

// (1/pi) PV integral of x(tau) / (t - tau), from the integral with (t - eps, t + eps)
// removed, Richardson-extrapolated over eps, eps/2, eps/4. Throws QuadratureError when
// the estimate does not settle to 1e-8 absolute, DomainError at a rect pole.
double hilbert_pv_quadrature(const AnalyticPulse& pulse, double t, double epsilon = 1e-2);

// Same for a real sampled signal, read as piecewise linear between samples and zero
// outside them.
double hilbert_pv_quadrature(const TimeSignal& signal, double t, double epsilon);

// (1/pi) ln|(t + 1)/(t - 1)|. The poles return signed infinity: +inf at t = 1,
// -inf at t = -1.
double rect_hilbert_closed_form(double t) noexcept;

// -(1/pi) (ln|(t - 1)/(t + 1)| + t ln|t^2/(t^2 - 1)|), with the limits 0 at t = 0 and
// +-2 ln2 / pi at t = +-1.
double tri_hilbert_closed_form(double t) noexcept;

double hilbert_closed_form(const AnalyticPulse& pulse, double t) noexcept;

// True where the closed form is a pole (rect at |t| = 1).
bool is_closed_form_pole(const AnalyticPulse& pulse, double t) noexcept;

}  // namespace mwht
