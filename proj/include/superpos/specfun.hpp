#pragma once

#include <complex>
#include <cstdint>

#include "superpos/quadrature.hpp"

namespace superpos::specfun {

using Complex = std::complex<double>;

/// Gamma function, Lanczos approximation with reflection for Re(s) < 1/2.
/// Throws PoleError at non-positive integers.
Complex gamma(Complex s);

/// log Gamma; principal-branch composition, continuous on Re(s) >= 1/2.
Complex log_gamma(Complex s);

/// Riemann zeta, alternating-series (Borwein) evaluation with reflection
/// for Re(s) < 1/2. Throws PoleError at s = 1.
Complex zeta(Complex s);

/// zeta with the Euler factor at q removed: zeta_q(s) = zeta(s) (1 - q^{-s}).
Complex zeta_q(Complex s, std::int64_t q);

namespace detail {
/// Independent Euler-Maclaurin evaluation path, used as a cross-check oracle.
Complex zeta_euler_maclaurin(Complex s);
}  // namespace detail

/// Bessel J1 for x >= 0: power series for x <= 12, Hankel asymptotics beyond.
double bessel_j1(double x);

/// Exponential integral E1(x) = int_x^inf e^{-t}/t dt, x > 0.
double expint_e1(double x);

}  // namespace superpos::specfun
