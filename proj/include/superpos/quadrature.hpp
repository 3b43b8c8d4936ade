#pragma once

#include <complex>
#include <functional>
#include <type_traits>
#include <utility>

namespace superpos::specfun {

/// Tolerances and truncation controls shared by every integrator.
struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 2000;
  /// Exponential decay rate assumed when truncating semi-infinite integrals:
  /// |f(u)| <= C e^{-tail_rate u} eventually.
  double tail_rate = 1.0;
};

template <typename T>
struct IntegralResult {
  T value{};
  double error_estimate = 0.0;
};

/// Adaptive Gauss-Kronrod (G7,K15) with interval bisection.
/// Deterministic subdivision order: the worst interval is split first,
/// ties broken by creation index.
IntegralResult<double> integrate_finite(const std::function<double(double)>& f, double a, double b,
                                        const QuadratureSpec& spec);
IntegralResult<std::complex<double>> integrate_finite(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const QuadratureSpec& spec);

/// Integral over [a, infinity); the truncation point is chosen from spec.tail_rate
/// so that the assumed tail bound is below abs_tol/10, and the tail bound is
/// folded into the reported error estimate.
IntegralResult<double> integrate_semi_infinite(const std::function<double(double)>& f, double a,
                                               const QuadratureSpec& spec);
IntegralResult<std::complex<double>> integrate_semi_infinite(
    const std::function<std::complex<double>(double)>& f, double a, const QuadratureSpec& spec);

/// Deduction helpers so plain lambdas pick the right overload.
template <typename F, typename R = std::invoke_result_t<F&, double>,
          typename = std::enable_if_t<!std::is_same_v<std::decay_t<F>, std::function<R(double)>>>>
IntegralResult<R> integrate_finite(F&& f, double a, double b, const QuadratureSpec& spec) {
  return integrate_finite(std::function<R(double)>(std::forward<F>(f)), a, b, spec);
}
template <typename F, typename R = std::invoke_result_t<F&, double>,
          typename = std::enable_if_t<!std::is_same_v<std::decay_t<F>, std::function<R(double)>>>>
IntegralResult<R> integrate_semi_infinite(F&& f, double a, const QuadratureSpec& spec) {
  return integrate_semi_infinite(std::function<R(double)>(std::forward<F>(f)), a, spec);
}

/// (1/2*pi*i) * integral of f(s) ds over the segment Re(s)=sigma, |Im(s)| <= T.
IntegralResult<std::complex<double>> integrate_vertical_line(
    const std::function<std::complex<double>(std::complex<double>)>& f, double sigma, double T,
    const QuadratureSpec& spec);

}  // namespace superpos::specfun
