#include "superpos/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "superpos/errors.hpp"

using namespace superpos;
using namespace superpos::specfun;
using std::numbers::pi;

TEST_CASE("finite integrals: classical values") {
  QuadratureSpec spec;
  auto r = integrate_finite([](double t) { return std::sin(t); }, 0.0, pi, spec);
  CHECK(std::abs(r.value - 2.0) < 1e-10);
  auto r2 = integrate_finite([](double t) { return std::exp(-t * t); }, -8.0, 8.0, spec);
  CHECK(std::abs(r2.value - std::sqrt(pi)) < 1e-10);
}

TEST_CASE("semi-infinite integrals") {
  QuadratureSpec spec;
  spec.tail_rate = 1.0;
  auto r = integrate_semi_infinite([](double u) { return std::exp(-u); }, 0.0, spec);
  CHECK(std::abs(r.value - 1.0) < 1e-10);
  // sinh(0.3u) e^{-0.35u}: closed form 0.3/(0.35^2 - 0.3^2)
  spec.tail_rate = 0.05;
  auto r2 = integrate_semi_infinite(
      [](double u) { return std::sinh(0.3 * u) * std::exp(-0.35 * u); }, 0.0, spec);
  const double expected = 0.3 / (0.35 * 0.35 - 0.3 * 0.3);
  CHECK(std::abs(r2.value - expected) < 1e-7);
  CHECK(expected == doctest::Approx(9.23076923).epsilon(1e-8));
}

TEST_CASE("error estimates are honest on a closed-form battery") {
  QuadratureSpec spec;
  spec.abs_tol = 1e-8;
  spec.rel_tol = 1e-8;
  struct Case {
    std::function<double(double)> f;
    double a, b, exact;
  };
  std::vector<Case> battery;
  for (int k = 1; k <= 10; ++k) {
    const double w = 0.7 * k;
    battery.push_back({[w](double t) { return std::cos(w * t); }, 0.0, 2.0,
                       std::sin(2.0 * w) / w});
    battery.push_back({[k](double t) { return std::pow(t, k); }, 0.0, 1.0, 1.0 / (k + 1.0)});
  }
  for (const auto& c : battery) {
    auto r = integrate_finite(c.f, c.a, c.b, spec);
    const double true_err = std::abs(r.value - c.exact);
    CHECK(true_err <= 3.0 * std::max(r.error_estimate, 1e-15));
  }
}

TEST_CASE("vertical line integral: residue-style check") {
  // f(s) = e^{s + 4 s^2} decays like e^{-4 y^2} along Re(s) = 1/2, so the
  // truncated line integral is effectively exact; cross-check against a fine
  // midpoint Riemann sum of the same integrand
  QuadratureSpec spec;
  spec.abs_tol = 1e-9;
  spec.rel_tol = 1e-9;
  spec.max_subdivisions = 20000;
  auto r = integrate_vertical_line(
      [](std::complex<double> s) { return std::exp(s + 4.0 * s * s); }, 0.5, 40.0, spec);
  std::complex<double> riemann = 0.0;
  const double h = 1e-4;
  for (double y = -40.0; y < 40.0; y += h)
    riemann += std::exp(std::complex<double>(0.5, y + 0.5 * h) +
                        4.0 * std::complex<double>(0.5, y + 0.5 * h) *
                            std::complex<double>(0.5, y + 0.5 * h)) *
               h;
  riemann /= 2.0 * pi;
  CHECK(std::abs(r.value - riemann) < 1e-6);
}

TEST_CASE("non-convergence raises AccuracyError with best estimate") {
  QuadratureSpec spec;
  spec.abs_tol = 1e-14;
  spec.rel_tol = 1e-14;
  spec.max_subdivisions = 3;
  CHECK_THROWS_AS(integrate_finite([](double t) { return std::sin(100.0 * t) / (1e-6 + t * t); },
                                   0.0, 10.0, spec),
                  AccuracyError);
}
