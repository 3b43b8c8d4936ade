#include "superpos/zerodensity.hpp"

#include <cmath>
#include <complex>

#include "doctest.h"
#include "superpos/errors.hpp"
#include "superpos/parallel.hpp"

using namespace superpos;
using namespace superpos::zerodensity;

namespace {

// direct formula, no Taylor switchovers, for cross-checking near thresholds
double v_direct(const SurfaceParams& p, double u, double v) {
  const double a = p.a(), b = p.b(), ups = p.upsilon;
  const std::complex<double> zb = std::complex<double>(-u, v) * b;
  const std::complex<double> t2 = (std::exp(zb) - std::exp((1.0 - ups) * zb)) / (ups * zb);
  const double t3 = (std::exp(-u * a) - std::exp(-u * b)) / ((u * ups * b) * (u * ups * b));
  return 1.0 + std::exp(-2.0 * u) * std::norm(t2) + (1.0 - std::exp(-2.0 * u)) * t3;
}

}  // namespace

TEST_CASE("surface limits and positivity") {
  SurfaceParams p;
  p.upsilon = 0.48;
  const double expect = 2.0 + 2.0 / (0.48 * (1.0 - 5.0 * p.theta));
  CHECK(v_surface(p, 0.0, 0.0) == doctest::Approx(expect).epsilon(1e-10));
  for (double u = -20.0; u <= 50.0; u += 1.0)
    for (double v = 0.0; v <= 50.0; v += 2.5)
      CHECK(v_surface(p, u, v) >= 1.0 - 1e-14);
  CHECK_THROWS_AS(([] {
                    SurfaceParams bad;
                    bad.upsilon = 1.0;
                    validate(bad);
                  })(),
                  DomainError);
}

TEST_CASE("Taylor switchovers agree with the direct formula") {
  SurfaceParams p;
  p.upsilon = 0.64;
  // third-term switch at |u| = 1e-4
  for (double u : {0.9999e-4, -0.9999e-4, 1.0001e-4}) {
    CHECK(std::abs(v_surface(p, u, 5.0) - v_direct(p, u, 5.0)) < 1e-9);
  }
  // second-term switch at |(-u+iv) b| = 1e-4
  for (double v : {0.9999e-4, 1.0001e-4}) {
    CHECK(std::abs(v_surface(p, 3.0, v) - v_direct(p, 3.0, v)) < 1e-9);
  }
}

TEST_CASE("trivial decay bound for u >= 20") {
  SurfaceParams p;
  p.upsilon = 0.64;
  for (double u = 20.0; u <= 120.0; u += 7.0)
    for (double v : {0.0, 3.0, 30.0}) {
      const double s = v_surface(p, u, v);
      CHECK(s >= 1.0 - 1e-14);
      CHECK(s - 1.0 <= std::exp(-0.35 * u));
    }
}

TEST_CASE("derived window scale") {
  SurfaceParams p;
  p.upsilon = 0.48;
  p.theta = 1e-10;
  CHECK(derived_S(p) == doctest::Approx(M_PI / (2.0 * 0.52 * (1.0 - 20e-10))).epsilon(1e-14));
  CHECK(derived_S(p) == doctest::Approx(3.0207622).epsilon(1e-6));
}

TEST_CASE("central bound reference values") {
  SurfaceParams p48;
  p48.upsilon = 0.48;
  const auto c48 = central_bound(p48, 7.0);
  CHECK(std::abs(c48.value - 0.50405627) < 2e-4);
  CHECK(c48.err < 1e-4);

  SurfaceParams p64;
  p64.upsilon = 0.64;
  const auto c64 = central_bound(p64, 4.6);
  CHECK(std::abs(c64.value - 0.60933485) < 2e-4);
}

TEST_CASE("ladder reference values and tail") {
  const auto cfg = make_ladder_config(0.64, 4.6);
  const double refs[] = {0.21031120, 0.03757326, 0.00994955};
  for (int j = 1; j <= 3; ++j)
    CHECK(std::abs(ladder_bound(cfg, j).value - refs[j - 1]) < 2e-4);
  double mid = 0.0;
  for (int j = 4; j <= 20; ++j) mid += ladder_bound(cfg, j).value;
  CHECK(mid == doctest::Approx(0.00527441).epsilon(0.05));
  CHECK(tail_bound(cfg, 21, -1) < 1e-3);
  CHECK(tail_bound(cfg, 30, 30) < 1e-4);
  CHECK(tail_bound(cfg, 30, 30) > 0.0);
  CHECK_THROWS_AS(ladder_bound(cfg, 0), DomainError);
  CHECK_THROWS_AS(tail_bound(cfg, 5, -1), DomainError);
  // a short window pushes jd/2 below the trivial-bound floor
  auto tight = make_ladder_config(0.3, 4.6);
  CHECK_THROWS_AS(tail_bound(tight, tight.tail_start, -1), DomainError);
}

TEST_CASE("bounds decrease as R grows") {
  SurfaceParams p;
  p.upsilon = 0.55;
  double prev_central = 1e300;
  for (int i = 0; i < 5; ++i) {
    const double R = 3.0 + 1.5 * i;
    const double c = central_bound(p, R).value;
    CHECK(c < prev_central);
    prev_central = c;
  }
  // ladder regions depend on (Upsilon, d, j) only, and shrink as j grows
  const auto cfg = make_ladder_config(0.55, 4.6);
  double prev_ladder = 1e300;
  for (int j = 1; j <= 5; ++j) {
    const double l = ladder_bound(cfg, j).value;
    CHECK(l < prev_ladder);
    prev_ladder = l;
  }
}

TEST_CASE("tolerance robustness") {
  SurfaceParams p;
  p.upsilon = 0.48;
  specfun::QuadratureSpec loose, tight;
  loose.abs_tol = 1e-9;
  tight.abs_tol = 1e-11;
  const auto a = central_bound(p, 7.0, loose);
  const auto b = central_bound(p, 7.0, tight);
  CHECK(std::abs(a.value - b.value) <= a.err + b.err + 1e-12);
}

TEST_CASE("report totals and flags") {
  const auto cfg = make_ladder_config(0.64, 4.6);
  const auto report = superpositivity_proportion(cfg);
  CHECK(report.total <= 0.88);
  CHECK(report.proportion >= 0.12);
  CHECK(report.proportion == doctest::Approx(1.0 - report.total));
  CHECK(report.asymptotic_caveat);
  CHECK(report.regions.size() == static_cast<std::size_t>(cfg.j_exact_max) + 2);
  CHECK(report.regions.back().label == "tail");

  SurfaceParams p;
  p.upsilon = 0.48;
  const auto rz = realzero_proportion(p, 7.0);
  CHECK(rz.proportion >= 0.4959);
  CHECK(rz.regions.size() == 1);

  // degenerate parameters must be flagged consistently, never silently clipped
  SurfaceParams worst;
  worst.upsilon = 0.94;
  const auto weak = realzero_proportion(worst, 1.0);
  CHECK(weak.non_informative == (weak.total > 1.0));
  CHECK(weak.total > rz.total);
}

TEST_CASE("report serialization is deterministic") {
  SurfaceParams p;
  p.upsilon = 0.48;
  set_max_threads(1);
  const auto once = realzero_proportion(p, 7.0).to_json();
  set_max_threads(4);
  const auto twice = realzero_proportion(p, 7.0).to_json();
  set_max_threads(0);
  CHECK(once == twice);
  CHECK(once.find("\"objective\"") != std::string::npos);
  CHECK(once.find("\"asymptotic_caveat\": true") != std::string::npos);
  const auto table = realzero_proportion(p, 7.0).to_table();
  CHECK(table.find("central") != std::string::npos);
}

TEST_CASE("optimizer consistency") {
  SearchBox box;
  box.upsilon_lo = 0.48;
  box.upsilon_hi = 0.48;
  box.r_lo = 7.0;
  box.r_hi = 7.0;
  const auto r = optimize(Objective::RealZero, box, 1);
  CHECK(r.upsilon == doctest::Approx(0.48));
  CHECK(r.R == doctest::Approx(7.0));
  CHECK(r.report.proportion >= 0.4959);
  CHECK(r.evaluations >= 1);

  SearchBox wide;
  wide.upsilon_lo = 0.40;
  wide.upsilon_hi = 0.56;
  wide.r_lo = 5.0;
  wide.r_hi = 9.0;
  const auto best = optimize(Objective::RealZero, wide, 30);
  CHECK(best.report.proportion >= r.report.proportion - 1e-9);
  CHECK_THROWS_AS(optimize(Objective::RealZero, SearchBox{0.9, 0.2, 2.0, 5.0}, 10), DomainError);
}

TEST_CASE("selberg floors scale as 1:2:3") {
  // a lambda(1)-only table keeps the L side trivial while exercising the plumbing
  CoefficientTable one;
  one.q = 11;
  one.lambda.assign(450, 0.0);
  one.lambda[0] = 1.0;
  mollifier::MollifierProfile profile(0.48, 3.3);
  afe::SpectralWeight w(5);
  SurfaceParams p;
  p.upsilon = 0.48;
  // R/log q must stay inside the evaluable strip at q = 11
  const auto window = SelbergWindow::from(p, 1.5);
  const auto si = selberg_integrals(profile, w, one, window);
  CHECK(si.floor_odd > 0.0);
  CHECK(si.floor_even_dip == doctest::Approx(2.0 * si.floor_odd).epsilon(1e-13));
  CHECK(si.floor_odd_dip == doctest::Approx(3.0 * si.floor_odd).epsilon(1e-13));
  CHECK(std::isfinite(si.i1));
  CHECK(std::isfinite(si.i2));
  CHECK(std::isfinite(si.i3));
  // the floor vanishes as R -> 0+
  const auto tiny = selberg_integrals(profile, w, one, SelbergWindow::from(p, 1e-6));
  CHECK(tiny.floor_odd < 1e-5);
}
