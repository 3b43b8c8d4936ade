#include "superpos/moments.hpp"

#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "superpos/arith.hpp"
#include "superpos/errors.hpp"
#include "superpos/specfun.hpp"

using namespace superpos;
using namespace superpos::moments;
using Complex = std::complex<double>;

TEST_CASE("petersson_delta matches a direct Kloosterman sum") {
  const std::int64_t q = 11, c_max = 20 * q;
  for (auto [m, n] : {std::pair<std::int64_t, std::int64_t>{1, 1}, {1, 2}, {3, 5}}) {
    double direct = (m == n) ? 1.0 : 0.0;
    for (std::int64_t c = q; c <= c_max; c += q)
      direct -= 2.0 * M_PI * arith::kloosterman(m, n, c) / static_cast<double>(c) *
                specfun::bessel_j1(4.0 * M_PI * std::sqrt(static_cast<double>(m * n)) /
                                   static_cast<double>(c));
    const auto r = petersson_delta(m, n, q, c_max);
    CHECK(r.value == doctest::Approx(direct).epsilon(1e-10));
    CHECK(r.c_max == c_max);
    CHECK(r.tail_bound > 0.0);
  }
}

TEST_CASE("tail majorant honesty and monotonicity") {
  CHECK(tail_majorant(1, 1, 101, 101) > tail_majorant(1, 1, 101, 100 * 101));
  std::mt19937 rng(99);
  std::uniform_int_distribution<std::int64_t> pick_mn(1, 12);
  const std::int64_t qs[] = {11, 13, 17};
  for (int i = 0; i < 9; ++i) {
    const std::int64_t q = qs[i % 3];
    const std::int64_t m = pick_mn(rng), n = pick_mn(rng);
    const auto half = petersson_delta(m, n, q, 400 * q);
    const auto full = petersson_delta(m, n, q, 800 * q);
    CHECK(std::abs(full.value - half.value) <= half.tail_bound + 1e-12);
  }
  CHECK_THROWS_AS(petersson_delta(0, 1, 11), DomainError);
  CHECK_THROWS_AS(petersson_delta(1, 1, 10), DomainError);
}

TEST_CASE("default_c_max hits the hard cap for tiny levels") {
  // the Weil majorant never reaches 1e-3 below the cap at q = 11
  const std::int64_t c = default_c_max(1, 1, 11);
  CHECK(c == 11 * (1000000 / 11));
  CHECK(tail_majorant(1, 1, 11, c) > 1e-3);
  const auto r = petersson_delta(1, 1, 11, 400 * 11);
  CHECK(r.capped);
  CHECK_THROWS_AS(petersson_delta(1, 1, 11, 2000000), DomainError);
}

TEST_CASE("mainterm composition, delta limit, ell scaling") {
  afe::SpectralWeight w(5);
  MomentRequest req;
  req.q = 101;
  req.delta = 0.05;
  req.t = 0.0;
  const auto r = twisted_second_moment_mainterm(req, w);
  const double zp = specfun::zeta_q(Complex(1.1, 0.0), 101).real();
  const double zm = specfun::zeta_q(Complex(0.9, 0.0), 101).real();
  const double hratio = (afe::h_t(w, Complex(-0.05, 0.0), 0.0) /
                         afe::h_t(w, Complex(0.05, 0.0), 0.0))
                            .real();
  const double expected =
      zp + zm * hratio * std::pow(101.0 / (4.0 * M_PI * M_PI), -0.1);
  CHECK(r.value == doctest::Approx(expected).epsilon(1e-12));

  MomentRequest req2 = req;
  req2.ell = 2;
  const auto r2 = twisted_second_moment_mainterm(req2, w);
  const double expected2 = zp * arith::eta_imag(0.0, 2) / std::pow(2.0, 0.55) +
                           zm * arith::eta_imag(0.0, 2) / std::pow(2.0, 0.45) * hratio *
                               std::pow(101.0 / (4.0 * M_PI * M_PI), -0.1);
  CHECK(r2.value == doctest::Approx(expected2).epsilon(1e-12));

  MomentRequest rz = req;
  rz.delta = 0.0;
  const auto z = twisted_second_moment_mainterm(rz, w);
  MomentRequest ra = req, rb = req;
  ra.delta = 1e-6;
  rb.delta = -1e-6;
  const double avg = 0.5 * (twisted_second_moment_mainterm(ra, w).value +
                            twisted_second_moment_mainterm(rb, w).value);
  CHECK(z.value == doctest::Approx(avg).epsilon(1e-10));
  CHECK(std::isfinite(z.value));
}

TEST_CASE("numeric moment approaches the main term") {
  afe::SpectralWeight w(5);
  MomentRequest req;
  req.q = 101;
  req.delta = 0.05;
  req.t = 0.0;
  const auto numeric = twisted_second_moment_numeric(req, w);
  const auto main = twisted_second_moment_mainterm(req, w);
  CHECK(std::isfinite(numeric.value));
  // the q^{-1/2+eps} correction is ~0.2 at q = 101 once the c-sum converges
  CHECK(std::abs(numeric.value - main.value) < 0.3);
}

TEST_CASE("dirichlet_eta_square closed form vs series") {
  // nu = 0, ell = 1: zeta(2)^3 / zeta(4)
  const double base = dirichlet_eta_square(Complex(0, 0), 1, 1, Complex(2, 0)).real();
  const double z2 = specfun::zeta(Complex(2, 0)).real();
  const double z4 = specfun::zeta(Complex(4, 0)).real();
  CHECK(base == doctest::Approx(z2 * z2 * z2 / z4).epsilon(1e-12));
  const double base_series =
      dirichlet_eta_square_series(Complex(0, 0), 1, 1, Complex(2, 0), 1000000).real();
  CHECK(std::abs(base - base_series) < 1e-4);

  // local factors at s = 3: symmetric-difference primes and a gcd prime
  const Complex s3(3.0, 0.0);
  const Complex nu(0.07, 0.21);
  const Complex plain = dirichlet_eta_square(nu, 1, 1, s3);
  const Complex split = dirichlet_eta_square(nu, 2, 3, s3);
  const Complex f2 = arith::eta(nu, 2) / (1.0 + std::pow(2.0, -3.0));
  const Complex f3 = arith::eta(nu, 3) / (1.0 + std::pow(3.0, -3.0));
  CHECK(std::abs(split - plain * f2 * f3) < 1e-12);
  const Complex both = dirichlet_eta_square(nu, 2, 2, s3);
  const Complex g2 = (arith::eta(nu, 4) - std::pow(2.0, -3.0)) / (1.0 + std::pow(2.0, -3.0));
  CHECK(std::abs(both - plain * g2) < 1e-12);

  // random squarefree pairs against the truncated series
  std::mt19937 rng(4242);
  std::uniform_int_distribution<std::int64_t> pick_ell(1, 30);
  std::uniform_real_distribution<double> pick_s(3.0, 4.5), pick_nu(-0.3, 0.3);
  int done = 0;
  while (done < 12) {
    const std::int64_t l1 = pick_ell(rng), l2 = pick_ell(rng);
    if (!arith::is_squarefree(l1) || !arith::is_squarefree(l2)) continue;
    const Complex s(pick_s(rng), pick_s(rng) - 3.5);
    const Complex v(pick_nu(rng), pick_nu(rng));
    const Complex closed = dirichlet_eta_square(v, l1, l2, s);
    const Complex series = dirichlet_eta_square_series(v, l1, l2, s, 200000);
    // truncation tail at Re(s) = 3, |Re(nu)| = 0.3 is ~ (2e5)^{-1.4} ~ 4e-8
    CHECK(std::abs(closed - series) < 2e-7);
    ++done;
  }

  CHECK_THROWS_AS(dirichlet_eta_square(Complex(0, 0), 4, 1, s3), DomainError);
  CHECK_THROWS_AS(dirichlet_eta_square(Complex(0.6, 0), 1, 1, Complex(2, 0)), DomainError);
}

TEST_CASE("multiplicativity oracle") {
  const MultiplicativeFn one = [](std::int64_t) { return 1.0; };
  const auto r42 = multiplicativity_oracle(OracleKind::Lemma42, {one, one, one}, 500);
  CHECK(r42.passed);
  CHECK(r42.pairs_checked > 0);

  // completely multiplicative components stay multiplicative after convolution
  const MultiplicativeFn cm = [](std::int64_t n) {
    double v = 1.0;
    for (const auto& [p, e] : arith::factorize(n).prime_powers)
      v *= std::pow(1.0 / (1.0 + static_cast<double>(p)), e);
    return v;
  };
  const auto r42b = multiplicativity_oracle(OracleKind::Lemma42, {cm, one, cm}, 400);
  CHECK(r42b.passed);
  const auto r64 =
      multiplicativity_oracle(OracleKind::Lemma64, {one, cm, cm, one, cm, one}, 300);
  CHECK(r64.passed);

  // negative control: a component with a non-multiplicative bump
  const MultiplicativeFn broken = [&](std::int64_t n) {
    return cm(n) + (n == 6 ? 0.5 : 0.0);
  };
  const auto bad = multiplicativity_oracle(OracleKind::Lemma42, {one, broken, one}, 200);
  CHECK_FALSE(bad.passed);
  CHECK(bad.max_residual > 1e-9);
  CHECK(bad.first_violation_m * bad.first_violation_n > 0);

  CHECK_THROWS_AS(multiplicativity_oracle(OracleKind::Lemma42, {one, one}, 100), DomainError);
  CHECK_THROWS_AS(multiplicativity_oracle(OracleKind::Lemma64, {one, one, one}, 100), DomainError);
}

TEST_CASE("sweep csv shape") {
  afe::SpectralWeight w(5);
  specfun::QuadratureSpec spec;
  const auto rows = moment_sweep({101}, 1, 0.05, 0.0, w, spec, 40 * 101);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].residual == doctest::Approx(std::abs(rows[0].numeric - rows[0].mainterm)));
  const auto csv = sweep_csv(rows);
  CHECK(csv.find("q,ell,delta,t,numeric,mainterm,residual,tail_bound") != std::string::npos);
  CHECK(csv.find("101") != std::string::npos);
}
