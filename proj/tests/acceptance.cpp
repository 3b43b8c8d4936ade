// Acceptance gate: one line per criterion, exit status = number of failures.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <complex>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "superpos/afe.hpp"
#include "superpos/arith.hpp"
#include "superpos/coefficients.hpp"
#include "superpos/errors.hpp"
#include "superpos/mollifier.hpp"
#include "superpos/moments.hpp"
#include "superpos/quadrature.hpp"
#include "superpos/specfun.hpp"
#include "superpos/zerodensity.hpp"

using namespace superpos;
using Complex = std::complex<double>;

namespace {

int g_failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("criterion %d %-24s %s  %s\n", id, name, pass ? "PASS" : "FAIL", detail.c_str());
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  zerodensity::SurfaceParams p;
  p.upsilon = 0.48;
  const auto r = zerodensity::realzero_proportion(p, 7.0);
  const double dt = seconds_since(t0);
  const bool pass =
      std::abs(r.total - 0.5041) <= 1e-3 && r.proportion >= 0.4959 && dt <= 30.0;
  report(1, "thm2-bound", pass,
         fmt("bound=%.10g proportion=%.10g (%.1fs)", r.total, r.proportion, dt));
}

void criterion_2() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto cfg = zerodensity::make_ladder_config(0.64, 4.6);
  const auto r = zerodensity::superpositivity_proportion(cfg);
  const double dt = seconds_since(t0);
  const double refs[] = {0.60934, 0.21032, 0.03758, 0.00995};
  bool pass = true;
  for (int j = 0; j <= 3; ++j)
    pass = pass && std::abs(r.regions[static_cast<std::size_t>(j)].bound - refs[j]) <= 1e-3;
  double mid = 0.0;
  for (int j = 4; j <= 20; ++j) mid += r.regions[static_cast<std::size_t>(j)].bound;
  const double tail = r.regions.back().bound;
  pass = pass && mid <= 0.00528 + 5e-4 && tail <= 0.001 && r.total <= 0.88 &&
         r.proportion >= 0.12 && dt <= 120.0;
  report(2, "thm1-ladder", pass,
         fmt("j0=%.6g j1=%.6g j2=%.6g j3=%.6g mid=%.4g tail=%.3g total=%.6g prop=%.6g (%.1fs)",
             r.regions[0].bound, r.regions[1].bound, r.regions[2].bound, r.regions[3].bound,
             mid, tail, r.total, r.proportion, dt));
}

void criterion_3() {
  bool pass = true;
  std::string detail;
  for (std::int64_t q : {101, 199, 499}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto diag = moments::petersson_delta(1, 1, q);
    const auto off = moments::petersson_delta(1, 2, q);
    const double dt = seconds_since(t0);
    const bool ok =
        diag.value >= 0.99 && diag.value <= 1.01 && std::abs(off.value) <= 1e-2 && dt <= 60.0;
    pass = pass && ok;
    detail += fmt("q=%lld diag=%.6g off=%.3g (%.1fs) ", static_cast<long long>(q), diag.value,
                  off.value, dt);
  }
  report(3, "petersson-identity", pass, detail);
}

void criterion_4() {
  afe::SpectralWeight w(5);
  specfun::QuadratureSpec spec;
  const auto rows = moments::moment_sweep({101, 199, 499}, 1, 0.05, 0.0, w, spec);
  const bool pass = rows[0].residual > rows[1].residual && rows[1].residual > rows[2].residual;
  report(4, "moment-decay", pass,
         fmt("residuals %.4g > %.4g > %.4g", rows[0].residual, rows[1].residual,
             rows[2].residual));
}

void criterion_5() {
  afe::SpectralWeight w(5);
  specfun::QuadratureSpec spec;
  const std::int64_t q = 1000003;
  const double ys[] = {0.1, 0.05, 0.02, 0.01};
  const double deltas[] = {-0.1, -0.05, 0.05, 0.1};
  const double ts[] = {0.0, 0.7, 2.0};
  // single fitted C := max residual / y^N over the lattice; the residual floor
  // is the q^{-1-2s} Euler factor of zeta_q, ~3e-5 at this q and nearly flat
  // in y, so C is dominated by the smallest y and logged rather than assumed
  double calibrated_C = 0.0, worst_imag = 0.0, worst_resid = 0.0;
  for (double delta : deltas)
    for (double t : ts) {
      const double zp = specfun::zeta_q(Complex(1.0 + 2 * delta, 0.0), q).real();
      const double zm = specfun::zeta_q(Complex(1.0 - 2 * delta, 0.0), q).real();
      const double hr =
          (afe::h_t(w, Complex(-delta, 0.0), t) / afe::h_t(w, Complex(delta, 0.0), t)).real();
      const std::vector<double> yv(ys, ys + 4);
      const auto rs = afe::v_weight_batch(w, delta, t, yv, q, spec);
      for (std::size_t i = 0; i < yv.size(); ++i) {
        const double y = yv[i];
        const double expansion =
            zp * std::pow(y, -delta) + hr * zm * std::pow(y, delta);
        const double resid = std::abs(rs[i].value - expansion);
        worst_resid = std::max(worst_resid, resid);
        calibrated_C = std::max(calibrated_C, resid / std::pow(y, w.N()));
        worst_imag = std::max(worst_imag, rs[i].imag_residual);
      }
    }
  const bool pass = std::isfinite(calibrated_C) && worst_resid <= 1e-3 && worst_imag < 1e-8;
  report(5, "afe-expansion", pass,
         fmt("C=%.4g worst resid=%.3g max|Im|=%.3g", calibrated_C, worst_resid, worst_imag));
}

void criterion_6() {
  const double z2 = specfun::zeta(Complex(2, 0)).real();
  const double z4 = specfun::zeta(Complex(4, 0)).real();
  const double base = moments::dirichlet_eta_square(Complex(0, 0), 1, 1, Complex(2, 0)).real();
  bool pass = std::abs(base - z2 * z2 * z2 / z4) <= 1e-8;
  double worst = std::abs(base - z2 * z2 * z2 / z4);
  std::mt19937 rng(20240901);
  std::uniform_int_distribution<std::int64_t> pick_ell(1, 30);
  std::uniform_real_distribution<double> pick_s(3.0, 4.5), pick_nu(-0.3, 0.3);
  int done = 0;
  while (done < 30) {
    const std::int64_t l1 = pick_ell(rng), l2 = pick_ell(rng);
    if (!arith::is_squarefree(l1) || !arith::is_squarefree(l2)) continue;
    const Complex s(pick_s(rng), pick_s(rng) - 3.5);
    const Complex nu(pick_nu(rng), pick_nu(rng));
    const double resid = std::abs(moments::dirichlet_eta_square(nu, l1, l2, s) -
                                  moments::dirichlet_eta_square_series(nu, l1, l2, s, 200000));
    worst = std::max(worst, resid);
    pass = pass && resid <= 1e-8;
    ++done;
  }
  report(6, "eta-square-identity", pass, fmt("worst residual %.3g over 30 draws", worst));
}

void criterion_7() {
  using namespace superpos::mollifier;
  specfun::QuadratureSpec spec;
  spec.abs_tol = 1e-12;
  spec.rel_tol = 1e-12;
  bool pass = true;
  double worst_mellin = 0.0;

  MollifierProfile mp(0.62, 300.0);
  std::mt19937 rng(20240901);
  std::uniform_real_distribution<double> pick_re(0.2, 2.0), pick_im(-1.5, 1.5);
  for (int i = 0; i < 10; ++i) {
    const Complex w(pick_re(rng), pick_im(rng));
    const double A = mp.flat_end();
    const Complex flat = std::exp(w * std::log(A)) / w;
    const auto ramp = specfun::integrate_finite(
        std::function<Complex(double)>(
            [&](double x) { return taper(mp, x) * std::exp((w - 1.0) * std::log(x)); }),
        A, mp.M(), spec);
    worst_mellin = std::max(worst_mellin, std::abs(flat + ramp.value - psi(mp, w)));
  }
  pass = pass && worst_mellin <= 1e-8;

  Complex w(1e-4, 1e-4);
  for (int k = 0; k < 8; ++k) {
    pass = pass && std::abs(w * psi(mp, w) - 1.0) <= 4.0 * std::abs(w) * mp.log_M();
    w *= 0.5;
  }

  std::uniform_real_distribution<double> pick_u(0.1, 0.9), pick_m(10.0, 20000.0);
  for (int i = 0; i < 20 && pass; ++i) {
    MollifierProfile p(pick_u(rng), pick_m(rng));
    pass = pass && dirichlet_c(p, 1) == 1.0;
    for (std::int64_t n = 2; n <= 10000; ++n) {
      const double c = dirichlet_c(p, n);
      if (static_cast<double>(n) <= p.flat_end() && std::abs(c) > 1e-12) pass = false;
      if (std::abs(c) > static_cast<double>(arith::tau(n)) + 1e-12) pass = false;
    }
  }
  report(7, "mollifier-suite", pass, fmt("worst Mellin residual %.3g", worst_mellin));
}

void criterion_8() {
  bool pass = true;
  // Weil bound, reality (double return type), m <-> n symmetry
  double worst_ratio = 0.0;
  for (std::int64_t c = 1; c <= 500; ++c)
    for (auto [m, n] : {std::pair<std::int64_t, std::int64_t>{1, 1}, {1, 2}, {3, 7}, {5, 12}}) {
      const double s = arith::kloosterman(m, n, c);
      const double bound = static_cast<double>(arith::tau(c)) *
                           std::sqrt(static_cast<double>(arith::gcd64(arith::gcd64(m, n), c))) *
                           std::sqrt(static_cast<double>(c));
      worst_ratio = std::max(worst_ratio, std::abs(s) / bound);
      if (std::abs(s) > bound + 1e-6) pass = false;
      if (std::abs(s - arith::kloosterman(n, m, c)) > 1e-6) pass = false;
    }

  const moments::MultiplicativeFn one = [](std::int64_t) { return 1.0; };
  const moments::MultiplicativeFn cm = [](std::int64_t n) {
    double v = 1.0;
    for (const auto& [p, e] : arith::factorize(n).prime_powers)
      v *= std::pow(1.0 / (1.0 + static_cast<double>(p)), e);
    return v;
  };
  pass = pass && moments::multiplicativity_oracle(moments::OracleKind::Lemma42, {cm, one, cm}, 2000)
                     .passed;
  pass = pass && moments::multiplicativity_oracle(moments::OracleKind::Lemma64,
                                                  {one, cm, cm, one, cm, one}, 2000)
                     .passed;

  zerodensity::SurfaceParams sp;
  sp.upsilon = 0.64;
  for (double u = -20.0; u <= 50.0 && pass; u += 0.7)
    for (double v = 0.0; v <= 50.0; v += 1.3)
      if (zerodensity::v_surface(sp, u, v) < 1.0 - 1e-14) pass = false;

  for (int N = 1; N <= 8 && pass; ++N) {
    afe::SpectralWeight w(N);
    if (std::abs(w.G(Complex(0, 0)) - 1.0) > 1e-12) pass = false;
    for (int k = 1; k <= N; ++k)
      if (std::abs(w.G(Complex(static_cast<double>(k), 0))) > 1e-10) pass = false;
  }

  specfun::QuadratureSpec spec;
  const auto qr = specfun::integrate_finite(
      std::function<double(double)>([](double x) { return std::sin(3.0 * x); }), 0.0, 2.0, spec);
  const double truth = (1.0 - std::cos(6.0)) / 3.0;
  pass = pass && std::abs(qr.value - truth) <= 3.0 * std::max(qr.error_estimate, 1e-15);
  report(8, "property-suites", pass, fmt("worst Weil ratio %.3g", worst_ratio));
}

void criterion_9(const std::string& data_dir) {
  try {
    const auto table = ingest_coefficients(data_dir + "/level11.csv");
    afe::SpectralWeight w(5);
    specfun::QuadratureSpec spec;
    const auto scan = afe::triangle_scan(w, table, 0.05, spec);
    const auto sq = afe::afe_square(w, table, 0.0, 0.0, spec);
    double series = 0.0;
    const double root = std::sqrt(11.0);
    for (std::int64_t n = 1; n <= table.n_max(); ++n) {
      const double a_n = table(n) * std::sqrt(static_cast<double>(n));
      series += a_n / static_cast<double>(n) * std::exp(-2.0 * M_PI * n / root);
    }
    const double oracle = 2.0 * series;
    const double resid = std::abs(sq.value - oracle * oracle);
    const bool pass = scan.min_value > 0.0 && resid <= sq.error_estimate + 1e-3;
    report(9, "level11-pipeline", pass,
           fmt("scan min=%.6g at (%.2f,%.2f); |L|^2=%.6g oracle^2=%.6g resid=%.3g",
               scan.min_value, scan.argmin_beta, scan.argmin_gamma, sq.value, oracle * oracle,
               resid));
  } catch (const std::exception& e) {
    report(9, "level11-pipeline", false, std::string("exception: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::string data_dir = argc > 1 ? argv[1] : "tests/data";
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9(data_dir);
  std::printf("%d of 9 criteria passed\n", 9 - g_failures);
  return g_failures;
}
