#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "superpos/afe.hpp"
#include "superpos/quadrature.hpp"

namespace superpos::moments {

using Complex = std::complex<double>;

struct MomentRequest {
  std::int64_t q = 0;
  std::int64_t ell = 1;
  double delta = 0.0;
  double t = 0.0;
  std::int64_t c_max = 0;  // 0 selects the documented default
  specfun::QuadratureSpec spec{};
};

struct PeterssonResult {
  double value = 0.0;
  double tail_bound = 0.0;  // Weil + J1 majorant beyond c_max
  std::int64_t c_max = 0;   // truncation actually used
  bool capped = false;      // hard cap reached before the majorant target
};

/// Analytic majorant for the dropped tail:
/// 4 pi^2 sqrt(mn) sum_{c > c_max, q|c} tau(c) gcd(m,n,c)^{1/2} c^{-3/2},
/// with tau(c) replaced by 8 c^{1/4}.
double tail_majorant(std::int64_t m, std::int64_t n, std::int64_t q, std::int64_t c_max);

/// Smallest multiple of q whose majorant is below 1e-3; hard cap 1e6.
std::int64_t default_c_max(std::int64_t m, std::int64_t n, std::int64_t q);

/// delta_{m,n} - 2 pi sum_{c = q, 2q, ... <= c_max} S(m,n;c)/c J1(4 pi sqrt(mn)/c).
/// c_max = 0 selects default_c_max.
PeterssonResult petersson_delta(std::int64_t m, std::int64_t n, std::int64_t q,
                                std::int64_t c_max = 0);

struct MomentResult {
  double value = 0.0;
  double error_estimate = 0.0;  // quadrature + series truncation budget
  double tail_bound = 0.0;      // trace-formula majorant (numeric side only)
};

/// Kloosterman-side evaluation of sum_f omega_f lambda_f(ell) |L(1/2+delta+it,f)|^2:
/// (q/4pi^2)^{-delta} sum_n eta_it(n) n^{-1/2} V_{delta,t}(4pi^2 n/q) petersson_delta(ell,n).
/// Uses no eigenform data. c_max = 0 selects min(120 q, 1e6).
MomentResult twisted_second_moment_numeric(const MomentRequest& req,
                                           const afe::SpectralWeight& weight);

/// Two-term main term
/// zeta_q(1+2delta) eta_it(ell)/ell^{1/2+delta}
///   + zeta_q(1-2delta) eta_it(ell)/ell^{1/2-delta} [H_t(-delta)/H_t(delta)] (q/4pi^2)^{-2delta};
/// delta = 0 evaluated as the average of delta = +-1e-6.
MomentResult twisted_second_moment_mainterm(const MomentRequest& req,
                                            const afe::SpectralWeight& weight);

/// Closed form for sum_d eta_nu(d^2 ell1 ell2) / d^s (ell1, ell2 squarefree):
/// [zeta(s) zeta(s+2nu) zeta(s-2nu) / zeta(2s)]
///   prod_{p | ell1 ell2/(ell1,ell2)^2} eta_nu(p)/(1+p^{-s})
///   prod_{p | (ell1,ell2)} (eta_nu(p^2)-p^{-s})/(1+p^{-s}).
/// Requires Re(s +- 2nu) > 1.
Complex dirichlet_eta_square(Complex nu, std::int64_t ell1, std::int64_t ell2, Complex s);

/// Truncated series sum_{d <= n_terms}; agrees with the closed form within the
/// geometric tail of the series.
Complex dirichlet_eta_square_series(Complex nu, std::int64_t ell1, std::int64_t ell2, Complex s,
                                    std::int64_t n_terms);

enum class OracleKind { Lemma42, Lemma64 };

using MultiplicativeFn = std::function<double(std::int64_t)>;

struct OracleReport {
  bool passed = true;
  std::int64_t first_violation_m = 0;
  std::int64_t first_violation_n = 0;
  double max_residual = 0.0;
  std::int64_t pairs_checked = 0;
};

/// Builds F by direct convolution from the component callbacks and checks
/// F(mn) = F(m) F(n) on every coprime pair with mn <= k_max.
/// Lemma42 expects components {h, f, g}:
///   F(k) = sum_{k=rmn} mu^2(rm) mu^2(rn) h(r) f(m) g(n).
/// Lemma64 expects components {h, f1, f2, g1, g2, t}:
///   F(k) = sum_{k=r l1 n1 l2 n2} mu^2(r l1 n1) mu^2(r l2 n2)
///          h(r) f1(l1) f2(l2) g1(n1) g2(n2) prod_{p|(l1,l2)} t(p).
OracleReport multiplicativity_oracle(OracleKind kind,
                                     const std::vector<MultiplicativeFn>& components,
                                     std::int64_t k_max);

struct SweepRow {
  std::int64_t q = 0;
  std::int64_t ell = 1;
  double delta = 0.0;
  double t = 0.0;
  double numeric = 0.0;
  double mainterm = 0.0;
  double residual = 0.0;
  double tail_bound = 0.0;
};

std::vector<SweepRow> moment_sweep(const std::vector<std::int64_t>& qs, std::int64_t ell,
                                   double delta, double t, const afe::SpectralWeight& weight,
                                   const specfun::QuadratureSpec& spec, std::int64_t c_max = 0);

/// CSV with header (q, ell, delta, t, numeric, mainterm, residual, tail_bound).
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace superpos::moments
