#include "superpos/moments.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <unordered_map>
#include <vector>

#include "superpos/arith.hpp"
#include "superpos/errors.hpp"
#include "superpos/parallel.hpp"
#include "superpos/specfun.hpp"

namespace superpos::moments {

namespace {

using std::numbers::pi;
constexpr double kFourPiSq = 4.0 * pi * pi;
constexpr std::int64_t kHardCap = 1000000;
constexpr double kDeltaFloor = 1e-6;

// Units x in [1, (c-1)/2] with their inverses mod c, one batch inversion.
struct UnitPairs {
  std::vector<std::int64_t> x, xinv;
};

UnitPairs unit_pairs(std::int64_t c) {
  UnitPairs u;
  if (c <= 2) return u;
  // mark non-units by sieving the prime divisors of c (cheaper than a gcd per x)
  std::vector<char> coprime(static_cast<std::size_t>(c), 1);
  std::int64_t m = c;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    for (std::int64_t j = 0; j < c; j += p) coprime[static_cast<std::size_t>(j)] = 0;
    while (m % p == 0) m /= p;
  }
  if (m > 1)
    for (std::int64_t j = 0; j < c; j += m) coprime[static_cast<std::size_t>(j)] = 0;
  for (std::int64_t x = 1; 2 * x < c; ++x)
    if (coprime[static_cast<std::size_t>(x)]) u.x.push_back(x);
  const std::size_t k = u.x.size();
  u.xinv.resize(k);
  if (k == 0) return u;
  std::vector<std::int64_t> prefix(k);
  std::int64_t acc = 1;
  for (std::size_t i = 0; i < k; ++i) {
    acc = acc * u.x[i] % c;
    prefix[i] = acc;
  }
  std::int64_t inv = arith::inv_mod(acc, c);
  for (std::size_t i = k; i-- > 0;) {
    u.xinv[i] = (i == 0) ? inv : prefix[i - 1] * inv % c;
    inv = inv * u.x[i] % c;
  }
  return u;
}

double kloosterman_fast(std::int64_t m, std::int64_t n, std::int64_t c, const UnitPairs& u) {
  if (c == 1) return 1.0;
  if (c == 2) return ((m + n) % 2 == 0) ? 1.0 : -1.0;
  const double w = 2.0 * pi / static_cast<double>(c);
  const std::int64_t mr = ((m % c) + c) % c;
  const std::int64_t nr = ((n % c) + c) % c;
  double s = 0.0;
  for (std::size_t i = 0; i < u.x.size(); ++i) {
    const std::int64_t r = (mr * u.x[i] + nr * u.xinv[i]) % c;
    s += 2.0 * std::cos(w * static_cast<double>(r));
  }
  return s;
}

// Reused unit tables per prime-power modulus, capped so repeated large primes
// do not accumulate unbounded memory.
struct KloostermanCache {
  std::unordered_map<std::int64_t, UnitPairs> pairs;
  std::size_t stored = 0;
  static constexpr std::size_t kBudget = 4000000;
};

// S(m,n;c) via twisted multiplicativity over the prime powers of c:
// S(m,n;c) = prod_{p^e || c} S(m rbar, n rbar; p^e) with r = c/p^e;
// turns the O(phi(c)) unit loop into O(sum phi(p^e)).
double kloosterman_mult(std::int64_t m, std::int64_t n, std::int64_t c,
                        KloostermanCache& cache) {
  if (c <= 2) return kloosterman_fast(m, n, c, UnitPairs{});
  const auto fac = arith::factorize(c);
  double prod = 1.0;
  for (const auto& [p, e] : fac.prime_powers) {
    std::int64_t pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    const std::int64_t r = c / pe;
    const std::int64_t rb = (r == 1) ? 1 : arith::inv_mod(r % pe, pe);
    const std::int64_t mm = (m % pe) * rb % pe;
    const std::int64_t nn = (n % pe) * rb % pe;
    auto it = cache.pairs.find(pe);
    if (it == cache.pairs.end()) {
      UnitPairs u = unit_pairs(pe);
      if (cache.stored + u.x.size() > KloostermanCache::kBudget) {
        prod *= kloosterman_fast(mm, nn, pe, u);
        continue;
      }
      cache.stored += u.x.size();
      it = cache.pairs.emplace(pe, std::move(u)).first;
    }
    prod *= kloosterman_fast(mm, nn, pe, it->second);
  }
  return prod;
}

bool is_prime(std::int64_t q) {
  if (q < 2) return false;
  for (std::int64_t p = 2; p * p <= q; ++p)
    if (q % p == 0) return false;
  return true;
}

void check_petersson_args(std::int64_t m, std::int64_t n, std::int64_t q, std::int64_t c_max) {
  if (m < 1 || n < 1) throw DomainError("petersson_delta: m, n must be >= 1");
  if (!is_prime(q)) throw DomainError("petersson_delta: q must be prime");
  if (c_max < q) throw DomainError("petersson_delta: c_max must be >= q");
}

}  // namespace

double tail_majorant(std::int64_t m, std::int64_t n, std::int64_t q, std::int64_t c_max) {
  check_petersson_args(m, n, q, c_max);
  // sum_{k > k0} (kq)^{-5/4} <= q^{-5/4} * 4 k0^{-1/4}
  const double k0 = std::floor(static_cast<double>(c_max) / static_cast<double>(q));
  const double g = static_cast<double>(arith::gcd64(m, n));
  return kFourPiSq * std::sqrt(static_cast<double>(m) * static_cast<double>(n)) * 8.0 *
         std::sqrt(g) * std::pow(static_cast<double>(q), -1.25) * 4.0 * std::pow(k0, -0.25);
}

std::int64_t default_c_max(std::int64_t m, std::int64_t n, std::int64_t q) {
  check_petersson_args(m, n, q, q);
  const std::int64_t k_cap = std::max<std::int64_t>(1, kHardCap / q);
  for (std::int64_t k = 1; k <= k_cap; k *= 2)
    if (tail_majorant(m, n, q, k * q) < 1e-3) {
      std::int64_t lo = std::max<std::int64_t>(1, k / 2), hi = k;
      while (lo < hi) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (tail_majorant(m, n, q, mid * q) < 1e-3)
          hi = mid;
        else
          lo = mid + 1;
      }
      return lo * q;
    }
  return k_cap * q;
}

PeterssonResult petersson_delta(std::int64_t m, std::int64_t n, std::int64_t q,
                                std::int64_t c_max) {
  if (c_max == 0) c_max = default_c_max(m, n, q);
  check_petersson_args(m, n, q, c_max);
  if (c_max > kHardCap) throw DomainError("petersson_delta: c_max exceeds the 1e6 hard cap");

  const std::int64_t k_top = c_max / q;
  const double arg_num = 4.0 * pi * std::sqrt(static_cast<double>(m) * static_cast<double>(n));
  KloostermanCache cache;
  double csum = 0.0;
  for (std::int64_t k = 1; k <= k_top; ++k) {
    const std::int64_t c = k * q;
    csum += kloosterman_mult(m, n, c, cache) / static_cast<double>(c) *
            specfun::bessel_j1(arg_num / static_cast<double>(c));
  }

  PeterssonResult out;
  out.value = (m == n ? 1.0 : 0.0) - 2.0 * pi * csum;
  out.tail_bound = tail_majorant(m, n, q, k_top * q);
  out.c_max = k_top * q;
  out.capped = out.tail_bound >= 1e-3 * std::max(1.0, std::abs(out.value));
  return out;
}

namespace {

std::int64_t moment_c_max(const MomentRequest& req) {
  if (req.c_max != 0) return req.c_max;
  // below ~480q the off-diagonal partial sums still wander by ~0.05
  return std::min<std::int64_t>(480 * req.q, kHardCap);
}

void check_moment_request(const MomentRequest& req) {
  if (!is_prime(req.q)) throw DomainError("moments: q must be prime");
  if (req.ell < 1) throw DomainError("moments: ell must be >= 1");
}

}  // namespace

MomentResult twisted_second_moment_numeric(const MomentRequest& req,
                                           const afe::SpectralWeight& weight) {
  check_moment_request(req);
  const std::int64_t c_max = moment_c_max(req);
  if (c_max < req.q) throw DomainError("moments: c_max must be >= q");
  const double y_max = 1600.0;
  const double qd = static_cast<double>(req.q);
  const auto n_top = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::floor(y_max * qd / kFourPiSq)));

  std::vector<double> ys(static_cast<std::size_t>(n_top));
  for (std::int64_t n = 1; n <= n_top; ++n)
    ys[static_cast<std::size_t>(n - 1)] = kFourPiSq * static_cast<double>(n) / qd;
  const auto vs = afe::v_weight_batch(weight, req.delta, req.t, ys, req.q, req.spec);

  std::vector<double> wn(static_cast<std::size_t>(n_top));
  std::vector<double> wn_err(static_cast<std::size_t>(n_top));
  for (std::int64_t n = 1; n <= n_top; ++n) {
    const double base = arith::eta_imag(req.t, n) / std::sqrt(static_cast<double>(n));
    wn[static_cast<std::size_t>(n - 1)] = base * vs[static_cast<std::size_t>(n - 1)].value;
    wn_err[static_cast<std::size_t>(n - 1)] =
        std::abs(base) * vs[static_cast<std::size_t>(n - 1)].error_estimate;
  }

  const std::int64_t k_top = c_max / req.q;
  // S(ell,n;c) = sum over units x of e((ell x + n xbar)/c); summing first over
  // n in each residue class a = n mod c turns the inner sum into one DFT:
  // sum_n w_n J1_n S = sum_x e(ell x/c) B(xbar), B(u) = sum_a g_a e(au/c).
  const double arg_num = 4.0 * pi * std::sqrt(static_cast<double>(req.ell));
  std::vector<double> g;
  const auto fft_len = static_cast<std::size_t>(c_max);
  double* in = fftw_alloc_real(fft_len);
  auto* fft = fftw_alloc_complex(fft_len / 2 + 1);
  double offdiag = 0.0;
  for (std::int64_t k = 1; k <= k_top; ++k) {
    const std::int64_t c = k * req.q;
    const double cd = static_cast<double>(c);
    if (c <= 2) {
      double sum = 0.0;
      for (std::int64_t n = 1; n <= n_top; ++n) {
        const double sign = (c == 2 && (req.ell + n) % 2 != 0) ? -1.0 : 1.0;
        sum += sign * wn[static_cast<std::size_t>(n - 1)] *
               specfun::bessel_j1(arg_num * std::sqrt(static_cast<double>(n)) / cd);
      }
      offdiag += sum / cd;
      continue;
    }
    g.assign(static_cast<std::size_t>(c), 0.0);
    for (std::int64_t n = 1; n <= n_top; ++n)
      g[static_cast<std::size_t>(n % c)] +=
          wn[static_cast<std::size_t>(n - 1)] *
          specfun::bessel_j1(arg_num * std::sqrt(static_cast<double>(n)) / cd);
    fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(c), in, fft, FFTW_ESTIMATE);
    std::copy(g.begin(), g.end(), in);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    const auto u = unit_pairs(c);
    const std::int64_t ellr = ((req.ell % c) + c) % c;
    const double w = 2.0 * pi / cd;
    double sum = 0.0;
    // pair x with c - x: together they contribute 2 Re(e(ell x/c) B(xbar))
    for (std::size_t j = 0; j < u.x.size(); ++j) {
      const std::int64_t xb = u.xinv[j];
      const auto* pt = fft[static_cast<std::size_t>(2 * xb <= c ? xb : c - xb)];
      const double re = pt[0];
      const double im = (2 * xb <= c) ? -pt[1] : pt[1];  // conj(DFT[u]) when u <= c/2
      const double th = w * static_cast<double>(ellr * u.x[j] % c);
      sum += 2.0 * (re * std::cos(th) - im * std::sin(th));
    }
    offdiag += sum / cd;
  }
  fftw_free(in);
  fftw_free(fft);

  const double diag = (req.ell <= n_top) ? wn[static_cast<std::size_t>(req.ell - 1)] : 0.0;
  const double d_eff = (req.delta == 0.0) ? kDeltaFloor : req.delta;
  const double prefactor = std::exp(-d_eff * std::log(qd / kFourPiSq));

  MomentResult out;
  out.value = prefactor * (diag - 2.0 * pi * offdiag);
  double err = 0.0;
  for (std::int64_t n = 1; n <= n_top; ++n) err += wn_err[static_cast<std::size_t>(n - 1)];
  const auto& last = vs.back();
  err += 2.0 * (std::abs(last.value) + last.error_estimate +
                std::pow(y_max, -weight.N())) / std::sqrt(ys.back());
  out.error_estimate = prefactor * err;
  double tail = 0.0;
  for (std::int64_t n = 1; n <= n_top; ++n)
    tail += std::abs(arith::eta_imag(req.t, n) / std::sqrt(static_cast<double>(n)) *
                     vs[static_cast<std::size_t>(n - 1)].value) *
            tail_majorant(req.ell, n, req.q, c_max);
  out.tail_bound = prefactor * tail;
  return out;
}

namespace {

double mainterm_at(double delta, double t, std::int64_t ell, std::int64_t q,
                   const afe::SpectralWeight& weight, double* imag_out) {
  const double qd = static_cast<double>(q);
  const double eta_ell = arith::eta_imag(t, ell);
  const double ell_d = static_cast<double>(ell);
  const Complex h_ratio = afe::h_t(weight, -delta, t) / afe::h_t(weight, delta, t);
  const Complex term1 =
      specfun::zeta_q(1.0 + 2.0 * delta, q) * eta_ell / std::pow(ell_d, 0.5 + delta);
  const Complex term2 = specfun::zeta_q(1.0 - 2.0 * delta, q) * eta_ell /
                        std::pow(ell_d, 0.5 - delta) * h_ratio *
                        std::exp(-2.0 * delta * std::log(qd / kFourPiSq));
  const Complex total = term1 + term2;
  if (imag_out) *imag_out = std::abs(total.imag());
  return total.real();
}

}  // namespace

MomentResult twisted_second_moment_mainterm(const MomentRequest& req,
                                            const afe::SpectralWeight& weight) {
  check_moment_request(req);
  MomentResult out;
  double imag = 0.0;
  if (req.delta == 0.0) {
    double i1 = 0.0, i2 = 0.0;
    const double a = mainterm_at(kDeltaFloor, req.t, req.ell, req.q, weight, &i1);
    const double b = mainterm_at(-kDeltaFloor, req.t, req.ell, req.q, weight, &i2);
    out.value = 0.5 * (a + b);
    imag = std::max(i1, i2);
    out.error_estimate = imag + std::abs(a - b);
  } else {
    out.value = mainterm_at(req.delta, req.t, req.ell, req.q, weight, &imag);
    out.error_estimate = imag + 1e-12 * std::abs(out.value);
  }
  return out;
}

namespace {

void check_eta_square_args(Complex nu, std::int64_t ell1, std::int64_t ell2, Complex s) {
  if (ell1 < 1 || ell2 < 1 || !arith::is_squarefree(ell1) || !arith::is_squarefree(ell2))
    throw DomainError("dirichlet_eta_square: ell1, ell2 must be squarefree positive integers");
  if (!(s.real() - 2.0 * std::abs(nu.real()) > 1.0))
    throw DomainError("dirichlet_eta_square: requires Re(s +- 2 nu) > 1");
}

}  // namespace

Complex dirichlet_eta_square(Complex nu, std::int64_t ell1, std::int64_t ell2, Complex s) {
  check_eta_square_args(nu, ell1, ell2, s);
  Complex value = specfun::zeta(s) * specfun::zeta(s + 2.0 * nu) * specfun::zeta(s - 2.0 * nu) /
                  specfun::zeta(2.0 * s);
  const std::int64_t g = arith::gcd64(ell1, ell2);
  for (const auto& [p, e] : arith::factorize(ell1 * ell2 / (g * g)).prime_powers) {
    (void)e;
    const Complex p_s = std::exp(-s * std::log(static_cast<double>(p)));
    value *= arith::eta(nu, p) / (1.0 + p_s);
  }
  for (const auto& [p, e] : arith::factorize(g).prime_powers) {
    (void)e;
    const Complex p_s = std::exp(-s * std::log(static_cast<double>(p)));
    value *= (arith::eta(nu, p * p) - p_s) / (1.0 + p_s);
  }
  return value;
}

Complex dirichlet_eta_square_series(Complex nu, std::int64_t ell1, std::int64_t ell2, Complex s,
                                    std::int64_t n_terms) {
  check_eta_square_args(nu, ell1, ell2, s);
  if (n_terms < 1 || n_terms > 10000000)
    throw DomainError("dirichlet_eta_square_series: n_terms must be in [1, 1e7]");
  // smallest-prime-factor sieve keeps per-term factorization cheap
  std::vector<std::int32_t> spf(static_cast<std::size_t>(n_terms) + 1, 0);
  for (std::int64_t i = 2; i <= n_terms; ++i) {
    if (spf[static_cast<std::size_t>(i)] != 0) continue;
    for (std::int64_t j = i; j <= n_terms; j += i)
      if (spf[static_cast<std::size_t>(j)] == 0)
        spf[static_cast<std::size_t>(j)] = static_cast<std::int32_t>(i);
  }
  const auto L = arith::factorize(ell1 * ell2);
  auto local = [&](std::int64_t p, int e) -> Complex {
    if (nu == Complex(0.0, 0.0)) return static_cast<double>(e + 1);
    const double lp = std::log(static_cast<double>(p));
    const Complex top = std::exp(nu * (lp * (e + 1))) - std::exp(-nu * (lp * (e + 1)));
    const Complex bot = std::exp(nu * lp) - std::exp(-nu * lp);
    return top / bot;
  };
  Complex sum = 0.0;
  std::vector<std::pair<std::int64_t, int>> pe;
  for (std::int64_t d = 1; d <= n_terms; ++d) {
    pe.clear();
    std::int64_t m = d;
    while (m > 1) {
      const std::int64_t p = spf[static_cast<std::size_t>(m)];
      int e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      pe.emplace_back(p, 2 * e);
    }
    for (const auto& [p, e] : L.prime_powers) {
      bool merged = false;
      for (auto& [pp, ee] : pe)
        if (pp == p) {
          ee += e;
          merged = true;
          break;
        }
      if (!merged) pe.emplace_back(p, e);
    }
    Complex eta_val = 1.0;
    for (const auto& [p, e] : pe) eta_val *= local(p, e);
    sum += eta_val * std::exp(-s * std::log(static_cast<double>(d)));
  }
  return sum;
}

namespace {

double convolve_lemma42(const std::vector<MultiplicativeFn>& c, std::int64_t k) {
  const auto& h = c[0];
  const auto& f = c[1];
  const auto& g = c[2];
  double sum = 0.0;
  for (std::int64_t r : arith::divisors(k)) {
    const std::int64_t k1 = k / r;
    const double hv = h(r);
    if (hv == 0.0) continue;
    for (std::int64_t m : arith::divisors(k1)) {
      const std::int64_t n = k1 / m;
      if (!arith::is_squarefree(r * m) || !arith::is_squarefree(r * n)) continue;
      sum += hv * f(m) * g(n);
    }
  }
  return sum;
}

double convolve_lemma64(const std::vector<MultiplicativeFn>& c, std::int64_t k) {
  const auto& h = c[0];
  const auto& f1 = c[1];
  const auto& f2 = c[2];
  const auto& g1 = c[3];
  const auto& g2 = c[4];
  const auto& tfn = c[5];
  double sum = 0.0;
  for (std::int64_t r : arith::divisors(k)) {
    const double hv = h(r);
    if (hv == 0.0) continue;
    const std::int64_t k1 = k / r;
    for (std::int64_t l1 : arith::divisors(k1)) {
      const std::int64_t k2 = k1 / l1;
      for (std::int64_t n1 : arith::divisors(k2)) {
        if (!arith::is_squarefree(r * l1 * n1)) continue;
        const std::int64_t k3 = k2 / n1;
        const double left = hv * f1(l1) * g1(n1);
        if (left == 0.0) continue;
        for (std::int64_t l2 : arith::divisors(k3)) {
          const std::int64_t n2 = k3 / l2;
          if (!arith::is_squarefree(r * l2 * n2)) continue;
          double tprod = 1.0;
          for (const auto& [p, e] : arith::factorize(arith::gcd64(l1, l2)).prime_powers) {
            (void)e;
            tprod *= tfn(p);
          }
          sum += left * f2(l2) * g2(n2) * tprod;
        }
      }
    }
  }
  return sum;
}

}  // namespace

OracleReport multiplicativity_oracle(OracleKind kind,
                                     const std::vector<MultiplicativeFn>& components,
                                     std::int64_t k_max) {
  const std::size_t need = (kind == OracleKind::Lemma42) ? 3 : 6;
  if (components.size() != need)
    throw DomainError("multiplicativity_oracle: wrong number of component callbacks");
  if (k_max < 1 || k_max > 10000)
    throw DomainError("multiplicativity_oracle: k_max must be in [1, 1e4]");

  std::vector<double> F(static_cast<std::size_t>(k_max) + 1, 0.0);
  parallel_for(static_cast<std::size_t>(k_max), [&](std::size_t i) {
    const auto k = static_cast<std::int64_t>(i + 1);
    F[static_cast<std::size_t>(k)] = (kind == OracleKind::Lemma42)
                                         ? convolve_lemma42(components, k)
                                         : convolve_lemma64(components, k);
  });

  OracleReport report;
  for (std::int64_t m = 2; m * m <= k_max * 1; ++m) {
    for (std::int64_t n = m + 1; m * n <= k_max; ++n) {
      if (arith::gcd64(m, n) != 1) continue;
      const double lhs = F[static_cast<std::size_t>(m * n)];
      const double rhs = F[static_cast<std::size_t>(m)] * F[static_cast<std::size_t>(n)];
      const double resid = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
      ++report.pairs_checked;
      report.max_residual = std::max(report.max_residual, resid);
      if (resid > 1e-9 && report.passed) {
        report.passed = false;
        report.first_violation_m = m;
        report.first_violation_n = n;
      }
    }
  }
  return report;
}

std::vector<SweepRow> moment_sweep(const std::vector<std::int64_t>& qs, std::int64_t ell,
                                   double delta, double t, const afe::SpectralWeight& weight,
                                   const specfun::QuadratureSpec& spec, std::int64_t c_max) {
  std::vector<SweepRow> rows;
  rows.reserve(qs.size());
  for (std::int64_t q : qs) {
    MomentRequest req{q, ell, delta, t, c_max, spec};
    const auto numeric = twisted_second_moment_numeric(req, weight);
    const auto main = twisted_second_moment_mainterm(req, weight);
    SweepRow row;
    row.q = q;
    row.ell = ell;
    row.delta = delta;
    row.t = t;
    row.numeric = numeric.value;
    row.mainterm = main.value;
    row.residual = std::abs(numeric.value - main.value);
    row.tail_bound = numeric.tail_bound;
    rows.push_back(row);
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "q,ell,delta,t,numeric,mainterm,residual,tail_bound\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%lld,%lld,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n",
                  static_cast<long long>(r.q), static_cast<long long>(r.ell), r.delta, r.t,
                  r.numeric, r.mainterm, r.residual, r.tail_bound);
    out += buf;
  }
  return out;
}

}  // namespace superpos::moments
