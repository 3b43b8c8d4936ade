#include "superpos/arith.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <unordered_map>

#include "superpos/errors.hpp"

namespace superpos::arith {

namespace {

std::mutex g_cache_mutex;
std::unordered_map<std::int64_t, Factorization> g_factor_cache;

constexpr std::int64_t kMaxInput = std::int64_t{1} << 62;

}  // namespace

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a < 0 ? -a : a;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
  // extended gcd; m >= 1, gcd(a,m) must be 1
  std::int64_t r0 = m, r1 = ((a % m) + m) % m;
  std::int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    t0 -= q * t1;
    std::swap(t0, t1);
  }
  if (r0 != 1) throw DomainError("inv_mod: arguments not coprime");
  return ((t0 % m) + m) % m;
}

std::int64_t pow_mod(std::int64_t x, std::int64_t k, std::int64_t m) {
  std::int64_t r = 1 % m;
  x = ((x % m) + m) % m;
  while (k > 0) {
    if (k & 1) r = (r * x) % m;
    x = (x * x) % m;
    k >>= 1;
  }
  return r;
}

Factorization factorize(std::int64_t n) {
  if (n < 1) throw DomainError("factorize: n must be >= 1");
  if (n > kMaxInput) throw DomainError("factorize: n exceeds documented cap 2^62");
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = g_factor_cache.find(n);
    if (it != g_factor_cache.end()) return it->second;
  }
  Factorization f;
  f.n = n;
  std::int64_t m = n;
  for (std::int64_t p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p == 0) {
      int e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      f.prime_powers.emplace_back(p, e);
    }
  }
  if (m > 1) f.prime_powers.emplace_back(m, 1);
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    if (g_factor_cache.size() < (1u << 20)) g_factor_cache.emplace(n, f);
  }
  return f;
}

int mobius(std::int64_t n) {
  if (n < 1) throw DomainError("mobius: n must be >= 1");
  Factorization f = factorize(n);
  for (const auto& [p, e] : f.prime_powers)
    if (e > 1) return 0;
  return (f.prime_powers.size() % 2 == 0) ? 1 : -1;
}

std::int64_t tau(std::int64_t n) {
  if (n < 1) throw DomainError("tau: n must be >= 1");
  Factorization f = factorize(n);
  std::int64_t t = 1;
  for (const auto& [p, e] : f.prime_powers) t *= (e + 1);
  return t;
}

bool is_squarefree(std::int64_t n) {
  if (n < 1) throw DomainError("is_squarefree: n must be >= 1");
  Factorization f = factorize(n);
  for (const auto& [p, e] : f.prime_powers)
    if (e > 1) return false;
  return true;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  if (n < 1) throw DomainError("divisors: n must be >= 1");
  Factorization f = factorize(n);
  std::vector<std::int64_t> divs{1};
  for (const auto& [p, e] : f.prime_powers) {
    const std::size_t base = divs.size();
    std::int64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

std::complex<double> eta(std::complex<double> nu, std::int64_t n) {
  if (n < 1) throw DomainError("eta: n must be >= 1");
  Factorization f = factorize(n);
  std::complex<double> result = 1.0;
  for (const auto& [p, e] : f.prime_powers) {
    // sum_{j=0..e} p^{nu(2j-e)}
    std::complex<double> local = 0.0;
    const double lp = std::log(static_cast<double>(p));
    for (int j = 0; j <= e; ++j) local += std::exp(nu * (lp * (2 * j - e)));
    result *= local;
  }
  return result;
}

double eta_imag(double t, std::int64_t n) {
  if (n < 1) throw DomainError("eta_imag: n must be >= 1");
  Factorization f = factorize(n);
  double result = 1.0;
  for (const auto& [p, e] : f.prime_powers) {
    // sum_{j=0..e} cos(t log p * (2j-e)); sine parts cancel in j <-> e-j pairs
    double local = 0.0;
    const double lp = std::log(static_cast<double>(p));
    for (int j = 0; j <= e; ++j) local += std::cos(t * lp * (2 * j - e));
    result *= local;
  }
  return result;
}

double kloosterman(std::int64_t m, std::int64_t n, std::int64_t c) {
  if (m < 1 || n < 1 || c < 1) throw DomainError("kloosterman: m,n,c must be >= 1");
  if (c > (std::int64_t{1} << 31)) throw DomainError("kloosterman: c exceeds documented cap 2^31");
  if (c == 1) return 1.0;
  const std::int64_t mr = m % c, nr = n % c;
  const double scale = 2.0 * std::numbers::pi / static_cast<double>(c);
  double sum = 0.0;
  // x <-> c-x pairing: theta(c-x) = -theta(x) mod 2pi, so sum real
  for (std::int64_t x = 1; 2 * x < c; ++x) {
    if (gcd64(x, c) != 1) continue;
    const std::int64_t xb = inv_mod(x, c);
    const std::int64_t r = (mr * x + nr * xb) % c;
    sum += 2.0 * std::cos(scale * static_cast<double>(r));
  }
  if (c == 2) {
    const std::int64_t r = (mr + nr) % 2;
    return std::cos(scale * static_cast<double>(r));
  }
  // even c > 2: x = c/2 has gcd >= 2, never contributes
  return sum;
}

}  // namespace superpos::arith
