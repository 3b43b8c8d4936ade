#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace superpos::arith {

/// Prime factorization of a positive integer, primes strictly increasing.
struct Factorization {
  std::int64_t n = 1;
  std::vector<std::pair<std::int64_t, int>> prime_powers;
};

/// Factor n by trial division. Results are cached internally (thread-safe).
/// Throws DomainError for n < 1.
Factorization factorize(std::int64_t n);

/// Moebius function.
int mobius(std::int64_t n);

/// Divisor count tau(n).
std::int64_t tau(std::int64_t n);

bool is_squarefree(std::int64_t n);

/// All divisors of n, sorted ascending.
std::vector<std::int64_t> divisors(std::int64_t n);

/// Generalized divisor function eta_nu(n) = sum_{ad=n} (a/d)^nu.
/// Computed from the factorization via the local factor
/// sum_{j=0..e} p^{nu(2j-e)} at each prime power.
std::complex<double> eta(std::complex<double> nu, std::int64_t n);

/// eta for purely imaginary order nu = it; the value is real.
double eta_imag(double t, std::int64_t n);

/// Kloosterman sum S(m,n;c) = sum_{x mod c, (x,c)=1} e((m x + n xbar)/c).
/// Real by the x <-> c-x pairing; direct summation with modular inverses.
double kloosterman(std::int64_t m, std::int64_t n, std::int64_t c);

std::int64_t gcd64(std::int64_t a, std::int64_t b);

/// Inverse of a modulo m (gcd(a,m)=1 required).
std::int64_t inv_mod(std::int64_t a, std::int64_t m);

/// x^k mod m without overflow for m < 2^31.
std::int64_t pow_mod(std::int64_t x, std::int64_t k, std::int64_t m);

}  // namespace superpos::arith
