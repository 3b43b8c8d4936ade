// Generates the level-11 weight-2 coefficient table by counting points on
// y^2 + y = x^3 - x^2 - 10x - 20 over F_p, then extending multiplicatively.
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "superpos/parallel.hpp"

namespace {

std::int64_t a_p_point_count(std::int64_t p) {
  if (p == 11) return 1;  // multiplicative reduction
  if (p < 5) {
    // direct enumeration, the discriminant trick needs p odd
    std::int64_t count = 1;
    for (std::int64_t x = 0; x < p; ++x) {
      const std::int64_t g =
          ((x * x % p) * x % p - x * x % p - 10 * x % p - 20 % p + 5 * p) % p;
      for (std::int64_t y = 0; y < p; ++y)
        if ((y * y + y) % p == g) ++count;
    }
    return p + 1 - count;
  }
  std::vector<signed char> chi(static_cast<std::size_t>(p), -1);
  chi[0] = 0;
  for (std::int64_t y = 1; 2 * y <= p; ++y) chi[static_cast<std::size_t>(y * y % p)] = 1;
  std::int64_t sum = 0;
  for (std::int64_t x = 0; x < p; ++x) {
    const std::int64_t g =
        ((x * x % p) * x % p - x * x % p - 10 * x % p + (p - 20 % p)) % p;
    const std::int64_t disc = (4 * (g % p) % p + 1) % p;
    sum += chi[static_cast<std::size_t>((disc + p) % p)];
  }
  return -sum;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate the level-11 Hecke eigenvalue table"};
  std::int64_t n_max = 200000;
  std::string out_path = "level11.csv";
  app.add_option("--n-max", n_max, "largest index to tabulate")->check(CLI::Range(1, 5000000));
  app.add_option("--out", out_path, "output CSV path");
  CLI11_PARSE(app, argc, argv);

  std::vector<std::int32_t> spf(static_cast<std::size_t>(n_max) + 1, 0);
  std::vector<std::int64_t> primes;
  for (std::int64_t i = 2; i <= n_max; ++i) {
    if (spf[static_cast<std::size_t>(i)] != 0) continue;
    primes.push_back(i);
    for (std::int64_t j = i; j <= n_max; j += i)
      if (spf[static_cast<std::size_t>(j)] == 0)
        spf[static_cast<std::size_t>(j)] = static_cast<std::int32_t>(i);
  }

  std::vector<double> ap_of(primes.size());
  superpos::parallel_for(primes.size(), [&](std::size_t i) {
    ap_of[i] = static_cast<double>(a_p_point_count(primes[i]));
  });
  std::vector<double> ap(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (std::size_t i = 0; i < primes.size(); ++i)
    ap[static_cast<std::size_t>(primes[i])] = ap_of[i];

  // a(n) by multiplicativity and the Hecke recursion at prime powers
  std::vector<double> a(static_cast<std::size_t>(n_max) + 1, 0.0);
  a[1] = 1.0;
  for (std::int64_t n = 2; n <= n_max; ++n) {
    const std::int64_t p = spf[static_cast<std::size_t>(n)];
    std::int64_t pk = p;
    std::int64_t m = n / p;
    while (m % p == 0) {
      m /= p;
      pk *= p;
    }
    if (m > 1) {
      a[static_cast<std::size_t>(n)] =
          a[static_cast<std::size_t>(m)] * a[static_cast<std::size_t>(pk)];
    } else if (pk == p) {
      a[static_cast<std::size_t>(n)] = ap[static_cast<std::size_t>(p)];
    } else if (p == 11) {
      a[static_cast<std::size_t>(n)] = a[static_cast<std::size_t>(n / p)] * ap[11];
    } else {
      a[static_cast<std::size_t>(n)] =
          ap[static_cast<std::size_t>(p)] * a[static_cast<std::size_t>(n / p)] -
          static_cast<double>(p) * a[static_cast<std::size_t>(n / (p * p))];
    }
  }

  std::FILE* out = std::fopen(out_path.c_str(), "w");
  if (!out) {
    std::fprintf(stderr, "cannot open %s for writing\n", out_path.c_str());
    return 1;
  }
  std::fprintf(out, "# q=11 weight=2 normalization=unit-first-coefficient\n");
  for (std::int64_t n = 1; n <= n_max; ++n)
    std::fprintf(out, "%lld,%.17g\n", static_cast<long long>(n),
                 a[static_cast<std::size_t>(n)] / std::sqrt(static_cast<double>(n)));
  std::fclose(out);
  std::printf("wrote %s (n <= %lld)\n", out_path.c_str(), static_cast<long long>(n_max));
  return 0;
}
