#include "superpos/mollifier.hpp"

#include <cmath>
#include <string>

#include "superpos/arith.hpp"
#include "superpos/coefficients.hpp"
#include "superpos/errors.hpp"

namespace superpos::mollifier {

MollifierProfile::MollifierProfile(double upsilon, double M, double theta)
    : upsilon_(upsilon), M_(M), theta_(theta) {
  if (!(upsilon > 0.0 && upsilon < 1.0)) throw DomainError("MollifierProfile: Upsilon in (0,1)");
  if (!(M > 1.0)) throw DomainError("MollifierProfile: M must exceed 1");
  if (!(theta > 0.0 && theta < 0.01)) throw DomainError("MollifierProfile: theta in (0, 1/100)");
  log_M_ = std::log(M);
  flat_end_ = std::exp((1.0 - upsilon) * log_M_);
}

MollifierProfile MollifierProfile::from_level(double upsilon, std::int64_t q, double exponent,
                                              double theta) {
  if (q < 2) throw DomainError("MollifierProfile: q must be >= 2");
  return MollifierProfile(upsilon, std::exp(exponent * std::log(static_cast<double>(q))), theta);
}

double taper(const MollifierProfile& p, double x) {
  if (x < 0.0) throw DomainError("taper: x must be >= 0");
  if (x <= p.flat_end()) return 1.0;
  if (x >= p.M()) return 0.0;
  return std::log(p.M() / x) / (p.upsilon() * p.log_M());
}

Complex psi(const MollifierProfile& p, Complex w) {
  if (w == Complex(0.0, 0.0)) throw PoleError("psi: simple pole at w = 0");
  const double L = p.log_M();
  const double u = p.upsilon();
  const Complex wl = w * L;
  if (std::abs(wl) < 1e-4) {
    // (M^w - M^{(1-u)w})/(u w^2 L) = 1/w + sum_{k>=2} L^{k-1} (1-(1-u)^k) / (u k!) w^{k-2}
    Complex sum = 1.0 / w;
    double pk = 1.0 - (1.0 - u) * (1.0 - u);  // 1-(1-u)^k at k=2
    double fact = 2.0;
    Complex wpow = 1.0;
    double Lpow = L;
    for (int k = 2; k <= 5; ++k) {
      sum += Lpow * pk / (u * fact) * wpow;
      wpow *= w;
      Lpow *= L;
      fact *= (k + 1);
      pk = 1.0 - std::pow(1.0 - u, k + 1);
    }
    return sum;
  }
  return (std::exp(wl) - std::exp((1.0 - u) * wl)) / (u * w * w * L);
}

Complex x_coeff(const MollifierProfile& p, std::int64_t ell, Complex s) {
  if (ell < 1) throw DomainError("x_coeff: ell must be >= 1");
  if (static_cast<double>(ell) > p.M()) return 0.0;
  const int mu_ell = arith::mobius(ell);
  if (mu_ell == 0) return 0.0;
  // sum over n with ell*n squarefree and ell*n <= M
  const auto n_cap = static_cast<std::int64_t>(p.M() / static_cast<double>(ell)) + 1;
  Complex sum = 0.0;
  for (std::int64_t n = 1; n <= n_cap; ++n) {
    const double x = static_cast<double>(ell) * static_cast<double>(n);
    if (x > p.M()) break;
    if (!arith::is_squarefree(ell * n)) continue;
    sum += taper(p, x) * std::exp(-2.0 * s * std::log(static_cast<double>(n)));
  }
  return static_cast<double>(mu_ell) *
         std::exp(-(s - 0.5) * std::log(static_cast<double>(ell))) * sum;
}

double dirichlet_c(const MollifierProfile& p, std::int64_t n) {
  if (n < 1) throw DomainError("dirichlet_c: n must be >= 1");
  double sum = 0.0;
  for (std::int64_t d : arith::divisors(n)) {
    const int mu = arith::mobius(d);
    if (mu == 0) continue;
    sum += mu * taper(p, static_cast<double>(d));
  }
  return sum;
}

Complex mollifier_value(const MollifierProfile& p, const CoefficientTable& coeffs, Complex s) {
  const auto ell_cap = static_cast<std::int64_t>(p.M());
  if (coeffs.n_max() < ell_cap) {
    throw IncompleteDataError(
        "mollifier_value: coefficient table ends at n=" + std::to_string(coeffs.n_max()) +
            " but ell up to " + std::to_string(ell_cap) + " is required",
        coeffs.n_max() + 1);
  }
  Complex sum = 0.0;
  for (std::int64_t ell = 1; ell <= ell_cap; ++ell) {
    if (!arith::is_squarefree(ell)) continue;
    const Complex x = x_coeff(p, ell, s);
    if (x == Complex(0.0, 0.0)) continue;
    sum += x * coeffs(ell) / std::sqrt(static_cast<double>(ell));
  }
  return sum;
}

}  // namespace superpos::mollifier
