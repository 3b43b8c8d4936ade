#pragma once

#include <complex>
#include <cstdint>

namespace superpos {
struct CoefficientTable;
}

namespace superpos::mollifier {

using Complex = std::complex<double>;

/// Taper shape: fraction Upsilon of log-length tapered, length M, level-exponent
/// safety margin theta.
class MollifierProfile {
public:
  MollifierProfile(double upsilon, double M, double theta = 1e-10);
  /// M = q^exponent, constructed without caller rounding drift.
  static MollifierProfile from_level(double upsilon, std::int64_t q, double exponent,
                                     double theta = 1e-10);

  double upsilon() const { return upsilon_; }
  double M() const { return M_; }
  double theta() const { return theta_; }
  double log_M() const { return log_M_; }
  /// M^{1-Upsilon}, the end of the flat part.
  double flat_end() const { return flat_end_; }

private:
  double upsilon_;
  double M_;
  double theta_;
  double log_M_;
  double flat_end_;
};

/// F_{Upsilon,M}(x): 1 on [0, M^{1-Upsilon}], log(M/x)/(Upsilon log M) on
/// [M^{1-Upsilon}, M], 0 beyond M.
double taper(const MollifierProfile& profile, double x);

/// Mellin transform of the taper: (M^w - M^{(1-Upsilon)w}) / (Upsilon w^2 log M),
/// with a Taylor-series fallback near the simple pole at w = 0.
Complex psi(const MollifierProfile& profile, Complex w);

/// Mollifier coefficient x_ell(s); zero unless ell is squarefree and ell <= M.
Complex x_coeff(const MollifierProfile& profile, std::int64_t ell, Complex s);

/// Dirichlet coefficient of LM: c(n) = sum_{d|n} mu(d) F(d).
double dirichlet_c(const MollifierProfile& profile, std::int64_t n);

/// M(s,f) = sum_{ell <= M} x_ell(s) lambda_f(ell) / sqrt(ell).
Complex mollifier_value(const MollifierProfile& profile, const CoefficientTable& coeffs, Complex s);

}  // namespace superpos::mollifier
