#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "superpos/coefficients.hpp"
#include "superpos/quadrature.hpp"

namespace superpos::afe {

using Complex = std::complex<double>;

/// The even polynomial G of degree 2N with G(0)=1 and roots at +-1..+-N,
/// together with the empirically fitted polynomial-growth constant of
/// H_t(s)/H_t(delta) on vertical lines.
class SpectralWeight {
public:
  explicit SpectralWeight(int N = 5, double growth_exponent_B = 0.0);

  int N() const { return N_; }
  double growth_exponent_B() const { return growth_exponent_B_; }
  void set_growth_exponent_B(double B) { growth_exponent_B_ = B; }

  /// G(s) = a0 prod_{k=1..N} (s^2 - k^2), a0 = (-1)^N (N!)^{-2}.
  Complex G(Complex s) const;

private:
  int N_;
  double a0_;
  double growth_exponent_B_;
};

/// H_t(s) = G(s+it) G(s-it) Gamma(s+1+it) Gamma(s+1-it).
Complex h_t(const SpectralWeight& weight, Complex s, double t);

struct VWeightResult {
  double value = 0.0;
  double imag_residual = 0.0;  // |Im| of the raw contour value
  double error_estimate = 0.0;
};

/// V_{delta,t}(y): vertical-line integral of
/// [H_t(s)/H_t(delta)] zeta_q(1+2s) y^{-s} 2s/((s-delta)(s+delta)) over Re(s)=sigma.
/// delta = 0 is evaluated at delta = 1e-6. sigma = 0 picks the contour
/// automatically (1 for y < 1, 3 for y >= 1; the value is contour independent,
/// the small-y choice avoids the y^{-sigma} cancellation blowup).
VWeightResult v_weight(const SpectralWeight& weight, double delta, double t, double y,
                       std::int64_t q, const specfun::QuadratureSpec& spec, double sigma = 0.0);

/// Batch evaluation sharing one contour pass across several y values.
std::vector<VWeightResult> v_weight_batch(const SpectralWeight& weight, double delta, double t,
                                          const std::vector<double>& ys, std::int64_t q,
                                          const specfun::QuadratureSpec& spec, double sigma = 0.0);

struct AfeResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// |L(1/2+delta+it,f)|^2 via the coefficient sum against V_{delta,t};
/// truncated where the decay of V pushes the dropped tail below tolerance.
/// V oscillates with O(10) amplitude until y ~ 10^3 and only then collapses
/// (|V| ~ 1e-11 at y = 1600 with N = 5), so the default y_max is 1600.
AfeResult afe_square(const SpectralWeight& weight, const CoefficientTable& coeffs, double delta,
                     double t, const specfun::QuadratureSpec& spec, double y_max = 1600.0);

struct ScanDip {
  double beta, gamma, value;
};

struct ScanReport {
  double min_value = 0.0;
  double argmin_beta = 0.0;
  double argmin_gamma = 0.0;
  std::size_t n_nodes = 0;
  std::vector<ScanDip> dips;  // grid nodes with value below dip_threshold
  double dip_threshold = 0.0;
};

/// Grid scan of afe_square over the open triangle
/// {beta+i gamma : 1/2 < beta < 1, |gamma| <= beta - 1/2}.
/// Numerical evidence only, not a proof of zero-freeness.
ScanReport triangle_scan(const SpectralWeight& weight, const CoefficientTable& coeffs,
                         double grid_step, const specfun::QuadratureSpec& spec,
                         double dip_threshold = 0.01);

}  // namespace superpos::afe
