#include "superpos/afe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <unordered_map>

#include "superpos/arith.hpp"
#include "superpos/errors.hpp"
#include "superpos/specfun.hpp"

namespace superpos::afe {

namespace {
using std::numbers::pi;
constexpr double kFourPiSq = 4.0 * pi * pi;
constexpr double kDeltaFloor = 1e-6;  // delta = 0 handled as the delta -> 0 limit
}  // namespace

SpectralWeight::SpectralWeight(int N, double growth_exponent_B)
    : N_(N), growth_exponent_B_(growth_exponent_B) {
  if (N < 1) throw DomainError("SpectralWeight: N must be >= 1");
  double fact = 1.0;
  for (int k = 2; k <= N; ++k) fact *= k;
  a0_ = ((N % 2 == 0) ? 1.0 : -1.0) / (fact * fact);
}

Complex SpectralWeight::G(Complex s) const {
  Complex prod = a0_;
  const Complex s2 = s * s;
  for (int k = 1; k <= N_; ++k) prod *= s2 - static_cast<double>(k) * k;
  return prod;
}

Complex h_t(const SpectralWeight& weight, Complex s, double t) {
  const Complex it(0.0, t);
  return weight.G(s + it) * weight.G(s - it) * specfun::gamma(s + 1.0 + it) *
         specfun::gamma(s + 1.0 - it);
}

namespace {

// Truncation height for the contour: the Gamma pair decays like
// e^{-pi(|Im s| - |t|)} against polynomial growth of degree ~4N + 2 sigma,
// and the y^{-sigma} prefactor inflates the scale for y < 1.
double contour_height(int N, double t, double tol, double sigma, double max_neg_log_y) {
  const double poly_deg = 4.0 * N + 2.0 * sigma + 2.0;
  double T = std::abs(t) + 15.0;
  for (int iter = 0; iter < 6; ++iter)
    T = std::abs(t) +
        (std::log(1.0 / tol) + poly_deg * std::log(2.0 + T) + sigma * max_neg_log_y) / pi;
  return T;
}

}  // namespace

std::vector<VWeightResult> v_weight_batch(const SpectralWeight& weight, double delta, double t,
                                          const std::vector<double>& ys, std::int64_t q,
                                          const specfun::QuadratureSpec& spec, double sigma) {
  if (delta == 0.0) delta = kDeltaFloor;
  if (std::abs(delta) > 0.75) throw DomainError("v_weight: |delta| too large for the contour");
  for (double y : ys)
    if (!(y > 0.0)) throw DomainError("v_weight: y must be > 0");
  const Complex h_delta = h_t(weight, delta, t);

  std::vector<VWeightResult> out(ys.size());
  std::vector<double> log_y(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i) log_y[i] = std::log(ys[i]);

  // The value is contour independent (no poles right of |delta|). sigma = 0
  // selects sigma = 1 for y < 1 (keeps the y^{-sigma} scale, and with it the
  // cancellation error, small) and the defining sigma = 3 for y >= 1.
  // One adaptive pass per y; the shared H_t * zeta_q factor is cached per
  // contour point across the batch.
  auto run_group = [&](double sig, const std::vector<std::size_t>& idx) {
    if (idx.empty()) return;
    double max_neg_log_y = 0.0;
    for (std::size_t i : idx) max_neg_log_y = std::max(max_neg_log_y, -log_y[i]);
    const double T = contour_height(weight.N(), t, spec.abs_tol / 10.0, sig, max_neg_log_y);
    std::unordered_map<double, Complex> cache;
    cache.reserve(4096);
    auto shared_factor = [&](double yc) -> Complex {
      if (auto it = cache.find(yc); it != cache.end()) return it->second;
      const Complex s(sig, yc);
      const Complex v = h_t(weight, s, t) / h_delta * specfun::zeta_q(1.0 + 2.0 * s, q) * 2.0 *
                        s / ((s - delta) * (s + delta));
      if (cache.size() < 2000000) cache.emplace(yc, v);
      return v;
    };
    for (std::size_t i : idx) {
      auto f = [&](double yc) -> Complex {
        const Complex s(sig, yc);
        return shared_factor(yc) * std::exp(-s * log_y[i]);
      };
      // near the roundoff floor the subdivision can stall; relax the target
      // rather than abort, keeping the achieved error in the estimate
      specfun::QuadratureSpec local = spec;
      specfun::IntegralResult<Complex> r;
      for (int attempt = 0;; ++attempt) {
        try {
          r = specfun::integrate_finite(std::function<Complex(double)>(f), -T, T, local);
          break;
        } catch (const AccuracyError&) {
          if (attempt >= 3) throw;
          local.abs_tol *= 100.0;
          local.rel_tol *= 100.0;
        }
      }
      const Complex contour = r.value / (2.0 * pi);
      out[i].value = contour.real();
      out[i].imag_residual = std::abs(contour.imag());
      out[i].error_estimate = r.error_estimate / (2.0 * pi) + local.abs_tol / 10.0;
    }
  };

  if (sigma != 0.0) {
    if (!(sigma > std::abs(delta))) throw DomainError("v_weight: sigma must exceed |delta|");
    std::vector<std::size_t> all(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i) all[i] = i;
    run_group(sigma, all);
  } else {
    std::vector<std::size_t> lo, hi;
    for (std::size_t i = 0; i < ys.size(); ++i) (ys[i] < 1.0 ? lo : hi).push_back(i);
    run_group(1.0, lo);
    run_group(3.0, hi);
  }
  return out;
}

VWeightResult v_weight(const SpectralWeight& weight, double delta, double t, double y,
                       std::int64_t q, const specfun::QuadratureSpec& spec, double sigma) {
  return v_weight_batch(weight, delta, t, {y}, q, spec, sigma)[0];
}

AfeResult afe_square(const SpectralWeight& weight, const CoefficientTable& coeffs, double delta,
                     double t, const specfun::QuadratureSpec& spec, double y_max) {
  const double q = static_cast<double>(coeffs.q);
  const auto n_cut = static_cast<std::int64_t>(std::floor(y_max * q / kFourPiSq));
  const std::int64_t n_top = std::max<std::int64_t>(1, n_cut);
  if (coeffs.n_max() < n_top)
    throw IncompleteDataError("afe_square: requires lambda up to n=" + std::to_string(n_top) +
                                  " (table ends at " + std::to_string(coeffs.n_max()) + ")",
                              coeffs.n_max() + 1);
  std::vector<double> ys(static_cast<std::size_t>(n_top));
  for (std::int64_t n = 1; n <= n_top; ++n)
    ys[static_cast<std::size_t>(n - 1)] = kFourPiSq * static_cast<double>(n) / q;
  const auto vs = v_weight_batch(weight, delta, t, ys, coeffs.q, spec);

  const double d_eff = (delta == 0.0) ? kDeltaFloor : delta;
  const double prefactor = std::exp(-d_eff * std::log(q / kFourPiSq));
  double sum = 0.0;
  double err = 0.0;
  for (std::int64_t n = 1; n <= n_top; ++n) {
    const double coeff = coeffs(n) * arith::eta_imag(t, n) / std::sqrt(static_cast<double>(n));
    sum += coeff * vs[static_cast<std::size_t>(n - 1)].value;
    err += std::abs(coeff) * vs[static_cast<std::size_t>(n - 1)].error_estimate;
  }
  // dropped tail: |V(y)| decays like y^{-N}; bound by the last computed scale
  const double v_at_cut = std::abs(vs.back().value) + vs.back().error_estimate;
  const double tail = 2.0 * (v_at_cut + std::pow(y_max, -weight.N())) / std::sqrt(ys.back());
  return {prefactor * sum, prefactor * (err + tail)};
}

ScanReport triangle_scan(const SpectralWeight& weight, const CoefficientTable& coeffs,
                         double grid_step, const specfun::QuadratureSpec& spec,
                         double dip_threshold) {
  if (!(grid_step > 0.0)) throw DomainError("triangle_scan: grid_step must be > 0");
  ScanReport report;
  report.dip_threshold = dip_threshold;
  report.min_value = std::numeric_limits<double>::infinity();

  std::vector<std::pair<double, double>> nodes;  // (beta, gamma)
  for (double beta = 0.5 + grid_step; beta < 1.0 - 1e-12; beta += grid_step) {
    const double half_width = beta - 0.5;
    const auto jmax = static_cast<long>(std::floor(half_width / grid_step + 1e-12));
    for (long j = -jmax; j <= jmax; ++j) nodes.emplace_back(beta, j * grid_step);
  }
  if (nodes.empty()) nodes.emplace_back(0.75, 0.0);  // degenerate grid: single interior sample

  for (const auto& [beta, gamma] : nodes) {
    const double value = afe_square(weight, coeffs, beta - 0.5, gamma, spec).value;
    if (value < report.min_value) {
      report.min_value = value;
      report.argmin_beta = beta;
      report.argmin_gamma = gamma;
    }
    if (value < dip_threshold) report.dips.push_back({beta, gamma, value});
  }
  report.n_nodes = nodes.size();
  return report;
}

}  // namespace superpos::afe
