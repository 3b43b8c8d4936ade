#pragma once

#include <string>
#include <vector>

#include "superpos/afe.hpp"
#include "superpos/coefficients.hpp"
#include "superpos/mollifier.hpp"
#include "superpos/quadrature.hpp"

namespace superpos::zerodensity {

/// Parameters of the main-term surface; a = (1-Upsilon)(1-5 theta), b = 1-5 theta.
struct SurfaceParams {
  double upsilon = 0.64;
  double theta = 1e-10;
  double a() const { return (1.0 - upsilon) * (1.0 - 5.0 * theta); }
  double b() const { return 1.0 - 5.0 * theta; }
};

void validate(const SurfaceParams& p);

/// Derived window scale S = pi / (2 (1-Upsilon)(1-20 theta)).
double derived_S(const SurfaceParams& p);

/// Selberg-lemma window, stored in log-q units so no q enters numerically:
/// W0 = 1/2 - R/log q, H = S/log q, W1 - 1/2 = 1/2 + 10 log log q/((1-Upsilon) log q).
struct SelbergWindow {
  double R = 7.0;
  double S = 0.0;  // 0 selects derived_S
  static SelbergWindow from(const SurfaceParams& p, double R);
};

struct LadderConfig {
  SurfaceParams surface;
  double R = 4.6;
  double S = 0.0;  // 0 selects derived_S
  double d = 0.0;  // 0 selects 2S/3
  int j_exact_max = 20;
  int tail_start = 21;
  double trivial_bound_rate = 0.35;
  double trivial_bound_floor_u = 20.0;
};

LadderConfig make_ladder_config(double upsilon, double R, double theta = 1e-10);

/// The surface V(u,v) >= 1; removable singularities replaced by short Taylor
/// expansions below |u| = 1e-4 (third term) and |(-u+iv) b| = 1e-4 (second).
double v_surface(const SurfaceParams& p, double u, double v);

struct Bound {
  double value = 0.0;
  double err = 0.0;
};

/// Central-region density bound
/// [int_0^S cos(pi t/2S) log V(-R,t) dt + int_0^inf sinh(pi u/2S) log V(u-R,S) du]
///   / (8 S sinh(pi R/2S)) - 1/4.
/// The semi-infinite integral is evaluated adaptively up to u-R = 40 and the
/// remainder is integrated in closed form (exponential terms against E1);
/// the O((log q)^{-c}) correction is reported as 0 with a caveat flag upstream.
Bound central_bound(const SurfaceParams& p, double R,
                    const specfun::QuadratureSpec& spec = {});

/// Region-j bound for j >= 1 (j = 0 belongs to central_bound):
/// [int_0^{3(j+1)d/2} cos(pi t/(3(j+1)d)) log V(jd/2, t) dt
///   + int_0^inf sinh(pi u/(3(j+1)d)) log V(u+jd/2, 3(j+1)d/2) du]
///   / (6 (j+1) d sinh(pi j/(6(j+1)))).
Bound ladder_bound(const LadderConfig& cfg, int j,
                   const specfun::QuadratureSpec& spec = {});

/// Rigorous upper bound for sum of region bounds over j in [j_from, j_to]
/// (j_to < 0 means infinity) using log V <= V - 1 <= e^{-rate u} for
/// u >= trivial_bound_floor_u, with geometric majorization of the far sum.
double tail_bound(const LadderConfig& cfg, int j_from, int j_to);

struct RegionBound {
  std::string label;
  double bound = 0.0;
  double err = 0.0;
};

struct BoundReport {
  std::string objective;  // "superpositivity" or "realzero"
  double upsilon = 0.0;
  double theta = 0.0;
  double R = 0.0;
  double S = 0.0;
  double d = 0.0;
  std::vector<RegionBound> regions;
  double total = 0.0;
  double total_err = 0.0;
  double proportion = 0.0;
  bool asymptotic_caveat = true;    // O((log q)^{-c}) corrections reported as 0
  bool top_region_dropped = false;  // the final ladder region treated as 0
  bool non_informative = false;     // total exceeds 1

  std::string to_json() const;  // stable key order
  std::string to_table() const;
};

/// 1 - [central + sum_{j=1..j_exact_max} ladder + tail(tail_start..inf)].
BoundReport superpositivity_proportion(const LadderConfig& cfg,
                                       const specfun::QuadratureSpec& spec = {});

/// 1 - central_bound.
BoundReport realzero_proportion(const SurfaceParams& p, double R,
                                const specfun::QuadratureSpec& spec = {});

enum class Objective { Superpositivity, RealZero };

struct SearchBox {
  double upsilon_lo = 0.3, upsilon_hi = 0.8;
  double r_lo = 2.0, r_hi = 10.0;
};

struct OptimizeResult {
  double upsilon = 0.0;
  double R = 0.0;
  BoundReport report;
  int evaluations = 0;
  bool budget_exhausted = false;
};

/// Coarse grid then Nelder-Mead polish, deterministic; ties broken by
/// (objective, smaller R, smaller Upsilon).
OptimizeResult optimize(Objective objective, const SearchBox& box, int budget,
                        const specfun::QuadratureSpec& spec = {});

struct SelbergIntegrals {
  double i1 = 0.0, i2 = 0.0, i3 = 0.0;
  double err = 0.0;
  double floor_odd = 0.0;       // 4 S sinh(pi R/2S)
  double floor_even_dip = 0.0;  // 8 S sinh(pi R/2S)
  double floor_odd_dip = 0.0;   // 12 S sinh(pi R/2S)
};

/// Per-form window integrals of log|LM| for one ingested coefficient table,
/// evaluated at the table's own log q scale.
SelbergIntegrals selberg_integrals(const mollifier::MollifierProfile& profile,
                                   const afe::SpectralWeight& weight,
                                   const CoefficientTable& coeffs, const SelbergWindow& window,
                                   const specfun::QuadratureSpec& spec = {});

}  // namespace superpos::zerodensity
