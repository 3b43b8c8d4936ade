#include "superpos/zerodensity.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>

#include "json.hpp"
#include "superpos/arith.hpp"
#include "superpos/errors.hpp"
#include "superpos/parallel.hpp"
#include "superpos/specfun.hpp"

namespace superpos::zerodensity {

namespace {
using std::numbers::pi;
using Complex = std::complex<double>;
constexpr double kTaylorU = 1e-4;
constexpr double kTailSwitchX = 40.0;
}  // namespace

void validate(const SurfaceParams& p) {
  if (!(p.upsilon > 0.0 && p.upsilon < 1.0))
    throw DomainError("SurfaceParams: Upsilon must lie in (0,1)");
  if (!(p.theta > 0.0 && p.theta < 0.01))
    throw DomainError("SurfaceParams: theta must lie in (0, 1/100)");
}

double derived_S(const SurfaceParams& p) {
  validate(p);
  return pi / (2.0 * (1.0 - p.upsilon) * (1.0 - 20.0 * p.theta));
}

SelbergWindow SelbergWindow::from(const SurfaceParams& p, double R) {
  if (!(R > 0.0)) throw DomainError("SelbergWindow: R must be > 0");
  return SelbergWindow{R, derived_S(p)};
}

LadderConfig make_ladder_config(double upsilon, double R, double theta) {
  LadderConfig cfg;
  cfg.surface = SurfaceParams{upsilon, theta};
  validate(cfg.surface);
  if (!(R > 0.0)) throw DomainError("LadderConfig: R must be > 0");
  cfg.R = R;
  cfg.S = derived_S(cfg.surface);
  cfg.d = 2.0 * cfg.S / 3.0;
  return cfg;
}

namespace {

LadderConfig resolved(const LadderConfig& cfg_in) {
  LadderConfig cfg = cfg_in;
  validate(cfg.surface);
  if (cfg.S == 0.0) cfg.S = derived_S(cfg.surface);
  if (cfg.d == 0.0) cfg.d = 2.0 * cfg.S / 3.0;
  if (cfg.j_exact_max < 4) throw DomainError("LadderConfig: j_exact_max must be >= 4");
  if (!(cfg.R > 0.0)) throw DomainError("LadderConfig: R must be > 0");
  return cfg;
}

}  // namespace

namespace {

// V(u,v) - 1; kept separate so the window integrals can take log1p of it
// without losing the 1e-11-scale tail to representation error in 1 + x.
double v_surface_m1(const SurfaceParams& p, double u, double v) {
  const double a = p.a();
  const double b = p.b();
  const double ups = p.upsilon;
  const Complex z(-u, v);
  const Complex w = z * b;

  double t2;
  if (std::abs(w) < kTaylorU) {
    const double c1 = 1.0 - ups;
    const Complex f = 1.0 + (1.0 - c1 * c1) / (2.0 * ups) * w +
                      (1.0 - c1 * c1 * c1) / (6.0 * ups) * (w * w);
    t2 = std::exp(-2.0 * u) * std::norm(f);
  } else {
    const Complex f = (std::exp(w) - std::exp((1.0 - ups) * w)) / (ups * w);
    t2 = std::exp(-2.0 * u) * std::norm(f);
  }

  double t3;
  if (std::abs(u) < kTaylorU) {
    const double A = 2.0 - 2.0 * u + (4.0 / 3.0) * u * u;
    const double B =
        (b - a) - u * (b * b - a * a) / 2.0 + u * u * (b * b * b - a * a * a) / 6.0;
    t3 = A * B / (ups * b) / (ups * b);
  } else {
    t3 = (1.0 - std::exp(-2.0 * u)) * (std::exp(-u * a) - std::exp(-u * b)) /
         ((u * ups * b) * (u * ups * b));
  }
  return t2 + t3;
}

}  // namespace

double v_surface(const SurfaceParams& p, double u, double v) {
  validate(p);
  return 1.0 + v_surface_m1(p, u, v);
}

namespace {

// Closed-form remainder of int_{X0}^inf sinh(c (x - r)) (V(x, v) - 1) dx.
// The third surface term expands into four exponentials over x^2, each
// integrating to e^{-pX}/X - p E1(pX); the second term and the log-linear
// gap only enter the error bound.
double exp_tail(const SurfaceParams& p, double X0, double r, double c, double* err_out) {
  const double a = p.a();
  const double b = p.b();
  const double ub = p.upsilon * b;
  const double K[4] = {1.0, -1.0, -1.0, 1.0};
  const double pw[4] = {a, b, a + 2.0, b + 2.0};
  auto J = [&](double rate) -> double {
    if (rate <= 0.0) throw AccuracyError("exp_tail: divergent tail rate", 0.0, 1.0);
    return std::exp(-rate * X0) / X0 - rate * specfun::expint_e1(rate * X0);
  };
  double tail = 0.0;
  double tail_abs = 0.0;
  const double ep = std::exp(-c * r);  // e^{c(x-r)} branch weight
  const double em = std::exp(c * r);
  for (int m = 0; m < 4; ++m) {
    const double term =
        K[m] / (ub * ub) * 0.5 * (ep * J(pw[m] - c) - em * J(pw[m] + c));
    tail += term;
    tail_abs += std::abs(term);
  }
  double err = 0.0;
  // dropped second surface term, |T2| <= 4 e^{-2x(1+a)} / (ups^2 b^2 X0^2)
  const double p2 = 2.0 + 2.0 * a - c;
  err += 0.5 * ep * 4.0 / (ub * ub * X0 * X0) * std::exp(-p2 * X0) / p2;
  // log V vs V - 1 on the tail
  err += 0.5 * v_surface_m1(p, X0, 0.0) * tail_abs;
  if (err_out) *err_out = err;
  return tail;
}

// [int_0^S cos(pi t/2S) log V(u0, t) dt
//   + int_0^inf sinh(pi u/2S) log V(u + u0, S) du], u0 = -R or jd/2.
Bound window_integrals(const SurfaceParams& p, double u0, double S,
                       const specfun::QuadratureSpec& spec) {
  const double c = pi / (2.0 * S);
  auto f1 = [&](double t) { return std::cos(c * t) * std::log1p(v_surface_m1(p, u0, t)); };
  const auto i1 = specfun::integrate_finite(std::function<double(double)>(f1), 0.0, S, spec);

  const double U0 = std::max(kTailSwitchX - u0, 10.0);
  auto f2 = [&](double u) {
    return std::sinh(c * u) * std::log1p(v_surface_m1(p, u + u0, S));
  };
  const auto i2 = specfun::integrate_finite(std::function<double(double)>(f2), 0.0, U0, spec);
  // remainder over x = u + u0 > X0 with weight sinh(c (x - u0))
  double tail_err = 0.0;
  const double tail = exp_tail(p, U0 + u0, u0, c, &tail_err);

  Bound out;
  out.value = i1.value + i2.value + tail;
  out.err = i1.error_estimate + i2.error_estimate + tail_err;
  return out;
}

Bound central_bound_with_S(const SurfaceParams& p, double R, double S,
                           const specfun::QuadratureSpec& spec) {
  validate(p);
  if (!(R > 0.0)) throw DomainError("central_bound: R must be > 0");
  const Bound w = window_integrals(p, -R, S, spec);
  const double denom = 8.0 * S * std::sinh(pi * R / (2.0 * S));
  return {w.value / denom - 0.25, w.err / denom};
}

}  // namespace

Bound central_bound(const SurfaceParams& p, double R, const specfun::QuadratureSpec& spec) {
  return central_bound_with_S(p, R, derived_S(p), spec);
}

Bound ladder_bound(const LadderConfig& cfg_in, int j, const specfun::QuadratureSpec& spec) {
  const LadderConfig cfg = resolved(cfg_in);
  if (j < 1)
    throw DomainError("ladder_bound: j must be >= 1 (the central region is central_bound)");
  const double Sj = 1.5 * (j + 1) * cfg.d;
  const Bound w = window_integrals(cfg.surface, 0.5 * j * cfg.d, Sj, spec);
  const double denom = 4.0 * Sj * std::sinh(pi * j / (6.0 * (j + 1)));
  return {w.value / denom, w.err / denom};
}

double tail_bound(const LadderConfig& cfg_in, int j_from, int j_to) {
  const LadderConfig cfg = resolved(cfg_in);
  if (j_from < cfg.tail_start)
    throw DomainError("tail_bound: j_from must be >= tail_start");
  if (j_to >= 0 && j_to < j_from) throw DomainError("tail_bound: empty range");
  const double rate = cfg.trivial_bound_rate;
  if (0.5 * j_from * cfg.d < cfg.trivial_bound_floor_u)
    throw DomainError("tail_bound: j d/2 below the trivial-bound floor");

  auto term = [&](std::int64_t j) -> double {
    const double Sj = 1.5 * static_cast<double>(j + 1) * cfg.d;
    const double cj = pi / (2.0 * Sj);
    if (cj >= rate)
      throw DomainError("tail_bound: sinh rate exceeds the trivial decay rate");
    const double amp = std::exp(-rate * 0.5 * static_cast<double>(j) * cfg.d);
    const double cos_part = 2.0 * Sj / pi;
    const double sinh_part = cj / (rate * rate - cj * cj);
    const double denom =
        4.0 * Sj * std::sinh(pi * static_cast<double>(j) /
                             (6.0 * static_cast<double>(j + 1)));
    return amp * (cos_part + sinh_part) / denom;
  };

  double sum = 0.0;
  const double ratio = std::exp(-rate * 0.5 * cfg.d);  // successive-term majorant
  if (j_to >= 0) {
    for (std::int64_t j = j_from; j <= j_to; ++j) sum += term(j);
    return sum;
  }
  double last = 0.0;
  for (std::int64_t j = j_from;; ++j) {
    last = term(j);
    sum += last;
    if (last < 1e-18 * sum || j > j_from + 200000) break;
  }
  sum += last * ratio / (1.0 - ratio);
  return sum;
}

namespace {

void finalize_report(BoundReport& report) {
  report.total = 0.0;
  report.total_err = 0.0;
  for (const auto& r : report.regions) {
    report.total += r.bound;
    report.total_err += r.err;
  }
  report.proportion = 1.0 - report.total;
  report.non_informative = report.total > 1.0;
}

}  // namespace

BoundReport superpositivity_proportion(const LadderConfig& cfg_in,
                                       const specfun::QuadratureSpec& spec) {
  const LadderConfig cfg = resolved(cfg_in);
  BoundReport report;
  report.objective = "superpositivity";
  report.upsilon = cfg.surface.upsilon;
  report.theta = cfg.surface.theta;
  report.R = cfg.R;
  report.S = cfg.S;
  report.d = cfg.d;
  report.top_region_dropped = true;

  std::vector<Bound> bounds(static_cast<std::size_t>(cfg.j_exact_max) + 1);
  parallel_for(bounds.size(), [&](std::size_t i) {
    bounds[i] = (i == 0) ? central_bound_with_S(cfg.surface, cfg.R, cfg.S, spec)
                         : ladder_bound(cfg, static_cast<int>(i), spec);
  });
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    char label[32];
    std::snprintf(label, sizeof(label), "region_%02zu", i);
    report.regions.push_back({label, bounds[i].value, bounds[i].err});
  }
  report.regions.push_back({"tail", tail_bound(cfg, cfg.tail_start, -1), 0.0});
  finalize_report(report);
  return report;
}

BoundReport realzero_proportion(const SurfaceParams& p, double R,
                                const specfun::QuadratureSpec& spec) {
  BoundReport report;
  report.objective = "realzero";
  report.upsilon = p.upsilon;
  report.theta = p.theta;
  report.R = R;
  report.S = derived_S(p);
  report.d = 2.0 * report.S / 3.0;
  const Bound c = central_bound(p, R, spec);
  report.regions.push_back({"central", c.value, c.err});
  finalize_report(report);
  return report;
}

std::string BoundReport::to_json() const {
  nlohmann::ordered_json j;
  j["objective"] = objective;
  j["upsilon"] = upsilon;
  j["theta"] = theta;
  j["R"] = R;
  j["S"] = S;
  j["d"] = d;
  j["regions"] = nlohmann::ordered_json::array();
  for (const auto& r : regions) {
    nlohmann::ordered_json jr;
    jr["label"] = r.label;
    jr["bound"] = r.bound;
    jr["err"] = r.err;
    j["regions"].push_back(jr);
  }
  j["total"] = total;
  j["total_err"] = total_err;
  j["proportion"] = proportion;
  j["asymptotic_caveat"] = asymptotic_caveat;
  j["top_region_dropped"] = top_region_dropped;
  j["non_informative"] = non_informative;
  return j.dump(2);
}

std::string BoundReport::to_table() const {
  char buf[160];
  std::string out;
  std::snprintf(buf, sizeof(buf),
                "objective=%s upsilon=%.10g theta=%.3g R=%.10g S=%.10g d=%.10g\n",
                objective.c_str(), upsilon, theta, R, S, d);
  out += buf;
  for (const auto& r : regions) {
    std::snprintf(buf, sizeof(buf), "  %-12s %.10g  (err %.3g)\n", r.label.c_str(), r.bound,
                  r.err);
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), "  %-12s %.10g  (err %.3g)\n", "total", total, total_err);
  out += buf;
  std::snprintf(buf, sizeof(buf), "  %-12s %.10g\n", "proportion", proportion);
  out += buf;
  if (asymptotic_caveat) out += "  caveat: O((log q)^-c) corrections reported as 0\n";
  if (top_region_dropped) out += "  caveat: final ladder region treated as 0\n";
  if (non_informative) out += "  warning: non-informative (total > 1)\n";
  return out;
}

namespace {

struct Candidate {
  double objective_value = -1e300;
  double upsilon = 0.0;
  double R = 0.0;
  BoundReport report;
};

bool better(const Candidate& x, const Candidate& y) {
  if (x.objective_value != y.objective_value) return x.objective_value > y.objective_value;
  if (x.R != y.R) return x.R < y.R;
  return x.upsilon < y.upsilon;
}

Candidate evaluate(Objective objective, double upsilon, double R,
                   const specfun::QuadratureSpec& spec) {
  Candidate c;
  c.upsilon = upsilon;
  c.R = R;
  if (objective == Objective::RealZero) {
    c.report = realzero_proportion(SurfaceParams{upsilon, 1e-10}, R, spec);
  } else {
    c.report = superpositivity_proportion(make_ladder_config(upsilon, R), spec);
  }
  c.objective_value = c.report.proportion;
  return c;
}

}  // namespace

OptimizeResult optimize(Objective objective, const SearchBox& box, int budget,
                        const specfun::QuadratureSpec& spec) {
  if (!(box.upsilon_lo > 0.05 && box.upsilon_hi < 0.95 && box.upsilon_lo <= box.upsilon_hi))
    throw DomainError("optimize: Upsilon box must lie inside (0.05, 0.95)");
  if (!(box.r_lo > 0.5 && box.r_hi < 20.0 && box.r_lo <= box.r_hi))
    throw DomainError("optimize: R box must lie inside (0.5, 20)");
  if (budget < 1) throw DomainError("optimize: budget must be >= 1");

  int used = 0;
  Candidate best;

  auto clamp = [&](double u, double r) {
    return std::pair<double, double>{std::clamp(u, box.upsilon_lo, box.upsilon_hi),
                                     std::clamp(r, box.r_lo, box.r_hi)};
  };

  const int grid_n = std::clamp(static_cast<int>(std::sqrt(budget / 2.0)), 1, 7);
  std::vector<Candidate> grid(static_cast<std::size_t>(grid_n) * grid_n);
  parallel_for(grid.size(), [&](std::size_t i) {
    const int iu = static_cast<int>(i) / grid_n;
    const int ir = static_cast<int>(i) % grid_n;
    const double fu = (grid_n == 1) ? 0.5 : static_cast<double>(iu) / (grid_n - 1);
    const double fr = (grid_n == 1) ? 0.5 : static_cast<double>(ir) / (grid_n - 1);
    grid[i] = evaluate(objective, box.upsilon_lo + fu * (box.upsilon_hi - box.upsilon_lo),
                       box.r_lo + fr * (box.r_hi - box.r_lo), spec);
  });
  used += static_cast<int>(grid.size());
  for (const auto& c : grid)
    if (better(c, best)) best = c;

  // Nelder-Mead polish in the remaining budget
  const double hu = (box.upsilon_hi - box.upsilon_lo) / 10.0;
  const double hr = (box.r_hi - box.r_lo) / 10.0;
  std::vector<Candidate> simplex;
  if (used < budget) {
    simplex.push_back(best);
    for (auto [du, dr] : {std::pair{hu, 0.0}, std::pair{0.0, hr}}) {
      if (used >= budget) break;
      auto [u, r] = clamp(best.upsilon + du, best.R + dr);
      simplex.push_back(evaluate(objective, u, r, spec));
      ++used;
    }
  }
  while (simplex.size() == 3 && used < budget) {
    std::sort(simplex.begin(), simplex.end(), better);
    if (better(simplex[0], best)) best = simplex[0];
    const double cu = (simplex[0].upsilon + simplex[1].upsilon) / 2.0;
    const double cr = (simplex[0].R + simplex[1].R) / 2.0;
    auto [ru, rr] = clamp(2.0 * cu - simplex[2].upsilon, 2.0 * cr - simplex[2].R);
    Candidate refl = evaluate(objective, ru, rr, spec);
    ++used;
    if (better(refl, simplex[0])) {
      if (used < budget) {
        auto [eu, er] = clamp(3.0 * cu - 2.0 * simplex[2].upsilon, 3.0 * cr - 2.0 * simplex[2].R);
        Candidate exp_c = evaluate(objective, eu, er, spec);
        ++used;
        simplex[2] = better(exp_c, refl) ? exp_c : refl;
      } else {
        simplex[2] = refl;
      }
    } else if (better(refl, simplex[1])) {
      simplex[2] = refl;
    } else if (used < budget) {
      auto [ku, kr] = clamp((cu + simplex[2].upsilon) / 2.0, (cr + simplex[2].R) / 2.0);
      Candidate contr = evaluate(objective, ku, kr, spec);
      ++used;
      if (better(contr, simplex[2])) {
        simplex[2] = contr;
      } else {
        for (int i = 1; i < 3; ++i) {
          if (used >= budget) break;
          auto [su, sr] = clamp((simplex[0].upsilon + simplex[i].upsilon) / 2.0,
                                (simplex[0].R + simplex[i].R) / 2.0);
          simplex[static_cast<std::size_t>(i)] = evaluate(objective, su, sr, spec);
          ++used;
        }
      }
    }
    const double spread = std::abs(simplex[0].objective_value - simplex[2].objective_value);
    if (spread < 1e-10) break;
  }
  for (const auto& c : simplex)
    if (better(c, best)) best = c;

  OptimizeResult out;
  out.upsilon = best.upsilon;
  out.R = best.R;
  out.report = best.report;
  out.evaluations = used;
  out.budget_exhausted = used >= budget;
  return out;
}

namespace {

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
  std::vector<bool> comp(static_cast<std::size_t>(n) + 1, false);
  std::vector<std::int64_t> primes;
  for (std::int64_t i = 2; i <= n; ++i) {
    if (comp[static_cast<std::size_t>(i)]) continue;
    primes.push_back(i);
    for (std::int64_t j = i * i; j <= n; j += i) comp[static_cast<std::size_t>(j)] = true;
  }
  return primes;
}

// log L(1/2 + delta + it, f) on Re > 1 via the Euler product over the stored
// primes; the prime tail enters the error.
Complex log_l_euler(const CoefficientTable& coeffs, const std::vector<std::int64_t>& primes,
                    double delta, double t, double* err_out) {
  const Complex s(0.5 + delta, t);
  Complex sum = 0.0;
  for (std::int64_t p : primes) {
    const Complex ps = std::exp(-s * std::log(static_cast<double>(p)));
    const Complex local =
        (p == coeffs.q) ? 1.0 - coeffs(p) * ps : 1.0 - coeffs(p) * ps + ps * ps;
    sum -= std::log(local);
  }
  const double sigma = 0.5 + delta;
  const double P = static_cast<double>(coeffs.n_max());
  if (err_out)
    *err_out = 2.0 * std::pow(P, 1.0 - sigma) / ((sigma - 1.0) * std::log(P));
  return sum;
}

double log_abs_l2(const afe::SpectralWeight& weight, const CoefficientTable& coeffs,
                  const std::vector<std::int64_t>& primes, double delta, double t,
                  const specfun::QuadratureSpec& spec, double* err_out) {
  if (delta <= 0.7) {
    const auto r = afe::afe_square(weight, coeffs, delta, t, spec);
    const double v = std::max(r.value, 1e-12);
    if (err_out) *err_out = r.error_estimate / v;
    return std::log(v);
  }
  double e = 0.0;
  const Complex logl = log_l_euler(coeffs, primes, delta, t, &e);
  if (err_out) *err_out = 2.0 * e;
  return 2.0 * logl.real();
}

}  // namespace

SelbergIntegrals selberg_integrals(const mollifier::MollifierProfile& profile,
                                   const afe::SpectralWeight& weight,
                                   const CoefficientTable& coeffs, const SelbergWindow& window,
                                   const specfun::QuadratureSpec& spec) {
  const double L = std::log(static_cast<double>(coeffs.q));
  const double S = (window.S == 0.0)
                       ? derived_S(SurfaceParams{profile.upsilon(), profile.theta()})
                       : window.S;
  const double R = window.R;
  if (!(R > 0.0)) throw DomainError("selberg_integrals: R must be > 0");
  if (R / L > 0.7)
    throw DomainError("selberg_integrals: R/log q leaves the evaluable strip; reduce R");
  const double W1 = 1.0 + 10.0 * std::log(L) / ((1.0 - profile.upsilon()) * L);
  const double U1 = (W1 - 0.5) * L;

  const auto primes = primes_up_to(coeffs.n_max());
  double err = 0.0;
  SelbergIntegrals out;

  // I1: even in t, so twice the half-range integral
  {
    double emax = 0.0;
    auto f = [&](double t) {
      double e1 = 0.0;
      const double l2 = log_abs_l2(weight, coeffs, primes, -R / L, t / L, spec, &e1);
      const Complex m =
          mollifier::mollifier_value(profile, coeffs, Complex(0.5 - R / L, t / L));
      emax = std::max(emax, e1);
      return std::cos(pi * t / (2.0 * S)) *
             (0.5 * l2 + std::log(std::max(std::abs(m), 1e-12)));
    };
    const auto r = specfun::integrate_finite(std::function<double(double)>(f), 0.0, S, spec);
    out.i1 = 2.0 * r.value;
    err += 2.0 * (r.error_estimate + 0.5 * emax * S);
  }

  // I2
  {
    double emax = 0.0;
    auto f = [&](double u) {
      double e1 = 0.0;
      const double l2 = log_abs_l2(weight, coeffs, primes, u / L, S / L, spec, &e1);
      const Complex m =
          mollifier::mollifier_value(profile, coeffs, Complex(0.5 + u / L, S / L));
      emax = std::max(emax, e1 * std::sinh(pi * (u + R) / (2.0 * S)));
      return std::sinh(pi * (u + R) / (2.0 * S)) *
             (l2 + 2.0 * std::log(std::max(std::abs(m), 1e-12)));
    };
    const auto r = specfun::integrate_finite(std::function<double(double)>(f), -R, U1, spec);
    out.i2 = r.value;
    err += r.error_estimate + emax * (U1 + R);
  }

  // I3: complex cosine weight against log LM on Re(s) = W1
  {
    auto f = [&](double t) {
      double e1 = 0.0;
      const Complex logl = log_l_euler(coeffs, primes, W1 - 0.5, t / L, &e1);
      const Complex m =
          mollifier::mollifier_value(profile, coeffs, Complex(W1, t / L));
      const Complex loglm = logl + std::log(m);
      const Complex arg = pi * Complex(U1 - R, t) / Complex(0.0, 2.0 * S);
      return -(std::cos(arg) * loglm).real();
    };
    const auto r = specfun::integrate_finite(std::function<double(double)>(f), -S, S, spec);
    out.i3 = r.value;
    err += r.error_estimate;
  }

  out.err = err;
  const double base = 4.0 * S * std::sinh(pi * R / (2.0 * S));
  out.floor_odd = base;
  out.floor_even_dip = 2.0 * base;
  out.floor_odd_dip = 3.0 * base;
  return out;
}

}  // namespace superpos::zerodensity
