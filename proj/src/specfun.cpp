#include "superpos/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "superpos/errors.hpp"

namespace superpos::specfun {

namespace {

using std::numbers::pi;

// Lanczos coefficients, g = 607/128.  Regeneration: Godfrey's method
// (least-squares fit of the Lanczos partial fractions at ~30 digits);
// see tools/regenerate_lanczos.py.
constexpr double kLanczosG = 4.7421875;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   3.3994649984811888699e-5,
    4.6523628927048575665e-5,   -9.8374475304879564677e-5, 1.5808870322491248884e-4,
    -2.1026444172410488319e-4,  2.1743961811521264320e-4,  -1.6431810653676389022e-4,
    8.4418223983852743293e-5,   -2.6190838401581408670e-5, 3.6899182659531622704e-6};

bool is_nonpositive_integer(Complex s) {
  return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real());
}

Complex lanczos_sum(Complex s) {
  // s with Re(s) >= 0.5; series in 1/(s-1+k)
  Complex a = kLanczos[0];
  for (int k = 1; k < 15; ++k) a += kLanczos[k] / (s - 1.0 + static_cast<double>(k));
  return a;
}

Complex gamma_positive(Complex s) {
  const Complex t = s + (kLanczosG - 0.5);
  return std::sqrt(2.0 * pi) * std::pow(t, s - 0.5) * std::exp(-t) * lanczos_sum(s);
}

// Borwein's algorithm for eta(s) = (1-2^{1-s}) zeta(s); valid for Re(s) >= 1/2 here.
Complex zeta_borwein(Complex s) {
  const double t = std::abs(s.imag());
  const int n = std::max(36, static_cast<int>((pi / 2.0 * t + 45.0) / 1.7627471740390860504) + 1);
  // d_k = n * sum_{i=0..k} (n+i-1)! 4^i / ((n-i)! (2i)!), built from the
  // i-term recurrence a_i = a_{i-1} * 4 (n+i-1)(n-i+1) / ((2i)(2i-1)), a_0 = 1/n.
  std::vector<double> d(static_cast<std::size_t>(n) + 1);
  std::vector<double> a(static_cast<std::size_t>(n) + 1);
  a[0] = 1.0 / n;
  for (int i = 1; i <= n; ++i)
    a[i] = a[i - 1] * 4.0 * (n + i - 1.0) * (n - i + 1.0) / ((2.0 * i) * (2.0 * i - 1.0));
  double acc = 0.0;
  for (int k = 0; k <= n; ++k) {
    acc += a[k];
    d[k] = n * acc;
  }
  Complex eta = 0.0;
  double sign = 1.0;
  for (int k = 0; k < n; ++k) {
    eta += sign * (d[k] - d[n]) * std::exp(-s * std::log(static_cast<double>(k + 1)));
    sign = -sign;
  }
  eta /= -d[n];
  // zeta = eta / (1 - 2^{1-s}); the denominator via a complex expm1 so the
  // cancellation as s -> 1 stays at full precision
  const Complex z = (1.0 - s) * std::numbers::ln2;
  const double ex = std::expm1(z.real());
  const double sy = std::sin(z.imag());
  const double hy = std::sin(0.5 * z.imag());
  const Complex expm1_z(ex * std::cos(z.imag()) - 2.0 * hy * hy,
                        (1.0 + ex) * sy);
  const Complex denom = -expm1_z;
  if (std::abs(denom) < 1e-300) throw PoleError("zeta: evaluation at a zero of 1-2^{1-s}");
  return eta / denom;
}

}  // namespace

// log sin(pi z), factoring out the dominant exponential so |Im z| ~ 1e2+ cannot
// overflow the way sin(pi z) itself does
Complex log_sin_pi(Complex z) {
  const double y = z.imag();
  if (std::abs(y) <= 10.0) return std::log(std::sin(pi * z));
  const Complex i(0.0, 1.0);
  const Complex half_log = std::log(2.0) + i * (pi / 2.0);
  if (y > 0.0)
    return -i * pi * z + std::log(1.0 - std::exp(2.0 * i * pi * z)) - half_log;
  return i * pi * z + std::log(1.0 - std::exp(-2.0 * i * pi * z)) - half_log;
}

Complex gamma(Complex s) {
  if (is_nonpositive_integer(s)) throw PoleError("gamma: pole at non-positive integer");
  if (s.real() >= 0.5) return gamma_positive(s);
  // reflection: Gamma(s) = pi / (sin(pi s) Gamma(1-s)); go through log space when
  // sin(pi s) would overflow
  if (std::abs(s.imag()) > 100.0) return std::exp(log_gamma(s));
  return pi / (std::sin(pi * s) * gamma_positive(1.0 - s));
}

Complex log_gamma(Complex s) {
  if (is_nonpositive_integer(s)) throw PoleError("log_gamma: pole at non-positive integer");
  if (s.real() >= 0.5) {
    const Complex t = s + (kLanczosG - 0.5);
    return 0.5 * std::log(2.0 * pi) + (s - 0.5) * std::log(t) - t + std::log(lanczos_sum(s));
  }
  return std::log(pi) - log_sin_pi(s) - log_gamma(1.0 - s);
}

Complex zeta(Complex s) {
  if (s == Complex(1.0, 0.0)) throw PoleError("zeta: pole at s = 1");
  if (s.real() >= 0.5) return zeta_borwein(s);
  // functional equation: zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s)
  const Complex chi = std::pow(2.0, s) * std::pow(pi, s - 1.0) * std::sin(pi * s / 2.0) *
                      gamma(1.0 - s);
  return chi * zeta_borwein(1.0 - s);
}

Complex zeta_q(Complex s, std::int64_t q) {
  if (q < 1) throw DomainError("zeta_q: q must be >= 1");
  return zeta(s) * (1.0 - std::exp(-s * std::log(static_cast<double>(q))));
}

namespace detail {

Complex zeta_euler_maclaurin(Complex s) {
  if (s == Complex(1.0, 0.0)) throw PoleError("zeta: pole at s = 1");
  if (s.real() < 0.5) {
    const Complex chi = std::pow(2.0, s) * std::pow(pi, s - 1.0) * std::sin(pi * s / 2.0) *
                        gamma(1.0 - s);
    return chi * zeta_euler_maclaurin(1.0 - s);
  }
  const int N = 25 + static_cast<int>(std::abs(s.imag()));
  Complex sum = 0.0;
  for (int n = 1; n < N; ++n) sum += std::exp(-s * std::log(static_cast<double>(n)));
  const double logN = std::log(static_cast<double>(N));
  const Complex Ns = std::exp(-s * logN);
  sum += Ns * static_cast<double>(N) / (s - 1.0) + 0.5 * Ns;
  // Bernoulli correction terms B_{2k}/(2k)! accumulated as tk
  static constexpr std::array<double, 12> kB2k = {
      1.0 / 6,       -1.0 / 30,      1.0 / 42,      -1.0 / 30,
      5.0 / 66,      -691.0 / 2730,  7.0 / 6,       -3617.0 / 510,
      43867.0 / 798, -174611.0 / 330, 854513.0 / 138, -236364091.0 / 2730};
  Complex t = Ns / static_cast<double>(N) * s;  // s * N^{-s-1}
  double fact = 2.0;  // (2k)!
  Complex poch = 1.0;
  for (int k = 1; k <= 12; ++k) {
    // term = B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    Complex term = kB2k[k - 1] / fact * t;
    sum += term;
    // advance t: multiply by (s+2k-1)(s+2k) / N^2
    t *= (s + (2.0 * k - 1.0)) * (s + (2.0 * k)) / (static_cast<double>(N) * N);
    fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    (void)poch;
  }
  return sum;
}

}  // namespace detail

double bessel_j1(double x) {
  if (x < 0.0) throw DomainError("bessel_j1: x must be >= 0");
  if (x == 0.0) return 0.0;
  if (x <= 12.0) {
    // J1(x) = sum_{k>=0} (-1)^k (x/2)^{2k+1} / (k! (k+1)!)
    const double h = 0.5 * x;
    double term = h;
    double sum = h;
    const double h2 = h * h;
    for (int k = 1; k <= 40; ++k) {
      term *= -h2 / (static_cast<double>(k) * (k + 1));
      sum += term;
      if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return sum;
  }
  // Hankel asymptotic expansion: J1(x) = sqrt(2/pi x) [P cos(w) - Q sin(w)], w = x - 3pi/4
  const double mu = 4.0;  // 4*nu^2
  const double inv8x = 1.0 / (8.0 * x);
  double P = 1.0, Q = 0.0;
  double term = 1.0;
  for (int k = 1; k <= 10; ++k) {
    term *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) * inv8x / k;
    if (k % 4 == 1) Q += term;
    else if (k % 4 == 2) P -= term;
    else if (k % 4 == 3) Q -= term;
    else P += term;
  }
  const double w = x - 0.75 * pi;
  return std::sqrt(2.0 / (pi * x)) * (P * std::cos(w) - Q * std::sin(w));
}

double expint_e1(double x) {
  if (x <= 0.0) throw DomainError("expint_e1: x must be > 0");
  if (x <= 1.0) {
    // E1(x) = -gamma - log x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
    constexpr double kEulerGamma = 0.57721566490153286060651209;
    double sum = 0.0;
    double term = 1.0;
    for (int k = 1; k <= 30; ++k) {
      term *= x / k;
      const double c = term / k;
      sum += (k % 2 == 1) ? c : -c;
      if (c < 1e-18) break;
    }
    return -kEulerGamma - std::log(x) + sum;
  }
  // continued fraction (modified Lentz): E1 = e^{-x} / (x + 1/(1 + 1/(x + 2/(1 + ...))))
  const double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 200; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x);
}

}  // namespace superpos::specfun
