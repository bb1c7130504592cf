#include "mibc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace mibc::numerics {

namespace {

using cd = std::complex<double>;

constexpr long double kEulerGamma = 0.577215664901532860606512090082L;
constexpr long double kPi = 3.141592653589793238462643383279L;

// Crossover between the Maclaurin series and the Hankel asymptotic
// expansion. At x = 14 the truncated asymptotic series is already
// below 1e-13 relative; the series side is evaluated in long double so
// cancellation up to x = 14 costs at most ~5 digits of 19.
constexpr double kAsymptoticCrossover = 14.0;

long double j_series(int n, long double x) {
  const long double h = 0.25L * x * x;
  long double term = (n == 0) ? 1.0L : 0.5L * x;
  long double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= -h / (static_cast<long double>(k) * (k + n));
    sum += term;
    if (std::abs(term) < 1e-21L * std::abs(sum) + 1e-4500L) break;
  }
  return sum;
}

// P/Q factors of the large-argument form
//   J_n = sqrt(2/(pi x)) (P cos chi - Q sin chi),
//   Y_n = sqrt(2/(pi x)) (P sin chi + Q cos chi),  chi = x - (2n+1) pi/4.
// Terms are added while they keep shrinking.
void pq_asymptotic(int n, long double x, long double& p, long double& q) {
  const long double mu = 4.0L * n * n;
  p = 1.0L;
  q = 0.0L;
  long double ck = 1.0L;
  long double prev = 1.0L;
  long double sp = -1.0L, sq = 1.0L;
  for (int k = 1; k < 80; ++k) {
    const long double odd = 2.0L * k - 1.0L;
    ck *= (mu - odd * odd) / (8.0L * x * k);
    if (std::abs(ck) > prev) break;
    prev = std::abs(ck);
    if (k % 2 == 1) {
      q += sq * ck;
      sq = -sq;
    } else {
      p += sp * ck;
      sp = -sp;
    }
  }
}

long double j_asymptotic(int n, long double x) {
  long double p, q;
  pq_asymptotic(n, x, p, q);
  const long double chi = x - (2 * n + 1) * kPi / 4.0L;
  return std::sqrt(2.0L / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

long double y_asymptotic(int n, long double x) {
  long double p, q;
  pq_asymptotic(n, x, p, q);
  const long double chi = x - (2 * n + 1) * kPi / 4.0L;
  return std::sqrt(2.0L / (kPi * x)) * (p * std::sin(chi) + q * std::cos(chi));
}

long double y_series(int n, long double x) {
  // A&S 9.1.13 / 9.1.11 with harmonic numbers accumulated on the fly.
  const long double h = 0.25L * x * x;
  const long double lg = std::log(0.5L * x);
  if (n == 0) {
    long double term = 1.0L;  // h^k / (k!)^2, k = 0
    long double hk = 0.0L;
    long double sum = 0.0L;
    long double sign = 1.0L;
    for (int k = 1; k < 200; ++k) {
      term *= h / (static_cast<long double>(k) * k);
      hk += 1.0L / k;
      sign = -sign;
      const long double add = -sign * hk * term;  // (-1)^{k+1} H_k h^k/(k!)^2
      sum += add;
      if (std::abs(add) < 1e-21L * std::abs(sum) + 1e-4500L) break;
    }
    return (2.0L / kPi) * ((lg + kEulerGamma) * j_series(0, x) + sum);
  }
  // n == 1
  long double term = 0.5L * x;  // (x/2)^{2k+1} / (k!(k+1)!), k = 0
  long double hk = 0.0L, hk1 = 1.0L;
  long double sum = (hk + hk1 - 2.0L * kEulerGamma) * term;
  long double sign = 1.0L;
  for (int k = 1; k < 200; ++k) {
    term *= h / (static_cast<long double>(k) * (k + 1));
    hk += 1.0L / k;
    hk1 += 1.0L / (k + 1);
    sign = -sign;
    const long double add = sign * (hk + hk1 - 2.0L * kEulerGamma) * term;
    sum += add;
    if (std::abs(add) < 1e-21L * std::abs(sum) + 1e-4500L) break;
  }
  return (2.0L / kPi) * lg * j_series(1, x) - 2.0L / (kPi * x) - sum / kPi;
}

void check_order(int order) {
  if (order != 0 && order != 1)
    throw std::invalid_argument("bessel: order must be 0 or 1");
}

// ---------------------------------------------------------------------------
// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    long double z = std::cos(kPi * (i + 0.75L) / (n + 0.5L));
    long double pp = 0.0L;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1.0L, p1 = 0.0L;
      for (int j = 0; j < n; ++j) {
        const long double p2 = p1;
        p1 = p0;
        p0 = ((2.0L * j + 1.0L) * z * p1 - j * p2) / (j + 1);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0L);
      const long double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-19L) break;
    }
    x[i] = static_cast<double>(-z);
    x[n - 1 - i] = static_cast<double>(z);
    w[i] = static_cast<double>(2.0L / ((1.0L - z * z) * pp * pp));
    w[n - 1 - i] = w[i];
  }
}

// Wynn epsilon table, stored as the latest anti-diagonal. push() appends
// the next partial sum and returns the current highest even-column entry.
class WynnEpsilon {
 public:
  cd push(cd s) {
    std::vector<cd> next;
    next.reserve(diag_.size() + 1);
    next.push_back(s);
    for (std::size_t k = 1; k <= diag_.size(); ++k) {
      const cd denom = next[k - 1] - diag_[k - 1];
      if (std::abs(denom) <
          1e-300 + 1e-15 * (std::abs(next[k - 1]) + std::abs(diag_[k - 1])))
        break;  // column collapse: lower columns already at round-off
      const cd aux = (k >= 2) ? diag_[k - 2] : cd(0.0);
      next.push_back(aux + 1.0 / denom);
    }
    diag_ = std::move(next);
    std::size_t best = diag_.size() - 1;
    if (best % 2 == 1) --best;
    return diag_[best];
  }

 private:
  std::vector<cd> diag_;
};

}  // namespace

double bessel_j(int order, double x) {
  check_order(order);
  if (!std::isfinite(x)) throw std::domain_error("bessel_j: x must be finite");
  long double ax = std::abs(static_cast<long double>(x));
  long double v = (ax <= kAsymptoticCrossover) ? j_series(order, ax)
                                               : j_asymptotic(order, ax);
  if (order == 1 && x < 0) v = -v;  // J1 odd, J0 even
  return static_cast<double>(v);
}

double bessel_y(int order, double x) {
  check_order(order);
  if (!(x > 0.0)) throw std::domain_error("bessel_y: requires x > 0");
  const long double lx = x;
  return static_cast<double>(lx <= kAsymptoticCrossover ? y_series(order, lx)
                                                        : y_asymptotic(order, lx));
}

std::complex<double> hankel1(int order, double x) {
  return {bessel_j(order, x), bessel_y(order, x)};
}

std::complex<double> integrate_oscillatory_semiinfinite(
    const std::function<std::complex<double>(double)>& integrand,
    double oscillation_scale, const QuadratureSpec& spec,
    std::span<const double> head_breakpoints) {
  if (!(oscillation_scale > 0.0))
    throw std::invalid_argument("integrate: oscillation_scale must be > 0");
  if (!(spec.relative_tolerance > 0.0) || spec.nodes_per_segment < 2 ||
      spec.max_segments < 1)
    throw std::invalid_argument("integrate: invalid QuadratureSpec");

  std::vector<double> xg, wg;
  gauss_legendre(spec.nodes_per_segment, xg, wg);

  const auto segment = [&](double lo, double hi) {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    cd acc = 0.0;
    for (int i = 0; i < spec.nodes_per_segment; ++i)
      acc += wg[i] * integrand(mid + half * xg[i]);
    return acc * half;
  };

  // Head region: user-supplied subdivision, folded into the base sum so
  // the accelerator only ever sees the regular oscillation cadence.
  cd total = 0.0;
  double start = 0.0;
  for (double b : head_breakpoints) {
    if (!(b > start))
      throw std::invalid_argument("integrate: head breakpoints must ascend");
    total += segment(start, b);
    start = b;
  }

  const double seg_len = kPi / oscillation_scale;
  WynnEpsilon table;
  cd est2 = 0.0, est1 = 0.0;  // two previous accelerated estimates
  for (int n = 0; n < spec.max_segments; ++n) {
    total += segment(start + n * seg_len, start + (n + 1) * seg_len);
    const cd est = table.push(total);
    if (n >= 3) {
      const double ref = std::max(std::abs(est), 1e-300);
      if (std::abs(est - est1) <= spec.relative_tolerance * ref &&
          std::abs(est1 - est2) <= 10.0 * spec.relative_tolerance * ref)
        return est;
    }
    est2 = est1;
    est1 = est;
  }
  throw QuadratureError(
      "integrate_oscillatory_semiinfinite: no convergence within max_segments");
}

}  // namespace mibc::numerics
