// Test-only reference implementations, deliberately independent of the
// library's numerical paths: Bessel J by Miller's backward recurrence,
// oscillatory integrals by zero-partitioned adaptive Simpson with
// pairwise averaging, the static dipole field in closed form, and a
// random-search oracle for the beamforming problem.

#ifndef MIBC_TESTS_ORACLES_HPP
#define MIBC_TESTS_ORACLES_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracles {

// Miller backward recurrence: start well above the working order, run
// J_{k-1} = (2k/x) J_k - J_{k+1} downward, normalize with
// J0 + 2 sum J_{2k} = 1. Near machine accuracy for 0 < x <= ~60.
inline double bessel_j_miller(int order, double x) {
  if (x == 0.0) return order == 0 ? 1.0 : 0.0;
  const double ax = std::abs(x);
  const int start = static_cast<int>(2 * (ax + 30));
  long double jp = 0.0L, jc = 1e-300L;
  long double norm = 0.0L, j0 = 0.0L, j1 = 0.0L;
  for (int k = start; k >= 1; --k) {
    const long double jm = (2.0L * k / ax) * jc - jp;
    jp = jc;
    jc = jm;
    if (k - 1 == 0) j0 = jc;
    if (k - 1 == 1) j1 = jc;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0L * jc;
    // rescale to dodge overflow
    if (std::abs(jc) > 1e280L) {
      jc *= 1e-280L;
      jp *= 1e-280L;
      norm *= 1e-280L;
      j0 *= 1e-280L;
      j1 *= 1e-280L;
    }
  }
  norm += j0;
  double v = static_cast<double>((order == 0 ? j0 : j1) / norm);
  if (order == 1 && x < 0) v = -v;
  return v;
}

// Adaptive Simpson on a finite interval.
inline double adaptive_simpson(const std::function<double(double)>& f,
                               double a, double b, double tol, int depth = 24) {
  const auto simpson = [&](double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    return (hi - lo) / 6.0 * (f(lo) + 4.0 * f(mid) + f(hi));
  };
  std::function<double(double, double, double, double)> rec =
      [&](double lo, double hi, double whole, double eps) {
        const double mid = 0.5 * (lo + hi);
        const double left = simpson(lo, mid), right = simpson(mid, hi);
        if (std::abs(left + right - whole) <= 15.0 * eps || eps < 1e-300)
          return left + right + (left + right - whole) / 15.0;
        return rec(lo, mid, left, eps / 2) + rec(mid, hi, right, eps / 2);
      };
  (void)depth;
  return rec(a, b, simpson(a, b), tol);
}

// Semi-infinite oscillatory integral: adaptive Simpson over blocks of
// length half the slowest period, truncated once two successive
// once-averaged partial sums agree. Pairwise averaging of partial sums
// (one Euler-transform step) tames the alternating tail.
inline double oscillatory_reference(const std::function<double(double)>& f,
                                    double period, double tol,
                                    int max_blocks = 4000) {
  const double h = 0.5 * period;
  double sum = 0.0;
  double prev_avg = 0.0, prev_sum = 0.0;
  for (int n = 0; n < max_blocks; ++n) {
    sum += adaptive_simpson(f, n * h, (n + 1) * h, tol * 1e-3);
    const double avg = 0.5 * (sum + prev_sum);
    if (n > 4 && std::abs(avg - prev_avg) < tol) return avg;
    prev_avg = avg;
    prev_sum = sum;
  }
  return prev_avg;
}

// Static magnetic dipole of moment M at the origin, axis +z, cylindrical
// field components at (rho, z).
struct StaticDipole {
  double h_rho, h_z;
};
inline StaticDipole static_dipole_field(double moment, double rho, double z) {
  const double r2 = rho * rho + z * z;
  const double r5 = r2 * r2 * std::sqrt(r2);
  const double c = moment / (4.0 * std::numbers::pi * r5);
  return {c * 3.0 * rho * z, c * (2.0 * z * z - rho * rho)};
}

// Coaxial small-loop mutual inductance, mu pi N1 N2 a1^2 a2^2 / (2 d^3).
inline double coaxial_dipole_mutual(double mu, int n1, int n2, double a1,
                                    double a2, double d) {
  return mu * std::numbers::pi * n1 * n2 * a1 * a1 * a2 * a2 /
         (2.0 * d * d * d);
}

// Noncoherent DBPSK bit error probability.
inline double dbpsk_ber(double gamma) { return 0.5 * std::exp(-gamma); }

// Brute-force minimum-power search on the active constraint surface
// |u^H i|-scaled: random directions plus shrinking local perturbations.
// Independent of the closed-form route under test.
inline double beamform_power_oracle(const Eigen::MatrixXcd& b,
                                    const Eigen::MatrixXcd& c1,
                                    double constraint_level,
                                    std::uint32_t seed) {
  const int n = static_cast<int>(b.rows());
  std::mt19937 gen(seed);
  std::normal_distribution<double> gauss;

  const auto random_dir = [&] {
    Eigen::VectorXcd v(n);
    for (int k = 0; k < n; ++k)
      v(k) = std::complex<double>(gauss(gen), gauss(gen));
    return v;
  };
  const auto power_on_boundary = [&](const Eigen::VectorXcd& dir) {
    const double snr_form = (dir.adjoint() * c1 * dir).value().real();
    if (snr_form <= 0.0) return std::numeric_limits<double>::infinity();
    const Eigen::VectorXcd i = dir * std::sqrt(constraint_level / snr_form);
    return (i.adjoint() * b * i).value().real();
  };

  Eigen::VectorXcd best_dir = random_dir();
  double best = power_on_boundary(best_dir);
  for (int it = 0; it < 4000; ++it) {
    const Eigen::VectorXcd d = random_dir();
    const double p = power_on_boundary(d);
    if (p < best) {
      best = p;
      best_dir = d;
    }
  }
  double step = 0.5;
  for (int round = 0; round < 60; ++round) {
    bool improved = false;
    for (int it = 0; it < 200; ++it) {
      const Eigen::VectorXcd d = best_dir + step * random_dir();
      const double p = power_on_boundary(d);
      if (p < best) {
        best = p;
        best_dir = d;
        improved = true;
      }
    }
    if (!improved) step *= 0.6;
    if (step < 1e-8) break;
  }
  return best;
}

}  // namespace oracles

#endif  // MIBC_TESTS_ORACLES_HPP
