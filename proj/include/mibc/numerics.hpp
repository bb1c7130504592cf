#ifndef MIBC_NUMERICS_HPP
#define MIBC_NUMERICS_HPP

#include <complex>
#include <functional>
#include <span>
#include <stdexcept>

namespace mibc::numerics {

/// Policy for semi-infinite oscillatory quadrature: segment-wise
/// Gauss-Legendre between oscillation breakpoints, with nonlinear
/// series acceleration applied to the sequence of partial sums.
struct QuadratureSpec {
  double relative_tolerance = 1e-9;
  int max_segments = 200;
  int nodes_per_segment = 24;
};

/// Thrown when the accelerated partial-sum sequence fails to settle
/// within max_segments. Usually means the oscillation scale does not
/// match the integrand, or the integral diverges.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bessel function of the first kind, order 0 or 1.
/// Power series below x = 14, Hankel asymptotic expansion above;
/// both evaluated in extended precision. Good to better than 1e-12
/// relative for |x| <= 1e4.
double bessel_j(int order, double x);

/// Bessel function of the second kind, order 0 or 1. Requires x > 0.
double bessel_y(int order, double x);

/// Hankel function of the first kind, J_n(x) + j Y_n(x). Requires x > 0
/// (Y_n has a logarithmic/algebraic singularity at the origin).
std::complex<double> hankel1(int order, double x);

/// Integrates f over (0, inf). Breakpoints are placed at multiples of
/// pi/oscillation_scale; the partial sums over successive segments are
/// extrapolated with Wynn's epsilon algorithm until two consecutive
/// estimates agree to spec.relative_tolerance.
///
/// head_breakpoints, if given, subdivide the start of the axis before
/// the regular cadence begins (sorted ascending, all > 0). Their
/// segments are summed into the starting value and are not part of the
/// accelerated sequence; use them to isolate integrable endpoint
/// behavior such as branch points.
std::complex<double> integrate_oscillatory_semiinfinite(
    const std::function<std::complex<double>(double)>& integrand,
    double oscillation_scale, const QuadratureSpec& spec = {},
    std::span<const double> head_breakpoints = {});

}  // namespace mibc::numerics

#endif  // MIBC_NUMERICS_HPP
