#include "mibc/coils.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mibc::coils {

void CoilSpec::validate() const {
  if (!(radius > 0) || turns <= 0 || !(wire_radius > 0) || !(resistance > 0) ||
      !(self_inductance > 0) || !(capacitance > 0))
    throw std::invalid_argument("CoilSpec: all parameters must be positive");
  if (!(wire_radius < radius))
    throw std::invalid_argument("CoilSpec: wire_radius must be < radius");
}

void Pose::validate() const {
  if (std::abs(orientation.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("Pose: orientation must be a unit vector");
}

std::complex<double> impedance(const CoilSpec& spec, double omega,
                               double phase_offset) {
  if (!(omega > 0)) throw std::invalid_argument("impedance: omega must be > 0");
  const std::complex<double> z{
      spec.resistance,
      omega * spec.self_inductance - 1.0 / (omega * spec.capacitance)};
  return z * std::exp(std::complex<double>(0.0, phase_offset));
}

double resonance_capacitance(double self_inductance, double omega) {
  if (!(self_inductance > 0) || !(omega > 0))
    throw std::invalid_argument("resonance_capacitance: inputs must be > 0");
  return 1.0 / (omega * omega * self_inductance);
}

double mutual_inductance_coplanar(const CoilSpec& p, const CoilSpec& q,
                                  double center_distance, double permeability,
                                  const numerics::QuadratureSpec& quad) {
  if (center_distance < 0)
    throw std::invalid_argument("mutual_inductance_coplanar: distance < 0");
  const double radius_gap = std::abs(p.radius - q.radius);
  if (center_distance == 0.0 && radius_gap < 1e-12 * (p.radius + q.radius))
    throw std::invalid_argument(
        "mutual_inductance_coplanar: zero distance with equal radii is the "
        "divergent self-inductance limit");

  const auto kernel = [&](double s) {
    return std::complex<double>(numerics::bessel_j(0, s * center_distance) *
                                numerics::bessel_j(1, s * p.radius) *
                                numerics::bessel_j(1, s * q.radius));
  };
  // Fastest combined oscillation of the three Bessel factors.
  const double scale = center_distance + p.radius + q.radius;
  const std::complex<double> val =
      numerics::integrate_oscillatory_semiinfinite(kernel, scale, quad);
  return permeability * std::numbers::pi * p.radius * q.radius * p.turns *
         q.turns * val.real();
}

}  // namespace mibc::coils
