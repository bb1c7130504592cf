#include "mibc/circuit.hpp"

#include <Eigen/Dense>
#include <stdexcept>

namespace mibc::coils {

namespace {
using cd = std::complex<double>;
}

ImpedanceMatrix assemble_impedance_matrix(
    const std::vector<PlacedCoil>& transmit_coils, const PlacedCoil& receiver,
    const PlacedCoil& sensor, double theta_p,
    const media::LayeredScenario& scenario,
    const numerics::QuadratureSpec& quad) {
  scenario.validate();
  const int nt = static_cast<int>(transmit_coils.size());
  if (nt < 1)
    throw std::invalid_argument("assemble: need at least one transmit coil");
  for (const auto& c : transmit_coils) {
    c.spec.validate();
    if (std::abs(c.pose.position.z()) > 1e-12)
      throw std::invalid_argument("assemble: reader coils must lie at z = 0");
  }
  receiver.spec.validate();
  sensor.spec.validate();

  const double omega = scenario.angular_frequency;
  const cd jw(0.0, omega);
  const double mu_air =
      media::kVacuumPermeability * scenario.air.relative_permeability;

  ImpedanceMatrix out;
  out.n_transmit = nt;
  out.z = Eigen::MatrixXcd::Zero(nt + 2, nt + 2);
  const int si = out.sensor_index();
  const int ri = out.receiver_index();

  for (int k = 0; k < nt; ++k)
    out.z(k, k) = impedance(transmit_coils[k].spec, omega);
  out.z(si, si) = impedance(sensor.spec, omega, theta_p);
  out.z(ri, ri) = impedance(receiver.spec, omega);

  for (int p = 0; p < nt; ++p) {
    for (int q = p + 1; q < nt; ++q) {
      const double d = (transmit_coils[p].pose.position -
                        transmit_coils[q].pose.position)
                           .norm();
      const double m = mutual_inductance_coplanar(
          transmit_coils[p].spec, transmit_coils[q].spec, d, mu_air, quad);
      out.z(p, q) = out.z(q, p) = jw * m;
    }
  }

  for (int k = 0; k < nt; ++k) {
    const cd m =
        media::mutual_inductance_cross(transmit_coils[k], sensor, scenario,
                                       quad);
    out.z(k, si) = out.z(si, k) = jw * m;
    out.z(k, ri) = out.z(ri, k) = 0.0;  // full-duplex isolation
  }
  const cd m_sr =
      media::mutual_inductance_cross(receiver, sensor, scenario, quad);
  out.z(si, ri) = out.z(ri, si) = jw * m_sr;
  return out;
}

Eigen::VectorXcd solve_circuit(const ImpedanceMatrix& z,
                               const Eigen::VectorXcd& v) {
  if (v.size() != z.z.rows())
    throw std::invalid_argument("solve_circuit: size mismatch");
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(z.z);
  if (!lu.isInvertible())
    throw std::runtime_error(
        "solve_circuit: singular impedance matrix (degenerate coil placement)");
  const Eigen::VectorXcd i = lu.solve(v);
  const double vn = v.norm();
  if (vn > 0.0 && (z.z * i - v).norm() / vn > 1e-10)
    throw std::runtime_error("solve_circuit: residual exceeds tolerance");
  return i;
}

}  // namespace mibc::coils
