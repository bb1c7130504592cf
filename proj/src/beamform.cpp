#include "mibc/beamform.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace mibc::beamform {

namespace {
using cd = std::complex<double>;

// Power matrix B with i^H B i the real dissipated power, and the
// B^{-1} u direction for rank-one C1 = (scaled) u u^H.
struct Solved {
  Eigen::VectorXcd direction;
  Eigen::MatrixXcd b;
};

Solved solve_direction(const Eigen::MatrixXcd& z_nt,
                       const Eigen::MatrixXcd& c1) {
  if (z_nt.rows() != z_nt.cols() || c1.rows() != c1.cols() ||
      z_nt.rows() != c1.rows())
    throw std::invalid_argument("beamform: matrix size mismatch");

  Eigen::MatrixXcd b = 0.25 * (z_nt + z_nt.adjoint());  // i^H B i = i^H H i / 2
  Eigen::LLT<Eigen::MatrixXcd> llt(b);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error(
        "beamform: transmit power form is not positive definite");

  // Range vector of the rank-one constraint matrix.
  const Eigen::RowVectorXd col_norms = c1.colwise().norm();
  Eigen::Index jmax = 0;
  col_norms.maxCoeff(&jmax);
  const Eigen::VectorXcd u = c1.col(jmax);
  if (u.norm() == 0.0)
    throw std::runtime_error("beamform: zero SNR form (sensor decoupled)");

  return {llt.solve(u), std::move(b)};
}

double quad(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& v) {
  return (v.adjoint() * m * v).value().real();
}
}  // namespace

Eigen::MatrixXcd build_quadratic_forms(const Eigen::VectorXcd& m_hat_ts,
                                       cd m_hat_sr,
                                       const phy::SymbolSet& symbols,
                                       double omega) {
  const double scale =
      std::norm(omega * omega * m_hat_sr) *
      symbols.admittance_magnitude() * symbols.admittance_magnitude();
  return scale * (m_hat_ts.conjugate() * m_hat_ts.transpose());
}

TxStrategy optimal_currents(const Eigen::MatrixXcd& z_nt,
                            const Eigen::MatrixXcd& c1, double target_snr,
                            double noise_variance) {
  if (!(target_snr > 0.0) || !(noise_variance > 0.0))
    throw std::invalid_argument("optimal_currents: target and noise must be > 0");
  auto [w, b] = solve_direction(z_nt, c1);

  const double achieved = quad(c1, w);
  if (!(achieved > 0.0))
    throw std::runtime_error("optimal_currents: degenerate SNR form");
  const double s = std::sqrt(target_snr * noise_variance / achieved);

  TxStrategy out;
  out.currents = s * w;
  out.transmit_power = quad(b, out.currents);
  out.predicted_snr = quad(c1, out.currents) / noise_variance;
  return out;
}

TxStrategy currents_for_power(const Eigen::MatrixXcd& z_nt,
                              const Eigen::MatrixXcd& c1, double power,
                              double noise_variance) {
  if (!(power > 0.0) || !(noise_variance > 0.0))
    throw std::invalid_argument("currents_for_power: power and noise must be > 0");
  auto [w, b] = solve_direction(z_nt, c1);

  const double cost = quad(b, w);
  const double s = std::sqrt(power / cost);

  TxStrategy out;
  out.currents = s * w;
  out.transmit_power = power;
  out.predicted_snr = quad(c1, out.currents) / noise_variance;
  return out;
}

}  // namespace mibc::beamform
