#include "mibc/estimation.hpp"

#include <stdexcept>

namespace mibc::estimation {

namespace {
using cd = std::complex<double>;
}

cd phase1_sensor_voltage(const Eigen::VectorXcd& tx_currents,
                         const Eigen::VectorXcd& m_ts, double omega) {
  if (tx_currents.size() != m_ts.size())
    throw std::invalid_argument("phase1: length mismatch");
  const cd jw(0.0, omega);
  return -(jw * tx_currents.transpose() * m_ts).value();
}

cd phase2_receiver_voltage(const Eigen::VectorXcd& tx_currents,
                           const Eigen::VectorXcd& m_ts, cd m_sr, cd z_sprd,
                           double omega, cd receiver_noise) {
  if (tx_currents.size() != m_ts.size())
    throw std::invalid_argument("phase2: length mismatch");
  if (z_sprd == cd(0.0))
    throw std::invalid_argument("phase2: z_sprd must be nonzero");
  const cd coupled = (tx_currents.transpose() * m_ts).value();
  return -omega * omega * coupled * m_sr / z_sprd + receiver_noise;
}

EstimationResult estimate_channels(const Eigen::VectorXcd& v_nt,
                                   const Eigen::VectorXcd& i_nt,
                                   const Eigen::MatrixXcd& z_nt,
                                   cd sensor_current, cd receiver_voltage,
                                   cd z_sprd, double omega,
                                   double noise_variance) {
  if (v_nt.size() != i_nt.size() || z_nt.rows() != v_nt.size() ||
      z_nt.cols() != v_nt.size())
    throw std::invalid_argument("estimate_channels: size mismatch");
  if (sensor_current == cd(0.0))
    throw std::invalid_argument("estimate_channels: sensor current is zero");

  EstimationResult out;
  const cd jw(0.0, omega);
  out.m_hat_ts = (v_nt - z_nt * i_nt) / (jw * sensor_current);

  const cd denom =
      omega * omega * (i_nt.transpose() * out.m_hat_ts).value();
  if (std::abs(denom) == 0.0)
    throw std::runtime_error(
        "estimate_channels: degenerate excitation (orientation null)");
  out.m_hat_sr = -receiver_voltage * z_sprd / denom;
  out.beta = z_sprd / denom;
  out.error_variance = std::norm(out.beta) * noise_variance;
  return out;
}

}  // namespace mibc::estimation
