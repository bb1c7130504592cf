#ifndef MIBC_ESTIMATION_HPP
#define MIBC_ESTIMATION_HPP

#include <Eigen/Core>
#include <complex>

namespace mibc::estimation {

/// Output of the three-phase dyadic-backscatter channel estimation.
/// beta is the factor that maps receiver noise into sensor-receiver
/// estimation error: m_sr - m_hat_sr = beta * n_r, so the error is
/// CN(0, |beta|^2 sigma_r^2).
struct EstimationResult {
  Eigen::VectorXcd m_hat_ts;        // transmit->sensor couplings [H]
  std::complex<double> m_hat_sr;    // sensor->receiver coupling [H]
  std::complex<double> beta;        // error scale
  double error_variance = 0.0;      // |beta|^2 sigma_r^2
};

/// Phase 1: voltage induced across the sensor coil by the estimation CW,
/// v_s = -sum_k i_k j w m_ks (sensor-side noise neglected against the
/// large induced voltage).
std::complex<double> phase1_sensor_voltage(const Eigen::VectorXcd& tx_currents,
                                           const Eigen::VectorXcd& m_ts,
                                           double omega);

/// Phase 2: voltage across the receive coil while the sensor presents the
/// predefined impedance, v_r = -sum_k i_k w^2 m_ks m_sr / z_sprd + n_r.
std::complex<double> phase2_receiver_voltage(
    const Eigen::VectorXcd& tx_currents, const Eigen::VectorXcd& m_ts,
    std::complex<double> m_sr, std::complex<double> z_sprd, double omega,
    std::complex<double> receiver_noise);

/// Recovers both channel estimates from the transmit-side measurements
/// and the phase-2 receiver snapshot:
///   m_hat_ts = (v_Nt - Z_Nt i_Nt) / (j w i_s)
///   m_hat_sr = -v_r z_sprd / sum_k w^2 i_k m_hat_ts,k
/// With zero receiver noise both are exact. Throws when i_s = 0 or when
/// the phase-2 denominator vanishes (orientation-null excitation).
EstimationResult estimate_channels(const Eigen::VectorXcd& v_nt,
                                   const Eigen::VectorXcd& i_nt,
                                   const Eigen::MatrixXcd& z_nt,
                                   std::complex<double> sensor_current,
                                   std::complex<double> receiver_voltage,
                                   std::complex<double> z_sprd, double omega,
                                   double noise_variance);

}  // namespace mibc::estimation

#endif  // MIBC_ESTIMATION_HPP
