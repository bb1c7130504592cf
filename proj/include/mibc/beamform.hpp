#ifndef MIBC_BEAMFORM_HPP
#define MIBC_BEAMFORM_HPP

#include <Eigen/Core>
#include <complex>

#include "mibc/phy.hpp"

namespace mibc::beamform {

/// Optimized transmit current phasors together with the real dissipated
/// power they cost and the SNR they buy.
struct TxStrategy {
  Eigen::VectorXcd currents;   // [A]
  double transmit_power = 0.0; // [W]
  double predicted_snr = 0.0;  // linear
};

/// SNR quadratic form C1 = conj(m_ts) m_ts^T |w^2 m_sr y|^2, so that the
/// received SNR of currents i is i^H C1 i / sigma_r^2. Hermitian PSD and
/// rank one; every symbol of the set yields the same matrix because the
/// admittance magnitudes agree.
Eigen::MatrixXcd build_quadratic_forms(const Eigen::VectorXcd& m_hat_ts,
                                       std::complex<double> m_hat_sr,
                                       const phy::SymbolSet& symbols,
                                       double omega);

/// Minimum-power transmit currents subject to i^H C1 i >= T sigma_r^2.
/// The power is the real dissipated power i^H H i / 2 with H the
/// Hermitian part of the transmit impedance block (at resonance with
/// purely reactive coupling H is just the resistance diagonal). The
/// rank-one constraint admits the closed form i ~ B^{-1} a scaled until
/// the constraint is active, which is exactly the tight point of the
/// semidefinite relaxation of this QCQP.
TxStrategy optimal_currents(const Eigen::MatrixXcd& z_nt,
                            const Eigen::MatrixXcd& c1, double target_snr,
                            double noise_variance);

/// Same optimal direction, scaled to spend exactly `power` watts; reports
/// the SNR that buys. Used by fixed-power sweeps.
TxStrategy currents_for_power(const Eigen::MatrixXcd& z_nt,
                              const Eigen::MatrixXcd& c1, double power,
                              double noise_variance);

}  // namespace mibc::beamform

#endif  // MIBC_BEAMFORM_HPP
