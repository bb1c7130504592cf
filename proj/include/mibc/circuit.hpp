#ifndef MIBC_CIRCUIT_HPP
#define MIBC_CIRCUIT_HPP

#include <Eigen/Core>
#include <complex>
#include <vector>

#include "mibc/coils.hpp"
#include "mibc/media.hpp"

namespace mibc::coils {

/// Full system coupling matrix of N_t transmit coils, one sensor and one
/// receive coil, in that index order (transmit 1..N_t, sensor N_t+1,
/// receiver N_t+2). Symmetric by reciprocity; diagonal entries are coil
/// self-impedances, off-diagonal (i,p) entries are j w m_ip; the
/// transmit-receiver couplings are identically zero (full-duplex
/// isolation).
struct ImpedanceMatrix {
  Eigen::MatrixXcd z;
  int n_transmit = 0;

  int sensor_index() const { return n_transmit; }
  int receiver_index() const { return n_transmit + 1; }
  int size() const { return n_transmit + 2; }

  /// Top-left N_t x N_t transmit block.
  Eigen::MatrixXcd transmit_block() const {
    return z.topLeftCorner(n_transmit, n_transmit);
  }
};

/// Builds the coupling matrix for vertical transmit/receive coils in the
/// z = 0 plane and one buried sensor. Transmit-transmit couplings come
/// from the exact coplanar integral, transmit-sensor and sensor-receiver
/// couplings from the stratified-medium model, and transmit-receiver
/// entries are forced to zero. theta_p is the sensor's impedance
/// modulation phase.
ImpedanceMatrix assemble_impedance_matrix(
    const std::vector<PlacedCoil>& transmit_coils, const PlacedCoil& receiver,
    const PlacedCoil& sensor, double theta_p,
    const media::LayeredScenario& scenario,
    const numerics::QuadratureSpec& quad = {});

/// Direct solve of v = Z i. Throws on singular Z (degenerate placement)
/// and checks the residual of the computed solution.
Eigen::VectorXcd solve_circuit(const ImpedanceMatrix& z,
                               const Eigen::VectorXcd& v);

}  // namespace mibc::coils

#endif  // MIBC_CIRCUIT_HPP
