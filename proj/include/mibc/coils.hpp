#ifndef MIBC_COILS_HPP
#define MIBC_COILS_HPP

#include <Eigen/Core>
#include <complex>

#include "mibc/numerics.hpp"

namespace mibc::coils {

/// Electrical and geometric description of a single-layer circular coil.
/// The series RLC branch gives impedance r + j(wl - 1/(wc)).
struct CoilSpec {
  double radius = 0.0;           // loop radius a [m]
  int turns = 0;                 // N
  double wire_radius = 0.0;      // [m], must be < radius
  double resistance = 0.0;       // r [ohm]
  double self_inductance = 0.0;  // l [H]
  double capacitance = 0.0;      // c [F], tuning capacitor

  void validate() const;
};

/// Position and axis direction of a coil in 3-space. The orientation is
/// the coil's magnetic axis and must be unit length (|n| = 1 +- 1e-12).
struct Pose {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d orientation = Eigen::Vector3d::UnitZ();

  void validate() const;
};

struct PlacedCoil {
  CoilSpec spec;
  Pose pose;
};

/// Series-RLC impedance with an impedance-modulation phase offset:
/// z = [r + j(wl - 1/(wc))] e^{j theta}. theta = 0 is the predefined
/// (unmodulated) state.
std::complex<double> impedance(const CoilSpec& spec, double omega,
                               double phase_offset = 0.0);

/// Capacitance tuning the series branch to resonance: c = 1/(w^2 l).
double resonance_capacitance(double self_inductance, double omega);

/// Mutual inductance of two coaxial-axis coils lying in a common plane,
/// evaluated from the exact Bessel-product integral
///   m = mu pi a_p a_q N_p N_q  Int_0^inf J0(s d) J1(s a_p) J1(s a_q) ds.
/// The equal-radius, zero-distance case is the self-inductance limit and
/// is rejected (the integral diverges there).
double mutual_inductance_coplanar(const CoilSpec& p, const CoilSpec& q,
                                  double center_distance, double permeability,
                                  const numerics::QuadratureSpec& quad = {});

}  // namespace mibc::coils

#endif  // MIBC_COILS_HPP
