#include "mibc/media.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace mibc::media {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// Graded subdivision around the spectral branch points |k1|, |k2| plus the
// regular cadence start. Keeps the integrable 1/k2z behavior (lossless
// limit) confined to segment endpoints, where the geometric refinement
// makes Gauss-Legendre converge again.
std::vector<double> branch_point_breakpoints(double k1_mag, double k2_mag,
                                             double segment_length) {
  std::vector<double> pts;
  const double cutoff = 40.0 * segment_length;
  for (double kb : {k1_mag, k2_mag}) {
    if (!(kb > 0.0) || kb >= cutoff) continue;
    pts.push_back(kb);
    for (int m = 0; m <= 18; ++m) {
      const double d = kb * std::pow(2.0, -m);
      if (kb - d > 0.0) pts.push_back(kb - d);
      if (kb + d < cutoff) pts.push_back(kb + d);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](double a, double b) {
                          return std::abs(a - b) <= 1e-14 * (a + b);
                        }),
            pts.end());
  return pts;
}

struct SpectralParts {
  cd k1, k2;
  double mu1, mu2;
  double d1;
};

SpectralParts spectral_parts(const LayeredScenario& sc) {
  return {wavenumber(sc.air, sc.angular_frequency),
          wavenumber(sc.soil, sc.angular_frequency),
          sc.air.relative_permeability, sc.soil.relative_permeability,
          sc.interface_depth};
}

cd transmission_from_parts(const SpectralParts& p, double k_rho) {
  const cd k1z = kz(p.k1, k_rho);
  const cd k2z = kz(p.k2, k_rho);
  return 2.0 * p.mu2 * k1z / (p.mu2 * k1z + p.mu1 * k2z) *
         std::exp(cd(0.0, 1.0) * p.d1 * (k1z - k2z));
}

// Raw (uncalibrated) folded Sommerfeld integrals. `current * pi a^2 N`
// enters as the dipole moment; z < -d1.
struct RawField {
  cd h_z, h_rho;
};

RawField raw_field(const LayeredScenario& sc, double moment, double rho,
                   double z, const numerics::QuadratureSpec& quad) {
  const SpectralParts p = spectral_parts(sc);
  const cd j(0.0, 1.0);

  const auto kz2 = [&p](double k_rho) { return kz(p.k2, k_rho); };
  const auto common = [&](double k_rho) {
    return transmission_from_parts(p, k_rho) * std::exp(-j * kz2(k_rho) * z);
  };
  const auto fz = [&](double k_rho) -> cd {
    return k_rho * k_rho * k_rho / kz2(k_rho) *
           numerics::bessel_j(0, k_rho * rho) * common(k_rho);
  };
  const auto frho = [&](double k_rho) -> cd {
    return k_rho * k_rho * numerics::bessel_j(1, k_rho * rho) * common(k_rho);
  };

  // J0(k_rho rho) oscillates on scale rho; the evanescent tail decays on
  // scale |z|. Segments of pi/(rho + |z|) resolve both.
  const double scale = rho + std::abs(z);
  const auto head =
      branch_point_breakpoints(std::abs(p.k1), std::abs(p.k2), kPi / scale);

  const cd iz = numerics::integrate_oscillatory_semiinfinite(fz, scale, quad,
                                                             head);
  const cd irho = (rho == 0.0)
                      ? cd(0.0)  // J1(0) = 0: integrand vanishes identically
                      : numerics::integrate_oscillatory_semiinfinite(
                            frho, scale, quad, head);
  RawField f;
  f.h_z = -j * moment / (8.0 * kPi) * 2.0 * iz;
  f.h_rho = moment / (8.0 * kPi) * 2.0 * irho;
  return f;
}

}  // namespace

void MediumSpec::validate() const {
  if (!(relative_permittivity >= 1.0) || !(relative_permeability > 0.0) ||
      !(conductivity >= 0.0) || !std::isfinite(relative_permittivity) ||
      !std::isfinite(relative_permeability) || !std::isfinite(conductivity))
    throw std::invalid_argument("MediumSpec: invalid material parameters");
}

void LayeredScenario::validate() const {
  air.validate();
  soil.validate();
  if (!(interface_depth > 0.0))
    throw std::invalid_argument("LayeredScenario: interface_depth must be > 0");
  if (!(angular_frequency > 0.0))
    throw std::invalid_argument(
        "LayeredScenario: angular_frequency must be > 0");
}

cd complex_permittivity(const MediumSpec& medium, double omega) {
  return {kVacuumPermittivity * medium.relative_permittivity,
          medium.conductivity / omega};
}

cd wavenumber(const MediumSpec& medium, double omega) {
  if (!(omega > 0.0)) throw std::invalid_argument("wavenumber: omega <= 0");
  const cd eps = complex_permittivity(medium, omega);
  const double mu = kVacuumPermeability * medium.relative_permeability;
  return omega * std::sqrt(mu * eps);
}

cd kz(cd k, double k_rho) {
  if (k_rho < 0.0) throw std::invalid_argument("kz: k_rho must be >= 0");
  cd arg = k * k - k_rho * k_rho;
  // Keep the lossless evanescent case on the Im > 0 side of the cut.
  if (arg.imag() == 0.0) arg = cd(arg.real(), +0.0);
  return std::sqrt(arg);
}

cd transmission_coeff(const LayeredScenario& scenario, double k_rho) {
  return transmission_from_parts(spectral_parts(scenario), k_rho);
}

cd reflection_coeff(const LayeredScenario& scenario, double k_rho) {
  const SpectralParts p = spectral_parts(scenario);
  const cd k1z = kz(p.k1, k_rho);
  const cd k2z = kz(p.k2, k_rho);
  return (p.mu2 * k1z - p.mu1 * k2z) / (p.mu2 * k1z + p.mu1 * k2z) *
         std::exp(cd(0.0, 2.0) * k1z * p.d1);
}

cd dipole_field_calibration(double omega) {
  static std::mutex mu;
  static std::map<double, cd> cache;
  std::scoped_lock lock(mu);
  if (auto it = cache.find(omega); it != cache.end()) return it->second;

  // Homogeneous free space, on-axis reference at mid working range. The
  // static on-axis dipole field of unit moment at range d is 1/(2 pi d^3).
  LayeredScenario vac;
  vac.air = MediumSpec{};
  vac.soil = MediumSpec{};
  vac.interface_depth = 0.05;
  vac.angular_frequency = omega;
  constexpr double kReferenceRange = 0.45;
  numerics::QuadratureSpec tight;
  tight.relative_tolerance = 1e-11;
  tight.max_segments = 400;
  const RawField f = raw_field(vac, 1.0, 0.0, -kReferenceRange, tight);
  const cd cal = (1.0 / (2.0 * kPi * std::pow(kReferenceRange, 3))) / f.h_z;
  cache.emplace(omega, cal);
  return cal;
}

FieldPoint h_field_underground(const coils::CoilSpec& source, cd current,
                               const LayeredScenario& scenario, double rho,
                               double phi, double z,
                               const numerics::QuadratureSpec& quad) {
  scenario.validate();
  if (!(z < -scenario.interface_depth))
    throw std::invalid_argument(
        "h_field_underground: observation must lie below the interface");
  if (rho < 0.0)
    throw std::invalid_argument("h_field_underground: rho must be >= 0");

  const double moment = kPi * source.radius * source.radius * source.turns;
  const cd cal = dipole_field_calibration(scenario.angular_frequency);
  const RawField f = raw_field(scenario, moment, rho, z, quad);

  FieldPoint out;
  out.h_z = cal * current * f.h_z;
  out.h_rho = cal * current * f.h_rho;
  out.h_phi = 0.0;
  out.rho = rho;
  out.phi = phi;
  out.z = z;
  return out;
}

cd mutual_inductance_cross(const coils::PlacedCoil& source_in_air,
                           const coils::PlacedCoil& sensor_in_soil,
                           const LayeredScenario& scenario,
                           const numerics::QuadratureSpec& quad) {
  source_in_air.pose.validate();
  sensor_in_soil.pose.validate();
  if (std::abs(source_in_air.pose.position.z()) > 1e-12)
    throw std::invalid_argument(
        "mutual_inductance_cross: source must lie in the z = 0 reader plane");
  if (!(sensor_in_soil.pose.position.z() < -scenario.interface_depth))
    throw std::invalid_argument(
        "mutual_inductance_cross: sensor must lie below the interface");

  const Eigen::Vector3d d =
      sensor_in_soil.pose.position - source_in_air.pose.position;
  const double rho = std::hypot(d.x(), d.y());
  const double z = sensor_in_soil.pose.position.z();

  const cd probe_current = 1.0;
  const FieldPoint h = h_field_underground(source_in_air.spec, probe_current,
                                           scenario, rho, 0.0, z, quad);

  // Cylindrical -> Cartesian about the source axis, then project on the
  // sensor axis. On-axis the radial unit vector is undefined but h_rho = 0.
  Eigen::Vector3cd h_cart = Eigen::Vector3cd::Zero();
  if (rho > 0.0) {
    const Eigen::Vector3d rho_hat(d.x() / rho, d.y() / rho, 0.0);
    h_cart += h.h_rho * rho_hat.cast<cd>();
  }
  h_cart += h.h_z * Eigen::Vector3cd::UnitZ();

  // Eigen's dot conjugates its first argument; putting the real axis
  // vector there keeps h un-conjugated.
  const cd h_dot_n =
      sensor_in_soil.pose.orientation.cast<cd>().dot(h_cart);
  const double mu2 =
      kVacuumPermeability * scenario.soil.relative_permeability;
  const double area_turns = kPi * sensor_in_soil.spec.radius *
                            sensor_in_soil.spec.radius *
                            sensor_in_soil.spec.turns;
  return mu2 * area_turns * h_dot_n / probe_current;
}

double propagation_efficiency_mi(cd mutual_inductance, double sensor_resistance,
                                 double omega) {
  if (!(sensor_resistance > 0.0))
    throw std::invalid_argument(
        "propagation_efficiency_mi: sensor resistance must be > 0");
  const double w2m2 = omega * omega * std::norm(mutual_inductance);
  return w2m2 / (2.0 * (w2m2 + 2.0 * sensor_resistance * sensor_resistance));
}

double propagation_efficiency_em(const EMLinkSpec& link,
                                 const LayeredScenario& scenario) {
  if (!(link.path_air > 0.0) || !(link.path_soil > 0.0) ||
      !(link.gain_air > 0.0) || !(link.gain_soil > 0.0))
    throw std::invalid_argument("propagation_efficiency_em: invalid link");
  const double omega = scenario.angular_frequency;
  const cd k1 = wavenumber(scenario.air, omega);
  const cd k2 = wavenumber(scenario.soil, omega);
  const double lambda1 = 2.0 * kPi / k1.real();
  const double lambda2 = 2.0 * kPi / k2.real();
  const double k2_imag = k2.imag();

  const double mu1 = kVacuumPermeability * scenario.air.relative_permeability;
  const double mu2 = kVacuumPermeability * scenario.soil.relative_permeability;
  const cd eta1 = std::sqrt(complex_permittivity(scenario.air, omega) / mu1);
  const cd eta2 = std::sqrt(complex_permittivity(scenario.soil, omega) / mu2);
  const double t_em = std::abs(2.0 * eta2 / (eta2 + eta1));

  const double spread1 = std::pow(lambda1 / (4.0 * kPi * link.path_air), 2);
  const double spread2 = std::pow(lambda2 / (4.0 * kPi * link.path_soil), 2);
  return spread1 * spread2 * link.gain_air * link.gain_soil * t_em *
         std::exp(-2.0 * k2_imag * link.path_soil);
}

}  // namespace mibc::media
