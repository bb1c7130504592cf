#ifndef MIBC_PHY_HPP
#define MIBC_PHY_HPP

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <vector>

namespace mibc::phy {

/// m-ary DPSK impedance symbol set. Symbol p (1-based) modulates the coil
/// to z_s e^{j theta_p} with theta_p = 2 pi (p-1)/m; the corresponding
/// admittances all share one magnitude, so the symbol choice never moves
/// the SNR. Data rides on the phase increment between intervals.
struct SymbolSet {
  std::complex<double> base_impedance;  // z_s at theta = 0 (predefined state)
  int order = 2;                        // m, power of two

  SymbolSet(std::complex<double> z_s, int m);

  double phase(int p) const;                       // theta_p, p in [1, m]
  std::complex<double> admittance(int p) const;    // 1/(z_s e^{j theta_p})
  double differential_phase(int p) const { return phase(p); }
  double admittance_magnitude() const;
  int bits_per_symbol() const;
};

/// One differential signalling frame: received voltages of the reference
/// and data intervals.
struct DifferentialFrame {
  std::complex<double> r1, r2;
};

/// Composite dyadic channel gain g = -sum_k w^2 i_k m_ks m_sr. The
/// received voltage for admittance y is g y + n.
struct BackscatterGain {
  std::complex<double> g;  // [V * ohm]

  double magnitude() const { return std::abs(g); }
  double phase() const { return std::arg(g); }
};

BackscatterGain backscatter_gain(const Eigen::VectorXcd& tx_currents,
                                 const Eigen::VectorXcd& m_ts,
                                 std::complex<double> m_sr, double omega);

/// Sends symbol p as the pair [y_ref, y_ref e^{j phi_p}] through gain g
/// with additive noise on both intervals.
DifferentialFrame transmit_frame(int p, const SymbolSet& symbols,
                                 const BackscatterGain& gain,
                                 std::complex<double> noise1,
                                 std::complex<double> noise2);

/// Noncoherent differential detector: nearest differential phase to
/// arg(r2) - arg(r1) under wrapped angular distance. Independent of the
/// unknown channel phase. Throws if r1 = 0 (phase undefined).
int detect(const DifferentialFrame& frame, const SymbolSet& symbols);

/// Received SNR |g y|^2 / sigma_r^2 (identical for every symbol).
double snr(const BackscatterGain& gain, const SymbolSet& symbols,
           double noise_variance);

/// R = W log2 m.
double data_rate(double bandwidth, int order);

/// Binary-reflected Gray code over symbol indices 0..m-1; adjacent
/// differential phases differ in exactly one bit.
std::uint32_t gray_encode(std::uint32_t v);
std::uint32_t gray_decode(std::uint32_t g);

/// Differentially encodes a symbol-index sequence into coil admittances.
/// intervals[0] is the pilot (reference) interval; each data symbol
/// advances the phase of the previous interval.
std::vector<std::complex<double>> encode_packet(
    const std::vector<int>& symbols, const SymbolSet& set);

/// Chained differential detection of a received packet (pilot + data).
std::vector<int> detect_packet(
    const std::vector<std::complex<double>>& received, const SymbolSet& set);

}  // namespace mibc::phy

#endif  // MIBC_PHY_HPP
