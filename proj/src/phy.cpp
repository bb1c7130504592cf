#include "mibc/phy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mibc::phy {

namespace {
using cd = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool power_of_two(int m) { return m >= 2 && (m & (m - 1)) == 0; }

double wrap_pi(double a) {
  a = std::fmod(a, kTwoPi);
  if (a <= -std::numbers::pi) a += kTwoPi;
  if (a > std::numbers::pi) a -= kTwoPi;
  return a;
}
}  // namespace

SymbolSet::SymbolSet(cd z_s, int m) : base_impedance(z_s), order(m) {
  if (!power_of_two(m))
    throw std::invalid_argument("SymbolSet: order must be a power of two >= 2");
  if (z_s == cd(0.0))
    throw std::invalid_argument("SymbolSet: base impedance must be nonzero");
}

double SymbolSet::phase(int p) const {
  if (p < 1 || p > order) throw std::out_of_range("SymbolSet: bad index");
  return kTwoPi * (p - 1) / order;
}

cd SymbolSet::admittance(int p) const {
  return 1.0 / (base_impedance * std::exp(cd(0.0, phase(p))));
}

double SymbolSet::admittance_magnitude() const {
  return 1.0 / std::abs(base_impedance);
}

int SymbolSet::bits_per_symbol() const {
  int b = 0;
  for (int v = order; v > 1; v >>= 1) ++b;
  return b;
}

BackscatterGain backscatter_gain(const Eigen::VectorXcd& tx_currents,
                                 const Eigen::VectorXcd& m_ts, cd m_sr,
                                 double omega) {
  if (tx_currents.size() != m_ts.size())
    throw std::invalid_argument("backscatter_gain: length mismatch");
  const cd coupled = (tx_currents.transpose() * m_ts).value();
  return {-omega * omega * coupled * m_sr};
}

DifferentialFrame transmit_frame(int p, const SymbolSet& symbols,
                                 const BackscatterGain& gain, cd noise1,
                                 cd noise2) {
  const cd y_ref = symbols.admittance(1);
  const cd rot = std::exp(cd(0.0, symbols.differential_phase(p)));
  return {gain.g * y_ref + noise1, gain.g * y_ref * rot + noise2};
}

int detect(const DifferentialFrame& frame, const SymbolSet& symbols) {
  if (frame.r1 == cd(0.0))
    throw std::runtime_error("detect: zero reference interval");
  const double delta = std::arg(frame.r2) - std::arg(frame.r1);
  int best = 1;
  double best_dist = std::abs(wrap_pi(delta - symbols.differential_phase(1)));
  for (int p = 2; p <= symbols.order; ++p) {
    const double d = std::abs(wrap_pi(delta - symbols.differential_phase(p)));
    if (d < best_dist) {
      best_dist = d;
      best = p;
    }
  }
  return best;
}

double snr(const BackscatterGain& gain, const SymbolSet& symbols,
           double noise_variance) {
  if (!(noise_variance > 0.0))
    throw std::invalid_argument("snr: noise variance must be > 0");
  const double s = gain.magnitude() * symbols.admittance_magnitude();
  return s * s / noise_variance;
}

double data_rate(double bandwidth, int order) {
  if (!power_of_two(order))
    throw std::invalid_argument("data_rate: order must be a power of two");
  int bits = 0;
  for (int v = order; v > 1; v >>= 1) ++bits;
  return bandwidth * bits;
}

std::uint32_t gray_encode(std::uint32_t v) { return v ^ (v >> 1); }

std::uint32_t gray_decode(std::uint32_t g) {
  std::uint32_t v = g;
  for (std::uint32_t shift = 1; shift < 32; shift <<= 1) v ^= v >> shift;
  return v;
}

std::vector<cd> encode_packet(const std::vector<int>& symbols,
                              const SymbolSet& set) {
  std::vector<cd> intervals;
  intervals.reserve(symbols.size() + 1);
  cd cur = set.admittance(1);
  intervals.push_back(cur);
  for (int p : symbols) {
    cur *= std::exp(cd(0.0, set.differential_phase(p)));
    intervals.push_back(cur);
  }
  return intervals;
}

std::vector<int> detect_packet(const std::vector<cd>& received,
                               const SymbolSet& set) {
  if (received.size() < 2)
    throw std::invalid_argument("detect_packet: need pilot plus data");
  std::vector<int> out;
  out.reserve(received.size() - 1);
  for (std::size_t k = 1; k < received.size(); ++k)
    out.push_back(detect({received[k - 1], received[k]}, set));
  return out;
}

}  // namespace mibc::phy
