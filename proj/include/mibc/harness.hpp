#ifndef MIBC_HARNESS_HPP
#define MIBC_HARNESS_HPP

#include <Eigen/Core>
#include <complex>
#include <string>
#include <vector>

#include "mibc/estimation.hpp"
#include "mibc/rng.hpp"
#include "mibc/scenario.hpp"

namespace mibc::harness {

/// True channel state of one geometry: couplings of every transmit coil
/// and of the receive coil to the sensor, plus the transmit block of the
/// impedance matrix.
struct ChannelState {
  Eigen::VectorXcd m_ts;
  std::complex<double> m_sr;
  Eigen::MatrixXcd z_nt;
};

/// How the data-phase transmit currents are chosen per trial.
struct DataMode {
  enum Kind { kTargetSnr, kFixedPower } kind = kTargetSnr;
  double value = 0.0;  // linear SNR target, or watts

  static DataMode target_snr_db(double db);
  static DataMode fixed_power(double watts);
};

/// Per-trial diagnostics (single-trial API used by tests).
struct TrialResult {
  estimation::EstimationResult estimate;
  double achieved_snr = 0.0;
  int symbol_errors = 0;
  int bit_errors = 0;
  int bits = 0;
};

/// One sweep point aggregate.
struct PointResult {
  double grid_value = 0.0;
  long long bit_errors = 0;
  long long bits = 0;
  double ber = 0.0;
  double ci_halfwidth = 0.0;  // 95% normal-approximation binomial interval
  bool ok = true;
  std::string error;          // set when the point was skipped
};

/// Result of one sweep: a named grid and one value per completed point.
/// Skipped points are kept separately so curves never contain silent
/// zeros.
struct BERCurve {
  std::string label;            // e.g. "depth_m=0.15"
  std::string variable_name;    // CSV first column header
  std::string value_name;       // "ber" or "efficiency"
  std::vector<double> grid;
  std::vector<double> value;
  std::vector<double> ci_halfwidth;
  std::vector<long long> trials;
  std::uint64_t seed = 0;
  std::vector<PointResult> skipped;
};

ChannelState build_channel(const ScenarioConfig& cfg,
                           const media::LayeredScenario& scenario,
                           double depth, double horizontal_offset);

/// Runs one estimation + beamform + frame trial against the true channel.
TrialResult run_single_trial(const ChannelState& ch, const ScenarioConfig& cfg,
                             const DataMode& mode, rng::TrialRng& rng);

/// Monte Carlo over `trials` independent differential frames. Trials are
/// partitioned across `threads` workers; per-trial counter-based streams
/// make the result independent of the partitioning.
PointResult run_point(const ChannelState& ch, const ScenarioConfig& cfg,
                      const DataMode& mode, long long trials,
                      std::uint64_t point_index, int threads);

/// BER versus beamformed SNR target, one curve per sensor depth.
std::vector<BERCurve> run_ber_vs_snr(const ScenarioConfig& cfg,
                                     const std::vector<double>& snr_grid_db,
                                     const std::vector<double>& depths,
                                     int threads = 1);

/// BER versus soil conductivity at fixed data power.
BERCurve run_ber_vs_conductivity(const ScenarioConfig& cfg,
                                 const std::vector<double>& sigma_grid,
                                 int threads = 1);

/// BER versus channel-estimation power (SNR-target data phase), one curve
/// per soil conductivity.
std::vector<BERCurve> run_ber_vs_estimation_power(
    const ScenarioConfig& cfg, const std::vector<double>& ph_grid,
    const std::vector<double>& sigma_set, int threads = 1);

/// Normalized MI and EM propagation efficiencies over conductivity, both
/// divided by their value at 1 mS/m. The link is the on-axis single-coil
/// geometry the plane-wave model assumes.
std::vector<BERCurve> run_efficiency_vs_conductivity(
    const ScenarioConfig& cfg, const std::vector<double>& sigma_grid);

/// Writes curves as CSV. One curve: header `<variable>,<value>,
/// ci_halfwidth,trials,seed`. Several curves: either one stacked file
/// with a leading `curve` column (split_files = false) or one file per
/// curve with the label appended to the stem. Values are printed with 12
/// significant digits.
void emit_csv(const std::vector<BERCurve>& curves, const std::string& path,
              bool split_files = false);

}  // namespace mibc::harness

#endif  // MIBC_HARNESS_HPP
