#include "mibc/harness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "mibc/beamform.hpp"
#include "mibc/circuit.hpp"
#include "mibc/phy.hpp"

namespace mibc::harness {

namespace {

using cd = std::complex<double>;

Eigen::VectorXcd estimation_currents(const ScenarioConfig& cfg, int nt) {
  // Equal power split across transmit coils, common phase:
  // P_h/N_t = |i|^2 r_t / 2 per coil.
  const double amp = std::sqrt(2.0 * (cfg.estimation_power / nt) /
                               cfg.reader.transmit_coil.resistance);
  return Eigen::VectorXcd::Constant(nt, cd(amp, 0.0));
}

// 95% binomial half-width, normal approximation.
double binomial_ci(double p, long long n) {
  if (n <= 0) return 0.0;
  return 1.96 * std::sqrt(std::max(p * (1.0 - p), 0.0) / n);
}

std::string format_sig(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string sanitize(const std::string& s) {
  std::string out = s;
  for (char& c : out)
    if (c == '=' || c == '/' || c == ' ') c = '-';
  return out;
}

}  // namespace

DataMode DataMode::target_snr_db(double db) {
  return {kTargetSnr, std::pow(10.0, db / 10.0)};
}

DataMode DataMode::fixed_power(double watts) { return {kFixedPower, watts}; }

ChannelState build_channel(const ScenarioConfig& cfg,
                           const media::LayeredScenario& scenario,
                           double depth, double horizontal_offset) {
  const auto tx = cfg.reader.transmit_coils();
  const auto rx = cfg.reader.receiver();
  const auto sensor = cfg.sensor.placed_at(scenario.interface_depth, depth,
                                           horizontal_offset);
  const coils::ImpedanceMatrix z =
      coils::assemble_impedance_matrix(tx, rx, sensor, 0.0, scenario);

  ChannelState ch;
  const int nt = z.n_transmit;
  const cd jw(0.0, scenario.angular_frequency);
  ch.m_ts.resize(nt);
  for (int k = 0; k < nt; ++k) ch.m_ts(k) = z.z(k, z.sensor_index()) / jw;
  ch.m_sr = z.z(z.sensor_index(), z.receiver_index()) / jw;
  ch.z_nt = z.transmit_block();
  return ch;
}

TrialResult run_single_trial(const ChannelState& ch, const ScenarioConfig& cfg,
                             const DataMode& mode, rng::TrialRng& rng) {
  const double omega = cfg.omega();
  const double sigma2 = cfg.noise_variance();
  const cd z_sprd = cfg.sensor_predefined_impedance();
  const phy::SymbolSet symbols(z_sprd, cfg.modulation_order);
  const int nt = static_cast<int>(ch.m_ts.size());

  // Channel estimation round. The transmit-side measurements are clean;
  // the only noise is the phase-2 receiver snapshot.
  const Eigen::VectorXcd i_est = estimation_currents(cfg, nt);
  const cd v_s = estimation::phase1_sensor_voltage(i_est, ch.m_ts, omega);
  const cd i_s = v_s / z_sprd;
  const Eigen::VectorXcd v_nt =
      ch.z_nt * i_est + cd(0.0, omega) * i_s * ch.m_ts;
  const cd n_est = rng.complex_gaussian(sigma2);
  const cd v_r = estimation::phase2_receiver_voltage(i_est, ch.m_ts, ch.m_sr,
                                                     z_sprd, omega, n_est);

  TrialResult out;
  out.estimate = estimation::estimate_channels(v_nt, i_est, ch.z_nt, i_s, v_r,
                                               z_sprd, omega, sigma2);

  // Beamform against the estimated channel; the link then runs on the
  // true one.
  const Eigen::MatrixXcd c1 = beamform::build_quadratic_forms(
      out.estimate.m_hat_ts, out.estimate.m_hat_sr, symbols, omega);
  const beamform::TxStrategy strategy =
      (mode.kind == DataMode::kTargetSnr)
          ? beamform::optimal_currents(ch.z_nt, c1, mode.value, sigma2)
          : beamform::currents_for_power(ch.z_nt, c1, mode.value, sigma2);

  const phy::BackscatterGain gain =
      phy::backscatter_gain(strategy.currents, ch.m_ts, ch.m_sr, omega);
  out.achieved_snr = phy::snr(gain, symbols, sigma2);

  // One differential frame: Gray-coded bits on the phase increment.
  const int bits = symbols.bits_per_symbol();
  const std::uint32_t pattern = rng.below(1u << bits);
  const int tx_symbol =
      static_cast<int>(phy::gray_decode(pattern)) + 1;
  const phy::DifferentialFrame frame =
      phy::transmit_frame(tx_symbol, symbols, gain,
                          rng.complex_gaussian(sigma2),
                          rng.complex_gaussian(sigma2));
  const int rx_symbol = phy::detect(frame, symbols);

  out.bits = bits;
  out.symbol_errors = (rx_symbol != tx_symbol) ? 1 : 0;
  out.bit_errors = std::popcount(
      phy::gray_encode(static_cast<std::uint32_t>(tx_symbol - 1)) ^
      phy::gray_encode(static_cast<std::uint32_t>(rx_symbol - 1)));
  return out;
}

PointResult run_point(const ChannelState& ch, const ScenarioConfig& cfg,
                      const DataMode& mode, long long trials,
                      std::uint64_t point_index, int threads) {
  PointResult res;
  threads = std::max(1, threads);
  std::vector<long long> bit_errors(threads, 0), bits(threads, 0);
  std::vector<std::string> failures(threads);

  const auto worker = [&](int w) {
    try {
      long long be = 0, b = 0;
      for (long long t = w; t < trials; t += threads) {
        rng::TrialRng rng(cfg.rng_seed, point_index,
                          static_cast<std::uint64_t>(t));
        const TrialResult tr = run_single_trial(ch, cfg, mode, rng);
        be += tr.bit_errors;
        b += tr.bits;
      }
      bit_errors[w] = be;
      bits[w] = b;
    } catch (const std::exception& e) {
      failures[w] = e.what();
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& th : pool) th.join();
  }

  for (const auto& f : failures)
    if (!f.empty()) {
      res.ok = false;
      res.error = f;
      return res;
    }

  for (int w = 0; w < threads; ++w) {
    res.bit_errors += bit_errors[w];
    res.bits += bits[w];
  }
  res.ber = res.bits ? static_cast<double>(res.bit_errors) / res.bits : 0.0;
  res.ci_halfwidth = binomial_ci(res.ber, res.bits);
  return res;
}

namespace {

void append_point(BERCurve& curve, double grid_value, PointResult p,
                  long long trials) {
  p.grid_value = grid_value;
  if (!p.ok) {
    std::fprintf(stderr, "warning: point %s=%g skipped: %s\n",
                 curve.variable_name.c_str(), grid_value, p.error.c_str());
    curve.skipped.push_back(std::move(p));
    return;
  }
  curve.grid.push_back(grid_value);
  curve.value.push_back(p.ber);
  curve.ci_halfwidth.push_back(p.ci_halfwidth);
  curve.trials.push_back(trials);
}

}  // namespace

std::vector<BERCurve> run_ber_vs_snr(const ScenarioConfig& cfg,
                                     const std::vector<double>& snr_grid_db,
                                     const std::vector<double>& depths,
                                     int threads) {
  cfg.validate();
  std::vector<BERCurve> curves;
  std::uint64_t point = 0;
  for (double depth : depths) {
    BERCurve curve;
    curve.label = "depth_m=" + format_sig(depth);
    curve.variable_name = "snr_db";
    curve.value_name = "ber";
    curve.seed = cfg.rng_seed;

    ChannelState ch;
    bool channel_ok = true;
    try {
      ch = build_channel(cfg, cfg.layered(), depth, cfg.sensor.horizontal_offset);
    } catch (const std::exception& e) {
      channel_ok = false;
      for (double s : snr_grid_db) {
        PointResult p;
        p.ok = false;
        p.error = e.what();
        append_point(curve, s, std::move(p), cfg.trials);
      }
    }
    if (channel_ok) {
      for (double s : snr_grid_db) {
        append_point(curve, s,
                     run_point(ch, cfg, DataMode::target_snr_db(s), cfg.trials,
                               point, threads),
                     cfg.trials);
        ++point;
      }
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

BERCurve run_ber_vs_conductivity(const ScenarioConfig& cfg,
                                 const std::vector<double>& sigma_grid,
                                 int threads) {
  cfg.validate();
  if (!cfg.data_power)
    throw std::invalid_argument(
        "run_ber_vs_conductivity: scenario needs data_power_w (fixed-power sweep)");
  BERCurve curve;
  curve.label = "ber_vs_conductivity";
  curve.variable_name = "conductivity_s_per_m";
  curve.value_name = "ber";
  curve.seed = cfg.rng_seed;

  std::uint64_t point = 0;
  for (double sigma : sigma_grid) {
    PointResult p;
    try {
      const ChannelState ch =
          build_channel(cfg, cfg.layered_with_conductivity(sigma),
                        cfg.sensor.depth, cfg.sensor.horizontal_offset);
      p = run_point(ch, cfg, DataMode::fixed_power(*cfg.data_power), cfg.trials,
                    point, threads);
    } catch (const std::exception& e) {
      p.ok = false;
      p.error = e.what();
    }
    append_point(curve, sigma, std::move(p), cfg.trials);
    ++point;
  }
  return curve;
}

std::vector<BERCurve> run_ber_vs_estimation_power(
    const ScenarioConfig& cfg, const std::vector<double>& ph_grid,
    const std::vector<double>& sigma_set, int threads) {
  cfg.validate();
  if (!cfg.data_target_snr_db)
    throw std::invalid_argument(
        "run_ber_vs_estimation_power: scenario needs data_target_snr_db");
  std::vector<BERCurve> curves;
  std::uint64_t point = 0;
  for (double sigma : sigma_set) {
    BERCurve curve;
    curve.label = "sigma_s_per_m=" + format_sig(sigma);
    curve.variable_name = "estimation_power_w";
    curve.value_name = "ber";
    curve.seed = cfg.rng_seed;

    ChannelState ch;
    bool channel_ok = true;
    try {
      ch = build_channel(cfg, cfg.layered_with_conductivity(sigma),
                         cfg.sensor.depth, cfg.sensor.horizontal_offset);
    } catch (const std::exception& e) {
      channel_ok = false;
      for (double ph : ph_grid) {
        PointResult p;
        p.ok = false;
        p.error = e.what();
        append_point(curve, ph, std::move(p), cfg.trials);
      }
    }
    if (channel_ok) {
      for (double ph : ph_grid) {
        ScenarioConfig point_cfg = cfg;
        point_cfg.estimation_power = ph;
        PointResult p;
        try {
          p = run_point(ch, point_cfg,
                        DataMode::target_snr_db(*cfg.data_target_snr_db),
                        cfg.trials, point, threads);
        } catch (const std::exception& e) {
          p.ok = false;
          p.error = e.what();
        }
        append_point(curve, ph, std::move(p), cfg.trials);
        ++point;
      }
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

std::vector<BERCurve> run_efficiency_vs_conductivity(
    const ScenarioConfig& cfg, const std::vector<double>& sigma_grid) {
  cfg.validate();
  const double omega = cfg.omega();
  const double depth = cfg.sensor.depth;

  // On-axis single-coil link: the plane-wave model assumes the buried
  // coil sits directly under the one in air, so the MI reference uses
  // the same geometry.
  const auto link_mi = [&](double sigma) {
    coils::PlacedCoil src;
    src.spec = cfg.reader.transmit_coil;
    coils::PlacedCoil dst = cfg.sensor.placed_at(cfg.interface_depth, depth, 0.0);
    dst.pose.orientation = Eigen::Vector3d::UnitZ();
    const cd m = media::mutual_inductance_cross(
        src, dst, cfg.layered_with_conductivity(sigma));
    return media::propagation_efficiency_mi(m, cfg.sensor.coil.resistance,
                                            omega);
  };
  const auto link_em = [&](double sigma) {
    media::EMLinkSpec link;
    link.path_air = cfg.interface_depth;
    link.path_soil = depth;
    return media::propagation_efficiency_em(
        link, cfg.layered_with_conductivity(sigma));
  };

  constexpr double kReferenceSigma = 1e-3;  // 1 mS/m normalization point
  const double mi_ref = link_mi(kReferenceSigma);
  const double em_ref = link_em(kReferenceSigma);

  BERCurve mi, em;
  mi.label = "mi";
  em.label = "em";
  for (BERCurve* c : {&mi, &em}) {
    c->variable_name = "conductivity_s_per_m";
    c->value_name = "efficiency";
    c->seed = cfg.rng_seed;
  }
  for (double sigma : sigma_grid) {
    mi.grid.push_back(sigma);
    mi.value.push_back(link_mi(sigma) / mi_ref);
    mi.ci_halfwidth.push_back(0.0);
    mi.trials.push_back(0);
    em.grid.push_back(sigma);
    em.value.push_back(link_em(sigma) / em_ref);
    em.ci_halfwidth.push_back(0.0);
    em.trials.push_back(0);
  }
  return {std::move(mi), std::move(em)};
}

void emit_csv(const std::vector<BERCurve>& curves, const std::string& path,
              bool split_files) {
  if (curves.empty()) throw std::invalid_argument("emit_csv: no curves");

  const auto write_one = [](std::ofstream& out, const BERCurve& c,
                            bool with_label) {
    for (std::size_t i = 0; i < c.grid.size(); ++i) {
      if (with_label) out << c.label << ',';
      out << format_sig(c.grid[i]) << ',' << format_sig(c.value[i]) << ','
          << format_sig(c.ci_halfwidth[i]) << ',' << c.trials[i] << ','
          << c.seed << '\n';
    }
  };
  const auto open_checked = [&](const std::string& p) {
    std::ofstream out(p);
    if (!out)
      throw std::runtime_error("emit_csv: cannot open '" + p + "' for writing");
    return out;
  };

  if (curves.size() == 1) {
    auto out = open_checked(path);
    const BERCurve& c = curves.front();
    out << c.variable_name << ',' << c.value_name << ",ci_halfwidth,trials,seed\n";
    write_one(out, c, false);
    if (!out) throw std::runtime_error("emit_csv: write failed on '" + path + "'");
    return;
  }

  if (split_files) {
    const std::filesystem::path base(path);
    for (const BERCurve& c : curves) {
      std::filesystem::path p = base;
      p.replace_filename(base.stem().string() + "_" + sanitize(c.label) +
                         base.extension().string());
      auto out = open_checked(p.string());
      out << c.variable_name << ',' << c.value_name
          << ",ci_halfwidth,trials,seed\n";
      write_one(out, c, false);
      if (!out)
        throw std::runtime_error("emit_csv: write failed on '" + p.string() + "'");
    }
    return;
  }

  auto out = open_checked(path);
  out << "curve," << curves.front().variable_name << ','
      << curves.front().value_name << ",ci_halfwidth,trials,seed\n";
  for (const BERCurve& c : curves) write_one(out, c, true);
  if (!out) throw std::runtime_error("emit_csv: write failed on '" + path + "'");
}

}  // namespace mibc::harness
