#ifndef MIBC_SCENARIO_HPP
#define MIBC_SCENARIO_HPP

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mibc/coils.hpp"
#include "mibc/media.hpp"

namespace mibc::harness {

/// Reader board: four transmit coils at the corners of an inner rectangle
/// centered on the board, receive coil at the board center, all in the
/// z = 0 plane with vertical axes. The corner placement maximizes coil
/// separation on the board.
struct ReaderGeometry {
  double board_x = 0.15, board_y = 0.10;      // [m]
  double coil_rect_x = 0.11, coil_rect_y = 0.06;
  coils::CoilSpec transmit_coil;
  coils::CoilSpec receive_coil;

  std::vector<coils::PlacedCoil> transmit_coils() const;
  coils::PlacedCoil receiver() const;
};

/// Buried sensor: horizontal offset from the board center along +x,
/// depth measured below the air-soil interface.
struct SensorPlacement {
  coils::CoilSpec coil;
  double horizontal_offset = 0.5;                       // [m]
  double depth = 0.30;                                  // [m] below interface
  Eigen::Vector3d orientation = Eigen::Vector3d::UnitZ();

  coils::PlacedCoil placed(double interface_depth) const;
  coils::PlacedCoil placed_at(double interface_depth, double depth_override,
                              double offset_override) const;
};

/// Complete simulation scenario. Defaults reproduce the baseline
/// evaluation setup (13.56 MHz reader 5 cm above soil with eps_r = 5,
/// sigma = 0.01 S/m, four 2 cm transmit coils, -80 dBmV receiver noise,
/// DQPSK, 10,000 trials per sweep point).
struct ScenarioConfig {
  double frequency = 13.56e6;             // [Hz]
  media::MediumSpec air{};                // vacuum-like
  media::MediumSpec soil{5.0, 1.0, 0.01};
  double interface_depth = 0.05;          // d1 [m]

  ReaderGeometry reader;
  SensorPlacement sensor;

  double noise_dbmv = -80.0;              // RMS level re 1 mV
  int modulation_order = 4;               // DQPSK
  double estimation_power = 1.0;          // P_h [W]
  std::optional<double> data_power;       // P_l [W] (fixed-power sweeps)
  std::optional<double> data_target_snr_db;  // SNR-target sweeps
  long long trials = 10000;
  std::uint64_t rng_seed = 0x5eed0001;

  // Sweep grids used by the CLI subcommands.
  std::vector<double> snr_grid_db;        // -10 .. 20 dB, step 2
  std::vector<double> depth_grid;         // {0.15, 0.30, 0.45} m
  std::vector<double> sigma_grid;         // conductivity sweep [S/m]
  std::vector<double> estpower_grid;      // P_h sweep [W]
  std::vector<double> estpower_sigmas;    // one curve per conductivity
  std::vector<double> efficiency_sigma_grid;

  ScenarioConfig();  // fills coil specs and default grids

  double omega() const;
  double noise_sigma() const;             // sigma_r [V]
  double noise_variance() const;          // sigma_r^2 [V^2]
  media::LayeredScenario layered() const;
  media::LayeredScenario layered_with_conductivity(double sigma) const;
  std::complex<double> sensor_predefined_impedance() const;  // z_sprd

  void validate() const;
};

/// Loads a JSON scenario file over the defaults. Every key must belong to
/// the documented schema; unknown keys are errors. Coil capacitance may
/// be a number in farads or the string "resonant".
ScenarioConfig load_scenario(const std::string& path);

/// Parses scenario JSON text (used by load_scenario and tests).
ScenarioConfig parse_scenario(const std::string& json_text);

}  // namespace mibc::harness

#endif  // MIBC_SCENARIO_HPP
