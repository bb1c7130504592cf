#include "mibc/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mibc::harness {

namespace {

using nlohmann::json;

coils::CoilSpec default_reader_coil() {
  coils::CoilSpec c;
  c.radius = 0.02;
  c.turns = 5;
  c.wire_radius = 0.00145;
  c.resistance = 0.13;
  c.self_inductance = 1.69e-6;
  c.capacitance = 81.51e-12;
  return c;
}

coils::CoilSpec default_sensor_coil(double omega) {
  coils::CoilSpec c;
  c.radius = 0.02;
  c.turns = 2;
  c.wire_radius = 0.00145;
  c.resistance = 0.013;
  c.self_inductance = 0.1e-6;
  // Tuned to resonance. The 81.51 pF sometimes quoted for this coil does
  // not resonate 0.1 uH at 13.56 MHz; set capacitance_f explicitly in a
  // scenario file to study the detuned variant.
  c.capacitance = coils::resonance_capacitance(c.self_inductance, omega);
  return c;
}

void require_keys(const json& obj, const std::string& where,
                  std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) {
        ok = true;
        break;
      }
    if (!ok)
      throw std::invalid_argument("scenario: unknown key '" + where + key +
                                  "'");
  }
}

void read_coil(const json& j, const std::string& where, double omega,
               coils::CoilSpec& c) {
  require_keys(j, where,
               {"radius_m", "turns", "wire_radius_m", "resistance_ohm",
                "self_inductance_h", "capacitance_f"});
  if (j.contains("radius_m")) c.radius = j["radius_m"].get<double>();
  if (j.contains("turns")) c.turns = j["turns"].get<int>();
  if (j.contains("wire_radius_m"))
    c.wire_radius = j["wire_radius_m"].get<double>();
  if (j.contains("resistance_ohm"))
    c.resistance = j["resistance_ohm"].get<double>();
  if (j.contains("self_inductance_h"))
    c.self_inductance = j["self_inductance_h"].get<double>();
  if (j.contains("capacitance_f")) {
    const auto& cap = j["capacitance_f"];
    if (cap.is_string()) {
      if (cap.get<std::string>() != "resonant")
        throw std::invalid_argument("scenario: capacitance_f must be a number "
                                    "or \"resonant\" at " +
                                    where);
      c.capacitance = coils::resonance_capacitance(c.self_inductance, omega);
    } else {
      c.capacitance = cap.get<double>();
    }
  }
}

void read_medium(const json& j, const std::string& where,
                 media::MediumSpec& m) {
  require_keys(j, where,
               {"relative_permittivity", "relative_permeability",
                "conductivity_s_per_m"});
  if (j.contains("relative_permittivity"))
    m.relative_permittivity = j["relative_permittivity"].get<double>();
  if (j.contains("relative_permeability"))
    m.relative_permeability = j["relative_permeability"].get<double>();
  if (j.contains("conductivity_s_per_m"))
    m.conductivity = j["conductivity_s_per_m"].get<double>();
}

std::vector<double> read_grid(const json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("scenario: sweep grids must be non-empty arrays");
  return j.get<std::vector<double>>();
}

}  // namespace

std::vector<coils::PlacedCoil> ReaderGeometry::transmit_coils() const {
  std::vector<coils::PlacedCoil> out;
  const double hx = 0.5 * coil_rect_x, hy = 0.5 * coil_rect_y;
  for (auto [sx, sy] :
       {std::pair{+1.0, +1.0}, {+1.0, -1.0}, {-1.0, +1.0}, {-1.0, -1.0}}) {
    coils::PlacedCoil c;
    c.spec = transmit_coil;
    c.pose.position = Eigen::Vector3d(sx * hx, sy * hy, 0.0);
    out.push_back(c);
  }
  return out;
}

coils::PlacedCoil ReaderGeometry::receiver() const {
  coils::PlacedCoil c;
  c.spec = receive_coil;
  c.pose.position = Eigen::Vector3d::Zero();
  return c;
}

coils::PlacedCoil SensorPlacement::placed(double interface_depth) const {
  return placed_at(interface_depth, depth, horizontal_offset);
}

coils::PlacedCoil SensorPlacement::placed_at(double interface_depth,
                                             double depth_override,
                                             double offset_override) const {
  coils::PlacedCoil c;
  c.spec = coil;
  c.pose.position =
      Eigen::Vector3d(offset_override, 0.0, -(interface_depth + depth_override));
  c.pose.orientation = orientation;
  return c;
}

ScenarioConfig::ScenarioConfig() {
  reader.transmit_coil = default_reader_coil();
  reader.receive_coil = default_reader_coil();
  sensor.coil = default_sensor_coil(omega());
  data_power = 1e-3;
  data_target_snr_db = 12.0;

  for (int s = -10; s <= 20; s += 2) snr_grid_db.push_back(s);
  depth_grid = {0.15, 0.30, 0.45};
  sigma_grid = {1e-3, 2e-3, 5e-3, 1e-2, 2e-2, 5e-2, 1e-1};
  estpower_grid = {1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 1.0};
  estpower_sigmas = {1e-3, 1e-2, 1e-1};
  efficiency_sigma_grid = {1e-3, 2e-3, 5e-3, 1e-2, 2e-2, 5e-2, 1e-1};
}

double ScenarioConfig::omega() const {
  return 2.0 * std::numbers::pi * frequency;
}

double ScenarioConfig::noise_sigma() const {
  return 1e-3 * std::pow(10.0, noise_dbmv / 20.0);  // dB re 1 mV, voltage ratio
}

double ScenarioConfig::noise_variance() const {
  const double s = noise_sigma();
  return s * s;
}

media::LayeredScenario ScenarioConfig::layered() const {
  media::LayeredScenario sc;
  sc.air = air;
  sc.soil = soil;
  sc.interface_depth = interface_depth;
  sc.angular_frequency = omega();
  return sc;
}

media::LayeredScenario ScenarioConfig::layered_with_conductivity(
    double sigma) const {
  media::LayeredScenario sc = layered();
  sc.soil.conductivity = sigma;
  return sc;
}

std::complex<double> ScenarioConfig::sensor_predefined_impedance() const {
  return coils::impedance(sensor.coil, omega());
}

void ScenarioConfig::validate() const {
  layered().validate();
  reader.transmit_coil.validate();
  reader.receive_coil.validate();
  sensor.coil.validate();
  if (!(frequency > 0)) throw std::invalid_argument("scenario: frequency <= 0");
  if (!(sensor.depth > 0))
    throw std::invalid_argument("scenario: sensor depth must be > 0");
  if (std::abs(sensor.orientation.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("scenario: sensor orientation must be unit");
  if (modulation_order < 2 || (modulation_order & (modulation_order - 1)) != 0)
    throw std::invalid_argument(
        "scenario: modulation_order must be a power of two");
  if (!(estimation_power > 0))
    throw std::invalid_argument("scenario: estimation_power must be > 0");
  if (data_power && !(*data_power > 0))
    throw std::invalid_argument("scenario: data_power must be > 0");
  if (data_power && !(estimation_power > *data_power))
    throw std::invalid_argument(
        "scenario: estimation power P_h must exceed data power P_l");
  if (trials < 1) throw std::invalid_argument("scenario: trials must be >= 1");
}

ScenarioConfig parse_scenario(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("scenario: JSON parse error: ") +
                                e.what());
  }

  ScenarioConfig cfg;
  require_keys(j, "",
               {"frequency_hz", "interface_depth_m", "air", "soil", "reader",
                "sensor", "noise_dbmv", "modulation_order",
                "estimation_power_w", "data_power_w", "data_target_snr_db",
                "trials", "seed", "sweeps"});

  if (j.contains("frequency_hz")) {
    cfg.frequency = j["frequency_hz"].get<double>();
    // Keep the default sensor tuning resonant at the configured frequency;
    // an explicit sensor.coil.capacitance_f below still wins.
    cfg.sensor.coil = default_sensor_coil(cfg.omega());
  }
  if (j.contains("interface_depth_m"))
    cfg.interface_depth = j["interface_depth_m"].get<double>();
  if (j.contains("air")) read_medium(j["air"], "air.", cfg.air);
  if (j.contains("soil")) read_medium(j["soil"], "soil.", cfg.soil);

  if (j.contains("reader")) {
    const auto& r = j["reader"];
    require_keys(r, "reader.",
                 {"board_x_m", "board_y_m", "coil_rect_x_m", "coil_rect_y_m",
                  "transmit_coil", "receive_coil"});
    if (r.contains("board_x_m")) cfg.reader.board_x = r["board_x_m"].get<double>();
    if (r.contains("board_y_m")) cfg.reader.board_y = r["board_y_m"].get<double>();
    if (r.contains("coil_rect_x_m"))
      cfg.reader.coil_rect_x = r["coil_rect_x_m"].get<double>();
    if (r.contains("coil_rect_y_m"))
      cfg.reader.coil_rect_y = r["coil_rect_y_m"].get<double>();
    if (r.contains("transmit_coil"))
      read_coil(r["transmit_coil"], "reader.transmit_coil.", cfg.omega(),
                cfg.reader.transmit_coil);
    if (r.contains("receive_coil"))
      read_coil(r["receive_coil"], "reader.receive_coil.", cfg.omega(),
                cfg.reader.receive_coil);
  }

  if (j.contains("sensor")) {
    const auto& s = j["sensor"];
    require_keys(s, "sensor.",
                 {"coil", "horizontal_offset_m", "depth_m", "orientation"});
    if (s.contains("coil"))
      read_coil(s["coil"], "sensor.coil.", cfg.omega(), cfg.sensor.coil);
    if (s.contains("horizontal_offset_m"))
      cfg.sensor.horizontal_offset = s["horizontal_offset_m"].get<double>();
    if (s.contains("depth_m")) cfg.sensor.depth = s["depth_m"].get<double>();
    if (s.contains("orientation")) {
      const auto v = s["orientation"].get<std::vector<double>>();
      if (v.size() != 3)
        throw std::invalid_argument("scenario: orientation needs 3 components");
      cfg.sensor.orientation = Eigen::Vector3d(v[0], v[1], v[2]).normalized();
    }
  }

  if (j.contains("noise_dbmv")) cfg.noise_dbmv = j["noise_dbmv"].get<double>();
  if (j.contains("modulation_order"))
    cfg.modulation_order = j["modulation_order"].get<int>();
  if (j.contains("estimation_power_w"))
    cfg.estimation_power = j["estimation_power_w"].get<double>();
  if (j.contains("data_power_w"))
    cfg.data_power = j["data_power_w"].get<double>();
  if (j.contains("data_target_snr_db"))
    cfg.data_target_snr_db = j["data_target_snr_db"].get<double>();
  if (j.contains("trials")) cfg.trials = j["trials"].get<long long>();
  if (j.contains("seed")) cfg.rng_seed = j["seed"].get<std::uint64_t>();

  if (j.contains("sweeps")) {
    const auto& s = j["sweeps"];
    require_keys(s, "sweeps.",
                 {"snr_grid_db", "depth_grid_m", "sigma_grid_s_per_m",
                  "estpower_grid_w", "estpower_sigmas_s_per_m",
                  "efficiency_sigma_grid_s_per_m"});
    if (s.contains("snr_grid_db")) cfg.snr_grid_db = read_grid(s["snr_grid_db"]);
    if (s.contains("depth_grid_m")) cfg.depth_grid = read_grid(s["depth_grid_m"]);
    if (s.contains("sigma_grid_s_per_m"))
      cfg.sigma_grid = read_grid(s["sigma_grid_s_per_m"]);
    if (s.contains("estpower_grid_w"))
      cfg.estpower_grid = read_grid(s["estpower_grid_w"]);
    if (s.contains("estpower_sigmas_s_per_m"))
      cfg.estpower_sigmas = read_grid(s["estpower_sigmas_s_per_m"]);
    if (s.contains("efficiency_sigma_grid_s_per_m"))
      cfg.efficiency_sigma_grid = read_grid(s["efficiency_sigma_grid_s_per_m"]);
  }

  cfg.validate();
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("scenario: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

}  // namespace mibc::harness
