#include "vlcm/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace vlcm {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

double parse_double(const std::string& value, int line) {
  try {
    std::size_t used = 0;
    const double out = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return out;
  } catch (const std::exception&) {
    throw ConfigError(line, "expected a number, got '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& value, int line) {
  try {
    std::size_t used = 0;
    const unsigned long long out = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return out;
  } catch (const std::exception&) {
    throw ConfigError(line, "expected a nonnegative integer, got '" + value + "'");
  }
}

// Accepts "a,b,c" lists and "start:step:stop" ranges (inclusive stop).
std::vector<double> parse_list(const std::string& value, int line) {
  const std::string body = trim(value);
  if (body.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(parse_double(trim(item), line));
    if (parts.size() != 3 || parts[1] <= 0 || parts[2] < parts[0])
      throw ConfigError(line, "range must be start:step:stop with step > 0");
    std::vector<double> out;
    for (double v = parts[0]; v <= parts[2] + 1e-9 * parts[1]; v += parts[1])
      out.push_back(v);
    return out;
  }
  std::vector<double> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(trim(item), line));
  if (out.empty()) throw ConfigError(line, "empty list");
  return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&, int)>;

std::map<std::string, Setter> build_schema() {
  std::map<std::string, Setter> schema;
  const auto num = [&schema](const std::string& key, double ExperimentConfig::*field) {
    schema[key] = [field](ExperimentConfig& cfg, const std::string& v, int line) {
      cfg.*field = parse_double(v, line);
    };
  };
  const auto str = [&schema](const std::string& key, std::string ExperimentConfig::*field) {
    schema[key] = [field](ExperimentConfig& cfg, const std::string& v, int line) {
      (void)line;
      cfg.*field = v;
    };
  };

  schema["room.length_m"] = [](ExperimentConfig& c, const std::string& v, int l) {
    c.room.length_m = parse_double(v, l);
  };
  schema["room.width_m"] = [](ExperimentConfig& c, const std::string& v, int l) {
    c.room.width_m = parse_double(v, l);
  };
  schema["room.height_m"] = [](ExperimentConfig& c, const std::string& v, int l) {
    c.room.height_m = parse_double(v, l);
  };

  num("transmitter.height_m", &ExperimentConfig::tx_height_m);
  num("transmitter.center_x_m", &ExperimentConfig::tx_center_x_m);
  num("transmitter.center_y_m", &ExperimentConfig::tx_center_y_m);
  num("transmitter.d_tx_m", &ExperimentConfig::d_tx_m);
  num("transmitter.elevation_deg", &ExperimentConfig::tx_elevation_deg);
  num("transmitter.azimuth_deg", &ExperimentConfig::tx_azimuth_deg);
  num("transmitter.half_power_semiangle_deg", &ExperimentConfig::half_power_semiangle_deg);
  str("transmitter.placement", &ExperimentConfig::placement);

  num("receiver.height_m", &ExperimentConfig::rx_height_m);
  num("receiver.center_x_m", &ExperimentConfig::rx_center_x_m);
  num("receiver.center_y_m", &ExperimentConfig::rx_center_y_m);
  num("receiver.d_rx_m", &ExperimentConfig::d_rx_m);
  num("receiver.elevation_deg", &ExperimentConfig::rx_elevation_deg);
  num("receiver.azimuth_deg", &ExperimentConfig::rx_azimuth_deg);
  num("receiver.area_m2", &ExperimentConfig::area_m2);
  num("receiver.fov_deg", &ExperimentConfig::fov_deg);
  num("receiver.responsivity_a", &ExperimentConfig::responsivity_a);

  schema["noise.electron_charge_c"] = [](ExperimentConfig& c, const std::string& v, int l) {
    c.noise.electron_charge_c = parse_double(v, l);
  };
  schema["noise.ambient_current_a"] = [](ExperimentConfig& c, const std::string& v, int l) {
    c.noise.ambient_current_a = parse_double(v, l);
  };
  schema["noise.noise_bandwidth_factor"] = [](ExperimentConfig& c, const std::string& v, int l) {
    c.noise.noise_bandwidth_factor = parse_double(v, l);
  };
  schema["noise.symbol_interval_s"] = [](ExperimentConfig& c, const std::string& v, int l) {
    c.noise.symbol_interval_s = parse_double(v, l);
  };
  schema["noise.amplifier_bandwidth_hz"] = [](ExperimentConfig& c, const std::string& v, int l) {
    c.noise.amplifier_bandwidth_hz = parse_double(v, l);
  };
  schema["noise.amplifier_noise_density"] = [](ExperimentConfig& c, const std::string& v, int l) {
    c.noise.amplifier_noise_density = parse_double(v, l);
  };

  str("scheme.scheme", &ExperimentConfig::scheme);
  str("scheme.modulation", &ExperimentConfig::modulation);
  num("scheme.rotation_deg", &ExperimentConfig::rotation_deg);

  schema["ofdm.n_subcarriers"] = [](ExperimentConfig& c, const std::string& v, int l) {
    c.n_subcarriers = static_cast<unsigned>(parse_u64(v, l));
  };
  str("ofdm.detector", &ExperimentConfig::ofdm_detector);
  schema["ofdm.structured_identification"] = [](ExperimentConfig& c, const std::string& v, int l) {
    if (v == "true" || v == "1") c.structured_identification = true;
    else if (v == "false" || v == "0") c.structured_identification = false;
    else throw ConfigError(l, "expected true or false, got '" + v + "'");
  };

  schema["simulation.eb_n0_db_grid"] = [](ExperimentConfig& c, const std::string& v, int l) {
    c.eb_n0_grid_db = parse_list(v, l);
  };
  num("simulation.eb_n0_db", &ExperimentConfig::eb_n0_db);
  schema["simulation.d_tx_list_m"] = [](ExperimentConfig& c, const std::string& v, int l) {
    c.d_tx_list_m = parse_list(v, l);
  };
  schema["simulation.theta_list_deg"] = [](ExperimentConfig& c, const std::string& v, int l) {
    c.theta_list_deg = parse_list(v, l);
  };
  schema["simulation.min_bit_errors"] = [](ExperimentConfig& c, const std::string& v, int l) {
    c.min_bit_errors = parse_u64(v, l);
  };
  schema["simulation.max_bits"] = [](ExperimentConfig& c, const std::string& v, int l) {
    c.max_bits = parse_u64(v, l);
  };
  schema["simulation.master_seed"] = [](ExperimentConfig& c, const std::string& v, int l) {
    c.master_seed = parse_u64(v, l);
  };
  schema["simulation.workers"] = [](ExperimentConfig& c, const std::string& v, int l) {
    c.workers = static_cast<unsigned>(parse_u64(v, l));
  };

  num("analysis.target_ber", &ExperimentConfig::target_ber);
  num("analysis.resolution_m", &ExperimentConfig::resolution_m);
  num("analysis.led_power_w", &ExperimentConfig::led_power_w);
  num("analysis.reference_d_tx_m", &ExperimentConfig::reference_d_tx_m);
  str("analysis.snr_reference_modulation", &ExperimentConfig::snr_reference_modulation);

  return schema;
}

const std::map<std::string, Setter>& schema() {
  static const std::map<std::string, Setter> instance = build_schema();
  return instance;
}

void validate_semantics(const ExperimentConfig& cfg) {
  try {
    cfg.room.validate();
    cfg.noise.validate();
    (void)parse_scheme(cfg.scheme);
    (void)make_alphabet(cfg.modulation);
    (void)make_alphabet(cfg.snr_reference_modulation);
    if (cfg.placement != "auto") (void)config_placement(cfg);
    if (cfg.ofdm_detector != "zf" && cfg.ofdm_detector != "md")
      throw std::domain_error("ofdm detector must be zf or md");
    if (cfg.n_subcarriers == 0 || (cfg.n_subcarriers & (cfg.n_subcarriers - 1)) != 0)
      throw std::domain_error("subcarrier count must be a power of 2");
    if (cfg.eb_n0_grid_db.empty()) throw std::domain_error("empty Eb/N0 grid");
    if (cfg.min_bit_errors == 0 || cfg.max_bits == 0)
      throw std::domain_error("stop rule fields must be positive");
    if (cfg.target_ber <= 0 || cfg.target_ber >= 1)
      throw std::domain_error("target BER must lie in (0, 1)");
    if (cfg.resolution_m <= 0) throw std::domain_error("resolution must be positive");
    if (cfg.led_power_w <= 0) throw std::domain_error("LED power must be positive");
    if (cfg.reference_d_tx_m <= 0)
      throw std::domain_error("reference LED spacing must be positive");
    if (cfg.area_m2 <= 0 || cfg.fov_deg <= 0 || cfg.fov_deg > 90 ||
        cfg.responsivity_a <= 0)
      throw std::domain_error("invalid receiver optics");
  } catch (const std::domain_error& e) {
    throw ConfigError(0, e.what());
  } catch (const std::out_of_range& e) {
    throw ConfigError(0, e.what());
  }
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream stream(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    const auto comment = raw.find('#');
    if (comment != std::string::npos) raw.erase(comment);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      const bool known = section == "room" || section == "transmitter" ||
                         section == "receiver" || section == "noise" ||
                         section == "scheme" || section == "ofdm" ||
                         section == "simulation" || section == "analysis";
      if (!known) throw ConfigError(line_no, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(line_no, "expected key = value");
    if (section.empty()) throw ConfigError(line_no, "key outside any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "empty key");
    const auto it = schema().find(section + "." + key);
    if (it == schema().end())
      throw ConfigError(line_no, "unknown key '" + key + "' in [" + section + "]");
    it->second(cfg, value, line_no);
  }
  validate_semantics(cfg);
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

Scheme config_scheme(const ExperimentConfig& cfg) { return parse_scheme(cfg.scheme); }

PlacementKind config_placement(const ExperimentConfig& cfg) {
  if (cfg.placement == "auto")
    return config_scheme(cfg) == Scheme::SmDcm ? PlacementKind::SmdcmP2
                                               : PlacementKind::QcmGrid;
  if (cfg.placement == "qcm-grid") return PlacementKind::QcmGrid;
  if (cfg.placement == "smdcm-p1") return PlacementKind::SmdcmP1;
  if (cfg.placement == "smdcm-p2") return PlacementKind::SmdcmP2;
  throw std::domain_error("unknown placement '" + cfg.placement + "'");
}

Eigen::Vector3d normal_from_angles(double elevation_deg, double azimuth_deg) {
  const double el = elevation_deg * M_PI / 180.0;
  const double az = azimuth_deg * M_PI / 180.0;
  return {std::cos(el) * std::cos(az), std::cos(el) * std::sin(az), std::sin(el)};
}

ChannelSpec to_channel_spec(const ExperimentConfig& cfg) {
  ChannelSpec chan;
  chan.room = cfg.room;
  chan.placement = config_placement(cfg);
  chan.d_tx = cfg.d_tx_m;
  chan.tx_height_m = cfg.tx_height_m;
  chan.tx_center = {cfg.tx_center_x_m, cfg.tx_center_y_m};
  chan.half_power_semiangle_deg = cfg.half_power_semiangle_deg;
  chan.led_normal = normal_from_angles(cfg.tx_elevation_deg, cfg.tx_azimuth_deg);
  chan.d_rx = cfg.d_rx_m;
  chan.rx_height_m = cfg.rx_height_m;
  chan.rx_center = {cfg.rx_center_x_m, cfg.rx_center_y_m};
  chan.pd_prototype.normal = normal_from_angles(cfg.rx_elevation_deg, cfg.rx_azimuth_deg);
  chan.pd_prototype.area_m2 = cfg.area_m2;
  chan.pd_prototype.fov_deg = cfg.fov_deg;
  chan.pd_prototype.responsivity_a = cfg.responsivity_a;
  return chan;
}

SimSpec to_sim_spec(const ExperimentConfig& cfg, bool with_ofdm) {
  SimSpec spec;
  spec.scheme = config_scheme(cfg);
  spec.alphabet = make_alphabet(cfg.modulation);
  spec.rotation_rad = cfg.rotation_deg * M_PI / 180.0;
  spec.channel = to_channel_spec(cfg);
  if (with_ofdm) {
    OfdmRun run;
    run.n_subcarriers = cfg.n_subcarriers;
    run.detector = cfg.ofdm_detector == "zf" ? OfdmDetector::Zf : OfdmDetector::Md;
    run.structured_identification = cfg.structured_identification;
    spec.ofdm = run;
  }
  spec.eb_n0_grid_db = cfg.eb_n0_grid_db;
  spec.stop.min_bit_errors = cfg.min_bit_errors;
  spec.stop.max_bits = cfg.max_bits;
  spec.master_seed = cfg.master_seed;
  spec.workers = cfg.workers;
  return spec;
}

MapSpec to_map_spec(const ExperimentConfig& cfg) {
  MapSpec spec;
  spec.room = cfg.room;
  const ChannelSpec chan = to_channel_spec(cfg);
  const Scheme scheme = config_scheme(cfg);
  spec.luminaires = build_layout(chan, scheme).luminaires;
  ChannelSpec ref_chan = chan;
  ref_chan.d_tx = cfg.reference_d_tx_m;
  spec.reference_luminaires = build_layout(ref_chan, scheme).luminaires;
  spec.pd_prototype = chan.pd_prototype;
  spec.d_rx = cfg.d_rx_m;
  spec.rx_height_m = cfg.rx_height_m;
  spec.noise = cfg.noise;
  spec.resolution_m = cfg.resolution_m;
  spec.led_power_w = cfg.led_power_w;
  return spec;
}

}  // namespace vlcm
