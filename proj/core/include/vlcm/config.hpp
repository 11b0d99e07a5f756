#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "vlcm/analysis.hpp"
#include "vlcm/montecarlo.hpp"

namespace vlcm {

/// Configuration parse/validation failure; line is 1-based, 0 when the
/// error is not tied to a single line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                    : message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

/// Flat view of the sectioned key=value experiment file.  Field defaults are
/// the reference indoor setup (5x5x3.5 m room, 4-LED grid at 3 m with 60 deg
/// half-power semiangle, 4-PD grid at 0.8 m, responsivity 1 A/W, FOV 85 deg)
/// and the standard shot/thermal noise parameters.
struct ExperimentConfig {
  // [room]
  RoomConfig room;

  // [transmitter]
  double tx_height_m = 3.0;
  double tx_center_x_m = 2.5;
  double tx_center_y_m = 2.5;
  double d_tx_m = 1.0;
  double tx_elevation_deg = -90.0;
  double tx_azimuth_deg = 0.0;
  double half_power_semiangle_deg = 60.0;
  std::string placement = "auto";  // auto | qcm-grid | smdcm-p1 | smdcm-p2

  // [receiver]
  double rx_height_m = 0.8;
  double rx_center_x_m = 2.5;
  double rx_center_y_m = 2.5;
  double d_rx_m = 0.1;
  double rx_elevation_deg = 90.0;
  double rx_azimuth_deg = 0.0;
  double area_m2 = 1e-4;
  double fov_deg = 85.0;
  double responsivity_a = 1.0;

  // [noise]
  NoiseModel noise;

  // [scheme]
  std::string scheme = "qcm";        // qcm | qcm-pr | dcm | sm-dcm
  std::string modulation = "qam-4";  // bpsk | psk-M | qam-M
  double rotation_deg = 0.0;         // qcm-pr only

  // [ofdm]
  unsigned n_subcarriers = 8;
  std::string ofdm_detector = "md";     // zf | md
  bool structured_identification = false;  // QCM-OFDM ZF active-LED search

  // [simulation]
  std::vector<double> eb_n0_grid_db = {20, 22.5, 25, 27.5, 30, 32.5,
                                       35, 37.5, 40, 42.5, 45};
  double eb_n0_db = 35.0;  // operating point for sweeps
  std::vector<double> d_tx_list_m = {0.2, 1, 2, 3, 4, 4.8};
  std::vector<double> theta_list_deg = {0,  5,  10, 15, 20, 25, 30, 35, 40, 45,
                                        50, 55, 60, 65, 70, 75, 80, 85, 90};
  std::uint64_t min_bit_errors = 200;
  std::uint64_t max_bits = 10'000'000;
  std::uint64_t master_seed = 1;
  unsigned workers = 0;

  // [analysis]
  double target_ber = 1e-5;
  double resolution_m = 0.025;
  double led_power_w = 11.0;         // mean optical power of an ON LED
  double reference_d_tx_m = 1.0;     // LED spacing anchoring the SNR ladder
  std::string snr_reference_modulation = "qam-16";
};

/// Parses the sectioned key=value format.  Lines are `key = value`, comments
/// start with '#', sections with '[name]'.  Unknown sections or keys and
/// malformed values raise ConfigError with the offending line number.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

Scheme config_scheme(const ExperimentConfig& cfg);
PlacementKind config_placement(const ExperimentConfig& cfg);

/// Channel recipe from the config sections.
ChannelSpec to_channel_spec(const ExperimentConfig& cfg);

/// Simulation spec; with_ofdm engages the OFDM frame chain of [ofdm].
SimSpec to_sim_spec(const ExperimentConfig& cfg, bool with_ofdm = false);

/// Spatial-map spec; the LED array is fixed per the transmitter section.
MapSpec to_map_spec(const ExperimentConfig& cfg);

/// Unit normal from elevation above the horizon and azimuth from +x.
Eigen::Vector3d normal_from_angles(double elevation_deg, double azimuth_deg);

}  // namespace vlcm
