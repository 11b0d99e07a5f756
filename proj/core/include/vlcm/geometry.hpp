#pragma once

#include <Eigen/Dense>
#include <vector>

namespace vlcm {

struct SignalSet;  // mapping.hpp

/// Indoor room; the coordinate origin is a floor corner, z points up.
struct RoomConfig {
  double length_m = 5.0;  // x extent
  double width_m = 5.0;   // y extent
  double height_m = 3.5;  // z extent

  void validate() const;
  bool contains(const Eigen::Vector3d& p) const;
};

/// Lambertian mode number from the half-power semiangle,
/// n = -ln 2 / ln cos(angle).  Throws std::domain_error outside (0, 90).
double lambertian_mode(double half_power_semiangle_deg);

/// LED with a Lambertian radiation lobe.
struct Luminaire {
  Eigen::Vector3d position{0.0, 0.0, 3.0};
  Eigen::Vector3d normal{0.0, 0.0, -1.0};  // unit; default faces the floor
  double half_power_semiangle_deg = 60.0;
  double mode_number = 1.0;

  /// Builds a luminaire with mode_number derived from the semiangle.
  static Luminaire make(const Eigen::Vector3d& position,
                        const Eigen::Vector3d& normal,
                        double half_power_semiangle_deg);
  void validate() const;
};

/// Photodiode.
struct Detector {
  Eigen::Vector3d position{2.5, 2.5, 0.8};
  Eigen::Vector3d normal{0.0, 0.0, 1.0};  // unit; default faces the ceiling
  double area_m2 = 1e-4;
  double fov_deg = 85.0;
  double responsivity_a = 1.0;  // A/W

  void validate() const;
};

/// Ordered transmitter/receiver arrays; index k is LED/PD number k+1.
struct TransceiverLayout {
  std::vector<Luminaire> luminaires;
  std::vector<Detector> detectors;
  double d_tx = 1.0;  // LED grid spacing, meters
  double d_rx = 0.1;  // PD grid spacing, meters

  void validate(const RoomConfig& room) const;
};

/// Real nonnegative LOS gain matrix, N_r x N_t, plus the PD responsivity.
struct ChannelMatrix {
  Eigen::MatrixXd entries;
  double responsivity_a = 1.0;
};

/// Receiver noise parameters (shot + thermal).
struct NoiseModel {
  double electron_charge_c = 1.602e-19;
  double ambient_current_a = 5.84e-3;
  double noise_bandwidth_factor = 0.562;
  double symbol_interval_s = 5e-8;
  double amplifier_bandwidth_hz = 5e7;
  double amplifier_noise_density = 5e-12;  // A/sqrt(Hz)

  void validate() const;
};

/// LOS channel gain between one LED and one PD:
///   (n+1)/(2*pi) * cos^n(phi) * cos(theta) * A / R^2
/// and zero outside the PD field of view or when either device faces away.
/// Throws std::domain_error for coincident positions.
double los_gain(const Luminaire& led, const Detector& pd);

/// Entry (i, j) = los_gain(luminaire j, detector i).
ChannelMatrix build_channel_matrix(const TransceiverLayout& layout);

/// sigma^2 = 2 q a (P_r + I_a / a) I_2 / T + B_a rho^2   [A^2]
double noise_variance(const NoiseModel& model, double received_power_w,
                      double responsivity_a);

/// Mean-square received photocurrent signal term over a uniform signal set,
///   P_r^2 = (1/N_r) sum_i E[|H_i x|^2].
double mean_square_received_power(const ChannelMatrix& H, const SignalSet& set);

/// gamma_bar = a^2 P_r^2 / sigma^2 with the expectation taken uniformly over
/// the signal set.  Throws std::domain_error on an empty set.
double average_received_snr(const ChannelMatrix& H, const SignalSet& set,
                            double sigma2);

enum class PlacementKind { QcmGrid, SmdcmP1, SmdcmP2 };

/// LED positions of a 2x2 grid of side d_tx centered at `center` (x, y) at
/// the given height, ordered by LED number.
///
/// Corner naming: +y is north, +x is east.  QcmGrid enumerates the grid
/// corners NW, NE, SW, SE (the QCM signal-to-LED assignment itself is
/// applied by build_layout, which pairs opposite corners).  SmdcmP1 pairs
/// each block across a diagonal (BLOCK1 = {NW, SE}, BLOCK2 = {NE, SW},
/// ordered NW, SE, NE, SW); SmdcmP2 pairs adjacent corners (BLOCK1 =
/// {NW, NE}, BLOCK2 = {SW, SE}, ordered NW, NE, SW, SE).  P2 is the
/// placement that maximizes the channel-space distance metrics.
std::vector<Eigen::Vector3d> generate_placement(const RoomConfig& room,
                                                PlacementKind kind,
                                                double d_tx,
                                                const Eigen::Vector2d& center,
                                                double height);

/// 2x2 PD grid of side d_rx centered at `center` at the given height; PDs
/// ordered NW, NE, SW, SE.  Optics are copied from the prototype.
std::vector<Detector> generate_detector_grid(const RoomConfig& room,
                                             double d_rx,
                                             const Eigen::Vector2d& center,
                                             double height,
                                             const Detector& prototype);

}  // namespace vlcm
