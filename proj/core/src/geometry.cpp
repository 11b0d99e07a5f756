#include "vlcm/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "vlcm/mapping.hpp"

namespace vlcm {

namespace {

constexpr double kDegToRad = M_PI / 180.0;
// Gains below this are flushed to zero so hot loops never touch denormals.
constexpr double kGainFloor = 1e-30;

void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

}  // namespace

void RoomConfig::validate() const {
  require(length_m > 0 && width_m > 0 && height_m > 0,
          "room dimensions must be positive");
}

bool RoomConfig::contains(const Eigen::Vector3d& p) const {
  return p.x() >= 0 && p.x() <= length_m && p.y() >= 0 && p.y() <= width_m &&
         p.z() >= 0 && p.z() <= height_m;
}

double lambertian_mode(double half_power_semiangle_deg) {
  require(half_power_semiangle_deg > 0 && half_power_semiangle_deg < 90,
          "half-power semiangle must lie in (0, 90) degrees");
  return -std::log(2.0) / std::log(std::cos(half_power_semiangle_deg * kDegToRad));
}

Luminaire Luminaire::make(const Eigen::Vector3d& position,
                          const Eigen::Vector3d& normal,
                          double half_power_semiangle_deg) {
  Luminaire led;
  led.position = position;
  led.normal = normal;
  led.half_power_semiangle_deg = half_power_semiangle_deg;
  led.mode_number = lambertian_mode(half_power_semiangle_deg);
  led.validate();
  return led;
}

void Luminaire::validate() const {
  require(std::abs(normal.norm() - 1.0) <= 1e-9, "luminaire normal must be unit");
  require(half_power_semiangle_deg > 0 && half_power_semiangle_deg < 90,
          "half-power semiangle must lie in (0, 90) degrees");
  require(mode_number > 0, "mode number must be positive");
}

void Detector::validate() const {
  require(std::abs(normal.norm() - 1.0) <= 1e-9, "detector normal must be unit");
  require(area_m2 > 0, "detector area must be positive");
  require(fov_deg > 0 && fov_deg <= 90, "FOV must lie in (0, 90] degrees");
  require(responsivity_a > 0, "responsivity must be positive");
}

void TransceiverLayout::validate(const RoomConfig& room) const {
  room.validate();
  require(luminaires.size() == 2 || luminaires.size() == 4,
          "layout requires 2 or 4 LEDs");
  require(!detectors.empty(), "layout requires at least one detector");
  for (const auto& led : luminaires) {
    led.validate();
    require(room.contains(led.position), "LED position outside the room");
  }
  for (const auto& pd : detectors) {
    pd.validate();
    require(room.contains(pd.position), "PD position outside the room");
  }
  require(d_tx > 0 && d_rx > 0, "grid spacings must be positive");
}

void NoiseModel::validate() const {
  require(electron_charge_c > 0 && ambient_current_a > 0 &&
              noise_bandwidth_factor > 0 && symbol_interval_s > 0 &&
              amplifier_bandwidth_hz > 0 && amplifier_noise_density > 0,
          "noise model parameters must be positive");
}

double los_gain(const Luminaire& led, const Detector& pd) {
  const Eigen::Vector3d offset = pd.position - led.position;
  const double distance2 = offset.squaredNorm();
  require(distance2 > 0, "LED and PD positions coincide");
  const double distance = std::sqrt(distance2);
  const Eigen::Vector3d direction = offset / distance;

  const double cos_emergence = led.normal.dot(direction);
  const double cos_incidence = pd.normal.dot(-direction);
  if (cos_emergence <= 0 || cos_incidence <= 0) return 0.0;

  // incidence beyond the field of view contributes nothing
  const double incidence_deg = std::acos(std::min(cos_incidence, 1.0)) / kDegToRad;
  if (incidence_deg > pd.fov_deg) return 0.0;

  const double n = led.mode_number;
  const double gain = (n + 1.0) / (2.0 * M_PI) * std::pow(cos_emergence, n) *
                      cos_incidence * pd.area_m2 / distance2;
  return gain < kGainFloor ? 0.0 : gain;
}

ChannelMatrix build_channel_matrix(const TransceiverLayout& layout) {
  const auto n_rx = static_cast<Eigen::Index>(layout.detectors.size());
  const auto n_tx = static_cast<Eigen::Index>(layout.luminaires.size());
  ChannelMatrix H;
  H.entries.resize(n_rx, n_tx);
  for (Eigen::Index i = 0; i < n_rx; ++i)
    for (Eigen::Index j = 0; j < n_tx; ++j)
      H.entries(i, j) = los_gain(layout.luminaires[j], layout.detectors[i]);
  H.responsivity_a = layout.detectors.front().responsivity_a;
  return H;
}

double noise_variance(const NoiseModel& model, double received_power_w,
                      double responsivity_a) {
  require(received_power_w >= 0, "received power must be nonnegative");
  const double shot = 2.0 * model.electron_charge_c * responsivity_a *
                      (received_power_w + model.ambient_current_a / responsivity_a) *
                      model.noise_bandwidth_factor / model.symbol_interval_s;
  const double thermal = model.amplifier_bandwidth_hz *
                         model.amplifier_noise_density *
                         model.amplifier_noise_density;
  return shot + thermal;
}

double mean_square_received_power(const ChannelMatrix& H, const SignalSet& set) {
  require(!set.vectors.empty(), "signal set is empty");
  const auto n_rx = H.entries.rows();
  double acc = 0.0;
  for (const auto& tx : set.vectors) acc += (H.entries * tx.intensities).squaredNorm();
  return acc / (static_cast<double>(set.vectors.size()) * static_cast<double>(n_rx));
}

double average_received_snr(const ChannelMatrix& H, const SignalSet& set,
                            double sigma2) {
  require(sigma2 > 0, "noise variance must be positive");
  const double pr2 = mean_square_received_power(H, set);
  return H.responsivity_a * H.responsivity_a * pr2 / sigma2;
}

std::vector<Eigen::Vector3d> generate_placement(const RoomConfig& room,
                                                PlacementKind kind,
                                                double d_tx,
                                                const Eigen::Vector2d& center,
                                                double height) {
  room.validate();
  require(d_tx > 0, "d_tx must be positive");
  const double half = d_tx / 2.0;
  require(center.x() - half >= 0 && center.x() + half <= room.length_m &&
              center.y() - half >= 0 && center.y() + half <= room.width_m &&
              height >= 0 && height <= room.height_m,
          "LED grid does not fit in the room");

  const Eigen::Vector3d nw{center.x() - half, center.y() + half, height};
  const Eigen::Vector3d ne{center.x() + half, center.y() + half, height};
  const Eigen::Vector3d sw{center.x() - half, center.y() - half, height};
  const Eigen::Vector3d se{center.x() + half, center.y() - half, height};

  switch (kind) {
    case PlacementKind::QcmGrid:
    case PlacementKind::SmdcmP2:
      // adjacent blocks: (LED1, LED2) = (NW, NE), (LED3, LED4) = (SW, SE)
      return {nw, ne, sw, se};
    case PlacementKind::SmdcmP1:
      // diagonal blocks: (LED1, LED2) = (NW, SE), (LED3, LED4) = (NE, SW)
      return {nw, se, ne, sw};
  }
  throw std::domain_error("unknown placement kind");
}

std::vector<Detector> generate_detector_grid(const RoomConfig& room,
                                             double d_rx,
                                             const Eigen::Vector2d& center,
                                             double height,
                                             const Detector& prototype) {
  room.validate();
  require(d_rx > 0, "d_rx must be positive");
  const double half = d_rx / 2.0;
  require(center.x() - half >= 0 && center.x() + half <= room.length_m &&
              center.y() - half >= 0 && center.y() + half <= room.width_m &&
              height >= 0 && height <= room.height_m,
          "PD grid does not fit in the room");

  std::vector<Detector> grid(4, prototype);
  grid[0].position = {center.x() - half, center.y() + half, height};  // NW
  grid[1].position = {center.x() + half, center.y() + half, height};  // NE
  grid[2].position = {center.x() - half, center.y() - half, height};  // SW
  grid[3].position = {center.x() + half, center.y() - half, height};  // SE
  return grid;
}

}  // namespace vlcm
