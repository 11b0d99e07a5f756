#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "vlcm/geometry.hpp"
#include "vlcm/mapping.hpp"

namespace vlcm {

/// Gaussian tail probability Q(x) = erfc(x / sqrt(2)) / 2.
double q_function(double x);

/// Pairwise error probability Q(a ||H (x2 - x1)|| / (2 sigma)).
double pep(const Eigen::VectorXd& x1, const Eigen::VectorXd& x2,
           const ChannelMatrix& H, double sigma);

struct UnionBound {
  double raw = 0.0;      // the plain union-bound sum (may exceed 1)
  double clamped = 0.0;  // min(raw, 0.5) for reporting
};

/// Union bound on the ML bit error rate,
///   (1/L) sum_i sum_{j != i} Q(a ||H (x_j - x_i)|| / (2 sigma)) d_H(i,j)/eta.
UnionBound union_bound_ber(const SignalSet& set, const ChannelMatrix& H,
                           double sigma);

/// Minimum and mean of ||H (x2 - x1)||^2 over unordered distinct pairs.
std::pair<double, double> dmin_davg(const SignalSet& set,
                                    const ChannelMatrix& H);

/// Noise level that realizes a target Eb/N0 under the convention
/// Eb/N0 = gamma_bar / eta, with gamma_bar = a^2 P_r^2 / sigma^2 taken over
/// the given signal set and channel.
double sigma_for_ebn0_db(double eb_n0_db, const ChannelMatrix& H,
                         const SignalSet& set);

struct BoundPoint {
  double eb_n0_db = 0.0;
  double ber_bound = 0.0;      // clamped at 0.5
  double ber_bound_raw = 0.0;
};

struct BoundCurve {
  std::vector<BoundPoint> points;
};

/// Union bound evaluated over an Eb/N0 grid (sigma derived per point).
BoundCurve bound_curve(const SignalSet& set, const ChannelMatrix& H,
                       const std::vector<double>& eb_n0_grid_db);

/// Eb/N0 (dB) at which the union bound crosses the target BER, found by
/// bisection; the bound is strictly decreasing in Eb/N0.
double bound_crossing_ebn0_db(const SignalSet& set, const ChannelMatrix& H,
                              double target_ber, double lo_db = -20.0,
                              double hi_db = 120.0);

/// Inputs for the spatial sweeps: fixed LED array, PD-array template moved
/// across the floor plan, and the receiver noise model.
///
/// Signal sets are scaled so an active LED emits led_power_w on average;
/// reference_luminaires (the same array at the reference spacing) anchor the
/// SNR thresholds of the rate ladder.
struct MapSpec {
  RoomConfig room;
  std::vector<Luminaire> luminaires;
  std::vector<Luminaire> reference_luminaires;  // empty = use luminaires
  Detector pd_prototype;
  double d_rx = 0.1;
  double rx_height_m = 0.8;
  NoiseModel noise;
  double resolution_m = 0.025;
  double led_power_w = 11.0;  // mean optical power of an ON LED
};

struct RateMapCell {
  double gamma_bar_db = 0.0;
  int max_rate_bpcu = 0;
  bool valid = false;  // false when the PD array would leave the room
};

/// Spatial grid over the room floor; cell (ix, iy) sits at
/// (ix * resolution, iy * resolution).
struct RateMap {
  std::size_t nx = 0;
  std::size_t ny = 0;
  double resolution_m = 0.025;
  std::vector<RateMapCell> cells;  // row-major, iy * nx + ix

  RateMapCell& at(std::size_t ix, std::size_t iy) { return cells[iy * nx + ix]; }
  const RateMapCell& at(std::size_t ix, std::size_t iy) const {
    return cells[iy * nx + ix];
  }
};

/// Average received SNR per grid cell.  For every cell the 2x2 PD array is
/// centered there at rx_height, H is rebuilt, the noise power follows the
/// shot+thermal model from the received power, and gamma_bar uses the
/// scheme's signal set under the led_power_w drive convention.  The
/// reference alphabet only affects the reported gamma values.
RateMap snr_map(const MapSpec& spec, Scheme scheme,
                const ComplexAlphabet& reference_alphabet,
                unsigned workers = 0);

/// Largest rate (bpcu) whose cell SNR meets the alphabet's SNR requirement,
/// over the ladder 2-, 4-, 8-, 16-, 32-, 64-QAM (SM-DCM stops at 32-QAM and
/// counts its extra index bit).  The per-alphabet requirement is the SNR at
/// which the union bound hits the target on the reference channel
/// (reference_luminaires with the PD array at the room center), mirroring
/// how the analytical BER-versus-SNR curves are reused across the floor
/// plan.  Grid geometry is taken from `gamma`, which must come from snr_map
/// over the same spec.
RateMap rate_contours(const RateMap& gamma, const MapSpec& spec, Scheme scheme,
                      double target_ber = 1e-5, unsigned workers = 0);

/// 100 * (valid cells with rate >= eta) / (valid cells).
double coverage_percentage(const RateMap& map, int eta);

}  // namespace vlcm
