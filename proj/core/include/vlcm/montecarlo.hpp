#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vlcm/analysis.hpp"
#include "vlcm/geometry.hpp"
#include "vlcm/mapping.hpp"
#include "vlcm/ofdm.hpp"

namespace vlcm {

/// Recipe for building the transceiver layout, kept parametric so sweeps can
/// rebuild the channel for each operating point.
struct ChannelSpec {
  RoomConfig room;
  PlacementKind placement = PlacementKind::QcmGrid;
  double d_tx = 1.0;
  double tx_height_m = 3.0;
  Eigen::Vector2d tx_center{2.5, 2.5};
  double half_power_semiangle_deg = 60.0;
  Eigen::Vector3d led_normal{0.0, 0.0, -1.0};
  double d_rx = 0.1;
  double rx_height_m = 0.8;
  Eigen::Vector2d rx_center{2.5, 2.5};
  Detector pd_prototype;
};

/// LED array + PD grid for a scheme; DCM keeps LEDs 1 and 2 of the grid.
TransceiverLayout build_layout(const ChannelSpec& chan, Scheme scheme);

struct StopRule {
  std::uint64_t min_bit_errors = 200;
  std::uint64_t max_bits = 10'000'000;
};

struct OfdmRun {
  unsigned n_subcarriers = 8;
  OfdmDetector detector = OfdmDetector::Md;
  bool structured_identification = false;  // QCM-OFDM ZF only
};

struct SimSpec {
  Scheme scheme = Scheme::Qcm;
  ComplexAlphabet alphabet;
  double rotation_rad = 0.0;  // QCM-PR
  ChannelSpec channel;
  std::optional<OfdmRun> ofdm;  // engages the OFDM frame chain when set
  std::vector<double> eb_n0_grid_db;
  StopRule stop;
  std::uint64_t master_seed = 1;
  unsigned workers = 0;  // 0 = hardware concurrency
};

struct BerPoint {
  double eb_n0_db = 0.0;
  double ber = 0.0;
  std::uint64_t bits = 0;
  std::uint64_t errors = 0;
};

struct BerCurve {
  std::vector<BerPoint> points;
};

/// Monte Carlo BER estimation over the Eb/N0 grid.
///
/// Per point, sigma is derived from Eb/N0 = gamma_bar / eta; random bits are
/// mapped, passed through the AWGN channel and detected (single-use ML, or
/// the configured OFDM frame detector).  Each point stops at min_bit_errors
/// or max_bits, whichever comes first.
///
/// Trials are pre-partitioned into fixed blocks and every block draws its
/// noise from a stream derived from (master_seed, point, block), with the
/// stop rule applied on the block-index prefix, so the output is identical
/// for any worker count.
BerCurve simulate_ber(const SimSpec& spec);

struct SweepPoint {
  double x = 0.0;  // d_tx in meters, or theta in degrees
  BerPoint ber;
};

/// BER versus LED spacing at a fixed Eb/N0.
std::vector<SweepPoint> sweep_dtx(const SimSpec& spec, double eb_n0_db,
                                  const std::vector<double>& dtx_list_m);

/// BER versus QCM-PR rotation angle at a fixed Eb/N0.
std::vector<SweepPoint> sweep_rotation(const SimSpec& spec, double eb_n0_db,
                                       const std::vector<double>& theta_list_deg);

}  // namespace vlcm
