#include "vlcm/analysis.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace vlcm {

namespace {

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

/// Runs fn(iy) for iy in [0, ny) across workers; rows are independent.
void parallel_rows(std::size_t ny, unsigned workers,
                   const std::function<void(std::size_t)>& fn) {
  workers = resolve_workers(workers);
  if (workers <= 1 || ny <= 1) {
    for (std::size_t iy = 0; iy < ny; ++iy) fn(iy);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t iy = next.fetch_add(1); iy < ny; iy = next.fetch_add(1)) fn(iy);
    });
  }
  for (auto& t : pool) t.join();
}

unsigned popcount32(std::uint32_t v) {
  return static_cast<unsigned>(__builtin_popcount(v));
}

/// Unordered-pair expansion used by the bound and the spatial sweeps:
/// intensity differences plus weights 2 d_H / (L eta).
struct PairTable {
  std::vector<Eigen::VectorXd> diffs;
  std::vector<double> weights;
};

PairTable build_pair_table(const SignalSet& set) {
  const std::size_t L = set.vectors.size();
  if (L < 2) throw std::domain_error("signal set needs at least 2 vectors");
  PairTable table;
  table.diffs.reserve(L * (L - 1) / 2);
  table.weights.reserve(L * (L - 1) / 2);
  const double scale = 2.0 / (static_cast<double>(L) * set.bits_per_use);
  for (std::size_t i = 0; i + 1 < L; ++i) {
    for (std::size_t j = i + 1; j < L; ++j) {
      table.diffs.push_back(set.vectors[j].intensities - set.vectors[i].intensities);
      table.weights.push_back(
          scale * popcount32(set.vectors[i].bits ^ set.vectors[j].bits));
    }
  }
  return table;
}

/// Union-bound sum with an optional early abort once the partial sum (which
/// only grows) exceeds abort_above.
double bound_sum(const PairTable& table, const Eigen::MatrixXd& H, double a,
                 double sigma,
                 double abort_above = std::numeric_limits<double>::infinity()) {
  const double gain = a / (2.0 * sigma);
  double acc = 0.0;
  for (std::size_t p = 0; p < table.diffs.size(); ++p) {
    acc += table.weights[p] * q_function(gain * (H * table.diffs[p]).norm());
    if (acc > abort_above) return acc;
  }
  return acc;
}

/// Scales a signal set so the mean intensity of an emitting LED equals
/// led_power_w (an active LED emits led_power_w on average).
SignalSet scale_to_led_power(SignalSet set, double led_power_w) {
  double active_sum = 0.0;
  std::size_t active_count = 0;
  for (const auto& tx : set.vectors) {
    for (Eigen::Index i = 0; i < tx.intensities.size(); ++i) {
      const double v = tx.intensities(i);
      if (v > 0) {
        active_sum += v;
        ++active_count;
      }
    }
  }
  if (active_sum <= 0) throw std::domain_error("signal set has no power");
  const double scale = led_power_w * static_cast<double>(active_count) / active_sum;
  for (auto& tx : set.vectors) tx.intensities *= scale;
  return set;
}

/// Rate ladder per scheme: QAM sizes from the contour definition; SM-DCM
/// adds its index bit and stops at 32-QAM so eta stays within 1..6.
std::vector<unsigned> rate_ladder(Scheme scheme) {
  if (scheme == Scheme::SmDcm) return {2, 4, 8, 16, 32};
  return {2, 4, 8, 16, 32, 64};
}

ChannelMatrix cell_channel(const MapSpec& spec,
                           const std::vector<Luminaire>& leds, double x,
                           double y) {
  TransceiverLayout layout;
  layout.luminaires = leds;
  layout.detectors = generate_detector_grid(spec.room, spec.d_rx, {x, y},
                                            spec.rx_height_m, spec.pd_prototype);
  layout.d_rx = spec.d_rx;
  return build_channel_matrix(layout);
}

double cell_gamma(const MapSpec& spec, const ChannelMatrix& H,
                  const SignalSet& set) {
  const double a = spec.pd_prototype.responsivity_a;
  const double pr2 = mean_square_received_power(H, set);
  const double sigma2 = noise_variance(spec.noise, std::sqrt(pr2), a);
  return a * a * pr2 / sigma2;
}

}  // namespace

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double pep(const Eigen::VectorXd& x1, const Eigen::VectorXd& x2,
           const ChannelMatrix& H, double sigma) {
  if (sigma <= 0) throw std::domain_error("sigma must be positive");
  const double distance = (H.entries * (x2 - x1)).norm();
  return q_function(H.responsivity_a / (2.0 * sigma) * distance);
}

UnionBound union_bound_ber(const SignalSet& set, const ChannelMatrix& H,
                           double sigma) {
  if (sigma <= 0) throw std::domain_error("sigma must be positive");
  const PairTable table = build_pair_table(set);
  UnionBound bound;
  bound.raw = bound_sum(table, H.entries, H.responsivity_a, sigma);
  bound.clamped = std::min(bound.raw, 0.5);
  return bound;
}

std::pair<double, double> dmin_davg(const SignalSet& set,
                                    const ChannelMatrix& H) {
  const std::size_t L = set.vectors.size();
  if (L < 2) throw std::domain_error("signal set needs at least 2 vectors");
  double d_min = std::numeric_limits<double>::infinity();
  double acc = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i + 1 < L; ++i) {
    for (std::size_t j = i + 1; j < L; ++j) {
      const double d2 =
          (H.entries * (set.vectors[j].intensities - set.vectors[i].intensities))
              .squaredNorm();
      d_min = std::min(d_min, d2);
      acc += d2;
      ++pairs;
    }
  }
  return {d_min, acc / static_cast<double>(pairs)};
}

double sigma_for_ebn0_db(double eb_n0_db, const ChannelMatrix& H,
                         const SignalSet& set) {
  const double gamma_bar = set.bits_per_use * std::pow(10.0, eb_n0_db / 10.0);
  const double pr2 = mean_square_received_power(H, set);
  return H.responsivity_a * std::sqrt(pr2 / gamma_bar);
}

BoundCurve bound_curve(const SignalSet& set, const ChannelMatrix& H,
                       const std::vector<double>& eb_n0_grid_db) {
  BoundCurve curve;
  curve.points.reserve(eb_n0_grid_db.size());
  for (const double e : eb_n0_grid_db) {
    const double sigma = sigma_for_ebn0_db(e, H, set);
    const UnionBound bound = union_bound_ber(set, H, sigma);
    curve.points.push_back({e, bound.clamped, bound.raw});
  }
  return curve;
}

double bound_crossing_ebn0_db(const SignalSet& set, const ChannelMatrix& H,
                              double target_ber, double lo_db, double hi_db) {
  if (target_ber <= 0 || target_ber >= 1)
    throw std::domain_error("target BER must lie in (0, 1)");
  const auto bound_at = [&](double e) {
    return union_bound_ber(set, H, sigma_for_ebn0_db(e, H, set)).raw;
  };
  if (bound_at(lo_db) < target_ber || bound_at(hi_db) > target_ber)
    throw std::domain_error("target BER not bracketed by the Eb/N0 range");
  for (int iter = 0; iter < 80; ++iter) {
    const double mid = 0.5 * (lo_db + hi_db);
    (bound_at(mid) > target_ber ? lo_db : hi_db) = mid;
  }
  return 0.5 * (lo_db + hi_db);
}

RateMap snr_map(const MapSpec& spec, Scheme scheme,
                const ComplexAlphabet& reference_alphabet, unsigned workers) {
  spec.room.validate();
  spec.noise.validate();
  if (spec.resolution_m <= 0) throw std::domain_error("resolution must be positive");

  const SignalSet set = scale_to_led_power(
      enumerate_signal_set(scheme, reference_alphabet), spec.led_power_w);
  const auto expected_leds = set.vectors.front().intensities.size();
  if (static_cast<Eigen::Index>(spec.luminaires.size()) != expected_leds)
    throw std::domain_error("LED count does not match the scheme");

  RateMap map;
  map.resolution_m = spec.resolution_m;
  map.nx = static_cast<std::size_t>(
               std::floor(spec.room.length_m / spec.resolution_m + 1e-9)) + 1;
  map.ny = static_cast<std::size_t>(
               std::floor(spec.room.width_m / spec.resolution_m + 1e-9)) + 1;
  map.cells.assign(map.nx * map.ny, RateMapCell{});

  const double half = spec.d_rx / 2.0;
  parallel_rows(map.ny, workers, [&](std::size_t iy) {
    const double y = iy * spec.resolution_m;
    for (std::size_t ix = 0; ix < map.nx; ++ix) {
      const double x = ix * spec.resolution_m;
      RateMapCell& cell = map.at(ix, iy);
      // cells whose PD array would poke outside the room carry no data
      if (x - half < 0 || x + half > spec.room.length_m || y - half < 0 ||
          y + half > spec.room.width_m) {
        cell.valid = false;
        continue;
      }
      const ChannelMatrix H = cell_channel(spec, spec.luminaires, x, y);
      const double gamma_bar = cell_gamma(spec, H, set);
      cell.gamma_bar_db = gamma_bar > 0
                              ? 10.0 * std::log10(gamma_bar)
                              : -std::numeric_limits<double>::infinity();
      cell.valid = true;
    }
  });
  return map;
}

RateMap rate_contours(const RateMap& gamma, const MapSpec& spec, Scheme scheme,
                      double target_ber, unsigned workers) {
  if (target_ber <= 0 || target_ber >= 1)
    throw std::domain_error("target BER must lie in (0, 1)");

  // per-alphabet SNR requirement from the union bound on the reference
  // channel; the analytical BER-vs-SNR relation is computed once and then
  // applied to every cell's own SNR
  const std::vector<Luminaire>& ref_leds =
      spec.reference_luminaires.empty() ? spec.luminaires : spec.reference_luminaires;
  const ChannelMatrix H_ref =
      cell_channel(spec, ref_leds, spec.room.length_m / 2.0, spec.room.width_m / 2.0);

  struct LadderEntry {
    SignalSet set;
    unsigned eta;
    double gamma_required;
  };
  std::vector<LadderEntry> ladder;
  for (const unsigned M : rate_ladder(scheme)) {
    LadderEntry entry;
    entry.set = scale_to_led_power(
        enumerate_signal_set(scheme, make_alphabet(AlphabetFamily::Qam, M)),
        spec.led_power_w);
    entry.eta = entry.set.bits_per_use;
    const double eb_n0_db = bound_crossing_ebn0_db(entry.set, H_ref, target_ber);
    entry.gamma_required = entry.eta * std::pow(10.0, eb_n0_db / 10.0);
    ladder.push_back(std::move(entry));
  }

  RateMap map = gamma;
  const double half = spec.d_rx / 2.0;
  parallel_rows(map.ny, workers, [&](std::size_t iy) {
    const double y = iy * map.resolution_m;
    for (std::size_t ix = 0; ix < map.nx; ++ix) {
      const double x = ix * map.resolution_m;
      RateMapCell& cell = map.at(ix, iy);
      if (!cell.valid) continue;
      if (x - half < 0 || x + half > spec.room.length_m || y - half < 0 ||
          y + half > spec.room.width_m) {
        cell.valid = false;
        continue;
      }
      const ChannelMatrix H = cell_channel(spec, spec.luminaires, x, y);
      int best_rate = 0;
      for (const auto& entry : ladder) {
        if (cell_gamma(spec, H, entry.set) >= entry.gamma_required)
          best_rate = std::max(best_rate, int(entry.eta));
      }
      cell.max_rate_bpcu = best_rate;
    }
  });
  return map;
}

double coverage_percentage(const RateMap& map, int eta) {
  std::size_t valid = 0;
  std::size_t covered = 0;
  for (const auto& cell : map.cells) {
    if (!cell.valid) continue;
    ++valid;
    if (cell.max_rate_bpcu >= eta) ++covered;
  }
  if (valid == 0) throw std::domain_error("rate map has no valid cells");
  return 100.0 * static_cast<double>(covered) / static_cast<double>(valid);
}

}  // namespace vlcm
