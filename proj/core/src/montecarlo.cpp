#include "vlcm/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

#include "vlcm/detection.hpp"

namespace vlcm {

namespace {

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Trials per partition, sized so one partition carries about 2^18 bits.
// A pure function of the simulation parameters; results must not depend on
// the worker count.
std::uint64_t partition_trials(unsigned bits_per_trial) {
  return std::max<std::uint64_t>(1, (std::uint64_t{1} << 18) / bits_per_trial);
}

struct PartResult {
  std::uint64_t bits = 0;
  std::uint64_t errors = 0;
};

/// Runs one Eb/N0 point: partitions of trials are claimed by workers, each
/// partition draws from the stream (seed, point, partition), and the stop
/// rule is evaluated over the partition-index prefix, so the merged result
/// is identical for any worker count.
template <typename TrialBlock>
PartResult run_point(std::uint64_t master_seed, std::uint64_t point_index,
                     const StopRule& stop, unsigned workers,
                     std::uint64_t trials_per_partition,
                     const TrialBlock& run_block) {
  std::mutex guard;
  std::map<std::uint64_t, PartResult> completed;
  std::atomic<std::uint64_t> next{0};
  std::uint64_t prefix = 0;
  PartResult merged;
  std::optional<std::uint64_t> stop_index;

  const auto worker_loop = [&] {
    for (;;) {
      const std::uint64_t p = next.fetch_add(1);
      {
        std::lock_guard lock(guard);
        if (stop_index && p > *stop_index) return;
      }
      RngStream rng(master_seed, point_index, p);
      const PartResult part = run_block(rng, trials_per_partition);

      std::lock_guard lock(guard);
      completed.emplace(p, part);
      while (!stop_index || prefix <= *stop_index) {
        const auto it = completed.find(prefix);
        if (it == completed.end()) break;
        merged.bits += it->second.bits;
        merged.errors += it->second.errors;
        completed.erase(it);
        if (!stop_index &&
            (merged.errors >= stop.min_bit_errors || merged.bits >= stop.max_bits))
          stop_index = prefix;
        ++prefix;
      }
    }
  };

  const unsigned n_workers = resolve_workers(workers);
  if (n_workers <= 1) {
    worker_loop();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker_loop);
    for (auto& t : pool) t.join();
  }
  return merged;
}

unsigned popcount32(std::uint32_t v) {
  return static_cast<unsigned>(__builtin_popcount(v));
}

void validate_spec(const SimSpec& spec) {
  if (spec.alphabet.points.empty()) throw std::domain_error("empty alphabet");
  if (spec.eb_n0_grid_db.empty()) throw std::domain_error("empty Eb/N0 grid");
  if (spec.stop.min_bit_errors == 0 || spec.stop.max_bits == 0)
    throw std::domain_error("stop rule fields must be positive");
  if (spec.ofdm && spec.scheme != Scheme::Qcm && spec.scheme != Scheme::Dcm)
    throw std::domain_error("OFDM framing supports the QCM and DCM mappers");
}

BerCurve simulate_single_use(const SimSpec& spec) {
  const TransceiverLayout layout = build_layout(spec.channel, spec.scheme);
  const ChannelMatrix H = build_channel_matrix(layout);
  const SignalSet set = enumerate_signal_set(spec.scheme, spec.alphabet, spec.rotation_rad);
  const MlDetector detector(H, set);
  const unsigned eta = set.bits_per_use;
  const auto n_rx = H.entries.rows();

  std::vector<std::uint32_t> labels;
  labels.reserve(set.size());
  for (const auto& tx : set.vectors) labels.push_back(tx.bits);

  BerCurve curve;
  for (std::size_t point = 0; point < spec.eb_n0_grid_db.size(); ++point) {
    const double eb_n0_db = spec.eb_n0_grid_db[point];
    const double sigma = sigma_for_ebn0_db(eb_n0_db, H, set);

    const auto block = [&](RngStream& rng, std::uint64_t trials) {
      PartResult out;
      Eigen::VectorXd y(n_rx);
      for (std::uint64_t t = 0; t < trials; ++t) {
        const std::uint32_t tx_index = rng.next_bits(eta);
        y = detector.images().col(tx_index);
        for (Eigen::Index i = 0; i < n_rx; ++i) y(i) += sigma * rng.next_gaussian();
        const MlResult hit = detector.detect(y);
        out.errors += popcount32(labels[tx_index] ^ hit.bits);
        out.bits += eta;
      }
      return out;
    };

    const PartResult res = run_point(spec.master_seed, point, spec.stop,
                                     spec.workers, partition_trials(eta), block);
    curve.points.push_back({eb_n0_db, res.bits ? double(res.errors) / double(res.bits) : 0.0,
                            res.bits, res.errors});
  }
  return curve;
}

BerCurve simulate_ofdm(const SimSpec& spec) {
  const TransceiverLayout layout = build_layout(spec.channel, spec.scheme);
  const ChannelMatrix H = build_channel_matrix(layout);
  const OfdmRun& run = *spec.ofdm;

  OfdmConfig ocfg;
  ocfg.n_subcarriers = run.n_subcarriers;
  ocfg.alphabet = spec.alphabet;
  ocfg.scheme = spec.scheme == Scheme::Qcm ? OfdmScheme::QcmOfdm : OfdmScheme::DcmOfdm;
  ocfg.validate();

  const unsigned n = ocfg.n_subcarriers;
  const unsigned bps = spec.alphabet.bits_per_symbol;
  const unsigned bits_per_frame = n * bps;
  const auto n_rx = H.entries.rows();
  const double a = H.responsivity_a;
  const double pr2 = ofdm_mean_square_received_power(H, ocfg);

  std::optional<MdDetector> md;
  if (run.detector == OfdmDetector::Md) md.emplace(H, ocfg);

  // IDFT matrix and per-symbol transmit columns are rebuilt per frame via the
  // library mappers for ZF; the MD path uses its precomputed image table.
  const Eigen::MatrixXcd idft = [&] {
    Eigen::MatrixXcd F(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (unsigned k = 0; k < n; ++k)
      for (unsigned m = 0; m < n; ++m)
        F(k, m) = std::polar(scale, 2.0 * M_PI * double(k) * double(m) / n);
    return F;
  }();

  const auto& labels = spec.alphabet.labels;
  const bool quad = ocfg.scheme == OfdmScheme::QcmOfdm;

  BerCurve curve;
  for (std::size_t point = 0; point < spec.eb_n0_grid_db.size(); ++point) {
    const double eb_n0_db = spec.eb_n0_grid_db[point];
    const double gamma_bar = bps * std::pow(10.0, eb_n0_db / 10.0);
    const double sigma = a * std::sqrt(pr2 / gamma_bar);

    const auto block = [&](RngStream& rng, std::uint64_t trials) {
      PartResult out;
      constexpr std::uint64_t kBatch = 64;
      std::vector<std::size_t> truth(n * kBatch);
      Eigen::VectorXcd v(n), s(n);
      Eigen::MatrixXd frame(n_rx, n);
      Eigen::MatrixXd flat(n_rx * n, kBatch);

      for (std::uint64_t done = 0; done < trials;) {
        const std::uint64_t batch = std::min(kBatch, trials - done);
        for (std::uint64_t b = 0; b < batch; ++b) {
          for (unsigned k = 0; k < n; ++k) {
            const std::size_t idx = rng.next_bits(bps);
            truth[b * n + k] = idx;
            v(k) = spec.alphabet.points[idx];
          }
          s = idft * v;
          for (unsigned k = 0; k < n; ++k) {
            const Eigen::VectorXd x =
                quad ? Eigen::VectorXd(qcm_map(s(k))) : Eigen::VectorXd(dcm_map(s(k)));
            frame.col(k) = a * (H.entries * x);
          }
          for (Eigen::Index i = 0; i < frame.size(); ++i)
            flat(i, static_cast<Eigen::Index>(b)) =
                frame(i % n_rx, i / n_rx) + sigma * rng.next_gaussian();
        }

        if (md) {
          const std::vector<std::size_t> hits =
              md->detect_flat(flat.leftCols(static_cast<Eigen::Index>(batch)));
          for (std::uint64_t b = 0; b < batch; ++b) {
            const auto symbols = md->candidate_symbols(hits[b]);
            for (unsigned k = 0; k < n; ++k)
              out.errors += popcount32(labels[truth[b * n + k]] ^ labels[symbols[k]]);
          }
        } else {
          for (std::uint64_t b = 0; b < batch; ++b) {
            for (unsigned k = 0; k < n; ++k)
              frame.col(k) = flat.col(static_cast<Eigen::Index>(b))
                                 .segment(k * n_rx, n_rx);
            const std::vector<std::size_t> symbols =
                quad ? qcm_ofdm_zf_detect(frame, H, spec.alphabet,
                                          run.structured_identification)
                     : dcm_ofdm_zf_detect(frame, H, spec.alphabet);
            for (unsigned k = 0; k < n; ++k)
              out.errors += popcount32(labels[truth[b * n + k]] ^ labels[symbols[k]]);
          }
        }
        out.bits += batch * bits_per_frame;
        done += batch;
      }
      return out;
    };

    const PartResult res =
        run_point(spec.master_seed, point, spec.stop, spec.workers,
                  partition_trials(bits_per_frame), block);
    curve.points.push_back({eb_n0_db, res.bits ? double(res.errors) / double(res.bits) : 0.0,
                            res.bits, res.errors});
  }
  return curve;
}

}  // namespace

TransceiverLayout build_layout(const ChannelSpec& chan, Scheme scheme) {
  TransceiverLayout layout;
  std::vector<Eigen::Vector3d> positions = generate_placement(
      chan.room, chan.placement, chan.d_tx, chan.tx_center, chan.tx_height_m);
  if (scheme != Scheme::SmDcm && chan.placement == PlacementKind::QcmGrid) {
    // Signal-to-LED assignment over the grid: the real-part pair (LEDs 1-2)
    // sits on the NW/SE diagonal and the imaginary-part pair (LEDs 3-4) on
    // NE/SW.  DCM keeps the first pair.  Pairing opposite corners is what
    // keeps the two pair-difference channel responses well separated.
    positions = {positions[0], positions[3], positions[1], positions[2]};
  }
  const std::size_t n_leds = scheme == Scheme::Dcm ? 2 : 4;
  for (std::size_t j = 0; j < n_leds; ++j)
    layout.luminaires.push_back(Luminaire::make(positions[j], chan.led_normal,
                                                chan.half_power_semiangle_deg));
  layout.detectors = generate_detector_grid(chan.room, chan.d_rx, chan.rx_center,
                                            chan.rx_height_m, chan.pd_prototype);
  layout.d_tx = chan.d_tx;
  layout.d_rx = chan.d_rx;
  layout.validate(chan.room);
  return layout;
}

BerCurve simulate_ber(const SimSpec& spec) {
  validate_spec(spec);
  return spec.ofdm ? simulate_ofdm(spec) : simulate_single_use(spec);
}

std::vector<SweepPoint> sweep_dtx(const SimSpec& spec, double eb_n0_db,
                                  const std::vector<double>& dtx_list_m) {
  std::vector<SweepPoint> sweep;
  for (const double d : dtx_list_m) {
    SimSpec point_spec = spec;
    point_spec.channel.d_tx = d;
    point_spec.eb_n0_grid_db = {eb_n0_db};
    const BerCurve curve = simulate_ber(point_spec);
    sweep.push_back({d, curve.points.front()});
  }
  return sweep;
}

std::vector<SweepPoint> sweep_rotation(const SimSpec& spec, double eb_n0_db,
                                       const std::vector<double>& theta_list_deg) {
  if (spec.scheme != Scheme::QcmPr)
    throw std::domain_error("rotation sweep requires the qcm-pr scheme");
  std::vector<SweepPoint> sweep;
  for (const double theta : theta_list_deg) {
    SimSpec point_spec = spec;
    point_spec.rotation_rad = theta * M_PI / 180.0;
    point_spec.eb_n0_grid_db = {eb_n0_db};
    const BerCurve curve = simulate_ber(point_spec);
    sweep.push_back({theta, curve.points.front()});
  }
  return sweep;
}

}  // namespace vlcm
