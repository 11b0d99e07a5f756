// Randomized invariant suites shared by the unit tests (small input counts)
// and the acceptance runner (full counts).  Each suite draws its own inputs
// from a seeded stream and reports the first violation it finds.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "vlcm/analysis.hpp"
#include "vlcm/config.hpp"
#include "vlcm/csv.hpp"
#include "vlcm/detection.hpp"
#include "vlcm/geometry.hpp"
#include "vlcm/mapping.hpp"
#include "vlcm/montecarlo.hpp"
#include "vlcm/ofdm.hpp"
#include "vlcm/rng.hpp"

namespace props {

struct Result {
  std::string name;
  std::size_t inputs = 0;
  bool passed = true;
  std::string detail;
};

inline Result fail(Result r, const std::string& detail) {
  r.passed = false;
  r.detail = detail;
  return r;
}

inline double uniform(vlcm::RngStream& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.next_unit();
}

inline std::complex<double> random_symbol(vlcm::RngStream& rng, double radius = 8.0) {
  return {uniform(rng, -radius, radius), uniform(rng, -radius, radius)};
}

inline Eigen::Vector3d random_unit(vlcm::RngStream& rng) {
  Eigen::Vector3d v;
  do {
    v = {uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)};
  } while (v.norm() < 1e-3);
  return v.normalized();
}

inline vlcm::ComplexAlphabet random_alphabet(vlcm::RngStream& rng,
                                             bool odd_grid_only = false) {
  using vlcm::AlphabetFamily;
  if (odd_grid_only) {
    const unsigned sizes[] = {4, 8, 16, 32, 64};
    return vlcm::make_alphabet(AlphabetFamily::Qam, sizes[rng.next_bits(3) % 5]);
  }
  switch (rng.next_bits(2)) {
    case 0: return vlcm::make_alphabet(AlphabetFamily::Bpsk, 2);
    case 1: return vlcm::make_alphabet(AlphabetFamily::Psk, 4u << (rng.next_bits(2) % 3));
    default: {
      const unsigned sizes[] = {4, 8, 16, 32, 64};
      return vlcm::make_alphabet(AlphabetFamily::Qam, sizes[rng.next_bits(3) % 5]);
    }
  }
}

inline vlcm::Scheme random_scheme(vlcm::RngStream& rng) {
  switch (rng.next_bits(2)) {
    case 0: return vlcm::Scheme::Qcm;
    case 1: return vlcm::Scheme::QcmPr;
    case 2: return vlcm::Scheme::Dcm;
    default: return vlcm::Scheme::SmDcm;
  }
}

// random channel matrix with the right column count for a scheme
inline vlcm::ChannelMatrix random_channel(vlcm::RngStream& rng, int n_tx,
                                          int n_rx = 4) {
  vlcm::ChannelMatrix H;
  H.entries.resize(n_rx, n_tx);
  for (int i = 0; i < n_rx; ++i)
    for (int j = 0; j < n_tx; ++j) H.entries(i, j) = uniform(rng, 1e-7, 1e-5);
  H.responsivity_a = uniform(rng, 0.5, 2.0);
  return H;
}

// ---------------------------------------------------------------- geometry

inline Result los_gain_nonnegative_monotone(std::size_t iters) {
  Result r{"los_gain nonnegative, decreasing in distance", iters};
  vlcm::RngStream rng(101);
  for (std::size_t k = 0; k < iters; ++k) {
    const Eigen::Vector3d led_pos{uniform(rng, 0, 5), uniform(rng, 0, 5),
                                  uniform(rng, 2, 3.5)};
    const auto led = vlcm::Luminaire::make(led_pos, random_unit(rng),
                                           uniform(rng, 20, 80));
    vlcm::Detector pd;
    pd.normal = random_unit(rng);
    pd.fov_deg = uniform(rng, 10, 90);
    const Eigen::Vector3d direction = random_unit(rng);
    const double r1 = uniform(rng, 0.5, 2.0);
    const double r2 = r1 * uniform(rng, 1.01, 3.0);
    pd.position = led_pos + r1 * direction;
    const double g1 = vlcm::los_gain(led, pd);
    pd.position = led_pos + r2 * direction;  // same angles, farther away
    const double g2 = vlcm::los_gain(led, pd);
    if (g1 < 0 || g2 < 0) return fail(r, "negative gain");
    if (g2 > g1 + 1e-18) return fail(r, "gain grew with distance");
  }
  return r;
}

inline Result los_gain_rotation_invariant(std::size_t iters) {
  Result r{"los_gain invariant under rigid rotation", iters};
  vlcm::RngStream rng(102);
  for (std::size_t k = 0; k < iters; ++k) {
    const auto led = vlcm::Luminaire::make(
        {uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)},
        random_unit(rng), uniform(rng, 20, 80));
    vlcm::Detector pd;
    pd.position = led.position + uniform(rng, 0.3, 3.0) * random_unit(rng);
    pd.normal = random_unit(rng);
    const double base = vlcm::los_gain(led, pd);

    const Eigen::AngleAxisd rot(uniform(rng, 0, 2 * M_PI), random_unit(rng));
    const auto led_rot = vlcm::Luminaire::make(rot * led.position,
                                               (rot * led.normal).normalized(),
                                               led.half_power_semiangle_deg);
    vlcm::Detector pd_rot = pd;
    pd_rot.position = rot * pd.position;
    pd_rot.normal = (rot * pd.normal).normalized();
    const double rotated = vlcm::los_gain(led_rot, pd_rot);
    if (std::abs(rotated - base) > 1e-9 * std::max(base, 1e-12))
      return fail(r, "rotation changed the gain");
  }
  return r;
}

inline Result channel_mirror_symmetry(std::size_t iters) {
  Result r{"channel matrix respects mirror symmetry", iters};
  vlcm::RngStream rng(103);
  const vlcm::RoomConfig room;
  for (std::size_t k = 0; k < iters; ++k) {
    vlcm::TransceiverLayout layout;
    const int n_tx = rng.next_bits(1) ? 4 : 2;
    for (int j = 0; j < n_tx; ++j)
      layout.luminaires.push_back(vlcm::Luminaire::make(
          {uniform(rng, 0.5, 4.5), uniform(rng, 0.5, 4.5), uniform(rng, 2.5, 3.2)},
          Eigen::Vector3d{0, 0, -1}, uniform(rng, 30, 80)));
    for (int i = 0; i < 3; ++i) {
      vlcm::Detector pd;
      pd.position = {uniform(rng, 0.5, 4.5), uniform(rng, 0.5, 4.5), 0.8};
      layout.detectors.push_back(pd);
    }
    const Eigen::MatrixXd H = vlcm::build_channel_matrix(layout).entries;

    vlcm::TransceiverLayout mirrored = layout;  // x -> L - x is an isometry
    for (auto& led : mirrored.luminaires) {
      led.position.x() = room.length_m - led.position.x();
      led.normal.x() = -led.normal.x();
    }
    for (auto& pd : mirrored.detectors) {
      pd.position.x() = room.length_m - pd.position.x();
      pd.normal.x() = -pd.normal.x();
    }
    const Eigen::MatrixXd Hm = vlcm::build_channel_matrix(mirrored).entries;
    if (((H - Hm).cwiseAbs().maxCoeff()) > 1e-12 * std::max(H.maxCoeff(), 1e-12))
      return fail(r, "mirrored layout changed the channel");
  }
  return r;
}

inline Result noise_affine_in_power(std::size_t iters) {
  Result r{"noise variance affine in received power", iters};
  vlcm::RngStream rng(104);
  for (std::size_t k = 0; k < iters; ++k) {
    vlcm::NoiseModel model;
    model.ambient_current_a = uniform(rng, 1e-4, 1e-2);
    model.symbol_interval_s = uniform(rng, 1e-8, 1e-6);
    const double a = uniform(rng, 0.3, 3.0);
    const double p1 = uniform(rng, 0, 1e-4);
    const double p2 = uniform(rng, 0, 1e-4);
    const double slope = 2.0 * model.electron_charge_c * a *
                         model.noise_bandwidth_factor / model.symbol_interval_s;
    const double lhs = vlcm::noise_variance(model, p2, a) - vlcm::noise_variance(model, p1, a);
    const double rhs = slope * (p2 - p1);
    if (std::abs(lhs - rhs) > 1e-9 * std::max(std::abs(rhs), 1e-30))
      return fail(r, "slope mismatch");
  }
  return r;
}

inline Result snr_scales_inverse_sigma2(std::size_t iters) {
  Result r{"average SNR scales as 1/sigma^2", iters};
  vlcm::RngStream rng(105);
  for (std::size_t k = 0; k < iters; ++k) {
    const auto alphabet = random_alphabet(rng);
    const auto scheme = random_scheme(rng);
    const auto set = vlcm::enumerate_signal_set(scheme, alphabet, 0.3);
    const auto H = random_channel(rng, int(set.vectors.front().intensities.size()));
    const double s2 = uniform(rng, 1e-16, 1e-12);
    const double c = uniform(rng, 0.1, 10.0);
    const double g1 = vlcm::average_received_snr(H, set, s2);
    const double g2 = vlcm::average_received_snr(H, set, s2 * c);
    if (std::abs(g2 * c - g1) > 1e-9 * std::max(g1, 1e-30))
      return fail(r, "SNR not proportional to 1/sigma^2");
  }
  return r;
}

// ----------------------------------------------------------------- mappers

inline Result qcm_reconstruction_identity(std::size_t iters) {
  Result r{"qcm_map sign/magnitude reconstruction is the identity", iters};
  vlcm::RngStream rng(201);
  for (std::size_t k = 0; k < iters; ++k) {
    const auto s = random_symbol(rng);
    const Eigen::Vector4d x = vlcm::qcm_map(s);
    if (x.minCoeff() < 0) return fail(r, "negative intensity");
    if (x(0) - x(1) != s.real() || x(2) - x(3) != s.imag())
      return fail(r, "reconstruction mismatch");
  }
  return r;
}

inline Result dcm_roundtrip(std::size_t iters) {
  Result r{"dcm_map polar round-trip within 1e-12", iters};
  vlcm::RngStream rng(202);
  for (std::size_t k = 0; k < iters; ++k) {
    const auto s = random_symbol(rng);
    const Eigen::Vector2d x = vlcm::dcm_map(s);
    if (x(0) < 0 || x(1) < 0 || x(1) >= 2 * M_PI) return fail(r, "range violation");
    const auto back = std::polar(x(0), x(1));
    if (std::abs(back - s) > 1e-12 * std::max(1.0, std::abs(s)))
      return fail(r, "round-trip error");
  }
  return r;
}

inline Result qcm_two_active(std::size_t iters) {
  Result r{"QCM vectors activate one LED per I/Q pair", iters};
  vlcm::RngStream rng(203);
  for (std::size_t k = 0; k < iters; ++k) {
    const auto alphabet = random_alphabet(rng, /*odd_grid_only=*/true);
    const auto set = vlcm::enumerate_signal_set(vlcm::Scheme::Qcm, alphabet);
    for (const auto& tx : set.vectors) {
      const int active_i = (tx.intensities(0) > 0) + (tx.intensities(1) > 0);
      const int active_q = (tx.intensities(2) > 0) + (tx.intensities(3) > 0);
      if (active_i != 1 || active_q != 1) return fail(r, "activity pattern broken");
    }
    r.inputs += set.vectors.size();
  }
  r.inputs = std::max(r.inputs, iters);
  return r;
}

inline Result signal_set_cardinality(std::size_t iters) {
  Result r{"signal sets have 2^eta vectors with distinct labels", iters};
  vlcm::RngStream rng(204);
  for (std::size_t k = 0; k < iters; ++k) {
    const auto scheme = random_scheme(rng);
    const auto alphabet = random_alphabet(rng);
    const auto set = vlcm::enumerate_signal_set(scheme, alphabet, uniform(rng, 0, M_PI));
    if (set.vectors.size() != (std::size_t{1} << set.bits_per_use))
      return fail(r, "cardinality mismatch");
    std::vector<std::uint32_t> labels;
    for (std::size_t i = 0; i < set.vectors.size(); ++i) {
      const std::uint32_t bits = vlcm::demap(i, set);
      if (bits >> set.bits_per_use) return fail(r, "label wider than eta");
      labels.push_back(bits);
      if (scheme == vlcm::Scheme::SmDcm) {
        const bool block2 = set.vectors[i].intensities(2) > 0 ||
                            set.vectors[i].intensities(3) > 0;
        if (((bits >> (set.bits_per_use - 1)) & 1u) != (block2 ? 1u : 0u))
          return fail(r, "index bit does not match the active block");
      }
    }
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
      return fail(r, "duplicate labels");
  }
  return r;
}

inline Result qcm_pr_quarter_turn(std::size_t iters) {
  Result r{"QCM-PR vector set is 90-degree periodic on square QAM", iters};
  vlcm::RngStream rng(205);
  const unsigned sizes[] = {4, 16, 64};
  for (std::size_t k = 0; k < iters; ++k) {
    const auto alphabet =
        vlcm::make_alphabet(vlcm::AlphabetFamily::Qam, sizes[rng.next_bits(2) % 3]);
    const double theta = uniform(rng, 0, 2 * M_PI);
    const auto collect = [&](double angle) {
      std::vector<std::array<double, 4>> rows;
      for (const auto& p : alphabet.points) {
        const Eigen::Vector4d x = vlcm::qcm_pr_map(p, angle);
        rows.push_back({x(0), x(1), x(2), x(3)});
      }
      std::sort(rows.begin(), rows.end());
      return rows;
    };
    const auto base = collect(theta);
    const auto turned = collect(theta + M_PI / 2);
    for (std::size_t i = 0; i < base.size(); ++i)
      for (int j = 0; j < 4; ++j)
        if (std::abs(base[i][j] - turned[i][j]) > 1e-9)
          return fail(r, "vector sets differ after a quarter turn");
  }
  return r;
}

// --------------------------------------------------------------- detection

inline Result ml_scale_invariance(std::size_t iters) {
  Result r{"ml_detect invariant to joint positive scaling", iters};
  vlcm::RngStream rng(301);
  for (std::size_t k = 0; k < iters; ++k) {
    const auto alphabet = random_alphabet(rng);
    const auto scheme = random_scheme(rng);
    const auto set = vlcm::enumerate_signal_set(scheme, alphabet);
    auto H = random_channel(rng, int(set.vectors.front().intensities.size()));
    Eigen::VectorXd y(H.entries.rows());
    for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = uniform(rng, -1e-4, 1e-4);
    const auto base = vlcm::ml_detect(y, H, set);
    const double c = uniform(rng, 0.01, 100.0);
    vlcm::ChannelMatrix Hs = H;
    Hs.entries *= c;
    const auto scaled = vlcm::ml_detect(c * y, Hs, set);
    if (base.index != scaled.index) return fail(r, "argmin moved under scaling");
    if (scaled.bits >> set.bits_per_use) return fail(r, "bits wider than eta");
  }
  return r;
}

// --------------------------------------------------------------------- ofdm

inline Result dft_roundtrip(std::size_t iters) {
  Result r{"unitary DFT round-trip and Parseval", iters};
  vlcm::RngStream rng(401);
  for (std::size_t k = 0; k < iters; ++k) {
    const unsigned n = 2u << (rng.next_bits(2) % 4);  // 2..16
    Eigen::VectorXcd v(n);
    for (unsigned i = 0; i < n; ++i) v(i) = random_symbol(rng, 3.0);
    const Eigen::VectorXcd s = vlcm::ofdm_modulate(v);
    if (std::abs(s.norm() - v.norm()) > 1e-12 * std::max(1.0, v.norm()))
      return fail(r, "Parseval violated");
    const Eigen::VectorXcd back = vlcm::ofdm_demodulate(s);
    if ((back - v).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, v.cwiseAbs().maxCoeff()))
      return fail(r, "round-trip error above 1e-12");
  }
  return r;
}

inline Result md_optimality_certificate(std::size_t iters) {
  Result r{"MD residual never exceeds the transmitted frame's", iters};
  vlcm::RngStream rng(402);
  vlcm::ChannelSpec chan;
  const auto H = vlcm::build_channel_matrix(vlcm::build_layout(chan, vlcm::Scheme::Qcm));
  vlcm::OfdmConfig cfg;
  cfg.n_subcarriers = 4;
  cfg.alphabet = vlcm::make_alphabet(vlcm::AlphabetFamily::Qam, 4);
  cfg.scheme = vlcm::OfdmScheme::QcmOfdm;
  const vlcm::MdDetector md(H, cfg);
  const double a = H.responsivity_a;
  for (std::size_t k = 0; k < iters; ++k) {
    Eigen::VectorXcd v(4);
    std::size_t truth = 0;
    for (unsigned n = 0; n < 4; ++n) {
      const std::size_t idx = rng.next_bits(2);
      truth = truth * 4 + idx;
      v(n) = cfg.alphabet.points[idx];
    }
    Eigen::MatrixXd Y = a * (H.entries * vlcm::qcm_ofdm_transmit(v));
    const double sigma = uniform(rng, 1e-8, 2e-6);
    for (Eigen::Index i = 0; i < Y.size(); ++i)
      Y(i / Y.cols(), i % Y.cols()) += sigma * rng.next_gaussian();
    const auto symbols = md.detect(Y);
    std::size_t hit = 0;
    for (const std::size_t s : symbols) hit = hit * 4 + s;
    const double res_hit = md.residual(Y, hit);
    const double res_truth = md.residual(Y, truth);
    if (res_hit > res_truth * (1 + 1e-12) + 1e-300)
      return fail(r, "detected frame has larger residual than the truth");
  }
  return r;
}

inline Result zf_inverts_noiseless(std::size_t iters) {
  Result r{"ZF chains exactly invert noiseless transmissions", iters};
  vlcm::RngStream rng(403);
  vlcm::ChannelSpec chan;
  const auto Hq = vlcm::build_channel_matrix(vlcm::build_layout(chan, vlcm::Scheme::Qcm));
  const auto Hd = vlcm::build_channel_matrix(vlcm::build_layout(chan, vlcm::Scheme::Dcm));
  const auto alphabet = vlcm::make_alphabet(vlcm::AlphabetFamily::Qam, 16);
  for (std::size_t k = 0; k < iters; ++k) {
    const unsigned n = 8;
    Eigen::VectorXcd v(n);
    std::vector<std::size_t> truth(n);
    for (unsigned i = 0; i < n; ++i) {
      truth[i] = rng.next_bits(4);
      v(i) = alphabet.points[truth[i]];
    }
    const bool quad = rng.next_bits(1);
    const auto& H = quad ? Hq : Hd;
    const Eigen::MatrixXd Y =
        H.responsivity_a *
        (H.entries * (quad ? vlcm::qcm_ofdm_transmit(v) : vlcm::dcm_ofdm_transmit(v)));
    const auto detected = quad ? vlcm::qcm_ofdm_zf_detect(Y, H, alphabet)
                               : vlcm::dcm_ofdm_zf_detect(Y, H, alphabet);
    if (detected != truth) return fail(r, "noiseless ZF detection missed");
  }
  return r;
}

inline Result active_pair_identified_noiseless(std::size_t iters) {
  Result r{"noiseless active-LED identification on the reference channel", iters};
  vlcm::RngStream rng(404);
  vlcm::ChannelSpec chan;
  const auto H = vlcm::build_channel_matrix(vlcm::build_layout(chan, vlcm::Scheme::Qcm));
  const auto alphabet = vlcm::make_alphabet(vlcm::AlphabetFamily::Qam, 16);
  for (std::size_t k = 0; k < iters; ++k) {
    const auto s = alphabet.points[rng.next_bits(4)];
    const Eigen::Vector4d x = vlcm::qcm_map(s);
    const Eigen::VectorXd y = H.responsivity_a * (H.entries * x);
    const auto [i1, i2] = vlcm::identify_active_leds(y, H);
    const bool active1 = x(i1) > 0;
    const bool active2 = x(i2) > 0;
    if (!active1 || !active2) return fail(r, "identified an OFF LED");
  }
  return r;
}

// ---------------------------------------------------------------- analysis

inline Result bound_decreasing_in_sigma(std::size_t iters) {
  Result r{"union bound strictly decreasing as sigma shrinks", iters};
  vlcm::RngStream rng(501);
  for (std::size_t k = 0; k < iters; ++k) {
    const auto scheme = random_scheme(rng);
    const auto set = vlcm::enumerate_signal_set(scheme, random_alphabet(rng));
    const auto H = random_channel(rng, int(set.vectors.front().intensities.size()));
    const double s1 = uniform(rng, 1e-8, 1e-6);
    const double s2 = s1 * uniform(rng, 1.05, 4.0);
    const double b1 = vlcm::union_bound_ber(set, H, s1).raw;
    const double b2 = vlcm::union_bound_ber(set, H, s2).raw;
    if (!(b1 < b2) && b2 > 1e-280) return fail(r, "bound did not decrease");
  }
  return r;
}

inline Result bound_relabeling_invariance(std::size_t iters) {
  Result r{"union bound invariant under joint permutation", iters};
  vlcm::RngStream rng(502);
  for (std::size_t k = 0; k < iters; ++k) {
    const auto scheme = random_scheme(rng);
    auto set = vlcm::enumerate_signal_set(scheme, random_alphabet(rng));
    const auto H = random_channel(rng, int(set.vectors.front().intensities.size()));
    const double sigma = uniform(rng, 1e-8, 1e-6);
    const double base = vlcm::union_bound_ber(set, H, sigma).raw;
    // Fisher-Yates with the stream
    for (std::size_t i = set.vectors.size(); i > 1; --i)
      std::swap(set.vectors[i - 1], set.vectors[rng.next_u64() % i]);
    const double shuffled = vlcm::union_bound_ber(set, H, sigma).raw;
    if (std::abs(base - shuffled) > 1e-12 * std::max(base, 1e-30))
      return fail(r, "permutation changed the bound");
  }
  return r;
}

inline Result pep_symmetry(std::size_t iters) {
  Result r{"pairwise error probability is symmetric", iters};
  vlcm::RngStream rng(503);
  for (std::size_t k = 0; k < iters; ++k) {
    const int n_tx = rng.next_bits(1) ? 4 : 2;
    const auto H = random_channel(rng, n_tx);
    Eigen::VectorXd x1(n_tx), x2(n_tx);
    for (int j = 0; j < n_tx; ++j) {
      x1(j) = uniform(rng, 0, 7);
      x2(j) = uniform(rng, 0, 7);
    }
    const double sigma = uniform(rng, 1e-8, 1e-6);
    const double p12 = vlcm::pep(x1, x2, H, sigma);
    const double p21 = vlcm::pep(x2, x1, H, sigma);
    if (p12 != p21) return fail(r, "pep asymmetric");
    // (0, 0.5] mathematically; far tails underflow to exactly 0 in double
    if (p12 < 0 || p12 > 0.5) return fail(r, "pep out of [0, 0.5]");
    if (vlcm::pep(x1, x1, H, sigma) != 0.5) return fail(r, "pep(x, x) must be 1/2");
  }
  return r;
}

inline Result davg_dominates_dmin(std::size_t iters) {
  Result r{"d_avg >= d_min over random sets and channels", iters};
  vlcm::RngStream rng(504);
  for (std::size_t k = 0; k < iters; ++k) {
    const auto scheme = random_scheme(rng);
    const auto set = vlcm::enumerate_signal_set(scheme, random_alphabet(rng));
    const auto H = random_channel(rng, int(set.vectors.front().intensities.size()));
    const auto [d_min, d_avg] = vlcm::dmin_davg(set, H);
    if (d_avg + 1e-15 < d_min) return fail(r, "d_avg below d_min");
  }
  return r;
}

inline Result coverage_monotone(std::size_t iters) {
  Result r{"coverage percentage non-increasing in eta", iters};
  vlcm::RngStream rng(505);
  for (std::size_t k = 0; k < iters; ++k) {
    vlcm::RateMap map;
    map.nx = 8;
    map.ny = 8;
    map.cells.assign(64, vlcm::RateMapCell{});
    for (auto& c : map.cells) {
      c.valid = rng.next_bits(3) != 0;  // some no-data cells
      c.max_rate_bpcu = int(rng.next_bits(3));
    }
    if (std::none_of(map.cells.begin(), map.cells.end(),
                     [](const auto& c) { return c.valid; }))
      continue;
    double prev = vlcm::coverage_percentage(map, 0);
    if (prev != 100.0) return fail(r, "eta 0 must cover 100%");
    for (int eta = 1; eta <= 8; ++eta) {
      const double cov = vlcm::coverage_percentage(map, eta);
      if (cov > prev + 1e-12) return fail(r, "coverage increased with eta");
      prev = cov;
    }
  }
  return r;
}

// --------------------------------------------------------------------- csv

inline Result csv_roundtrip(std::size_t iters, const std::string& dir) {
  Result r{"CSV artifacts re-parse bit-exactly", iters};
  vlcm::RngStream rng(601);
  const std::string path = dir + "/prop_roundtrip.csv";
  for (std::size_t k = 0; k < iters; ++k) {
    vlcm::BerCurve curve;
    const int rows = 1 + int(rng.next_bits(3));
    for (int i = 0; i < rows; ++i) {
      vlcm::BerPoint p;
      p.eb_n0_db = uniform(rng, -50, 120);
      p.bits = rng.next_u64() >> 20;
      p.errors = p.bits ? rng.next_u64() % (p.bits + 1) : 0;
      p.ber = p.bits ? double(p.errors) / double(p.bits) : 0.0;
      curve.points.push_back(p);
    }
    vlcm::write_ber_curve_csv(path, curve);
    const vlcm::BerCurve back = vlcm::read_ber_curve_csv(path);
    if (back.points.size() != curve.points.size()) return fail(r, "row count changed");
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
      const auto& a = curve.points[i];
      const auto& b = back.points[i];
      if (a.eb_n0_db != b.eb_n0_db || a.ber != b.ber || a.bits != b.bits ||
          a.errors != b.errors)
        return fail(r, "row " + std::to_string(i) + " not bit-exact");
    }
  }
  return r;
}

/// All suites at a common input count (the acceptance runner passes 1e4).
inline std::vector<Result> run_all(std::size_t n, const std::string& tmp_dir) {
  return {
      los_gain_nonnegative_monotone(n),
      los_gain_rotation_invariant(n),
      channel_mirror_symmetry(n),
      noise_affine_in_power(n),
      snr_scales_inverse_sigma2(n),
      qcm_reconstruction_identity(n),
      dcm_roundtrip(n),
      qcm_two_active(n),
      signal_set_cardinality(n),
      qcm_pr_quarter_turn(n),
      ml_scale_invariance(n),
      dft_roundtrip(n),
      md_optimality_certificate(n),
      zf_inverts_noiseless(n),
      active_pair_identified_noiseless(n),
      bound_decreasing_in_sigma(n),
      bound_relabeling_invariance(n),
      pep_symmetry(n),
      davg_dominates_dmin(n),
      coverage_monotone(n),
      csv_roundtrip(n, tmp_dir),
  };
}

}  // namespace props
