#include <doctest.h>

#include <cmath>

#include "vlcm/analysis.hpp"
#include "vlcm/config.hpp"
#include "vlcm/montecarlo.hpp"

#include "support/oracles.hpp"
#include "support/properties.hpp"

using namespace vlcm;

namespace {

ChannelMatrix reference_channel(Scheme scheme, double d_tx = 1.0) {
  ChannelSpec chan;
  chan.d_tx = d_tx;
  if (scheme == Scheme::SmDcm) chan.placement = PlacementKind::SmdcmP2;
  return build_channel_matrix(build_layout(chan, scheme));
}

}  // namespace

TEST_CASE("q_function anchor values") {
  CHECK(q_function(0.0) == doctest::Approx(0.5));
  CHECK(q_function(1.0) == doctest::Approx(0.15865525393145707).epsilon(1e-12));
  CHECK(q_function(30.0) < 1e-100);
}

TEST_CASE("pep") {
  const ChannelMatrix H = reference_channel(Scheme::Qcm);
  const auto set = enumerate_signal_set(Scheme::Qcm, make_alphabet("qam-4"));
  const Eigen::VectorXd& x1 = set.vectors[0].intensities;
  const Eigen::VectorXd& x2 = set.vectors[1].intensities;

  CHECK(pep(x1, x1, H, 1e-7) == doctest::Approx(0.5));
  // ||H delta|| = 2 sigma / a puts the argument at exactly 1
  const double dist = (H.entries * (x2 - x1)).norm();
  const double sigma = H.responsivity_a * dist / 2.0;
  CHECK(pep(x1, x2, H, sigma) == doctest::Approx(0.15865525393145707).epsilon(1e-9));
  CHECK(pep(x1, x2, H, 1e-12) < 1e-30);  // sigma -> 0 kills the tail
}

TEST_CASE("union bound equals the two-term sum for a 1-bit pair") {
  // L = 2 with labels differing in one bit: bound = Q(a ||H delta|| / 2 sigma)
  SignalSet pair;
  pair.bits_per_use = 1;
  pair.scheme = Scheme::Dcm;
  pair.vectors.push_back({(Eigen::VectorXd(2) << 1.0, 0.0).finished(), 0});
  pair.vectors.push_back({(Eigen::VectorXd(2) << 0.0, 1.0).finished(), 1});
  ChannelMatrix H;
  H.entries = Eigen::MatrixXd::Identity(2, 2);
  const double sigma = 0.25;
  const UnionBound bound = union_bound_ber(pair, H, sigma);
  CHECK(bound.raw ==
        doctest::Approx(q_function(std::sqrt(2.0) / (2 * sigma))).epsilon(1e-12));
}

TEST_CASE("union bound matches the independent double-loop oracle") {
  for (auto [scheme, token] : {std::pair{Scheme::Qcm, "qam-4"},
                               std::pair{Scheme::Dcm, "qam-8"},
                               std::pair{Scheme::SmDcm, "qam-16"}}) {
    const ChannelMatrix H = reference_channel(scheme);
    const auto set = enumerate_signal_set(scheme, make_alphabet(token));
    for (const double eb : {30.0, 40.0, 50.0}) {
      const double sigma = sigma_for_ebn0_db(eb, H, set);
      const double lib = union_bound_ber(set, H, sigma).raw;
      const double oracle = oracles::union_bound(set, H.entries, H.responsivity_a, sigma);
      CHECK(lib == doctest::Approx(oracle).epsilon(1e-12));
    }
  }
}

TEST_CASE("bound clamp") {
  const ChannelMatrix H = reference_channel(Scheme::Qcm);
  const auto set = enumerate_signal_set(Scheme::Qcm, make_alphabet("qam-16"));
  const UnionBound low_snr = union_bound_ber(set, H, 1.0);
  CHECK(low_snr.raw > 0.5);  // union bounds exceed 1/2 at low SNR
  CHECK(low_snr.clamped == 0.5);
}

TEST_CASE("dmin_davg") {
  SUBCASE("duplicate vector gives zero minimum") {
    SignalSet set;
    set.bits_per_use = 1;
    set.vectors.push_back({(Eigen::VectorXd(2) << 1.0, 2.0).finished(), 0});
    set.vectors.push_back({(Eigen::VectorXd(2) << 1.0, 2.0).finished(), 1});
    ChannelMatrix H;
    H.entries = Eigen::MatrixXd::Identity(2, 2);
    const auto [d_min, d_avg] = dmin_davg(set, H);
    CHECK(d_min == 0.0);
  }
  SUBCASE("single pair through the identity") {
    SignalSet set;
    set.bits_per_use = 1;
    set.vectors.push_back({(Eigen::VectorXd(2) << 1.0, 0.0).finished(), 0});
    set.vectors.push_back({(Eigen::VectorXd(2) << 0.0, 1.0).finished(), 1});
    ChannelMatrix H;
    H.entries = Eigen::MatrixXd::Identity(2, 2);
    const auto [d_min, d_avg] = dmin_davg(set, H);
    CHECK(d_min == doctest::Approx(2.0));
    CHECK(d_avg == doctest::Approx(2.0));
  }
  SUBCASE("placement ordering at 2 m spacing") {
    for (const char* token : {"qam-8", "qam-32"}) {
      const auto set = enumerate_signal_set(Scheme::SmDcm, make_alphabet(token));
      ChannelSpec chan;
      chan.d_tx = 2.0;
      chan.placement = PlacementKind::SmdcmP1;
      const auto [min1, avg1] =
          dmin_davg(set, build_channel_matrix(build_layout(chan, Scheme::SmDcm)));
      chan.placement = PlacementKind::SmdcmP2;
      const auto [min2, avg2] =
          dmin_davg(set, build_channel_matrix(build_layout(chan, Scheme::SmDcm)));
      CHECK(min2 > min1);
      CHECK(avg2 >= avg1);
    }
  }
}

TEST_CASE("bound curve is monotone and the crossing finder brackets it") {
  const ChannelMatrix H = reference_channel(Scheme::Qcm);
  const auto set = enumerate_signal_set(Scheme::Qcm, make_alphabet("qam-4"));
  const BoundCurve curve = bound_curve(set, H, {20, 30, 40, 50, 60, 70});
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    CHECK(curve.points[i].ber_bound <= curve.points[i - 1].ber_bound);
    CHECK(curve.points[i].ber_bound <= 0.5);
  }
  const double crossing = bound_crossing_ebn0_db(set, H, 1e-3);
  const double at = union_bound_ber(set, H, sigma_for_ebn0_db(crossing, H, set)).raw;
  CHECK(at == doctest::Approx(1e-3).epsilon(1e-6));
}

TEST_CASE("snr map on a coarse grid") {
  ExperimentConfig cfg;
  cfg.d_tx_m = 2.0;
  cfg.resolution_m = 0.25;
  const MapSpec spec = to_map_spec(cfg);
  const RateMap map = snr_map(spec, Scheme::Qcm, make_alphabet("qam-16"), 2);
  REQUIRE(map.nx == 21);
  REQUIRE(map.ny == 21);

  SUBCASE("no-data ring at the walls") {
    CHECK(!map.at(0, 10).valid);
    CHECK(!map.at(10, 0).valid);
    CHECK(map.at(10, 10).valid);
  }
  SUBCASE("mirror symmetry of the gamma surface") {
    for (std::size_t iy = 1; iy < map.ny - 1; ++iy)
      for (std::size_t ix = 1; ix < map.nx - 1; ++ix) {
        const auto& a = map.at(ix, iy);
        const auto& b = map.at(map.nx - 1 - ix, iy);
        REQUIRE(a.valid);
        REQUIRE(b.valid);
        CHECK(a.gamma_bar_db == doctest::Approx(b.gamma_bar_db).epsilon(1e-9));
      }
  }
  SUBCASE("corner well below the center") {
    const double center = map.at(10, 10).gamma_bar_db;
    const double corner = map.at(1, 1).gamma_bar_db;
    CHECK(center - corner > 3.0);
  }
  SUBCASE("compact placements peak at the array centroid") {
    ExperimentConfig tight = cfg;
    tight.d_tx_m = 1.0;
    const RateMap map1 = snr_map(to_map_spec(tight), Scheme::Qcm,
                                 make_alphabet("qam-16"), 2);
    double best = -1e300;
    std::size_t bx = 0, by = 0;
    for (std::size_t iy = 0; iy < map1.ny; ++iy)
      for (std::size_t ix = 0; ix < map1.nx; ++ix)
        if (map1.at(ix, iy).valid && map1.at(ix, iy).gamma_bar_db > best) {
          best = map1.at(ix, iy).gamma_bar_db;
          bx = ix;
          by = iy;
        }
    CHECK(bx == 10);
    CHECK(by == 10);
  }
}

TEST_CASE("rate contours and coverage on a coarse grid") {
  ExperimentConfig cfg;
  cfg.d_tx_m = 2.0;
  cfg.resolution_m = 0.25;
  const MapSpec spec = to_map_spec(cfg);
  const RateMap gamma = snr_map(spec, Scheme::Qcm, make_alphabet("qam-16"), 2);
  const RateMap rates = rate_contours(gamma, spec, Scheme::Qcm, 1e-5, 2);

  SUBCASE("rates live in the ladder range") {
    for (const auto& cell : rates.cells)
      if (cell.valid) {
        CHECK(cell.max_rate_bpcu >= 0);
        CHECK(cell.max_rate_bpcu <= 6);
      }
  }
  SUBCASE("overwhelming noise zeroes every cell") {
    MapSpec loud = spec;
    loud.noise.amplifier_noise_density *= 1e6;
    const RateMap gamma2 = snr_map(loud, Scheme::Qcm, make_alphabet("qam-16"), 2);
    const RateMap zero = rate_contours(gamma2, loud, Scheme::Qcm, 1e-5, 2);
    for (const auto& cell : zero.cells)
      if (cell.valid) CHECK(cell.max_rate_bpcu == 0);
    CHECK(coverage_percentage(zero, 1) == 0.0);
  }
  SUBCASE("coverage endpoints") {
    CHECK(coverage_percentage(rates, 0) == 100.0);
    CHECK(coverage_percentage(rates, 7) == 0.0);
  }
}

TEST_CASE("analysis properties (sampled)") {
  for (const auto& result :
       {props::bound_decreasing_in_sigma(200), props::bound_relabeling_invariance(200),
        props::pep_symmetry(500), props::davg_dominates_dmin(200),
        props::coverage_monotone(500)}) {
    INFO(result.name, ": ", result.detail);
    CHECK(result.passed);
  }
}
