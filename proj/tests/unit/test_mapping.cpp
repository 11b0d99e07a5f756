#include <doctest.h>

#include <cmath>

#include "vlcm/mapping.hpp"

#include "support/properties.hpp"

using namespace vlcm;

TEST_CASE("qcm_map on the worked symbols") {
  CHECK(qcm_map({-3.0, 1.0}).isApprox(Eigen::Vector4d{0, 3, 1, 0}));
  CHECK(qcm_map({1.0, -3.0}).isApprox(Eigen::Vector4d{1, 0, 0, 3}));
  CHECK(qcm_map({1.0, 1.0}).isApprox(Eigen::Vector4d{1, 0, 1, 0}));
}

TEST_CASE("qcm_pr_map") {
  SUBCASE("45-degree rotation of 1+j lights a single LED") {
    const Eigen::Vector4d x = qcm_pr_map({1.0, 1.0}, M_PI / 4);
    CHECK(x(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(x(1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(x(2) == doctest::Approx(std::sqrt(2.0)));
    CHECK(x(3) == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("zero rotation reduces to qcm_map") {
    for (const auto s : {std::complex<double>{-3, 1}, {1, -3}, {2.5, -0.5}})
      CHECK(qcm_pr_map(s, 0.0).isApprox(qcm_map(s)));
  }
  SUBCASE("rotated 4-QAM set degenerates to single-LED signaling") {
    const auto a = make_alphabet(AlphabetFamily::Qam, 4);
    std::array<int, 4> covered{};
    for (const auto& p : a.points) {
      const Eigen::Vector4d x = qcm_pr_map(p, M_PI / 4);
      int active = -1;
      for (int j = 0; j < 4; ++j)
        if (std::abs(x(j)) > 1e-9) {
          CHECK(active == -1);  // exactly one LED on
          active = j;
          CHECK(x(j) == doctest::Approx(std::sqrt(2.0)));
        }
      REQUIRE(active >= 0);
      covered[active] += 1;
    }
    for (int j = 0; j < 4; ++j) CHECK(covered[j] == 1);  // all LEDs used
  }
}

TEST_CASE("dcm_map on the worked symbols") {
  const Eigen::Vector2d x = dcm_map({3.0, 3.0});
  CHECK(x(0) == doctest::Approx(3.0 * std::sqrt(2.0)));
  CHECK(x(1) == doctest::Approx(M_PI / 4));
  CHECK(dcm_map({1.0, 0.0}).isApprox(Eigen::Vector2d{1.0, 0.0}));
  const Eigen::Vector2d minus_one = dcm_map({-1.0, 0.0});
  CHECK(minus_one(0) == doctest::Approx(1.0));
  CHECK(minus_one(1) == doctest::Approx(M_PI));
}

TEST_CASE("smdcm_map block selection") {
  const Eigen::Vector4d b0 = smdcm_map({3.0, 3.0}, 0);
  CHECK(b0(0) == doctest::Approx(3.0 * std::sqrt(2.0)));
  CHECK(b0(1) == doctest::Approx(M_PI / 4));
  CHECK(b0(2) == 0.0);
  CHECK(b0(3) == 0.0);
  const Eigen::Vector4d b1 = smdcm_map({3.0, 3.0}, 1);
  CHECK(b1(0) == 0.0);
  CHECK(b1(1) == 0.0);
  CHECK(b1(2) == doctest::Approx(3.0 * std::sqrt(2.0)));
  CHECK(b1(3) == doctest::Approx(M_PI / 4));
  CHECK(smdcm_map({1.0, 0.0}, 0).isApprox(Eigen::Vector4d{1, 0, 0, 0}));
  CHECK_THROWS_AS(smdcm_map({1.0, 0.0}, 2), std::domain_error);
}

TEST_CASE("enumerate_signal_set") {
  SUBCASE("QCM 4-QAM: four vectors on the [1,0,1,0] pattern") {
    const auto set = enumerate_signal_set(Scheme::Qcm, make_alphabet("qam-4"));
    REQUIRE(set.size() == 4);
    CHECK(set.bits_per_use == 2);
    for (const auto& tx : set.vectors) {
      CHECK(tx.intensities.sum() == doctest::Approx(2.0));
      CHECK(tx.intensities.maxCoeff() == doctest::Approx(1.0));
    }
  }
  SUBCASE("SM-DCM 8-QAM: 16 vectors, eta = 4") {
    const auto set = enumerate_signal_set(Scheme::SmDcm, make_alphabet("qam-8"));
    CHECK(set.size() == 16);
    CHECK(set.bits_per_use == 4);
  }
  SUBCASE("DCM over PSK keeps a constant magnitude LED") {
    const auto set = enumerate_signal_set(Scheme::Dcm, make_alphabet("psk-8"));
    for (const auto& tx : set.vectors)
      CHECK(tx.intensities(0) == doctest::Approx(1.0));
  }
}

TEST_CASE("demap") {
  const auto set = enumerate_signal_set(Scheme::Qcm, make_alphabet("qam-16"));
  for (std::size_t k = 0; k < set.size(); ++k)
    CHECK(demap(k, set) == set.vectors[k].bits);
  CHECK_THROWS_AS(demap(set.size(), set), std::out_of_range);
}

TEST_CASE("mapper properties (sampled)") {
  for (const auto& result : {props::qcm_reconstruction_identity(500),
                             props::dcm_roundtrip(500), props::qcm_two_active(100),
                             props::signal_set_cardinality(200),
                             props::qcm_pr_quarter_turn(100)}) {
    INFO(result.name, ": ", result.detail);
    CHECK(result.passed);
  }
}
