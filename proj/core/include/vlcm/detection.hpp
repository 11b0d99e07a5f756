#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "vlcm/geometry.hpp"
#include "vlcm/mapping.hpp"
#include "vlcm/rng.hpp"

namespace vlcm {

using ReceivedVector = Eigen::VectorXd;

struct MlResult {
  std::size_t index = 0;
  std::uint32_t bits = 0;
};

/// Exhaustive ML detection: argmin over the signal set of ||y - a H x||^2,
/// ties broken by the lowest signal-set index.  Throws on an empty set.
MlResult ml_detect(const ReceivedVector& y, const ChannelMatrix& H,
                   const SignalSet& set);

/// y = a H x + n with n ~ N(0, sigma^2 I), one Gaussian per receive branch.
ReceivedVector awgn_channel(const Eigen::VectorXd& x, const ChannelMatrix& H,
                            double sigma, RngStream& rng);

/// ML detector with precomputed candidate images for repeated use.  Scores
/// are evaluated in the expanded form ||c_k||^2 - 2 y.c_k, which makes each
/// detection a single small mat-vec against the image table.
class MlDetector {
 public:
  MlDetector(const ChannelMatrix& H, const SignalSet& set);

  MlResult detect(const ReceivedVector& y) const;
  const Eigen::MatrixXd& images() const { return images_; }
  std::size_t size() const { return static_cast<std::size_t>(images_.cols()); }

 private:
  Eigen::MatrixXd images_;       // N_r x L, column k = a H x_k
  Eigen::VectorXd image_norms_;  // ||a H x_k||^2
  std::vector<std::uint32_t> bits_;
};

}  // namespace vlcm
