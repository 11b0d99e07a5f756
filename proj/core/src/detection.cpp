#include "vlcm/detection.hpp"

#include <stdexcept>

namespace vlcm {

MlResult ml_detect(const ReceivedVector& y, const ChannelMatrix& H,
                   const SignalSet& set) {
  if (set.vectors.empty()) throw std::domain_error("signal set is empty");
  const double a = H.responsivity_a;
  std::size_t best = 0;
  double best_metric = (y - a * (H.entries * set.vectors[0].intensities)).squaredNorm();
  for (std::size_t k = 1; k < set.vectors.size(); ++k) {
    const double metric =
        (y - a * (H.entries * set.vectors[k].intensities)).squaredNorm();
    if (metric < best_metric) {
      best_metric = metric;
      best = k;
    }
  }
  return {best, set.vectors[best].bits};
}

ReceivedVector awgn_channel(const Eigen::VectorXd& x, const ChannelMatrix& H,
                            double sigma, RngStream& rng) {
  if (sigma < 0) throw std::domain_error("sigma must be nonnegative");
  ReceivedVector y = H.responsivity_a * (H.entries * x);
  for (Eigen::Index i = 0; i < y.size(); ++i) y(i) += sigma * rng.next_gaussian();
  return y;
}

MlDetector::MlDetector(const ChannelMatrix& H, const SignalSet& set) {
  if (set.vectors.empty()) throw std::domain_error("signal set is empty");
  const auto L = static_cast<Eigen::Index>(set.vectors.size());
  images_.resize(H.entries.rows(), L);
  image_norms_.resize(L);
  bits_.reserve(set.vectors.size());
  for (Eigen::Index k = 0; k < L; ++k) {
    images_.col(k) = H.responsivity_a * (H.entries * set.vectors[k].intensities);
    image_norms_(k) = images_.col(k).squaredNorm();
    bits_.push_back(set.vectors[k].bits);
  }
}

MlResult MlDetector::detect(const ReceivedVector& y) const {
  // argmin ||y - c_k||^2 = argmin (||c_k||^2 - 2 y.c_k); ties to lowest k
  const Eigen::VectorXd scores = image_norms_ - 2.0 * (images_.transpose() * y);
  std::size_t best = 0;
  double best_score = scores(0);
  for (Eigen::Index k = 1; k < scores.size(); ++k) {
    if (scores(k) < best_score) {
      best_score = scores(k);
      best = static_cast<std::size_t>(k);
    }
  }
  return {best, bits_[best]};
}

}  // namespace vlcm
