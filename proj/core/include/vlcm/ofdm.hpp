#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "vlcm/alphabet.hpp"
#include "vlcm/detection.hpp"
#include "vlcm/geometry.hpp"

namespace vlcm {

enum class OfdmScheme { QcmOfdm, DcmOfdm };
enum class OfdmDetector { Zf, Md };

struct OfdmConfig {
  unsigned n_subcarriers = 8;  // power of 2
  ComplexAlphabet alphabet;
  OfdmScheme scheme = OfdmScheme::QcmOfdm;

  void validate() const;
};

/// Unitary inverse DFT, s = F^H v (1/sqrt(N) normalization both ways).
Eigen::VectorXcd ofdm_modulate(const Eigen::VectorXcd& v);

/// Unitary forward DFT, v = F s.
Eigen::VectorXcd ofdm_demodulate(const Eigen::VectorXcd& s);

/// Column n = qcm_map(s_n) with s = F^H v.  v must hold alphabet symbols.
Eigen::MatrixXd qcm_ofdm_transmit(const Eigen::VectorXcd& v);

/// Column n = dcm_map(s_n) with s = F^H v.
Eigen::MatrixXd dcm_ofdm_transmit(const Eigen::VectorXcd& v);

/// Matched-filter activity metric per LED, z_j = h_j.y / (h_j.h_j); returns
/// the indices (0-based) of the two largest |z_j|, ties to the lowest index.
/// Throws std::domain_error if H has a zero column.
std::pair<int, int> identify_active_leds(const ReceivedVector& y,
                                         const ChannelMatrix& H);

/// Per-channel-use QCM-OFDM detection: identify the two active LEDs, solve
/// the 2-unknown least squares on those columns scaled by 1/a, reassemble
/// the complex estimate with signs given by which LED of each pair was
/// identified, then FFT and slice each subcarrier.  A singular identified
/// pair yields an erased (zero) symbol estimate for that channel use.
/// Returns alphabet indices per subcarrier.
///
/// The default identification ranks all four LEDs jointly; `structured`
/// instead picks the best LED of each of the pairs {1,2} and {3,4}, which
/// matches the transmit-side activity constraint.
std::vector<std::size_t> qcm_ofdm_zf_detect(const Eigen::MatrixXd& Y,
                                            const ChannelMatrix& H,
                                            const ComplexAlphabet& alphabet,
                                            bool structured = false);

/// DCM-OFDM zero forcing: X_hat = (1/a) (H^T H)^{-1} H^T Y, magnitudes
/// clamped to >= 0 and phases wrapped into [0, 2*pi), then FFT and slice.
/// Throws std::domain_error when H is rank deficient.
std::vector<std::size_t> dcm_ofdm_zf_detect(const Eigen::MatrixXd& Y,
                                            const ChannelMatrix& H,
                                            const ComplexAlphabet& alphabet);

/// Exhaustive minimum-distance frame detector,
///   argmin over all candidate frames of ||Y - a H X||_F,
/// ties broken by the lowest candidate index.  Candidate index digits are
/// the per-subcarrier alphabet indices, subcarrier 0 most significant.
///
/// Candidate images are precomputed once.  Scoring runs in single precision
/// against the whole table and the best few candidates are re-scored in
/// double precision, so the result equals the exact double-precision argmin.
class MdDetector {
 public:
  static constexpr std::size_t kMaxCandidates = std::size_t{1} << 20;

  /// Throws std::length_error when |A|^N exceeds max_candidates.
  MdDetector(const ChannelMatrix& H, const OfdmConfig& config,
             std::size_t max_candidates = kMaxCandidates);

  /// Detects one frame; returns alphabet indices per subcarrier.
  std::vector<std::size_t> detect(const Eigen::MatrixXd& Y) const;

  /// Batched detection; column b of Ys is frame b flattened column-major.
  /// Returns one candidate index per frame.
  std::vector<std::size_t> detect_flat(const Eigen::MatrixXd& Ys) const;

  std::size_t candidate_count() const { return count_; }
  unsigned n_subcarriers() const { return n_; }

  /// ||Y - a H X_k||_F^2 in double precision, for optimality checks.
  double residual(const Eigen::MatrixXd& Y, std::size_t candidate) const;

  /// Per-subcarrier alphabet indices of a candidate.
  std::vector<std::size_t> candidate_symbols(std::size_t candidate) const;

 private:
  std::size_t count_ = 0;
  unsigned n_ = 0;
  unsigned m_ = 0;          // alphabet size
  int rows_ = 0;            // N_r * N (flattened image length)
  Eigen::MatrixXf images_f_;     // rows_ x count_
  Eigen::VectorXf norms_f_;      // ||image_k||^2
  Eigen::MatrixXd images_d_;     // exact copies for re-scoring
};

/// One-shot MD detection (builds the candidate table, then detects).
std::vector<std::size_t> md_detect(const Eigen::MatrixXd& Y,
                                   const ChannelMatrix& H,
                                   const OfdmConfig& config);

/// Mean-square received signal term per branch and channel use over the
/// uniform frame ensemble (the OFDM analogue of mean_square_received_power).
/// Exact by enumeration when the frame space is small enough, otherwise a
/// fixed-stream Monte Carlo average.
double ofdm_mean_square_received_power(const ChannelMatrix& H,
                                       const OfdmConfig& config);

}  // namespace vlcm
