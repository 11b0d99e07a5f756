#include "vlcm/ofdm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vlcm/rng.hpp"

namespace vlcm {

namespace {

bool is_power_of_two(unsigned v) { return v >= 1 && (v & (v - 1)) == 0; }

// Columns of the unitary DFT matrix; F forward (demodulate), F^H inverse.
Eigen::MatrixXcd dft_matrix(unsigned n) {
  Eigen::MatrixXcd F(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (unsigned k = 0; k < n; ++k)
    for (unsigned m = 0; m < n; ++m)
      F(k, m) = std::polar(scale, -2.0 * M_PI * double(k) * double(m) / n);
  return F;
}

// Relative 2x2 normal-equation singularity threshold; columns closer to
// parallel than this are treated as rank deficient.
constexpr double kRankTol = 1e-12;

struct PairSolver {
  bool singular = true;
  Eigen::Matrix<double, 2, Eigen::Dynamic> op;  // (G^T G)^{-1} G^T
};

PairSolver make_pair_solver(const Eigen::MatrixXd& H, int j1, int j2) {
  Eigen::MatrixXd G(H.rows(), 2);
  G.col(0) = H.col(j1);
  G.col(1) = H.col(j2);
  const Eigen::Matrix2d M = G.transpose() * G;
  const double det = M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
  PairSolver solver;
  if (det <= kRankTol * M(0, 0) * M(1, 1)) return solver;  // singular
  Eigen::Matrix2d inv;
  inv << M(1, 1), -M(0, 1), -M(1, 0), M(0, 0);
  solver.op = (inv / det) * G.transpose();
  solver.singular = false;
  return solver;
}

std::vector<std::size_t> slice_all(const Eigen::VectorXcd& v,
                                   const ComplexAlphabet& alphabet) {
  std::vector<std::size_t> out(static_cast<std::size_t>(v.size()));
  for (Eigen::Index n = 0; n < v.size(); ++n)
    out[static_cast<std::size_t>(n)] = slice_nearest(alphabet, v(n));
  return out;
}

}  // namespace

void OfdmConfig::validate() const {
  if (!is_power_of_two(n_subcarriers))
    throw std::domain_error("subcarrier count must be a power of 2");
  if (alphabet.points.empty()) throw std::domain_error("empty alphabet");
}

Eigen::VectorXcd ofdm_modulate(const Eigen::VectorXcd& v) {
  return dft_matrix(static_cast<unsigned>(v.size())).adjoint() * v;
}

Eigen::VectorXcd ofdm_demodulate(const Eigen::VectorXcd& s) {
  return dft_matrix(static_cast<unsigned>(s.size())) * s;
}

Eigen::MatrixXd qcm_ofdm_transmit(const Eigen::VectorXcd& v) {
  const Eigen::VectorXcd s = ofdm_modulate(v);
  Eigen::MatrixXd X(4, s.size());
  for (Eigen::Index n = 0; n < s.size(); ++n) X.col(n) = qcm_map(s(n));
  return X;
}

Eigen::MatrixXd dcm_ofdm_transmit(const Eigen::VectorXcd& v) {
  const Eigen::VectorXcd s = ofdm_modulate(v);
  Eigen::MatrixXd X(2, s.size());
  for (Eigen::Index n = 0; n < s.size(); ++n) X.col(n) = dcm_map(s(n));
  return X;
}

std::pair<int, int> identify_active_leds(const ReceivedVector& y,
                                         const ChannelMatrix& H) {
  const auto n_tx = H.entries.cols();
  Eigen::VectorXd metric(n_tx);
  for (Eigen::Index j = 0; j < n_tx; ++j) {
    const double norm2 = H.entries.col(j).squaredNorm();
    if (norm2 <= 0) throw std::domain_error("channel matrix has a zero column");
    metric(j) = std::abs(H.entries.col(j).dot(y) / norm2);
  }
  int first = 0;
  for (Eigen::Index j = 1; j < n_tx; ++j)
    if (metric(j) > metric(first)) first = static_cast<int>(j);
  int second = first == 0 ? 1 : 0;
  for (Eigen::Index j = 0; j < n_tx; ++j) {
    if (static_cast<int>(j) == first) continue;
    if (metric(j) > metric(second)) second = static_cast<int>(j);
  }
  return {first, second};
}

namespace {

// structured variant: best LED of {1,2} and best of {3,4} by |z|
std::pair<int, int> identify_active_leds_structured(const ReceivedVector& y,
                                                    const ChannelMatrix& H) {
  std::array<double, 4> metric{};
  for (int j = 0; j < 4; ++j) {
    const double norm2 = H.entries.col(j).squaredNorm();
    if (norm2 <= 0) throw std::domain_error("channel matrix has a zero column");
    metric[j] = std::abs(H.entries.col(j).dot(y) / norm2);
  }
  const int real_led = metric[1] > metric[0] ? 1 : 0;
  const int imag_led = metric[3] > metric[2] ? 3 : 2;
  return metric[real_led] >= metric[imag_led] ? std::pair{real_led, imag_led}
                                              : std::pair{imag_led, real_led};
}

}  // namespace

std::vector<std::size_t> qcm_ofdm_zf_detect(const Eigen::MatrixXd& Y,
                                            const ChannelMatrix& H,
                                            const ComplexAlphabet& alphabet,
                                            bool structured) {
  const Eigen::Index n_uses = Y.cols();
  const double a = H.responsivity_a;
  // solvers for the 6 unordered column pairs, indexed j1 * 4 + j2
  std::array<PairSolver, 16> solvers;
  for (int j1 = 0; j1 < 4; ++j1)
    for (int j2 = j1 + 1; j2 < 4; ++j2)
      solvers[j1 * 4 + j2] = make_pair_solver(H.entries, j1, j2);

  Eigen::VectorXcd s_hat(n_uses);
  for (Eigen::Index i = 0; i < n_uses; ++i) {
    const auto [i1, i2] = structured ? identify_active_leds_structured(Y.col(i), H)
                                     : identify_active_leds(Y.col(i), H);
    const int lo = std::min(i1, i2);
    const int hi = std::max(i1, i2);
    const PairSolver& solver = solvers[lo * 4 + hi];
    if (solver.singular) {
      s_hat(i) = 0.0;  // erased channel use
      continue;
    }
    const Eigen::Vector2d u = (solver.op * Y.col(i)) / a;
    // intensity estimates are magnitudes; the LED index carries the sign
    Eigen::Vector4d x = Eigen::Vector4d::Zero();
    x(lo) = std::abs(u(0));
    x(hi) = std::abs(u(1));
    s_hat(i) = std::complex<double>(x(0) - x(1), x(2) - x(3));
  }
  return slice_all(ofdm_demodulate(s_hat), alphabet);
}

std::vector<std::size_t> dcm_ofdm_zf_detect(const Eigen::MatrixXd& Y,
                                            const ChannelMatrix& H,
                                            const ComplexAlphabet& alphabet) {
  if (H.entries.cols() != 2) throw std::domain_error("DCM channel must have 2 columns");
  const PairSolver solver = make_pair_solver(H.entries, 0, 1);
  if (solver.singular) throw std::domain_error("channel matrix is rank deficient");

  const Eigen::MatrixXd X_hat = (solver.op * Y) / H.responsivity_a;
  Eigen::VectorXcd s_hat(Y.cols());
  for (Eigen::Index i = 0; i < Y.cols(); ++i) {
    const double magnitude = std::max(X_hat(0, i), 0.0);
    double phase = std::fmod(X_hat(1, i), 2.0 * M_PI);
    if (phase < 0) phase += 2.0 * M_PI;
    s_hat(i) = std::polar(magnitude, phase);
  }
  return slice_all(ofdm_demodulate(s_hat), alphabet);
}

MdDetector::MdDetector(const ChannelMatrix& H, const OfdmConfig& config,
                       std::size_t max_candidates) {
  config.validate();
  n_ = config.n_subcarriers;
  m_ = static_cast<unsigned>(config.alphabet.size());

  double size_check = 1.0;
  for (unsigned i = 0; i < n_; ++i) size_check *= m_;
  if (size_check > static_cast<double>(max_candidates))
    throw std::length_error("MD candidate space exceeds the configured bound");
  count_ = 1;
  for (unsigned i = 0; i < n_; ++i) count_ *= m_;

  const auto n_rx = static_cast<int>(H.entries.rows());
  rows_ = n_rx * static_cast<int>(n_);
  images_d_.resize(rows_, static_cast<Eigen::Index>(count_));
  const Eigen::MatrixXcd idft = dft_matrix(n_).adjoint();
  const Eigen::MatrixXd aH = H.responsivity_a * H.entries;
  const bool quad = config.scheme == OfdmScheme::QcmOfdm;

  Eigen::VectorXcd v(n_), s(n_);
  for (std::size_t k = 0; k < count_; ++k) {
    std::size_t rem = k;
    for (unsigned n = n_; n-- > 0;) {  // subcarrier 0 is the most significant digit
      v(n) = config.alphabet.points[rem % m_];
      rem /= m_;
    }
    s = idft * v;
    for (unsigned n = 0; n < n_; ++n) {
      const Eigen::VectorXd x = quad ? Eigen::VectorXd(qcm_map(s(n)))
                                     : Eigen::VectorXd(dcm_map(s(n)));
      images_d_.col(static_cast<Eigen::Index>(k)).segment(n * n_rx, n_rx) = aH * x;
    }
  }
  images_f_ = images_d_.cast<float>();
  norms_f_ = images_f_.colwise().squaredNorm();
}

namespace {

// Number of float-scored candidates re-checked in double precision.
constexpr int kRefine = 32;

}  // namespace

std::vector<std::size_t> MdDetector::detect_flat(const Eigen::MatrixXd& Ys) const {
  if (Ys.rows() != rows_) throw std::invalid_argument("flattened frame size mismatch");
  const Eigen::Index n_frames = Ys.cols();
  // scores_k = ||c_k||^2 - 2 c_k.y  (the ||y||^2 term is common to all k)
  const Eigen::MatrixXf ys_f = Ys.cast<float>();
  const Eigen::MatrixXf dots = images_f_.transpose() * ys_f;  // count x B

  std::vector<std::size_t> result(static_cast<std::size_t>(n_frames));
  const int keep = std::min<std::size_t>(kRefine, count_);
  std::vector<std::pair<float, std::size_t>> top(keep);
  for (Eigen::Index b = 0; b < n_frames; ++b) {
    // single pass keeping the `keep` smallest float scores
    int filled = 0;
    float worst = std::numeric_limits<float>::infinity();
    for (std::size_t k = 0; k < count_; ++k) {
      const float score =
          norms_f_(static_cast<Eigen::Index>(k)) - 2.0f * dots(static_cast<Eigen::Index>(k), b);
      if (filled < keep) {
        top[filled++] = {score, k};
        if (filled == keep) {
          std::sort(top.begin(), top.end());
          worst = top.back().first;
        }
        continue;
      }
      if (score >= worst) continue;
      // insert in sorted position, dropping the current worst
      int pos = keep - 1;
      while (pos > 0 && top[pos - 1].first > score) {
        top[pos] = top[pos - 1];
        --pos;
      }
      top[pos] = {score, k};
      worst = top.back().first;
    }
    if (filled < keep) std::sort(top.begin(), top.begin() + filled);

    // exact double-precision re-scoring of the shortlist; scanning candidate
    // indices in ascending order keeps the lowest-index tie-break
    std::vector<std::size_t> shortlist;
    shortlist.reserve(filled);
    for (int t = 0; t < filled; ++t) shortlist.push_back(top[t].second);
    std::sort(shortlist.begin(), shortlist.end());

    const Eigen::VectorXd yd = Ys.col(b);
    std::size_t best = shortlist.front();
    double best_r = (yd - images_d_.col(static_cast<Eigen::Index>(best))).squaredNorm();
    for (std::size_t t = 1; t < shortlist.size(); ++t) {
      const std::size_t k = shortlist[t];
      const double r = (yd - images_d_.col(static_cast<Eigen::Index>(k))).squaredNorm();
      if (r < best_r) {
        best_r = r;
        best = k;
      }
    }
    result[static_cast<std::size_t>(b)] = best;
  }
  return result;
}

std::vector<std::size_t> MdDetector::detect(const Eigen::MatrixXd& Y) const {
  if (Y.size() != rows_) throw std::invalid_argument("frame size mismatch");
  Eigen::MatrixXd flat(rows_, 1);
  flat.col(0) = Eigen::Map<const Eigen::VectorXd>(Y.data(), Y.size());
  const std::size_t candidate = detect_flat(flat)[0];
  return candidate_symbols(candidate);
}

double MdDetector::residual(const Eigen::MatrixXd& Y, std::size_t candidate) const {
  if (candidate >= count_) throw std::out_of_range("candidate out of range");
  const Eigen::Map<const Eigen::VectorXd> yd(Y.data(), Y.size());
  return (yd - images_d_.col(static_cast<Eigen::Index>(candidate))).squaredNorm();
}

std::vector<std::size_t> MdDetector::candidate_symbols(std::size_t candidate) const {
  if (candidate >= count_) throw std::out_of_range("candidate out of range");
  std::vector<std::size_t> symbols(n_);
  for (unsigned n = n_; n-- > 0;) {
    symbols[n] = candidate % m_;
    candidate /= m_;
  }
  return symbols;
}

std::vector<std::size_t> md_detect(const Eigen::MatrixXd& Y,
                                   const ChannelMatrix& H,
                                   const OfdmConfig& config) {
  return MdDetector(H, config).detect(Y);
}

double ofdm_mean_square_received_power(const ChannelMatrix& H,
                                       const OfdmConfig& config) {
  config.validate();
  const unsigned n = config.n_subcarriers;
  const auto m = config.alphabet.size();
  const auto n_rx = H.entries.rows();
  const Eigen::MatrixXcd idft = dft_matrix(n).adjoint();
  const bool quad = config.scheme == OfdmScheme::QcmOfdm;

  double frames = 1.0;
  for (unsigned i = 0; i < n; ++i) frames *= static_cast<double>(m);

  double acc = 0.0;
  double frame_count = 0.0;
  Eigen::VectorXcd v(n);
  const auto accumulate_frame = [&](const Eigen::VectorXcd& sym) {
    const Eigen::VectorXcd s = idft * sym;
    for (unsigned k = 0; k < n; ++k) {
      const Eigen::VectorXd x =
          quad ? Eigen::VectorXd(qcm_map(s(k))) : Eigen::VectorXd(dcm_map(s(k)));
      acc += (H.entries * x).squaredNorm();
    }
    frame_count += 1.0;
  };

  if (frames <= static_cast<double>(MdDetector::kMaxCandidates)) {
    // exact: enumerate every frame
    const auto count = static_cast<std::size_t>(frames);
    for (std::size_t f = 0; f < count; ++f) {
      std::size_t rem = f;
      for (unsigned k = n; k-- > 0;) {
        v(k) = config.alphabet.points[rem % m];
        rem /= m;
      }
      accumulate_frame(v);
    }
  } else {
    // candidate space too large to enumerate: fixed-stream Monte Carlo
    RngStream rng(0x0fd3'57a7'5eedULL);
    const unsigned bits = [m] {
      unsigned b = 0;
      for (std::size_t size = 1; size < m; size <<= 1) ++b;
      return b;
    }();
    for (int f = 0; f < (1 << 16); ++f) {
      for (unsigned k = 0; k < n; ++k) v(k) = config.alphabet.points[rng.next_bits(bits)];
      accumulate_frame(v);
    }
  }
  return acc / (frame_count * static_cast<double>(n) * static_cast<double>(n_rx));
}

}  // namespace vlcm
