#include "vlcm/mapping.hpp"

#include <cmath>
#include <stdexcept>

namespace vlcm {

std::string scheme_token(Scheme scheme) {
  switch (scheme) {
    case Scheme::Qcm: return "qcm";
    case Scheme::QcmPr: return "qcm-pr";
    case Scheme::Dcm: return "dcm";
    case Scheme::SmDcm: return "sm-dcm";
  }
  return "?";
}

Scheme parse_scheme(const std::string& token) {
  if (token == "qcm") return Scheme::Qcm;
  if (token == "qcm-pr") return Scheme::QcmPr;
  if (token == "dcm") return Scheme::Dcm;
  if (token == "sm-dcm") return Scheme::SmDcm;
  throw std::domain_error("unknown scheme '" + token + "'");
}

Eigen::Vector4d qcm_map(std::complex<double> s) {
  const double re = s.real();
  const double im = s.imag();
  Eigen::Vector4d x = Eigen::Vector4d::Zero();
  if (re >= 0)
    x(0) = re;
  else
    x(1) = -re;
  if (im >= 0)
    x(2) = im;
  else
    x(3) = -im;
  return x;
}

Eigen::Vector4d qcm_pr_map(std::complex<double> s, double theta_rad) {
  return qcm_map(s * std::polar(1.0, theta_rad));
}

Eigen::Vector2d dcm_map(std::complex<double> s) {
  double phase = std::arg(s);  // (-pi, pi]
  if (phase < 0) phase += 2.0 * M_PI;
  return {std::abs(s), phase};
}

Eigen::Vector4d smdcm_map(std::complex<double> s, int index_bit) {
  if (index_bit != 0 && index_bit != 1)
    throw std::domain_error("index bit must be 0 or 1");
  const Eigen::Vector2d pair = dcm_map(s);
  Eigen::Vector4d x = Eigen::Vector4d::Zero();
  x.segment<2>(index_bit == 0 ? 0 : 2) = pair;
  return x;
}

SignalSet enumerate_signal_set(Scheme scheme, const ComplexAlphabet& alphabet,
                               double rotation_rad) {
  if (alphabet.points.empty()) throw std::domain_error("empty alphabet");
  SignalSet set;
  set.scheme = scheme;
  set.rotation_rad = scheme == Scheme::QcmPr ? rotation_rad : 0.0;

  switch (scheme) {
    case Scheme::Qcm:
    case Scheme::QcmPr: {
      set.bits_per_use = alphabet.bits_per_symbol;
      for (std::size_t k = 0; k < alphabet.size(); ++k) {
        TransmitVector tx;
        tx.intensities = qcm_pr_map(alphabet.points[k], set.rotation_rad);
        tx.bits = alphabet.labels[k];
        set.vectors.push_back(std::move(tx));
      }
      break;
    }
    case Scheme::Dcm: {
      set.bits_per_use = alphabet.bits_per_symbol;
      for (std::size_t k = 0; k < alphabet.size(); ++k) {
        TransmitVector tx;
        tx.intensities = dcm_map(alphabet.points[k]);
        tx.bits = alphabet.labels[k];
        set.vectors.push_back(std::move(tx));
      }
      break;
    }
    case Scheme::SmDcm: {
      set.bits_per_use = alphabet.bits_per_symbol + 1;
      for (int block = 0; block < 2; ++block) {
        for (std::size_t k = 0; k < alphabet.size(); ++k) {
          TransmitVector tx;
          tx.intensities = smdcm_map(alphabet.points[k], block);
          tx.bits = (static_cast<std::uint32_t>(block) << alphabet.bits_per_symbol) |
                    alphabet.labels[k];
          set.vectors.push_back(std::move(tx));
        }
      }
      break;
    }
  }
  return set;
}

std::uint32_t demap(std::size_t vector_index, const SignalSet& set) {
  if (vector_index >= set.vectors.size())
    throw std::out_of_range("signal-set index out of range");
  return set.vectors[vector_index].bits;
}

}  // namespace vlcm
