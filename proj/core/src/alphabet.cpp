#include "vlcm/alphabet.hpp"

#include <cmath>
#include <stdexcept>

namespace vlcm {

namespace {

bool is_power_of_two(unsigned v) { return v >= 2 && (v & (v - 1)) == 0; }

unsigned int_log2(unsigned v) {
  unsigned bits = 0;
  while (v > 1) {
    v >>= 1;
    ++bits;
  }
  return bits;
}

ComplexAlphabet make_bpsk() {
  ComplexAlphabet a;
  a.name = "bpsk";
  a.points = {{1.0, 0.0}, {-1.0, 0.0}};
  a.labels = {0, 1};
  a.bits_per_symbol = 1;
  return a;
}

ComplexAlphabet make_psk(unsigned M) {
  ComplexAlphabet a;
  a.name = "psk-" + std::to_string(M);
  a.bits_per_symbol = int_log2(M);
  a.points.reserve(M);
  a.labels.reserve(M);
  for (unsigned k = 0; k < M; ++k) {
    const double angle = 2.0 * M_PI * k / M;
    a.points.emplace_back(std::cos(angle), std::sin(angle));
    a.labels.push_back(gray_encode(k));
  }
  return a;
}

// Square QAM on the odd-integer grid, Gray labeled per axis, label word
// [I bits | Q bits] with level indices counted from the most negative level.
ComplexAlphabet make_square_qam(unsigned M) {
  const unsigned bits = int_log2(M);
  const unsigned side = 1u << (bits / 2);
  ComplexAlphabet a;
  a.name = "qam-" + std::to_string(M);
  a.bits_per_symbol = bits;
  const unsigned q_bits = bits / 2;
  for (unsigned ii = 0; ii < side; ++ii) {
    const double re = 2.0 * ii - side + 1.0;
    for (unsigned qi = 0; qi < side; ++qi) {
      const double im = 2.0 * qi - side + 1.0;
      a.points.emplace_back(re, im);
      a.labels.push_back((gray_encode(ii) << q_bits) | gray_encode(qi));
    }
  }
  return a;
}

// Rectangular 8-QAM: I in {+-1, +-3} (2 Gray bits), Q in {+-1} (1 bit).
ComplexAlphabet make_qam8() {
  ComplexAlphabet a;
  a.name = "qam-8";
  a.bits_per_symbol = 3;
  for (unsigned ii = 0; ii < 4; ++ii) {
    const double re = 2.0 * ii - 3.0;
    for (unsigned qi = 0; qi < 2; ++qi) {
      const double im = 2.0 * qi - 1.0;
      a.points.emplace_back(re, im);
      a.labels.push_back((gray_encode(ii) << 1) | qi);
    }
  }
  return a;
}

// Cross 32-QAM: Gray-labeled 8x4 rectangle (I in {+-1..+-7}, Q in {+-1,+-3})
// with the outer |I| = 7 columns folded onto the |Q| = 5 extension rows:
//   (I, Q) with |I| = 7  ->  (sign(I) (4 - |Q|), sign(Q) 5).
// The result is the 6x6 odd-integer grid minus its four corners.
ComplexAlphabet make_qam32() {
  ComplexAlphabet a;
  a.name = "qam-32";
  a.bits_per_symbol = 5;
  for (unsigned ii = 0; ii < 8; ++ii) {
    const double rect_re = 2.0 * ii - 7.0;
    for (unsigned qi = 0; qi < 4; ++qi) {
      const double rect_im = 2.0 * qi - 3.0;
      double re = rect_re;
      double im = rect_im;
      if (std::abs(rect_re) > 5.0) {
        const double si = rect_re > 0 ? 1.0 : -1.0;
        const double sq = rect_im > 0 ? 1.0 : -1.0;
        re = si * (4.0 - std::abs(rect_im));
        im = sq * 5.0;
      }
      a.points.emplace_back(re, im);
      a.labels.push_back((gray_encode(ii) << 2) | gray_encode(qi));
    }
  }
  return a;
}

}  // namespace

ComplexAlphabet make_alphabet(AlphabetFamily family, unsigned M) {
  if (!is_power_of_two(M)) throw std::domain_error("alphabet size must be a power of 2");
  switch (family) {
    case AlphabetFamily::Bpsk:
      if (M != 2) throw std::domain_error("BPSK has exactly 2 points");
      return make_bpsk();
    case AlphabetFamily::Psk:
      return make_psk(M);
    case AlphabetFamily::Qam:
      if (M == 2) return make_bpsk();  // 2-QAM degenerates to BPSK
      if (M == 8) return make_qam8();
      if (M == 32) return make_qam32();
      if (int_log2(M) % 2 == 0) return make_square_qam(M);
      throw std::domain_error("unsupported non-square QAM size");
  }
  throw std::domain_error("unknown alphabet family");
}

ComplexAlphabet make_alphabet(const std::string& token) {
  if (token == "bpsk") return make_alphabet(AlphabetFamily::Bpsk, 2);
  const auto dash = token.find('-');
  if (dash != std::string::npos) {
    const std::string family = token.substr(0, dash);
    const std::string size = token.substr(dash + 1);
    unsigned M = 0;
    try {
      M = static_cast<unsigned>(std::stoul(size));
    } catch (const std::exception&) {
      throw std::domain_error("bad modulation size in '" + token + "'");
    }
    if (family == "qam") return make_alphabet(AlphabetFamily::Qam, M);
    if (family == "psk") return make_alphabet(AlphabetFamily::Psk, M);
  }
  throw std::domain_error("unknown modulation '" + token + "'");
}

std::size_t slice_nearest(const ComplexAlphabet& alphabet,
                          std::complex<double> value) {
  if (alphabet.points.empty()) throw std::domain_error("empty alphabet");
  std::size_t best = 0;
  double best_d2 = std::norm(value - alphabet.points[0]);
  for (std::size_t k = 1; k < alphabet.points.size(); ++k) {
    const double d2 = std::norm(value - alphabet.points[k]);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = k;
    }
  }
  return best;
}

}  // namespace vlcm
