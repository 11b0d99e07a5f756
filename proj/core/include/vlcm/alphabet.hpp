#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace vlcm {

enum class AlphabetFamily { Bpsk, Psk, Qam };

/// Complex constellation with per-point bit labels.
///
/// Labels are stored as integers; bit i of a label is bit i of the binary
/// word written MSB-first in the documented [I bits | Q bits] order for QAM.
struct ComplexAlphabet {
  std::string name;  // "bpsk", "qam-16", "psk-8", ...
  std::vector<std::complex<double>> points;
  std::vector<std::uint32_t> labels;
  unsigned bits_per_symbol = 0;

  std::size_t size() const { return points.size(); }
};

/// Constellation factory.
///
/// bpsk       -> {+1, -1}, natural labels.
/// qam-M      -> square M-QAM on the odd-integer grid for even log2 M;
///               8-QAM rectangular (I in {+-1,+-3}, Q in {+-1});
///               32-QAM cross (6x6 odd-integer grid minus the 4 corners).
///               Gray labels per axis; the cross is labeled through the
///               folded 8x4 rectangle, so it is Gray except across folds.
/// psk-M      -> unit circle at angles 2*pi*k/M, reflected Gray labels.
///
/// Throws std::domain_error for unsupported sizes.
ComplexAlphabet make_alphabet(AlphabetFamily family, unsigned M);

/// Parses a modulation token such as "bpsk", "qam-16", "psk-8".
ComplexAlphabet make_alphabet(const std::string& token);

/// Index of the nearest constellation point (ties to the lowest index).
std::size_t slice_nearest(const ComplexAlphabet& alphabet,
                          std::complex<double> value);

/// Gray code of n.
inline std::uint32_t gray_encode(std::uint32_t n) { return n ^ (n >> 1); }

}  // namespace vlcm
