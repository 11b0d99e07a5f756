#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "vlcm/alphabet.hpp"

namespace vlcm {

enum class Scheme { Qcm, QcmPr, Dcm, SmDcm };

std::string scheme_token(Scheme scheme);
Scheme parse_scheme(const std::string& token);

/// One LED intensity vector with its bit label.
struct TransmitVector {
  Eigen::VectorXd intensities;
  std::uint32_t bits = 0;
};

/// Enumerated transmit vectors of a scheme with bit labels.
struct SignalSet {
  std::vector<TransmitVector> vectors;
  Scheme scheme = Scheme::Qcm;
  double rotation_rad = 0.0;  // QCM-PR only
  unsigned bits_per_use = 0;  // eta

  std::size_t size() const { return vectors.size(); }
};

/// Quad-LED map: LED1/LED2 carry |Re s| (LED1 if Re s >= 0, else LED2),
/// LED3/LED4 carry |Im s| the same way.
Eigen::Vector4d qcm_map(std::complex<double> s);

/// QCM map of the rotated symbol e^{j theta} s.
Eigen::Vector4d qcm_pr_map(std::complex<double> s, double theta_rad);

/// Dual-LED map: [|s|, arg(s)] with the phase wrapped into [0, 2*pi).
Eigen::Vector2d dcm_map(std::complex<double> s);

/// DCM map placed on BLOCK 1 (LEDs 1-2) for index_bit 0, BLOCK 2 (LEDs 3-4)
/// for index_bit 1.
Eigen::Vector4d smdcm_map(std::complex<double> s, int index_bit);

/// All transmit vectors of a scheme over an alphabet.  Bit labels are the
/// alphabet labels; SM-DCM prepends the block index bit ([index | symbol]).
SignalSet enumerate_signal_set(Scheme scheme, const ComplexAlphabet& alphabet,
                               double rotation_rad = 0.0);

/// Stored bit label of a signal-set entry.  Throws std::out_of_range.
std::uint32_t demap(std::size_t vector_index, const SignalSet& set);

}  // namespace vlcm
