#pragma once

#include <complex>

#include "blockqec/css.hpp"

namespace blockqec {

// The [[15,1,3]] code built from the first-order length-16 Reed-Muller code:
// delete the leading bit of RM(1,4) to get the [15,5,7] code C', whose even
// subcode C0' is [15,4,8]. X stabilizers are the four even generators; Z
// stabilizers add the six pairwise products, so the check matrix is
// asymmetric: Z-distance 3, X-distance 7.
struct Rm15Code {
  CssCode css;
  LinearCode c_prime;   // [15,5,7]
  LinearCode c0_prime;  // [15,4,8], all weights divisible by 8
};

Rm15Code build_rm15();

// State-vector check that the transversal conjugate pi/8 gate acts as the
// logical T gate: it multiplies |x>_L by e^{-i 7 x pi / 4}.
struct TransversalTReport {
  std::complex<double> phase0;
  std::complex<double> phase1;
  double superposition_error;  // max amplitude deviation on (|0>_L+|1>_L)/sqrt(2)
  bool matches_expected;
};
TransversalTReport verify_transversal_t(const Rm15Code& code);

// Self-concatenation: [[15^l, 1, 3^l]] with X-distance 7^l. Level 0 is the
// trivial identity code. Levels above 3 are unsupported.
ConcatSpec rm_concat(size_t levels);

}  // namespace blockqec
