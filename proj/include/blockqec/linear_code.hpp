#pragma once

#include <string>

#include "blockqec/bitvec.hpp"
#include "blockqec/gf2mat.hpp"
#include "blockqec/gf2poly.hpp"

namespace blockqec {

// Binary linear [n,k] code. For cyclic codes G rows are shifts of the
// generator polynomial and H rows are shifts of the reciprocal check
// polynomial, so G H^T = 0 by construction.
struct LinearCode {
  size_t n = 0;
  size_t k = 0;
  size_t claimed_d = 0;
  Gf2Poly generator_poly;  // zero when the code is not cyclic
  Gf2Matrix G;             // k x n
  Gf2Matrix H;             // (n-k) x n
  std::string name;
};

// Requires genpoly | X^n + 1; throws otherwise.
LinearCode cyclic_code(const Gf2Poly& genpoly, size_t n, std::string name = "");

// The four block codes used throughout, with their generator polynomials.
LinearCode golay_code();   // [23,12,7]
LinearCode bch89_code();   // [89,56,9]
LinearCode bch127_code();  // [127,92,11]
LinearCode bch255_code();  // [255,199,15]

BitVec syndrome(const LinearCode& code, const BitVec& word);  // H * word

struct DecodeOutcome {
  enum class Status { kCorrected, kDetectedUncorrectable };
  Status status = Status::kDetectedUncorrectable;
  BitVec error_estimate;
  bool corrected() const { return status == Status::kCorrected; }
};

// Oracle: minimum-weight error of weight <= wmax with the given syndrome,
// ties broken by lexicographic position order. Enumerates sum_{w<=wmax}
// C(n,w) patterns, so keep wmax small.
DecodeOutcome brute_force_decode(const LinearCode& code, const BitVec& s, size_t wmax);

struct DistanceReport {
  size_t value = 0;
  bool exact = false;
  std::string method;
};

// Exact by codeword enumeration when 2^k fits the budget; otherwise a proven
// lower bound from the consecutive-root (BCH) argument for cyclic codes.
// Throws when neither route is available.
DistanceReport min_distance(const LinearCode& code, uint64_t budget = uint64_t(1) << 22);

// True iff the dual code is contained in the code, i.e. H H^T = 0.
bool selfdual_containment(const LinearCode& code);

// One-line text format: "n k genpoly_hex name".
std::string code_to_text(const LinearCode& code);
LinearCode code_from_text(const std::string& text);

}  // namespace blockqec
