#pragma once

#include <vector>

#include "blockqec/linear_code.hpp"

namespace blockqec {

// Error-trapping decoder for the [23,12,7] code. The code is perfect, so
// every 11-bit syndrome maps to a unique error of weight <= 3 and decoding
// never reports failure. decode() goes through a 2048-entry table built once
// by running the trapping procedure on every syndrome; decode_trapping() is
// the table-free path.
class GolayDecoder {
 public:
  GolayDecoder();

  const LinearCode& code() const { return code_; }

  DecodeOutcome decode(const BitVec& s) const;
  DecodeOutcome decode_trapping(const BitVec& s) const;

  // Syndrome packed as an 11-bit integer, bit i = H row i parity.
  uint32_t pack_syndrome(const BitVec& s) const;

 private:
  BitVec trap(uint32_t r) const;  // polynomial-remainder trapping core

  LinearCode code_;
  uint32_t g_bits_ = 0;                  // generator polynomial, 12 bits
  std::vector<uint32_t> xj_mod_g_;       // X^j mod g for j = 0..22
  std::vector<uint32_t> to_remainder_;   // 11x11 map: matrix syndrome -> e mod g
  std::vector<BitVec> leader_;           // 2048 coset leaders
};

DecodeOutcome decode_golay_kasami(const BitVec& s);

}  // namespace blockqec
