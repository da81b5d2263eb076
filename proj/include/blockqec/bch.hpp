#pragma once

#include <memory>
#include <vector>

#include "blockqec/gf2m.hpp"
#include "blockqec/linear_code.hpp"

namespace blockqec {

// Bounded-distance decoder for binary cyclic codes whose generator has 2t
// consecutive roots. Construction locates the consecutive run itself: it
// searches reindexings e -> u*e mod n of the root set (equivalently, designs
// the code against beta = alpha^(u*(2^m-1)/n)) and records the run start b.
// Decoding computes syndromes S_b..S_{b+2t-1} from a coset representative,
// runs Berlekamp-Massey on that window, and locates roots by Chien search.
// Any inconsistency (degree > t, wrong root count, syndrome recheck failure)
// is reported as detected-uncorrectable.
class BchDecoder {
 public:
  explicit BchDecoder(LinearCode code);

  const LinearCode& code() const { return code_; }
  const Gf2mField& field() const { return *field_; }
  size_t t() const { return t_; }
  size_t designed_distance() const { return 2 * t_ + 1; }

  DecodeOutcome decode(const BitVec& s) const;

 private:
  BitVec representative(const BitVec& s) const;  // any error with H e = s

  LinearCode code_;
  std::unique_ptr<Gf2mField> field_;
  uint64_t beta_exp_ = 0;  // beta = alpha^beta_exp, an n-th root of unity
  uint64_t b_ = 0;         // first exponent of the consecutive root run
  size_t t_ = 0;
  std::vector<BitVec> rep_columns_;  // n-bit column j solves H x = e_j
};

DecodeOutcome decode_bch_bm(const BchDecoder& decoder, const BitVec& s);

}  // namespace blockqec
