#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "blockqec/bch.hpp"
#include "blockqec/css.hpp"
#include "blockqec/golay.hpp"
#include "blockqec/soft_decoder.hpp"

namespace blockqec {

// Result of hard-decoding one CSS block. The estimate always reproduces the
// input syndrome; a side whose bounded-distance decoder gave up is replaced
// by the pure error of the syndrome (which carries the identity logical
// symbol by construction) and flagged.
struct BlockDecodeResult {
  PauliOperator estimate;
  bool x_detected = false;  // X-error side, read from the Z-generator bits
  bool z_detected = false;  // Z-error side, read from the X-generator bits
};

// Bounded-distance hard decoder for one CSS block; the X and Z sides decode
// independently.
class BlockHardDecoder {
 public:
  virtual ~BlockHardDecoder() = default;
  virtual const CssCode& code() const = 0;
  virtual BlockDecodeResult decode(const BitVec& s) const = 0;
};

// [[23,1,7]]: error trapping on both sides. The classical code is perfect,
// so every side decodes to the unique weight <= 3 leader and never falls
// back.
class GolayBlockDecoder : public BlockHardDecoder {
 public:
  GolayBlockDecoder();

  const CssCode& code() const override { return css_; }
  BlockDecodeResult decode(const BitVec& s) const override;

 private:
  GolayDecoder golay_;
  CssCode css_;
};

// CSS block on a dual-containing BCH code; both sides run Berlekamp-Massey
// up to the designed radius t.
class BchBlockDecoder : public BlockHardDecoder {
 public:
  explicit BchBlockDecoder(const LinearCode& classical);

  const CssCode& code() const override { return css_; }
  size_t t() const { return bch_.t(); }
  BlockDecodeResult decode(const BitVec& s) const override;

 private:
  BchDecoder bch_;
  CssCode css_;
};

// [[15,1,3]] by syndrome table. The Z side corrects weight <= 1 and covers
// all 16 syndromes; the X side corrects weight <= 3 (the X-distance is 7)
// and falls back on the uncovered syndromes.
class Rm15BlockDecoder : public BlockHardDecoder {
 public:
  Rm15BlockDecoder();

  const CssCode& code() const override { return css_; }
  BlockDecodeResult decode(const BitVec& s) const override;

 private:
  CssCode css_;
  std::vector<BitVec> z_table_;                 // 16 entries, complete
  std::vector<std::optional<BitVec>> x_table_;  // 1024 entries, 576 covered
};

struct HardDecodeOutcome {
  PauliOperator estimate;      // physical-qubit correction
  size_t inner_fallbacks = 0;  // inner sides replaced by the pure error
  size_t outer_fallbacks = 0;  // outer sides replaced by the pure error
};

// Two-level hard decoding: decode every inner block, lift the estimates'
// logical symbols, decode the outer code on the residual symbol syndrome
// (the measured top syndrome corrected for the symbols already fixed), then
// compose the inner corrections with the lifted outer symbol corrections.
class TwoLevelHardDecoder {
 public:
  TwoLevelHardDecoder(std::unique_ptr<BlockHardDecoder> outer,
                      std::unique_ptr<BlockHardDecoder> inner);

  const ConcatCode& code() const { return code_; }
  HardDecodeOutcome decode(const SyndromeTree& tree) const;

 private:
  std::unique_ptr<BlockHardDecoder> outer_;
  std::unique_ptr<BlockHardDecoder> inner_;
  ConcatCode code_;
};

// Memory stack: a BCH-based outer code over [[23,1,7]] inner blocks.
TwoLevelHardDecoder golay_memory_decoder(const LinearCode& outer_bch);

// Self-concatenated [[15,1,3]] pair.
TwoLevelHardDecoder rm15_pair_decoder();

}  // namespace blockqec
