#pragma once

#include <array>
#include <string>
#include <vector>

#include "blockqec/css.hpp"

namespace blockqec {

// Pauli symbols are indexed symplectically throughout the decoder:
// I=0, X=1, Z=2, Y=3, so that symbol products are XOR.
enum PauliSymbol : uint8_t { kSymI = 0, kSymX = 1, kSymZ = 2, kSymY = 3 };

using QubitPrior = std::array<double, 4>;

QubitPrior depolarizing_prior(double p);

// Posterior over the logical symbol of one k=1 block.
struct LogicalPosterior {
  std::array<double, 4> p{1.0, 0.0, 0.0, 0.0};

  double prob_i() const { return p[kSymI]; }
  double prob_x() const { return p[kSymX]; }
  double prob_y() const { return p[kSymY]; }
  double prob_z() const { return p[kSymZ]; }
  PauliSymbol argmax() const;
  double entropy() const;  // base-2, for traces
};

// Exact block MAP sums for one k=1 CSS code, with cached enumeration
// structure. The error class of syndrome s and logical symbol L is
// T(s) * L * S over the full stabilizer group S; the posterior weighs each
// class by the product of per-qubit priors.
//
// The exact path enumerates all 2^(rx+rz) group elements. The fast path sums
// the Z-type generator span through its dual (a parity transform over the
// kernel of Hz), chosen at construction when the dual side is smaller; it
// matches the exact path to 1e-9 and on argmax.
class BlockPosteriorContext {
 public:
  explicit BlockPosteriorContext(const CssCode& code);

  const CssCode& code() const { return *code_; }
  bool uses_transform() const { return use_transform_; }

  LogicalPosterior posterior(const BitVec& s, const std::vector<QubitPrior>& priors) const;
  LogicalPosterior posterior_exact(const BitVec& s, const std::vector<QubitPrior>& priors) const;

 private:
  std::array<double, 4> raw_sums_exact(const BitVec& s,
                                       const std::vector<QubitPrior>& priors) const;
  std::array<double, 4> raw_sums_transform(const BitVec& s,
                                           const std::vector<QubitPrior>& priors) const;

  const CssCode* code_;
  bool use_transform_ = false;
  std::vector<BitVec> hz_kernel_;  // dual basis for the transform path
};

LogicalPosterior block_posterior(const CssCode& code, const BitVec& s,
                                 const std::vector<QubitPrior>& priors);

// A concatenation stack, top code first; every level below the top must have
// k = 1. Uniform self-concatenation repeats one code.
struct ConcatCode {
  std::vector<CssCode> levels;

  size_t depth() const { return levels.size(); }
  size_t blocks_at(size_t level) const;   // number of code blocks at a level
  size_t physical_qubits() const;
  ConcatSpec spec() const;
};

ConcatCode uniform_concat(const CssCode& code, size_t levels);

// Syndromes per level, top first: tree.levels[j][i] is the syndrome of block
// i at level j. Bottom-level syndromes come from physical errors; above the
// bottom they are measured on the blocks' logical symbols.
struct SyndromeTree {
  std::vector<std::vector<BitVec>> levels;
};

// Decomposes a physical error into the syndrome tree plus the per-level
// symbol errors it induces; symbol_errors[j] covers the positions of level j
// (symbol_errors[0] has the top block's n positions).
struct ErrorDecomposition {
  SyndromeTree tree;
  std::vector<PauliOperator> symbol_errors;
  LogicalAction top_action;
};
ErrorDecomposition decompose_error(const ConcatCode& cc, const PauliOperator& physical);

struct SoftDecodeResult {
  LogicalAction action;  // argmax logical estimate of the top block
  LogicalPosterior posterior;
};

// Message passing up the tree: leaf posteriors from physical priors, then
// each level treats its children's posteriors as position priors. Exact MAP
// for independent per-qubit noise. Pass trace to capture a per-level text
// dump (syndromes, per-block argmax, entropy).
SoftDecodeResult soft_decode(const ConcatCode& cc, const SyndromeTree& tree,
                             const std::vector<QubitPrior>& leaf_priors,
                             std::string* trace = nullptr);

}  // namespace blockqec
