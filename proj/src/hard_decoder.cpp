#include "blockqec/hard_decoder.hpp"

#include <stdexcept>

#include "blockqec/rm15.hpp"

namespace blockqec {

namespace {

void check_syndrome_size(const CssCode& code, const BitVec& s) {
  if (s.size() != code.hx.num_rows() + code.hz.num_rows())
    throw std::invalid_argument("block decode: syndrome size mismatch");
}

// Decoders deal in symplectic classes: estimates carry phase 0, never the
// Hermitian phase convention of the two-vector constructor.
PauliOperator symplectic(BitVec x, BitVec z) {
  PauliOperator p;
  p.x = std::move(x);
  p.z = std::move(z);
  return p;
}

}  // namespace

GolayBlockDecoder::GolayBlockDecoder() : css_(css_from_selfdual(golay_.code(), "golay23")) {}

BlockDecodeResult GolayBlockDecoder::decode(const BitVec& s) const {
  check_syndrome_size(css_, s);
  BlockDecodeResult r;
  r.estimate = symplectic(golay_.decode(s.slice(11, 11)).error_estimate,
                             golay_.decode(s.slice(0, 11)).error_estimate);
  return r;
}

BchBlockDecoder::BchBlockDecoder(const LinearCode& classical)
    : bch_(classical), css_(css_from_selfdual(classical)) {}

BlockDecodeResult BchBlockDecoder::decode(const BitVec& s) const {
  check_syndrome_size(css_, s);
  const size_t r = css_.hx.num_rows();
  const DecodeOutcome oz = bch_.decode(s.slice(0, r));
  const DecodeOutcome ox = bch_.decode(s.slice(r, r));

  BlockDecodeResult out;
  out.x_detected = !ox.corrected();
  out.z_detected = !oz.corrected();
  if (out.x_detected || out.z_detected) {
    const PauliOperator fallback = pure_error(css_, s);
    out.estimate = symplectic(out.x_detected ? fallback.x : ox.error_estimate,
                                 out.z_detected ? fallback.z : oz.error_estimate);
  } else {
    out.estimate = symplectic(ox.error_estimate, oz.error_estimate);
  }
  return out;
}

Rm15BlockDecoder::Rm15BlockDecoder() : css_(build_rm15().css) {
  z_table_.assign(16, BitVec(15));
  for (size_t q = 0; q < 15; ++q) {
    uint64_t key = css_.hx.mul_vec(BitVec::unit(15, q)).words()[0];
    if (key == 0 || z_table_[key].any()) throw std::logic_error("rm15 Z table degenerate");
    z_table_[key] = BitVec::unit(15, q);
  }

  x_table_.assign(1024, std::nullopt);
  x_table_[0] = BitVec(15);
  for (size_t a = 0; a < 15; ++a)
    for (size_t b = a; b < 15; ++b)
      for (size_t c = b; c < 15; ++c) {
        BitVec e(15);
        e.set(a, true);
        e.set(b, true);
        e.set(c, true);
        uint64_t key = css_.hz.mul_vec(e).words()[0];
        if (!x_table_[key])
          x_table_[key] = e;
        else if (*x_table_[key] != e)
          throw std::logic_error("rm15 X table collision inside the decoding radius");
      }
}

BlockDecodeResult Rm15BlockDecoder::decode(const BitVec& s) const {
  check_syndrome_size(css_, s);
  BlockDecodeResult out;
  const BitVec z_est = z_table_[s.slice(0, 4).words()[0]];
  const auto& x_entry = x_table_[s.slice(4, 10).words()[0]];
  if (x_entry) {
    out.estimate = symplectic(*x_entry, z_est);
  } else {
    out.x_detected = true;
    out.estimate = symplectic(pure_error(css_, s).x, z_est);
  }
  return out;
}

TwoLevelHardDecoder::TwoLevelHardDecoder(std::unique_ptr<BlockHardDecoder> outer,
                                         std::unique_ptr<BlockHardDecoder> inner)
    : outer_(std::move(outer)), inner_(std::move(inner)) {
  if (inner_->code().k != 1)
    throw std::invalid_argument("two-level decoder: inner code must have k = 1");
  code_.levels = {outer_->code(), inner_->code()};
}

HardDecodeOutcome TwoLevelHardDecoder::decode(const SyndromeTree& tree) const {
  const CssCode& outer = outer_->code();
  const CssCode& inner = inner_->code();
  if (tree.levels.size() != 2 || tree.levels[0].size() != 1 ||
      tree.levels[1].size() != outer.n)
    throw std::invalid_argument("two-level decoder: tree shape mismatch");

  HardDecodeOutcome out;
  out.estimate = PauliOperator(outer.n * inner.n);
  PauliOperator symbols(outer.n);  // logical symbols of the inner estimates
  for (size_t b = 0; b < outer.n; ++b) {
    const BlockDecodeResult rb = inner_->decode(tree.levels[1][b]);
    out.inner_fallbacks += size_t(rb.x_detected) + size_t(rb.z_detected);
    for (size_t i = 0; i < inner.n; ++i) {
      if (rb.estimate.x.get(i)) out.estimate.x.set(b * inner.n + i, true);
      if (rb.estimate.z.get(i)) out.estimate.z.set(b * inner.n + i, true);
    }
    const LogicalAction a = logical_action(inner, rb.estimate);
    symbols.x.set(b, a.x.get(0));
    symbols.z.set(b, a.z.get(0));
  }

  // Symbols the inner pass already fixed shift the measured top syndrome;
  // what remains is the syndrome of the residual symbol error.
  const BitVec residual_syndrome = tree.levels[0][0] ^ css_syndrome(outer, symbols);
  const BlockDecodeResult ro = outer_->decode(residual_syndrome);
  out.outer_fallbacks += size_t(ro.x_detected) + size_t(ro.z_detected);
  for (size_t b = 0; b < outer.n; ++b) {
    if (ro.estimate.x.get(b))
      for (size_t i = 0; i < inner.n; ++i)
        if (inner.logical_x.row(0).get(i)) out.estimate.x.flip(b * inner.n + i);
    if (ro.estimate.z.get(b))
      for (size_t i = 0; i < inner.n; ++i)
        if (inner.logical_z.row(0).get(i)) out.estimate.z.flip(b * inner.n + i);
  }
  return out;
}

TwoLevelHardDecoder golay_memory_decoder(const LinearCode& outer_bch) {
  return TwoLevelHardDecoder(std::make_unique<BchBlockDecoder>(outer_bch),
                             std::make_unique<GolayBlockDecoder>());
}

TwoLevelHardDecoder rm15_pair_decoder() {
  return TwoLevelHardDecoder(std::make_unique<Rm15BlockDecoder>(),
                             std::make_unique<Rm15BlockDecoder>());
}

}  // namespace blockqec
