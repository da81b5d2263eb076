#include "blockqec/golay.hpp"

#include <bit>
#include <stdexcept>

namespace blockqec {

namespace {

constexpr size_t kN = 23;
constexpr size_t kR = 11;  // syndrome bits

}  // namespace

GolayDecoder::GolayDecoder() : code_(golay_code()) {
  for (int i = 0; i <= code_.generator_poly.degree(); ++i)
    if (code_.generator_poly.coeff(i)) g_bits_ |= uint32_t(1) << i;

  xj_mod_g_.resize(kN);
  uint32_t r = 1;
  for (size_t j = 0; j < kN; ++j) {
    xj_mod_g_[j] = r;
    r <<= 1;
    if (r & (uint32_t(1) << kR)) r ^= g_bits_;
  }

  // The trapping core works on the polynomial remainder e mod g, while the
  // decoder is fed the matrix syndrome H e. Both are linear in e with kernel
  // equal to the code, so an invertible 11x11 change of basis connects them.
  // Solve for it from the 23 (H column, X^j mod g) pairs by Gauss-Jordan,
  // packing each pair into one word: syndrome in bits 0..10, remainder above.
  std::vector<uint64_t> rows;
  for (size_t j = 0; j < kN; ++j) {
    uint64_t s = 0;
    for (size_t i = 0; i < kR; ++i)
      if (code_.H.get(i, j)) s |= uint64_t(1) << i;
    rows.push_back(s | (uint64_t(xj_mod_g_[j]) << kR));
  }
  std::vector<uint64_t> basis(kR, 0);
  for (uint64_t row : rows) {
    for (size_t b = 0; b < kR; ++b)
      if ((row >> b) & 1 && basis[b]) row ^= basis[b];
    uint64_t low = row & ((uint64_t(1) << kR) - 1);
    if (low) basis[std::countr_zero(low)] = row;
  }
  for (size_t b = 0; b < kR; ++b)
    if (!basis[b]) throw std::logic_error("GolayDecoder: syndrome map not invertible");
  for (size_t b = kR; b-- > 0;)
    for (size_t a = 0; a < kR; ++a)
      if (a != b && ((basis[a] >> b) & 1)) basis[a] ^= basis[b];

  to_remainder_.resize(kR);
  for (size_t b = 0; b < kR; ++b) to_remainder_[b] = uint32_t(basis[b] >> kR);

  leader_.resize(uint32_t(1) << kR);
  for (uint32_t u = 0; u < (uint32_t(1) << kR); ++u) {
    BitVec s(kR);
    for (size_t i = 0; i < kR; ++i)
      if ((u >> i) & 1) s.set(i, true);
    DecodeOutcome out = decode_trapping(s);
    if (!out.corrected()) throw std::logic_error("GolayDecoder: trapping missed a syndrome");
    leader_[u] = out.error_estimate;
  }
}

uint32_t GolayDecoder::pack_syndrome(const BitVec& s) const {
  if (s.size() != kR) throw std::invalid_argument("GolayDecoder: syndrome must have 11 bits");
  return uint32_t(s.words()[0]);
}

BitVec GolayDecoder::trap(uint32_t r0) const {
  uint32_t r = r0;
  for (size_t i = 0; i < kN; ++i) {
    int trapped_j = -1;
    uint32_t pattern = 0;
    if (std::popcount(r) <= 3) {
      pattern = r;
      trapped_j = kN;  // no extra info-window bit
    } else {
      for (size_t j = kR; j < kN; ++j) {
        uint32_t s2 = r ^ xj_mod_g_[j];
        if (std::popcount(s2) <= 2) {
          pattern = s2;
          trapped_j = int(j);
          break;
        }
      }
    }
    if (trapped_j >= 0) {
      // pattern holds the rotated error's parity window; undo the rotation.
      BitVec e(kN);
      for (size_t p = 0; p < kR; ++p)
        if ((pattern >> p) & 1) e.set((p + kN - i) % kN, true);
      if (trapped_j < int(kN)) e.set((size_t(trapped_j) + kN - i) % kN, true);
      return e;
    }
    r <<= 1;
    if (r & (uint32_t(1) << kR)) r ^= g_bits_;
  }
  return BitVec();
}

DecodeOutcome GolayDecoder::decode_trapping(const BitVec& s) const {
  const uint32_t packed = pack_syndrome(s);
  uint32_t rem = 0;
  for (size_t b = 0; b < kR; ++b)
    if ((packed >> b) & 1) rem ^= to_remainder_[b];

  DecodeOutcome out;
  BitVec e = trap(rem);
  if (e.empty()) {
    out.status = DecodeOutcome::Status::kDetectedUncorrectable;
    out.error_estimate = BitVec(kN);
    return out;
  }
  if (!(syndrome(code_, e) == s)) throw std::logic_error("GolayDecoder: syndrome recheck failed");
  out.status = DecodeOutcome::Status::kCorrected;
  out.error_estimate = e;
  return out;
}

DecodeOutcome GolayDecoder::decode(const BitVec& s) const {
  DecodeOutcome out;
  out.status = DecodeOutcome::Status::kCorrected;
  out.error_estimate = leader_[pack_syndrome(s)];
  return out;
}

DecodeOutcome decode_golay_kasami(const BitVec& s) {
  static const GolayDecoder decoder;
  return decoder.decode_trapping(s);
}

}  // namespace blockqec
