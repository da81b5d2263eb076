#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace blockqec {

// Fixed-length bit vector packed into 64-bit words, value semantics.
// Bit i lives in word i/64 at position i%64. Unused high bits stay zero.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  static BitVec from_string(const std::string& bits);  // "0110..."
  static BitVec from_hex(const std::string& hex, size_t n);
  static BitVec unit(size_t n, size_t i);

  size_t size() const { return n_; }
  bool empty() const { return n_ == 0; }

  bool get(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(size_t i, bool v) {
    uint64_t m = uint64_t(1) << (i & 63);
    if (v)
      w_[i >> 6] |= m;
    else
      w_[i >> 6] &= ~m;
  }
  void flip(size_t i) { w_[i >> 6] ^= uint64_t(1) << (i & 63); }

  BitVec& operator^=(const BitVec& o);
  BitVec& operator&=(const BitVec& o);
  BitVec& operator|=(const BitVec& o);
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }
  friend BitVec operator|(BitVec a, const BitVec& b) { return a |= b; }
  bool operator==(const BitVec&) const = default;

  size_t weight() const {
    size_t w = 0;
    for (uint64_t x : w_) w += std::popcount(x);
    return w;
  }
  bool any() const {
    for (uint64_t x : w_)
      if (x) return true;
    return false;
  }
  // GF(2) inner product: parity of the AND.
  bool dot(const BitVec& o) const {
    uint64_t acc = 0;
    for (size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
    return std::popcount(acc) & 1;
  }

  // Concatenation and slicing, used when gluing X/Z halves of symplectic rows.
  BitVec concat(const BitVec& o) const;
  BitVec slice(size_t begin, size_t len) const;

  // Cyclic shift: bit i moves to (i + s) mod size.
  BitVec rotated_left(size_t s) const;

  std::string to_string() const;
  std::string to_hex() const;

  const std::vector<uint64_t>& words() const { return w_; }
  std::vector<uint64_t>& words() { return w_; }

 private:
  size_t n_ = 0;
  std::vector<uint64_t> w_;
};

}  // namespace blockqec
