#include "blockqec/bitvec.hpp"

#include <stdexcept>

namespace blockqec {

BitVec BitVec::from_string(const std::string& bits) {
  BitVec v(bits.size());
  for (size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      v.set(i, true);
    else if (bits[i] != '0')
      throw std::invalid_argument("BitVec::from_string: bad character");
  }
  return v;
}

BitVec BitVec::from_hex(const std::string& hex, size_t n) {
  // Hex digit j encodes bits 4j..4j+3, low bit first within the digit.
  BitVec v(n);
  if (hex.size() * 4 < n) throw std::invalid_argument("BitVec::from_hex: string too short");
  for (size_t j = 0; j < hex.size(); ++j) {
    char c = hex[j];
    int d;
    if (c >= '0' && c <= '9')
      d = c - '0';
    else if (c >= 'a' && c <= 'f')
      d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F')
      d = c - 'A' + 10;
    else
      throw std::invalid_argument("BitVec::from_hex: bad digit");
    for (int b = 0; b < 4; ++b) {
      size_t i = 4 * j + b;
      bool bit = (d >> b) & 1;
      if (i < n) {
        if (bit) v.set(i, true);
      } else if (bit) {
        throw std::invalid_argument("BitVec::from_hex: set bit beyond length");
      }
    }
  }
  return v;
}

BitVec BitVec::unit(size_t n, size_t i) {
  BitVec v(n);
  v.set(i, true);
  return v;
}

BitVec& BitVec::operator^=(const BitVec& o) {
  if (n_ != o.n_) throw std::invalid_argument("BitVec: size mismatch");
  for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
  return *this;
}

BitVec& BitVec::operator&=(const BitVec& o) {
  if (n_ != o.n_) throw std::invalid_argument("BitVec: size mismatch");
  for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
  return *this;
}

BitVec& BitVec::operator|=(const BitVec& o) {
  if (n_ != o.n_) throw std::invalid_argument("BitVec: size mismatch");
  for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
  return *this;
}

BitVec BitVec::concat(const BitVec& o) const {
  BitVec r(n_ + o.n_);
  for (size_t i = 0; i < n_; ++i)
    if (get(i)) r.set(i, true);
  for (size_t i = 0; i < o.n_; ++i)
    if (o.get(i)) r.set(n_ + i, true);
  return r;
}

BitVec BitVec::slice(size_t begin, size_t len) const {
  if (begin + len > n_) throw std::out_of_range("BitVec::slice");
  BitVec r(len);
  for (size_t i = 0; i < len; ++i)
    if (get(begin + i)) r.set(i, true);
  return r;
}

BitVec BitVec::rotated_left(size_t s) const {
  if (n_ == 0) return *this;
  s %= n_;
  BitVec r(n_);
  for (size_t i = 0; i < n_; ++i)
    if (get(i)) r.set((i + s) % n_, true);
  return r;
}

std::string BitVec::to_string() const {
  std::string s(n_, '0');
  for (size_t i = 0; i < n_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

std::string BitVec::to_hex() const {
  size_t digits = (n_ + 3) / 4;
  std::string s(digits, '0');
  for (size_t j = 0; j < digits; ++j) {
    int d = 0;
    for (int b = 0; b < 4; ++b) {
      size_t i = 4 * j + b;
      if (i < n_ && get(i)) d |= 1 << b;
    }
    s[j] = "0123456789abcdef"[d];
  }
  return s;
}

}  // namespace blockqec
