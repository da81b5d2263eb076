#include "blockqec/gf2poly.hpp"

#include <bit>
#include <stdexcept>

namespace blockqec {

void Gf2Poly::trim() {
  while (!w_.empty() && w_.back() == 0) w_.pop_back();
}

Gf2Poly Gf2Poly::from_exponents(std::initializer_list<int> exps) {
  return from_exponents(std::vector<int>(exps));
}

Gf2Poly Gf2Poly::from_exponents(const std::vector<int>& exps) {
  Gf2Poly p;
  for (int e : exps) {
    if (e < 0) throw std::invalid_argument("Gf2Poly: negative exponent");
    p.set_coeff(e, !p.coeff(e));
  }
  return p;
}

Gf2Poly Gf2Poly::from_hex(const std::string& hex) {
  Gf2Poly p;
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
      throw std::invalid_argument("Gf2Poly::from_hex: bad digit");
    for (int b = 0; b < 4; ++b)
      if ((d >> b) & 1) p.set_coeff(int(4 * j + b), true);
  }
  return p;
}

Gf2Poly Gf2Poly::x_pow_plus_one(int n) { return from_exponents({n, 0}); }

int Gf2Poly::degree() const {
  if (w_.empty()) return -1;
  return int(64 * (w_.size() - 1) + 63 - std::countl_zero(w_.back()));
}

bool Gf2Poly::coeff(int i) const {
  size_t word = size_t(i) >> 6;
  if (i < 0 || word >= w_.size()) return false;
  return (w_[word] >> (i & 63)) & 1;
}

void Gf2Poly::set_coeff(int i, bool v) {
  if (i < 0) throw std::invalid_argument("Gf2Poly::set_coeff: negative exponent");
  size_t word = size_t(i) >> 6;
  if (word >= w_.size()) {
    if (!v) return;
    w_.resize(word + 1, 0);
  }
  uint64_t m = uint64_t(1) << (i & 63);
  if (v)
    w_[word] |= m;
  else
    w_[word] &= ~m;
  trim();
}

Gf2Poly Gf2Poly::operator+(const Gf2Poly& o) const {
  Gf2Poly r;
  r.w_.resize(std::max(w_.size(), o.w_.size()), 0);
  for (size_t i = 0; i < w_.size(); ++i) r.w_[i] ^= w_[i];
  for (size_t i = 0; i < o.w_.size(); ++i) r.w_[i] ^= o.w_[i];
  r.trim();
  return r;
}

Gf2Poly Gf2Poly::shifted(int s) const {
  if (s < 0) throw std::invalid_argument("Gf2Poly::shifted: negative shift");
  Gf2Poly r;
  int d = degree();
  if (d < 0) return r;
  for (int i = 0; i <= d; ++i)
    if (coeff(i)) r.set_coeff(i + s, true);
  return r;
}

Gf2Poly Gf2Poly::reciprocal() const {
  Gf2Poly r;
  int d = degree();
  for (int i = 0; i <= d; ++i)
    if (coeff(i)) r.set_coeff(d - i, true);
  return r;
}

BitVec Gf2Poly::to_bits(size_t n) const {
  if (degree() >= int(n)) throw std::invalid_argument("Gf2Poly::to_bits: degree too large");
  BitVec v(n);
  for (int i = 0; i <= degree(); ++i)
    if (coeff(i)) v.set(size_t(i), true);
  return v;
}

Gf2Poly Gf2Poly::from_bits(const BitVec& v) {
  Gf2Poly p;
  for (size_t i = 0; i < v.size(); ++i)
    if (v.get(i)) p.set_coeff(int(i), true);
  return p;
}

std::string Gf2Poly::to_hex() const {
  int d = degree();
  if (d < 0) return "0";
  size_t digits = size_t(d) / 4 + 1;
  std::string s(digits, '0');
  for (size_t j = 0; j < digits; ++j) {
    int v = 0;
    for (int b = 0; b < 4; ++b)
      if (coeff(int(4 * j + b))) v |= 1 << b;
    s[j] = "0123456789abcdef"[v];
  }
  return s;
}

std::string Gf2Poly::to_term_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    if (!coeff(i)) continue;
    if (!s.empty()) s += " + ";
    if (i == 0)
      s += "1";
    else if (i == 1)
      s += "x";
    else
      s += "x^" + std::to_string(i);
  }
  return s;
}

Gf2Poly poly_mul(const Gf2Poly& a, const Gf2Poly& b) {
  Gf2Poly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.w_.assign(a.w_.size() + b.w_.size(), 0);
  for (size_t i = 0; i < a.w_.size(); ++i) {
    uint64_t wa = a.w_[i];
    while (wa) {
      int bit = std::countr_zero(wa);
      wa &= wa - 1;
      int shift = bit;  // position within word; word offset handled below
      for (size_t j = 0; j < b.w_.size(); ++j) {
        uint64_t wb = b.w_[j];
        if (!wb) continue;
        size_t base = i + j;
        r.w_[base] ^= wb << shift;
        if (shift) r.w_[base + 1] ^= wb >> (64 - shift);
      }
    }
  }
  r.trim();
  return r;
}

std::pair<Gf2Poly, Gf2Poly> poly_divmod(const Gf2Poly& a, const Gf2Poly& b) {
  if (b.is_zero()) throw std::invalid_argument("poly_divmod: zero divisor");
  Gf2Poly q, r = a;
  int db = b.degree();
  while (!r.is_zero() && r.degree() >= db) {
    int s = r.degree() - db;
    q.set_coeff(s, true);
    r = r + b.shifted(s);
  }
  return {q, r};
}

}  // namespace blockqec
