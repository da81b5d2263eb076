#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "blockqec/bitvec.hpp"

namespace blockqec {

// Polynomial over GF(2), coefficient of X^i at bit i. Always trimmed:
// the top word is nonzero unless the polynomial is zero.
class Gf2Poly {
 public:
  Gf2Poly() = default;

  static Gf2Poly zero() { return Gf2Poly(); }
  static Gf2Poly one() { return from_exponents({0}); }
  static Gf2Poly from_exponents(std::initializer_list<int> exps);
  static Gf2Poly from_exponents(const std::vector<int>& exps);
  static Gf2Poly from_hex(const std::string& hex);  // low coefficients first
  static Gf2Poly x_pow_plus_one(int n);             // X^n + 1

  bool is_zero() const { return w_.empty(); }
  int degree() const;  // -1 for zero
  bool coeff(int i) const;
  void set_coeff(int i, bool v);

  Gf2Poly operator+(const Gf2Poly& o) const;  // XOR
  bool operator==(const Gf2Poly&) const = default;

  Gf2Poly shifted(int s) const;  // multiply by X^s
  Gf2Poly reciprocal() const;    // X^deg * p(1/X)

  // Coefficients as a length-n bit vector (requires degree < n).
  BitVec to_bits(size_t n) const;
  static Gf2Poly from_bits(const BitVec& v);

  std::string to_hex() const;
  std::string to_term_string() const;  // "x^11 + x^10 + ... + 1"

  friend Gf2Poly poly_mul(const Gf2Poly& a, const Gf2Poly& b);
  friend std::pair<Gf2Poly, Gf2Poly> poly_divmod(const Gf2Poly& a, const Gf2Poly& b);

 private:
  void trim();
  std::vector<uint64_t> w_;
};

Gf2Poly poly_mul(const Gf2Poly& a, const Gf2Poly& b);
// Returns (quotient, remainder); throws on zero divisor.
std::pair<Gf2Poly, Gf2Poly> poly_divmod(const Gf2Poly& a, const Gf2Poly& b);

}  // namespace blockqec
