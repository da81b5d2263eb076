#pragma once

#include <cstdint>
#include <vector>

namespace blockqec {

// GF(2^m) with log/antilog tables, elements in polynomial basis as uint32.
// The generator alpha is the class of x modulo the primitive polynomial.
class Gf2mField {
 public:
  // primitive_poly includes the x^m term, e.g. m=11: (1<<11)|(1<<2)|1.
  // Throws if the polynomial is not primitive (tables would not fill).
  Gf2mField(int m, uint32_t primitive_poly);

  int m() const { return m_; }
  uint32_t order() const { return n_; }  // multiplicative order 2^m - 1
  uint32_t primitive_poly() const { return prim_; }

  uint32_t exp(uint32_t i) const { return exp_[i % n_]; }  // alpha^i
  uint32_t log(uint32_t a) const;                          // discrete log, a != 0

  uint32_t mul(uint32_t a, uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];  // exp_ is doubled, no reduction needed
  }
  uint32_t inv(uint32_t a) const;
  uint32_t pow_alpha(uint64_t e) const { return exp_[e % n_]; }

 private:
  int m_;
  uint32_t n_;
  uint32_t prim_;
  std::vector<uint32_t> exp_;  // length 2n, exp_[i] = alpha^(i mod n)
  std::vector<uint32_t> log_;
};

// Fixed published primitive polynomials used as project-wide defaults.
uint32_t default_primitive_poly(int m);

}  // namespace blockqec
