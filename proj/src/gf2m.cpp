#include "blockqec/gf2m.hpp"

#include <stdexcept>

namespace blockqec {

Gf2mField::Gf2mField(int m, uint32_t primitive_poly) : m_(m), prim_(primitive_poly) {
  if (m < 2 || m > 16) throw std::invalid_argument("Gf2mField: m out of range");
  if (!(primitive_poly >> m & 1)) throw std::invalid_argument("Gf2mField: poly lacks x^m term");
  n_ = (uint32_t(1) << m) - 1;
  exp_.assign(size_t(2) * n_, 0);
  log_.assign(size_t(n_) + 1, 0);
  uint32_t x = 1;
  for (uint32_t i = 0; i < n_; ++i) {
    if (i > 0 && x == 1) throw std::invalid_argument("Gf2mField: polynomial not primitive");
    exp_[i] = x;
    exp_[i + n_] = x;
    log_[x] = i;
    x <<= 1;
    if (x >> m & 1) x ^= primitive_poly;
  }
  // After n steps x must wrap to 1, and every nonzero element must have
  // appeared exactly once.
  if (x != 1) throw std::invalid_argument("Gf2mField: polynomial not primitive");
  for (uint32_t a = 1; a <= n_; ++a)
    if (exp_[log_[a]] != a) throw std::invalid_argument("Gf2mField: polynomial not primitive");
}

uint32_t Gf2mField::log(uint32_t a) const {
  if (a == 0 || a > n_) throw std::domain_error("Gf2mField::log: argument outside field");
  return log_[a];
}

uint32_t Gf2mField::inv(uint32_t a) const {
  if (a == 0) throw std::domain_error("Gf2mField::inv: zero");
  return exp_[n_ - log_[a]];
}

uint32_t default_primitive_poly(int m) {
  switch (m) {
    case 7:
      return (1u << 7) | (1u << 3) | 1u;
    case 8:
      return (1u << 8) | (1u << 4) | (1u << 3) | (1u << 2) | 1u;
    case 11:
      return (1u << 11) | (1u << 2) | 1u;
    default:
      throw std::invalid_argument("default_primitive_poly: no default for this m");
  }
}

}  // namespace blockqec
