#pragma once

#include <cstdint>
#include <string>

#include "blockqec/bitvec.hpp"

namespace blockqec {

// n-qubit Pauli operator stored as X/Z bit vectors plus a power of i:
//   P = i^phase * prod_j X_j^{x_j} Z_j^{z_j}.
// With the convention Y = iXZ, a Hermitian Pauli has phase = |x&z| or
// |x&z|+2 (mod 4); sign() maps those to +1/-1. Code that only cares about
// the symplectic part (decoders) is free to ignore the phase.
class PauliOperator {
 public:
  PauliOperator() = default;
  explicit PauliOperator(size_t n) : x(n), z(n) {}
  PauliOperator(BitVec x_bits, BitVec z_bits, int sign = +1);

  static PauliOperator identity(size_t n) { return PauliOperator(n); }
  // Accepts "XIZY" or "+XIZY"/"-XIZY".
  static PauliOperator from_string(const std::string& s);
  static PauliOperator single(size_t n, size_t qubit, char pauli);

  size_t num_qubits() const { return x.size(); }
  char pauli_at(size_t i) const;
  void set_pauli(size_t i, char p);

  size_t weight() const { return (x | z).weight(); }
  bool is_identity() const { return !x.any() && !z.any(); }

  PauliOperator operator*(const PauliOperator& o) const;
  bool operator==(const PauliOperator&) const = default;

  bool commutes_with(const PauliOperator& o) const;

  uint8_t phase() const { return phase_; }
  void set_phase(uint8_t p) { phase_ = p & 3; }
  bool is_hermitian() const;
  int sign() const;  // +1/-1; throws for non-Hermitian phases
  void negate() { phase_ = (phase_ + 2) & 3; }

  std::string to_string() const;  // sign prefix + IXYZ letters

  BitVec x, z;

 private:
  uint8_t phase_ = 0;
};

// 1 when the operators anticommute, 0 when they commute.
int symplectic_product(const PauliOperator& a, const PauliOperator& b);

}  // namespace blockqec
