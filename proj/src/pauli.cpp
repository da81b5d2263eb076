#include "blockqec/pauli.hpp"

#include <stdexcept>

namespace blockqec {

PauliOperator::PauliOperator(BitVec x_bits, BitVec z_bits, int sign)
    : x(std::move(x_bits)), z(std::move(z_bits)) {
  if (x.size() != z.size()) throw std::invalid_argument("PauliOperator: x/z size mismatch");
  if (sign != 1 && sign != -1) throw std::invalid_argument("PauliOperator: sign must be +-1");
  phase_ = uint8_t(((x & z).weight() + (sign < 0 ? 2 : 0)) & 3);
}

PauliOperator PauliOperator::from_string(const std::string& s) {
  size_t start = 0;
  int sign = +1;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    sign = s[0] == '-' ? -1 : +1;
    start = 1;
  }
  size_t n = s.size() - start;
  BitVec x(n), z(n);
  for (size_t i = 0; i < n; ++i) {
    switch (s[start + i]) {
      case 'I':
        break;
      case 'X':
        x.set(i, true);
        break;
      case 'Y':
        x.set(i, true);
        z.set(i, true);
        break;
      case 'Z':
        z.set(i, true);
        break;
      default:
        throw std::invalid_argument("PauliOperator::from_string: bad letter");
    }
  }
  return PauliOperator(std::move(x), std::move(z), sign);
}

PauliOperator PauliOperator::single(size_t n, size_t qubit, char pauli) {
  PauliOperator p(n);
  p.set_pauli(qubit, pauli);
  return p;
}

char PauliOperator::pauli_at(size_t i) const {
  bool xb = x.get(i), zb = z.get(i);
  if (xb && zb) return 'Y';
  if (xb) return 'X';
  if (zb) return 'Z';
  return 'I';
}

void PauliOperator::set_pauli(size_t i, char p) {
  // Keep the Hermitian bookkeeping consistent: remove the old i factor if the
  // site held Y, add one if the new letter is Y.
  if (x.get(i) && z.get(i)) phase_ = (phase_ + 3) & 3;
  switch (p) {
    case 'I':
      x.set(i, false);
      z.set(i, false);
      break;
    case 'X':
      x.set(i, true);
      z.set(i, false);
      break;
    case 'Y':
      x.set(i, true);
      z.set(i, true);
      phase_ = (phase_ + 1) & 3;
      break;
    case 'Z':
      x.set(i, false);
      z.set(i, true);
      break;
    default:
      throw std::invalid_argument("PauliOperator::set_pauli: bad letter");
  }
}

PauliOperator PauliOperator::operator*(const PauliOperator& o) const {
  // i^p X^xa Z^za * i^q X^xb Z^zb: commuting Z^za past X^xb costs (-1)^(za.xb).
  PauliOperator r(x.size());
  r.x = x ^ o.x;
  r.z = z ^ o.z;
  r.phase_ = uint8_t((phase_ + o.phase_ + 2 * (z.dot(o.x) ? 1 : 0)) & 3);
  return r;
}

bool PauliOperator::commutes_with(const PauliOperator& o) const {
  return symplectic_product(*this, o) == 0;
}

bool PauliOperator::is_hermitian() const {
  return ((phase_ - (x & z).weight()) & 1) == 0;
}

int PauliOperator::sign() const {
  unsigned rel = (phase_ - (x & z).weight()) & 3;
  if (rel == 0) return +1;
  if (rel == 2) return -1;
  throw std::logic_error("PauliOperator::sign: non-Hermitian phase");
}

std::string PauliOperator::to_string() const {
  std::string s(1, sign() < 0 ? '-' : '+');
  for (size_t i = 0; i < num_qubits(); ++i) s += pauli_at(i);
  return s;
}

int symplectic_product(const PauliOperator& a, const PauliOperator& b) {
  return (a.x.dot(b.z) ^ a.z.dot(b.x)) ? 1 : 0;
}

}  // namespace blockqec
