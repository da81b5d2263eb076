#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blockqec/gf2mat.hpp"
#include "blockqec/linear_code.hpp"
#include "blockqec/pauli.hpp"

namespace blockqec {

// CSS stabilizer code on n qubits with k logical qubits. X-type stabilizer
// generators come first, then Z-type. Pauli bit layout everywhere: X part in
// qubit order, then Z part.
struct CssCode {
  size_t n = 0;
  size_t k = 0;
  size_t d = 0;
  std::string name;

  Gf2Matrix hx;  // X-type stabilizer generators act as X on these supports
  Gf2Matrix hz;  // Z-type

  // Logical operators, one row per logical qubit, X part only / Z part only.
  Gf2Matrix logical_x;
  Gf2Matrix logical_z;

  // partner_z[i] anticommutes exactly with X-type generator i (a Z-support
  // row); partner_x[j] likewise for Z-type generator j (an X-support row).
  Gf2Matrix partner_z;
  Gf2Matrix partner_x;

  size_t num_stabilizers() const { return hx.num_rows() + hz.num_rows(); }
  PauliOperator x_stabilizer(size_t i) const;
  PauliOperator z_stabilizer(size_t i) const;
  PauliOperator logical_x_op(size_t i) const;
  PauliOperator logical_z_op(size_t i) const;
};

// Builds the CSS code of a dual-containing classical code (H Ht = 0):
// both X- and Z-type generators are the rows of H, giving [[n, 2k-n]].
CssCode css_from_selfdual(const LinearCode& classical, std::string name = "");

// General CSS constructor from parity check matrices; requires Hx Hz^T = 0.
CssCode css_from_matrices(Gf2Matrix hx, Gf2Matrix hz, std::string name = "");

// For cyclic dual-containing codes: picks k cyclic shifts of the generator
// polynomial that are independent modulo the dual, in increasing shift order.
Gf2Matrix logical_z_from_shifts(const LinearCode& classical, size_t k);

// Solves for logical X operators pairing with the given logical Z rows:
// row i commutes with all Z-type stabilizers and with every logical_z row
// except row i. Returns nullopt if the system is unsolvable.
std::optional<Gf2Matrix> solve_logical_x(const CssCode& code, const Gf2Matrix& logical_z);

// Fills partner_z / partner_x (destabilizers) for a code whose stabilizers
// and logicals are already set. Throws when the constraint system is singular.
void solve_partners(CssCode& code);

// Symplectic basis as a 2n x 2n matrix over columns (X_1..X_n, Z_1..Z_n):
// X half [Hx; partner_x; logical_x] on top, Z half [partner_z; Hz; logical_z]
// below, ordered so row i pairs with row n+i. Satisfies M J M^T = J with J
// the form [[0, I], [I, 0]], and is the identity on the canonical code.
Gf2Matrix build_encoding_matrix(const CssCode& code);

Gf2Matrix symplectic_form(size_t n);
bool is_symplectic(const Gf2Matrix& m);

// Syndrome of a Pauli error: X-type generator parities (detect Z errors)
// come first, then Z-type (detect X errors).
BitVec css_syndrome(const CssCode& code, const PauliOperator& p);

// Product of partners selected by the syndrome bits; linear in s, and
// css_syndrome(pure_error(s)) == s.
PauliOperator pure_error(const CssCode& code, const BitVec& s);

// Logical symbol of an error: strip the pure error of its syndrome, then
// read commutation with the logical operators. bit i of x / z indicates the
// residual acts as logical X / Z on qubit i.
struct LogicalAction {
  BitVec x;
  BitVec z;
  bool trivial() const { return !x.any() && !z.any(); }
  bool operator==(const LogicalAction&) const = default;
};
LogicalAction logical_action(const CssCode& code, const PauliOperator& p);

// Two-level concatenation summary: each outer qubit is one inner block.
// dx tracks an X-distance separately when it differs from d; 0 means
// unspecified.
struct ConcatSpec {
  size_t n = 0;
  size_t k = 0;
  size_t d = 0;
  size_t dx = 0;
  std::string name;
};
ConcatSpec concatenate(const CssCode& outer, const CssCode& inner);

std::string css_to_text(const CssCode& code);
CssCode css_from_text(const std::string& text);

}  // namespace blockqec
