#pragma once

#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include "blockqec/pauli.hpp"

namespace blockqec {

// Conjugation by the elementary Clifford gates with exact phase tracking.
// CNOT: X_c -> X_c X_t, Z_t -> Z_c Z_t. H: X <-> Z (so Y -> -Y).
// S: X -> Y, Y -> -X, Z fixed.
PauliOperator conjugate_cnot(PauliOperator p, size_t control, size_t target);
PauliOperator conjugate_h(PauliOperator p, size_t qubit);
PauliOperator conjugate_s(PauliOperator p, size_t qubit);

// Stabilizer tableau of a pure n-qubit state: n signed stabilizer generators
// plus n destabilizers, maintained as a symplectic basis (destabilizer i
// anticommutes with stabilizer i and with no other generator). The
// destabilizers make group membership and deterministic-outcome lookups a
// chain of O(n) row products instead of a Gaussian solve.
class Tableau {
 public:
  // Computational basis state |0..0>: stabilizer i is Z_i, destabilizer X_i.
  explicit Tableau(size_t n);

  // Rebuilds a tableau from explicit rows; validates the symplectic-basis
  // invariants and throws std::invalid_argument when they fail.
  static Tableau from_rows(std::vector<PauliOperator> stabilizers,
                           std::vector<PauliOperator> destabilizers);

  size_t num_qubits() const { return n_; }
  const PauliOperator& stabilizer(size_t i) const;
  const PauliOperator& destabilizer(size_t i) const;
  const std::vector<PauliOperator>& stabilizers() const { return stab_; }

  void apply_cnot(size_t control, size_t target);
  void apply_h(size_t qubit);
  void apply_s(size_t qubit);
  // Conjugation by a Pauli only flips the signs of anticommuting rows.
  void apply_pauli(const PauliOperator& p);

  // +1/-1 when the observable's value is fixed by the state, 0 when a
  // measurement would be a fair coin. obs must be a Hermitian Pauli.
  int expectation(const PauliOperator& obs) const;

  // Projective measurement of a Hermitian Pauli observable. The outcome is
  // deterministic exactly when obs lies (up to sign) in the stabilizer
  // group; otherwise it is a fair coin and the state is updated in place.
  int measure(const PauliOperator& obs, std::mt19937_64& rng);

  // Same update with the coin replaced by the requested outcome. Throws
  // std::invalid_argument when the request contradicts a deterministic
  // value.
  int measure_forced(const PauliOperator& obs, int outcome);

  // Sign-tracking Gauss elimination of the stabilizer rows over the (x|z)
  // bit columns. The result depends only on the state, so two tableaux
  // describe the same state iff their canonical rows match exactly.
  std::vector<PauliOperator> canonical_stabilizers() const;
  bool same_state_as(const Tableau& other) const;

  // Checks the symplectic-basis invariants; throws std::logic_error if the
  // tableau is damaged.
  void check_invariants() const;

 private:
  size_t first_anticommuting(const PauliOperator& obs) const;
  int deterministic_sign(const PauliOperator& obs) const;
  void project(size_t pivot, const PauliOperator& obs, int outcome);

  size_t n_ = 0;
  std::vector<PauliOperator> stab_;
  std::vector<PauliOperator> destab_;
};

// State with the given full set of n independent, mutually commuting,
// Hermitian stabilizer generators; signs are honored. Throws
// std::invalid_argument when the set is not a valid full stabilizer set.
Tableau tableau_from_stabilizers(const std::vector<PauliOperator>& gens);

// a placed on qubits [0, a.n), b on [a.n, a.n + b.n).
Tableau tensor_product(const Tableau& a, const Tableau& b);

// The state of qubits [offset, offset + count), which must be disentangled
// from the rest of the register; throws std::invalid_argument otherwise.
Tableau restrict_to_qubits(const Tableau& t, size_t offset, size_t count);

// p acting on qubits [offset, offset + p.n) of a register of `total` qubits.
PauliOperator embed_pauli(const PauliOperator& p, size_t total, size_t offset);

// Scrambles |0..0> with a uniformly drawn H/S/CNOT circuit; depth 0 picks a
// size-dependent default large enough to mix.
Tableau random_stabilizer_state(size_t n, std::mt19937_64& rng, size_t depth = 0);

// Dense amplitudes of the stabilizer state, for cross-checks against
// non-Clifford operations. Basis index bit q is the value of qubit q. The
// global phase is arbitrary but the vector is normalized. Guarded to 20
// qubits.
std::vector<std::complex<double>> state_vector(const Tableau& t);

}  // namespace blockqec
