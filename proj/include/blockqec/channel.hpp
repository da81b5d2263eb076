#pragma once

#include <cstdint>
#include <random>

#include "blockqec/pauli.hpp"

namespace blockqec {

// Uniform double in [0,1) from the top 53 bits of one engine draw. Used by
// every sampler so results do not depend on library distribution internals.
inline double uniform_unit(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

// Single-qubit Pauli channel as a probability 4-vector.
struct PauliChannel {
  double pi = 1.0, px = 0.0, py = 0.0, pz = 0.0;

  static PauliChannel identity() { return {}; }
  static PauliChannel depolarizing(double p) { return {1.0 - p, p / 3, p / 3, p / 3}; }
  static PauliChannel x_flip(double p) { return {1.0 - p, p, 0.0, 0.0}; }
  static PauliChannel y_flip(double p) { return {1.0 - p, 0.0, p, 0.0}; }
  static PauliChannel z_flip(double p) { return {1.0 - p, 0.0, 0.0, p}; }

  double error_rate() const { return px + py + pz; }
  void validate() const;  // throws unless nonnegative and summing to 1 within 1e-12
};

// Convolution under the Pauli group: exact, no truncation.
PauliChannel compose(const PauliChannel& a, const PauliChannel& b);

// Physical rates per time step. p_g1 is carried for circuit-level use; the
// effective single-step channel below involves only eps, r, p_m, p_g2.
struct NoiseParams {
  double eps = 0.0;   // memory
  double r = 0.0;     // ancilla preparation
  double p_m = 0.0;   // measurement
  double p_g1 = 0.0;  // one-qubit gate
  double p_g2 = 0.0;  // two-qubit gate
};

// Exact product of the per-step factor channels: errors folded in from the
// previous extraction (measurement, both CNOTs, ancilla preparation), memory
// error, then the factors folded forward into the next step. To first order
// p_x = p_z = eps/3 + 4r/3 + 2 p_m + 16 p_g2 / 15 and
// p_y = eps/3 + 2r/3 + 8 p_g2 / 15.
PauliChannel effective_channel(const NoiseParams& params);

// Depolarizing rate folded from all per-step error sources at equal physical
// rate p. Defined for p <= 5/71 so the result stays a probability.
double p_eff(double p);

// One Pauli drawn i.i.d. per qubit. Draw order: X, Y, Z, then identity.
PauliOperator sample_pauli(const PauliChannel& ch, size_t n, std::mt19937_64& rng);

// Indices 0..3 mean I, X, Y, Z.
struct TwoQubitPauli {
  uint8_t first = 0;
  uint8_t second = 0;
  bool operator==(const TwoQubitPauli&) const = default;
};

// Identity with probability 1 - p_g2; otherwise one of the 15 nonidentity
// pairs, uniformly.
TwoQubitPauli sample_two_qubit_gate_error(double p_g2, std::mt19937_64& rng);

}  // namespace blockqec
