#include "blockqec/channel.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace blockqec {

void PauliChannel::validate() const {
  for (double p : {pi, px, py, pz})
    if (p < 0.0) throw std::invalid_argument("PauliChannel: negative probability");
  if (std::abs(pi + px + py + pz - 1.0) > 1e-12)
    throw std::invalid_argument("PauliChannel: probabilities do not sum to 1");
}

PauliChannel compose(const PauliChannel& a, const PauliChannel& b) {
  // Index Paulis by (x bit, z bit): I=00, X=01, Z=10, Y=11; the group product
  // ignoring phase is XOR of the encodings.
  const auto vec = [](const PauliChannel& c) {
    return std::array<double, 4>{c.pi, c.px, c.pz, c.py};
  };
  const auto av = vec(a);
  const auto bv = vec(b);
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i ^ j] += av[i] * bv[j];
  return {out[0], out[1], out[3], out[2]};
}

PauliChannel effective_channel(const NoiseParams& params) {
  const double r = params.r, p_m = params.p_m, p_g2 = params.p_g2;

  // Factors folded forward from the previous extraction circuit.
  const PauliChannel from_prev[] = {
      PauliChannel::x_flip(p_m),
      PauliChannel::z_flip(p_m),
      PauliChannel::x_flip(8.0 / 15 * p_g2),
      {1.0 - 12.0 / 15 * p_g2, 4.0 / 15 * p_g2, 4.0 / 15 * p_g2, 4.0 / 15 * p_g2},
      PauliChannel::x_flip(2.0 / 3 * r),
      {1.0 - r, r / 3, r / 3, r / 3},
  };
  // Factors folded backward into the upcoming extraction circuit.
  const PauliChannel into_next[] = {
      PauliChannel::x_flip(p_m),
      PauliChannel::z_flip(p_m),
      {1.0 - 12.0 / 15 * p_g2, 4.0 / 15 * p_g2, 4.0 / 15 * p_g2, 4.0 / 15 * p_g2},
      PauliChannel::z_flip(8.0 / 15 * p_g2),
      {1.0 - r, r / 3, r / 3, r / 3},
      PauliChannel::z_flip(2.0 / 3 * r),
  };

  PauliChannel total = PauliChannel::identity();
  for (const auto& f : into_next) total = compose(total, f);
  total = compose(total, PauliChannel::depolarizing(params.eps));
  for (const auto& f : from_prev) total = compose(total, f);
  return total;
}

double p_eff(double p) {
  if (p < 0.0 || p > 5.0 / 71.0) throw std::invalid_argument("p_eff: p outside [0, 5/71]");
  return 71.0 * p / 5.0;
}

PauliOperator sample_pauli(const PauliChannel& ch, size_t n, std::mt19937_64& rng) {
  BitVec x(n), z(n);
  for (size_t i = 0; i < n; ++i) {
    const double u = uniform_unit(rng);
    if (u < ch.px) {
      x.set(i, true);
    } else if (u < ch.px + ch.py) {
      x.set(i, true);
      z.set(i, true);
    } else if (u < ch.px + ch.py + ch.pz) {
      z.set(i, true);
    }
  }
  return PauliOperator(std::move(x), std::move(z), +1);
}

TwoQubitPauli sample_two_qubit_gate_error(double p_g2, std::mt19937_64& rng) {
  const double u = uniform_unit(rng);
  if (u >= p_g2) return {0, 0};
  auto idx = static_cast<uint32_t>(u / (p_g2 / 15.0));
  if (idx > 14) idx = 14;  // guard the open-interval edge
  const uint32_t pair = idx + 1;
  return {uint8_t(pair >> 2), uint8_t(pair & 3)};
}

}  // namespace blockqec
