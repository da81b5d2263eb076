#include "blockqec/rm15.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace blockqec {

namespace {

constexpr size_t kN = 15;

// v_j over 16 positions: bit p of v_j is bit (j-1) of p. v_0 is all ones.
BitVec punctured_v(size_t j) {
  BitVec v(kN);
  for (size_t p = 1; p < 16; ++p) {
    bool bit = (j == 0) ? true : ((p >> (j - 1)) & 1);
    if (bit) v.set(p - 1, true);
  }
  return v;
}

BitVec punctured_product(size_t i, size_t j) {
  BitVec v(kN);
  for (size_t p = 1; p < 16; ++p)
    if (((p >> (i - 1)) & 1) && ((p >> (j - 1)) & 1)) v.set(p - 1, true);
  return v;
}

LinearCode explicit_code(Gf2Matrix g, size_t claimed_d, std::string name) {
  LinearCode code;
  code.n = g.num_cols();
  code.k = g.num_rows();
  code.claimed_d = claimed_d;
  code.name = std::move(name);
  code.H = Gf2Matrix(0, code.n);
  for (const BitVec& row : g.kernel_basis()) code.H.append_row(row);
  code.G = std::move(g);
  return code;
}

}  // namespace

Rm15Code build_rm15() {
  Rm15Code rm;

  // X checks: v4', v3', v2', v1'. Z checks add the pairwise products.
  Gf2Matrix hx(0, kN), hz(0, kN);
  for (size_t j = 4; j >= 1; --j) hx.append_row(punctured_v(j));
  for (size_t j = 4; j >= 1; --j) hz.append_row(punctured_v(j));
  hz.append_row(punctured_product(3, 4));
  hz.append_row(punctured_product(2, 4));
  hz.append_row(punctured_product(1, 4));
  hz.append_row(punctured_product(2, 3));
  hz.append_row(punctured_product(1, 3));
  hz.append_row(punctured_product(1, 2));

  CssCode& css = rm.css;
  css.n = kN;
  css.k = 1;
  css.d = 3;
  css.name = "rm15";
  css.hx = hx;
  css.hz = hz;
  css.logical_x = Gf2Matrix(0, kN);
  css.logical_x.append_row(punctured_v(0));
  css.logical_z = Gf2Matrix(0, kN);
  css.logical_z.append_row(punctured_v(0));
  solve_partners(css);

  Gf2Matrix g_prime(0, kN);
  g_prime.append_row(punctured_v(0));
  for (size_t j = 1; j <= 4; ++j) g_prime.append_row(punctured_v(j));
  rm.c_prime = explicit_code(std::move(g_prime), 7, "rm15-cprime");

  Gf2Matrix g0(0, kN);
  for (size_t j = 1; j <= 4; ++j) g0.append_row(punctured_v(j));
  rm.c0_prime = explicit_code(std::move(g0), 8, "rm15-c0prime");
  return rm;
}

TransversalTReport verify_transversal_t(const Rm15Code& code) {
  const size_t dim = size_t(1) << kN;
  const auto& g0 = code.c0_prime.G;

  // Codeword index set of C0' and its v0' coset, as 15-bit integers.
  std::vector<uint32_t> even_words, odd_words;
  uint32_t v0 = 0;
  for (size_t i = 0; i < kN; ++i)
    if (code.css.logical_x.row(0).get(i)) v0 |= uint32_t(1) << i;
  for (uint32_t sel = 0; sel < 16; ++sel) {
    BitVec u(kN);
    for (size_t j = 0; j < 4; ++j)
      if ((sel >> j) & 1) u ^= g0.row(j);
    uint32_t word = uint32_t(u.words()[0]);
    even_words.push_back(word);
    odd_words.push_back(word ^ v0);
  }

  const double norm = 1.0 / std::sqrt(16.0);
  std::vector<std::complex<double>> zero_l(dim), one_l(dim);
  for (uint32_t w : even_words) zero_l[w] = norm;
  for (uint32_t w : odd_words) one_l[w] = norm;

  auto apply_tdag = [&](std::vector<std::complex<double>> psi) {
    for (size_t y = 0; y < dim; ++y) {
      if (psi[y] == 0.0) continue;
      const double angle = -std::numbers::pi / 4.0 * std::popcount(uint32_t(y));
      psi[y] *= std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return psi;
  };

  auto overlap = [&](const std::vector<std::complex<double>>& a,
                     const std::vector<std::complex<double>>& b) {
    std::complex<double> acc = 0.0;
    for (size_t y = 0; y < dim; ++y) acc += std::conj(a[y]) * b[y];
    return acc;
  };

  TransversalTReport report;
  report.phase0 = overlap(zero_l, apply_tdag(zero_l));
  report.phase1 = overlap(one_l, apply_tdag(one_l));

  std::vector<std::complex<double>> plus(dim);
  for (size_t y = 0; y < dim; ++y) plus[y] = (zero_l[y] + one_l[y]) / std::sqrt(2.0);
  auto mapped = apply_tdag(plus);
  const std::complex<double> expected_phase =
      std::polar(1.0, -7.0 * std::numbers::pi / 4.0);
  double err = 0.0;
  for (size_t y = 0; y < dim; ++y) {
    const std::complex<double> want = (zero_l[y] + expected_phase * one_l[y]) / std::sqrt(2.0);
    err = std::max(err, std::abs(mapped[y] - want));
  }
  report.superposition_error = err;
  report.matches_expected = std::abs(report.phase0 - 1.0) < 1e-10 &&
                            std::abs(report.phase1 - expected_phase) < 1e-10 && err < 1e-10;
  return report;
}

ConcatSpec rm_concat(size_t levels) {
  if (levels > 3) throw std::invalid_argument("rm_concat: unsupported level");
  ConcatSpec spec;
  spec.k = 1;
  spec.n = 1;
  spec.d = 1;
  spec.dx = 1;
  for (size_t l = 0; l < levels; ++l) {
    spec.n *= 15;
    spec.d *= 3;
    spec.dx *= 7;
  }
  spec.name = levels == 0 ? "identity" : "rm15^" + std::to_string(levels);
  return spec;
}

}  // namespace blockqec
