#include "blockqec/linear_code.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "blockqec/gf2m.hpp"

namespace blockqec {

LinearCode cyclic_code(const Gf2Poly& genpoly, size_t n, std::string name) {
  if (genpoly.is_zero()) throw std::invalid_argument("cyclic_code: zero generator");
  const int deg = genpoly.degree();
  if (static_cast<size_t>(deg) > n) throw std::invalid_argument("cyclic_code: deg g > n");
  auto [h, rem] = poly_divmod(Gf2Poly::x_pow_plus_one(n), genpoly);
  if (!rem.is_zero()) throw std::invalid_argument("cyclic_code: generator does not divide X^n+1");

  LinearCode code;
  code.n = n;
  code.k = n - static_cast<size_t>(deg);
  code.generator_poly = genpoly;
  code.name = std::move(name);

  const BitVec g_bits = genpoly.to_bits(n);
  for (size_t i = 0; i < code.k; ++i) code.G.append_row(g_bits.rotated_left(i));

  if (code.k < n) {
    const BitVec hstar = h.reciprocal().to_bits(n);
    for (size_t i = 0; i < n - code.k; ++i) code.H.append_row(hstar.rotated_left(i));
  } else {
    code.H = Gf2Matrix(0, n);
  }

  for (size_t i = 0; i < code.G.num_rows(); ++i)
    for (size_t j = 0; j < code.H.num_rows(); ++j)
      if (code.G.row(i).dot(code.H.row(j)))
        throw std::logic_error("cyclic_code: G H^T != 0");
  return code;
}

LinearCode golay_code() {
  auto c = cyclic_code(Gf2Poly::from_exponents({11, 10, 6, 5, 4, 2, 0}), 23, "golay23");
  c.claimed_d = 7;
  return c;
}

LinearCode bch89_code() {
  auto c = cyclic_code(Gf2Poly::from_exponents({33, 30, 27, 26, 25, 24, 22, 21, 20, 16,
                                                15, 14, 11, 10, 9, 6, 3, 2, 0}),
                       89, "bch89");
  c.claimed_d = 9;
  return c;
}

LinearCode bch127_code() {
  auto c = cyclic_code(Gf2Poly::from_exponents({35, 34, 33, 28, 24, 23, 22, 19, 17, 15,
                                                12, 11, 9, 8, 6, 4, 2, 1, 0}),
                       127, "bch127");
  c.claimed_d = 11;
  return c;
}

LinearCode bch255_code() {
  auto c = cyclic_code(Gf2Poly::from_exponents({56, 51, 50, 49, 46, 43, 41, 40, 39, 34,
                                                30, 26, 25, 24, 22, 20, 17, 16, 11, 10,
                                                8, 7, 4, 3, 2, 1, 0}),
                       255, "bch255");
  c.claimed_d = 15;
  return c;
}

BitVec syndrome(const LinearCode& code, const BitVec& word) {
  return code.H.mul_vec(word);
}

DecodeOutcome brute_force_decode(const LinearCode& code, const BitVec& s, size_t wmax) {
  DecodeOutcome out;
  if (!s.any()) {
    out.status = DecodeOutcome::Status::kCorrected;
    out.error_estimate = BitVec(code.n);
    return out;
  }
  std::vector<BitVec> unit_syndromes(code.n);
  for (size_t j = 0; j < code.n; ++j) unit_syndromes[j] = code.H.column(j);

  // Weight-by-weight; within a weight, position tuples in lexicographic order.
  std::vector<size_t> idx;
  for (size_t w = 1; w <= wmax; ++w) {
    idx.assign(w, 0);
    for (size_t i = 0; i < w; ++i) idx[i] = i;
    while (true) {
      BitVec acc = s;
      for (size_t i : idx) acc ^= unit_syndromes[i];
      if (!acc.any()) {
        out.status = DecodeOutcome::Status::kCorrected;
        out.error_estimate = BitVec(code.n);
        for (size_t i : idx) out.error_estimate.set(i, true);
        return out;
      }
      // next combination
      size_t i = w;
      while (i > 0) {
        --i;
        if (idx[i] != code.n - w + i) break;
        if (i == 0) {
          i = w;
          break;
        }
      }
      if (i == w) break;
      ++idx[i];
      for (size_t j = i + 1; j < w; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  out.status = DecodeOutcome::Status::kDetectedUncorrectable;
  out.error_estimate = BitVec(code.n);
  return out;
}

namespace {

// Longest cyclic run of consecutive exponents b, b+1, ... within the root set
// of the generator polynomial, maximized over reindexings e -> u*e mod n.
size_t best_consecutive_root_run(const LinearCode& code) {
  size_t m = 0;
  for (size_t cand = 1; cand <= 16; ++cand) {
    if (((uint64_t(1) << cand) - 1) % code.n == 0) {
      m = cand;
      break;
    }
  }
  if (m == 0) return 0;
  Gf2mField field(m, default_primitive_poly(m));
  const uint64_t big_n = (uint64_t(1) << m) - 1;
  const uint64_t step = big_n / code.n;

  std::vector<char> is_root(code.n, 0);
  for (size_t e = 0; e < code.n; ++e) {
    // evaluate g at alpha^(step*e)
    uint32_t acc = 0;
    for (int i = 0; i <= code.generator_poly.degree(); ++i)
      if (code.generator_poly.coeff(i))
        acc ^= field.pow_alpha((step * e * i) % big_n);
    is_root[e] = (acc == 0);
  }

  size_t best = 0;
  for (size_t u = 1; u < code.n; ++u) {
    if (std::gcd(u, code.n) != 1) continue;
    std::vector<char> ru(code.n);
    for (size_t e = 0; e < code.n; ++e) ru[e] = is_root[(u * e) % code.n];
    size_t run = 0, cur = 0;
    for (size_t e = 0; e < 2 * code.n; ++e) {
      if (ru[e % code.n]) {
        cur = std::min(cur + 1, code.n);
        run = std::max(run, cur);
      } else {
        cur = 0;
      }
    }
    best = std::max(best, run);
  }
  return best;
}

}  // namespace

DistanceReport min_distance(const LinearCode& code, uint64_t budget) {
  DistanceReport rep;
  if (code.k == 0) throw std::invalid_argument("min_distance: empty code");
  if (code.k < 63 && (uint64_t(1) << code.k) <= budget) {
    // Gray-code walk over all nonzero codewords: one row XOR per step.
    BitVec word(code.n);
    size_t best = code.n + 1;
    const uint64_t total = uint64_t(1) << code.k;
    for (uint64_t step = 1; step < total; ++step) {
      word ^= code.G.row(static_cast<size_t>(std::countr_zero(step)));
      best = std::min(best, word.weight());
    }
    rep.value = best;
    rep.exact = true;
    rep.method = "exhaustive";
    return rep;
  }
  if (!code.generator_poly.is_zero() && (code.n & 1)) {
    const size_t run = best_consecutive_root_run(code);
    if (run > 0) {
      rep.value = run + 1;
      rep.exact = false;
      rep.method = "consecutive-root-bound";
      return rep;
    }
  }
  throw std::runtime_error("min_distance: enumeration budget exceeded and no bound available");
}

bool selfdual_containment(const LinearCode& code) {
  for (size_t i = 0; i < code.H.num_rows(); ++i)
    for (size_t j = i; j < code.H.num_rows(); ++j)
      if (code.H.row(i).dot(code.H.row(j))) return false;
  return true;
}

std::string code_to_text(const LinearCode& code) {
  std::ostringstream os;
  os << code.n << " " << code.k << " " << code.generator_poly.to_hex();
  if (!code.name.empty()) os << " " << code.name;
  return os.str();
}

LinearCode code_from_text(const std::string& text) {
  std::istringstream is(text);
  size_t n = 0, k = 0;
  std::string hex, name;
  if (!(is >> n >> k >> hex)) throw std::invalid_argument("code_from_text: bad format");
  is >> name;
  LinearCode code = cyclic_code(Gf2Poly::from_hex(hex), n, name);
  if (code.k != k) throw std::invalid_argument("code_from_text: k mismatch");
  return code;
}

}  // namespace blockqec
