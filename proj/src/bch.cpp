#include "blockqec/bch.hpp"

#include <numeric>
#include <stdexcept>

namespace blockqec {

BchDecoder::BchDecoder(LinearCode code) : code_(std::move(code)) {
  const size_t n = code_.n;
  size_t m = 0;
  for (size_t cand = 2; cand <= 16; ++cand) {
    if (((uint64_t(1) << cand) - 1) % n == 0) {
      m = cand;
      break;
    }
  }
  if (m == 0) throw std::invalid_argument("BchDecoder: n does not divide 2^m-1 for m <= 16");
  field_ = std::make_unique<Gf2mField>(m, default_primitive_poly(m));
  const uint64_t big_n = (uint64_t(1) << m) - 1;
  const uint64_t step = big_n / n;

  std::vector<char> is_root(n, 0);
  for (size_t e = 0; e < n; ++e) {
    uint32_t acc = 0;
    for (int i = 0; i <= code_.generator_poly.degree(); ++i)
      if (code_.generator_poly.coeff(i)) acc ^= field_->pow_alpha(step * e * i);
    is_root[e] = (acc == 0);
  }

  // Pick the reindexing with the longest consecutive root run; record where
  // the run starts. Runs always exclude exponent 0 (g(1) != 0 for these
  // codes would contradict g | X^n+1 structure only if 1 were a root).
  size_t best_run = 0;
  uint64_t best_u = 1, best_b = 0;
  for (size_t u = 1; u < n; ++u) {
    if (std::gcd(u, n) != 1) continue;
    size_t cur = 0;
    size_t run = 0;
    uint64_t start = 0, best_start = 0;
    for (size_t e = 1; e < 2 * n; ++e) {
      if (is_root[(u * e) % n]) {
        if (cur == 0) start = e;
        ++cur;
        if (cur > run && cur <= n) {
          run = cur;
          best_start = start;
        }
      } else {
        cur = 0;
      }
    }
    if (run > best_run) {
      best_run = run;
      best_u = u;
      best_b = best_start;
    }
  }
  if (best_run < 2) throw std::invalid_argument("BchDecoder: no consecutive root run");
  t_ = best_run / 2;
  beta_exp_ = best_u * step;
  b_ = best_b;

  const size_t r = n - code_.k;
  rep_columns_.resize(r);
  for (size_t j = 0; j < r; ++j) {
    auto x = solve_gf2(code_.H, BitVec::unit(r, j));
    if (!x) throw std::logic_error("BchDecoder: H has dependent rows");
    rep_columns_[j] = *x;
  }
}

BitVec BchDecoder::representative(const BitVec& s) const {
  BitVec e(code_.n);
  for (size_t j = 0; j < s.size(); ++j)
    if (s.get(j)) e ^= rep_columns_[j];
  return e;
}

DecodeOutcome BchDecoder::decode(const BitVec& s) const {
  if (s.size() != code_.n - code_.k)
    throw std::invalid_argument("BchDecoder: syndrome length mismatch");
  DecodeOutcome out;
  out.error_estimate = BitVec(code_.n);
  if (!s.any()) {
    out.status = DecodeOutcome::Status::kCorrected;
    return out;
  }
  const Gf2mField& f = *field_;
  const uint64_t big_n = (uint64_t(1) << f.m()) - 1;

  // Syndromes S_i = sum over error positions p of beta^((b+i) p), computed
  // from any coset representative: codewords vanish at all run exponents.
  const BitVec e0 = representative(s);
  std::vector<uint32_t> syn(2 * t_, 0);
  bool all_zero = true;
  for (size_t i = 0; i < 2 * t_; ++i) {
    uint32_t acc = 0;
    for (size_t p = 0; p < code_.n; ++p)
      if (e0.get(p)) acc ^= f.pow_alpha(beta_exp_ * ((b_ + i) % code_.n) % big_n * p);
    syn[i] = acc;
    if (acc) all_zero = false;
  }
  if (all_zero) {
    // Nonzero coset with a clean syndrome window: any error of weight <= t
    // with vanishing window syndromes would be zero, so the weight exceeds t.
    out.status = DecodeOutcome::Status::kDetectedUncorrectable;
    return out;
  }

  // Berlekamp-Massey over GF(2^m) on the offset syndrome window.
  std::vector<uint32_t> lambda{1}, prev{1};
  size_t big_l = 0, shift = 1;
  uint32_t prev_delta = 1;
  for (size_t step = 0; step < 2 * t_; ++step) {
    uint32_t delta = syn[step];
    for (size_t i = 1; i <= big_l && i < lambda.size(); ++i)
      if (lambda[i] && step >= i) delta ^= f.mul(lambda[i], syn[step - i]);
    if (delta == 0) {
      ++shift;
    } else if (2 * big_l <= step) {
      std::vector<uint32_t> saved = lambda;
      const uint32_t scale = f.mul(delta, f.inv(prev_delta));
      if (lambda.size() < prev.size() + shift) lambda.resize(prev.size() + shift, 0);
      for (size_t i = 0; i < prev.size(); ++i)
        if (prev[i]) lambda[i + shift] ^= f.mul(scale, prev[i]);
      big_l = step + 1 - big_l;
      prev = std::move(saved);
      prev_delta = delta;
      shift = 1;
    } else {
      const uint32_t scale = f.mul(delta, f.inv(prev_delta));
      if (lambda.size() < prev.size() + shift) lambda.resize(prev.size() + shift, 0);
      for (size_t i = 0; i < prev.size(); ++i)
        if (prev[i]) lambda[i + shift] ^= f.mul(scale, prev[i]);
      ++shift;
    }
  }
  while (!lambda.empty() && lambda.back() == 0) lambda.pop_back();
  const size_t deg = lambda.size() - 1;
  if (big_l > t_ || deg != big_l) {
    out.status = DecodeOutcome::Status::kDetectedUncorrectable;
    return out;
  }

  // Chien search: position p is in error iff lambda(beta^-p) = 0.
  BitVec e(code_.n);
  size_t roots = 0;
  for (size_t p = 0; p < code_.n; ++p) {
    uint32_t acc = lambda[0];
    for (size_t i = 1; i <= deg; ++i) {
      if (!lambda[i]) continue;
      const uint64_t expo = (big_n - (beta_exp_ * i % big_n * p) % big_n) % big_n;
      acc ^= f.mul(lambda[i], f.pow_alpha(expo));
    }
    if (acc == 0) {
      e.set(p, true);
      ++roots;
    }
  }
  if (roots != deg || !(syndrome(code_, e) == s)) {
    out.status = DecodeOutcome::Status::kDetectedUncorrectable;
    out.error_estimate = BitVec(code_.n);
    return out;
  }
  out.status = DecodeOutcome::Status::kCorrected;
  out.error_estimate = e;
  return out;
}

DecodeOutcome decode_bch_bm(const BchDecoder& decoder, const BitVec& s) {
  return decoder.decode(s);
}

}  // namespace blockqec
