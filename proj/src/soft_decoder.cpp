#include "blockqec/soft_decoder.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace blockqec {

QubitPrior depolarizing_prior(double p) {
  return {1.0 - p, p / 3, p / 3, p / 3};
}

PauliSymbol LogicalPosterior::argmax() const {
  size_t best = 0;
  for (size_t i = 1; i < 4; ++i)
    if (p[i] > p[best]) best = i;
  return PauliSymbol(best);
}

double LogicalPosterior::entropy() const {
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log2(v);
  return h;
}

namespace {

// Per-qubit prior normalized by its maximum, keeping long products away from
// underflow without leaving the linear domain (the transform path needs
// signed arithmetic, so log-space is not an option).
std::vector<QubitPrior> max_normalized(const std::vector<QubitPrior>& priors) {
  std::vector<QubitPrior> out = priors;
  for (auto& q : out) {
    double m = std::max({q[0], q[1], q[2], q[3]});
    if (m <= 0.0) throw std::domain_error("block posterior: all-zero qubit prior");
    for (double& v : q) v /= m;
  }
  return out;
}

LogicalPosterior normalized(std::array<double, 4> raw) {
  double scale = 0.0;
  for (double v : raw) scale = std::max(scale, std::abs(v));
  double sum = 0.0;
  for (double& v : raw) {
    if (v < 0.0) {
      if (v < -1e-9 * std::max(scale, 1.0))
        throw std::logic_error("block posterior: negative class mass");
      v = 0.0;  // transform round-off
    }
    sum += v;
  }
  if (sum <= 0.0) throw std::domain_error("block posterior: zero posterior mass");
  LogicalPosterior post;
  for (size_t i = 0; i < 4; ++i) post.p[i] = raw[i] / sum;
  return post;
}

// Symbol of qubit i in the error (x, z).
inline int symbol_at(const BitVec& x, const BitVec& z, size_t i) {
  return int(x.get(i)) | (int(z.get(i)) << 1);
}

}  // namespace

BlockPosteriorContext::BlockPosteriorContext(const CssCode& code) : code_(&code) {
  if (code.k != 1) throw std::invalid_argument("BlockPosteriorContext: code must have k = 1");
  const size_t rz = code.hz.num_rows();
  if (rz == 0) {
    for (size_t i = 0; i < code.n; ++i) hz_kernel_.push_back(BitVec::unit(code.n, i));
  } else {
    hz_kernel_ = code.hz.kernel_basis();
  }
  use_transform_ = hz_kernel_.size() < rz;
}

std::array<double, 4> BlockPosteriorContext::raw_sums_exact(
    const BitVec& s, const std::vector<QubitPrior>& priors) const {
  const CssCode& c = *code_;
  const PauliOperator t = pure_error(c, s);
  const size_t rx = c.hx.num_rows();
  const size_t rz = c.hz.num_rows();

  std::array<double, 4> raw{};
  for (int l = 0; l < 4; ++l) {
    BitVec base_x = t.x;
    BitVec base_z = t.z;
    if (l & 1) base_x ^= c.logical_x.row(0);
    if (l & 2) base_z ^= c.logical_z.row(0);

    double total = 0.0;
    const uint64_t group = uint64_t(1) << (rx + rz);
    BitVec ex = base_x, ez = base_z;
    for (uint64_t g = 0;; ++g) {
      double prod = 1.0;
      for (size_t i = 0; i < c.n; ++i) prod *= priors[i][symbol_at(ex, ez, i)];
      total += prod;
      if (g + 1 == group) break;
      const size_t gen = std::countr_zero(g + 1);
      if (gen < rx)
        ex ^= c.hx.row(gen);
      else
        ez ^= c.hz.row(gen - rx);
    }
    raw[l] = total;
  }
  return raw;
}

std::array<double, 4> BlockPosteriorContext::raw_sums_transform(
    const BitVec& s, const std::vector<QubitPrior>& priors) const {
  const CssCode& c = *code_;
  const PauliOperator t = pure_error(c, s);
  const size_t rx = c.hx.num_rows();
  const size_t nk = hz_kernel_.size();

  std::array<double, 4> raw{};
  std::vector<double> g0(c.n), g1(c.n);  // parity-transform pair per qubit
  for (int l = 0; l < 4; ++l) {
    BitVec base_x = t.x;
    const BitVec base_z = (l & 2) ? (t.z ^ c.logical_z.row(0)) : t.z;
    if (l & 1) base_x ^= c.logical_x.row(0);

    double total = 0.0;
    BitVec ex = base_x;
    const uint64_t a_count = uint64_t(1) << rx;
    for (uint64_t a = 0;; ++a) {
      // Sum over the Z-generator span via its dual: per qubit the pair
      // (g(z), g(z^1)) becomes (g0 + g1, g0 - g1) under the transform.
      for (size_t i = 0; i < c.n; ++i) {
        const int xb = ex.get(i);
        const int zb = base_z.get(i);
        const double at_z = priors[i][xb | (zb << 1)];
        const double at_zflip = priors[i][xb | ((zb ^ 1) << 1)];
        g0[i] = at_z + at_zflip;
        g1[i] = at_z - at_zflip;
      }
      double inner = 0.0;
      BitVec w(c.n);
      const uint64_t w_count = uint64_t(1) << nk;
      for (uint64_t wi = 0;; ++wi) {
        double prod = 1.0;
        for (size_t i = 0; i < c.n; ++i) prod *= w.get(i) ? g1[i] : g0[i];
        inner += prod;
        if (wi + 1 == w_count) break;
        w ^= hz_kernel_[std::countr_zero(wi + 1)];
      }
      total += inner;
      if (a + 1 == a_count) break;
      ex ^= c.hx.row(std::countr_zero(a + 1));
    }
    raw[l] = total;
  }
  return raw;
}

LogicalPosterior BlockPosteriorContext::posterior(const BitVec& s,
                                                  const std::vector<QubitPrior>& priors) const {
  if (priors.size() != code_->n)
    throw std::invalid_argument("block posterior: prior count mismatch");
  const auto normed = max_normalized(priors);
  return normalized(use_transform_ ? raw_sums_transform(s, normed) : raw_sums_exact(s, normed));
}

LogicalPosterior BlockPosteriorContext::posterior_exact(
    const BitVec& s, const std::vector<QubitPrior>& priors) const {
  if (priors.size() != code_->n)
    throw std::invalid_argument("block posterior: prior count mismatch");
  return normalized(raw_sums_exact(s, max_normalized(priors)));
}

LogicalPosterior block_posterior(const CssCode& code, const BitVec& s,
                                 const std::vector<QubitPrior>& priors) {
  return BlockPosteriorContext(code).posterior(s, priors);
}

size_t ConcatCode::blocks_at(size_t level) const {
  size_t count = 1;
  for (size_t q = 0; q < level; ++q) count *= levels[q].n;
  return count;
}

size_t ConcatCode::physical_qubits() const {
  return blocks_at(depth() - 1) * levels.back().n;
}

ConcatSpec ConcatCode::spec() const {
  ConcatSpec spec;
  spec.n = physical_qubits();
  spec.k = levels.front().k;
  spec.d = 1;
  std::string name;
  for (const auto& c : levels) {
    spec.d *= c.d;
    name += (name.empty() ? "" : "/") + c.name;
  }
  spec.name = name;
  return spec;
}

ConcatCode uniform_concat(const CssCode& code, size_t levels) {
  if (levels == 0) throw std::invalid_argument("uniform_concat: need at least one level");
  ConcatCode cc;
  for (size_t l = 0; l < levels; ++l) cc.levels.push_back(code);
  return cc;
}

ErrorDecomposition decompose_error(const ConcatCode& cc, const PauliOperator& physical) {
  if (physical.x.size() != cc.physical_qubits())
    throw std::invalid_argument("decompose_error: size mismatch");
  for (size_t j = 1; j < cc.depth(); ++j)
    if (cc.levels[j].k != 1)
      throw std::invalid_argument("decompose_error: inner levels must have k = 1");

  ErrorDecomposition out;
  out.tree.levels.resize(cc.depth());
  out.symbol_errors.resize(cc.depth());

  PauliOperator current = physical;  // symbol error at the level being processed
  for (size_t j = cc.depth(); j-- > 0;) {
    const CssCode& code = cc.levels[j];
    const size_t blocks = cc.blocks_at(j);
    out.symbol_errors[j] = current;
    out.tree.levels[j].resize(blocks);

    PauliOperator lifted(blocks);  // one symbol per block, feeds level j-1
    for (size_t b = 0; b < blocks; ++b) {
      PauliOperator piece(code.n);
      piece.x = current.x.slice(b * code.n, code.n);
      piece.z = current.z.slice(b * code.n, code.n);
      out.tree.levels[j][b] = css_syndrome(code, piece);
      if (j > 0) {
        const LogicalAction a = logical_action(code, piece);
        if (a.x.get(0)) lifted.x.set(b, true);
        if (a.z.get(0)) lifted.z.set(b, true);
      } else {
        out.top_action = logical_action(code, piece);
      }
    }
    current = lifted;
  }
  return out;
}

SoftDecodeResult soft_decode(const ConcatCode& cc, const SyndromeTree& tree,
                             const std::vector<QubitPrior>& leaf_priors,
                             std::string* trace) {
  if (tree.levels.size() != cc.depth())
    throw std::invalid_argument("soft_decode: tree depth mismatch");
  if (leaf_priors.size() != cc.physical_qubits())
    throw std::invalid_argument("soft_decode: leaf prior count mismatch");
  for (size_t j = 1; j < cc.depth(); ++j)
    if (cc.levels[j].k != 1)
      throw std::invalid_argument("soft_decode: inner levels must have k = 1");
  if (cc.levels.front().k != 1)
    throw std::invalid_argument("soft_decode: top-level decoding needs k = 1");

  std::vector<BlockPosteriorContext> contexts;
  contexts.reserve(cc.depth());
  for (const auto& code : cc.levels) contexts.emplace_back(code);

  std::ostringstream ts;
  std::vector<QubitPrior> priors = leaf_priors;
  LogicalPosterior top;
  for (size_t j = cc.depth(); j-- > 0;) {
    const CssCode& code = cc.levels[j];
    const size_t blocks = cc.blocks_at(j);
    if (tree.levels[j].size() != blocks)
      throw std::invalid_argument("soft_decode: block count mismatch");

    std::vector<QubitPrior> next(blocks);
    if (trace) ts << "level " << j << " (" << code.name << ", " << blocks << " blocks)\n";
    for (size_t b = 0; b < blocks; ++b) {
      std::vector<QubitPrior> slice(priors.begin() + b * code.n,
                                    priors.begin() + (b + 1) * code.n);
      LogicalPosterior post = contexts[j].posterior(tree.levels[j][b], slice);
      next[b] = post.p;
      if (j == 0) top = post;
      if (trace) {
        static const char* names = "IXZY";
        ts << "  block " << b << " s=" << tree.levels[j][b].to_hex()
           << " argmax=" << names[post.argmax()] << " H=" << post.entropy() << "\n";
      }
    }
    priors = std::move(next);
  }

  SoftDecodeResult result;
  result.posterior = top;
  result.action = LogicalAction{BitVec(1), BitVec(1)};
  const PauliSymbol l = top.argmax();
  if (l & 1) result.action.x.set(0, true);
  if (l & 2) result.action.z.set(0, true);
  if (trace) *trace = ts.str();
  return result;
}

}  // namespace blockqec
