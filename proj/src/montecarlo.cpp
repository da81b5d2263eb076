#include "blockqec/montecarlo.hpp"

#include <boost/math/distributions/binomial.hpp>
#include <cmath>
#include <cstdio>
#include <exception>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "blockqec/rm15.hpp"

namespace blockqec {

namespace {

const CssCode& shared_rm15() {
  static const Rm15Code rm = build_rm15();
  return rm.css;
}

ConcatCode rm_stack(size_t levels, bool allow_slow) {
  if (levels == 0 || levels > 3) throw std::invalid_argument("rm stack: levels must be 1..3");
  if (levels == 3 && !allow_slow)
    throw std::invalid_argument("rm stack: three levels needs allow_slow (3375 qubits per trial)");
  return uniform_concat(shared_rm15(), levels);
}

// Shards [0, trials) into contiguous index ranges, one worker each. Audited
// trials are appended range by range, so the merged order is index order and
// the output is independent of the job count.
template <typename TrialFn>
RateEstimate run_trials(uint64_t trials, uint64_t seed, const RunOptions& opt,
                        std::vector<TrialResult>* audit, TrialFn&& fn) {
  unsigned jobs = opt.jobs ? opt.jobs : 1;
  if (uint64_t(jobs) > trials && trials > 0) jobs = unsigned(trials);
  if (trials == 0) return make_rate_estimate(0, 0, seed);

  std::vector<uint64_t> failures(jobs, 0);
  std::vector<std::vector<TrialResult>> kept(jobs);
  std::vector<std::exception_ptr> errors(jobs);

  auto work = [&](unsigned j) {
    const uint64_t lo = trials * j / jobs;
    const uint64_t hi = trials * (j + 1) / jobs;
    try {
      for (uint64_t i = lo; i < hi; ++i) {
        TrialResult t = fn(i);
        if (!t.success) ++failures[j];
        if (audit && opt.audit_stride && i % opt.audit_stride == 0)
          kept[j].push_back(std::move(t));
      }
    } catch (...) {
      errors[j] = std::current_exception();
    }
  };

  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work, j);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  uint64_t total = 0;
  for (uint64_t f : failures) total += f;
  if (audit)
    for (auto& part : kept)
      for (auto& t : part) audit->push_back(std::move(t));
  return make_rate_estimate(trials, total, seed);
}

void check_rate(double p_eff) {
  if (!(p_eff >= 0.0 && p_eff < 1.0))
    throw std::invalid_argument("trial: p_eff must lie in [0, 1)");
}

LogicalAction xor_action(const LogicalAction& a, const LogicalAction& b) {
  return LogicalAction{a.x ^ b.x, a.z ^ b.z};
}

TrialResult classify_soft(const ConcatCode& cc, const PauliOperator& e, double p_eff,
                          uint64_t index) {
  ErrorDecomposition decomp = decompose_error(cc, e);
  const std::vector<QubitPrior> priors(cc.physical_qubits(), depolarizing_prior(p_eff));
  SoftDecodeResult soft = soft_decode(cc, decomp.tree, priors);

  TrialResult t;
  t.index = index;
  t.error_weight = (e.x | e.z).weight();
  t.action = xor_action(soft.action, decomp.top_action);
  t.success = t.action.trivial();
  return t;
}

double format_guard(double v) { return v == 0.0 ? 0.0 : v; }  // flush -0

void append_double(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", format_guard(v));
  out += buf;
}

}  // namespace

std::mt19937_64 trial_rng(uint64_t seed, uint64_t index) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ull;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebull;
  z ^= z >> 31;
  return std::mt19937_64(z);
}

RateEstimate make_rate_estimate(uint64_t trials, uint64_t failures, uint64_t seed) {
  if (failures > trials) throw std::invalid_argument("make_rate_estimate: failures > trials");
  RateEstimate est;
  est.trials = trials;
  est.failures = failures;
  est.seed = seed;
  if (trials == 0) return est;  // rate 0, interval [0, 1]
  est.rate = double(failures) / double(trials);

  using binom = boost::math::binomial_distribution<double>;
  const double n = double(trials), f = double(failures);
  if (failures == 0) {
    est.ci_lo = 0.0;
    est.ci_hi = binom::find_upper_bound_on_p(n, f, 0.05);
  } else if (failures == trials) {
    est.ci_lo = binom::find_lower_bound_on_p(n, f, 0.05);
    est.ci_hi = 1.0;
  } else {
    est.ci_lo = binom::find_lower_bound_on_p(n, f, 0.025);
    est.ci_hi = binom::find_upper_bound_on_p(n, f, 0.025);
  }
  return est;
}

TrialResult memory_trial(const BlockHardDecoder& dec, double p_eff, uint64_t seed,
                         uint64_t index) {
  check_rate(p_eff);
  const CssCode& code = dec.code();
  std::mt19937_64 rng = trial_rng(seed, index);
  const PauliOperator e = sample_pauli(PauliChannel::depolarizing(p_eff), code.n, rng);

  BlockDecodeResult r = dec.decode(css_syndrome(code, e));
  PauliOperator residual = e * r.estimate;
  if (css_syndrome(code, residual).any())
    throw std::logic_error("memory_trial: correction does not reproduce the syndrome");

  TrialResult t;
  t.index = index;
  t.error_weight = (e.x | e.z).weight();
  t.decoder_fallback = r.x_detected || r.z_detected;
  t.action = logical_action(code, residual);
  t.success = t.action.trivial();
  return t;
}

TrialResult memory_trial(const TwoLevelHardDecoder& dec, double p_eff, uint64_t seed,
                         uint64_t index) {
  check_rate(p_eff);
  const ConcatCode& cc = dec.code();
  std::mt19937_64 rng = trial_rng(seed, index);
  const PauliOperator e =
      sample_pauli(PauliChannel::depolarizing(p_eff), cc.physical_qubits(), rng);

  ErrorDecomposition decomp = decompose_error(cc, e);
  HardDecodeOutcome out = dec.decode(decomp.tree);
  PauliOperator residual = e * out.estimate;
  ErrorDecomposition check = decompose_error(cc, residual);
  for (const auto& level : check.tree.levels)
    for (const BitVec& s : level)
      if (s.any())
        throw std::logic_error("memory_trial: correction does not reproduce the syndrome tree");

  TrialResult t;
  t.index = index;
  t.error_weight = (e.x | e.z).weight();
  t.decoder_fallback = out.inner_fallbacks + out.outer_fallbacks > 0;
  t.action = check.top_action;
  t.success = t.action.trivial();
  return t;
}

RateEstimate run_memory_trials(const BlockHardDecoder& dec, double p_eff, uint64_t trials,
                               uint64_t seed, const RunOptions& opt,
                               std::vector<TrialResult>* audit) {
  check_rate(p_eff);
  return run_trials(trials, seed, opt, audit,
                    [&](uint64_t i) { return memory_trial(dec, p_eff, seed, i); });
}

RateEstimate run_memory_trials(const TwoLevelHardDecoder& dec, double p_eff, uint64_t trials,
                               uint64_t seed, const RunOptions& opt,
                               std::vector<TrialResult>* audit) {
  check_rate(p_eff);
  return run_trials(trials, seed, opt, audit,
                    [&](uint64_t i) { return memory_trial(dec, p_eff, seed, i); });
}

TrialResult rm_trial(const ConcatCode& cc, double p_eff, uint64_t seed, uint64_t index) {
  check_rate(p_eff);
  std::mt19937_64 rng = trial_rng(seed, index);
  const PauliOperator e =
      sample_pauli(PauliChannel::depolarizing(p_eff), cc.physical_qubits(), rng);
  return classify_soft(cc, e, p_eff, index);
}

RateEstimate run_rm_trials(size_t levels, double p_eff, uint64_t trials, uint64_t seed,
                           const RunOptions& opt, std::vector<TrialResult>* audit,
                           bool allow_slow) {
  check_rate(p_eff);
  const ConcatCode cc = rm_stack(levels, allow_slow);
  return run_trials(trials, seed, opt, audit,
                    [&](uint64_t i) { return rm_trial(cc, p_eff, seed, i); });
}

TrialResult fixed_weight_trial(const ConcatCode& cc, size_t weight, FixedWeightType type,
                               double p_eff, uint64_t seed, uint64_t index) {
  check_rate(p_eff);
  const size_t n = cc.physical_qubits();
  if (weight > n) throw std::invalid_argument("fixed_weight_trial: weight exceeds qubit count");
  std::mt19937_64 rng = trial_rng(seed, index);

  // Partial Fisher-Yates over qubit indices picks the support uniformly.
  std::vector<uint32_t> idx(n);
  for (size_t i = 0; i < n; ++i) idx[i] = uint32_t(i);
  BitVec x(n), z(n);
  for (size_t i = 0; i < weight; ++i) {
    const size_t j = i + size_t(rng() % (n - i));
    std::swap(idx[i], idx[j]);
    const size_t q = idx[i];
    if (type == FixedWeightType::kZOnly) {
      z.set(q, true);
    } else {
      switch (rng() % 3) {
        case 0: x.set(q, true); break;
        case 1: x.set(q, true); z.set(q, true); break;
        default: z.set(q, true); break;
      }
    }
  }
  return classify_soft(cc, PauliOperator(x, z), p_eff, index);
}

RateEstimate run_fixed_weight_trials(size_t levels, size_t weight, FixedWeightType type,
                                     double p_eff, uint64_t trials, uint64_t seed,
                                     const RunOptions& opt, std::vector<TrialResult>* audit,
                                     bool allow_slow) {
  check_rate(p_eff);
  const ConcatCode cc = rm_stack(levels, allow_slow);
  return run_trials(trials, seed, opt, audit, [&](uint64_t i) {
    return fixed_weight_trial(cc, weight, type, p_eff, seed, i);
  });
}

double analytic_bound(size_t n, size_t d, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("analytic_bound: p outside [0, 1]");
  if (n == 0 || d == 0) throw std::invalid_argument("analytic_bound: n and d must be positive");
  const size_t t = (d - 1) / 2;
  if (t >= n) return 0.0;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;  // the w = n term alone

  const double lp = std::log(p), lq = std::log1p(-p);
  const double lgn = std::lgamma(double(n) + 1.0);
  double sum = 0.0;
  for (size_t w = t + 1; w <= n; ++w) {
    const double lterm = lgn - std::lgamma(double(w) + 1.0) - std::lgamma(double(n - w) + 1.0) +
                         double(w) * lp + double(n - w) * lq;
    sum += std::exp(lterm);
  }
  return std::min(sum, 1.0);
}

double rm_upper_bound(double p_eff, const RmBoundInputs& rates) {
  if (!(p_eff > 0.0 && p_eff < 1.0))
    throw std::invalid_argument("rm_upper_bound: p_eff outside (0, 1)");
  for (double r : {rates.p_z34, rates.p_z50})
    if (!(r >= 0.0 && r <= 1.0))
      throw std::invalid_argument("rm_upper_bound: conditional rate outside [0, 1]");

  const size_t n = 3375;
  const double lp = std::log(p_eff), lq = std::log1p(-p_eff);
  const double lgn = std::lgamma(double(n) + 1.0);
  const double lw = std::log(2.0 / 3.0);
  auto log_binom_term = [&](size_t w) {
    return lgn - std::lgamma(double(w) + 1.0) - std::lgamma(double(n - w) + 1.0) +
           double(w) * lp + double(n - w) * lq;
  };

  double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
  for (size_t w = 14; w <= 34; ++w) s1 += std::exp(log_binom_term(w) + double(w) * lw);
  for (size_t w = 35; w <= 50; ++w) s2 += std::exp(log_binom_term(w) + double(w) * lw);
  for (size_t w = 51; w <= 100; ++w) s3 += std::exp(log_binom_term(w) + double(w) * lw);
  for (size_t w = 101; w <= n; ++w) s4 += std::exp(log_binom_term(w));
  return rates.p_z34 * s1 + rates.p_z50 * s2 + s3 + s4;
}

double LoglogFit::at(double p) const {
  return std::pow(10.0, intercept + slope * std::log10(p));
}

LoglogFit loglog_fit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw std::invalid_argument("loglog_fit: need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [p, rate] : points) {
    if (!(p > 0.0) || !(rate > 0.0))
      throw std::invalid_argument("loglog_fit: points must have positive p and rate");
    const double x = std::log10(p), y = std::log10(rate);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = double(points.size());
  const double var = sxx - sx * sx / m;
  if (!(var > 1e-18)) throw std::invalid_argument("loglog_fit: degenerate abscissae");
  LoglogFit fit;
  fit.slope = (sxy - sx * sy / m) / var;
  fit.intercept = (sy - fit.slope * sx) / m;
  return fit;
}

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::string out = "p,p_eff,code,trials,failures,rate,ci_lo,ci_hi,seed\n";
  for (const ResultRow& r : rows) {
    append_double(out, r.p);
    out += ',';
    append_double(out, r.p_eff);
    out += ',';
    out += r.code;
    out += ',';
    out += std::to_string(r.estimate.trials);
    out += ',';
    out += std::to_string(r.estimate.failures);
    out += ',';
    append_double(out, r.estimate.rate);
    out += ',';
    append_double(out, r.estimate.ci_lo);
    out += ',';
    append_double(out, r.estimate.ci_hi);
    out += ',';
    out += std::to_string(r.estimate.seed);
    out += '\n';
  }
  return out;
}

std::string to_json(const std::vector<ResultRow>& rows,
                    const std::vector<std::pair<std::string, std::string>>& config) {
  nlohmann::ordered_json doc;
  doc["config"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config) doc["config"][k] = v;
  doc["results"] = nlohmann::ordered_json::array();
  for (const ResultRow& r : rows) {
    nlohmann::ordered_json row;
    row["p"] = format_guard(r.p);
    row["p_eff"] = format_guard(r.p_eff);
    row["code"] = r.code;
    row["trials"] = r.estimate.trials;
    row["failures"] = r.estimate.failures;
    row["rate"] = format_guard(r.estimate.rate);
    row["ci_lo"] = format_guard(r.estimate.ci_lo);
    row["ci_hi"] = format_guard(r.estimate.ci_hi);
    row["seed"] = r.estimate.seed;
    doc["results"].push_back(std::move(row));
  }
  return doc.dump(2) + "\n";
}

}  // namespace blockqec
