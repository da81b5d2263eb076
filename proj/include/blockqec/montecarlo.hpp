#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "blockqec/channel.hpp"
#include "blockqec/hard_decoder.hpp"
#include "blockqec/soft_decoder.hpp"

namespace blockqec {

// Engine for trial `index` of a run keyed by `seed`: a splitmix64 step
// whitens the pair into the mt19937_64 seed. Trials are independent of how
// the index range is sharded across workers, so any job count replays the
// same run.
std::mt19937_64 trial_rng(uint64_t seed, uint64_t index);

// One decoding trial. The stored action is the logical action of
// error * correction, so success == action.trivial() by construction; the
// invariant is re-checked post hoc from replayed trials in the tests.
struct TrialResult {
  uint64_t index = 0;
  size_t error_weight = 0;
  bool decoder_fallback = false;  // some bounded-distance side gave up
  LogicalAction action;
  bool success = true;
};

struct RateEstimate {
  uint64_t trials = 0;
  uint64_t failures = 0;
  uint64_t seed = 0;
  double rate = 0.0;
  // Exact binomial (Clopper-Pearson) 95% interval; a run with zero failures
  // (or zero successes) uses the one-sided 95% bound on the open end.
  double ci_lo = 0.0;
  double ci_hi = 1.0;
};
RateEstimate make_rate_estimate(uint64_t trials, uint64_t failures, uint64_t seed);

struct RunOptions {
  unsigned jobs = 1;
  size_t audit_stride = 0;  // when nonzero, keep every stride-th TrialResult
};

// Depolarizing(p_eff) memory trial against a hard decoder, for one CSS block
// or a two-level concatenation. Both throw logic_error if the correction
// fails to reproduce the measured syndrome (a decoder contract violation).
TrialResult memory_trial(const BlockHardDecoder& dec, double p_eff, uint64_t seed, uint64_t index);
TrialResult memory_trial(const TwoLevelHardDecoder& dec, double p_eff, uint64_t seed,
                         uint64_t index);

RateEstimate run_memory_trials(const BlockHardDecoder& dec, double p_eff, uint64_t trials,
                               uint64_t seed, const RunOptions& opt = {},
                               std::vector<TrialResult>* audit = nullptr);
RateEstimate run_memory_trials(const TwoLevelHardDecoder& dec, double p_eff, uint64_t trials,
                               uint64_t seed, const RunOptions& opt = {},
                               std::vector<TrialResult>* audit = nullptr);

// Depolarizing(p_eff) trial on a k=1 concatenation stack under exact MAP
// soft decoding; classification compares the decoder's logical estimate to
// the sampled error's true logical symbol.
TrialResult rm_trial(const ConcatCode& cc, double p_eff, uint64_t seed, uint64_t index);

// Self-concatenated 15-qubit blocks, `levels` deep. Three levels decode
// 3375 qubits per trial and is gated behind allow_slow.
RateEstimate run_rm_trials(size_t levels, double p_eff, uint64_t trials, uint64_t seed,
                           const RunOptions& opt = {}, std::vector<TrialResult>* audit = nullptr,
                           bool allow_slow = false);

// Errors of exactly `weight` qubits on uniformly chosen supports, Z on every
// chosen qubit or a uniform non-identity Pauli; the decoder still runs with
// depolarizing(p_eff) priors, which is the conditional-rate experiment the
// weight-stratified bound consumes.
enum class FixedWeightType { kZOnly, kAny };
TrialResult fixed_weight_trial(const ConcatCode& cc, size_t weight, FixedWeightType type,
                               double p_eff, uint64_t seed, uint64_t index);
RateEstimate run_fixed_weight_trials(size_t levels, size_t weight, FixedWeightType type,
                                     double p_eff, uint64_t trials, uint64_t seed,
                                     const RunOptions& opt = {},
                                     std::vector<TrialResult>* audit = nullptr,
                                     bool allow_slow = false);

// Tail of the binomial: probability of more than t = (d-1)/2 errors among n
// qubits at rate p, the generic bounded-distance failure bound. Evaluated in
// the log domain so the 1e-24-scale values keep full relative precision.
double analytic_bound(size_t n, size_t d, double p);

// Weight-stratified bound for the 3-level 15-qubit stack (3375 qubits,
// Z-distance 27): strata [14,34] and [35,50] are scaled by measured
// conditional Z-error rates at the stratum's top weight, [51,100] assumes
// failure but keeps the (2/3)^w support-type factor, and the >100 tail is
// the plain binomial. Supplying rate 1 for both strata gives the worst case.
struct RmBoundInputs {
  double p_z34 = 1.0;  // conditional logical rate for weight-34 Z errors
  double p_z50 = 1.0;  // conditional logical rate for weight-50 Z errors
};
double rm_upper_bound(double p_eff, const RmBoundInputs& rates);

// Least squares in log10-log10 through (p, rate) points; extrapolation for
// the regimes sampling cannot reach.
struct LoglogFit {
  double slope = 0.0;
  double intercept = 0.0;  // log10 rate at p = 1
  double at(double p) const;
};
LoglogFit loglog_fit(const std::vector<std::pair<double, double>>& points);

// Result emission. CSV columns are fixed; JSON echoes the full run config
// next to the rows. Both are deterministic byte-for-byte given equal inputs.
struct ResultRow {
  double p = 0.0;  // underlying physical rate; 0 when the run is keyed on p_eff alone
  double p_eff = 0.0;
  std::string code;
  RateEstimate estimate;
};
std::string to_csv(const std::vector<ResultRow>& rows);
std::string to_json(const std::vector<ResultRow>& rows,
                    const std::vector<std::pair<std::string, std::string>>& config);

}  // namespace blockqec
