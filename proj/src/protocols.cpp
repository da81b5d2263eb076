#include "blockqec/protocols.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

#include "blockqec/gf2mat.hpp"

namespace blockqec {

namespace {

constexpr uint8_t kPauliX = 1;
constexpr uint8_t kPauliY = 2;
constexpr uint8_t kPauliZ = 3;

PauliOperator single_pauli(size_t total, size_t qubit, uint8_t code) {
  PauliOperator p(total);
  switch (code) {
    case 0:
      break;
    case kPauliX:
      p.set_pauli(qubit, 'X');
      break;
    case kPauliY:
      p.set_pauli(qubit, 'Y');
      break;
    case kPauliZ:
      p.set_pauli(qubit, 'Z');
      break;
    default:
      throw std::invalid_argument("single_pauli: code out of range");
  }
  return p;
}

// Product of the selected logical X rows, then the selected logical Z rows,
// promoted to a Hermitian operator: an odd X/Z support overlap means the
// plain product squares to -1, fixed by one factor of i.
PauliOperator hermitian_product(std::vector<PauliOperator> factors) {
  if (factors.empty()) throw std::invalid_argument("hermitian_product: empty");
  PauliOperator acc = factors.front();
  for (size_t i = 1; i < factors.size(); ++i) acc = acc * factors[i];
  if (!acc.is_hermitian()) acc.set_phase(uint8_t(acc.phase() + 1));
  return acc;
}

PauliOperator block_logical_pauli(const CssCode& code, const BitVec& u, const BitVec& v) {
  std::vector<PauliOperator> factors;
  for (size_t m = 0; m < code.k; ++m)
    if (u.get(m)) factors.push_back(code.logical_x_op(m));
  for (size_t m = 0; m < code.k; ++m)
    if (v.get(m)) factors.push_back(code.logical_z_op(m));
  if (factors.empty()) return PauliOperator(code.n);
  return hermitian_product(std::move(factors));
}

std::vector<PauliOperator> block_stabilizer_rows(const CssCode& code) {
  std::vector<PauliOperator> rows;
  for (size_t i = 0; i < code.hx.num_rows(); ++i) rows.push_back(code.x_stabilizer(i));
  for (size_t i = 0; i < code.hz.num_rows(); ++i) rows.push_back(code.z_stabilizer(i));
  return rows;
}

}  // namespace

CodeRegister::CodeRegister(std::vector<CssCode> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw std::invalid_argument("CodeRegister: no blocks");
  qubit_offset_.push_back(0);
  logical_offset_.push_back(0);
  for (const CssCode& c : blocks_) {
    if (c.logical_x.num_rows() != c.k || c.logical_z.num_rows() != c.k)
      throw std::invalid_argument("CodeRegister: block without solved logicals");
    qubit_offset_.push_back(qubit_offset_.back() + c.n);
    logical_offset_.push_back(logical_offset_.back() + c.k);
  }
}

std::pair<size_t, size_t> CodeRegister::locate(size_t g) const {
  if (g >= num_logicals()) throw std::invalid_argument("CodeRegister: logical index out of range");
  size_t b = 0;
  while (logical_offset_[b + 1] <= g) ++b;
  return {b, g - logical_offset_[b]};
}

PauliOperator CodeRegister::logical_x(size_t g) const {
  auto [b, m] = locate(g);
  return embed_pauli(blocks_[b].logical_x_op(m), num_qubits(), qubit_offset_[b]);
}

PauliOperator CodeRegister::logical_z(size_t g) const {
  auto [b, m] = locate(g);
  return embed_pauli(blocks_[b].logical_z_op(m), num_qubits(), qubit_offset_[b]);
}

PauliOperator CodeRegister::logical_y(size_t g) const {
  PauliOperator y = logical_x(g) * logical_z(g);
  y.set_phase(uint8_t(y.phase() + 1));
  return y;
}

PauliOperator CodeRegister::logical_pauli(const BitVec& u, const BitVec& v) const {
  const size_t kk = num_logicals();
  if (u.size() != kk || v.size() != kk)
    throw std::invalid_argument("CodeRegister::logical_pauli: mask size mismatch");
  std::vector<PauliOperator> factors;
  for (size_t g = 0; g < kk; ++g)
    if (u.get(g)) factors.push_back(logical_x(g));
  for (size_t g = 0; g < kk; ++g)
    if (v.get(g)) factors.push_back(logical_z(g));
  if (factors.empty()) return PauliOperator(num_qubits());
  return hermitian_product(std::move(factors));
}

std::vector<PauliOperator> CodeRegister::stabilizer_generators() const {
  std::vector<PauliOperator> rows;
  for (size_t b = 0; b < blocks_.size(); ++b)
    for (const PauliOperator& r : block_stabilizer_rows(blocks_[b]))
      rows.push_back(embed_pauli(r, num_qubits(), qubit_offset_[b]));
  return rows;
}

Tableau CodeRegister::zero_state() const {
  Tableau t = logical_zero_state(blocks_[0]);
  for (size_t b = 1; b < blocks_.size(); ++b) t = tensor_product(t, logical_zero_state(blocks_[b]));
  return t;
}

Tableau logical_zero_state(const CssCode& code) {
  std::vector<PauliOperator> gens = block_stabilizer_rows(code);
  for (size_t m = 0; m < code.k; ++m) gens.push_back(code.logical_z_op(m));
  return tableau_from_stabilizers(gens);
}

Tableau logical_plus_state(const CssCode& code) {
  std::vector<PauliOperator> gens = block_stabilizer_rows(code);
  for (size_t m = 0; m < code.k; ++m) gens.push_back(code.logical_x_op(m));
  return tableau_from_stabilizers(gens);
}

Tableau x_parity_ancilla(const CssCode& code, const BitVec& u) {
  if (u.size() != code.k) throw std::invalid_argument("x_parity_ancilla: mask size mismatch");
  if (!u.any()) return logical_zero_state(code);
  std::vector<PauliOperator> gens = block_stabilizer_rows(code);
  gens.push_back(block_logical_pauli(code, u, BitVec(code.k)));
  // Z-type logicals indexed by the orthogonal complement of u keep their
  // definite value on |0..0> + |u>.
  Gf2Matrix u_row(0, code.k);
  u_row.append_row(u);
  for (const BitVec& w : u_row.kernel_basis())
    gens.push_back(block_logical_pauli(code, BitVec(code.k), w));
  return tableau_from_stabilizers(gens);
}

Tableau z_parity_ancilla(const CssCode& code, const BitVec& v) {
  if (v.size() != code.k) throw std::invalid_argument("z_parity_ancilla: mask size mismatch");
  if (!v.any()) return logical_plus_state(code);
  std::vector<PauliOperator> gens = block_stabilizer_rows(code);
  gens.push_back(block_logical_pauli(code, BitVec(code.k), v));
  Gf2Matrix v_row(0, code.k);
  v_row.append_row(v);
  for (const BitVec& w : v_row.kernel_basis())
    gens.push_back(block_logical_pauli(code, w, BitVec(code.k)));
  return tableau_from_stabilizers(gens);
}

Tableau xz_parity_ancilla(const CssCode& code, size_t i, size_t j) {
  if (i >= code.k || j >= code.k) throw std::invalid_argument("xz_parity_ancilla: index out of range");
  const size_t n = code.n;
  const size_t total = 2 * n;
  auto on_x_block = [&](const PauliOperator& p) { return embed_pauli(p, total, 0); };
  auto on_z_block = [&](const PauliOperator& p) { return embed_pauli(p, total, n); };

  std::vector<PauliOperator> gens;
  for (const PauliOperator& r : block_stabilizer_rows(code)) {
    gens.push_back(on_x_block(r));
    gens.push_back(on_z_block(r));
  }
  PauliOperator x_side = code.logical_x_op(i);
  if (i == j) {
    x_side = x_side * code.logical_z_op(i);
    x_side.set_phase(uint8_t(x_side.phase() + 1));  // Hermitian Y on logical i
  }
  gens.push_back(on_x_block(x_side) * on_z_block(code.logical_z_op(j)));
  gens.push_back(on_x_block(code.logical_z_op(i)) * on_z_block(code.logical_x_op(j)));
  for (size_t m = 0; m < code.k; ++m) {
    if (m != i) gens.push_back(on_x_block(code.logical_z_op(m)));
    if (m != j) gens.push_back(on_z_block(code.logical_x_op(m)));
  }
  return tableau_from_stabilizers(gens);
}

namespace {

// Local model of one extraction round: data block on [0, n), X ancilla on
// [n, 2n), Z ancilla on [2n, 3n). The copy layer is CNOT(data q -> Z anc q),
// the extract layer CNOT(X anc q -> data q).
PauliOperator pull_through_extract(PauliOperator p, size_t n) {
  for (size_t q = 0; q < n; ++q) p = conjugate_cnot(std::move(p), n + q, q);
  return p;
}

PauliOperator pull_through_copy(PauliOperator p, size_t n) {
  for (size_t q = 0; q < n; ++q) p = conjugate_cnot(std::move(p), q, 2 * n + q);
  return p;
}

// Calibration sign of the parity readout: the measured ancilla parities pull
// back through both CNOT layers to obs (on the data) times a fixed ancilla
// operator K; the reported outcome is the raw parity times K's value on the
// prepared ancilla state.
int parity_calibration(const PauliOperator& obs, const Tableau& ancilla, size_t n) {
  PauliOperator parity(3 * n);
  for (size_t q = 0; q < n; ++q) {
    if (obs.x.get(q)) parity.set_pauli(n + q, 'X');
    if (obs.z.get(q)) parity.set_pauli(2 * n + q, 'Z');
  }
  PauliOperator pulled = pull_through_copy(pull_through_extract(std::move(parity), n), n);
  PauliOperator k = embed_pauli(obs, 3 * n, 0) * pulled;
  if (k.x.slice(0, n).any() || k.z.slice(0, n).any())
    throw std::logic_error("parity_calibration: ancilla state does not read this observable");
  PauliOperator k_anc(k.x.slice(n, 2 * n), k.z.slice(n, 2 * n));
  k_anc.set_phase(k.phase());
  if (!k_anc.is_hermitian()) throw std::logic_error("parity_calibration: non-Hermitian leftover");
  int value = ancilla.expectation(k_anc);
  if (value == 0) throw std::logic_error("parity_calibration: leftover not fixed by the ancillas");
  return value;
}

void apply_fault(Tableau& joint, size_t total, size_t q1, uint8_t p1, size_t q2, uint8_t p2) {
  PauliOperator f = single_pauli(total, q1, p1);
  if (p2 != 0) f = f * single_pauli(total, q2, p2);
  if (!f.is_identity()) joint.apply_pauli(f);
}

}  // namespace

ExtractionOutcome steane_extraction(Tableau& state, const CodeRegister& reg, size_t b,
                                    const NoiseParams& noise, std::mt19937_64& rng,
                                    const std::optional<LogicalObservable>& observable,
                                    const std::vector<InjectedFault>& faults) {
  const CssCode& code = reg.block(b);
  const size_t n = code.n;
  const size_t big_n = reg.num_qubits();
  const size_t offset = reg.block_offset(b);
  if (state.num_qubits() != big_n)
    throw std::invalid_argument("steane_extraction: state size mismatch");

  // Ancilla preparation. Plain syndrome extraction reads the X generators
  // through an all-|0> block and the Z generators through an all-|+> block;
  // an observable swaps in the matching parity ancillas.
  Tableau ancilla(1);
  PauliOperator obs_rep(n);
  int calibration = +1;
  if (observable) {
    const BitVec& u = observable->u;
    const BitVec& v = observable->v;
    if (u.size() != code.k || v.size() != code.k)
      throw std::invalid_argument("steane_extraction: observable mask size mismatch");
    if (!u.any() && !v.any()) throw std::invalid_argument("steane_extraction: empty observable");
    if (!v.any()) {
      ancilla = tensor_product(x_parity_ancilla(code, u), logical_plus_state(code));
    } else if (!u.any()) {
      ancilla = tensor_product(logical_zero_state(code), z_parity_ancilla(code, v));
    } else if (u.weight() == 1 && v.weight() == 1) {
      size_t i = 0, j = 0;
      while (!u.get(i)) ++i;
      while (!v.get(j)) ++j;
      ancilla = xz_parity_ancilla(code, i, j);
    } else {
      throw std::invalid_argument("steane_extraction: unsupported observable form");
    }
    obs_rep = block_logical_pauli(code, u, v);
    calibration = parity_calibration(obs_rep, ancilla, n);
  } else {
    ancilla = tensor_product(logical_zero_state(code), logical_plus_state(code));
  }

  Tableau joint = tensor_product(state, ancilla);
  const size_t total = big_n + 2 * n;
  const size_t x_anc = big_n;
  const size_t z_anc = big_n + n;

  auto faults_at = [&](InjectedFault::Where where, size_t q) {
    std::vector<const InjectedFault*> hits;
    for (const InjectedFault& f : faults)
      if (f.where == where && f.qubit == q) hits.push_back(&f);
    return hits;
  };

  // Memory noise on the data block, then preparation noise on the ancillas.
  if (noise.eps > 0)
    joint.apply_pauli(embed_pauli(sample_pauli(PauliChannel::depolarizing(noise.eps), n, rng), total, offset));
  if (noise.r > 0)
    joint.apply_pauli(embed_pauli(sample_pauli(PauliChannel::depolarizing(noise.r), 2 * n, rng), total, x_anc));
  for (size_t q = 0; q < n; ++q) {
    for (const InjectedFault* f : faults_at(InjectedFault::Where::kDataBefore, q))
      apply_fault(joint, total, offset + q, f->pauli_first, 0, 0);
    for (const InjectedFault* f : faults_at(InjectedFault::Where::kXAncillaPrep, q))
      apply_fault(joint, total, x_anc + q, f->pauli_first, 0, 0);
    for (const InjectedFault* f : faults_at(InjectedFault::Where::kZAncillaPrep, q))
      apply_fault(joint, total, z_anc + q, f->pauli_first, 0, 0);
  }

  // Copy layer: data -> Z ancilla.
  for (size_t q = 0; q < n; ++q) {
    joint.apply_cnot(offset + q, z_anc + q);
    if (noise.p_g2 > 0) {
      TwoQubitPauli e = sample_two_qubit_gate_error(noise.p_g2, rng);
      apply_fault(joint, total, offset + q, e.first, z_anc + q, e.second);
    }
    for (const InjectedFault* f : faults_at(InjectedFault::Where::kAfterCopyGate, q))
      apply_fault(joint, total, offset + q, f->pauli_first, z_anc + q, f->pauli_second);
  }
  // Extract layer: X ancilla -> data.
  for (size_t q = 0; q < n; ++q) {
    joint.apply_cnot(x_anc + q, offset + q);
    if (noise.p_g2 > 0) {
      TwoQubitPauli e = sample_two_qubit_gate_error(noise.p_g2, rng);
      apply_fault(joint, total, x_anc + q, e.first, offset + q, e.second);
    }
    for (const InjectedFault* f : faults_at(InjectedFault::Where::kAfterExtractGate, q))
      apply_fault(joint, total, x_anc + q, f->pauli_first, offset + q, f->pauli_second);
  }

  ExtractionOutcome out;
  out.x_bits = BitVec(n);
  out.z_bits = BitVec(n);
  for (size_t q = 0; q < n; ++q) {
    int raw = joint.measure(PauliOperator::single(total, x_anc + q, 'X'), rng);
    bool bit = raw < 0;
    if (noise.p_m > 0 && uniform_unit(rng) < noise.p_m) bit = !bit;
    if (faults_at(InjectedFault::Where::kXMeasurementFlip, q).size() % 2 == 1) bit = !bit;
    out.x_bits.set(q, bit);
  }
  for (size_t q = 0; q < n; ++q) {
    int raw = joint.measure(PauliOperator::single(total, z_anc + q, 'Z'), rng);
    bool bit = raw < 0;
    if (noise.p_m > 0 && uniform_unit(rng) < noise.p_m) bit = !bit;
    if (faults_at(InjectedFault::Where::kZMeasurementFlip, q).size() % 2 == 1) bit = !bit;
    out.z_bits.set(q, bit);
  }

  out.syndrome_x = BitVec(code.hx.num_rows());
  for (size_t r = 0; r < code.hx.num_rows(); ++r) out.syndrome_x.set(r, code.hx.row(r).dot(out.x_bits));
  out.syndrome_z = BitVec(code.hz.num_rows());
  for (size_t r = 0; r < code.hz.num_rows(); ++r) out.syndrome_z.set(r, code.hz.row(r).dot(out.z_bits));

  if (observable) {
    bool parity = (obs_rep.x & out.x_bits).weight() % 2 == 1;
    parity ^= (obs_rep.z & out.z_bits).weight() % 2 == 1;
    out.logical_outcome = (parity ? -1 : +1) * calibration;
  }

  state = restrict_to_qubits(joint, 0, big_n);
  return out;
}

int measure_logical(Tableau& state, const CodeRegister& reg, const BitVec& u, const BitVec& v,
                    std::mt19937_64& rng) {
  return state.measure(reg.logical_pauli(u, v), rng);
}

EquivalenceReport effective_error_equivalence_check(const CssCode& code, size_t double_fault_trials,
                                                    uint64_t seed) {
  const size_t n = code.n;
  CodeRegister reg({code});
  const NoiseParams quiet;

  using W = InjectedFault::Where;
  std::vector<InjectedFault> locations;
  for (size_t q = 0; q < n; ++q) {
    for (uint8_t p = 1; p <= 3; ++p) {
      locations.push_back({W::kDataBefore, q, p, 0});
      locations.push_back({W::kXAncillaPrep, q, p, 0});
      locations.push_back({W::kZAncillaPrep, q, p, 0});
    }
    for (uint8_t pair = 1; pair < 16; ++pair) {
      locations.push_back({W::kAfterCopyGate, q, uint8_t(pair >> 2), uint8_t(pair & 3)});
      locations.push_back({W::kAfterExtractGate, q, uint8_t(pair >> 2), uint8_t(pair & 3)});
    }
    locations.push_back({W::kXMeasurementFlip, q, 0, 0});
    locations.push_back({W::kZMeasurementFlip, q, 0, 0});
  }

  // Fault -> operator at the end of the circuit, on the local 3n layout.
  auto propagate = [&](const InjectedFault& f) {
    PauliOperator op(3 * n);
    bool through_copy = false, through_extract = false;
    switch (f.where) {
      case W::kDataBefore:
        op = single_pauli(3 * n, f.qubit, f.pauli_first);
        through_copy = through_extract = true;
        break;
      case W::kXAncillaPrep:
        op = single_pauli(3 * n, n + f.qubit, f.pauli_first);
        through_copy = through_extract = true;
        break;
      case W::kZAncillaPrep:
        op = single_pauli(3 * n, 2 * n + f.qubit, f.pauli_first);
        through_copy = through_extract = true;
        break;
      case W::kAfterCopyGate:
        op = single_pauli(3 * n, f.qubit, f.pauli_first) *
             single_pauli(3 * n, 2 * n + f.qubit, f.pauli_second);
        through_extract = true;
        break;
      case W::kAfterExtractGate:
        op = single_pauli(3 * n, n + f.qubit, f.pauli_first) *
             single_pauli(3 * n, f.qubit, f.pauli_second);
        break;
      default:
        break;
    }
    if (through_copy) {
      for (size_t q = 0; q < n; ++q) op = conjugate_cnot(std::move(op), q, 2 * n + q);
    }
    if (through_extract) {
      for (size_t q = 0; q < n; ++q) op = conjugate_cnot(std::move(op), n + q, q);
    }
    return op;
  };

  // Two probe inputs: |0>_L everywhere and a scrambled code state.
  std::vector<Tableau> inputs;
  inputs.push_back(reg.zero_state());
  {
    Tableau t = apply_logical_clifford(reg.zero_state(), reg, LogicalGate::kHadamard, 0);
    t = apply_logical_clifford(t, reg, LogicalGate::kPhase, 0);
    if (code.k >= 2) t = apply_logical_clifford(t, reg, LogicalGate::kCnot, 0, 1);
    inputs.push_back(std::move(t));
  }

  std::mt19937_64 rng(seed);
  EquivalenceReport report;

  auto describe = [&](const std::vector<InjectedFault>& fs) {
    std::ostringstream os;
    const char* names[] = {"data", "xprep", "zprep", "copy", "extract", "xflip", "zflip"};
    for (const InjectedFault& f : fs)
      os << names[size_t(f.where)] << "[" << f.qubit << "](" << int(f.pauli_first) << ","
         << int(f.pauli_second) << ") ";
    return os.str();
  };

  auto check_case = [&](const std::vector<InjectedFault>& fs) {
    PauliOperator end_op(3 * n);
    BitVec flips_x(n), flips_z(n);
    for (const InjectedFault& f : fs) {
      if (f.where == W::kXMeasurementFlip) {
        flips_x.flip(f.qubit);
      } else if (f.where == W::kZMeasurementFlip) {
        flips_z.flip(f.qubit);
      } else {
        end_op = end_op * propagate(f);
      }
    }
    // Z or Y components on the X ancilla invert its X-basis record; X or Y
    // on the Z ancilla invert the Z-basis record. What stays on the data is
    // the residual error after the round.
    for (size_t q = 0; q < n; ++q) {
      if (end_op.z.get(n + q)) flips_x.flip(q);
      if (end_op.x.get(2 * n + q)) flips_z.flip(q);
    }
    PauliOperator residue(end_op.x.slice(0, n), end_op.z.slice(0, n));

    BitVec want_sx(code.hx.num_rows());
    for (size_t r = 0; r < code.hx.num_rows(); ++r) want_sx.set(r, code.hx.row(r).dot(flips_x));
    BitVec want_sz(code.hz.num_rows());
    for (size_t r = 0; r < code.hz.num_rows(); ++r) want_sz.set(r, code.hz.row(r).dot(flips_z));

    bool ok = true;
    for (const Tableau& input : inputs) {
      Tableau run = input;
      ExtractionOutcome got = steane_extraction(run, reg, 0, quiet, rng, std::nullopt, fs);
      Tableau want = input;
      if (!residue.is_identity()) want.apply_pauli(residue);
      if (got.syndrome_x != want_sx || got.syndrome_z != want_sz || !run.same_state_as(want))
        ok = false;
    }
    ++report.checked;
    if (!ok) {
      ++report.mismatches;
      if (report.failures.size() < 20) report.failures.push_back(describe(fs));
    }
  };

  for (const InjectedFault& f : locations) check_case({f});
  for (size_t trial = 0; trial < double_fault_trials; ++trial) {
    const InjectedFault& a = locations[rng() % locations.size()];
    const InjectedFault& b = locations[rng() % locations.size()];
    check_case({a, b});
  }
  return report;
}

int PauliFrame::adjust(const PauliOperator& m, int raw) const {
  return symplectic_product(correction_, m) ? -raw : raw;
}

void PauliFrame::compose(const PauliOperator& p) { correction_ = p * correction_; }

int framed_expectation(const Tableau& state, const PauliFrame& frame, const PauliOperator& obs) {
  int e = state.expectation(obs);
  if (e == 0) return 0;
  return symplectic_product(frame.correction(), obs) ? -e : e;
}

void discharge_frame(Tableau& state, PauliFrame& frame) {
  if (!frame.correction().is_identity()) state.apply_pauli(frame.correction());
  frame = PauliFrame(state.num_qubits());
}

namespace {

int measure_framed(Tableau& state, PauliFrame& frame, const PauliOperator& m, std::mt19937_64& rng,
                   ProtocolRecord& rec) {
  int raw = state.measure(m, rng);
  rec.outcomes.push_back(raw);
  return frame.adjust(m, raw);
}

void require_logical_zero(const Tableau& state, const PauliFrame& frame, const CodeRegister& reg,
                          size_t slot, const char* who) {
  if (framed_expectation(state, frame, reg.logical_z(slot)) != +1)
    throw std::invalid_argument(std::string(who) + ": slot " + std::to_string(slot) +
                                " is not in logical |0>");
}

BitVec mask(size_t k, std::initializer_list<size_t> bits) {
  BitVec m(k);
  for (size_t b : bits) m.flip(b);
  return m;
}

}  // namespace

ProtocolRecord reset_to_zero(Tableau& state, PauliFrame& frame, const CodeRegister& reg,
                             size_t slot, std::mt19937_64& rng) {
  ProtocolRecord rec;
  int d = measure_framed(state, frame, reg.logical_z(slot), rng, rec);
  if (d < 0) frame.compose(reg.logical_x(slot));
  return rec;
}

ProtocolRecord logical_hadamard(Tableau& state, PauliFrame& frame, const CodeRegister& reg,
                                size_t target, size_t buffer, std::mt19937_64& rng) {
  const size_t kk = reg.num_logicals();
  if (target == buffer) throw std::invalid_argument("logical_hadamard: target equals buffer");
  require_logical_zero(state, frame, reg, buffer, "logical_hadamard");
  ProtocolRecord rec;
  int a = measure_framed(state, frame, reg.logical_pauli(mask(kk, {buffer}), mask(kk, {target})),
                         rng, rec);
  if (a < 0) frame.compose(reg.logical_z(buffer));
  int b = measure_framed(state, frame, reg.logical_x(target), rng, rec);
  if (b < 0) frame.compose(reg.logical_x(buffer));
  ProtocolRecord tail = reset_to_zero(state, frame, reg, target, rng);
  rec.outcomes.insert(rec.outcomes.end(), tail.outcomes.begin(), tail.outcomes.end());
  return rec;
}

ProtocolRecord logical_phase(Tableau& state, PauliFrame& frame, const CodeRegister& reg,
                             size_t target, size_t buffer, std::mt19937_64& rng) {
  const size_t kk = reg.num_logicals();
  if (target == buffer) throw std::invalid_argument("logical_phase: target equals buffer");
  require_logical_zero(state, frame, reg, buffer, "logical_phase");
  ProtocolRecord rec;
  int a = measure_framed(state, frame,
                         reg.logical_pauli(mask(kk, {buffer, target}), mask(kk, {target})), rng, rec);
  if (a < 0) frame.compose(reg.logical_z(buffer));
  int b = measure_framed(state, frame, reg.logical_z(target), rng, rec);
  if (b < 0) {
    frame.compose(reg.logical_x(buffer));
    frame.compose(reg.logical_x(target));
  }
  // Reordering X_target past Z_buffer X_buffer in the tracked image costs a
  // fixed minus sign relative to the ideal S image; absorb it here.
  frame.compose(reg.logical_z(buffer));
  return rec;
}

ProtocolRecord logical_cnot(Tableau& state, PauliFrame& frame, const CodeRegister& reg,
                            size_t control, size_t target, size_t buffer, std::mt19937_64& rng) {
  const size_t kk = reg.num_logicals();
  if (control == target || control == buffer || target == buffer)
    throw std::invalid_argument("logical_cnot: slots must be distinct");
  require_logical_zero(state, frame, reg, buffer, "logical_cnot");
  ProtocolRecord rec;
  int a = measure_framed(state, frame, reg.logical_pauli(mask(kk, {buffer, target}), BitVec(kk)),
                         rng, rec);
  if (a < 0) frame.compose(reg.logical_z(buffer));
  int b = measure_framed(state, frame, reg.logical_pauli(BitVec(kk), mask(kk, {control, target})),
                         rng, rec);
  if (b < 0) {
    frame.compose(reg.logical_x(buffer));
    frame.compose(reg.logical_x(target));
  }
  int c = measure_framed(state, frame, reg.logical_x(control), rng, rec);
  if (c < 0) frame.compose(reg.logical_z(target));
  ProtocolRecord tail = reset_to_zero(state, frame, reg, control, rng);
  rec.outcomes.insert(rec.outcomes.end(), tail.outcomes.begin(), tail.outcomes.end());
  return rec;
}

ProtocolRecord logical_swap(Tableau& state, PauliFrame& frame, const CodeRegister& reg, size_t i,
                            size_t j, size_t buffer, std::mt19937_64& rng) {
  const size_t kk = reg.num_logicals();
  if (i == j || i == buffer || j == buffer)
    throw std::invalid_argument("logical_swap: slots must be distinct");
  require_logical_zero(state, frame, reg, buffer, "logical_swap");
  ProtocolRecord rec;
  int a = measure_framed(state, frame, reg.logical_pauli(mask(kk, {buffer, i, j}), BitVec(kk)),
                         rng, rec);
  if (a < 0) {
    frame.compose(reg.logical_z(i));
    frame.compose(reg.logical_z(j));
  }
  int b = measure_framed(state, frame, reg.logical_pauli(BitVec(kk), mask(kk, {buffer, i, j})),
                         rng, rec);
  if (b < 0) {
    frame.compose(reg.logical_x(i));
    frame.compose(reg.logical_x(j));
  }
  int c = measure_framed(state, frame, reg.logical_x(buffer), rng, rec);
  if (c < 0) {
    frame.compose(reg.logical_z(i));
    frame.compose(reg.logical_z(j));
  }
  ProtocolRecord tail = reset_to_zero(state, frame, reg, buffer, rng);
  rec.outcomes.insert(rec.outcomes.end(), tail.outcomes.begin(), tail.outcomes.end());
  return rec;
}

ProtocolRecord logical_teleport_in(Tableau& state, PauliFrame& frame, const CodeRegister& reg,
                                   size_t payload, size_t processor, size_t buffer,
                                   std::mt19937_64& rng) {
  const size_t kk = reg.num_logicals();
  if (payload == buffer || payload == processor || buffer == processor)
    throw std::invalid_argument("logical_teleport_in: slots must be distinct");
  require_logical_zero(state, frame, reg, processor, "logical_teleport_in");
  require_logical_zero(state, frame, reg, buffer, "logical_teleport_in");
  ProtocolRecord rec;
  int a1 = measure_framed(state, frame,
                          reg.logical_pauli(mask(kk, {processor, buffer}), BitVec(kk)), rng, rec);
  if (a1 < 0) frame.compose(reg.logical_z(processor));
  int b1 = measure_framed(state, frame,
                          reg.logical_pauli(BitVec(kk), mask(kk, {processor, buffer})), rng, rec);
  if (b1 < 0) frame.compose(reg.logical_x(processor));
  int a2 = measure_framed(state, frame,
                          reg.logical_pauli(mask(kk, {buffer, payload}), BitVec(kk)), rng, rec);
  if (a2 < 0) {
    frame.compose(reg.logical_z(processor));
    frame.compose(reg.logical_z(buffer));
  }
  int b2 = measure_framed(state, frame,
                          reg.logical_pauli(BitVec(kk), mask(kk, {buffer, payload})), rng, rec);
  if (b2 < 0) {
    frame.compose(reg.logical_x(processor));
    frame.compose(reg.logical_x(buffer));
  }
  return rec;
}

ProtocolRecord logical_teleport_out(Tableau& state, PauliFrame& frame, const CodeRegister& reg,
                                    size_t payload, size_t processor, size_t buffer,
                                    std::mt19937_64& rng) {
  const size_t kk = reg.num_logicals();
  if (payload == buffer || payload == processor || buffer == processor)
    throw std::invalid_argument("logical_teleport_out: slots must be distinct");
  if (framed_expectation(state, frame, reg.logical_pauli(mask(kk, {buffer, payload}), BitVec(kk))) != +1 ||
      framed_expectation(state, frame, reg.logical_pauli(BitVec(kk), mask(kk, {buffer, payload}))) != +1)
    throw std::invalid_argument("logical_teleport_out: no entangled link on (buffer, payload)");
  ProtocolRecord rec;
  int a3 = measure_framed(state, frame,
                          reg.logical_pauli(mask(kk, {processor, buffer}), BitVec(kk)), rng, rec);
  if (a3 < 0) {
    frame.compose(reg.logical_z(processor));
    frame.compose(reg.logical_z(payload));
  }
  int b3 = measure_framed(state, frame,
                          reg.logical_pauli(BitVec(kk), mask(kk, {processor, buffer})), rng, rec);
  if (b3 < 0) {
    frame.compose(reg.logical_x(processor));
    frame.compose(reg.logical_x(payload));
  }
  return rec;
}

ProtocolRecord logical_teleport(Tableau& state, PauliFrame& frame, const CodeRegister& reg,
                                size_t payload, size_t processor, size_t buffer,
                                std::mt19937_64& rng) {
  ProtocolRecord rec = logical_teleport_in(state, frame, reg, payload, processor, buffer, rng);
  ProtocolRecord back = logical_teleport_out(state, frame, reg, payload, processor, buffer, rng);
  rec.outcomes.insert(rec.outcomes.end(), back.outcomes.begin(), back.outcomes.end());
  return rec;
}

Tableau apply_logical_clifford(const Tableau& state, const CodeRegister& reg, LogicalGate gate,
                               size_t a, size_t b) {
  const size_t big_n = reg.num_qubits();
  const size_t kk = reg.num_logicals();
  if (state.num_qubits() != big_n)
    throw std::invalid_argument("apply_logical_clifford: state size mismatch");
  if (a >= kk) throw std::invalid_argument("apply_logical_clifford: index out of range");
  const bool two_qubit = gate == LogicalGate::kCnot || gate == LogicalGate::kSwap;
  if (two_qubit && (b >= kk || b == a))
    throw std::invalid_argument("apply_logical_clifford: bad second index");

  std::vector<PauliOperator> gens = reg.stabilizer_generators();
  const size_t first_logical = gens.size();
  for (size_t g = 0; g < kk; ++g) {
    gens.push_back(reg.logical_x(g));
    gens.push_back(reg.logical_z(g));
  }
  std::vector<PauliOperator> images = gens;
  auto lx = [&](size_t g) -> PauliOperator& { return images[first_logical + 2 * g]; };
  auto lz = [&](size_t g) -> PauliOperator& { return images[first_logical + 2 * g + 1]; };
  switch (gate) {
    case LogicalGate::kHadamard:
      lx(a) = reg.logical_z(a);
      lz(a) = reg.logical_x(a);
      break;
    case LogicalGate::kPhase:
      lx(a) = reg.logical_y(a);
      break;
    case LogicalGate::kCnot:
      lx(a) = reg.logical_x(a) * reg.logical_x(b);
      lz(b) = reg.logical_z(a) * reg.logical_z(b);
      break;
    case LogicalGate::kSwap:
      lx(a) = reg.logical_x(b);
      lx(b) = reg.logical_x(a);
      lz(a) = reg.logical_z(b);
      lz(b) = reg.logical_z(a);
      break;
  }

  Gf2Matrix rows(0, 2 * big_n);
  for (const PauliOperator& g : gens) rows.append_row(g.x.concat(g.z));
  const Gf2Matrix columns = rows.transposed();

  std::vector<PauliOperator> out_rows;
  for (const PauliOperator& row : state.stabilizers()) {
    auto coeffs = solve_gf2(columns, row.x.concat(row.z));
    if (!coeffs)
      throw std::invalid_argument("apply_logical_clifford: state is not in the code space");
    PauliOperator original(big_n), mapped(big_n);
    for (size_t i = 0; i < gens.size(); ++i) {
      if (!coeffs->get(i)) continue;
      original = original * gens[i];
      mapped = mapped * images[i];
    }
    // row = i^delta * original with delta in {0,..,3}; conjugation keeps the
    // scalar, so the image row is i^delta times the mapped product.
    mapped.set_phase(uint8_t(mapped.phase() + 4 + row.phase() - original.phase()));
    out_rows.push_back(mapped);
  }
  return tableau_from_stabilizers(out_rows);
}

}  // namespace blockqec
