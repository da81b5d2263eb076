#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "blockqec/channel.hpp"
#include "blockqec/css.hpp"
#include "blockqec/tableau.hpp"

namespace blockqec {

// Several CSS blocks laid side by side on one physical register. Qubits of
// block b occupy [block_offset(b), block_offset(b) + n_b); logical qubits are
// numbered globally in block order. All Pauli accessors return operators on
// the full register.
class CodeRegister {
 public:
  explicit CodeRegister(std::vector<CssCode> blocks);

  size_t num_blocks() const { return blocks_.size(); }
  const CssCode& block(size_t b) const { return blocks_.at(b); }
  size_t num_qubits() const { return qubit_offset_.back(); }
  size_t num_logicals() const { return logical_offset_.back(); }
  size_t block_offset(size_t b) const { return qubit_offset_.at(b); }
  size_t logical_offset(size_t b) const { return logical_offset_.at(b); }

  // Global logical index -> (block, index within block).
  std::pair<size_t, size_t> locate(size_t g) const;

  PauliOperator logical_x(size_t g) const;
  PauliOperator logical_z(size_t g) const;
  PauliOperator logical_y(size_t g) const;

  // Hermitian representative of the product over global logicals selected by
  // u (X factors) and v (Z factors): X factors multiplied in ascending index
  // order, then Z factors. When the plain product squares to -1 the result
  // picks up one factor of i so that it squares to +1.
  PauliOperator logical_pauli(const BitVec& u, const BitVec& v) const;

  // All blocks' stabilizer generators, embedded. X-type rows of block 0
  // first, then its Z-type rows, then block 1, and so on.
  std::vector<PauliOperator> stabilizer_generators() const;

  // Tensor product of every block's all-logicals-|0> state.
  Tableau zero_state() const;

 private:
  std::vector<CssCode> blocks_;
  std::vector<size_t> qubit_offset_;    // size num_blocks()+1
  std::vector<size_t> logical_offset_;  // size num_blocks()+1
};

// Code states of a single block with every logical qubit in |0> / |+>.
Tableau logical_zero_state(const CssCode& code);
Tableau logical_plus_state(const CssCode& code);

// Ancilla blocks for transversal logical measurements. x_parity_ancilla(u)
// is the code state (|0...0> + |u>)/sqrt(2): the X parity across the joint
// support of the selected logical X operators reads off the product X^u.
// z_parity_ancilla(v) is the X-basis mirror, (|+...+> + Z^v |+...+>)/sqrt(2).
Tableau x_parity_ancilla(const CssCode& code, const BitVec& u);
Tableau z_parity_ancilla(const CssCode& code, const BitVec& v);

// Joint state of the X-measurement block and the Z-measurement block used to
// read the product X_i Z_j in one extraction round. Both blocks are code
// states; logical slots other than i on the X block sit in |0>, slots other
// than j on the Z block in |+>. i == j is allowed and measures Y_i (the
// extraction multiplies the raw parity by the calibration sign of the
// pulled-back observable, so the reported value is that of the Hermitian
// representative i X_i Z_i).
Tableau xz_parity_ancilla(const CssCode& code, size_t i, size_t j);

// Logical observable on one block: product of X over logicals in u and Z
// over logicals in v. Supported forms for ancilla-based measurement: u-only,
// v-only, or single-bit u and v.
struct LogicalObservable {
  BitVec u;
  BitVec v;
};

// Deterministic fault injection for the extraction circuit, used by the
// equivalence checker and the tests. Pauli codes: 0..3 = I, X, Y, Z.
// kAfterCopyGate q acts on the pair (data q, Z-ancilla q) right after that
// CNOT; kAfterExtractGate q on (X-ancilla q, data q). Measurement flips
// invert the recorded bit and ignore the Pauli fields.
struct InjectedFault {
  enum class Where {
    kDataBefore,
    kXAncillaPrep,
    kZAncillaPrep,
    kAfterCopyGate,
    kAfterExtractGate,
    kXMeasurementFlip,
    kZMeasurementFlip,
  };
  Where where = Where::kDataBefore;
  size_t qubit = 0;
  uint8_t pauli_first = 0;
  uint8_t pauli_second = 0;
};

struct ExtractionOutcome {
  BitVec syndrome_x;  // X-type generator parities, flag Z errors on the data
  BitVec syndrome_z;  // Z-type generator parities, flag X errors
  int logical_outcome = 0;  // +-1 when an observable was requested, else 0
  BitVec x_bits;  // raw X-basis record of the X-ancilla block
  BitVec z_bits;  // raw Z-basis record of the Z-ancilla block
};

// One round of ancilla-coupled syndrome extraction on block `b` of the
// register: fresh ancilla blocks are prepared, coupled by two transversal
// CNOT layers (data -> Z ancilla, then X ancilla -> data), measured out
// qubit by qubit, and discarded. With an observable the ancillas come from
// x/z/xz_parity_ancilla and the outcome is the measured value of
// reg.logical_pauli for that observable, including its projective action on
// the data. Noise draws, in circuit order: data memory (eps), ancilla
// preparation (r), two-qubit gate errors (p_g2), recorded-bit flips (p_m).
// Rates that are zero consume no randomness, so the noiseless path is
// deterministic given the state. `faults` injects exact errors at chosen
// locations on top of (usually instead of) the sampled noise.
ExtractionOutcome steane_extraction(Tableau& state, const CodeRegister& reg, size_t b,
                                    const NoiseParams& noise, std::mt19937_64& rng,
                                    const std::optional<LogicalObservable>& observable = std::nullopt,
                                    const std::vector<InjectedFault>& faults = {});

// Measures the Hermitian representative of X^u Z^v (global logical masks)
// directly on the register state. Same observable convention as the
// ancilla-based path, without the circuit.
int measure_logical(Tableau& state, const CodeRegister& reg, const BitVec& u, const BitVec& v,
                    std::mt19937_64& rng);

// Checks that every single fault in one extraction round acts on the data
// block like a Pauli error before the round plus a Pauli error after it:
// the fault is propagated through the remaining CNOT layers by conjugation,
// its ancilla part is reduced to recorded-bit flips, and the predicted
// syndrome and residual data error are compared against a full circuit
// simulation. Covers all data/prep/gate/measurement locations and Pauli
// types exhaustively, then `double_fault_trials` random fault pairs.
struct EquivalenceReport {
  size_t checked = 0;
  size_t mismatches = 0;
  std::vector<std::string> failures;  // first few mismatch descriptions
};
EquivalenceReport effective_error_equivalence_check(const CssCode& code, size_t double_fault_trials,
                                                    uint64_t seed);

// Pauli frame: the deferred correction accumulated from measurement
// outcomes. Protocols never search for it; each recorded outcome either is
// already consistent or multiplies a fixed element into the frame.
class PauliFrame {
 public:
  explicit PauliFrame(size_t n) : correction_(n) {}

  const PauliOperator& correction() const { return correction_; }

  // Outcome of measuring `m` on the framed state, given the raw tableau
  // outcome: flips the sign when the frame anticommutes with m.
  int adjust(const PauliOperator& m, int raw) const;

  void compose(const PauliOperator& p);

 private:
  PauliOperator correction_;
};

// Expectation of `obs` on the framed state.
int framed_expectation(const Tableau& state, const PauliFrame& frame, const PauliOperator& obs);

// Applies the frame to the state and resets it to identity.
void discharge_frame(Tableau& state, PauliFrame& frame);

// Measurement-based logical gates. Each call performs the documented logical
// measurement sequence on the register state, folds outcome-dependent
// corrections into the frame, and resets the vacated slot to logical |0>.
// Preconditions on buffer slots (logical |0> up to frame) are checked and
// violations throw. Raw outcomes are returned in execution order.
struct ProtocolRecord {
  std::vector<int> outcomes;
};

// Hadamard of logical `target`, output lands on `buffer` (which must hold
// |0>); `target` is reset to |0>. Sequence: measure X_buffer Z_target, then
// X_target, then reset. Corrections: Z_buffer on the first outcome, X_buffer
// on the second.
ProtocolRecord logical_hadamard(Tableau& state, PauliFrame& frame, const CodeRegister& reg,
                                size_t target, size_t buffer, std::mt19937_64& rng);

// Phase gate (S) of logical `target`, output lands on `buffer`. Sequence:
// measure X_buffer Y_target, then Z_target. Corrections: Z_buffer on the
// first outcome, X_buffer X_target on the second, and one static Z_buffer
// from reordering the Y factors into the ideal image.
ProtocolRecord logical_phase(Tableau& state, PauliFrame& frame, const CodeRegister& reg,
                             size_t target, size_t buffer, std::mt19937_64& rng);

// CNOT with logical `control` and `target`: the control content moves to the
// target slot, the target content to `buffer`, and the control slot is reset.
// Sequence: measure X_buffer X_target, Z_control Z_target, X_control.
// Corrections: Z_buffer, X_buffer X_target, Z_target respectively.
ProtocolRecord logical_cnot(Tableau& state, PauliFrame& frame, const CodeRegister& reg,
                            size_t control, size_t target, size_t buffer, std::mt19937_64& rng);

// Swap of logicals i and j through `buffer`. Sequence: measure X_b X_i X_j,
// Z_b Z_i Z_j, X_b, then reset the buffer. Corrections: Z_i Z_j, X_i X_j,
// nothing (the X_b outcome only fixes the buffer, which the reset rebuilds).
ProtocolRecord logical_swap(Tableau& state, PauliFrame& frame, const CodeRegister& reg, size_t i,
                            size_t j, size_t buffer, std::mt19937_64& rng);

// Measures Z on the slot and corrects to |0> via the frame.
ProtocolRecord reset_to_zero(Tableau& state, PauliFrame& frame, const CodeRegister& reg,
                             size_t slot, std::mt19937_64& rng);

// Teleportation of logical `payload` onto logical `processor` (a slot in
// another block, typically a one-logical processor block). `buffer` must
// hold |0>, and so must the processor slot. Entangles processor and buffer
// into a Bell pair, then Bell-measures buffer and payload; afterwards the
// payload content sits on the processor slot and (buffer, payload) hold the
// Bell pair that the return trip consumes.
ProtocolRecord logical_teleport_in(Tableau& state, PauliFrame& frame, const CodeRegister& reg,
                                   size_t payload, size_t processor, size_t buffer,
                                   std::mt19937_64& rng);

// Return trip: Bell-measures processor and buffer, landing the processor
// content back on `payload` through the link left by logical_teleport_in.
// (processor, buffer) end in a Bell pair, which the final two corrections
// normalize; callers usually reset both slots afterwards.
ProtocolRecord logical_teleport_out(Tableau& state, PauliFrame& frame, const CodeRegister& reg,
                                    size_t payload, size_t processor, size_t buffer,
                                    std::mt19937_64& rng);

// Round trip with nothing applied in between: the identity on the payload.
ProtocolRecord logical_teleport(Tableau& state, PauliFrame& frame, const CodeRegister& reg,
                                size_t payload, size_t processor, size_t buffer,
                                std::mt19937_64& rng);

// Reference implementation of logical Clifford gates: decomposes every
// stabilizer row of `state` over the register's stabilizer generators and
// logical representatives, replaces each logical factor by its image, and
// rebuilds the tableau from the exact reordered products. This is
// conjugation by an encoded Clifford, so protocol outputs can be compared
// against it tableau-for-tableau.
enum class LogicalGate { kHadamard, kPhase, kCnot, kSwap };
Tableau apply_logical_clifford(const Tableau& state, const CodeRegister& reg, LogicalGate gate,
                               size_t a, size_t b = size_t(-1));

}  // namespace blockqec
