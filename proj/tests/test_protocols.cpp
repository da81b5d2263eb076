#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>
#include <complex>
#include <random>

#include "blockqec/linear_code.hpp"
#include "blockqec/protocols.hpp"
#include "blockqec/rm15.hpp"

using namespace blockqec;

namespace {

// One bare qubit as a degenerate block: no stabilizers, logical X/Z are the
// physical X/Z. Protocols on registers of these reduce to textbook circuits.
CssCode bare_qubit() {
  return css_from_matrices(Gf2Matrix(0, 1), Gf2Matrix(0, 1), "bare");
}

// [[8,6,2]]: one all-ones X row and one all-ones Z row.
CssCode eight_six() {
  BitVec ones(8);
  for (size_t i = 0; i < 8; ++i) ones.set(i, true);
  Gf2Matrix h(0, 8);
  h.append_row(ones);
  return css_from_matrices(h, h, "e8");
}

CssCode steane() {
  auto hamming = cyclic_code(Gf2Poly::from_exponents({3, 1, 0}), 7, "hamming7");
  hamming.claimed_d = 3;
  return css_from_selfdual(hamming, "steane");
}

PauliOperator op(const std::string& s) { return PauliOperator::from_string(s); }

BitVec bits(size_t k, std::initializer_list<size_t> on) {
  BitVec v(k);
  for (size_t b : on) v.set(b, true);
  return v;
}

// Random code state: the zero state pushed through random ideal logical
// gates and logical Paulis.
Tableau random_code_state(const CodeRegister& reg, std::mt19937_64& rng, size_t moves = 24) {
  Tableau t = reg.zero_state();
  const size_t kk = reg.num_logicals();
  for (size_t s = 0; s < moves; ++s) {
    size_t a = rng() % kk;
    switch (rng() % 4) {
      case 0:
        t = apply_logical_clifford(t, reg, LogicalGate::kHadamard, a);
        break;
      case 1:
        t = apply_logical_clifford(t, reg, LogicalGate::kPhase, a);
        break;
      case 2: {
        if (kk < 2) break;
        size_t b = (a + 1 + rng() % (kk - 1)) % kk;
        t = apply_logical_clifford(t, reg, LogicalGate::kCnot, a, b);
        break;
      }
      default:
        t.apply_pauli(rng() % 2 ? reg.logical_x(a) : reg.logical_z(a));
        break;
    }
  }
  return t;
}

// Projective reset of one logical slot to |0>, applied directly (no frame).
void force_zero(Tableau& t, const CodeRegister& reg, size_t slot, std::mt19937_64& rng) {
  if (t.measure(reg.logical_z(slot), rng) < 0) t.apply_pauli(reg.logical_x(slot));
}

void swap_qubits(Tableau& t, size_t a, size_t b) {
  t.apply_cnot(a, b);
  t.apply_cnot(b, a);
  t.apply_cnot(a, b);
}

std::vector<std::complex<double>> apply_pauli_vec(const PauliOperator& p,
                                                  const std::vector<std::complex<double>>& v) {
  const size_t n = p.num_qubits();
  uint64_t x = 0, z = 0;
  for (size_t q = 0; q < n; ++q) {
    if (p.x.get(q)) x |= uint64_t(1) << q;
    if (p.z.get(q)) z |= uint64_t(1) << q;
  }
  std::complex<double> front = 1.0;
  for (int k = 0; k < p.phase(); ++k) front *= std::complex<double>(0.0, 1.0);
  std::vector<std::complex<double>> out(v.size());
  for (size_t b = 0; b < v.size(); ++b) {
    std::complex<double> amp = front * v[b];
    if (std::popcount(b & z) & 1) amp = -amp;
    out[b ^ x] = amp;
  }
  return out;
}

std::complex<double> inner(const std::vector<std::complex<double>>& a,
                           const std::vector<std::complex<double>>& b) {
  std::complex<double> s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

const NoiseParams kQuiet{};

}  // namespace

TEST_CASE("code register bookkeeping") {
  CodeRegister reg({eight_six(), steane()});
  CHECK(reg.num_blocks() == 2);
  CHECK(reg.num_qubits() == 15);
  CHECK(reg.num_logicals() == 7);
  CHECK(reg.block_offset(0) == 0);
  CHECK(reg.block_offset(1) == 8);
  CHECK(reg.logical_offset(1) == 6);
  CHECK((reg.locate(0) == std::pair<size_t, size_t>{0, 0}));
  CHECK((reg.locate(5) == std::pair<size_t, size_t>{0, 5}));
  CHECK((reg.locate(6) == std::pair<size_t, size_t>{1, 0}));
  CHECK_THROWS_AS(reg.locate(7), std::invalid_argument);

  // Embedded representatives live on their own block.
  PauliOperator x6 = reg.logical_x(6);
  CHECK(x6.num_qubits() == 15);
  CHECK(!(x6.x.slice(0, 8).any() || x6.z.slice(0, 8).any()));
  PauliOperator z2 = reg.logical_z(2);
  CHECK(!(z2.x.slice(8, 7).any() || z2.z.slice(8, 7).any()));

  for (size_t g = 0; g < 7; ++g) {
    CHECK(reg.logical_x(g).is_hermitian());
    CHECK(reg.logical_y(g).is_hermitian());
    CHECK(symplectic_product(reg.logical_x(g), reg.logical_z(g)) == 1);
  }
  CHECK(reg.logical_pauli(bits(7, {0}), bits(7, {0})) == reg.logical_y(0));
  CHECK(reg.logical_pauli(bits(7, {}), bits(7, {})).is_identity());
  CHECK(reg.logical_pauli(bits(7, {1, 3}), bits(7, {})).is_hermitian());
  CHECK_THROWS_AS(reg.logical_pauli(bits(3, {0}), bits(7, {})), std::invalid_argument);

  CHECK(reg.stabilizer_generators().size() == 2 + 6);  // two rows of e8, six of steane
  CHECK_THROWS_AS(CodeRegister(std::vector<CssCode>{}), std::invalid_argument);
}

TEST_CASE("logical basis states and parity ancillas") {
  const CssCode e8 = eight_six();
  CodeRegister reg({e8});

  Tableau zero = logical_zero_state(e8);
  Tableau plus = logical_plus_state(e8);
  for (size_t m = 0; m < 6; ++m) {
    CHECK(zero.expectation(reg.logical_z(m)) == +1);
    CHECK(plus.expectation(reg.logical_x(m)) == +1);
  }
  for (const PauliOperator& s : reg.stabilizer_generators()) {
    CHECK(zero.expectation(s) == +1);
    CHECK(plus.expectation(s) == +1);
  }

  // (|000000> + |101000>)/sqrt(2) on the logical level.
  Tableau ghz = x_parity_ancilla(e8, bits(6, {0, 2}));
  CHECK(ghz.expectation(reg.logical_pauli(bits(6, {0, 2}), bits(6, {}))) == +1);
  CHECK(ghz.expectation(reg.logical_pauli(bits(6, {}), bits(6, {0, 2}))) == +1);
  CHECK(ghz.expectation(reg.logical_z(1)) == +1);
  CHECK(ghz.expectation(reg.logical_z(0)) == 0);
  CHECK(ghz.expectation(reg.logical_x(0)) == 0);

  Tableau xghz = z_parity_ancilla(e8, bits(6, {1, 4}));
  CHECK(xghz.expectation(reg.logical_pauli(bits(6, {}), bits(6, {1, 4}))) == +1);
  CHECK(xghz.expectation(reg.logical_pauli(bits(6, {1, 4}), bits(6, {}))) == +1);
  CHECK(xghz.expectation(reg.logical_x(0)) == +1);
  CHECK(xghz.expectation(reg.logical_z(1)) == 0);

  const CssCode st = steane();
  CHECK(x_parity_ancilla(st, bits(1, {0})).same_state_as(logical_plus_state(st)));
  CHECK(z_parity_ancilla(st, bits(1, {0})).same_state_as(logical_zero_state(st)));
  CHECK(x_parity_ancilla(st, bits(1, {})).same_state_as(logical_zero_state(st)));

  // Bare-qubit pair states are hand-checkable.
  const CssCode bare = bare_qubit();
  const std::vector<PauliOperator> yz_zx = {op("YZ"), op("ZX")};
  CHECK(xz_parity_ancilla(bare, 0, 0).same_state_as(tableau_from_stabilizers(yz_zx)));

  Tableau pair = xz_parity_ancilla(e8, 0, 3);
  auto on_x = [&](const PauliOperator& p) { return embed_pauli(p, 16, 0); };
  auto on_z = [&](const PauliOperator& p) { return embed_pauli(p, 16, 8); };
  CHECK(pair.expectation(on_x(e8.logical_x_op(0)) * on_z(e8.logical_z_op(3))) == +1);
  CHECK(pair.expectation(on_x(e8.logical_z_op(0)) * on_z(e8.logical_x_op(3))) == +1);
  CHECK(pair.expectation(on_x(e8.logical_z_op(1))) == +1);
  CHECK(pair.expectation(on_z(e8.logical_x_op(0))) == +1);
  CHECK(pair.expectation(on_x(e8.logical_z_op(0))) == 0);

  CHECK_THROWS_AS(x_parity_ancilla(e8, bits(5, {0})), std::invalid_argument);
  CHECK_THROWS_AS(xz_parity_ancilla(e8, 0, 6), std::invalid_argument);
}

TEST_CASE("reference logical clifford application") {
  for (const CssCode& code : {eight_six(), steane()}) {
    CodeRegister reg({code});
    const size_t kk = reg.num_logicals();
    std::mt19937_64 rng(0xc11ff0d5ull + kk);

    Tableau plus_all = reg.zero_state();
    for (size_t m = 0; m < kk; ++m)
      plus_all = apply_logical_clifford(plus_all, reg, LogicalGate::kHadamard, m);
    CHECK(plus_all.same_state_as(logical_plus_state(code)));

    for (size_t trial = 0; trial < 10; ++trial) {
      Tableau t = random_code_state(reg, rng);
      size_t a = rng() % kk;
      Tableau h2 = apply_logical_clifford(apply_logical_clifford(t, reg, LogicalGate::kHadamard, a),
                                          reg, LogicalGate::kHadamard, a);
      CHECK(h2.same_state_as(t));
      Tableau s4 = t;
      for (int i = 0; i < 4; ++i) s4 = apply_logical_clifford(s4, reg, LogicalGate::kPhase, a);
      CHECK(s4.same_state_as(t));
      if (kk >= 2) {
        size_t b = (a + 1) % kk;
        Tableau c2 = apply_logical_clifford(
            apply_logical_clifford(t, reg, LogicalGate::kCnot, a, b), reg, LogicalGate::kCnot, a, b);
        CHECK(c2.same_state_as(t));
        Tableau w2 = apply_logical_clifford(
            apply_logical_clifford(t, reg, LogicalGate::kSwap, a, b), reg, LogicalGate::kSwap, a, b);
        CHECK(w2.same_state_as(t));
      }
    }

    // S twice is logical Z: it flips X expectations on a plus slot.
    Tableau s2 = apply_logical_clifford(
        apply_logical_clifford(plus_all, reg, LogicalGate::kPhase, 0), reg, LogicalGate::kPhase, 0);
    CHECK(s2.expectation(reg.logical_x(0)) == -1);

    // CNOT on |+>|0> makes a logical Bell pair.
    if (kk >= 2) {
      Tableau bell = apply_logical_clifford(
          apply_logical_clifford(reg.zero_state(), reg, LogicalGate::kHadamard, 0), reg,
          LogicalGate::kCnot, 0, 1);
      CHECK(bell.expectation(reg.logical_pauli(bits(kk, {0, 1}), bits(kk, {}))) == +1);
      CHECK(bell.expectation(reg.logical_pauli(bits(kk, {}), bits(kk, {0, 1}))) == +1);
    }
  }

  // A state outside the code space has stabilizers the generators cannot
  // reproduce.
  CodeRegister reg8({eight_six()});
  CHECK_THROWS_AS(apply_logical_clifford(Tableau(8), reg8, LogicalGate::kHadamard, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(apply_logical_clifford(reg8.zero_state(), reg8, LogicalGate::kCnot, 0, 0),
                  std::invalid_argument);
}

TEST_CASE("measurement-based gates reduce to textbook circuits on bare qubits") {
  CodeRegister reg({bare_qubit(), bare_qubit(), bare_qubit(), bare_qubit()});
  std::mt19937_64 rng(0xba5e0001ull);

  for (size_t trial = 0; trial < 200; ++trial) {
    Tableau in = random_stabilizer_state(4, rng);
    force_zero(in, reg, 3, rng);

    {
      Tableau t = in;
      PauliFrame frame(4);
      logical_hadamard(t, frame, reg, 0, 3, rng);
      discharge_frame(t, frame);
      Tableau phys = in;
      swap_qubits(phys, 0, 3);
      phys.apply_h(3);
      CHECK(t.same_state_as(phys));
      Tableau ref = apply_logical_clifford(apply_logical_clifford(in, reg, LogicalGate::kSwap, 3, 0),
                                           reg, LogicalGate::kHadamard, 3);
      CHECK(phys.same_state_as(ref));
    }
    {
      Tableau t = in;
      PauliFrame frame(4);
      logical_phase(t, frame, reg, 0, 3, rng);
      discharge_frame(t, frame);
      Tableau phys = in;
      swap_qubits(phys, 0, 3);
      phys.apply_s(3);
      CHECK(t.same_state_as(phys));
    }
    {
      Tableau t = in;
      PauliFrame frame(4);
      logical_cnot(t, frame, reg, 0, 1, 3, rng);
      discharge_frame(t, frame);
      Tableau phys = in;
      swap_qubits(phys, 0, 1);
      swap_qubits(phys, 0, 3);
      phys.apply_cnot(1, 3);
      CHECK(t.same_state_as(phys));
    }
    {
      Tableau t = in;
      PauliFrame frame(4);
      logical_swap(t, frame, reg, 0, 1, 3, rng);
      discharge_frame(t, frame);
      Tableau phys = in;
      swap_qubits(phys, 0, 1);
      CHECK(t.same_state_as(phys));
    }
  }

  // Teleportation on three bare qubits: payload 0, buffer 1, processor 2.
  CodeRegister reg3({bare_qubit(), bare_qubit(), bare_qubit()});
  for (size_t trial = 0; trial < 200; ++trial) {
    Tableau in = random_stabilizer_state(3, rng);
    force_zero(in, reg3, 1, rng);
    force_zero(in, reg3, 2, rng);

    Tableau t = in;
    PauliFrame frame(3);
    logical_teleport_in(t, frame, reg3, 0, 2, 1, rng);
    {
      Tableau snap = t;
      PauliFrame fsnap = frame;
      discharge_frame(snap, fsnap);
      Tableau phys = in;
      swap_qubits(phys, 2, 0);
      phys.apply_h(1);
      phys.apply_cnot(1, 0);
      CHECK(snap.same_state_as(phys));
    }
    logical_teleport_out(t, frame, reg3, 0, 2, 1, rng);
    discharge_frame(t, frame);
    Tableau round = in;
    round.apply_h(2);
    round.apply_cnot(2, 1);
    CHECK(t.same_state_as(round));
  }

  // Precondition violations surface as errors.
  Tableau one = reg.zero_state();
  std::mt19937_64 r2(7);
  one.apply_pauli(reg.logical_x(3));  // buffer now |1>
  PauliFrame f1(4), f2(4), f3(4);
  CHECK_THROWS_AS(logical_hadamard(one, f1, reg, 0, 3, r2), std::invalid_argument);
  CHECK_THROWS_AS(logical_cnot(one, f2, reg, 0, 1, 3, r2), std::invalid_argument);
  Tableau unlinked = reg.zero_state();
  CHECK_THROWS_AS(logical_teleport_out(unlinked, f3, reg, 0, 1, 2, r2), std::invalid_argument);
}

TEST_CASE("noise-free extraction is projectively consistent") {
  const CssCode st = steane();
  CodeRegister reg({st});

  std::vector<PauliOperator> logicals = {reg.logical_z(0), reg.logical_x(0), reg.logical_y(0)};
  std::vector<PauliOperator> gens;
  for (size_t i = 0; i < st.hx.num_rows(); ++i) gens.push_back(st.x_stabilizer(i));
  for (size_t i = 0; i < st.hz.num_rows(); ++i) gens.push_back(st.z_stabilizer(i));

  for (const PauliOperator& l : logicals) {
    for (int sgn : {+1, -1}) {
      PauliOperator fixed = l;
      if (sgn < 0) fixed.negate();
      std::vector<PauliOperator> full = gens;
      full.push_back(fixed);
      Tableau input = tableau_from_stabilizers(full);

      Tableau state = input;
      std::mt19937_64 rng(0xfeed + sgn);
      ExtractionOutcome out = steane_extraction(state, reg, 0, kQuiet, rng);
      CHECK(!out.syndrome_x.any());
      CHECK(!out.syndrome_z.any());
      CHECK(out.logical_outcome == 0);
      CHECK(state.same_state_as(input));

      // Replays of the same seed reproduce the raw records bit for bit.
      Tableau again = input;
      std::mt19937_64 rng2(0xfeed + sgn);
      ExtractionOutcome out2 = steane_extraction(again, reg, 0, kQuiet, rng2);
      CHECK(out2.x_bits == out.x_bits);
      CHECK(out2.z_bits == out.z_bits);
    }
  }
}

TEST_CASE("extraction flags injected data errors with the code syndrome") {
  const CssCode st = steane();
  CodeRegister reg({st});
  const size_t rx = st.hx.num_rows(), rz = st.hz.num_rows();
  std::mt19937_64 rng(0x5eed);

  for (size_t q = 0; q < st.n; ++q) {
    for (uint8_t p : {uint8_t(1), uint8_t(2), uint8_t(3)}) {
      Tableau input = logical_zero_state(st);
      PauliOperator err = PauliOperator::single(st.n, q, p == 1 ? 'X' : p == 2 ? 'Y' : 'Z');
      Tableau state = input;
      state.apply_pauli(err);
      Tableau errored = state;

      ExtractionOutcome out = steane_extraction(state, reg, 0, kQuiet, rng);
      BitVec s = css_syndrome(st, err);
      CHECK(out.syndrome_x == s.slice(0, rx));
      CHECK(out.syndrome_z == s.slice(rx, rz));
      CHECK(state.same_state_as(errored));
    }
  }
}

TEST_CASE("ancilla-coupled logical measurement agrees with direct measurement") {
  struct Form {
    BitVec u, v;
  };
  auto run = [](const CssCode& code, const std::vector<Form>& forms, uint64_t seed) {
    CodeRegister reg({code});
    std::mt19937_64 rng(seed);
    for (const Form& f : forms) {
      for (size_t trial = 0; trial < 25; ++trial) {
        Tableau input = random_code_state(reg, rng);
        Tableau circuit = input;
        LogicalObservable obs{f.u, f.v};
        ExtractionOutcome out = steane_extraction(circuit, reg, 0, kQuiet, rng, obs);
        CHECK(!out.syndrome_x.any());
        CHECK(!out.syndrome_z.any());
        CHECK((out.logical_outcome == +1 || out.logical_outcome == -1));

        Tableau direct = input;
        const PauliOperator rep = reg.logical_pauli(f.u, f.v);
        int fixed = direct.expectation(rep);
        if (fixed != 0) {
          CHECK(out.logical_outcome == fixed);
        } else {
          direct.measure_forced(rep, out.logical_outcome);
        }
        CHECK(circuit.same_state_as(direct));
      }
    }
  };

  run(steane(), {{bits(1, {0}), bits(1, {})},
                 {bits(1, {}), bits(1, {0})},
                 {bits(1, {0}), bits(1, {0})}},
      0xabc1);
  run(eight_six(), {{bits(6, {0, 2}), bits(6, {})},
                    {bits(6, {}), bits(6, {1, 4})},
                    {bits(6, {0}), bits(6, {3})},
                    {bits(6, {2}), bits(6, {2})}},
      0xabc2);

  CodeRegister reg({eight_six()});
  Tableau t = reg.zero_state();
  std::mt19937_64 rng(3);
  LogicalObservable unsupported{bits(6, {0, 1}), bits(6, {2})};
  CHECK_THROWS_AS(steane_extraction(t, reg, 0, kQuiet, rng, unsupported), std::invalid_argument);
}

TEST_CASE("every single extraction fault is a data error before and after the round") {
  EquivalenceReport report = effective_error_equivalence_check(steane(), 1500, 0x7e1e);
  // 7 qubits x (9 one-qubit fault types + 2*15 gate faults + 2 flips).
  CHECK(report.checked == 287 + 1500);
  CHECK(report.mismatches == 0);
  CHECK(report.failures.empty());

  EquivalenceReport wide = effective_error_equivalence_check(eight_six(), 200, 0x7e1f);
  CHECK(wide.checked == 328 + 200);
  CHECK(wide.mismatches == 0);
}

TEST_CASE("measurement-based gates match the ideal maps on encoded blocks") {
  CodeRegister reg({eight_six()});
  std::mt19937_64 rng(0xecc0de5ull);
  const size_t kk = 6;

  for (size_t trial = 0; trial < 30; ++trial) {
    Tableau in = random_code_state(reg, rng);
    force_zero(in, reg, 5, rng);

    {
      Tableau t = in;
      PauliFrame frame(8);
      logical_hadamard(t, frame, reg, 1, 5, rng);
      discharge_frame(t, frame);
      Tableau want = apply_logical_clifford(apply_logical_clifford(in, reg, LogicalGate::kSwap, 5, 1),
                                            reg, LogicalGate::kHadamard, 5);
      CHECK(t.same_state_as(want));
    }
    {
      Tableau t = in;
      PauliFrame frame(8);
      logical_phase(t, frame, reg, 1, 5, rng);
      discharge_frame(t, frame);
      Tableau want = apply_logical_clifford(apply_logical_clifford(in, reg, LogicalGate::kSwap, 5, 1),
                                            reg, LogicalGate::kPhase, 5);
      CHECK(t.same_state_as(want));
    }
    {
      Tableau t = in;
      PauliFrame frame(8);
      logical_cnot(t, frame, reg, 0, 2, 5, rng);
      discharge_frame(t, frame);
      Tableau want = apply_logical_clifford(in, reg, LogicalGate::kSwap, 0, 2);
      want = apply_logical_clifford(want, reg, LogicalGate::kSwap, 0, 5);
      want = apply_logical_clifford(want, reg, LogicalGate::kCnot, 2, 5);
      CHECK(t.same_state_as(want));
    }
    {
      Tableau t = in;
      PauliFrame frame(8);
      logical_swap(t, frame, reg, 0, 3, 5, rng);
      discharge_frame(t, frame);
      Tableau want = apply_logical_clifford(in, reg, LogicalGate::kSwap, 0, 3);
      CHECK(t.same_state_as(want));
    }
  }

  // A chain of gates under one persistent frame.
  for (size_t trial = 0; trial < 10; ++trial) {
    Tableau in = random_code_state(reg, rng);
    force_zero(in, reg, 5, rng);
    Tableau t = in;
    PauliFrame frame(8);
    logical_hadamard(t, frame, reg, 0, 5, rng);   // H: 0 -> 5, slot 0 reset
    logical_cnot(t, frame, reg, 5, 1, 0, rng);    // CNOT(5 -> 1): control to 1, target to 0
    logical_phase(t, frame, reg, 2, 5, rng);      // S: 2 -> 5, slot 2 reset
    logical_swap(t, frame, reg, 0, 1, 2, rng);
    discharge_frame(t, frame);

    Tableau want = apply_logical_clifford(in, reg, LogicalGate::kSwap, 5, 0);
    want = apply_logical_clifford(want, reg, LogicalGate::kHadamard, 5);
    want = apply_logical_clifford(want, reg, LogicalGate::kSwap, 5, 1);
    want = apply_logical_clifford(want, reg, LogicalGate::kSwap, 5, 0);
    want = apply_logical_clifford(want, reg, LogicalGate::kCnot, 1, 0);
    want = apply_logical_clifford(want, reg, LogicalGate::kSwap, 5, 2);
    want = apply_logical_clifford(want, reg, LogicalGate::kPhase, 5);
    want = apply_logical_clifford(want, reg, LogicalGate::kSwap, 0, 1);
    CHECK(t.same_state_as(want));
  }
  (void)kk;
}

TEST_CASE("teleportation carries a payload to another block and back") {
  CodeRegister reg({eight_six(), steane()});
  std::mt19937_64 rng(0x7e1eb0b1ull);
  const size_t kk = reg.num_logicals();  // 7: memory 0..5, processor 6

  for (size_t trial = 0; trial < 30; ++trial) {
    Tableau in = random_code_state(reg, rng);
    force_zero(in, reg, 1, rng);  // buffer
    force_zero(in, reg, 6, rng);  // processor

    Tableau t = in;
    PauliFrame frame(15);
    logical_teleport_in(t, frame, reg, 3, 6, 1, rng);
    {
      Tableau snap = t;
      PauliFrame fsnap = frame;
      discharge_frame(snap, fsnap);
      Tableau want = apply_logical_clifford(in, reg, LogicalGate::kSwap, 6, 3);
      want = apply_logical_clifford(want, reg, LogicalGate::kHadamard, 1);
      want = apply_logical_clifford(want, reg, LogicalGate::kCnot, 1, 3);
      CHECK(snap.same_state_as(want));
    }
    logical_teleport_out(t, frame, reg, 3, 6, 1, rng);
    discharge_frame(t, frame);
    Tableau want = apply_logical_clifford(in, reg, LogicalGate::kHadamard, 6);
    want = apply_logical_clifford(want, reg, LogicalGate::kCnot, 6, 1);
    CHECK(t.same_state_as(want));
  }
  (void)kk;
}

TEST_CASE("transversal gate on the teleported payload applies the logical T") {
  Rm15Code rm = build_rm15();
  CodeRegister reg({eight_six(), rm.css});
  std::mt19937_64 rng(0x715a);

  // Memory slot 2 in |+>, everything else |0>; payload teleports to the
  // processor block.
  Tableau t = apply_logical_clifford(reg.zero_state(), reg, LogicalGate::kHadamard, 2);
  PauliFrame frame(23);
  logical_teleport_in(t, frame, reg, 2, 6, 1, rng);
  discharge_frame(t, frame);
  Tableau proc = restrict_to_qubits(t, 8, 15);

  auto sv = state_vector(proc);
  auto v0 = state_vector(logical_zero_state(rm.css));
  auto v1 = apply_pauli_vec(rm.css.logical_x_op(0), v0);

  std::vector<std::complex<double>> plus(v0.size());
  for (size_t b = 0; b < v0.size(); ++b) plus[b] = (v0[b] + v1[b]) / std::sqrt(2.0);
  CHECK(std::abs(std::abs(inner(plus, sv)) - 1.0) < 1e-10);

  // Transversal conjugate pi/8 rotation; on this code it enacts logical T.
  const std::complex<double> step = std::polar(1.0, -std::acos(-1.0) / 4.0);
  std::vector<std::complex<double>> rotated(sv.size());
  for (size_t b = 0; b < sv.size(); ++b) {
    std::complex<double> ph = 1.0;
    for (int k = 0; k < std::popcount(b); ++k) ph *= step;
    rotated[b] = ph * sv[b];
  }
  const std::complex<double> tphase = std::polar(1.0, std::acos(-1.0) / 4.0);
  std::vector<std::complex<double>> want(v0.size());
  for (size_t b = 0; b < v0.size(); ++b) want[b] = (v0[b] + tphase * v1[b]) / std::sqrt(2.0);
  CHECK(std::abs(std::abs(inner(want, rotated)) - 1.0) < 1e-10);
}

TEST_CASE("noisy extraction is seed-reproducible and detects its own noise") {
  const CssCode st = steane();
  CodeRegister reg({st});
  NoiseParams noise;
  noise.eps = 0.05;
  noise.r = 0.1;
  noise.p_g2 = 0.02;
  noise.p_m = 0.3;

  Tableau a = logical_zero_state(st);
  Tableau b = logical_zero_state(st);
  std::mt19937_64 ra(42), rb(42);
  ExtractionOutcome oa = steane_extraction(a, reg, 0, noise, ra);
  ExtractionOutcome ob = steane_extraction(b, reg, 0, noise, rb);
  CHECK(oa.x_bits == ob.x_bits);
  CHECK(oa.z_bits == ob.z_bits);
  CHECK(oa.syndrome_x == ob.syndrome_x);
  CHECK(a.same_state_as(b));

  size_t nonzero = 0;
  for (uint64_t seed = 0; seed < 40; ++seed) {
    Tableau t = logical_zero_state(st);
    std::mt19937_64 rng(seed);
    ExtractionOutcome out = steane_extraction(t, reg, 0, noise, rng);
    if (out.syndrome_x.any() || out.syndrome_z.any()) ++nonzero;
  }
  CHECK(nonzero > 10);
}
