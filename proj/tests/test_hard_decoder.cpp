#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "blockqec/hard_decoder.hpp"
#include "blockqec/rm15.hpp"

using namespace blockqec;

namespace {

BitVec random_weighted(size_t n, size_t wmax, std::mt19937_64& rng) {
  BitVec v(n);
  size_t w = rng() % (wmax + 1);
  while (v.weight() < w) v.set(rng() % n, true);
  return v;
}

PauliOperator embed_block(size_t blocks, const PauliOperator& piece, size_t b) {
  const size_t n = piece.num_qubits();
  PauliOperator e(blocks * n);
  for (size_t i = 0; i < n; ++i) {
    if (piece.x.get(i)) e.x.set(b * n + i, true);
    if (piece.z.get(i)) e.z.set(b * n + i, true);
  }
  return e;
}

bool tree_equal(const SyndromeTree& a, const SyndromeTree& b) {
  return a.levels == b.levels;
}

}  // namespace

TEST_CASE("golay block decoder recovers every side pattern within radius") {
  GolayBlockDecoder dec;
  CHECK(dec.code().n == 23);
  CHECK(dec.code().k == 1);

  BlockDecodeResult clean = dec.decode(BitVec(22));
  CHECK(clean.estimate.is_identity());
  CHECK_FALSE(clean.x_detected);
  CHECK_FALSE(clean.z_detected);

  std::mt19937_64 rng(314);
  for (int trial = 0; trial < 400; ++trial) {
    PauliOperator e(23);
    e.x = random_weighted(23, 3, rng);
    e.z = random_weighted(23, 3, rng);
    BlockDecodeResult r = dec.decode(css_syndrome(dec.code(), e));
    CHECK(r.estimate == e);
    CHECK_FALSE(r.x_detected);
    CHECK_FALSE(r.z_detected);
  }

  CHECK_THROWS_AS(dec.decode(BitVec(21)), std::invalid_argument);
}

TEST_CASE("bch block decoder corrects to the designed radius and stays syndrome-consistent") {
  BchBlockDecoder dec(bch89_code());
  CHECK(dec.code().n == 89);
  CHECK(dec.code().k == 23);
  CHECK(dec.t() == 4);

  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 100; ++trial) {
    PauliOperator e(89);
    e.x = random_weighted(89, 4, rng);
    e.z = random_weighted(89, 4, rng);
    BlockDecodeResult r = dec.decode(css_syndrome(dec.code(), e));
    CHECK(r.estimate == e);
    CHECK_FALSE(r.x_detected);
    CHECK_FALSE(r.z_detected);
  }

  // Weight 5 exceeds the radius: the estimate may differ from the error but
  // must still carry the observed syndrome, detected or not.
  size_t detected = 0;
  for (int trial = 0; trial < 100; ++trial) {
    PauliOperator e(89);
    while (e.x.weight() < 5) e.x.set(rng() % 89, true);
    BitVec s = css_syndrome(dec.code(), e);
    BlockDecodeResult r = dec.decode(s);
    CHECK(css_syndrome(dec.code(), r.estimate) == s);
    if (r.x_detected) {
      ++detected;
      CHECK(logical_action(dec.code(), r.estimate).trivial());
    }
  }
  CHECK(detected > 0);
}

TEST_CASE("rm15 block decoder tables cover the stated radii") {
  Rm15BlockDecoder dec;
  const CssCode& code = dec.code();

  for (size_t q = 0; q < 15; ++q) {
    PauliOperator e(15);
    e.z.set(q, true);
    BlockDecodeResult r = dec.decode(css_syndrome(code, e));
    CHECK(r.estimate == e);
    CHECK_FALSE(r.z_detected);
  }

  // Exhaustive X side within the radius.
  for (size_t a = 0; a < 15; ++a)
    for (size_t b = a; b < 15; ++b)
      for (size_t c = b; c < 15; ++c) {
        PauliOperator e(15);
        e.x.set(a, true);
        e.x.set(b, true);
        e.x.set(c, true);
        BlockDecodeResult r = dec.decode(css_syndrome(code, e));
        CHECK(r.estimate == e);
        CHECK_FALSE(r.x_detected);
      }

  // The X side covers exactly 1 + 15 + 105 + 455 of the 1024 syndromes;
  // uncovered ones fall back to the pure error, whose symbol is I.
  size_t covered = 0;
  for (uint32_t sx = 0; sx < 1024; ++sx) {
    BitVec s(14);
    for (size_t i = 0; i < 10; ++i) s.set(4 + i, (sx >> i) & 1);
    BlockDecodeResult r = dec.decode(s);
    CHECK(css_syndrome(code, r.estimate) == s);
    if (!r.x_detected) {
      ++covered;
      CHECK(r.estimate.x.weight() <= 3);
    } else {
      CHECK(logical_action(code, r.estimate).trivial());
    }
  }
  CHECK(covered == 576);
}

TEST_CASE("memory stack corrects block errors, symbol faults, and their mix") {
  TwoLevelHardDecoder mem = golay_memory_decoder(bch89_code());
  const ConcatCode& cc = mem.code();
  CHECK(cc.physical_qubits() == 2047);
  CHECK(cc.spec().k == 23);
  CHECK(cc.spec().d == 63);
  const CssCode& inner = cc.levels[1];

  SUBCASE("no error decodes to the identity") {
    HardDecodeOutcome out = mem.decode(decompose_error(cc, PauliOperator(2047)).tree);
    CHECK(out.estimate.is_identity());
    CHECK(out.inner_fallbacks == 0);
    CHECK(out.outer_fallbacks == 0);
  }

  SUBCASE("up to three errors per side in scattered blocks are fixed inner-only") {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 30; ++trial) {
      PauliOperator e(2047);
      std::vector<size_t> blocks(89);
      std::iota(blocks.begin(), blocks.end(), 0);
      std::shuffle(blocks.begin(), blocks.end(), rng);
      for (int k = 0; k < 5; ++k) {
        size_t b = blocks[k];
        PauliOperator piece(23);
        piece.x = random_weighted(23, 3, rng);
        piece.z = random_weighted(23, 3, rng);
        PauliOperator lifted = embed_block(89, piece, b);
        e.x ^= lifted.x;
        e.z ^= lifted.z;
      }
      HardDecodeOutcome out = mem.decode(decompose_error(cc, e).tree);
      CHECK(out.estimate == e);
    }
  }

  SUBCASE("four clean logical faults are fixed by the outer code") {
    PauliOperator e(2047);
    for (size_t b : {4u, 17u, 42u, 80u}) {
      PauliOperator lx(23);
      lx.x = inner.logical_x.row(0);
      e.x ^= embed_block(89, lx, b).x;
    }
    for (size_t b : {3u, 17u, 60u, 88u}) {
      PauliOperator lz(23);
      lz.z = inner.logical_z.row(0);
      e.z ^= embed_block(89, lz, b).z;
    }
    HardDecodeOutcome out = mem.decode(decompose_error(cc, e).tree);
    CHECK(out.estimate == e);
    CHECK(out.inner_fallbacks == 0);
    CHECK(out.outer_fallbacks == 0);
  }

  SUBCASE("physical errors and logical faults correct together") {
    std::mt19937_64 rng(808);
    PauliOperator e(2047);
    PauliOperator piece(23);
    piece.x = random_weighted(23, 3, rng);
    piece.z = random_weighted(23, 3, rng);
    PauliOperator lifted = embed_block(89, piece, 2);
    e.x ^= lifted.x;
    e.z ^= lifted.z;
    for (size_t b : {10u, 30u, 50u, 70u}) {
      PauliOperator lx(23);
      lx.x = inner.logical_x.row(0);
      e.x ^= embed_block(89, lx, b).x;
    }
    HardDecodeOutcome out = mem.decode(decompose_error(cc, e).tree);
    CHECK(out.estimate == e);
    PauliOperator residual(e.x ^ out.estimate.x, e.z ^ out.estimate.z);
    CHECK(decompose_error(cc, residual).top_action.trivial());
  }

  SUBCASE("estimates always reproduce the syndrome tree") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 20; ++trial) {
      PauliOperator e(2047);
      for (size_t i = 0; i < 2047; ++i) {
        double u = double(rng() >> 11) * 0x1.0p-53;
        if (u < 0.02) {
          switch (rng() % 3) {
            case 0: e.x.set(i, true); break;
            case 1: e.z.set(i, true); break;
            default: e.x.set(i, true); e.z.set(i, true);
          }
        }
      }
      SyndromeTree tree = decompose_error(cc, e).tree;
      HardDecodeOutcome out = mem.decode(tree);
      CHECK(tree_equal(decompose_error(cc, out.estimate).tree, tree));
    }
  }

  SUBCASE("five symbol faults exceed the outer radius but stay consistent") {
    PauliOperator e(2047);
    for (size_t b : {1u, 20u, 40u, 60u, 80u}) {
      PauliOperator lx(23);
      lx.x = inner.logical_x.row(0);
      e.x ^= embed_block(89, lx, b).x;
    }
    SyndromeTree tree = decompose_error(cc, e).tree;
    HardDecodeOutcome out = mem.decode(tree);
    CHECK(tree_equal(decompose_error(cc, out.estimate).tree, tree));
  }
}

TEST_CASE("rm15 pair decoder fixes sparse errors through both levels") {
  TwoLevelHardDecoder pair = rm15_pair_decoder();
  const ConcatCode& cc = pair.code();
  CHECK(cc.physical_qubits() == 225);
  CHECK(cc.spec().d == 9);

  std::mt19937_64 rng(31415);
  for (int trial = 0; trial < 30; ++trial) {
    PauliOperator e(225);
    e.set_pauli(rng() % 225, "XYZ"[rng() % 3]);
    HardDecodeOutcome out = pair.decode(decompose_error(cc, e).tree);
    PauliOperator residual(e.x ^ out.estimate.x, e.z ^ out.estimate.z);
    CHECK(decompose_error(cc, residual).top_action.trivial());
  }

  // Two Z errors inside one block overwhelm that block (Z radius 1), but the
  // resulting symbol fault is caught above.
  for (int trial = 0; trial < 20; ++trial) {
    size_t b = rng() % 15;
    size_t q1 = rng() % 15;
    size_t q2 = (q1 + 1 + rng() % 14) % 15;
    PauliOperator e(225);
    e.z.set(b * 15 + q1, true);
    e.z.set(b * 15 + q2, true);
    HardDecodeOutcome out = pair.decode(decompose_error(cc, e).tree);
    PauliOperator residual(e.x ^ out.estimate.x, e.z ^ out.estimate.z);
    CHECK(decompose_error(cc, residual).top_action.trivial());
  }

  // Full X radius in one block plus a stray Z elsewhere.
  PauliOperator e(225);
  e.x.set(3 * 15 + 1, true);
  e.x.set(3 * 15 + 7, true);
  e.x.set(3 * 15 + 12, true);
  e.z.set(9 * 15 + 4, true);
  HardDecodeOutcome out = pair.decode(decompose_error(cc, e).tree);
  CHECK(out.estimate == e);

  std::mt19937_64 rng2(999);
  for (int trial = 0; trial < 20; ++trial) {
    PauliOperator err(225);
    for (size_t i = 0; i < 225; ++i) {
      double u = double(rng2() >> 11) * 0x1.0p-53;
      if (u < 0.03) err.set_pauli(i, "XYZ"[rng2() % 3]);
    }
    SyndromeTree tree = decompose_error(cc, err).tree;
    HardDecodeOutcome res = pair.decode(tree);
    CHECK(tree_equal(decompose_error(cc, res.estimate).tree, tree));
  }
}

TEST_CASE("two-level decoder input validation") {
  CHECK_THROWS_AS(TwoLevelHardDecoder(std::make_unique<BchBlockDecoder>(bch89_code()),
                                      std::make_unique<BchBlockDecoder>(bch89_code())),
                  std::invalid_argument);

  TwoLevelHardDecoder pair = rm15_pair_decoder();
  SyndromeTree bad;
  bad.levels.resize(1);
  CHECK_THROWS_AS(pair.decode(bad), std::invalid_argument);

  SyndromeTree wrong = decompose_error(pair.code(), PauliOperator(225)).tree;
  wrong.levels[1].pop_back();
  CHECK_THROWS_AS(pair.decode(wrong), std::invalid_argument);
}
