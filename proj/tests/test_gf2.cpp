#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "blockqec/bitvec.hpp"
#include "blockqec/gf2m.hpp"
#include "blockqec/gf2mat.hpp"
#include "blockqec/gf2poly.hpp"
#include "blockqec/pauli.hpp"

using namespace blockqec;

TEST_CASE("bitvec basics") {
  BitVec v = BitVec::from_string("01101");
  CHECK(v.size() == 5);
  CHECK(v.weight() == 3);
  CHECK(v.get(1));
  CHECK(!v.get(0));
  CHECK(v.to_string() == "01101");
  CHECK(BitVec::from_hex(v.to_hex(), 5) == v);

  BitVec w = BitVec::from_string("11100");
  CHECK((v ^ w).to_string() == "10001");
  CHECK((v & w).to_string() == "01100");
  CHECK(v.dot(w) == false);  // overlap 01100, even
  CHECK(v.dot(BitVec::from_string("01000")) == true);

  CHECK(v.concat(w).to_string() == "0110111100");
  CHECK(v.concat(w).slice(5, 5) == w);
}

TEST_CASE("bitvec hex round trip across word boundaries") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    size_t n = 1 + rng() % 300;
    BitVec v(n);
    for (size_t i = 0; i < n; ++i)
      if (rng() & 1) v.set(i, true);
    CHECK(BitVec::from_hex(v.to_hex(), n) == v);
    CHECK(BitVec::from_string(v.to_string()) == v);
  }
}

TEST_CASE("poly mul and divmod") {
  // (x+1)(x^2+x+1) = x^3+1
  Gf2Poly a = Gf2Poly::from_exponents({1, 0});
  Gf2Poly b = Gf2Poly::from_exponents({2, 1, 0});
  CHECK(poly_mul(a, b) == Gf2Poly::x_pow_plus_one(3));

  auto [q, r] = poly_divmod(Gf2Poly::x_pow_plus_one(3), a);
  CHECK(q == b);
  CHECK(r.is_zero());

  // Remainder: x^2 mod (x+1) = 1 (since x = 1 is a root pattern over GF(2))
  auto [q2, r2] = poly_divmod(Gf2Poly::from_exponents({2}), a);
  CHECK(r2 == Gf2Poly::one());
}

TEST_CASE("poly divmod inverts mul on random inputs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<int> ea, eb;
    for (int i = 0; i < 90; ++i)
      if (rng() & 1) ea.push_back(i);
    for (int i = 0; i < 60; ++i)
      if (rng() & 1) eb.push_back(i);
    eb.push_back(60);  // keep divisor nonzero
    Gf2Poly a = Gf2Poly::from_exponents(ea);
    Gf2Poly b = Gf2Poly::from_exponents(eb);
    auto [q, r] = poly_divmod(poly_mul(a, b), b);
    CHECK(q == a);
    CHECK(r.is_zero());
    // divmod(a, b) reconstructs a
    auto [q3, r3] = poly_divmod(a, b);
    CHECK(poly_mul(q3, b) + r3 == a);
  }
}

TEST_CASE("poly helpers") {
  Gf2Poly g = Gf2Poly::from_exponents({11, 10, 6, 5, 4, 2, 0});
  CHECK(g.degree() == 11);
  CHECK(g.reciprocal().degree() == 11);
  CHECK(g.reciprocal().reciprocal() == g);
  CHECK(Gf2Poly::from_hex(g.to_hex()) == g);
  CHECK(g.to_bits(23).weight() == 7);
  CHECK(Gf2Poly::from_bits(g.to_bits(23)) == g);
  CHECK(g.shifted(3).degree() == 14);
}

TEST_CASE("gf2m field axioms") {
  for (int m : {7, 8, 11}) {
    Gf2mField f(m, default_primitive_poly(m));
    CHECK(f.order() == (1u << m) - 1);
    CHECK(f.pow_alpha(f.order()) == 1);
    std::mt19937_64 rng(m);
    for (int trial = 0; trial < 500; ++trial) {
      uint32_t a = 1 + rng() % f.order();
      uint32_t b = 1 + rng() % f.order();
      uint32_t c = 1 + rng() % f.order();
      CHECK(f.mul(a, b) == f.mul(b, a));
      CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
      CHECK(f.mul(a, f.inv(a)) == 1);
      CHECK(f.mul(a, 1) == a);
      CHECK(f.exp(f.log(a)) == a);
    }
  }
}

TEST_CASE("gf2m multiplication against schoolbook reduction") {
  // Multiply in GF(2^7) the long way: carry-less product then reduce mod the
  // primitive polynomial, compare against table lookup.
  Gf2mField f(7, default_primitive_poly(7));
  auto slow_mul = [&](uint32_t a, uint32_t b) {
    uint32_t prod = 0;
    for (int i = 0; i < 7; ++i)
      if ((b >> i) & 1) prod ^= a << i;
    for (int d = 13; d >= 7; --d)
      if ((prod >> d) & 1) prod ^= f.primitive_poly() << (d - 7);
    return prod;
  };
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    uint32_t a = rng() % 128;
    uint32_t b = rng() % 128;
    CHECK(f.mul(a, b) == slow_mul(a, b));
  }
}

TEST_CASE("gf2m rejects non-primitive polynomials") {
  // x^4 + x^3 + x^2 + x + 1 is irreducible but not primitive (order 5).
  CHECK_THROWS(Gf2mField(4, 0b11111));
  // x^4 + x^2 + 1 = (x^2+x+1)^2 is not even irreducible.
  CHECK_THROWS(Gf2mField(4, 0b10101));
  CHECK_NOTHROW(Gf2mField(4, 0b10011));
}

TEST_CASE("matrix rank and solve") {
  Gf2Matrix id = Gf2Matrix::identity(5);
  CHECK(rank(id) == 5);

  Gf2Matrix zero(4, 6);
  CHECK(rank(zero) == 0);

  // Solvable: pick x, compute b = A x, recover some solution.
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    size_t rows = 3 + rng() % 8, cols = 3 + rng() % 8;
    Gf2Matrix a(rows, cols);
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j)
        if (rng() & 1) a.set(i, j, true);
    BitVec x(cols);
    for (size_t j = 0; j < cols; ++j)
      if (rng() & 1) x.set(j, true);
    BitVec b = a.mul_vec(x);
    auto sol = solve_gf2(a, b);
    REQUIRE(sol.has_value());
    CHECK(a.mul_vec(*sol) == b);
  }
}

TEST_CASE("solve reports inconsistent systems") {
  Gf2Matrix a(2, 2);
  a.set(0, 0, true);
  a.set(1, 0, true);  // rows equal, columns [1,1] and [0,0]
  BitVec b(2);
  b.set(0, true);  // b = (1,0) not in column space
  CHECK(!solve_gf2(a, b).has_value());
}

TEST_CASE("solve is deterministic with zeroed free variables") {
  // One equation, many unknowns: lowest-index pivot carries the solution.
  Gf2Matrix a(1, 6);
  for (size_t j = 2; j < 6; ++j) a.set(0, j, true);
  BitVec b(1);
  b.set(0, true);
  auto sol = solve_gf2(a, b);
  REQUIRE(sol.has_value());
  CHECK(sol->to_string() == "001000");
}

TEST_CASE("kernel basis spans the null space") {
  std::mt19937_64 rng(5);
  Gf2Matrix a(4, 9);
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 9; ++j)
      if (rng() & 1) a.set(i, j, true);
  auto basis = a.kernel_basis();
  CHECK(basis.size() == 9 - rank(a));
  for (const auto& v : basis) CHECK(!a.mul_vec(v).any());
  CHECK(rank(Gf2Matrix(basis)) == basis.size());
}

TEST_CASE("pauli string round trip and weight") {
  PauliOperator p = PauliOperator::from_string("XIZY");
  CHECK(p.num_qubits() == 4);
  CHECK(p.weight() == 3);
  CHECK(p.pauli_at(0) == 'X');
  CHECK(p.pauli_at(1) == 'I');
  CHECK(p.pauli_at(3) == 'Y');
  CHECK(p.sign() == +1);
  CHECK(p.to_string() == "+XIZY");
  CHECK(PauliOperator::from_string("-XIZY").sign() == -1);
}

TEST_CASE("pauli products follow the single-qubit table") {
  // X*Z = -iY in the i-exponent bookkeeping; squares are identity.
  PauliOperator X = PauliOperator::from_string("X");
  PauliOperator Y = PauliOperator::from_string("Y");
  PauliOperator Z = PauliOperator::from_string("Z");
  CHECK((X * X).is_identity());
  CHECK((Y * Y).sign() == +1);
  CHECK((X * Y).phase() == ((Z.phase() + 1) & 3));  // XY = iZ
  PauliOperator xy = X * Y;
  CHECK(xy.pauli_at(0) == 'Z');
  PauliOperator yx = Y * X;
  CHECK(((xy.phase() - yx.phase()) & 3) == 2);  // XY = -YX
}

TEST_CASE("symplectic product detects anticommutation") {
  PauliOperator a = PauliOperator::from_string("XXI");
  PauliOperator b = PauliOperator::from_string("ZII");
  PauliOperator c = PauliOperator::from_string("ZZI");
  CHECK(symplectic_product(a, b) == 1);
  CHECK(symplectic_product(a, c) == 0);
  CHECK(a.commutes_with(c));
  CHECK(!a.commutes_with(b));

  std::mt19937_64 rng(17);
  auto random_pauli = [&](size_t n) {
    PauliOperator p(n);
    for (size_t i = 0; i < n; ++i) {
      p.x.set(i, rng() & 1);
      p.z.set(i, rng() & 1);
    }
    return p;
  };
  for (int trial = 0; trial < 200; ++trial) {
    PauliOperator p = random_pauli(12), q = random_pauli(12), r = random_pauli(12);
    CHECK(symplectic_product(p, p) == 0);
    CHECK(symplectic_product(p, q) == symplectic_product(q, p));
    // bilinearity: <p, q*r> = <p,q> + <p,r> over GF(2)
    PauliOperator qr = q * r;
    CHECK(symplectic_product(p, qr) ==
          (symplectic_product(p, q) ^ symplectic_product(p, r)));
  }
}

TEST_CASE("pauli product is associative and phase-consistent on random inputs") {
  std::mt19937_64 rng(29);
  auto random_pauli = [&](size_t n) {
    std::string s;
    for (size_t i = 0; i < n; ++i) s += "IXYZ"[rng() % 4];
    return PauliOperator::from_string((rng() & 1 ? "-" : "+") + s);
  };
  for (int trial = 0; trial < 300; ++trial) {
    PauliOperator a = random_pauli(9), b = random_pauli(9), c = random_pauli(9);
    CHECK((a * b) * c == a * (b * c));
    CHECK((((a * b).phase() - (b * a).phase()) & 3) ==
          (symplectic_product(a, b) ? 2 : 0));
    PauliOperator ab_b = (a * b) * b;  // b^2 = I for Hermitian b
    CHECK(ab_b == a);
  }
}
