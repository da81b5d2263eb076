#include "blockqec/tableau.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "blockqec/gf2mat.hpp"

namespace blockqec {

namespace {

constexpr size_t kNone = size_t(-1);

void check_qubit(size_t q, size_t n, const char* what) {
  if (q >= n) throw std::invalid_argument(std::string(what) + ": qubit index out of range");
}

void check_observable(const PauliOperator& obs, size_t n) {
  if (obs.num_qubits() != n)
    throw std::invalid_argument("Tableau: observable size mismatch");
  if (!obs.is_hermitian())
    throw std::invalid_argument("Tableau: observable must be Hermitian");
}

}  // namespace

PauliOperator conjugate_cnot(PauliOperator p, size_t control, size_t target) {
  size_t n = p.num_qubits();
  check_qubit(control, n, "conjugate_cnot");
  check_qubit(target, n, "conjugate_cnot");
  if (control == target) throw std::invalid_argument("conjugate_cnot: control equals target");
  // In the i^phase X^x Z^z encoding the bit update carries no phase: the
  // images X_c X_t and Z_c Z_t commute with everything they pass over.
  p.x.set(target, p.x.get(target) ^ p.x.get(control));
  p.z.set(control, p.z.get(control) ^ p.z.get(target));
  return p;
}

PauliOperator conjugate_h(PauliOperator p, size_t qubit) {
  check_qubit(qubit, p.num_qubits(), "conjugate_h");
  bool xb = p.x.get(qubit);
  bool zb = p.z.get(qubit);
  p.x.set(qubit, zb);
  p.z.set(qubit, xb);
  // XZ -> ZX = -XZ on the conjugated site.
  if (xb && zb) p.set_phase(uint8_t(p.phase() + 2));
  return p;
}

PauliOperator conjugate_s(PauliOperator p, size_t qubit) {
  check_qubit(qubit, p.num_qubits(), "conjugate_s");
  if (p.x.get(qubit)) {
    // X -> iXZ and XZ -> iX: toggle the Z bit, collect one factor of i.
    p.z.flip(qubit);
    p.set_phase(uint8_t(p.phase() + 1));
  }
  return p;
}

Tableau::Tableau(size_t n) : n_(n) {
  stab_.reserve(n);
  destab_.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    PauliOperator s(n), d(n);
    s.z.set(i, true);
    d.x.set(i, true);
    stab_.push_back(std::move(s));
    destab_.push_back(std::move(d));
  }
}

Tableau Tableau::from_rows(std::vector<PauliOperator> stabilizers,
                           std::vector<PauliOperator> destabilizers) {
  Tableau t(0);
  t.n_ = stabilizers.size();
  t.stab_ = std::move(stabilizers);
  t.destab_ = std::move(destabilizers);
  try {
    t.check_invariants();
  } catch (const std::logic_error& e) {
    throw std::invalid_argument(e.what());
  }
  return t;
}

const PauliOperator& Tableau::stabilizer(size_t i) const {
  if (i >= n_) throw std::invalid_argument("Tableau::stabilizer: index out of range");
  return stab_[i];
}

const PauliOperator& Tableau::destabilizer(size_t i) const {
  if (i >= n_) throw std::invalid_argument("Tableau::destabilizer: index out of range");
  return destab_[i];
}

void Tableau::apply_cnot(size_t control, size_t target) {
  check_qubit(control, n_, "Tableau::apply_cnot");
  check_qubit(target, n_, "Tableau::apply_cnot");
  if (control == target) throw std::invalid_argument("Tableau::apply_cnot: control equals target");
  for (auto& r : stab_) r = conjugate_cnot(std::move(r), control, target);
  for (auto& r : destab_) r = conjugate_cnot(std::move(r), control, target);
}

void Tableau::apply_h(size_t qubit) {
  check_qubit(qubit, n_, "Tableau::apply_h");
  for (auto& r : stab_) r = conjugate_h(std::move(r), qubit);
  for (auto& r : destab_) r = conjugate_h(std::move(r), qubit);
}

void Tableau::apply_s(size_t qubit) {
  check_qubit(qubit, n_, "Tableau::apply_s");
  for (auto& r : stab_) r = conjugate_s(std::move(r), qubit);
  for (auto& r : destab_) r = conjugate_s(std::move(r), qubit);
}

void Tableau::apply_pauli(const PauliOperator& p) {
  if (p.num_qubits() != n_) throw std::invalid_argument("Tableau::apply_pauli: size mismatch");
  for (auto& r : stab_)
    if (symplectic_product(p, r)) r.negate();
  for (auto& r : destab_)
    if (symplectic_product(p, r)) r.negate();
}

size_t Tableau::first_anticommuting(const PauliOperator& obs) const {
  for (size_t i = 0; i < n_; ++i)
    if (symplectic_product(stab_[i], obs)) return i;
  return kNone;
}

int Tableau::deterministic_sign(const PauliOperator& obs) const {
  // obs commutes with every stabilizer, so it equals +-(product of the
  // stabilizers whose destabilizer partners anticommute with it).
  PauliOperator prod(n_);
  for (size_t i = 0; i < n_; ++i)
    if (symplectic_product(destab_[i], obs)) prod = prod * stab_[i];
  if (!(prod.x == obs.x) || !(prod.z == obs.z))
    throw std::logic_error("Tableau: deterministic observable not reproduced by the group");
  return prod.sign() * obs.sign();
}

void Tableau::project(size_t pivot, const PauliOperator& obs, int outcome) {
  const PauliOperator old = stab_[pivot];
  for (size_t j = 0; j < n_; ++j) {
    if (j != pivot && symplectic_product(stab_[j], obs)) stab_[j] = stab_[j] * old;
    if (j != pivot && symplectic_product(destab_[j], obs)) destab_[j] = destab_[j] * old;
  }
  destab_[pivot] = old;
  stab_[pivot] = obs;
  if (outcome < 0) stab_[pivot].negate();
}

int Tableau::expectation(const PauliOperator& obs) const {
  check_observable(obs, n_);
  if (first_anticommuting(obs) != kNone) return 0;
  return deterministic_sign(obs);
}

int Tableau::measure(const PauliOperator& obs, std::mt19937_64& rng) {
  check_observable(obs, n_);
  size_t pivot = first_anticommuting(obs);
  if (pivot == kNone) return deterministic_sign(obs);
  int outcome = (rng() & 1) ? -1 : +1;
  project(pivot, obs, outcome);
  return outcome;
}

int Tableau::measure_forced(const PauliOperator& obs, int outcome) {
  if (outcome != +1 && outcome != -1)
    throw std::invalid_argument("Tableau::measure_forced: outcome must be +-1");
  check_observable(obs, n_);
  size_t pivot = first_anticommuting(obs);
  if (pivot == kNone) {
    int fixed = deterministic_sign(obs);
    if (fixed != outcome)
      throw std::invalid_argument("Tableau::measure_forced: outcome contradicts the state");
    return fixed;
  }
  project(pivot, obs, outcome);
  return outcome;
}

std::vector<PauliOperator> Tableau::canonical_stabilizers() const {
  std::vector<PauliOperator> rows = stab_;
  auto bit = [this](const PauliOperator& p, size_t col) {
    return col < n_ ? p.x.get(col) : p.z.get(col - n_);
  };
  size_t r = 0;
  for (size_t col = 0; col < 2 * n_ && r < rows.size(); ++col) {
    size_t pivot = kNone;
    for (size_t i = r; i < rows.size(); ++i)
      if (bit(rows[i], col)) {
        pivot = i;
        break;
      }
    if (pivot == kNone) continue;
    std::swap(rows[r], rows[pivot]);
    for (size_t i = 0; i < rows.size(); ++i)
      if (i != r && bit(rows[i], col)) rows[i] = rows[i] * rows[r];
    ++r;
  }
  return rows;
}

bool Tableau::same_state_as(const Tableau& other) const {
  return n_ == other.n_ && canonical_stabilizers() == other.canonical_stabilizers();
}

void Tableau::check_invariants() const {
  if (stab_.size() != n_ || destab_.size() != n_)
    throw std::logic_error("Tableau: row count mismatch");
  for (size_t i = 0; i < n_; ++i) {
    if (stab_[i].num_qubits() != n_ || destab_[i].num_qubits() != n_)
      throw std::logic_error("Tableau: row width mismatch");
    if (!stab_[i].is_hermitian() || !destab_[i].is_hermitian())
      throw std::logic_error("Tableau: non-Hermitian row");
  }
  for (size_t i = 0; i < n_; ++i)
    for (size_t j = 0; j < n_; ++j) {
      if (symplectic_product(stab_[i], stab_[j]))
        throw std::logic_error("Tableau: stabilizers do not commute");
      if (symplectic_product(destab_[i], destab_[j]))
        throw std::logic_error("Tableau: destabilizers do not commute");
      if (symplectic_product(destab_[i], stab_[j]) != (i == j ? 1 : 0))
        throw std::logic_error("Tableau: destabilizer pairing broken");
    }
}

Tableau tableau_from_stabilizers(const std::vector<PauliOperator>& gens) {
  if (gens.empty()) throw std::invalid_argument("tableau_from_stabilizers: empty generator set");
  const size_t n = gens[0].num_qubits();
  if (gens.size() != n)
    throw std::invalid_argument("tableau_from_stabilizers: need exactly n generators");
  Gf2Matrix sympl(0, 2 * n);
  for (const auto& g : gens) {
    if (g.num_qubits() != n)
      throw std::invalid_argument("tableau_from_stabilizers: generator size mismatch");
    if (!g.is_hermitian())
      throw std::invalid_argument("tableau_from_stabilizers: non-Hermitian generator");
    sympl.append_row(g.x.concat(g.z));
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (symplectic_product(gens[i], gens[j]))
        throw std::invalid_argument("tableau_from_stabilizers: generators do not commute");
  if (rank(sympl) != n)
    throw std::invalid_argument("tableau_from_stabilizers: generators are dependent");

  Tableau t(n);
  for (size_t i = 0; i < n; ++i) {
    if (t.expectation(gens[i]) == -1) {
      // Flip the sign of generator i without disturbing generators 0..i-1:
      // solve sym(P, gens[j]) = [j == i] for the correcting Pauli P.
      Gf2Matrix a(0, 2 * n);
      BitVec rhs(i + 1);
      for (size_t j = 0; j <= i; ++j) a.append_row(gens[j].z.concat(gens[j].x));
      rhs.set(i, true);
      auto sol = solve_gf2(a, rhs);
      if (!sol) throw std::logic_error("tableau_from_stabilizers: sign fix unsolvable");
      PauliOperator fix(n);
      fix.x = sol->slice(0, n);
      fix.z = sol->slice(n, n);
      t.apply_pauli(fix);
    }
    t.measure_forced(gens[i], +1);
  }
  return t;
}

Tableau tensor_product(const Tableau& a, const Tableau& b) {
  const size_t n = a.num_qubits() + b.num_qubits();
  std::vector<PauliOperator> stab, destab;
  stab.reserve(n);
  destab.reserve(n);
  for (size_t i = 0; i < a.num_qubits(); ++i) {
    stab.push_back(embed_pauli(a.stabilizer(i), n, 0));
    destab.push_back(embed_pauli(a.destabilizer(i), n, 0));
  }
  for (size_t i = 0; i < b.num_qubits(); ++i) {
    stab.push_back(embed_pauli(b.stabilizer(i), n, a.num_qubits()));
    destab.push_back(embed_pauli(b.destabilizer(i), n, a.num_qubits()));
  }
  return Tableau::from_rows(std::move(stab), std::move(destab));
}

Tableau restrict_to_qubits(const Tableau& t, size_t offset, size_t count) {
  if (offset + count > t.num_qubits() || count == 0)
    throw std::invalid_argument("restrict_to_qubits: bad window");
  // For a state that factors across the window boundary the canonical form
  // localizes, so exactly `count` rows live entirely inside the window.
  std::vector<PauliOperator> inside;
  for (const auto& row : t.canonical_stabilizers()) {
    bool in_window = true;
    for (size_t q = 0; q < t.num_qubits() && in_window; ++q) {
      if (!row.x.get(q) && !row.z.get(q)) continue;
      in_window = q >= offset && q < offset + count;
    }
    if (!in_window) continue;
    PauliOperator local(count);
    local.x = row.x.slice(offset, count);
    local.z = row.z.slice(offset, count);
    local.set_phase(row.phase());
    inside.push_back(std::move(local));
  }
  if (inside.size() != count)
    throw std::invalid_argument("restrict_to_qubits: window entangled with the rest");
  return tableau_from_stabilizers(inside);
}

PauliOperator embed_pauli(const PauliOperator& p, size_t total, size_t offset) {
  if (offset + p.num_qubits() > total)
    throw std::invalid_argument("embed_pauli: window exceeds register");
  BitVec pad_left(offset), pad_right(total - offset - p.num_qubits());
  PauliOperator r(total);
  r.x = pad_left.concat(p.x).concat(pad_right);
  r.z = pad_left.concat(p.z).concat(pad_right);
  r.set_phase(p.phase());
  return r;
}

std::vector<std::complex<double>> state_vector(const Tableau& t) {
  const size_t n = t.num_qubits();
  if (n > 20) throw std::invalid_argument("state_vector: register too large");
  const size_t dim = size_t(1) << n;
  using cd = std::complex<double>;
  const cd iunit(0.0, 1.0);

  // Apply (I + S)/2 for every generator to a start vector with nonzero
  // overlap. |0..0> works unless some generator forbids it; a fixed
  // pseudo-random vector then succeeds with certainty up to measure zero.
  auto project = [&](std::vector<cd> v) {
    std::vector<cd> sv(dim);
    for (const PauliOperator& s : t.stabilizers()) {
      uint64_t x = 0, z = 0;
      for (size_t q = 0; q < n; ++q) {
        if (s.x.get(q)) x |= uint64_t(1) << q;
        if (s.z.get(q)) z |= uint64_t(1) << q;
      }
      cd front = 1.0;
      for (int k = 0; k < s.phase(); ++k) front *= iunit;
      for (size_t b = 0; b < dim; ++b) {
        cd amp = front * v[b];
        if (std::popcount(uint64_t(b) & z) & 1) amp = -amp;
        sv[b ^ x] = amp;
      }
      for (size_t b = 0; b < dim; ++b) v[b] = 0.5 * (v[b] + sv[b]);
    }
    return v;
  };

  std::vector<cd> v(dim);
  v[0] = 1.0;
  v = project(std::move(v));
  double norm2 = 0.0;
  for (const cd& a : v) norm2 += std::norm(a);
  if (norm2 < 1e-12) {
    std::mt19937_64 gen(0x5eedf00dULL);
    auto unit = [&gen] { return double(gen() >> 11) * 0x1.0p-53 - 0.5; };
    for (cd& a : v) a = cd(unit(), unit());
    v = project(std::move(v));
    norm2 = 0.0;
    for (const cd& a : v) norm2 += std::norm(a);
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (cd& a : v) a *= scale;
  return v;
}

Tableau random_stabilizer_state(size_t n, std::mt19937_64& rng, size_t depth) {
  if (n == 0) throw std::invalid_argument("random_stabilizer_state: n must be positive");
  if (depth == 0) depth = 2 * n * n + 16;
  Tableau t(n);
  for (size_t step = 0; step < depth; ++step) {
    size_t kind = n >= 2 ? rng() % 3 : rng() % 2;
    size_t q = rng() % n;
    switch (kind) {
      case 0:
        t.apply_h(q);
        break;
      case 1:
        t.apply_s(q);
        break;
      default: {
        size_t r = rng() % (n - 1);
        t.apply_cnot(q, r == q ? n - 1 : r);
        break;
      }
    }
  }
  return t;
}

}  // namespace blockqec
