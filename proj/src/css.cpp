#include "blockqec/css.hpp"

#include <sstream>
#include <stdexcept>

namespace blockqec {

namespace {

// Row-reduction helper that tracks an echelonized basis incrementally.
class IncrementalBasis {
 public:
  // Returns the reduced vector; zero means v was dependent.
  BitVec reduce(const BitVec& v) const {
    BitVec r = v;
    for (const auto& [pivot, row] : basis_)
      if (r.get(pivot)) r ^= row;
    return r;
  }
  bool insert(const BitVec& v) {
    BitVec r = reduce(v);
    if (!r.any()) return false;
    size_t pivot = 0;
    while (!r.get(pivot)) ++pivot;
    basis_.emplace_back(pivot, r);
    return true;
  }

 private:
  std::vector<std::pair<size_t, BitVec>> basis_;
};

Gf2Matrix stack(const std::vector<const Gf2Matrix*>& parts, size_t cols) {
  Gf2Matrix m(0, cols);
  for (const auto* p : parts)
    for (size_t i = 0; i < p->num_rows(); ++i) m.append_row(p->row(i));
  return m;
}

}  // namespace

PauliOperator CssCode::x_stabilizer(size_t i) const {
  return PauliOperator(hx.row(i), BitVec(n), +1);
}
PauliOperator CssCode::z_stabilizer(size_t i) const {
  return PauliOperator(BitVec(n), hz.row(i), +1);
}
PauliOperator CssCode::logical_x_op(size_t i) const {
  return PauliOperator(logical_x.row(i), BitVec(n), +1);
}
PauliOperator CssCode::logical_z_op(size_t i) const {
  return PauliOperator(BitVec(n), logical_z.row(i), +1);
}

Gf2Matrix logical_z_from_shifts(const LinearCode& classical, size_t k) {
  Gf2Matrix lz(0, classical.n);
  if (k == 0) return lz;
  IncrementalBasis basis;
  for (size_t i = 0; i < classical.H.num_rows(); ++i) basis.insert(classical.H.row(i));
  const BitVec g = classical.generator_poly.to_bits(classical.n);
  for (size_t shift = 0; shift < classical.n && lz.num_rows() < k; ++shift) {
    BitVec cand = g.rotated_left(shift);
    if (basis.insert(cand)) lz.append_row(cand);
  }
  if (lz.num_rows() != k)
    throw std::logic_error("logical_z_from_shifts: not enough independent shifts");
  return lz;
}

std::optional<Gf2Matrix> solve_logical_x(const CssCode& code, const Gf2Matrix& logical_z) {
  const size_t k = logical_z.num_rows();
  Gf2Matrix constraints = stack({&code.hz, &logical_z}, code.n);
  Gf2Matrix lx(0, code.n);
  for (size_t i = 0; i < k; ++i) {
    BitVec rhs(code.hz.num_rows() + k);
    rhs.set(code.hz.num_rows() + i, true);
    auto x = solve_gf2(constraints, rhs);
    if (!x) return std::nullopt;
    lx.append_row(*x);
  }
  return lx;
}

void solve_partners(CssCode& code) {
  const size_t rx = code.hx.num_rows();
  const size_t rz = code.hz.num_rows();

  // Z-type partners for the X-type generators: partner i anticommutes with
  // generator i alone and acts trivially on the logical X operators.
  {
    Gf2Matrix constraints = stack({&code.hx, &code.logical_x}, code.n);
    code.partner_z = Gf2Matrix(0, code.n);
    for (size_t i = 0; i < rx; ++i) {
      BitVec rhs(rx + code.k);
      rhs.set(i, true);
      auto z = solve_gf2(constraints, rhs);
      if (!z) throw std::logic_error("solve_partners: no Z partner");
      code.partner_z.append_row(*z);
    }
  }
  // X-type partners for the Z-type generators; these must additionally
  // commute with the Z partners picked above.
  {
    Gf2Matrix constraints = stack({&code.hz, &code.logical_z, &code.partner_z}, code.n);
    code.partner_x = Gf2Matrix(0, code.n);
    for (size_t j = 0; j < rz; ++j) {
      BitVec rhs(rz + code.k + rx);
      rhs.set(j, true);
      auto x = solve_gf2(constraints, rhs);
      if (!x) throw std::logic_error("solve_partners: no X partner");
      code.partner_x.append_row(*x);
    }
  }
}

CssCode css_from_matrices(Gf2Matrix hx, Gf2Matrix hz, std::string name) {
  CssCode code;
  code.n = hx.num_cols();
  if (hz.num_cols() != code.n) throw std::invalid_argument("css_from_matrices: size mismatch");
  for (size_t i = 0; i < hx.num_rows(); ++i)
    for (size_t j = 0; j < hz.num_rows(); ++j)
      if (hx.row(i).dot(hz.row(j)))
        throw std::invalid_argument("css_from_matrices: Hx Hz^T != 0");
  code.hx = std::move(hx);
  code.hz = std::move(hz);
  code.name = std::move(name);
  code.k = code.n - rank(code.hx) - rank(code.hz);

  // Z logicals: kernel of Hx, taken modulo the Z stabilizer row space.
  IncrementalBasis mod_stab;
  for (size_t i = 0; i < code.hz.num_rows(); ++i) mod_stab.insert(code.hz.row(i));
  code.logical_z = Gf2Matrix(0, code.n);
  for (const BitVec& v : code.hx.kernel_basis()) {
    if (code.logical_z.num_rows() == code.k) break;
    if (mod_stab.insert(v)) code.logical_z.append_row(v);
  }
  if (code.logical_z.num_rows() != code.k)
    throw std::logic_error("css_from_matrices: logical Z extraction failed");

  auto lx = solve_logical_x(code, code.logical_z);
  if (!lx) throw std::logic_error("css_from_matrices: logical X unsolvable");
  code.logical_x = *lx;
  solve_partners(code);
  return code;
}

CssCode css_from_selfdual(const LinearCode& classical, std::string name) {
  if (!selfdual_containment(classical))
    throw std::invalid_argument("css_from_selfdual: dual not contained in code");
  if (2 * classical.k < classical.n)
    throw std::invalid_argument("css_from_selfdual: negative logical count");

  CssCode code;
  code.n = classical.n;
  code.k = 2 * classical.k - classical.n;
  code.d = classical.claimed_d;
  code.name = name.empty() ? classical.name : std::move(name);
  code.hx = classical.H;
  code.hz = classical.H;
  code.logical_z = logical_z_from_shifts(classical, code.k);
  auto lx = solve_logical_x(code, code.logical_z);
  if (!lx) throw std::logic_error("css_from_selfdual: logical X unsolvable");
  code.logical_x = *lx;
  solve_partners(code);
  return code;
}

Gf2Matrix build_encoding_matrix(const CssCode& code) {
  // Rows are a symplectic basis ordered so that row i and row n+i pair up:
  // X half [Hx; partner_x; logical_x], Z half [partner_z; Hz; logical_z].
  // On the canonical code (X_i stabilizers first, then Z_j, logicals on the
  // remaining qubits) this produces the identity.
  const size_t n = code.n;
  Gf2Matrix m(0, 2 * n);
  const BitVec zero(n);
  auto as_x = [&](const BitVec& x) { return x.concat(zero); };
  auto as_z = [&](const BitVec& z) { return zero.concat(z); };
  for (size_t i = 0; i < code.hx.num_rows(); ++i) m.append_row(as_x(code.hx.row(i)));
  for (size_t i = 0; i < code.partner_x.num_rows(); ++i) m.append_row(as_x(code.partner_x.row(i)));
  for (size_t i = 0; i < code.k; ++i) m.append_row(as_x(code.logical_x.row(i)));
  for (size_t i = 0; i < code.partner_z.num_rows(); ++i) m.append_row(as_z(code.partner_z.row(i)));
  for (size_t i = 0; i < code.hz.num_rows(); ++i) m.append_row(as_z(code.hz.row(i)));
  for (size_t i = 0; i < code.k; ++i) m.append_row(as_z(code.logical_z.row(i)));
  if (m.num_rows() != 2 * n) throw std::logic_error("build_encoding_matrix: wrong row count");
  return m;
}

Gf2Matrix symplectic_form(size_t n) {
  Gf2Matrix j(2 * n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    j.set(i, n + i, true);
    j.set(n + i, i, true);
  }
  return j;
}

bool is_symplectic(const Gf2Matrix& m) {
  const size_t two_n = m.num_cols();
  if (m.num_rows() != two_n || two_n % 2) return false;
  const size_t n = two_n / 2;
  std::vector<BitVec> swapped(two_n);
  for (size_t i = 0; i < two_n; ++i) {
    const BitVec& r = m.row(i);
    swapped[i] = r.slice(n, n).concat(r.slice(0, n));
  }
  for (size_t i = 0; i < two_n; ++i)
    for (size_t j = i; j < two_n; ++j) {
      bool want = (j == i + n);
      if (m.row(i).dot(swapped[j]) != want) return false;
    }
  return true;
}

BitVec css_syndrome(const CssCode& code, const PauliOperator& p) {
  const size_t rx = code.hx.num_rows();
  const size_t rz = code.hz.num_rows();
  BitVec s(rx + rz);
  for (size_t i = 0; i < rx; ++i)
    if (code.hx.row(i).dot(p.z)) s.set(i, true);
  for (size_t j = 0; j < rz; ++j)
    if (code.hz.row(j).dot(p.x)) s.set(rx + j, true);
  return s;
}

PauliOperator pure_error(const CssCode& code, const BitVec& s) {
  const size_t rx = code.hx.num_rows();
  const size_t rz = code.hz.num_rows();
  if (s.size() != rx + rz) throw std::invalid_argument("pure_error: syndrome length");
  BitVec x(code.n), z(code.n);
  for (size_t i = 0; i < rx; ++i)
    if (s.get(i)) z ^= code.partner_z.row(i);
  for (size_t j = 0; j < rz; ++j)
    if (s.get(rx + j)) x ^= code.partner_x.row(j);
  return PauliOperator(x, z, +1);
}

LogicalAction logical_action(const CssCode& code, const PauliOperator& p) {
  const PauliOperator t = pure_error(code, css_syndrome(code, p));
  const BitVec qx = p.x ^ t.x;
  const BitVec qz = p.z ^ t.z;
  LogicalAction a{BitVec(code.k), BitVec(code.k)};
  for (size_t i = 0; i < code.k; ++i) {
    if (code.logical_z.row(i).dot(qx)) a.x.set(i, true);
    if (code.logical_x.row(i).dot(qz)) a.z.set(i, true);
  }
  return a;
}

ConcatSpec concatenate(const CssCode& outer, const CssCode& inner) {
  if (inner.k != 1) throw std::invalid_argument("concatenate: inner code must have k = 1");
  ConcatSpec spec;
  spec.n = outer.n * inner.n;
  spec.k = outer.k;
  spec.d = outer.d * inner.d;
  spec.name = outer.name + "/" + inner.name;
  return spec;
}

namespace {

void write_matrix(std::ostream& os, const Gf2Matrix& m) {
  os << m.num_rows() << "\n";
  for (size_t i = 0; i < m.num_rows(); ++i) os << m.row(i).to_hex() << "\n";
}

Gf2Matrix read_matrix(std::istream& is, size_t cols) {
  size_t rows = 0;
  if (!(is >> rows)) throw std::invalid_argument("css_from_text: bad matrix header");
  Gf2Matrix m(0, cols);
  for (size_t i = 0; i < rows; ++i) {
    std::string hex;
    if (!(is >> hex)) throw std::invalid_argument("css_from_text: missing row");
    m.append_row(BitVec::from_hex(hex, cols));
  }
  return m;
}

}  // namespace

std::string css_to_text(const CssCode& code) {
  std::ostringstream os;
  os << (code.name.empty() ? "-" : code.name) << " " << code.n << " " << code.k << " "
     << code.d << "\n";
  write_matrix(os, code.hx);
  write_matrix(os, code.hz);
  write_matrix(os, code.logical_x);
  write_matrix(os, code.logical_z);
  write_matrix(os, code.partner_z);
  write_matrix(os, code.partner_x);
  return os.str();
}

CssCode css_from_text(const std::string& text) {
  std::istringstream is(text);
  CssCode code;
  if (!(is >> code.name >> code.n >> code.k >> code.d))
    throw std::invalid_argument("css_from_text: bad header");
  if (code.name == "-") code.name.clear();
  code.hx = read_matrix(is, code.n);
  code.hz = read_matrix(is, code.n);
  code.logical_x = read_matrix(is, code.n);
  code.logical_z = read_matrix(is, code.n);
  code.partner_z = read_matrix(is, code.n);
  code.partner_x = read_matrix(is, code.n);
  return code;
}

}  // namespace blockqec
