#include "chevlab/homology.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "chevlab/fp.hpp"

namespace chevlab {

namespace mp = boost::multiprecision;

RingSpec RingSpec::Fp(uint32_t p) {
  if (!is_prime(p)) throw InvalidInput("F_p needs a prime p");
  return {RingKind::Fp, p};
}

std::string RingSpec::str() const {
  switch (kind) {
    case RingKind::Z: return "Z";
    case RingKind::Q: return "Q";
    case RingKind::Fp: return "F" + std::to_string(p);
  }
  return "?";
}

// ---------------------------------------------------------------------------
// SparseZ

SparseZ::SparseZ(int nrows, int ncols) : nrows_(nrows), ncols_(ncols) {
  rows_.resize(nrows);
}

void SparseZ::add(int r, int c, const Int& v) {
  if (r < 0 || r >= nrows_ || c < 0 || c >= ncols_)
    throw InvalidInput("sparse matrix index out of range");
  if (v == 0) return;
  auto& row = rows_[r];
  auto it = row.find(c);
  if (it == row.end()) {
    row.emplace(c, v);
  } else {
    it->second += v;
    if (it->second == 0) row.erase(it);
  }
}

size_t SparseZ::nnz() const {
  size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

// ---------------------------------------------------------------------------
// Smith normal form
//
// Fraction-free row/column elimination with pivoting on entries of minimal
// absolute value; ties prefer low fill-in (Markowitz count). Each pivot is
// isolated with exact integer operations, and the collected diagonal is
// repaired into a divisibility chain with gcd/lcm exchanges at the end.

namespace {

struct SnfWork {
  int nrows, ncols;
  std::vector<std::map<int32_t, Int>> rows;
  std::vector<std::set<int32_t>> col_rows;  // active rows per column
  std::vector<bool> row_active;

  explicit SnfWork(SparseZ&& m)
      : nrows(m.nrows()), ncols(m.ncols()) {
    rows.resize(nrows);
    col_rows.resize(ncols);
    row_active.assign(nrows, true);
    for (int r = 0; r < nrows; ++r) {
      rows[r] = m.row(r);
      for (const auto& [c, v] : rows[r]) col_rows[c].insert(r);
    }
  }

  void set_entry(int r, int c, const Int& v) {
    auto& row = rows[r];
    if (v == 0) {
      if (row.erase(c)) col_rows[c].erase(r);
    } else {
      auto [it, inserted] = row.try_emplace(c, v);
      if (!inserted)
        it->second = v;
      else
        col_rows[c].insert(r);
    }
  }

  const Int* entry(int r, int c) const {
    auto it = rows[r].find(c);
    return it == rows[r].end() ? nullptr : &it->second;
  }

  // rows[dst] -= q * rows[src]
  void row_op(int dst, int src, const Int& q) {
    if (q == 0) return;
    for (const auto& [c, v] : rows[src]) {
      auto it = rows[dst].find(c);
      if (it == rows[dst].end()) {
        rows[dst].emplace(c, -q * v);
        col_rows[c].insert(dst);
      } else {
        it->second -= q * v;
        if (it->second == 0) {
          rows[dst].erase(it);
          col_rows[c].erase(dst);
        }
      }
    }
  }

  // col[dst] -= q * col[src]
  void col_op(int dst, int src, const Int& q) {
    if (q == 0) return;
    std::vector<int> touched(col_rows[src].begin(), col_rows[src].end());
    for (int r : touched) {
      const Int& v = rows[r].at(src);
      auto it = rows[r].find(dst);
      if (it == rows[r].end()) {
        rows[r].emplace(dst, -q * v);
        col_rows[dst].insert(r);
      } else {
        it->second -= q * v;
        if (it->second == 0) {
          rows[r].erase(it);
          col_rows[dst].erase(r);
        }
      }
    }
  }

  // Minimal |value|, ties by (row_nnz - 1) * (col_nnz - 1).
  bool select_pivot(int& pr, int& pc) const {
    bool found = false;
    Int best_abs = 0;
    size_t best_fill = 0;
    for (int r = 0; r < nrows; ++r) {
      if (!row_active[r] || rows[r].empty()) continue;
      for (const auto& [c, v] : rows[r]) {
        Int a = mp::abs(v);
        size_t fill = (rows[r].size() - 1) * (col_rows[c].size() - 1);
        if (!found || a < best_abs || (a == best_abs && fill < best_fill)) {
          found = true;
          best_abs = a;
          best_fill = fill;
          pr = r;
          pc = c;
        }
        if (best_abs == 1 && best_fill == 0) return true;
      }
    }
    return found;
  }
};

void divisibility_fixup(std::vector<Int>& d) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < d.size(); ++i) {
      for (size_t j = i + 1; j < d.size(); ++j) {
        if (d[j] % d[i] != 0) {
          Int g = mp::gcd(d[i], d[j]);
          Int l = d[i] / g * d[j];
          d[i] = g;
          d[j] = l;
          changed = true;
        }
      }
    }
  }
  std::sort(d.begin(), d.end());
}

}  // namespace

SnfResult smith_normal_form(SparseZ m) {
  SnfWork w(std::move(m));
  std::vector<Int> factors;

  int pr = -1, pc = -1;
  while (w.select_pivot(pr, pc)) {
    // Shrink the pivot until it divides its whole row and column.
    for (;;) {
      Int piv = w.rows[pr].at(pc);
      bool moved = false;
      // column direction
      std::vector<int> col(w.col_rows[pc].begin(), w.col_rows[pc].end());
      for (int r : col) {
        if (r == pr) continue;
        const Int& v = w.rows[r].at(pc);
        if (v % piv != 0) {
          w.row_op(r, pr, v / piv);  // leaves remainder at (r, pc)
          pr = r;
          moved = true;
          break;
        }
      }
      if (moved) continue;
      // row direction
      int bad_col = -1;
      Int bad_q;
      for (const auto& [c, v] : w.rows[pr]) {
        if (c == pc) continue;
        if (v % piv != 0) {
          bad_col = c;
          bad_q = v / piv;
          break;
        }
      }
      if (bad_col >= 0) {
        w.col_op(bad_col, pc, bad_q);
        pc = bad_col;
        continue;
      }
      break;
    }

    // Exact clearing of the pivot column, then the pivot row.
    Int piv = w.rows[pr].at(pc);
    std::vector<int> col(w.col_rows[pc].begin(), w.col_rows[pc].end());
    for (int r : col) {
      if (r == pr) continue;
      w.row_op(r, pr, w.rows[r].at(pc) / piv);
    }
    // The pivot column is zero elsewhere, so column ops only touch row pr.
    std::vector<int32_t> rowcols;
    for (const auto& [c, v] : w.rows[pr])
      if (c != pc) rowcols.push_back(c);
    for (int32_t c : rowcols) w.set_entry(pr, c, 0);

    factors.push_back(mp::abs(piv));
    w.set_entry(pr, pc, 0);
    w.row_active[pr] = false;
  }

  if (!factors.empty()) divisibility_fixup(factors);
  SnfResult res;
  res.rank = static_cast<int>(factors.size());
  res.factors = std::move(factors);
  return res;
}

int rank_over_Q(SparseZ m) { return smith_normal_form(std::move(m)).rank; }

// ---------------------------------------------------------------------------
// Rational kernel via integer row echelon

std::vector<std::vector<Int>> kernel_basis_over_Q(const SparseZ& m) {
  const int nrows = m.nrows(), ncols = m.ncols();
  std::vector<std::map<int32_t, Int>> rows(nrows);
  for (int r = 0; r < nrows; ++r) rows[r] = m.row(r);

  std::vector<int> pivot_row_of_col(ncols, -1);
  std::vector<bool> processed(nrows, false);
  std::vector<int> pivot_cols;

  for (int c = 0; c < ncols; ++c) {
    // Euclid-reduce all unprocessed rows with a nonzero at column c down to
    // a single survivor.
    for (;;) {
      int r1 = -1, r2 = -1;
      Int v1, v2;
      for (int r = 0; r < nrows; ++r) {
        if (processed[r]) continue;
        auto it = rows[r].find(c);
        if (it == rows[r].end()) continue;
        Int a = mp::abs(it->second);
        if (r1 < 0 || a < mp::abs(v1)) {
          r2 = r1; v2 = v1;
          r1 = r; v1 = it->second;
        } else if (r2 < 0 || a < mp::abs(v2)) {
          r2 = r; v2 = it->second;
        }
      }
      if (r2 < 0) {
        if (r1 >= 0) {
          pivot_row_of_col[c] = r1;
          pivot_cols.push_back(c);
          processed[r1] = true;
        }
        break;
      }
      // rows[r2] -= q * rows[r1]; |v1| <= |v2| so q != 0
      Int q = v2 / v1;
      for (const auto& [cc, vv] : rows[r1]) {
        auto it = rows[r2].find(cc);
        if (it == rows[r2].end())
          rows[r2].emplace(cc, -q * vv);
        else {
          it->second -= q * vv;
          if (it->second == 0) rows[r2].erase(it);
        }
      }
    }
  }

  std::vector<bool> is_pivot(ncols, false);
  for (int c : pivot_cols) is_pivot[c] = true;

  std::vector<std::vector<Int>> basis;
  for (int f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Int> x(ncols, 0);
    x[f] = 1;
    for (auto it = pivot_cols.rbegin(); it != pivot_cols.rend(); ++it) {
      int c = *it;
      if (c > f) continue;  // columns beyond f contribute nothing yet
      const auto& row = rows[pivot_row_of_col[c]];
      Int s = 0;
      for (const auto& [cc, vv] : row)
        if (cc > c) s += vv * x[cc];
      const Int piv = row.at(c);
      Int g = mp::gcd(mp::abs(s), mp::abs(piv));
      if (g == 0) g = 1;
      Int num = s / g, den = piv / g;
      if (den != 1) {
        for (auto& e : x) e *= den;
      }
      x[c] = -num;
    }
    // primitive, first nonzero positive
    Int content = 0;
    for (const auto& e : x) content = mp::gcd(content, mp::abs(e));
    if (content > 1)
      for (auto& e : x) e /= content;
    for (const auto& e : x) {
      if (e == 0) continue;
      if (e < 0)
        for (auto& y : x) y = -y;
      break;
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Dense mod-p

FpDense::FpDense(int nrows, int ncols, uint32_t p)
    : nrows_(nrows), ncols_(ncols), p_(p) {
  if (!is_prime(p)) throw InvalidInput("F_p needs a prime p");
  a_.assign(static_cast<size_t>(nrows) * ncols, 0);
}

FpDense reduce_mod_p(const SparseZ& m, uint32_t p) {
  FpDense d(m.nrows(), m.ncols(), p);
  for (int r = 0; r < m.nrows(); ++r)
    for (const auto& [c, v] : m.row(r)) {
      Int red = v % p;
      if (red < 0) red += p;
      d.at(r, c) = static_cast<uint32_t>(red);
    }
  return d;
}

namespace {

// Gauss-Jordan; returns pivot columns. The matrix is left in reduced form.
std::vector<int> rref_in_place(FpDense& m) {
  PrimeField F(m.p());
  std::vector<int> pivots;
  int row = 0;
  for (int c = 0; c < m.ncols() && row < m.nrows(); ++c) {
    int pr = -1;
    for (int r = row; r < m.nrows(); ++r)
      if (m.at(r, c) != 0) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    if (pr != row)
      for (int cc = 0; cc < m.ncols(); ++cc)
        std::swap(m.at(pr, cc), m.at(row, cc));
    uint32_t inv = F.inv(m.at(row, c));
    for (int cc = 0; cc < m.ncols(); ++cc)
      m.at(row, cc) = F.mul(m.at(row, cc), inv);
    for (int r = 0; r < m.nrows(); ++r) {
      if (r == row || m.at(r, c) == 0) continue;
      uint32_t f = m.at(r, c);
      for (int cc = 0; cc < m.ncols(); ++cc)
        m.at(r, cc) = F.sub(m.at(r, cc), F.mul(f, m.at(row, cc)));
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

int rank_mod_p(FpDense m) {
  return static_cast<int>(rref_in_place(m).size());
}

std::vector<std::vector<uint32_t>> kernel_basis_mod_p(FpDense m) {
  PrimeField F(m.p());
  std::vector<int> pivots = rref_in_place(m);
  std::vector<bool> is_pivot(m.ncols(), false);
  for (int c : pivots) is_pivot[c] = true;

  std::vector<std::vector<uint32_t>> basis;
  for (int f = 0; f < m.ncols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<uint32_t> x(m.ncols(), 0);
    x[f] = 1;
    for (size_t i = 0; i < pivots.size(); ++i)
      x[pivots[i]] = F.neg(m.at(static_cast<int>(i), f));
    basis.push_back(std::move(x));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// SimplicialComplex

namespace {

std::string simplex_key(const std::vector<int32_t>& verts) {
  return std::string(reinterpret_cast<const char*>(verts.data()),
                     verts.size() * sizeof(int32_t));
}

}  // namespace

std::vector<int32_t> SimplicialComplex::sort_simplex(
    std::vector<int32_t> verts) const {
  for (int32_t v : verts)
    if (v < 0 || v >= num_vertices())
      throw InvalidInput("simplex vertex id out of range");
  std::sort(verts.begin(), verts.end(), [&](int32_t a, int32_t b) {
    return std::pair(vertex_types_[a], a) < std::pair(vertex_types_[b], b);
  });
  for (size_t i = 0; i + 1 < verts.size(); ++i) {
    if (verts[i] == verts[i + 1])
      throw InvalidInput("simplex with repeated vertex");
    if (vertex_types_[verts[i]] == vertex_types_[verts[i + 1]])
      throw InvalidInput("simplex with two vertices of the same type");
  }
  return verts;
}

SimplicialComplex SimplicialComplex::from_chambers(
    std::vector<int> vertex_types,
    const std::vector<std::vector<int32_t>>& chambers) {
  SimplicialComplex sc;
  sc.vertex_types_ = std::move(vertex_types);
  if (chambers.empty()) throw InvalidInput("complex needs at least one chamber");

  const size_t chamber_size = chambers[0].size();
  std::set<std::vector<int32_t>> level;
  for (const auto& ch : chambers) {
    if (ch.size() != chamber_size)
      throw InvalidInput("all chambers must have the same dimension");
    level.insert(sc.sort_simplex(ch));
  }

  const int top = static_cast<int>(chamber_size) - 1;
  sc.faces_.resize(top + 1);
  sc.face_index_.resize(top + 1);
  for (int d = top; d >= 0; --d) {
    sc.faces_[d].assign(level.begin(), level.end());
    auto& idx = sc.face_index_[d];
    for (size_t i = 0; i < sc.faces_[d].size(); ++i)
      idx[simplex_key(sc.faces_[d][i])] = static_cast<int32_t>(i);
    if (d == 0) break;
    std::set<std::vector<int32_t>> lower;
    for (const auto& s : level) {
      std::vector<int32_t> face(s.size() - 1);
      for (size_t k = 0; k < s.size(); ++k) {
        face.clear();
        for (size_t i = 0; i < s.size(); ++i)
          if (i != k) face.push_back(s[i]);
        lower.insert(face);
      }
    }
    level = std::move(lower);
  }

  if (static_cast<int>(sc.faces_[0].size()) != sc.num_vertices())
    throw InvalidInput("every vertex must lie in a chamber");
  return sc;
}

int SimplicialComplex::face_id(int d, const std::vector<int32_t>& verts) const {
  if (d < 0 || d > dim()) return -1;
  auto it = face_index_[d].find(simplex_key(verts));
  return it == face_index_[d].end() ? -1 : it->second;
}

SparseZ SimplicialComplex::boundary_matrix(int d) const {
  if (d < 0 || d > dim()) throw InvalidInput("boundary degree out of range");
  if (d == 0) {
    SparseZ m(1, num_faces(0));
    for (int j = 0; j < num_faces(0); ++j) m.add(0, j, 1);
    return m;
  }
  SparseZ m(num_faces(d - 1), num_faces(d));
  std::vector<int32_t> face;
  for (int j = 0; j < num_faces(d); ++j) {
    const auto& s = faces_[d][j];
    for (size_t k = 0; k < s.size(); ++k) {
      face.clear();
      for (size_t i = 0; i < s.size(); ++i)
        if (i != k) face.push_back(s[i]);
      int r = face_id(d - 1, face);
      m.add(r, j, (k % 2 == 0) ? 1 : -1);
    }
  }
  return m;
}

std::vector<int> SimplicialComplex::panel_chamber_counts() const {
  if (dim() == 0) return {static_cast<int>(chambers().size())};
  std::vector<int> counts(num_faces(dim() - 1), 0);
  std::vector<int32_t> face;
  for (const auto& ch : chambers()) {
    for (size_t k = 0; k < ch.size(); ++k) {
      face.clear();
      for (size_t i = 0; i < ch.size(); ++i)
        if (i != k) face.push_back(ch[i]);
      ++counts[face_id(dim() - 1, face)];
    }
  }
  return counts;
}

long long SimplicialComplex::reduced_euler_characteristic() const {
  long long chi = -1;
  for (int d = 0; d <= dim(); ++d)
    chi += (d % 2 == 0 ? 1LL : -1LL) * num_faces(d);
  return chi;
}

// ---------------------------------------------------------------------------
// Chains

namespace {

Int normalize_coeff(const RingSpec& ring, const Int& v) {
  if (ring.kind != RingKind::Fp) return v;
  Int r = v % ring.p;
  if (r < 0) r += ring.p;
  return r;
}

}  // namespace

bool Chain::operator==(const Chain& o) const {
  return ring == o.ring && degree == o.degree && coeff == o.coeff;
}

Chain make_chain(RingSpec ring, int degree) {
  Chain c;
  c.ring = ring;
  c.degree = degree;
  return c;
}

void chain_add_term(Chain& c, int32_t simplex, const Int& v) {
  Int nv = normalize_coeff(c.ring, v);
  if (nv == 0) return;
  auto it = c.coeff.find(simplex);
  if (it == c.coeff.end()) {
    c.coeff.emplace(simplex, nv);
  } else {
    it->second = normalize_coeff(c.ring, it->second + nv);
    if (it->second == 0) c.coeff.erase(it);
  }
}

Chain chain_negate(const Chain& c) {
  Chain r = make_chain(c.ring, c.degree);
  for (const auto& [s, v] : c.coeff) chain_add_term(r, s, -v);
  return r;
}

Chain chain_add(const Chain& a, const Chain& b) {
  if (!(a.ring == b.ring) || a.degree != b.degree)
    throw ContextMismatch("chain addition across rings or degrees");
  Chain r = a;
  for (const auto& [s, v] : b.coeff) chain_add_term(r, s, v);
  return r;
}

Chain chain_scale(const Chain& a, const Int& s) {
  Chain r = make_chain(a.ring, a.degree);
  for (const auto& [id, v] : a.coeff) chain_add_term(r, id, v * s);
  return r;
}

Chain boundary(const SimplicialComplex& sc, const Chain& c) {
  if (c.degree < 0 || c.degree > sc.dim())
    throw ContextMismatch("chain degree outside the complex");
  for (const auto& [s, v] : c.coeff)
    if (s < 0 || s >= sc.num_faces(c.degree))
      throw ContextMismatch("chain simplex id outside the complex");

  Chain out = make_chain(c.ring, c.degree - 1);
  if (c.degree == 0) {
    Int total = 0;
    for (const auto& [s, v] : c.coeff) total += v;
    chain_add_term(out, 0, total);
    return out;
  }
  std::vector<int32_t> face;
  for (const auto& [sid, v] : c.coeff) {
    const auto& s = sc.faces(c.degree)[sid];
    for (size_t k = 0; k < s.size(); ++k) {
      face.clear();
      for (size_t i = 0; i < s.size(); ++i)
        if (i != k) face.push_back(s[i]);
      chain_add_term(out, sc.face_id(c.degree - 1, face),
                     (k % 2 == 0) ? v : -v);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Homology profiles

bool HomologyProfile::trivial_outside(int d) const {
  for (int deg = -1; deg <= top; ++deg) {
    if (deg == d) continue;
    const auto& h = degree(deg);
    if (h.free_rank != 0 || !h.torsion.empty()) return false;
  }
  return true;
}

long long HomologyProfile::alternating_sum() const {
  long long s = 0;
  for (int deg = -1; deg <= top; ++deg) {
    long long term = degree(deg).free_rank;
    s += (deg % 2 == 0) ? term : -term;  // (-1)^(-1) = -1
  }
  return s;
}

HomologyProfile betti(const SimplicialComplex& sc, RingSpec ring) {
  if (!ring.is_field())
    throw InvalidInput("betti needs field coefficients; use integral_homology "
                       "over Z");
  const int top = sc.dim();
  std::vector<int> rank(top + 2, 0);  // rank[d] = rank of boundary_d
  for (int d = 0; d <= top; ++d) {
    SparseZ b = sc.boundary_matrix(d);
    rank[d] = (ring.kind == RingKind::Q) ? rank_over_Q(std::move(b))
                                         : rank_mod_p(reduce_mod_p(b, ring.p));
  }

  HomologyProfile prof;
  prof.top = top;
  prof.by_degree.resize(top + 2);
  prof.by_degree[0].free_rank = 1 - rank[0];  // degree -1
  for (int d = 0; d <= top; ++d) {
    long long null_d = sc.num_faces(d) - rank[d];
    long long im_next = (d + 1 <= top) ? rank[d + 1] : 0;
    prof.by_degree[d + 1].free_rank = null_d - im_next;
  }
  return prof;
}

HomologyProfile integral_homology(const SimplicialComplex& sc) {
  const int top = sc.dim();
  std::vector<SnfResult> snf(top + 1);
  for (int d = 0; d <= top; ++d)
    snf[d] = smith_normal_form(sc.boundary_matrix(d));

  HomologyProfile prof;
  prof.top = top;
  prof.by_degree.resize(top + 2);
  // degree -1: coker of the augmentation
  prof.by_degree[0].free_rank = 1 - snf[0].rank;
  for (const Int& f : snf[0].factors)
    if (f > 1) prof.by_degree[0].torsion.push_back(f);
  for (int d = 0; d <= top; ++d) {
    long long null_d = sc.num_faces(d) - snf[d].rank;
    auto& h = prof.by_degree[d + 1];
    if (d + 1 <= top) {
      h.free_rank = null_d - snf[d + 1].rank;
      for (const Int& f : snf[d + 1].factors)
        if (f > 1) h.torsion.push_back(f);
    } else {
      h.free_rank = null_d;  // top homology is the cycle space, free
    }
  }
  return prof;
}

std::vector<Chain> kernel_basis(const SimplicialComplex& sc, int degree,
                                RingSpec ring) {
  if (!ring.is_field())
    throw InvalidInput("kernel_basis needs field coefficients");
  SparseZ b = sc.boundary_matrix(degree);
  std::vector<Chain> out;
  if (ring.kind == RingKind::Q) {
    for (auto& vec : kernel_basis_over_Q(b)) {
      Chain c = make_chain(ring, degree);
      for (size_t j = 0; j < vec.size(); ++j)
        chain_add_term(c, static_cast<int32_t>(j), vec[j]);
      out.push_back(std::move(c));
    }
  } else {
    for (auto& vec : kernel_basis_mod_p(reduce_mod_p(b, ring.p))) {
      Chain c = make_chain(ring, degree);
      for (size_t j = 0; j < vec.size(); ++j)
        chain_add_term(c, static_cast<int32_t>(j), Int(vec[j]));
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace chevlab
