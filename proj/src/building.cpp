#include "chevlab/building.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "chevlab/cache.hpp"

namespace chevlab {

namespace mp = boost::multiprecision;

std::string Subspace::key() const {
  std::string s;
  for (const auto& r : rows) {
    for (uint32_t v : r) {
      s += std::to_string(v);
      s += ',';
    }
    s += ';';
  }
  return s;
}

namespace {

// All vectors of F_p^d in lexicographic order, the zero vector excluded.
std::vector<std::vector<uint32_t>> all_nonzero_vectors(int d, uint32_t p) {
  std::vector<std::vector<uint32_t>> out;
  std::vector<uint32_t> v(d, 0);
  for (;;) {
    int k = d - 1;
    while (k >= 0 && v[k] == p - 1) v[k--] = 0;
    if (k < 0) break;
    ++v[k];
    out.push_back(v);
  }
  return out;
}

bool in_rowspace(const std::vector<std::vector<uint32_t>>& rref,
                 std::vector<uint32_t> w, uint32_t p) {
  PrimeField F(p);
  for (const auto& row : rref) {
    size_t lead = 0;
    while (lead < row.size() && row[lead] == 0) ++lead;
    if (lead == row.size()) continue;
    if (w[lead] == 0) continue;
    uint32_t f = w[lead];  // rref rows have unit leading entries
    for (size_t j = 0; j < w.size(); ++j) w[j] = F.sub(w[j], F.mul(f, row[j]));
  }
  return std::all_of(w.begin(), w.end(), [](uint32_t x) { return x == 0; });
}

bool orthogonal_to(const std::vector<std::vector<uint32_t>>& rows,
                   const std::vector<uint32_t>& w, const FpMat& J) {
  PrimeField F(J.p());
  for (const auto& r : rows) {
    uint32_t s = 0;
    for (int i = 0; i < J.n(); ++i) {
      if (r[i] == 0) continue;
      uint32_t inner = 0;
      for (int j = 0; j < J.n(); ++j)
        inner = F.add(inner, F.mul(J.at(i, j), w[j]));
      s = F.add(s, F.mul(r[i], inner));
    }
    if (s != 0) return false;
  }
  return true;
}

// Incremental echelon over Q with primitive integer rows.
struct QEchelon {
  std::vector<std::pair<int, std::vector<Int>>> rows;  // (lead, row)

  bool insert(std::vector<Int> v) {
    for (const auto& [lead, row] : rows) {
      if (v[lead] == 0) continue;
      Int a = v[lead], piv = row[lead];
      Int g = mp::gcd(a, piv);
      Int fa = piv / g, fb = a / g;
      for (size_t j = 0; j < v.size(); ++j) v[j] = fa * v[j] - fb * row[j];
    }
    int lead = -1;
    for (size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) {
        lead = static_cast<int>(j);
        break;
      }
    if (lead < 0) return false;
    Int content = 0;
    for (const auto& e : v) content = mp::gcd(content, mp::abs(e));
    if (content > 1)
      for (auto& e : v) e /= content;
    rows.emplace_back(lead, std::move(v));
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return true;
  }
  long long rank() const { return static_cast<long long>(rows.size()); }
};

struct FpEchelon {
  PrimeField F;
  std::vector<std::pair<int, std::vector<uint32_t>>> rows;

  explicit FpEchelon(uint32_t p) : F(p) {}

  bool insert(std::vector<uint32_t> v) {
    for (const auto& [lead, row] : rows) {
      if (v[lead] == 0) continue;
      uint32_t f = v[lead];
      for (size_t j = 0; j < v.size(); ++j)
        v[j] = F.sub(v[j], F.mul(f, row[j]));
    }
    int lead = -1;
    for (size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) {
        lead = static_cast<int>(j);
        break;
      }
    if (lead < 0) return false;
    uint32_t inv = F.inv(v[lead]);
    for (auto& e : v) e = F.mul(e, inv);
    rows.emplace_back(lead, std::move(v));
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return true;
  }
  long long rank() const { return static_cast<long long>(rows.size()); }
};

std::vector<Int> chain_to_dense(const Chain& c, int n) {
  std::vector<Int> v(n, 0);
  for (const auto& [s, val] : c.coeff) v[s] = val;
  return v;
}

std::vector<uint32_t> chain_to_dense_fp(const Chain& c, int n, uint32_t p) {
  std::vector<uint32_t> v(n, 0);
  for (const auto& [s, val] : c.coeff) {
    Int r = val % p;
    if (r < 0) r += p;
    v[s] = static_cast<uint32_t>(r);
  }
  return v;
}

std::string building_meta(const GroupSpec& spec) {
  return std::string("building ") +
         (spec.family == Family::SL ? "sl" : "sp") + " " +
         std::to_string(spec.dim) + " " + std::to_string(spec.p);
}

std::string building_filename(const GroupSpec& spec) {
  return std::string("building_") +
         (spec.family == Family::SL ? "sl" : "sp") + std::to_string(spec.dim) +
         "_p" + std::to_string(spec.p) + ".cache";
}

}  // namespace

Building Building::build(const GroupSpec& spec, const BuildingOptions& opts) {
  Building b;
  b.group_ = std::make_shared<ChevalleyGroup>(spec);
  const ChevalleyGroup& g = *b.group_;
  const uint32_t p = spec.p;
  const int d = spec.dim;
  const int rank = spec.rank();
  const bool symplectic = spec.family == Family::Sp;

  std::vector<int> vertex_types;
  std::vector<std::vector<int32_t>> chambers;

  const std::string meta = building_meta(spec);
  std::filesystem::path file;
  bool loaded = false;
  if (opts.use_cache) {
    file = cache_directory(opts.cache_dir) / building_filename(spec);
    if (auto rec = cache_read(file, meta); rec && !rec->empty()) {
      // record 0: "V C"; then V subspace lines "k e_0 ... e_{k*d-1}";
      // then C chamber lines of vertex ids.
      std::istringstream head((*rec)[0]);
      size_t V = 0, C = 0;
      head >> V >> C;
      if (V > 0 && C > 0 && rec->size() == 1 + V + C) {
        bool ok = true;
        for (size_t i = 0; i < V && ok; ++i) {
          std::istringstream is((*rec)[1 + i]);
          int k = 0;
          is >> k;
          Subspace s;
          s.rows.assign(k, std::vector<uint32_t>(d, 0));
          for (int r = 0; r < k && ok; ++r)
            for (int c = 0; c < d; ++c)
              if (!(is >> s.rows[r][c])) ok = false;
          if (!ok) break;
          vertex_types.push_back(k - 1);
          b.vertex_index_[s.key()] = static_cast<int>(b.subspaces_.size());
          b.subspaces_.push_back(std::move(s));
        }
        for (size_t i = 0; i < C && ok; ++i) {
          std::istringstream is((*rec)[1 + V + i]);
          std::vector<int32_t> ch;
          int32_t v;
          while (is >> v) ch.push_back(v);
          if (ch.size() != static_cast<size_t>(rank)) ok = false;
          chambers.push_back(std::move(ch));
        }
        loaded = ok;
        if (!ok) {
          vertex_types.clear();
          chambers.clear();
          b.subspaces_.clear();
          b.vertex_index_.clear();
        }
      }
    }
  }

  if (!loaded) {
    // Enumerate the (isotropic) subspaces level by level.
    const auto vectors = all_nonzero_vectors(d, p);
    std::vector<std::vector<Subspace>> by_dim(rank + 1);
    {
      std::set<std::string> seen;
      for (const auto& v : vectors) {
        Subspace s{rref_rows({v}, p)};
        if (seen.insert(s.key()).second) by_dim[1].push_back(std::move(s));
      }
    }
    for (int k = 1; k < rank; ++k) {
      std::set<std::string> seen;
      for (const auto& V : by_dim[k]) {
        for (const auto& w : vectors) {
          if (symplectic && !orthogonal_to(V.rows, w, g.symplectic_form()))
            continue;
          if (in_rowspace(V.rows, w, p)) continue;
          auto rows = V.rows;
          rows.push_back(w);
          Subspace s{rref_rows(std::move(rows), p)};
          if (seen.insert(s.key()).second) by_dim[k + 1].push_back(std::move(s));
        }
      }
    }

    uint64_t total_vertices = 0;
    for (int k = 1; k <= rank; ++k) total_vertices += by_dim[k].size();
    if (total_vertices > opts.max_vertices)
      throw CapExceeded(spec.name() + " building has " +
                        std::to_string(total_vertices) +
                        " vertices, over the cap");

    for (int k = 1; k <= rank; ++k)
      std::sort(by_dim[k].begin(), by_dim[k].end(),
                [](const Subspace& a, const Subspace& b) {
                  return a.rows < b.rows;
                });
    for (int k = 1; k <= rank; ++k) {
      for (auto& s : by_dim[k]) {
        vertex_types.push_back(k - 1);
        b.vertex_index_[s.key()] = static_cast<int>(b.subspaces_.size());
        b.subspaces_.push_back(std::move(s));
      }
    }

    // Full (isotropic) flags by recursive extension.
    std::vector<int32_t> flag;
    std::vector<std::vector<uint32_t>> current;  // rows of the top subspace
    uint64_t chamber_count = 0;
    auto extend = [&](auto&& self, int k) -> void {
      if (k == rank) {
        chambers.push_back(flag);
        if (++chamber_count > opts.max_chambers)
          throw CapExceeded(spec.name() + " building chamber count over cap");
        return;
      }
      std::set<std::string> seen;
      for (const auto& w : vectors) {
        if (symplectic && !orthogonal_to(current, w, g.symplectic_form()))
          continue;
        if (!current.empty() && in_rowspace(current, w, p)) continue;
        auto rows = current;
        rows.push_back(w);
        Subspace s{rref_rows(std::move(rows), p)};
        if (!seen.insert(s.key()).second) continue;
        auto saved = current;
        current = s.rows;
        flag.push_back(b.vertex_index_.at(s.key()));
        self(self, k + 1);
        flag.pop_back();
        current = std::move(saved);
      }
    };
    extend(extend, 0);
  }

  b.sc_ = SimplicialComplex::from_chambers(vertex_types, chambers);

  if (!loaded && opts.use_cache) {
    std::vector<std::string> records;
    records.push_back(std::to_string(b.subspaces_.size()) + " " +
                      std::to_string(b.sc_.chambers().size()));
    for (const auto& s : b.subspaces_) {
      std::string line = std::to_string(s.dim());
      for (const auto& r : s.rows)
        for (uint32_t v : r) line += " " + std::to_string(v);
      records.push_back(std::move(line));
    }
    for (const auto& ch : b.sc_.chambers()) {
      std::string line;
      for (size_t i = 0; i < ch.size(); ++i) {
        if (i) line += ' ';
        line += std::to_string(ch[i]);
      }
      records.push_back(std::move(line));
    }
    cache_write(file, meta, records);
  }

  // Fundamental chamber: the standard coordinate flag e_1 < ... .
  std::vector<int32_t> fund;
  for (int k = 1; k <= rank; ++k) {
    Subspace s;
    s.rows.assign(k, std::vector<uint32_t>(d, 0));
    for (int r = 0; r < k; ++r) s.rows[r][r] = 1;
    fund.push_back(b.vertex_of(s));
  }
  b.fundamental_chamber_id_ =
      b.sc_.face_id(rank - 1, b.sc_.sort_simplex(fund));
  if (b.fundamental_chamber_id_ < 0)
    throw Error("standard coordinate flag is not a chamber");
  return b;
}

int Building::vertex_of(const Subspace& s) const {
  auto it = vertex_index_.find(s.key());
  if (it == vertex_index_.end())
    throw InvalidInput("subspace is not a vertex of the building");
  return it->second;
}

std::vector<int32_t> Building::fundamental_chamber() const {
  return sc_.chambers()[fundamental_chamber_id_];
}

int Building::act_vertex(const GroupElement& g, int v) const {
  if (!(g.spec == group_->spec()))
    throw ContextMismatch("element from a different group acting on building");
  const Subspace& s = subspaces_[v];
  PrimeField F(g.spec.p);
  const int d = g.spec.dim;
  std::vector<std::vector<uint32_t>> rows(s.dim(),
                                          std::vector<uint32_t>(d, 0));
  for (int r = 0; r < s.dim(); ++r)
    for (int j = 0; j < d; ++j) {
      uint32_t acc = 0;
      for (int k = 0; k < d; ++k)
        acc = F.add(acc, F.mul(s.rows[r][k], g.m.at(j, k)));
      rows[r][j] = acc;
    }
  Subspace img{rref_rows(std::move(rows), g.spec.p)};
  auto it = vertex_index_.find(img.key());
  if (it == vertex_index_.end())
    throw Error("group action left the vertex set");  // cannot happen
  return it->second;
}

std::vector<int32_t> Building::act_simplex(
    const GroupElement& g, const std::vector<int32_t>& verts) const {
  std::vector<int32_t> img(verts.size());
  for (size_t i = 0; i < verts.size(); ++i) img[i] = act_vertex(g, verts[i]);
  // type-preserving, one vertex per type: already type-sorted
  return img;
}

Chain Building::translate(const GroupElement& g, const Chain& c) const {
  if (c.degree < 0 || c.degree > sc_.dim())
    throw ContextMismatch("chain degree outside the building");
  Chain out = make_chain(c.ring, c.degree);
  for (const auto& [sid, v] : c.coeff) {
    if (sid < 0 || sid >= sc_.num_faces(c.degree))
      throw ContextMismatch("chain simplex id outside the building");
    int img = sc_.face_id(c.degree, act_simplex(g, sc_.faces(c.degree)[sid]));
    chain_add_term(out, img, v);
  }
  return out;
}

const WeylEnumeration& Building::weyl() const {
  if (!weyl_) weyl_ = WeylEnumeration::enumerate(group_->roots());
  return *weyl_;
}

const CoxeterComplex& Building::coxeter() const {
  if (!cox_) cox_ = CoxeterComplex::build(weyl());
  return *cox_;
}

const GroupElement& Building::lift_of(long long weyl_index) const {
  if (weyl_lifts_.empty()) weyl_lifts_.resize(weyl().size());
  auto& slot = weyl_lifts_[weyl_index];
  if (!slot) slot = group_->lift(weyl().element(weyl_index));
  return *slot;
}

const Building::Apartment& Building::apartment() const {
  if (apartment_) return *apartment_;

  const WeylEnumeration& en = weyl();
  const CoxeterComplex& cox = coxeter();
  Apartment ap;
  ap.to_cox.assign(sc_.num_vertices(), -1);
  ap.from_cox.assign(cox.complex().num_vertices(), -1);
  ap.chamber_from_weyl.assign(en.size(), -1);

  const std::vector<int32_t> fund = fundamental_chamber();
  for (size_t i = 0; i < en.size(); ++i) {
    const GroupElement& lift = lift_of(static_cast<long long>(i));
    const auto& cox_ch =
        cox.complex().chambers()[cox.chamber_of_element(i)];
    std::vector<int32_t> bld_ch(fund.size());
    for (size_t s = 0; s < fund.size(); ++s) {
      int bv = act_vertex(lift, fund[s]);
      int cv = cox_ch[s];
      bld_ch[s] = bv;
      if (ap.to_cox[bv] >= 0 && ap.to_cox[bv] != cv)
        throw Error("apartment vertex dictionary is inconsistent");
      ap.to_cox[bv] = cv;
      if (ap.from_cox[cv] >= 0 && ap.from_cox[cv] != bv)
        throw Error("apartment vertex dictionary is not injective");
      ap.from_cox[cv] = bv;
    }
    int ch = sc_.face_id(sc_.dim(), bld_ch);
    if (ch < 0) throw Error("apartment chamber missing from the building");
    ap.chamber_from_weyl[i] = ch;
  }
  for (int cv = 0; cv < cox.complex().num_vertices(); ++cv)
    if (ap.from_cox[cv] < 0)
      throw Error("apartment dictionary does not cover the Coxeter complex");
  for (int v = 0; v < sc_.num_vertices(); ++v)
    if (ap.to_cox[v] >= 0) ap.vertices.push_back(v);

  apartment_ = std::move(ap);
  return *apartment_;
}

const Chain& Building::standard_apartment_class() const {
  if (std_class_) return *std_class_;
  const Apartment& ap = apartment();
  Chain c = make_chain(RingSpec::Z(), sc_.dim());
  for (size_t i = 0; i < weyl().size(); ++i) {
    Int sign = (weyl().length(i) % 2 == 0) ? 1 : -1;
    chain_add_term(c, ap.chamber_from_weyl[i], sign);
  }
  std_class_ = std::move(c);
  return *std_class_;
}

GroupElement Building::inverting_element(const GroupElement& g1) const {
  const RootSystem& rs = group_->roots();
  GroupElement w = group_->weyl_lift(rs.simple_root_index(0));
  return group_->multiply(group_->multiply(g1, w), group_->inverse(g1));
}

bool Building::verify_inversion(const GroupElement& g1) const {
  Chain a = translate(g1, standard_apartment_class());
  GroupElement gamma = inverting_element(g1);
  return translate(gamma, a) == chain_negate(a);
}

SolomonTitsReport Building::solomon_tits_check() const {
  SolomonTitsReport rep;
  rep.profile = integral_homology(sc_);
  rep.top_rank = rep.profile.degree(sc_.dim()).free_rank;
  rep.vanishing_outside_top = rep.profile.trivial_outside(sc_.dim());
  rep.top_torsion_free = rep.profile.degree(sc_.dim()).torsion.empty();
  return rep;
}

SteinbergSpace Building::steinberg(RingSpec ring) const {
  if (!ring.is_field())
    throw InvalidInput("Steinberg space needs field coefficients");
  SteinbergSpace st;
  st.ring = ring;
  st.basis = kernel_basis(sc_, sc_.dim(), ring);
  st.dimension = static_cast<long long>(st.basis.size());
  return st;
}

namespace {

long long top_rank_over(const SimplicialComplex& sc, RingSpec ring) {
  SparseZ b = sc.boundary_matrix(sc.dim());
  if (ring.kind == RingKind::Q) return rank_over_Q(std::move(b));
  return rank_mod_p(reduce_mod_p(b, ring.p));
}

}  // namespace

GenerationReport Building::generation_check(RingSpec ring,
                                            const GroupEnumOptions& opts) const {
  if (!ring.is_field())
    throw InvalidInput("generation check needs field coefficients");
  GenerationReport rep;
  rep.st_dim = num_chambers() - top_rank_over(sc_, ring);

  GroupEnumeration en = GroupEnumeration::enumerate(*group_, opts);
  const Chain& sigma = standard_apartment_class();
  const int n = num_chambers();

  if (ring.kind == RingKind::Q) {
    QEchelon ech;
    for (size_t i = 0; i < en.size(); ++i) {
      Chain tr = translate(en.element(group_->spec(), i), sigma);
      ech.insert(chain_to_dense(tr, n));
      if (ech.rank() == rep.st_dim && rep.minimal_prefix == 0)
        rep.minimal_prefix = static_cast<long long>(i) + 1;
    }
    rep.span_dim = ech.rank();
  } else {
    FpEchelon ech(ring.p);
    for (size_t i = 0; i < en.size(); ++i) {
      Chain tr = translate(en.element(group_->spec(), i), sigma);
      ech.insert(chain_to_dense_fp(tr, n, ring.p));
      if (ech.rank() == rep.st_dim && rep.minimal_prefix == 0)
        rep.minimal_prefix = static_cast<long long>(i) + 1;
    }
    rep.span_dim = ech.rank();
  }
  return rep;
}

CoinvariantsReport Building::coinvariants_dim(RingSpec ring) const {
  if (!ring.is_field())
    throw InvalidInput("coinvariants need field coefficients");
  CoinvariantsReport rep;
  rep.ring = ring;
  SteinbergSpace st = steinberg(ring);
  rep.st_dim = st.dimension;

  const int n = num_chambers();
  std::vector<GroupElement> gens = group_->standard_generators();
  if (ring.kind == RingKind::Q) {
    QEchelon ech;
    for (const auto& g : gens)
      for (const auto& v : st.basis) {
        Chain diff = chain_add(translate(g, v), chain_negate(v));
        if (!diff.is_zero()) ech.insert(chain_to_dense(diff, n));
      }
    rep.difference_rank = ech.rank();
  } else {
    FpEchelon ech(ring.p);
    for (const auto& g : gens)
      for (const auto& v : st.basis) {
        Chain diff = chain_add(translate(g, v), chain_negate(v));
        if (!diff.is_zero()) ech.insert(chain_to_dense_fp(diff, n, ring.p));
      }
    rep.difference_rank = ech.rank();
  }
  rep.dim = rep.st_dim - rep.difference_rank;
  return rep;
}

std::optional<long long> Building::coinvariants_via_inversion(
    RingSpec ring, const GroupEnumOptions& opts) const {
  // The argument needs 2 invertible: each translate in a spanning set is
  // negated by some group element, so its coinvariant image is 2-torsion.
  if (ring.kind == RingKind::Fp && ring.p == 2) return std::nullopt;
  if (ring.kind == RingKind::Z) return std::nullopt;

  GenerationReport gen = generation_check(ring, opts);
  if (!gen.pass() || gen.minimal_prefix == 0) return std::nullopt;

  GroupEnumeration en = GroupEnumeration::enumerate(*group_, opts);
  for (long long i = 0; i < gen.minimal_prefix; ++i)
    if (!verify_inversion(en.element(group_->spec(), i))) return std::nullopt;
  return 0;
}

}  // namespace chevlab
