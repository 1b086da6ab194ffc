#include "chevlab/chevalley.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_set>

#include "chevlab/cache.hpp"

namespace chevlab {

namespace {

// e-coordinate vector of a root given in the simple-root basis.
// Type A_{d-1}: alpha_i = e_i - e_{i+1} over d coordinates.
// Type C_m: alpha_i = e_i - e_{i+1} (i < m-1), alpha_{m-1} = 2 e_{m-1}.
std::vector<int> euclidean_coords(Family fam, int dim, const RootVec& c) {
  if (fam == Family::SL) {
    std::vector<int> v(dim, 0);
    for (int i = 0; i < dim - 1; ++i) {
      v[i] += c[i];
      v[i + 1] -= c[i];
    }
    return v;
  }
  const int m = dim / 2;
  std::vector<int> v(m, 0);
  for (int i = 0; i < m - 1; ++i) {
    v[i] += c[i];
    v[i + 1] -= c[i];
  }
  v[m - 1] += 2 * c[m - 1];
  return v;
}

}  // namespace

GroupSpec GroupSpec::sl(int n, uint32_t p) {
  if (n < 2) throw InvalidInput("SL_n needs n >= 2");
  if (!is_prime(p)) throw InvalidInput("the field size must be prime");
  return {Family::SL, n, p};
}

GroupSpec GroupSpec::sp(int n, uint32_t p) {
  if (n < 4 || n % 2 != 0)
    throw InvalidInput("Sp_n needs even n >= 4");
  if (!is_prime(p)) throw InvalidInput("the field size must be prime");
  return {Family::Sp, n, p};
}

std::string GroupSpec::name() const {
  return (family == Family::SL ? "SL" : "Sp") + std::to_string(dim) + "(F" +
         std::to_string(p) + ")";
}

uint64_t GroupSpec::order() const {
  uint64_t q = p;
  auto qpow = [&](int e) {
    uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= q;
    return r;
  };
  if (family == Family::SL) {
    // p^{d(d-1)/2} * prod_{k=2}^{d} (p^k - 1)
    uint64_t ord = qpow(dim * (dim - 1) / 2);
    for (int k = 2; k <= dim; ++k) ord *= qpow(k) - 1;
    return ord;
  }
  // p^{m^2} * prod_{k=1}^{m} (p^{2k} - 1)
  const int m = dim / 2;
  uint64_t ord = qpow(m * m);
  for (int k = 1; k <= m; ++k) ord *= qpow(2 * k) - 1;
  return ord;
}

ChevalleyGroup::ChevalleyGroup(GroupSpec spec)
    : spec_(spec),
      rs_(spec.family == Family::SL
              ? RootSystem::build(TypeLabel::A, spec.dim - 1)
              : RootSystem::build(TypeLabel::C, spec.dim / 2)),
      field_(spec.p) {
  if (spec_.family == Family::Sp) {
    const int d = spec_.dim, m = d / 2;
    form_ = FpMat(d, spec_.p);
    for (int i = 0; i < m; ++i) form_.at(i, d - 1 - i) = 1;
    for (int i = m; i < d; ++i) form_.at(i, d - 1 - i) = field_.neg(1);
  }
  build_patterns();
}

void ChevalleyGroup::build_patterns() {
  const int d = spec_.dim;
  const int m = d / 2;
  auto sigma = [&](int i) { return d - 1 - i; };
  patterns_.resize(rs_.num_roots());
  for (int idx = 0; idx < rs_.num_roots(); ++idx) {
    std::vector<int> v = euclidean_coords(spec_.family, d, rs_.roots()[idx]);
    auto& pat = patterns_[idx];
    if (spec_.family == Family::SL) {
      int a = -1, b = -1;
      for (int i = 0; i < d; ++i) {
        if (v[i] == 1) a = i;
        if (v[i] == -1) b = i;
      }
      pat = {{a, b, 1}};
      continue;
    }
    // Sp: classify the C_m root.
    std::vector<int> plus, minus;
    for (int i = 0; i < m; ++i) {
      if (v[i] == 1) plus.push_back(i);
      if (v[i] == -1) minus.push_back(i);
      if (v[i] == 2) {  // 2e_i
        pat = {{i, sigma(i), 1}};
      }
      if (v[i] == -2) {
        pat = {{sigma(i), i, 1}};
      }
    }
    if (!pat.empty()) continue;
    if (plus.size() == 1 && minus.size() == 1) {
      int a = plus[0], b = minus[0];  // e_a - e_b
      pat = {{a, b, 1}, {sigma(b), sigma(a), -1}};
    } else if (plus.size() == 2) {  // e_a + e_b, a < b
      int a = plus[0], b = plus[1];
      pat = {{a, sigma(b), 1}, {b, sigma(a), 1}};
    } else {  // -e_a - e_b
      int a = minus[0], b = minus[1];
      pat = {{sigma(b), a, 1}, {sigma(a), b, 1}};
    }
  }
}

const FpMat& ChevalleyGroup::symplectic_form() const {
  if (spec_.family != Family::Sp)
    throw InvalidInput("symplectic form only exists for Sp groups");
  return form_;
}

GroupElement ChevalleyGroup::identity() const {
  return {spec_, FpMat::identity(spec_.dim, spec_.p)};
}

GroupElement ChevalleyGroup::multiply(const GroupElement& a,
                                      const GroupElement& b) const {
  if (!(a.spec == spec_) || !(b.spec == spec_))
    throw ContextMismatch("group elements from a different group");
  return {spec_, a.m.mul(b.m)};
}

GroupElement ChevalleyGroup::inverse(const GroupElement& a) const {
  if (!(a.spec == spec_))
    throw ContextMismatch("group element from a different group");
  return {spec_, a.m.inverse()};
}

bool ChevalleyGroup::contains(const FpMat& m) const {
  if (m.n() != spec_.dim || m.p() != spec_.p) return false;
  if (spec_.family == Family::SL) return m.det() == 1;
  return m.transpose().mul(form_).mul(m) == form_;
}

const std::vector<std::tuple<int, int, int>>& ChevalleyGroup::root_pattern(
    int root_idx) const {
  if (root_idx < 0 || root_idx >= rs_.num_roots())
    throw InvalidInput("root index outside " + rs_.name());
  return patterns_[root_idx];
}

GroupElement ChevalleyGroup::x_alpha(int root_idx, uint32_t t) const {
  const auto& pat = root_pattern(root_idx);
  FpMat m = FpMat::identity(spec_.dim, spec_.p);
  t %= spec_.p;
  for (const auto& [r, c, s] : pat)
    m.at(r, c) = (s > 0) ? t : field_.neg(t);
  return {spec_, std::move(m)};
}

GroupElement ChevalleyGroup::x_alpha(const RootVec& alpha, uint32_t t) const {
  int idx = rs_.root_index(alpha);
  if (idx < 0)
    throw InvalidInput("not a root of the group's system " + rs_.name());
  return x_alpha(idx, t);
}

GroupElement ChevalleyGroup::torus_element(int simple_idx, uint32_t u) const {
  if (simple_idx < 0 || simple_idx >= rs_.rank())
    throw InvalidInput("simple root index outside " + rs_.name());
  u %= spec_.p;
  if (u == 0) throw InvalidInput("torus parameter must be a unit");
  const uint32_t uinv = field_.inv(u);
  FpMat m = FpMat::identity(spec_.dim, spec_.p);
  if (spec_.family == Family::SL) {
    m.at(simple_idx, simple_idx) = u;
    m.at(simple_idx + 1, simple_idx + 1) = uinv;
  } else {
    const int d = spec_.dim, mm = d / 2;
    auto sigma = [&](int i) { return d - 1 - i; };
    if (simple_idx < mm - 1) {
      m.at(simple_idx, simple_idx) = u;
      m.at(simple_idx + 1, simple_idx + 1) = uinv;
      m.at(sigma(simple_idx + 1), sigma(simple_idx + 1)) = u;
      m.at(sigma(simple_idx), sigma(simple_idx)) = uinv;
    } else {
      m.at(mm - 1, mm - 1) = u;
      m.at(sigma(mm - 1), sigma(mm - 1)) = uinv;
    }
  }
  return {spec_, std::move(m)};
}

std::vector<GroupElement> ChevalleyGroup::torus_elements() const {
  const uint32_t p = spec_.p;
  const int d = spec_.dim;
  std::vector<GroupElement> out;
  if (spec_.family == Family::SL) {
    // diag(t_0, ..., t_{d-2}, (prod)^{-1})
    std::vector<uint32_t> t(d - 1, 1);
    for (;;) {
      FpMat m = FpMat::identity(d, p);
      uint32_t prod = 1;
      for (int i = 0; i < d - 1; ++i) {
        m.at(i, i) = t[i];
        prod = field_.mul(prod, t[i]);
      }
      m.at(d - 1, d - 1) = field_.inv(prod);
      out.push_back({spec_, std::move(m)});
      int k = 0;
      while (k < d - 1 && t[k] == p - 1) t[k++] = 1;
      if (k == d - 1) break;
      ++t[k];
    }
  } else {
    const int mm = d / 2;
    std::vector<uint32_t> t(mm, 1);
    for (;;) {
      FpMat m = FpMat::identity(d, p);
      for (int i = 0; i < mm; ++i) {
        m.at(i, i) = t[i];
        m.at(d - 1 - i, d - 1 - i) = field_.inv(t[i]);
      }
      out.push_back({spec_, std::move(m)});
      int k = 0;
      while (k < mm && t[k] == p - 1) t[k++] = 1;
      if (k == mm) break;
      ++t[k];
    }
  }
  return out;
}

GroupElement ChevalleyGroup::weyl_lift(int root_idx) const {
  GroupElement a = x_alpha(root_idx, 1);
  GroupElement bi = x_alpha(rs_.negate(root_idx), field_.neg(1));
  return multiply(multiply(a, bi), a);
}

GroupElement ChevalleyGroup::lift(const WeylElement& w) const {
  if (w.type != static_cast<char>(rs_.type()) || w.rank != rs_.rank())
    throw ContextMismatch("Weyl element from a different root system");
  GroupElement g = identity();
  for (int i : reduced_word(rs_, w))
    g = multiply(g, weyl_lift(rs_.simple_root_index(i)));
  return g;
}

std::vector<GroupElement> ChevalleyGroup::standard_generators() const {
  std::vector<GroupElement> gens;
  for (int i = 0; i < rs_.rank(); ++i) {
    int idx = rs_.simple_root_index(i);
    for (uint32_t t = 1; t < spec_.p; ++t) {
      gens.push_back(x_alpha(idx, t));
      gens.push_back(x_alpha(rs_.negate(idx), t));
    }
    for (uint32_t u = 2; u < spec_.p; ++u)
      gens.push_back(torus_element(i, u));
  }
  return gens;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

std::string mat_key(const FpMat& m) {
  return std::string(reinterpret_cast<const char*>(m.data().data()),
                     m.data().size() * sizeof(uint32_t));
}

std::string enum_meta(const GroupSpec& spec) {
  return std::string("group ") + (spec.family == Family::SL ? "sl" : "sp") +
         " " + std::to_string(spec.dim) + " " + std::to_string(spec.p) +
         " count=" + std::to_string(spec.order());
}

std::string enum_filename(const GroupSpec& spec) {
  return std::string("group_") + (spec.family == Family::SL ? "sl" : "sp") +
         std::to_string(spec.dim) + "_p" + std::to_string(spec.p) + ".cache";
}

}  // namespace

GroupEnumeration GroupEnumeration::enumerate(const ChevalleyGroup& g,
                                             const GroupEnumOptions& opts) {
  const GroupSpec& spec = g.spec();
  const uint64_t order = spec.order();
  if (order > opts.max_elements) {
    std::ostringstream os;
    os << spec.name() << " has " << order << " elements, over the cap "
       << opts.max_elements << "; raise max_elements to enumerate";
    throw CapExceeded(os.str());
  }

  GroupEnumeration en;
  const std::string meta = enum_meta(spec);
  std::filesystem::path file;
  if (opts.use_cache) {
    file = cache_directory(opts.cache_dir) / enum_filename(spec);
    if (auto rec = cache_read(file, meta); rec && rec->size() == order) {
      bool ok = true;
      en.elems_.reserve(order);
      const int nn = spec.dim * spec.dim;
      for (const auto& line : *rec) {
        FpMat m(spec.dim, spec.p);
        const char* s = line.data();
        const char* pe = line.data() + line.size();
        int k = 0;
        for (; k < nn; ++k) {
          while (s < pe && *s == ' ') ++s;
          unsigned long v = 0;
          auto [next, ec] = std::from_chars(s, pe, v);
          if (ec != std::errc() || v >= spec.p) break;
          s = next;
          m.at(k / spec.dim, k % spec.dim) = static_cast<uint32_t>(v);
        }
        if (k != nn) {
          ok = false;
          break;
        }
        en.elems_.push_back(std::move(m));
      }
      if (ok && std::is_sorted(en.elems_.begin(), en.elems_.end())) {
        en.from_cache_ = true;
        return en;
      }
      en.elems_.clear();
    }
  }

  // BFS over the unipotent simple-root generators.
  std::vector<FpMat> gens;
  const RootSystem& rs = g.roots();
  for (int i = 0; i < rs.rank(); ++i) {
    int idx = rs.simple_root_index(i);
    for (uint32_t t = 1; t < spec.p; ++t) {
      gens.push_back(g.x_alpha(idx, t).m);
      gens.push_back(g.x_alpha(rs.negate(idx), t).m);
    }
  }

  std::unordered_set<std::string> seen;
  std::deque<FpMat> frontier;
  FpMat id = FpMat::identity(spec.dim, spec.p);
  seen.insert(mat_key(id));
  en.elems_.push_back(id);
  frontier.push_back(std::move(id));
  while (!frontier.empty()) {
    FpMat cur = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& gen : gens) {
      FpMat next = cur.mul(gen);
      if (seen.insert(mat_key(next)).second) {
        en.elems_.push_back(next);
        frontier.push_back(std::move(next));
      }
    }
  }
  if (en.elems_.size() != order)
    throw Error(spec.name() + " enumeration closed at unexpected size " +
                std::to_string(en.elems_.size()));
  std::sort(en.elems_.begin(), en.elems_.end());

  if (opts.use_cache) {
    std::vector<std::string> records;
    records.reserve(en.elems_.size());
    std::string line;
    for (const auto& m : en.elems_) {
      line.clear();
      for (size_t i = 0; i < m.data().size(); ++i) {
        if (i) line += ' ';
        line += std::to_string(m.data()[i]);
      }
      records.push_back(line);
    }
    cache_write(file, meta, records);
  }
  return en;
}

long long GroupEnumeration::index_of(const FpMat& m) const {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), m);
  if (it == elems_.end() || !(*it == m)) return -1;
  return it - elems_.begin();
}

// ---------------------------------------------------------------------------
// Weyl group isomorphism check

WeylIsoReport weyl_iso_check(const ChevalleyGroup& g,
                             const GroupEnumOptions& opts) {
  const GroupSpec& spec = g.spec();
  const RootSystem& rs = g.roots();
  WeylIsoReport rep;
  rep.group_order = spec.order();
  rep.weyl_order = rs.weyl_order();

  GroupEnumeration en = GroupEnumeration::enumerate(g, opts);

  std::vector<GroupElement> torus = g.torus_elements();
  rep.torus_order = torus.size();
  std::unordered_set<std::string> torus_keys;
  for (const auto& h : torus) torus_keys.insert(mat_key(h.m));

  // F_2 note: H(F_2) is trivial, so the set condition n H n^{-1} = H is
  // vacuous. The root-subgroup condition below still cuts out the right
  // normalizer, but the report flags the degenerate torus.
  rep.degenerate_torus = rep.torus_order == 1;

  // Map n to the permutation it induces on root subgroups by conjugation.
  // Defined exactly on the points of the torus normalizer: over F_p the
  // plain set normalizer of H(F_p) can be strictly larger (for SL_2(F_3)
  // the torus is central), so membership requires both conditions.
  auto to_weyl_perm =
      [&](const FpMat& n) -> std::optional<std::vector<uint16_t>> {
    FpMat ninv = n.inverse();
    std::vector<uint16_t> perm(rs.num_roots());
    for (int r = 0; r < rs.num_roots(); ++r) {
      FpMat conj = n.mul(g.x_alpha(r, 1).m).mul(ninv);
      int image = -1;
      for (int b = 0; b < rs.num_roots() && image < 0; ++b)
        for (uint32_t t = 1; t < spec.p; ++t)
          if (conj == g.x_alpha(b, t).m) {
            image = b;
            break;
          }
      if (image < 0) return std::nullopt;
      perm[r] = static_cast<uint16_t>(image);
    }
    return perm;
  };

  WeylEnumeration wen = WeylEnumeration::enumerate(rs);
  std::vector<FpMat> normalizer;
  std::vector<long long> image_index;
  bool all_mapped = true;
  for (size_t i = 0; i < en.size(); ++i) {
    const FpMat& n = en.at(i);
    FpMat ninv = n.inverse();
    bool normalizes = true;
    for (const auto& h : torus) {
      if (!torus_keys.count(mat_key(n.mul(h.m).mul(ninv)))) {
        normalizes = false;
        break;
      }
    }
    if (!normalizes) continue;
    auto perm = to_weyl_perm(n);
    if (!perm) continue;
    normalizer.push_back(n);
    long long idx = wen.index_of_perm(*perm);
    image_index.push_back(idx);
    if (idx < 0) all_mapped = false;
  }
  rep.normalizer_order = normalizer.size();

  if (all_mapped) {
    // Homomorphism on all pairs (also confirms N(H) is closed).
    std::map<std::string, size_t> norm_pos;
    for (size_t i = 0; i < normalizer.size(); ++i)
      norm_pos[mat_key(normalizer[i])] = i;
    rep.homomorphism = true;
    for (size_t i = 0; i < normalizer.size() && rep.homomorphism; ++i)
      for (size_t j = 0; j < normalizer.size(); ++j) {
        FpMat prod = normalizer[i].mul(normalizer[j]);
        auto it = norm_pos.find(mat_key(prod));
        if (it == norm_pos.end()) {
          rep.homomorphism = false;
          break;
        }
        WeylElement wi = wen.element(image_index[i]);
        WeylElement wj = wen.element(image_index[j]);
        if (wen.index_of(weyl_multiply(wi, wj)) != image_index[it->second]) {
          rep.homomorphism = false;
          break;
        }
      }

    std::unordered_set<long long> image(image_index.begin(),
                                        image_index.end());
    rep.surjective = image.size() == wen.size();
    rep.quotient_order = image.size();

    // Kernel must be exactly H.
    const long long id_idx = wen.index_of(weyl_identity(rs));
    bool kernel_ok = true;
    size_t kernel_size = 0;
    for (size_t i = 0; i < normalizer.size(); ++i) {
      if (image_index[i] == id_idx) {
        ++kernel_size;
        if (!torus_keys.count(mat_key(normalizer[i]))) kernel_ok = false;
      }
    }
    rep.kernel_is_torus = kernel_ok && kernel_size == torus.size();

    // w_alpha -> s_alpha for the simple roots.
    rep.simple_lifts_match = true;
    for (int i = 0; i < rs.rank(); ++i) {
      FpMat walpha = g.weyl_lift(rs.simple_root_index(i)).m;
      auto perm = to_weyl_perm(walpha);
      if (!perm ||
          wen.index_of_perm(*perm) !=
              wen.index_of(weyl_generator(rs, i))) {
        rep.simple_lifts_match = false;
        break;
      }
    }
  }
  return rep;
}

}  // namespace chevlab
