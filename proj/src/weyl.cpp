#include "chevlab/weyl.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <deque>
#include <sstream>
#include <unordered_set>

#include "chevlab/cache.hpp"

namespace chevlab {

namespace {

std::string perm_key(const std::vector<uint16_t>& p) {
  return std::string(reinterpret_cast<const char*>(p.data()),
                     p.size() * sizeof(uint16_t));
}

void check_same_context(const WeylElement& a, const WeylElement& b) {
  if (a.type != b.type || a.rank != b.rank || a.perm.size() != b.perm.size())
    throw ContextMismatch("Weyl elements from different root systems");
}

int length_of_perm(const std::vector<uint16_t>& p) {
  const int n_pos = static_cast<int>(p.size()) / 2;
  int len = 0;
  for (int i = 0; i < n_pos; ++i)
    if (p[i] >= n_pos) ++len;
  return len;
}

}  // namespace

WeylElement weyl_identity(const RootSystem& rs) {
  WeylElement w;
  w.type = static_cast<char>(rs.type());
  w.rank = static_cast<uint8_t>(rs.rank());
  w.perm.resize(rs.num_roots());
  for (int i = 0; i < rs.num_roots(); ++i) w.perm[i] = uint16_t(i);
  return w;
}

WeylElement weyl_generator(const RootSystem& rs, int i) {
  if (i < 0 || i >= rs.rank())
    throw InvalidInput("generator index out of range for " + rs.name());
  WeylElement w = weyl_identity(rs);
  for (int r = 0; r < rs.num_roots(); ++r)
    w.perm[r] = static_cast<uint16_t>(rs.reflect(i, r));
  return w;
}

WeylElement weyl_multiply(const WeylElement& a, const WeylElement& b) {
  check_same_context(a, b);
  WeylElement c = a;
  for (size_t i = 0; i < a.perm.size(); ++i) c.perm[i] = a.perm[b.perm[i]];
  return c;
}

WeylElement weyl_invert(const WeylElement& a) {
  WeylElement c = a;
  for (size_t i = 0; i < a.perm.size(); ++i) c.perm[a.perm[i]] = uint16_t(i);
  return c;
}

bool weyl_is_identity(const WeylElement& a) {
  for (size_t i = 0; i < a.perm.size(); ++i)
    if (a.perm[i] != i) return false;
  return true;
}

int weyl_length(const WeylElement& w) { return length_of_perm(w.perm); }

std::vector<int> reduced_word(const RootSystem& rs, const WeylElement& w) {
  std::vector<int> word;
  WeylElement cur = w;
  int len = weyl_length(cur);
  while (len > 0) {
    bool found = false;
    for (int i = 0; i < rs.rank(); ++i) {
      WeylElement next = weyl_multiply(weyl_generator(rs, i), cur);
      int nlen = weyl_length(next);
      if (nlen < len) {
        word.push_back(i);
        cur = std::move(next);
        len = nlen;
        found = true;
        break;
      }
    }
    if (!found)
      throw Error("no descent found; inconsistent Weyl element");
  }
  return word;
}

WeylEnumeration WeylEnumeration::enumerate(const RootSystem& rs,
                                           const WeylEnumOptions& opts) {
  const uint64_t order = rs.weyl_order();
  if (order > opts.max_elements) {
    std::ostringstream os;
    os << "Weyl group of " << rs.name() << " has " << order
       << " elements, over the cap " << opts.max_elements
       << "; raise max_elements to enumerate";
    throw CapExceeded(os.str());
  }
  const uint64_t entries = order * uint64_t(rs.num_roots());
  if (entries > opts.max_perm_entries) {
    std::ostringstream os;
    os << "enumerating W(" << rs.name() << ") needs " << entries
       << " permutation entries, over the memory guard "
       << opts.max_perm_entries << "; raise max_perm_entries explicitly";
    throw CapExceeded(os.str());
  }

  WeylEnumeration en(rs);

  const std::string meta = "weyl " + rs.name() +
                           " nroots=" + std::to_string(rs.num_roots()) +
                           " count=" + std::to_string(order);
  const std::string fname = "weyl_" + rs.name() + ".cache";
  std::filesystem::path file;
  if (opts.use_cache) {
    file = cache_directory(opts.cache_dir) / fname;
    if (auto rec = cache_read(file, meta);
        rec && rec->size() == order) {
      en.perms_.reserve(order);
      en.lengths_.reserve(order);
      bool ok = true;
      for (const auto& line : *rec) {
        std::vector<uint16_t> p(rs.num_roots());
        const char* s = line.data();
        const char* pe = line.data() + line.size();
        size_t k = 0;
        long v = 0;
        for (; k <= p.size(); ++k) {
          while (s < pe && *s == ' ') ++s;
          auto [next, ec] = std::from_chars(s, pe, v);
          if (ec != std::errc()) break;
          s = next;
          if (k < p.size())
            p[k] = static_cast<uint16_t>(v);
        }
        if (k != p.size() + 1) {
          ok = false;
          break;
        }
        en.perms_.push_back(std::move(p));
        en.lengths_.push_back(static_cast<uint16_t>(v));
      }
      if (ok) {
        en.from_cache_ = true;
        en.build_index();
        return en;
      }
      en.perms_.clear();
      en.lengths_.clear();
    }
  }

  // BFS closure over the generators, then canonical sort.
  std::vector<std::vector<uint16_t>> gens;
  for (int i = 0; i < rs.rank(); ++i)
    gens.push_back(weyl_generator(rs, i).perm);

  std::unordered_set<std::string> seen;
  std::deque<std::vector<uint16_t>> frontier;
  std::vector<std::vector<uint16_t>> all;
  auto id = weyl_identity(rs).perm;
  seen.insert(perm_key(id));
  frontier.push_back(id);
  all.push_back(std::move(id));
  while (!frontier.empty()) {
    auto cur = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& g : gens) {
      std::vector<uint16_t> next(cur.size());
      for (size_t i = 0; i < cur.size(); ++i) next[i] = cur[g[i]];
      if (seen.insert(perm_key(next)).second) {
        frontier.push_back(next);
        all.push_back(std::move(next));
      }
    }
  }
  if (all.size() != order)
    throw Error("Weyl enumeration of " + rs.name() +
                " closed at unexpected size " + std::to_string(all.size()));

  std::sort(all.begin(), all.end(),
            [](const std::vector<uint16_t>& a, const std::vector<uint16_t>& b) {
              int la = length_of_perm(a), lb = length_of_perm(b);
              if (la != lb) return la < lb;
              return a < b;
            });
  en.perms_ = std::move(all);
  en.lengths_.reserve(order);
  for (const auto& p : en.perms_)
    en.lengths_.push_back(static_cast<uint16_t>(length_of_perm(p)));
  en.build_index();

  if (opts.use_cache) {
    std::vector<std::string> records;
    records.reserve(en.perms_.size());
    std::string line;
    for (size_t i = 0; i < en.perms_.size(); ++i) {
      line.clear();
      for (uint16_t v : en.perms_[i]) {
        line += std::to_string(v);
        line += ' ';
      }
      line += std::to_string(en.lengths_[i]);
      records.push_back(line);
    }
    cache_write(file, meta, records);
  }
  return en;
}

void WeylEnumeration::build_index() {
  index_.reserve(perms_.size() * 2);
  for (size_t i = 0; i < perms_.size(); ++i)
    index_[perm_key(perms_[i])] = static_cast<long long>(i);
}

WeylElement WeylEnumeration::element(size_t i) const {
  WeylElement w;
  w.type = static_cast<char>(rs_.type());
  w.rank = static_cast<uint8_t>(rs_.rank());
  w.perm = perms_[i];
  return w;
}

long long WeylEnumeration::index_of(const WeylElement& w) const {
  if (w.type != static_cast<char>(rs_.type()) || w.rank != rs_.rank())
    return -1;
  return index_of_perm(w.perm);
}

long long WeylEnumeration::index_of_perm(
    const std::vector<uint16_t>& perm) const {
  auto it = index_.find(perm_key(perm));
  return it == index_.end() ? -1 : it->second;
}

std::vector<long long> poincare_polynomial(const WeylEnumeration& en) {
  const int top = en.root_system().num_positive();
  std::vector<long long> c(top + 1, 0);
  for (size_t i = 0; i < en.size(); ++i) ++c[en.length(i)];
  return c;
}

CosetTable parabolic_cosets(const WeylEnumeration& en,
                            const std::vector<int>& J) {
  const RootSystem& rs = en.root_system();
  std::vector<int> sub(J);
  std::sort(sub.begin(), sub.end());
  sub.erase(std::unique(sub.begin(), sub.end()), sub.end());
  for (int j : sub)
    if (j < 0 || j >= rs.rank())
      throw InvalidInput("parabolic subset index out of range for " +
                         rs.name());
  if (static_cast<int>(sub.size()) == rs.rank())
    throw InvalidInput("parabolic subset must be proper (J != S)");

  // Minimal-length representative of w W_J: strip right descents in J.
  std::vector<int> simple_idx(sub.size());
  for (size_t k = 0; k < sub.size(); ++k)
    simple_idx[k] = rs.simple_root_index(sub[k]);
  std::vector<std::vector<uint16_t>> gens;
  for (int j : sub) gens.push_back(weyl_generator(rs, j).perm);

  const int n_pos = rs.num_positive();
  CosetTable table;
  table.subset = sub;
  table.coset_of_elem.assign(en.size(), -1);

  std::unordered_map<long long, int32_t> rep_to_coset;
  std::vector<long long> reps;
  for (size_t i = 0; i < en.size(); ++i) {
    std::vector<uint16_t> cur = en.element(i).perm;
    // while w(alpha_j) < 0 for some j in J: w <- w s_j
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t k = 0; k < sub.size(); ++k) {
        if (cur[simple_idx[k]] >= n_pos) {
          std::vector<uint16_t> next(cur.size());
          const auto& g = gens[k];
          for (size_t r = 0; r < cur.size(); ++r) next[r] = cur[g[r]];
          cur = std::move(next);
          changed = true;
          break;
        }
      }
    }
    long long rep = en.index_of_perm(cur);
    auto [it, inserted] = rep_to_coset.try_emplace(
        rep, static_cast<int32_t>(reps.size()));
    if (inserted) reps.push_back(rep);
    table.coset_of_elem[i] = it->second;
  }

  // Renumber cosets by canonical order of representatives.
  std::vector<long long> sorted = reps;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int32_t> renumber(reps.size());
  std::unordered_map<long long, int32_t> pos;
  for (size_t k = 0; k < sorted.size(); ++k)
    pos[sorted[k]] = static_cast<int32_t>(k);
  for (size_t k = 0; k < reps.size(); ++k) renumber[k] = pos[reps[k]];
  for (auto& c : table.coset_of_elem) c = renumber[c];
  table.reps = std::move(sorted);
  return table;
}

}  // namespace chevlab
