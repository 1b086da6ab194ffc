#include "chevlab/rootsys.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace chevlab {

namespace {

std::string pack(const RootVec& v) {
  std::string s;
  s.reserve(v.size() * sizeof(int));
  for (int x : v) s.append(reinterpret_cast<const char*>(&x), sizeof(int));
  return s;
}

void check_rank(TypeLabel t, int rank) {
  auto fail = [&](const char* constraint) {
    std::ostringstream os;
    os << "illegal type/rank pair " << static_cast<char>(t) << rank << ": "
       << constraint << " (legal: A n>=1, B n>=2, C n>=2, D n>=3, E 6/7/8, "
          "F 4, G 2)";
    throw InvalidInput(os.str());
  };
  switch (t) {
    case TypeLabel::A:
      if (rank < 1) fail("A_n needs n >= 1");
      break;
    case TypeLabel::B:
      if (rank < 2) fail("B_n needs n >= 2");
      break;
    case TypeLabel::C:
      if (rank < 2) fail("C_n needs n >= 2");
      break;
    case TypeLabel::D:
      if (rank < 3) fail("D_n needs n >= 3");
      break;
    case TypeLabel::E:
      if (rank < 6 || rank > 8) fail("E_n needs n in {6,7,8}");
      break;
    case TypeLabel::F:
      if (rank != 4) fail("F_n needs n = 4");
      break;
    case TypeLabel::G:
      if (rank != 2) fail("G_n needs n = 2");
      break;
  }
}

// Cartan matrices in the Bourbaki numbering. cartan[i][j] = <a_i, a_j^vee>.
std::vector<std::vector<int>> cartan_matrix(TypeLabel t, int n) {
  std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) c[i][i] = 2;
  auto chain = [&](int upto) {
    for (int i = 0; i + 1 < upto; ++i) c[i][i + 1] = c[i + 1][i] = -1;
  };
  switch (t) {
    case TypeLabel::A:
      chain(n);
      break;
    case TypeLabel::B:
      // a_n is the short root
      chain(n);
      c[n - 2][n - 1] = -2;
      c[n - 1][n - 2] = -1;
      break;
    case TypeLabel::C:
      // a_n is the long root
      chain(n);
      c[n - 2][n - 1] = -1;
      c[n - 1][n - 2] = -2;
      break;
    case TypeLabel::D:
      chain(n - 1);
      c[n - 3][n - 1] = c[n - 1][n - 3] = -1;
      break;
    case TypeLabel::E: {
      // chain 1-3-4-5-6(-7-8), node 2 attached to node 4
      std::vector<std::pair<int, int>> edges = {{0, 2}, {2, 3}, {3, 4},
                                                {4, 5}, {1, 3}};
      if (n >= 7) edges.push_back({5, 6});
      if (n == 8) edges.push_back({6, 7});
      for (auto [i, j] : edges) c[i][j] = c[j][i] = -1;
      break;
    }
    case TypeLabel::F:
      chain(4);
      c[1][2] = -2;
      c[2][1] = -1;
      break;
    case TypeLabel::G:
      c[0][1] = -1;
      c[1][0] = -3;
      break;
  }
  return c;
}

}  // namespace

TypeLabel type_label_from_char(char c) {
  switch (c) {
    case 'A': case 'a': return TypeLabel::A;
    case 'B': case 'b': return TypeLabel::B;
    case 'C': case 'c': return TypeLabel::C;
    case 'D': case 'd': return TypeLabel::D;
    case 'E': case 'e': return TypeLabel::E;
    case 'F': case 'f': return TypeLabel::F;
    case 'G': case 'g': return TypeLabel::G;
    default:
      throw InvalidInput(std::string("unknown type label '") + c +
                         "' (legal types: A B C D E F G)");
  }
}

RootSystem RootSystem::build(TypeLabel type, int rank) {
  check_rank(type, rank);

  RootSystem rs;
  rs.type_ = type;
  rs.rank_ = rank;
  rs.cartan_.cartan = cartan_matrix(type, rank);

  // Coxeter matrix from the Cartan integers: the off-diagonal product
  // 0,1,2,3 gives m = 2,3,4,6.
  rs.cartan_.coxeter.assign(rank, std::vector<int>(rank, 2));
  for (int i = 0; i < rank; ++i) {
    rs.cartan_.coxeter[i][i] = 1;
    for (int j = 0; j < rank; ++j) {
      if (i == j) continue;
      int prod = rs.cartan_.cartan[i][j] * rs.cartan_.cartan[j][i];
      static const int m_of[4] = {2, 3, 4, 6};
      rs.cartan_.coxeter[i][j] = m_of[prod];
    }
  }

  // Close the simple roots under all simple reflections.
  std::set<RootVec> closed;
  std::vector<RootVec> frontier;
  for (int i = 0; i < rank; ++i) {
    RootVec e(rank, 0);
    e[i] = 1;
    closed.insert(e);
    frontier.push_back(e);
  }
  const auto& C = rs.cartan_.cartan;
  while (!frontier.empty()) {
    std::vector<RootVec> next;
    for (const auto& beta : frontier) {
      for (int j = 0; j < rank; ++j) {
        int pairing = 0;
        for (int i = 0; i < rank; ++i) pairing += beta[i] * C[i][j];
        RootVec img = beta;
        img[j] -= pairing;
        if (closed.insert(img).second) next.push_back(img);
      }
    }
    frontier = std::move(next);
  }

  std::vector<RootVec> positives;
  for (const auto& r : closed) {
    bool nonneg = std::all_of(r.begin(), r.end(), [](int x) { return x >= 0; });
    if (nonneg) positives.push_back(r);
  }
  auto ht = [](const RootVec& v) {
    return std::accumulate(v.begin(), v.end(), 0);
  };
  std::sort(positives.begin(), positives.end(),
            [&](const RootVec& a, const RootVec& b) {
              int ha = ht(a), hb = ht(b);
              if (ha != hb) return ha < hb;
              return a < b;
            });

  rs.num_positive_ = static_cast<int>(positives.size());
  rs.roots_ = positives;
  for (const auto& r : positives) {
    RootVec neg(r);
    for (int& x : neg) x = -x;
    rs.roots_.push_back(std::move(neg));
  }
  for (size_t i = 0; i < rs.roots_.size(); ++i)
    rs.index_[pack(rs.roots_[i])] = static_cast<int>(i);

  return rs;
}

std::string RootSystem::name() const {
  return std::string(1, static_cast<char>(type_)) + std::to_string(rank_);
}

int RootSystem::root_index(const RootVec& v) const {
  auto it = index_.find(pack(v));
  return it == index_.end() ? -1 : it->second;
}

int RootSystem::simple_root_index(int i) const {
  if (i < 0 || i >= rank_)
    throw InvalidInput("simple root index out of range for " + name());
  RootVec e(rank_, 0);
  e[i] = 1;
  return root_index(e);
}

int RootSystem::height(int root_idx) const {
  const RootVec& v = roots_.at(root_idx);
  return std::accumulate(v.begin(), v.end(), 0);
}

RootVec RootSystem::reflect_vec(int i, const RootVec& beta) const {
  if (i < 0 || i >= rank_)
    throw InvalidInput("simple reflection index out of range for " + name());
  if (root_index(beta) < 0)
    throw InvalidInput("not a root of " + name());
  const auto& C = cartan_.cartan;
  int pairing = 0;
  for (int k = 0; k < rank_; ++k) pairing += beta[k] * C[k][i];
  RootVec img = beta;
  img[i] -= pairing;
  return img;
}

int RootSystem::reflect(int i, int root_idx) const {
  if (root_idx < 0 || root_idx >= num_roots())
    throw InvalidInput("root index out of range for " + name());
  int img = root_index(reflect_vec(i, roots_[root_idx]));
  return img;  // closure guarantees img >= 0
}

uint64_t RootSystem::weyl_order() const {
  auto fact = [](int n) {
    uint64_t f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
  };
  switch (type_) {
    case TypeLabel::A: return fact(rank_ + 1);
    case TypeLabel::B:
    case TypeLabel::C: return (uint64_t(1) << rank_) * fact(rank_);
    case TypeLabel::D: return (uint64_t(1) << (rank_ - 1)) * fact(rank_);
    case TypeLabel::E:
      if (rank_ == 6) return 51840;
      if (rank_ == 7) return 2903040;
      return 696729600;
    case TypeLabel::F: return 1152;
    case TypeLabel::G: return 12;
  }
  return 0;
}

long long vcd_over_ring(const RootSystem& rs, const std::string& ring) {
  if (ring != "Z")
    throw InvalidInput("vcd formula implemented only for the integers Z; got "
                       "ring '" + ring + "'");
  return rs.vcd_over_Z();
}

}  // namespace chevlab
