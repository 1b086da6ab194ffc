#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <deque>
#include <filesystem>
#include <map>
#include <random>
#include <set>

#include "chevlab/weyl.hpp"

using namespace chevlab;

namespace {

WeylEnumOptions no_cache() {
  WeylEnumOptions o;
  o.use_cache = false;
  return o;
}

// Word-metric oracle: BFS distances from the identity in the Cayley graph.
std::map<std::vector<uint16_t>, int> bfs_word_lengths(const RootSystem& rs) {
  std::vector<WeylElement> gens;
  for (int i = 0; i < rs.rank(); ++i) gens.push_back(weyl_generator(rs, i));
  std::map<std::vector<uint16_t>, int> dist;
  std::deque<WeylElement> frontier;
  WeylElement id = weyl_identity(rs);
  dist[id.perm] = 0;
  frontier.push_back(id);
  while (!frontier.empty()) {
    WeylElement cur = frontier.front();
    frontier.pop_front();
    int d = dist[cur.perm];
    for (const auto& g : gens) {
      WeylElement next = weyl_multiply(cur, g);
      if (dist.emplace(next.perm, d + 1).second) frontier.push_back(next);
    }
  }
  return dist;
}

}  // namespace

TEST_CASE("generators act as simple reflections") {
  auto a1 = RootSystem::build(TypeLabel::A, 1);
  auto s = weyl_generator(a1, 0);
  CHECK(s.perm == std::vector<uint16_t>{1, 0});  // swaps a <-> -a
  CHECK(weyl_is_identity(weyl_multiply(s, s)));

  auto a2 = RootSystem::build(TypeLabel::A, 2);
  auto s1 = weyl_generator(a2, 0), s2 = weyl_generator(a2, 1);
  auto prod = weyl_multiply(s1, s2);
  auto p3 = weyl_multiply(prod, weyl_multiply(prod, prod));
  CHECK(weyl_is_identity(p3));

  auto c2 = RootSystem::build(TypeLabel::C, 2);
  auto t1 = weyl_generator(c2, 0), t2 = weyl_generator(c2, 1);
  auto q = weyl_multiply(t1, t2);
  auto q2 = weyl_multiply(q, q);
  CHECK(!weyl_is_identity(q2));
  CHECK(weyl_is_identity(weyl_multiply(q2, q2)));

  CHECK_THROWS_AS(weyl_generator(a2, 2), InvalidInput);
}

TEST_CASE("multiply and invert obey group axioms") {
  auto b3 = RootSystem::build(TypeLabel::B, 3);
  std::mt19937 rng(7);
  std::vector<WeylElement> gens;
  for (int i = 0; i < 3; ++i) gens.push_back(weyl_generator(b3, i));
  auto random_elem = [&] {
    WeylElement w = weyl_identity(b3);
    for (int k = 0; k < 12; ++k)
      w = weyl_multiply(w, gens[rng() % gens.size()]);
    return w;
  };
  for (int trial = 0; trial < 20; ++trial) {
    auto w = random_elem();
    CHECK(weyl_is_identity(weyl_multiply(w, weyl_invert(w))));
    CHECK(weyl_is_identity(weyl_multiply(weyl_invert(w), w)));
    auto u = random_elem(), v = random_elem();
    // associativity through composition of images
    auto lhs = weyl_multiply(weyl_multiply(u, v), w);
    auto rhs = weyl_multiply(u, weyl_multiply(v, w));
    CHECK(lhs == rhs);
  }
  for (const auto& g : gens) CHECK(weyl_invert(g) == g);

  auto a2 = RootSystem::build(TypeLabel::A, 2);
  CHECK_THROWS_AS(weyl_multiply(weyl_generator(a2, 0), weyl_generator(b3, 0)),
                  ContextMismatch);
}

TEST_CASE("inversion-count length equals BFS word length") {
  for (auto [t, n] : {std::pair{TypeLabel::A, 1}, {TypeLabel::A, 2},
                      {TypeLabel::A, 3}, {TypeLabel::A, 4},
                      {TypeLabel::C, 2}, {TypeLabel::B, 3},
                      {TypeLabel::D, 4}}) {
    auto rs = RootSystem::build(t, n);
    auto dist = bfs_word_lengths(rs);
    INFO(rs.name());
    CHECK(dist.size() == rs.weyl_order());
    for (const auto& [perm, d] : dist) {
      WeylElement w{static_cast<char>(rs.type()),
                    static_cast<uint8_t>(rs.rank()), perm};
      CHECK(weyl_length(w) == d);
    }
  }
}

TEST_CASE("E6: inversion length equals word length on 1000 samples") {
  auto e6 = RootSystem::build(TypeLabel::E, 6);
  auto dist = bfs_word_lengths(e6);
  REQUIRE(dist.size() == 51840);
  std::mt19937 rng(101);
  std::vector<const std::vector<uint16_t>*> keys;
  keys.reserve(dist.size());
  for (const auto& [perm, d] : dist) keys.push_back(&perm);
  for (int t = 0; t < 1000; ++t) {
    const auto& perm = *keys[rng() % keys.size()];
    WeylElement w{'E', 6, perm};
    CHECK(weyl_length(w) == dist.at(perm));
  }
}

TEST_CASE("length basics and the longest element") {
  auto a2 = RootSystem::build(TypeLabel::A, 2);
  CHECK(weyl_length(weyl_identity(a2)) == 0);
  for (int i = 0; i < 2; ++i) CHECK(weyl_length(weyl_generator(a2, i)) == 1);
  auto en = WeylEnumeration::enumerate(a2, no_cache());
  int max_len = 0;
  for (size_t i = 0; i < en.size(); ++i) max_len = std::max(max_len, en.length(i));
  CHECK(max_len == 3);  // = |Phi^+|
}

TEST_CASE("deletion property: l(sw) = l(w) +- 1") {
  auto d4 = RootSystem::build(TypeLabel::D, 4);
  std::mt19937 rng(11);
  std::vector<WeylElement> gens;
  for (int i = 0; i < 4; ++i) gens.push_back(weyl_generator(d4, i));
  WeylElement w = weyl_identity(d4);
  for (int step = 0; step < 200; ++step) {
    const auto& s = gens[rng() % gens.size()];
    int before = weyl_length(w);
    w = weyl_multiply(s, w);
    int after = weyl_length(w);
    CHECK(std::abs(after - before) == 1);
  }
}

TEST_CASE("enumerate: sizes and canonical determinism") {
  auto a2 = RootSystem::build(TypeLabel::A, 2);
  CHECK(WeylEnumeration::enumerate(a2, no_cache()).size() == 6);

  auto c2 = RootSystem::build(TypeLabel::C, 2);
  auto en1 = WeylEnumeration::enumerate(c2, no_cache());
  auto en2 = WeylEnumeration::enumerate(c2, no_cache());
  CHECK(en1.size() == 8);
  for (size_t i = 0; i < en1.size(); ++i)
    CHECK(en1.element(i) == en2.element(i));

  auto d4 = RootSystem::build(TypeLabel::D, 4);
  CHECK(WeylEnumeration::enumerate(d4, no_cache()).size() == 192);
}

TEST_CASE("enumeration caps") {
  auto e8 = RootSystem::build(TypeLabel::E, 8);
  CHECK_THROWS_AS(WeylEnumeration::enumerate(e8, no_cache()), CapExceeded);
  // E7 is under the element cap but over the default memory guard
  auto e7 = RootSystem::build(TypeLabel::E, 7);
  CHECK_THROWS_AS(WeylEnumeration::enumerate(e7, no_cache()), CapExceeded);
  auto a3 = RootSystem::build(TypeLabel::A, 3);
  WeylEnumOptions tight = no_cache();
  tight.max_elements = 10;
  CHECK_THROWS_AS(WeylEnumeration::enumerate(a3, tight), CapExceeded);
}

TEST_CASE("poincare polynomial") {
  auto a1 = RootSystem::build(TypeLabel::A, 1);
  CHECK(poincare_polynomial(WeylEnumeration::enumerate(a1, no_cache())) ==
        std::vector<long long>{1, 1});
  auto a2 = RootSystem::build(TypeLabel::A, 2);
  CHECK(poincare_polynomial(WeylEnumeration::enumerate(a2, no_cache())) ==
        std::vector<long long>{1, 2, 2, 1});
  auto c2 = RootSystem::build(TypeLabel::C, 2);
  CHECK(poincare_polynomial(WeylEnumeration::enumerate(c2, no_cache())) ==
        std::vector<long long>{1, 2, 2, 2, 1});

  for (auto [t, n] : {std::pair{TypeLabel::B, 3}, {TypeLabel::D, 4},
                      {TypeLabel::A, 4}}) {
    auto rs = RootSystem::build(t, n);
    auto en = WeylEnumeration::enumerate(rs, no_cache());
    auto poly = poincare_polynomial(en);
    CHECK(static_cast<int>(poly.size()) == rs.num_positive() + 1);
    long long sum = 0;
    for (size_t k = 0; k < poly.size(); ++k) {
      sum += poly[k];
      CHECK(poly[k] == poly[poly.size() - 1 - k]);  // palindromic
    }
    CHECK(sum == static_cast<long long>(rs.weyl_order()));
  }
}

TEST_CASE("reduced words") {
  auto a2 = RootSystem::build(TypeLabel::A, 2);
  CHECK(reduced_word(a2, weyl_identity(a2)).empty());
  CHECK(reduced_word(a2, weyl_generator(a2, 0)) == std::vector<int>{0});

  auto en = WeylEnumeration::enumerate(a2, no_cache());
  // longest element of A2
  for (size_t i = 0; i < en.size(); ++i) {
    auto w = en.element(i);
    auto word = reduced_word(a2, w);
    CHECK(static_cast<int>(word.size()) == weyl_length(w));
    WeylElement rebuilt = weyl_identity(a2);
    for (int g : word) rebuilt = weyl_multiply(rebuilt, weyl_generator(a2, g));
    CHECK(rebuilt == w);
  }

  auto b3 = RootSystem::build(TypeLabel::B, 3);
  auto enb = WeylEnumeration::enumerate(b3, no_cache());
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    auto w = enb.element(rng() % enb.size());
    auto word = reduced_word(b3, w);
    CHECK(static_cast<int>(word.size()) == weyl_length(w));
    WeylElement rebuilt = weyl_identity(b3);
    for (int g : word) rebuilt = weyl_multiply(rebuilt, weyl_generator(b3, g));
    CHECK(rebuilt == w);
  }
}

TEST_CASE("parabolic cosets") {
  auto a2 = RootSystem::build(TypeLabel::A, 2);
  auto en = WeylEnumeration::enumerate(a2, no_cache());
  auto t = parabolic_cosets(en, {1});
  CHECK(t.size() == 3);

  auto c2 = RootSystem::build(TypeLabel::C, 2);
  auto enc = WeylEnumeration::enumerate(c2, no_cache());
  CHECK(parabolic_cosets(enc, {0}).size() == 4);

  CHECK(parabolic_cosets(en, {}).size() == en.size());
  CHECK_THROWS_AS(parabolic_cosets(en, {0, 1}), InvalidInput);

  // |reps| * |W_J| = |W| and reps are minimal in their coset
  for (auto J : std::vector<std::vector<int>>{{0}, {1}}) {
    auto table = parabolic_cosets(enc, J);
    std::map<int32_t, int> sizes;
    for (auto c : table.coset_of_elem) ++sizes[c];
    CHECK(sizes.size() == table.size());
    size_t wj = enc.size() / table.size();
    for (auto& [c, count] : sizes) CHECK(static_cast<size_t>(count) == wj);
    for (size_t c = 0; c < table.size(); ++c) {
      long long rep = table.reps[c];
      for (size_t i = 0; i < enc.size(); ++i)
        if (table.coset_of_elem[i] == static_cast<int32_t>(c))
          CHECK(enc.length(rep) <= enc.length(i));
    }
  }
}

TEST_CASE("enumeration cache round-trips losslessly") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "chevlab-test-weyl-cache";
  fs::remove_all(dir);

  WeylEnumOptions opts;
  opts.use_cache = true;
  opts.cache_dir = dir.string();

  auto c2 = RootSystem::build(TypeLabel::C, 2);
  auto cold = WeylEnumeration::enumerate(c2, opts);
  CHECK(!cold.loaded_from_cache());
  auto warm = WeylEnumeration::enumerate(c2, opts);
  CHECK(warm.loaded_from_cache());
  REQUIRE(warm.size() == cold.size());
  for (size_t i = 0; i < cold.size(); ++i) {
    CHECK(cold.element(i) == warm.element(i));
    CHECK(cold.length(i) == warm.length(i));
  }
  fs::remove_all(dir);
}
