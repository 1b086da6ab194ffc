#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <set>

#include "chevlab/chevalley.hpp"

using namespace chevlab;

namespace {

GroupEnumOptions no_cache() {
  GroupEnumOptions o;
  o.use_cache = false;
  return o;
}

FpMat unipotent_power_zero(const FpMat& m) {
  // (M - I)^d
  FpMat n = m;
  PrimeField F(m.p());
  for (int i = 0; i < m.n(); ++i) n.at(i, i) = F.sub(n.at(i, i), 1);
  FpMat acc = n;
  for (int k = 1; k < m.n(); ++k) acc = acc.mul(n);
  return acc;
}

bool is_zero(const FpMat& m) {
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j)
      if (m.at(i, j) != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("group specs and order polynomials") {
  CHECK(GroupSpec::sl(2, 3).order() == 24);
  CHECK(GroupSpec::sl(3, 2).order() == 168);
  CHECK(GroupSpec::sl(3, 3).order() == 5616);
  CHECK(GroupSpec::sp(4, 2).order() == 720);
  CHECK(GroupSpec::sp(4, 3).order() == 51840);
  CHECK(GroupSpec::sl(2, 3).name() == "SL2(F3)");
  CHECK(GroupSpec::sp(4, 2).rank() == 2);

  CHECK_THROWS_AS(GroupSpec::sl(1, 2), InvalidInput);
  CHECK_THROWS_AS(GroupSpec::sp(3, 2), InvalidInput);
  CHECK_THROWS_AS(GroupSpec::sp(2, 2), InvalidInput);
  CHECK_THROWS_AS(GroupSpec::sl(2, 4), InvalidInput);
}

TEST_CASE("prime field sanity: inverses exist for all p <= 97") {
  for (uint32_t p = 2; p <= 97; ++p) {
    if (!is_prime(p)) continue;
    PrimeField F(p);
    for (uint32_t a = 1; a < p; ++a) CHECK(F.mul(a, F.inv(a)) == 1);
    CHECK_THROWS_AS(F.inv(0), InvalidInput);
  }
}

TEST_CASE("unipotent root elements in SL2") {
  ChevalleyGroup g(GroupSpec::sl(2, 5));
  const RootSystem& rs = g.roots();
  int alpha = rs.simple_root_index(0);
  auto x = g.x_alpha(alpha, 3);
  CHECK(x.m.at(0, 0) == 1);
  CHECK(x.m.at(0, 1) == 3);
  CHECK(x.m.at(1, 0) == 0);
  CHECK(x.m.at(1, 1) == 1);
  auto xn = g.x_alpha(rs.negate(alpha), 3);
  CHECK(xn.m.at(1, 0) == 3);
  CHECK(xn.m.at(0, 1) == 0);
  CHECK(g.x_alpha(alpha, 0).m.is_identity());
}

TEST_CASE("one-parameter additivity for all roots, p <= 7") {
  for (auto spec : {GroupSpec::sl(2, 7), GroupSpec::sl(3, 5),
                    GroupSpec::sp(4, 3), GroupSpec::sp(4, 7)}) {
    ChevalleyGroup g(spec);
    const RootSystem& rs = g.roots();
    PrimeField F(spec.p);
    for (int r = 0; r < rs.num_roots(); ++r)
      for (uint32_t t = 0; t < spec.p; ++t)
        for (uint32_t u = 0; u < spec.p; ++u)
          CHECK(g.x_alpha(r, t).m.mul(g.x_alpha(r, u).m) ==
                g.x_alpha(r, F.add(t, u)).m);
  }
}

TEST_CASE("root elements are unipotent and lie in the group") {
  for (auto spec : {GroupSpec::sl(3, 3), GroupSpec::sp(4, 3)}) {
    ChevalleyGroup g(spec);
    const RootSystem& rs = g.roots();
    for (int r = 0; r < rs.num_roots(); ++r)
      for (uint32_t t = 1; t < spec.p; ++t) {
        auto x = g.x_alpha(r, t);
        CHECK(g.contains(x.m));
        CHECK(is_zero(unipotent_power_zero(x.m)));
      }
  }
  // Sp4(F3) positive roots at t = 1 preserve the form and are unipotent
  ChevalleyGroup sp(GroupSpec::sp(4, 3));
  const FpMat& J = sp.symplectic_form();
  for (int r = 0; r < sp.roots().num_positive(); ++r) {
    auto x = sp.x_alpha(r, 1);
    CHECK(x.m.transpose().mul(J).mul(x.m) == J);
  }
}

TEST_CASE("bad roots are rejected") {
  ChevalleyGroup g(GroupSpec::sl(3, 3));
  CHECK_THROWS_AS(g.x_alpha(RootVec{2, 0}, 1), InvalidInput);
  CHECK_THROWS_AS(g.x_alpha(999, 1), InvalidInput);
}

TEST_CASE("torus elements") {
  ChevalleyGroup sl2(GroupSpec::sl(2, 7));
  auto h = sl2.torus_element(0, 3);
  CHECK(h.m.at(0, 0) == 3);
  CHECK(h.m.at(1, 1) == 5);  // 3 * 5 = 15 = 1 mod 7
  CHECK_THROWS_AS(sl2.torus_element(0, 0), InvalidInput);

  // F2: the torus is trivial
  ChevalleyGroup sl3f2(GroupSpec::sl(3, 2));
  auto torus2 = sl3f2.torus_elements();
  CHECK(torus2.size() == 1);
  CHECK(torus2[0].m.is_identity());

  // SL3(F3): H has (p-1)^2 = 4 elements
  ChevalleyGroup sl3(GroupSpec::sl(3, 3));
  CHECK(sl3.torus_elements().size() == 4);
  // and the coroot generators generate exactly H
  std::set<std::vector<uint32_t>> from_gens;
  std::vector<FpMat> frontier{FpMat::identity(3, 3)};
  from_gens.insert(frontier[0].data());
  while (!frontier.empty()) {
    FpMat cur = frontier.back();
    frontier.pop_back();
    for (int i = 0; i < 2; ++i)
      for (uint32_t u = 1; u < 3; ++u) {
        FpMat next = cur.mul(sl3.torus_element(i, u).m);
        if (from_gens.insert(next.data()).second) frontier.push_back(next);
      }
  }
  CHECK(from_gens.size() == 4);

  // torus normalizes every root subgroup
  for (auto spec : {GroupSpec::sl(3, 5), GroupSpec::sp(4, 3)}) {
    ChevalleyGroup g(spec);
    const RootSystem& rs = g.roots();
    for (int i = 0; i < rs.rank(); ++i)
      for (uint32_t u = 1; u < spec.p; ++u) {
        auto h = g.torus_element(i, u);
        auto hinv = g.inverse(h);
        for (int r = 0; r < rs.num_roots(); ++r) {
          FpMat conj = h.m.mul(g.x_alpha(r, 1).m).mul(hinv.m);
          bool in_same_subgroup = false;
          for (uint32_t t = 0; t < spec.p && !in_same_subgroup; ++t)
            in_same_subgroup = (conj == g.x_alpha(r, t).m);
          CHECK(in_same_subgroup);
        }
      }
  }
}

TEST_CASE("weyl lifts") {
  ChevalleyGroup sl2(GroupSpec::sl(2, 5));
  auto w = sl2.weyl_lift(sl2.roots().simple_root_index(0));
  CHECK(w.m.at(0, 0) == 0);
  CHECK(w.m.at(0, 1) == 1);
  CHECK(w.m.at(1, 0) == 4);  // -1 mod 5
  CHECK(w.m.at(1, 1) == 0);
  auto w2 = w.m.mul(w.m);
  CHECK(w2.mul(w2).is_identity());
  CHECK(!w2.is_identity());

  // Sp4(F3), long simple root lift: a symplectic monomial matrix
  ChevalleyGroup sp(GroupSpec::sp(4, 3));
  auto wl = sp.weyl_lift(sp.roots().simple_root_index(1));
  const FpMat& J = sp.symplectic_form();
  CHECK(wl.m.transpose().mul(J).mul(wl.m) == J);
  for (int i = 0; i < 4; ++i) {
    int nonzeros = 0;
    for (int j = 0; j < 4; ++j) nonzeros += (wl.m.at(i, j) != 0);
    CHECK(nonzeros == 1);
  }

  // lifts normalize the torus
  for (auto spec : {GroupSpec::sl(3, 3), GroupSpec::sp(4, 3)}) {
    ChevalleyGroup g(spec);
    std::set<std::vector<uint32_t>> torus_keys;
    for (const auto& h : g.torus_elements()) torus_keys.insert(h.m.data());
    for (int i = 0; i < g.roots().rank(); ++i) {
      auto wl2 = g.weyl_lift(g.roots().simple_root_index(i));
      auto winv = g.inverse(wl2);
      for (const auto& h : g.torus_elements())
        CHECK(torus_keys.count(wl2.m.mul(h.m).mul(winv.m).data()) == 1);
    }
  }
}

TEST_CASE("braid relations hold modulo the torus") {
  for (auto spec : {GroupSpec::sl(3, 3), GroupSpec::sl(3, 5),
                    GroupSpec::sp(4, 3), GroupSpec::sp(4, 5)}) {
    ChevalleyGroup g(spec);
    const RootSystem& rs = g.roots();
    std::set<std::vector<uint32_t>> torus_keys;
    for (const auto& h : g.torus_elements()) torus_keys.insert(h.m.data());
    for (int i = 0; i < rs.rank(); ++i)
      for (int j = 0; j < rs.rank(); ++j) {
        if (i == j) continue;
        int m = rs.cartan_data().coxeter[i][j];
        GroupElement lhs = g.identity(), rhs = g.identity();
        for (int k = 0; k < m; ++k) {
          lhs = g.multiply(lhs, g.weyl_lift(g.roots().simple_root_index(
                                    (k % 2 == 0) ? i : j)));
          rhs = g.multiply(rhs, g.weyl_lift(g.roots().simple_root_index(
                                    (k % 2 == 0) ? j : i)));
        }
        // lhs and rhs are in the same coset of H
        FpMat ratio = g.inverse(rhs).m.mul(lhs.m);
        CHECK(torus_keys.count(ratio.data()) == 1);
      }
  }
}

TEST_CASE("canonical lifts multiply along reduced words") {
  ChevalleyGroup g(GroupSpec::sp(4, 3));
  auto en = WeylEnumeration::enumerate(g.roots());
  for (size_t i = 0; i < en.size(); ++i) {
    auto w = en.element(i);
    auto lift = g.lift(w);
    CHECK(g.contains(lift.m));
  }
  CHECK(g.lift(weyl_identity(g.roots())).m.is_identity());
}

TEST_CASE("group enumeration: orders, determinism, caps") {
  CHECK(GroupEnumeration::enumerate(ChevalleyGroup(GroupSpec::sl(2, 3)),
                                    no_cache())
            .size() == 24);
  CHECK(GroupEnumeration::enumerate(ChevalleyGroup(GroupSpec::sl(3, 2)),
                                    no_cache())
            .size() == 168);
  CHECK(GroupEnumeration::enumerate(ChevalleyGroup(GroupSpec::sp(4, 2)),
                                    no_cache())
            .size() == 720);

  // order polynomial is the cross-check at p = 2, 3
  for (auto spec : {GroupSpec::sl(2, 2), GroupSpec::sl(2, 3),
                    GroupSpec::sl(3, 2), GroupSpec::sl(3, 3),
                    GroupSpec::sp(4, 2)}) {
    ChevalleyGroup g(spec);
    auto en = GroupEnumeration::enumerate(g, no_cache());
    CHECK(en.size() == spec.order());
    // every element is in the group; the list is sorted and duplicate-free
    for (size_t i = 0; i + 1 < en.size(); ++i)
      CHECK(en.at(i) < en.at(i + 1));
    for (size_t i = 0; i < en.size(); i += 17) CHECK(g.contains(en.at(i)));
  }

  GroupEnumOptions tight = no_cache();
  tight.max_elements = 100;
  CHECK_THROWS_AS(GroupEnumeration::enumerate(
                      ChevalleyGroup(GroupSpec::sp(4, 2)), tight),
                  CapExceeded);
}

TEST_CASE("group enumeration cache round-trips") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "chevlab-test-group-cache";
  fs::remove_all(dir);
  GroupEnumOptions opts;
  opts.use_cache = true;
  opts.cache_dir = dir.string();

  ChevalleyGroup g(GroupSpec::sl(2, 3));
  auto cold = GroupEnumeration::enumerate(g, opts);
  CHECK(!cold.loaded_from_cache());
  auto warm = GroupEnumeration::enumerate(g, opts);
  CHECK(warm.loaded_from_cache());
  REQUIRE(warm.size() == cold.size());
  for (size_t i = 0; i < cold.size(); ++i) CHECK(cold.at(i) == warm.at(i));
  fs::remove_all(dir);
}

TEST_CASE("cross-group products are rejected") {
  ChevalleyGroup a(GroupSpec::sl(2, 3));
  ChevalleyGroup b(GroupSpec::sl(3, 3));
  CHECK_THROWS_AS(a.multiply(a.identity(), b.identity()), ContextMismatch);
}

TEST_CASE("weyl quotient: SL2(F3), SL3(F3), Sp4(F3)") {
  {
    auto rep = weyl_iso_check(ChevalleyGroup(GroupSpec::sl(2, 3)), no_cache());
    CHECK(rep.normalizer_order == 4);
    CHECK(rep.torus_order == 2);
    CHECK(rep.quotient_order == 2);
    CHECK(rep.ok());
  }
  {
    auto rep = weyl_iso_check(ChevalleyGroup(GroupSpec::sl(3, 3)), no_cache());
    CHECK(rep.torus_order == 4);
    CHECK(rep.quotient_order == 6);
    CHECK(rep.ok());
  }
  {
    auto rep = weyl_iso_check(ChevalleyGroup(GroupSpec::sp(4, 3)), no_cache());
    CHECK(rep.torus_order == 4);
    CHECK(rep.quotient_order == 8);
    CHECK(rep.ok());
  }
}

TEST_CASE("weyl quotient over F2 is flagged degenerate but still works") {
  auto rep = weyl_iso_check(ChevalleyGroup(GroupSpec::sl(2, 2)), no_cache());
  CHECK(rep.degenerate_torus);
  CHECK(rep.torus_order == 1);
  // N(H) = {monomial matrices}: |H| * |W| = 2, not the whole group
  CHECK(rep.normalizer_order == 2);
  CHECK(rep.quotient_order == 2);
  CHECK(rep.ok());
}

TEST_CASE("normalizer orders are |H| * |W|") {
  for (auto spec : {GroupSpec::sl(2, 3), GroupSpec::sl(3, 3),
                    GroupSpec::sp(4, 3), GroupSpec::sl(3, 2)}) {
    ChevalleyGroup g(spec);
    auto rep = weyl_iso_check(g, no_cache());
    CHECK(rep.normalizer_order == rep.torus_order * rep.weyl_order);
  }
}
