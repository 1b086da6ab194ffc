#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "chevlab/coxcomplex.hpp"

using namespace chevlab;

namespace {

WeylEnumOptions no_cache() {
  WeylEnumOptions o;
  o.use_cache = false;
  return o;
}

CoxeterComplex build_cc(TypeLabel t, int n) {
  auto rs = RootSystem::build(t, n);
  return CoxeterComplex::build(WeylEnumeration::enumerate(rs, no_cache()));
}

}  // namespace

TEST_CASE("A1 Coxeter complex is S^0") {
  auto cc = build_cc(TypeLabel::A, 1);
  CHECK(cc.complex().num_vertices() == 2);
  CHECK(cc.complex().chambers().size() == 2);
  CHECK(cc.complex().dim() == 0);

  Chain cls = cc.standard_apartment_class();
  CHECK(cls.coeff.size() == 2);
  // C - sC
  const RootSystem& rs = cc.weyl().root_system();
  long long id_idx = cc.weyl().index_of(weyl_identity(rs));
  long long s_idx = cc.weyl().index_of(weyl_generator(rs, 0));
  CHECK(cls.coeff.at(cc.chamber_of_element(id_idx)) == 1);
  CHECK(cls.coeff.at(cc.chamber_of_element(s_idx)) == -1);
}

TEST_CASE("A2 gives the hexagon, C2 the octagon") {
  auto a2 = build_cc(TypeLabel::A, 2);
  CHECK(a2.complex().num_vertices() == 6);  // 3 + 3 cosets
  CHECK(a2.complex().chambers().size() == 6);
  CHECK(a2.complex().dim() == 1);

  auto c2 = build_cc(TypeLabel::C, 2);
  CHECK(c2.complex().num_vertices() == 8);  // 4 + 4 cosets
  CHECK(c2.complex().chambers().size() == 8);
}

TEST_CASE("fundamental chamber and the simply transitive action") {
  auto cc = build_cc(TypeLabel::A, 2);
  const RootSystem& rs = cc.weyl().root_system();
  const auto& en = cc.weyl();

  // both vertices of the fundamental chamber are the identity cosets
  auto fund = cc.fundamental_chamber();
  long long id_idx = en.index_of(weyl_identity(rs));
  CHECK(cc.chamber_of_element(id_idx) ==
        cc.complex().face_id(cc.complex().dim(), fund));

  // the orbit of C covers every chamber exactly once
  std::set<int> orbit;
  for (size_t i = 0; i < en.size(); ++i) {
    auto img = cc.act_simplex(en.element(i), fund);
    orbit.insert(cc.complex().face_id(cc.complex().dim(), img));
  }
  CHECK(orbit.size() == en.size());
}

TEST_CASE("action preserves types and composes") {
  auto cc = build_cc(TypeLabel::B, 3);
  const auto& en = cc.weyl();
  std::mt19937 rng(42);
  for (int trial = 0; trial < 25; ++trial) {
    auto u = en.element(rng() % en.size());
    auto v = en.element(rng() % en.size());
    int vert = static_cast<int>(rng() % cc.complex().num_vertices());
    CHECK(cc.complex().vertex_type(cc.act_vertex(u, vert)) ==
          cc.complex().vertex_type(vert));
    CHECK(cc.act_vertex(weyl_multiply(u, v), vert) ==
          cc.act_vertex(u, cc.act_vertex(v, vert)));
  }
}

TEST_CASE("sphere checks: homology, chamber count, panel degree 2") {
  for (auto [t, n] : {std::pair{TypeLabel::A, 1}, {TypeLabel::A, 2},
                      {TypeLabel::A, 3}, {TypeLabel::C, 2},
                      {TypeLabel::B, 3}}) {
    auto cc = build_cc(t, n);
    INFO(cc.weyl().root_system().name());
    CHECK(cc.complex().chambers().size() == cc.weyl().size());
    for (int cnt : cc.complex().panel_chamber_counts()) CHECK(cnt == 2);
    auto prof = integral_homology(cc.complex());
    CHECK(prof.degree(n - 1).free_rank == 1);
    CHECK(prof.degree(n - 1).torsion.empty());
    CHECK(prof.trivial_outside(n - 1));
  }
}

TEST_CASE("standard apartment class is an alternating cycle") {
  for (auto [t, n] :
       {std::pair{TypeLabel::A, 2}, {TypeLabel::C, 2}, {TypeLabel::A, 3}}) {
    auto cc = build_cc(t, n);
    Chain cls = cc.standard_apartment_class();
    CHECK(cls.coeff.size() == cc.weyl().size());
    for (size_t i = 0; i < cc.weyl().size(); ++i) {
      Int expected = (cc.weyl().length(i) % 2 == 0) ? 1 : -1;
      CHECK(cls.coeff.at(cc.chamber_of_element(i)) == expected);
    }
    CHECK(boundary(cc.complex(), cls).is_zero());
  }
}

TEST_CASE("generators reverse the apartment class exactly") {
  for (auto [t, n] : {std::pair{TypeLabel::A, 1}, {TypeLabel::A, 2},
                      {TypeLabel::A, 3}, {TypeLabel::A, 4},
                      {TypeLabel::C, 2}, {TypeLabel::B, 3},
                      {TypeLabel::C, 3}, {TypeLabel::D, 4}}) {
    auto cc = build_cc(t, n);
    const RootSystem& rs = cc.weyl().root_system();
    Chain cls = cc.standard_apartment_class();
    Chain neg = chain_negate(cls);
    for (int i = 0; i < rs.rank(); ++i)
      CHECK(cc.act_on_chain(weyl_generator(rs, i), cls) == neg);
  }
}

TEST_CASE("w acts on the apartment class by (-1)^l(w)") {
  for (auto [t, n] :
       {std::pair{TypeLabel::A, 2}, {TypeLabel::C, 2}, {TypeLabel::A, 3},
        {TypeLabel::B, 3}}) {
    auto cc = build_cc(t, n);
    Chain cls = cc.standard_apartment_class();
    Chain neg = chain_negate(cls);
    std::mt19937 rng(5);
    size_t samples = std::min<size_t>(cc.weyl().size(), 100);
    for (size_t k = 0; k < samples; ++k) {
      size_t i = rng() % cc.weyl().size();
      Chain moved = cc.act_on_chain(cc.weyl().element(i), cls);
      CHECK(moved == ((cc.weyl().length(i) % 2 == 0) ? cls : neg));
    }
  }
}

TEST_CASE("action commutes with the boundary") {
  auto cc = build_cc(TypeLabel::A, 3);
  std::mt19937 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    Chain c = make_chain(RingSpec::Z(), cc.complex().dim());
    for (int s = 0; s < cc.complex().num_faces(cc.complex().dim()); ++s)
      chain_add_term(c, s, static_cast<int>(rng() % 7) - 3);
    auto w = cc.weyl().element(rng() % cc.weyl().size());
    CHECK(boundary(cc.complex(), cc.act_on_chain(w, c)) ==
          cc.act_on_chain(w, boundary(cc.complex(), c)));
  }
}

TEST_CASE("foreign chains and elements are rejected") {
  auto cc = build_cc(TypeLabel::A, 2);
  auto other = RootSystem::build(TypeLabel::C, 2);
  Chain bad = make_chain(RingSpec::Z(), 5);
  chain_add_term(bad, 0, 1);
  CHECK_THROWS_AS(cc.act_on_chain(weyl_identity(other), bad), ContextMismatch);
  Chain out_of_range = make_chain(RingSpec::Z(), 1);
  chain_add_term(out_of_range, 1000, 1);
  const RootSystem& rs = cc.weyl().root_system();
  CHECK_THROWS_AS(cc.act_on_chain(weyl_identity(rs), out_of_range),
                  ContextMismatch);
}
