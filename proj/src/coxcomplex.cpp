#include "chevlab/coxcomplex.hpp"

#include <algorithm>

namespace chevlab {

CoxeterComplex::CoxeterComplex(WeylEnumeration en) : weyl_(std::move(en)) {}

CoxeterComplex CoxeterComplex::build(const WeylEnumeration& en) {
  CoxeterComplex cc(en);
  const RootSystem& rs = en.root_system();
  const int rank = rs.rank();

  // Vertices of type s are the cosets w W_{S \ {s}}.
  cc.vertex_offset_.resize(rank + 1, 0);
  std::vector<int> vertex_types;
  for (int s = 0; s < rank; ++s) {
    std::vector<int> J;
    for (int j = 0; j < rank; ++j)
      if (j != s) J.push_back(j);
    cc.cosets_.push_back(parabolic_cosets(en, J));
    cc.vertex_offset_[s + 1] =
        cc.vertex_offset_[s] + static_cast<int>(cc.cosets_[s].size());
    for (size_t k = 0; k < cc.cosets_[s].size(); ++k) vertex_types.push_back(s);
  }

  // One chamber per Weyl element.
  std::vector<std::vector<int32_t>> chambers(en.size());
  for (size_t i = 0; i < en.size(); ++i) {
    std::vector<int32_t> ch(rank);
    for (int s = 0; s < rank; ++s)
      ch[s] = cc.vertex_offset_[s] + cc.cosets_[s].coset_of_elem[i];
    chambers[i] = std::move(ch);
  }
  cc.sc_ = SimplicialComplex::from_chambers(vertex_types, chambers);

  cc.chamber_of_elem_.resize(en.size());
  cc.elem_of_chamber_.assign(cc.sc_.chambers().size(), -1);
  for (size_t i = 0; i < en.size(); ++i) {
    int id = cc.sc_.face_id(rank - 1, cc.sc_.sort_simplex(chambers[i]));
    cc.chamber_of_elem_[i] = id;
    cc.elem_of_chamber_[id] = static_cast<long long>(i);
  }
  return cc;
}

int CoxeterComplex::vertex_of_coset(int type, int coset_id) const {
  return vertex_offset_[type] + coset_id;
}

int CoxeterComplex::coset_of_vertex(int v) const {
  return v - vertex_offset_[sc_.vertex_type(v)];
}

std::vector<int32_t> CoxeterComplex::fundamental_chamber() const {
  long long id_index = weyl_.index_of(weyl_identity(weyl_.root_system()));
  return sc_.chambers()[chamber_of_elem_[id_index]];
}

int CoxeterComplex::act_vertex(const WeylElement& w, int v) const {
  const int type = sc_.vertex_type(v);
  const auto& table = cosets_[type];
  long long rep = table.reps[coset_of_vertex(v)];
  WeylElement moved = weyl_multiply(w, weyl_.element(rep));
  long long idx = weyl_.index_of(moved);
  if (idx < 0) throw ContextMismatch("element from a different Weyl group");
  return vertex_of_coset(type, table.coset_of_elem[idx]);
}

std::vector<int32_t> CoxeterComplex::act_simplex(
    const WeylElement& w, const std::vector<int32_t>& verts) const {
  std::vector<int32_t> img(verts.size());
  for (size_t i = 0; i < verts.size(); ++i)
    img[i] = act_vertex(w, verts[i]);
  // The action preserves types and each simplex has distinct types, so the
  // image of a type-sorted list is type-sorted.
  return img;
}

Chain CoxeterComplex::act_on_chain(const WeylElement& w, const Chain& c) const {
  if (c.degree < 0 || c.degree > sc_.dim())
    throw ContextMismatch("chain degree outside the Coxeter complex");
  Chain out = make_chain(c.ring, c.degree);
  for (const auto& [sid, v] : c.coeff) {
    if (sid < 0 || sid >= sc_.num_faces(c.degree))
      throw ContextMismatch("chain simplex id outside the Coxeter complex");
    int img = sc_.face_id(c.degree, act_simplex(w, sc_.faces(c.degree)[sid]));
    chain_add_term(out, img, v);
  }
  return out;
}

Chain CoxeterComplex::standard_apartment_class() const {
  Chain c = make_chain(RingSpec::Z(), sc_.dim());
  for (size_t i = 0; i < weyl_.size(); ++i) {
    Int sign = (weyl_.length(i) % 2 == 0) ? 1 : -1;
    chain_add_term(c, chamber_of_elem_[i], sign);
  }
  return c;
}

}  // namespace chevlab
