#ifndef CHEVLAB_COXCOMPLEX_HPP
#define CHEVLAB_COXCOMPLEX_HPP

#include <vector>

#include "chevlab/homology.hpp"
#include "chevlab/weyl.hpp"

namespace chevlab {

// The Coxeter complex Sigma(W, S): vertices of type s are the cosets
// w W_{S \ {s}}, identified by their minimal-length representatives;
// chambers biject with W and carry the simply transitive W-action.
class CoxeterComplex {
 public:
  static CoxeterComplex build(const WeylEnumeration& en);

  const SimplicialComplex& complex() const { return sc_; }
  const WeylEnumeration& weyl() const { return weyl_; }
  int rank() const { return static_cast<int>(cosets_.size()); }

  int vertex_of_coset(int type, int coset_id) const;
  int vertex_type_of(int v) const { return sc_.vertex_type(v); }
  // Coset id of a vertex within its type's table.
  int coset_of_vertex(int v) const;

  int chamber_of_element(long long weyl_index) const {
    return chamber_of_elem_[weyl_index];
  }
  long long element_of_chamber(int chamber_id) const {
    return elem_of_chamber_[chamber_id];
  }
  std::vector<int32_t> fundamental_chamber() const;

  int act_vertex(const WeylElement& w, int v) const;
  std::vector<int32_t> act_simplex(const WeylElement& w,
                                   const std::vector<int32_t>& verts) const;
  // Linear, degree-preserving, sign-free (the action preserves types).
  // Throws ContextMismatch for chains that do not live on this complex.
  Chain act_on_chain(const WeylElement& w, const Chain& c) const;

  // sum_w (-1)^{l(w)} w.C in the top degree, over Z.
  Chain standard_apartment_class() const;

 private:
  WeylEnumeration weyl_;
  std::vector<CosetTable> cosets_;     // per type s
  std::vector<int> vertex_offset_;     // per type
  SimplicialComplex sc_;
  std::vector<int> chamber_of_elem_;   // weyl index -> chamber id
  std::vector<long long> elem_of_chamber_;

  CoxeterComplex(WeylEnumeration en);
};

}  // namespace chevlab

#endif
