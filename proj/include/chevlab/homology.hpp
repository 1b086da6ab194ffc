#ifndef CHEVLAB_HOMOLOGY_HPP
#define CHEVLAB_HOMOLOGY_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "chevlab/error.hpp"

namespace chevlab {

using Int = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Coefficient rings

enum class RingKind { Z, Q, Fp };

struct RingSpec {
  RingKind kind = RingKind::Z;
  uint32_t p = 0;  // only for Fp

  static RingSpec Z() { return {RingKind::Z, 0}; }
  static RingSpec Q() { return {RingKind::Q, 0}; }
  static RingSpec Fp(uint32_t p);

  bool is_field() const { return kind != RingKind::Z; }
  bool operator==(const RingSpec& o) const {
    return kind == o.kind && p == o.p;
  }
  std::string str() const;
};

// ---------------------------------------------------------------------------
// Sparse integer matrices and exact linear algebra

class SparseZ {
 public:
  SparseZ(int nrows, int ncols);
  int nrows() const { return nrows_; }
  int ncols() const { return ncols_; }
  // Accumulates into (r, c); erases the entry when it cancels to zero.
  void add(int r, int c, const Int& v);
  const std::map<int32_t, Int>& row(int r) const { return rows_[r]; }
  size_t nnz() const;

 private:
  int nrows_;
  int ncols_;
  std::vector<std::map<int32_t, Int>> rows_;
};

struct SnfResult {
  std::vector<Int> factors;  // nonzero invariant factors, d1 | d2 | ...
  int rank = 0;              // == factors.size()
};

// Smith normal form by fraction-free elimination, pivoting on entries of
// minimal absolute value (ties broken towards low fill-in).
SnfResult smith_normal_form(SparseZ m);

// Rank over Q (= number of nonzero invariant factors).
int rank_over_Q(SparseZ m);

// Basis of the rational kernel, as primitive integer vectors. Row ops only
// (integer echelon), then integer back-substitution.
std::vector<std::vector<Int>> kernel_basis_over_Q(const SparseZ& m);

// Dense matrices over a prime field, for mod-p ranks and kernels.
class FpDense {
 public:
  FpDense(int nrows, int ncols, uint32_t p);
  uint32_t& at(int r, int c) { return a_[static_cast<size_t>(r) * ncols_ + c]; }
  uint32_t at(int r, int c) const {
    return a_[static_cast<size_t>(r) * ncols_ + c];
  }
  int nrows() const { return nrows_; }
  int ncols() const { return ncols_; }
  uint32_t p() const { return p_; }

 private:
  int nrows_;
  int ncols_;
  uint32_t p_;
  std::vector<uint32_t> a_;
};

FpDense reduce_mod_p(const SparseZ& m, uint32_t p);
int rank_mod_p(FpDense m);
std::vector<std::vector<uint32_t>> kernel_basis_mod_p(FpDense m);

// ---------------------------------------------------------------------------
// Simplicial complexes with typed vertices

// A finite chamber complex: every vertex carries a type, every maximal
// simplex (chamber) has pairwise distinct vertex types and the same
// dimension. Simplices are stored with vertices sorted by (type, id); since
// every action in scope preserves types, induced chain maps never need sign
// corrections.
class SimplicialComplex {
 public:
  static SimplicialComplex from_chambers(
      std::vector<int> vertex_types,
      const std::vector<std::vector<int32_t>>& chambers);

  int dim() const { return static_cast<int>(faces_.size()) - 1; }
  int num_vertices() const { return static_cast<int>(vertex_types_.size()); }
  int vertex_type(int v) const { return vertex_types_[v]; }
  // Faces of dimension d, each a type-sorted vertex list, ordered
  // lexicographically.
  const std::vector<std::vector<int32_t>>& faces(int d) const {
    return faces_[d];
  }
  int num_faces(int d) const { return static_cast<int>(faces_[d].size()); }
  const std::vector<std::vector<int32_t>>& chambers() const {
    return faces_[dim()];
  }
  // Id of a face among dimension-d faces, -1 if absent. The vertex list
  // must already be type-sorted.
  int face_id(int d, const std::vector<int32_t>& verts) const;
  // Sorts a vertex list by (type, id); throws InvalidInput on repeated types.
  std::vector<int32_t> sort_simplex(std::vector<int32_t> verts) const;

  // Boundary matrix of degree d: rows are (d-1)-faces, columns d-faces.
  // d = 0 gives the augmentation (one row, all ones).
  SparseZ boundary_matrix(int d) const;

  // Number of chambers containing each (dim-1)-face. For 0-dimensional
  // complexes the unique panel is the empty face, contained in everything.
  std::vector<int> panel_chamber_counts() const;

  long long reduced_euler_characteristic() const;

 private:
  std::vector<int> vertex_types_;
  std::vector<std::vector<std::vector<int32_t>>> faces_;
  std::vector<std::unordered_map<std::string, int32_t>> face_index_;
};

// ---------------------------------------------------------------------------
// Chains

// A formal linear combination of same-dimension oriented simplices. Zero
// coefficients are never stored; over F_p coefficients are normalized to
// (0, p).
struct Chain {
  RingSpec ring;
  int degree = 0;
  std::map<int32_t, Int> coeff;

  bool is_zero() const { return coeff.empty(); }
  bool operator==(const Chain& o) const;
};

Chain make_chain(RingSpec ring, int degree);
void chain_add_term(Chain& c, int32_t simplex, const Int& v);
Chain chain_negate(const Chain& c);
Chain chain_add(const Chain& a, const Chain& b);
Chain chain_scale(const Chain& a, const Int& s);

// Simplicial boundary; degree 0 maps onto the augmentation ring (a single
// degree -1 "empty simplex" with id 0).
Chain boundary(const SimplicialComplex& sc, const Chain& c);

// ---------------------------------------------------------------------------
// Homology

struct DegreeHomology {
  long long free_rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1
};

// Reduced homology, degrees -1 .. top.
struct HomologyProfile {
  bool reduced = true;
  int top = 0;
  std::vector<DegreeHomology> by_degree;  // index 0 holds degree -1

  const DegreeHomology& degree(int d) const { return by_degree[d + 1]; }
  bool trivial_outside(int d) const;
  long long alternating_sum() const;
};

// Reduced Betti numbers over a field (Q or F_p); throws InvalidInput for Z.
HomologyProfile betti(const SimplicialComplex& sc, RingSpec field);

// Reduced integral homology with torsion, via Smith normal form.
HomologyProfile integral_homology(const SimplicialComplex& sc);

// Basis of the degree-d cycle space over Q or F_p, as chains. In the top
// degree of a chamber complex this is a basis of H~_top.
std::vector<Chain> kernel_basis(const SimplicialComplex& sc, int degree,
                                RingSpec ring);

}  // namespace chevlab

#endif
