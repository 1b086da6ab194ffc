#ifndef CHEVLAB_CHEVALLEY_HPP
#define CHEVLAB_CHEVALLEY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chevlab/fp.hpp"
#include "chevlab/rootsys.hpp"
#include "chevlab/weyl.hpp"

namespace chevlab {

enum class Family { SL, Sp };

// A concrete matrix Chevalley group over a prime field: SL_d(F_p) for type
// A_{d-1}, Sp_d(F_p) (d even) for type C_{d/2}.
struct GroupSpec {
  Family family = Family::SL;
  int dim = 2;    // matrix size
  uint32_t p = 2; // prime

  static GroupSpec sl(int n, uint32_t p);
  static GroupSpec sp(int n, uint32_t p);

  int rank() const { return family == Family::SL ? dim - 1 : dim / 2; }
  std::string name() const;
  uint64_t order() const;  // standard order polynomial at p
  bool operator==(const GroupSpec& o) const {
    return family == o.family && dim == o.dim && p == o.p;
  }
};

struct GroupElement {
  GroupSpec spec;
  FpMat m;

  bool operator==(const GroupElement& o) const {
    return spec == o.spec && m == o.m;
  }
};

// Context for one group: the attached root system, the nilpotent pattern of
// every root subgroup, the symplectic form for Sp. The root subgroup
// patterns satisfy x_alpha(t) x_alpha(u) = x_alpha(t+u) and are normalized
// by the torus with weight alpha.
class ChevalleyGroup {
 public:
  explicit ChevalleyGroup(GroupSpec spec);

  const GroupSpec& spec() const { return spec_; }
  const RootSystem& roots() const { return rs_; }
  const PrimeField& field() const { return field_; }
  // Sp only: the fixed alternating form (+1 on the upper anti-diagonal
  // half, -1 on the lower), making upper-triangular symplectic matrices the
  // standard Borel.
  const FpMat& symplectic_form() const;

  GroupElement identity() const;
  GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
  GroupElement inverse(const GroupElement& a) const;
  bool contains(const FpMat& m) const;  // det 1 / preserves the form

  // Unipotent root element x_alpha(t); alpha given as canonical root index.
  GroupElement x_alpha(int root_idx, uint32_t t) const;
  GroupElement x_alpha(const RootVec& alpha, uint32_t t) const;
  // Entry pattern of the root's nilpotent: (row, col, sign).
  const std::vector<std::tuple<int, int, int>>& root_pattern(
      int root_idx) const;

  // Coroot torus element h_{alpha_i}(u), u != 0.
  GroupElement torus_element(int simple_idx, uint32_t u) const;
  // All elements of the standard maximal torus H(F_p).
  std::vector<GroupElement> torus_elements() const;

  // w_alpha = x_alpha(1) x_{-alpha}(1)^{-1} x_alpha(1).
  GroupElement weyl_lift(int root_idx) const;
  // Canonical lift of w: weyl_lift factors along the canonical reduced word.
  GroupElement lift(const WeylElement& w) const;

  // Standard generating set: x_{±alpha_i}(t) for simple i and t != 0, plus
  // the coroot torus generators.
  std::vector<GroupElement> standard_generators() const;

 private:
  GroupSpec spec_;
  RootSystem rs_;
  PrimeField field_;
  FpMat form_;  // Sp only
  std::vector<std::vector<std::tuple<int, int, int>>> patterns_;

  void build_patterns();
};

struct GroupEnumOptions {
  uint64_t max_elements = 1'000'000;
  bool use_cache = true;
  std::string cache_dir;
};

// Complete BFS enumeration over the standard unipotent generators, sorted
// canonically (lexicographic row-major entries).
class GroupEnumeration {
 public:
  static GroupEnumeration enumerate(const ChevalleyGroup& g,
                                    const GroupEnumOptions& opts = {});

  size_t size() const { return elems_.size(); }
  const FpMat& at(size_t i) const { return elems_[i]; }
  GroupElement element(const GroupSpec& spec, size_t i) const {
    return GroupElement{spec, elems_[i]};
  }
  long long index_of(const FpMat& m) const;
  bool loaded_from_cache() const { return from_cache_; }

 private:
  std::vector<FpMat> elems_;
  bool from_cache_ = false;
  // sorted order allows binary search; no extra index needed
};

// Verification of the Weyl group isomorphism N(H)/H -> W: filters the full
// enumeration for elements that normalize H and permute the root subgroups
// by conjugation (the points of the torus normalizer; over small fields the
// plain set normalizer of H(F_p) is strictly larger), maps each to the root
// permutation it induces, and checks the quotient.
struct WeylIsoReport {
  bool degenerate_torus = false;  // |H(F_2)| = 1: the set condition on H is
                                  // vacuous and only the root-subgroup
                                  // condition cuts out N(H)
  uint64_t group_order = 0;
  uint64_t torus_order = 0;
  uint64_t normalizer_order = 0;
  uint64_t quotient_order = 0;
  uint64_t weyl_order = 0;
  bool homomorphism = false;
  bool surjective = false;
  bool kernel_is_torus = false;
  bool simple_lifts_match = false;  // w_alpha -> s_alpha for simple alpha

  bool ok() const {
    return homomorphism && surjective && kernel_is_torus &&
           simple_lifts_match && quotient_order == weyl_order;
  }
};

WeylIsoReport weyl_iso_check(const ChevalleyGroup& g,
                             const GroupEnumOptions& opts = {});

}  // namespace chevlab

#endif
