#ifndef CHEVLAB_ROOTSYS_HPP
#define CHEVLAB_ROOTSYS_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "chevlab/error.hpp"

namespace chevlab {

// Irreducible crystallographic types. Legal ranks: A_n (n>=1), B_n (n>=2),
// C_n (n>=2), D_n (n>=3), E_6/E_7/E_8, F_4, G_2.
enum class TypeLabel : char {
  A = 'A',
  B = 'B',
  C = 'C',
  D = 'D',
  E = 'E',
  F = 'F',
  G = 'G'
};

TypeLabel type_label_from_char(char c);

// A root written in the simple-root basis; always integral.
using RootVec = std::vector<int>;

struct CartanData {
  // cartan[i][j] = <alpha_i, alpha_j^vee>
  std::vector<std::vector<int>> cartan;
  // coxeter[s][t] = order of st in W; diagonal entries are 1
  std::vector<std::vector<int>> coxeter;
};

// An irreducible root system with the standard integer simple-root
// realization. Roots are listed in a fixed canonical order: positive roots
// first, sorted by (height, lexicographic coefficient vector); the negative
// of the positive root at index k sits at index k + num_positive().
class RootSystem {
 public:
  static RootSystem build(TypeLabel type, int rank);
  static RootSystem build(char type, int rank) {
    return build(type_label_from_char(type), rank);
  }

  TypeLabel type() const { return type_; }
  int rank() const { return rank_; }
  std::string name() const;

  const std::vector<RootVec>& roots() const { return roots_; }
  int num_roots() const { return static_cast<int>(roots_.size()); }
  int num_positive() const { return num_positive_; }
  bool is_positive(int root_idx) const { return root_idx < num_positive_; }
  int negate(int root_idx) const {
    return root_idx < num_positive_ ? root_idx + num_positive_
                                    : root_idx - num_positive_;
  }
  // Index of a root in the canonical order, -1 if absent.
  int root_index(const RootVec& v) const;
  // Index of the simple root alpha_i.
  int simple_root_index(int i) const;
  int height(int root_idx) const;

  // Image of a root under the simple reflection s_i, as an index.
  // Throws InvalidInput if the input is not a root of this system.
  int reflect(int i, int root_idx) const;
  RootVec reflect_vec(int i, const RootVec& beta) const;

  const CartanData& cartan_data() const { return cartan_; }

  // |W| from the classical order formulas (used to guard enumerations).
  uint64_t weyl_order() const;

  // Virtual cohomological dimension of the corresponding Chevalley group of
  // integer points: r - rk(Phi) with r = |Phi^+| + rk(Phi) for the split
  // real form, i.e. |Phi^+|.
  long long vcd_over_Z() const { return num_positive_; }

 private:
  RootSystem() = default;

  TypeLabel type_ = TypeLabel::A;
  int rank_ = 0;
  int num_positive_ = 0;
  std::vector<RootVec> roots_;
  CartanData cartan_;
  std::unordered_map<std::string, int> index_;  // packed coeff vector -> idx
};

// vcd over a named ring of integers. Only "Z" is supported; anything else
// is rejected so callers cannot silently get the split-form count for a
// ring where it does not apply.
long long vcd_over_ring(const RootSystem& rs, const std::string& ring);

}  // namespace chevlab

#endif
