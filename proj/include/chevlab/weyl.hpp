#ifndef CHEVLAB_WEYL_HPP
#define CHEVLAB_WEYL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "chevlab/rootsys.hpp"

namespace chevlab {

// A Weyl group element as a permutation of the canonical root list of a
// fixed root system. The action is faithful on the root set, commutes with
// negation, and composes as functions: (a*b)(beta) = a(b(beta)).
struct WeylElement {
  char type = 'A';
  uint8_t rank = 0;
  std::vector<uint16_t> perm;  // root index -> image root index

  bool operator==(const WeylElement& o) const {
    return type == o.type && rank == o.rank && perm == o.perm;
  }
};

WeylElement weyl_identity(const RootSystem& rs);
WeylElement weyl_generator(const RootSystem& rs, int i);
WeylElement weyl_multiply(const WeylElement& a, const WeylElement& b);
WeylElement weyl_invert(const WeylElement& a);
bool weyl_is_identity(const WeylElement& a);

// Inversion-count length: #{beta in Phi^+ : w(beta) in Phi^-}.
int weyl_length(const WeylElement& w);

// A minimal word in the generators reproducing w (multiply left to right).
// Ties broken by the smallest generator index with a descent.
std::vector<int> reduced_word(const RootSystem& rs, const WeylElement& w);

struct WeylEnumOptions {
  uint64_t max_elements = 10'000'000;
  // Memory guard on |W| * |Phi| permutation entries. The default admits
  // every type through E_6 and F_4; E_7 and E_8 need an explicit raise.
  uint64_t max_perm_entries = 200'000'000;
  bool use_cache = true;
  std::string cache_dir;  // empty: CHEVLAB_CACHE or the platform default
};

// Complete, duplicate-free enumeration of W in canonical order
// (by length, then lexicographically by permutation).
class WeylEnumeration {
 public:
  static WeylEnumeration enumerate(const RootSystem& rs,
                                   const WeylEnumOptions& opts = {});

  const RootSystem& root_system() const { return rs_; }
  size_t size() const { return perms_.size(); }
  WeylElement element(size_t i) const;
  int length(size_t i) const { return lengths_[i]; }
  // Index of an element in canonical order, -1 if foreign.
  long long index_of(const WeylElement& w) const;
  long long index_of_perm(const std::vector<uint16_t>& perm) const;
  bool loaded_from_cache() const { return from_cache_; }

 private:
  explicit WeylEnumeration(RootSystem rs) : rs_(std::move(rs)) {}

  RootSystem rs_;
  std::vector<std::vector<uint16_t>> perms_;
  std::vector<uint16_t> lengths_;
  std::unordered_map<std::string, long long> index_;
  bool from_cache_ = false;

  void build_index();
};

// Coefficients c_k = #{w : l(w) = k}; degree |Phi^+|, palindromic,
// sums to |W|.
std::vector<long long> poincare_polynomial(const WeylEnumeration& en);

// Minimal-length coset representatives of W / W_J for a proper subset J of
// the generator index set.
struct CosetTable {
  std::vector<int> subset;            // J, sorted
  std::vector<long long> reps;        // enumeration indices, canonical order
  std::vector<int32_t> coset_of_elem; // enumeration index -> coset id
  size_t size() const { return reps.size(); }
};

CosetTable parabolic_cosets(const WeylEnumeration& en,
                            const std::vector<int>& J);

}  // namespace chevlab

#endif
