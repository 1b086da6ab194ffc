#ifndef CHEVLAB_FP_HPP
#define CHEVLAB_FP_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "chevlab/error.hpp"

namespace chevlab {

bool is_prime(uint32_t n);

// Arithmetic in F_p, residues in [0, p).
struct PrimeField {
  uint32_t p;

  explicit PrimeField(uint32_t prime);
  uint32_t add(uint32_t a, uint32_t b) const { return (a + b) % p; }
  uint32_t sub(uint32_t a, uint32_t b) const { return (a + p - b) % p; }
  uint32_t mul(uint32_t a, uint32_t b) const {
    return static_cast<uint32_t>(uint64_t(a) * b % p);
  }
  uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p - a; }
  uint32_t inv(uint32_t a) const;  // throws InvalidInput on 0
  uint32_t pow(uint32_t a, uint64_t e) const;
  uint32_t from_int(long long v) const {
    long long r = v % static_cast<long long>(p);
    return static_cast<uint32_t>(r < 0 ? r + p : r);
  }
};

// Square matrix over F_p, row-major.
class FpMat {
 public:
  FpMat() = default;
  FpMat(int n, uint32_t p);
  static FpMat identity(int n, uint32_t p);

  int n() const { return n_; }
  uint32_t p() const { return p_; }
  uint32_t& at(int r, int c) { return a_[static_cast<size_t>(r) * n_ + c]; }
  uint32_t at(int r, int c) const {
    return a_[static_cast<size_t>(r) * n_ + c];
  }
  const std::vector<uint32_t>& data() const { return a_; }

  FpMat mul(const FpMat& o) const;
  FpMat transpose() const;
  uint32_t det() const;
  FpMat inverse() const;  // throws InvalidInput if singular
  bool is_identity() const;

  bool operator==(const FpMat& o) const {
    return n_ == o.n_ && p_ == o.p_ && a_ == o.a_;
  }
  bool operator<(const FpMat& o) const { return a_ < o.a_; }  // same shape
  size_t hash() const;

 private:
  int n_ = 0;
  uint32_t p_ = 0;
  std::vector<uint32_t> a_;
};

// Reduced row echelon form of a list of row vectors over F_p; zero rows are
// dropped. The result is the canonical basis of the row space.
std::vector<std::vector<uint32_t>> rref_rows(
    std::vector<std::vector<uint32_t>> rows, uint32_t p);

}  // namespace chevlab

#endif
