#ifndef CHEVLAB_MODSYM_HPP
#define CHEVLAB_MODSYM_HPP

#include <array>
#include <vector>

#include "chevlab/error.hpp"

namespace chevlab {

struct Vec2 {
  long long x = 0;
  long long y = 0;
  bool operator==(const Vec2&) const = default;
};

struct Mat2 {
  // columns (a, c) and (b, d)
  long long a = 1, b = 0, c = 0, d = 1;
  long long det() const { return a * d - b * c; }
  Mat2 mul(const Mat2& o) const;
  bool operator==(const Mat2&) const = default;
};

// A modular symbol [v1, v2]: a pair of primitive integer column vectors
// with nonzero determinant. Construction normalizes each column (divide by
// the gcd, first nonzero entry positive) and rejects det = 0.
class ModularSymbol {
 public:
  ModularSymbol(Vec2 v1, Vec2 v2);

  const Vec2& v1() const { return v1_; }
  const Vec2& v2() const { return v2_; }
  long long det() const { return det_; }
  // True iff |det| = 1, i.e. the columns extend to SL_2(Z) up to sign.
  bool is_integral() const { return det_ == 1 || det_ == -1; }

 private:
  Vec2 v1_, v2_;
  long long det_;
};

// Continued-fraction path v1 = u_0, u_1, ..., u_k = v2 of primitive vectors
// with |det(u_i, u_{i+1})| = 1 (floor-based convergents). The |det| of the
// residual pair (u_i, v2) strictly decreases at each step; violations throw.
std::vector<Vec2> reduce_path(const ModularSymbol& s);

// The same path as consecutive unimodular symbols [u_i, u_{i+1}]; they
// telescope back to the input symbol.
std::vector<ModularSymbol> reduce(const ModularSymbol& s);

// For an integral symbol: gamma = g1 w g1^{-1} with w = [[0,1],[-1,0]] and
// g1 in SL_2(Z) the sign-normalized column matrix; gamma * g1 == g1 * w.
Mat2 invert_integral(const ModularSymbol& s);

}  // namespace chevlab

#endif
