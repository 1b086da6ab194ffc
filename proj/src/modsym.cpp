#include "chevlab/modsym.hpp"

#include <cstdlib>
#include <numeric>

namespace chevlab {

namespace {

long long det2(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

// Divide by the gcd and make the first nonzero entry positive.
Vec2 normalize_primitive(Vec2 v) {
  if (v.x == 0 && v.y == 0)
    throw InvalidInput("modular symbol column must be nonzero");
  long long g = std::gcd(std::llabs(v.x), std::llabs(v.y));
  v.x /= g;
  v.y /= g;
  long long lead = (v.x != 0) ? v.x : v.y;
  if (lead < 0) {
    v.x = -v.x;
    v.y = -v.y;
  }
  return v;
}

}  // namespace

Mat2 Mat2::mul(const Mat2& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c,
          c * o.b + d * o.d};
}

ModularSymbol::ModularSymbol(Vec2 v1, Vec2 v2)
    : v1_(normalize_primitive(v1)), v2_(normalize_primitive(v2)) {
  det_ = det2(v1_, v2_);
  if (det_ == 0)
    throw InvalidInput("modular symbol needs linearly independent columns "
                       "(det = 0)");
}

std::vector<Vec2> reduce_path(const ModularSymbol& s) {
  const Vec2 v1 = s.v1(), v2 = s.v2();
  if (s.is_integral()) return {v1, v2};

  // Complete v1 to a unimodular basis (v1, u): v1.x * u.y - v1.y * u.x = 1.
  long long ux = 0, uy = 0;
  {
    long long a = v1.x, b = v1.y;
    long long old_r = a, r = b, old_s = 1, ss = 0, old_t = 0, tt = 1;
    while (r != 0) {
      long long q = old_r / r;
      long long tmp;
      tmp = old_r - q * r; old_r = r; r = tmp;
      tmp = old_s - q * ss; old_s = ss; ss = tmp;
      tmp = old_t - q * tt; old_t = tt; tt = tmp;
    }
    // old_s * a + old_t * b == old_r == ±1 (columns are primitive)
    long long sign = old_r > 0 ? 1 : -1;
    // want a * uy - b * ux = 1
    uy = sign * old_s;
    ux = -sign * old_t;
  }
  const Vec2 u{ux, uy};

  // v2 = alpha * v1 + gamma * u with gamma = det(v1, v2). Flip both signs
  // if needed so the continued fraction runs with gamma > 0; the path then
  // ends at ±v2 and primitivity normalization restores v2.
  long long gamma = s.det();
  long long alpha = det2(v2, u);  // det(v2,u) = alpha*det(v1,u) = alpha
  if (gamma < 0) {
    alpha = -alpha;
    gamma = -gamma;
  }

  // Floor-based continued-fraction convergents of alpha/gamma. Consecutive
  // convergent vectors have determinant ±1 by the standard recurrence.
  std::vector<Vec2> path{v1};
  long long h_prev2 = 0, h_prev1 = 1;  // h_{-2}, h_{-1}
  long long k_prev2 = 1, k_prev1 = 0;
  long long r0 = alpha, r1 = gamma;
  long long residual = std::llabs(s.det());
  while (r1 != 0) {
    long long q = r0 / r1;
    if ((r0 % r1 != 0) && ((r0 < 0) != (r1 < 0))) --q;  // floor division
    long long rem = r0 - q * r1;
    long long h = q * h_prev1 + h_prev2;
    long long k = q * k_prev1 + k_prev2;
    Vec2 node = normalize_primitive({h * v1.x + k * u.x, h * v1.y + k * u.y});
    // |det| of the residual pair must strictly shrink at every step.
    long long res = std::llabs(det2(node, v2));
    if (res >= residual)
      throw Error("continued-fraction step failed to reduce |det|");
    residual = res;
    path.push_back(node);
    h_prev2 = h_prev1; h_prev1 = h;
    k_prev2 = k_prev1; k_prev1 = k;
    r0 = r1;
    r1 = rem;
  }
  // Convergents end at alpha/gamma in lowest terms, i.e. at ±v2.
  if (!(path.back() == v2))
    throw Error("continued-fraction path missed its endpoint");
  return path;
}

std::vector<ModularSymbol> reduce(const ModularSymbol& s) {
  std::vector<Vec2> path = reduce_path(s);
  std::vector<ModularSymbol> out;
  if (path.size() == 2) {
    out.emplace_back(path[0], path[1]);
    return out;
  }
  for (size_t i = 0; i + 1 < path.size(); ++i)
    out.emplace_back(path[i], path[i + 1]);
  return out;
}

Mat2 invert_integral(const ModularSymbol& s) {
  if (!s.is_integral())
    throw InvalidInput("inversion needs an integral symbol (|det| = 1)");
  // gamma_1: columns (v1, ±v2), sign chosen so det = +1.
  Vec2 c2 = s.v2();
  if (s.det() < 0) {
    c2.x = -c2.x;
    c2.y = -c2.y;
  }
  Mat2 g1{s.v1().x, c2.x, s.v1().y, c2.y};
  Mat2 w{0, 1, -1, 0};
  Mat2 g1_inv{g1.d, -g1.b, -g1.c, g1.a};  // adjugate; det(g1) = 1
  return g1.mul(w).mul(g1_inv);
}

}  // namespace chevlab
