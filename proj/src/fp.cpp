#include "chevlab/fp.hpp"

#include <algorithm>

namespace chevlab {

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(uint32_t prime) : p(prime) {
  if (!is_prime(prime))
    throw InvalidInput(std::to_string(prime) + " is not prime");
}

uint32_t PrimeField::pow(uint32_t a, uint64_t e) const {
  uint32_t r = 1 % p;
  uint32_t base = a % p;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

uint32_t PrimeField::inv(uint32_t a) const {
  a %= p;
  if (a == 0) throw InvalidInput("division by zero in F_" + std::to_string(p));
  return pow(a, p - 2);
}

FpMat::FpMat(int n, uint32_t p) : n_(n), p_(p) {
  a_.assign(static_cast<size_t>(n) * n, 0);
}

FpMat FpMat::identity(int n, uint32_t p) {
  FpMat m(n, p);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FpMat FpMat::mul(const FpMat& o) const {
  if (n_ != o.n_ || p_ != o.p_)
    throw ContextMismatch("matrix product across different groups/fields");
  FpMat r(n_, p_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      uint64_t v = at(i, k);
      if (!v) continue;
      for (int j = 0; j < n_; ++j)
        r.at(i, j) =
            static_cast<uint32_t>((r.at(i, j) + v * o.at(k, j)) % p_);
    }
  return r;
}

FpMat FpMat::transpose() const {
  FpMat r(n_, p_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r.at(j, i) = at(i, j);
  return r;
}

uint32_t FpMat::det() const {
  PrimeField F(p_);
  FpMat m = *this;
  uint32_t det = 1;
  for (int c = 0; c < n_; ++c) {
    int pr = -1;
    for (int r = c; r < n_; ++r)
      if (m.at(r, c) != 0) {
        pr = r;
        break;
      }
    if (pr < 0) return 0;
    if (pr != c) {
      for (int j = 0; j < n_; ++j) std::swap(m.at(pr, j), m.at(c, j));
      det = F.neg(det);
    }
    det = F.mul(det, m.at(c, c));
    uint32_t inv = F.inv(m.at(c, c));
    for (int r = c + 1; r < n_; ++r) {
      uint32_t f = F.mul(m.at(r, c), inv);
      if (!f) continue;
      for (int j = c; j < n_; ++j)
        m.at(r, j) = F.sub(m.at(r, j), F.mul(f, m.at(c, j)));
    }
  }
  return det;
}

FpMat FpMat::inverse() const {
  PrimeField F(p_);
  FpMat m = *this;
  FpMat inv = identity(n_, p_);
  for (int c = 0; c < n_; ++c) {
    int pr = -1;
    for (int r = c; r < n_; ++r)
      if (m.at(r, c) != 0) {
        pr = r;
        break;
      }
    if (pr < 0) throw InvalidInput("singular matrix has no inverse");
    if (pr != c)
      for (int j = 0; j < n_; ++j) {
        std::swap(m.at(pr, j), m.at(c, j));
        std::swap(inv.at(pr, j), inv.at(c, j));
      }
    uint32_t s = F.inv(m.at(c, c));
    for (int j = 0; j < n_; ++j) {
      m.at(c, j) = F.mul(m.at(c, j), s);
      inv.at(c, j) = F.mul(inv.at(c, j), s);
    }
    for (int r = 0; r < n_; ++r) {
      if (r == c) continue;
      uint32_t f = m.at(r, c);
      if (!f) continue;
      for (int j = 0; j < n_; ++j) {
        m.at(r, j) = F.sub(m.at(r, j), F.mul(f, m.at(c, j)));
        inv.at(r, j) = F.sub(inv.at(r, j), F.mul(f, inv.at(c, j)));
      }
    }
  }
  return inv;
}

bool FpMat::is_identity() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (at(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

size_t FpMat::hash() const {
  size_t h = 1469598103934665603ull;
  for (uint32_t v : a_) {
    h ^= v + 0x9e3779b97f4a7c15ull;
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<std::vector<uint32_t>> rref_rows(
    std::vector<std::vector<uint32_t>> rows, uint32_t p) {
  PrimeField F(p);
  if (rows.empty()) return rows;
  const size_t ncols = rows[0].size();
  size_t rank = 0;
  for (size_t c = 0; c < ncols && rank < rows.size(); ++c) {
    size_t pr = rank;
    while (pr < rows.size() && rows[pr][c] == 0) ++pr;
    if (pr == rows.size()) continue;
    std::swap(rows[rank], rows[pr]);
    uint32_t inv = F.inv(rows[rank][c]);
    for (auto& v : rows[rank]) v = F.mul(v, inv);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      uint32_t f = rows[r][c];
      for (size_t j = 0; j < ncols; ++j)
        rows[r][j] = F.sub(rows[r][j], F.mul(f, rows[rank][j]));
    }
    ++rank;
  }
  rows.resize(rank);
  return rows;
}

}  // namespace chevlab
