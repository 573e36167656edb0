#include "postlab/exactlin.hpp"

#include <stdexcept>
#include <string>

#include "postlab/errors.hpp"

namespace postlab {

namespace {

u64 mulmod64(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod64(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool PrimeField::is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  /* Deterministic witness set for all n < 2^64. */
  for (u64 w : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                29ULL, 31ULL, 37ULL}) {
    u64 x = powmod64(w, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(u64 p) : p_(p) {
  if (p < 3 || p >= (1ULL << 32))
    throw std::invalid_argument("PrimeField: modulus out of range: " +
                                std::to_string(p));
  if (!is_prime(p))
    throw std::invalid_argument("PrimeField: not prime: " + std::to_string(p));
}

u64 PrimeField::pow(u64 a, u64 e) const {
  u64 r = 1;
  a %= p_;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

u64 PrimeField::inv(u64 a) const {
  if (a == 0) throw std::domain_error("PrimeField::inv: zero");
  return pow(a, p_ - 2);
}

u64 PrimeField::reduce(i64 x) const {
  i64 m = static_cast<i64>(p_);
  i64 r = x % m;
  if (r < 0) r += m;
  return static_cast<u64>(r);
}

bool PrimeField::is_square(u64 a) const {
  if (a == 0) return true;
  return pow(a, (p_ - 1) / 2) == 1;
}

std::optional<u64> PrimeField::sqrt(u64 a) const {
  if (a == 0) return 0;
  if (!is_square(a)) return std::nullopt;
  if (p_ % 4 == 3) return pow(a, (p_ + 1) / 4);
  /* Tonelli-Shanks. */
  u64 q = p_ - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  u64 z = 2;
  while (is_square(z)) ++z;
  u64 m = s;
  u64 c = pow(z, q);
  u64 t = pow(a, q);
  u64 r = pow(a, (q + 1) / 2);
  while (t != 1) {
    u64 t2 = t;
    u64 i = 0;
    while (t2 != 1) {
      t2 = mul(t2, t2);
      ++i;
      if (i == m) return std::nullopt;
    }
    u64 b = c;
    for (u64 j = 0; j + i + 1 < m; ++j) b = mul(b, b);
    m = i;
    c = mul(b, b);
    t = mul(t, c);
    r = mul(r, b);
  }
  return r;
}

FMatrix FMatrix::identity(std::size_t n) {
  FMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FMatrix transpose(const FMatrix& m) {
  FMatrix t(m.cols, m.rows);
  for (std::size_t r = 0; r < m.rows; ++r)
    for (std::size_t c = 0; c < m.cols; ++c) t.at(c, r) = m.at(r, c);
  return t;
}

namespace {

/* In-place reduction to row echelon form.  Returns the pivot columns; the
   first `rank` rows of m end up as the echelon rows with unit pivots. */
std::vector<std::size_t> echelonize(FMatrix& m, const PrimeField& f) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t pr = r;
    while (pr < m.rows && m.at(pr, c) == 0) ++pr;
    if (pr == m.rows) continue;
    if (pr != r)
      for (std::size_t j = c; j < m.cols; ++j)
        std::swap(m.at(pr, j), m.at(r, j));
    u64 pinv = f.inv(m.at(r, c));
    for (std::size_t j = c; j < m.cols; ++j)
      m.at(r, j) = f.mul(m.at(r, j), pinv);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r) continue;
      u64 v = m.at(i, c);
      if (v == 0) continue;
      for (std::size_t j = c; j < m.cols; ++j)
        m.at(i, j) = f.sub(m.at(i, j), f.mul(v, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(FMatrix m, const PrimeField& f) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t pr = r;
    while (pr < m.rows && m.at(pr, c) == 0) ++pr;
    if (pr == m.rows) continue;
    if (pr != r)
      for (std::size_t j = c; j < m.cols; ++j)
        std::swap(m.at(pr, j), m.at(r, j));
    u64 pinv = f.inv(m.at(r, c));
    for (std::size_t i = r + 1; i < m.rows; ++i) {
      u64 v = m.at(i, c);
      if (v == 0) continue;
      u64 scale = f.mul(v, pinv);
      for (std::size_t j = c; j < m.cols; ++j)
        m.at(i, j) = f.sub(m.at(i, j), f.mul(scale, m.at(r, j)));
    }
    ++r;
  }
  return r;
}

std::optional<std::vector<u64>> solve(FMatrix a, std::vector<u64> rhs,
                                      const PrimeField& f) {
  if (rhs.size() != a.rows)
    throw std::invalid_argument("solve: rhs size mismatch");
  FMatrix aug(a.rows, a.cols + 1);
  for (std::size_t r = 0; r < a.rows; ++r) {
    for (std::size_t c = 0; c < a.cols; ++c) aug.at(r, c) = a.at(r, c);
    aug.at(r, a.cols) = rhs[r];
  }
  auto pivots = echelonize(aug, f);
  for (std::size_t i = pivots.size(); i > 0; --i)
    if (pivots[i - 1] == a.cols) return std::nullopt;
  std::vector<u64> x(a.cols, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i)
    x[pivots[i]] = aug.at(i, a.cols);
  return x;
}

std::vector<std::vector<u64>> kernel_basis(FMatrix m, const PrimeField& f) {
  auto pivots = echelonize(m, f);
  std::vector<bool> is_pivot(m.cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<u64>> basis;
  for (std::size_t free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<u64> v(m.cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = f.neg(m.at(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<FMatrix> inverse(FMatrix m, const PrimeField& f) {
  if (m.rows != m.cols) return std::nullopt;
  std::size_t n = m.rows;
  FMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, n + r) = 1;
  }
  auto pivots = echelonize(aug, f);
  if (pivots.size() != n || pivots[n - 1] != n - 1) return std::nullopt;
  FMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv.at(r, c) = aug.at(r, n + c);
  return inv;
}

}  // namespace postlab
