#ifndef POSTLAB_EXACTLIN_HPP
#define POSTLAB_EXACTLIN_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "postlab/rng.hpp"

namespace postlab {

/* Arithmetic in Z/p for a prime p < 2^32.  Elements are u64 values in [0, p);
   products are formed with a single widening multiply, so no intermediate
   ever overflows. */
class PrimeField {
 public:
  explicit PrimeField(u64 p);

  u64 modulus() const { return p_; }

  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
  u64 neg(u64 a) const { return a == 0 ? 0 : p_ - a; }
  u64 mul(u64 a, u64 b) const { return (a * b) % p_; }
  u64 pow(u64 a, u64 e) const;
  u64 inv(u64 a) const;
  /* Any signed integer reduced into [0, p). */
  u64 reduce(i64 x) const;
  /* Square root when a is a quadratic residue (Tonelli-Shanks). */
  std::optional<u64> sqrt(u64 a) const;
  bool is_square(u64 a) const;

  u64 sample(Rng& rng) const { return rng.below(p_); }
  u64 sample_nonzero(Rng& rng) const { return 1 + rng.below(p_ - 1); }

  static bool is_prime(u64 n);

 private:
  u64 p_;
};

/* Dense row-major matrix over a prime field.  The field is passed to the
   operations rather than stored. */
struct FMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<u64> a;

  FMatrix() = default;
  FMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

  u64& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  u64 at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

  static FMatrix identity(std::size_t n);
};

FMatrix transpose(const FMatrix& m);

/* Row echelon rank; Gaussian elimination with the first nonzero entry of the
   current column as pivot. */
std::size_t rank(FMatrix m, const PrimeField& f);

inline std::size_t kernel_dim(const FMatrix& m, const PrimeField& f) {
  return m.cols - rank(m, f);
}

/* One solution of a x = rhs, or nullopt when inconsistent. */
std::optional<std::vector<u64>> solve(FMatrix a, std::vector<u64> rhs,
                                      const PrimeField& f);

/* Basis of the right kernel. */
std::vector<std::vector<u64>> kernel_basis(FMatrix m, const PrimeField& f);

std::optional<FMatrix> inverse(FMatrix m, const PrimeField& f);

}  // namespace postlab

#endif
