#ifndef POSTLAB_RNG_HPP
#define POSTLAB_RNG_HPP

#include <cstdint>
#include <initializer_list>

namespace postlab {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

/* Small deterministic generator (splitmix64 step).  Outputs are identical on
   every platform, which the bit-for-bit certificate reproducibility relies on;
   do not swap in std:: distributions. */
class Rng {
 public:
  explicit Rng(u64 seed) : state_(seed) {}

  u64 next();
  /* Uniform in [0, bound), bound > 0.  Masked rejection, bias-free. */
  u64 below(u64 bound);

  /* Collapses (seed, cell key...) into a fresh stream seed. */
  static u64 mix(std::initializer_list<u64> parts);

 private:
  u64 state_;
};

}  // namespace postlab

#endif
