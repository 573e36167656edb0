#include "postlab/rng.hpp"

namespace postlab {

static u64 splitmix_step(u64& s) {
  s += 0x9e3779b97f4a7c15ULL;
  u64 z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

u64 Rng::next() { return splitmix_step(state_); }

u64 Rng::below(u64 bound) {
  if (bound <= 1) {
    next();
    return 0;
  }
  u64 mask = ~0ULL;
  u64 range = bound - 1;
  int shift = 0;
  while ((mask >> 1) >= range && shift < 63) {
    mask >>= 1;
    ++shift;
  }
  for (;;) {
    u64 v = next() & mask;
    if (v < bound) return v;
  }
}

u64 Rng::mix(std::initializer_list<u64> parts) {
  u64 s = 0x243f6a8885a308d3ULL;
  for (u64 p : parts) {
    s ^= p + 0x9e3779b97f4a7c15ULL + (s << 6) + (s >> 2);
    splitmix_step(s);
    s ^= splitmix_step(s);
  }
  return s;
}

}  // namespace postlab
