#pragma once

#include <cstdint>

namespace qmdc {

// SplitMix64.  Fixed algorithm rather than std::mt19937 so streams are
// reproducible across standard libraries and platforms, which matters for
// seed-stamped search records.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound) via rejection, so results do not depend on how a
  // biased reduction would round.  bound must be nonzero.
  uint64_t below(uint64_t bound) {
    uint64_t threshold = -bound % bound;
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  bool coin() { return next() >> 63; }

 private:
  uint64_t state_;
};

// Derives an independent stream seed from a base seed and a stream index.
// Used to give each search iteration its own generator, so results do not
// depend on how iterations are distributed over worker threads.
inline uint64_t derive_seed(uint64_t base, uint64_t stream) {
  SplitMix64 g(base ^ (stream * 0x9e3779b97f4a7c15ull + 0x123456789abcdefull));
  g.next();
  return g.next();
}

}  // namespace qmdc
