// Seedable, splittable counter-based generator (SplitMix64 core).  Each
// source node in a multi-source run draws from an independent substream so
// its local randomness is reproducible in isolation.  Uniform residues come
// from rejection sampling; not cryptographic, and nothing here influences the
// security verdicts (audits enumerate, they never sample).
#pragma once

#include <cstdint>

namespace keycast {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform residue in [0, q) by rejection.
  std::uint32_t uniform(std::uint32_t q) {
    std::uint64_t limit = ~0ULL - (~0ULL % q + 1) % q;
    for (;;) {
      std::uint64_t v = next_u64();
      if (v <= limit) return static_cast<std::uint32_t>(v % q);
    }
  }

  // Independent substream; deterministic in (current seed, index).
  Rng split(std::uint64_t index) const {
    Rng mixer(state_ ^ (0x6a09e667f3bcc909ULL + index * 0x9e3779b97f4a7c15ULL));
    return Rng(mixer.next_u64());
  }

 private:
  std::uint64_t state_;
};

}  // namespace keycast
