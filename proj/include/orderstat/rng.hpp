#pragma once

#include <cstdint>

#include "orderstat/special.hpp"

namespace orderstat {

// Philox4x32-10 counter-based generator (Salmon et al.). Every uniform is a
// pure function of (seed, stream_id, index), which gives random access: any
// chunk of a batch can be generated on any thread with identical bits.
namespace detail_rng {

inline void mulhilo(uint32_t a, uint32_t b, uint32_t& hi, uint32_t& lo) {
  uint64_t prod = static_cast<uint64_t>(a) * b;
  hi = static_cast<uint32_t>(prod >> 32);
  lo = static_cast<uint32_t>(prod);
}

struct Block {
  uint32_t v[4];
};

inline Block philox4x32(uint64_t counter, uint64_t stream, uint64_t key) {
  constexpr uint32_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
  constexpr uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;
  uint32_t c0 = static_cast<uint32_t>(counter);
  uint32_t c1 = static_cast<uint32_t>(counter >> 32);
  uint32_t c2 = static_cast<uint32_t>(stream);
  uint32_t c3 = static_cast<uint32_t>(stream >> 32);
  uint32_t k0 = static_cast<uint32_t>(key);
  uint32_t k1 = static_cast<uint32_t>(key >> 32);
  for (int round = 0; round < 10; ++round) {
    uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kM0, c0, hi0, lo0);
    mulhilo(kM1, c2, hi1, lo1);
    uint32_t n0 = hi1 ^ c1 ^ k0;
    uint32_t n1 = lo1;
    uint32_t n2 = hi0 ^ c3 ^ k1;
    uint32_t n3 = lo0;
    c0 = n0;
    c1 = n1;
    c2 = n2;
    c3 = n3;
    k0 += kW0;
    k1 += kW1;
  }
  return Block{{c0, c1, c2, c3}};
}

}  // namespace detail_rng

/// Random-access stream of doubles in the open interval (0,1).
class CounterRng {
 public:
  CounterRng(uint64_t seed, uint64_t stream_id) : seed_(seed), stream_(stream_id) {}

  /// The index-th uniform of the stream; two uniforms per Philox block.
  double uniform(uint64_t index) const {
    detail_rng::Block b = detail_rng::philox4x32(index >> 1, stream_, seed_);
    int slot = static_cast<int>(index & 1u) * 2;
    uint64_t bits = (static_cast<uint64_t>(b.v[slot + 1]) << 32) | b.v[slot];
    // 53 significant bits, offset by half an ulp so 0 and 1 are excluded.
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal(uint64_t index) const { return inverse_normal_cdf(uniform(index)); }

  uint64_t seed() const { return seed_; }
  uint64_t stream() const { return stream_; }

 private:
  uint64_t seed_;
  uint64_t stream_;
};

}  // namespace orderstat
