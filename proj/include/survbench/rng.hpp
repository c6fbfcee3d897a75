#pragma once

#include <cstdint>
#include <string_view>

namespace survbench {

// Counter-based generator (Philox4x32-10). A (seed, stream_id) pair fully
// determines the draw sequence, bit-identically across runs and platforms;
// distinct stream_ids index statistically independent streams of the same
// seed. Streams are single-owner: parallel work derives children, never
// shares one instance.
class SeededRng {
 public:
  SeededRng(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed), stream_(stream_id) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }

  // Same seed, derived stream. child(a) and child(b) are independent for
  // a != b; chaining derives sub-streams.
  SeededRng child(std::uint64_t tag) const;

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  // [0, 1), 53-bit resolution
  double uniform();
  // (0, 1): the zero draw is nudged to 2^-53, still one draw consumed
  double uniform_open();
  double uniform_range(double lo, double hi);
  // standard normal via Box-Muller; consumes two uniforms per pair, the
  // spare is cached on this instance
  double normal();
  bool bernoulli(double p);
  // integer in [0, n), one uniform consumed
  std::size_t uniform_index(std::size_t n);

  // Raw Philox block for known-answer tests.
  static void philox4x32_10(const std::uint32_t ctr[4], const std::uint32_t key[2],
                            std::uint32_t out[4]);

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;     // counter of the next block to generate
  std::uint32_t buf_[4] = {};
  int buf_pos_ = 4;             // 4 = empty
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

// 64-bit finalizer (splitmix64) used to spread stream tags.
std::uint64_t mix64(std::uint64_t x);
// FNV-1a over a label; stable way to name top-level streams.
std::uint64_t stream_tag(std::string_view name);

}  // namespace survbench
