#pragma once

#include <cstdint>
#include <random>

namespace cevm {

/// SplitMix64 finalizer. Used to derive independent stream seeds from a
/// (master seed, counter) pair.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// One independent random stream. Stream k of master seed s is seeded from
/// splitmix64(splitmix64(s) + k), so streams can be generated in any order
/// or in parallel and still reproduce the same draws.
class Stream {
 public:
  Stream(std::uint64_t master_seed, std::uint64_t stream_index)
      : engine_(splitmix64(splitmix64(master_seed) + stream_index)) {}

  std::uint64_t bits() { return engine_(); }

  /// Uniform on the open interval (0, 1): 53 random bits, offset by half an ulp.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform on {0, ..., k-1} for small k.
  int index(int k) {
    return static_cast<int>((engine_() >> 32) * static_cast<std::uint64_t>(k) >> 32);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cevm
