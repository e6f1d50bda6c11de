#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace probgen {

/// Seeded pseudo-random stream with a platform-independent draw sequence.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Standard distributions are implementation-defined, so every
/// derived draw is implemented here:
///   uniform01      top 53 bits of one engine output, scaled by 2^-53
///   uniform_index  Lemire's multiply-and-reject, unbiased
///   bernoulli      uniform01() < p
///   shuffle        Fisher-Yates from the back using uniform_index
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform01();
  /// Uniform in [0, n). `n` must be positive.
  std::size_t uniform_index(std::size_t n);
  bool bernoulli(double p);

  template <class T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = uniform_index(i);
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace probgen
