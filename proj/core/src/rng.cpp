#include "probgen/rng.hpp"

namespace probgen {

namespace {
__extension__ typedef unsigned __int128 uint128;
}  // namespace

double Rng::uniform01() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::size_t Rng::uniform_index(std::size_t n) {
  const auto range = static_cast<std::uint64_t>(n);
  uint128 product = static_cast<uint128>(next()) * range;
  auto low = static_cast<std::uint64_t>(product);
  if (low < range) {
    const std::uint64_t threshold = -range % range;
    while (low < threshold) {
      product = static_cast<uint128>(next()) * range;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::size_t>(product >> 64);
}

bool Rng::bernoulli(double p) {
  return uniform01() < p;
}

}  // namespace probgen
