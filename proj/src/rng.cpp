#include "l1adm/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace l1adm {

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::normal()
{
  if (spare_) {
    double const v = *spare_;
    spare_.reset();
    return v;
  }
  double const u1 = 1.0 - uniform();  // (0, 1]
  double const u2 = uniform();
  double const radius = std::sqrt(-2.0 * std::log(u1));
  double const angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

Index Rng::uniform_index(Index n)
{
  if (n <= 0) { throw InvalidParameter("uniform_index: n must be positive"); }
  auto const range = static_cast<std::uint64_t>(n);
  std::uint64_t const limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t draw = next_u64();
  while (draw >= limit) { draw = next_u64(); }
  return static_cast<Index>(draw % range);
}

std::vector<Index> Rng::sample_without_replacement(Index n, Index k)
{
  if (k < 0 || k > n) { throw InvalidParameter("sample_without_replacement: need 0 <= k <= n"); }
  std::vector<Index> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), Index{0});
  for (Index i = 0; i < k; ++i) {
    Index const j = i + uniform_index(n - i);
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(k));
  return pool;
}

RVector Rng::normal_vector(Index n)
{
  RVector v(n);
  for (Index i = 0; i < n; ++i) { v[i] = normal(); }
  return v;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream)
{
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace l1adm
