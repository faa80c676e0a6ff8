#include "cluster_reduce/sampling.hpp"

#include <random>

namespace cluster_reduce {

std::vector<Rational> random_positive_point(std::uint64_t seed, std::uint64_t index, std::size_t dim) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<long> d(1, 1000);
  std::vector<Rational> p;
  p.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const long a = d(rng);
    const long b = d(rng);
    Rational q(a, b);
    q.canonicalize();
    p.push_back(std::move(q));
  }
  return p;
}

}  // namespace cluster_reduce
