#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cluster_reduce/laurent.hpp"
#include "cluster_reduce/matrix.hpp"

namespace cluster_reduce {

/// Quiver without loops or 2-cycles, stored as its skew exchange matrix.
class Quiver {
 public:
  explicit Quiver(IntMatrix b);

  const IntMatrix& matrix() const noexcept { return b_; }
  std::size_t size() const noexcept { return b_.rows(); }

 private:
  IntMatrix b_;
};

/// Exchange matrix plus cluster variables written in the initial cluster.
struct Seed {
  IntMatrix matrix;
  BirationalMap cluster;

  static Seed initial(const IntMatrix& b);
};

/// mu_m o ... o mu_1 (B) == sigma^-m B sigma^m for the cyclic shift sigma.
struct PeriodicityCertificate {
  std::size_t period = 0;
  std::vector<std::size_t> mutation_sequence;  // 1-based node labels
};

/// Matrix mutation at node k (1-based).
IntMatrix mutate_matrix(const IntMatrix& b, std::size_t k);

/// Seed mutation at node k (1-based): new x_k from the exchange relation.
Seed mutate_seed(const Seed& s, std::size_t k);

/// B relabelled by the cyclic shift: result(i, j) == b((i+m) mod N, (j+m) mod N).
IntMatrix shift_conjugate(const IntMatrix& b, std::size_t m);

std::optional<PeriodicityCertificate> detect_period(const IntMatrix& b, std::size_t m_max = 8);

/// Cluster map sigma^m o mu_m o ... o mu_1; throws InvalidCertificate.
BirationalMap cluster_map(const IntMatrix& b, const PeriodicityCertificate& cert);

}  // namespace cluster_reduce
