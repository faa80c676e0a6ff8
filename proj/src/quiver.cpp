#include "cluster_reduce/quiver.hpp"

namespace cluster_reduce {

namespace {

void require_skew(const IntMatrix& b) {
  if (!b.is_skew_symmetric()) throw NotSkewSymmetric("exchange matrix must be square and skew-symmetric");
}

void require_node(const IntMatrix& b, std::size_t k) {
  if (k < 1 || k > b.rows())
    throw IndexOutOfRange("mutation node " + std::to_string(k) + " outside 1.." + std::to_string(b.rows()));
}

}  // namespace

Quiver::Quiver(IntMatrix b) : b_(std::move(b)) { require_skew(b_); }

Seed Seed::initial(const IntMatrix& b) {
  require_skew(b);
  return {b, BirationalMap::identity(b.rows())};
}

IntMatrix mutate_matrix(const IntMatrix& b, std::size_t k) {
  require_skew(b);
  require_node(b, k);
  const std::size_t n = b.rows(), kk = k - 1;
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == kk || j == kk) {
        out(i, j) = -b(i, j);
        continue;
      }
      const Integer& bik = b(i, kk);
      const Integer& bkj = b(kk, j);
      out(i, j) = b(i, j) + (abs(bik) * bkj + bik * abs(bkj)) / 2;
    }
  return out;
}

Seed mutate_seed(const Seed& s, std::size_t k) {
  require_node(s.matrix, k);
  const std::size_t n = s.matrix.rows(), kk = k - 1;
  if (s.cluster.dim_out() != n) throw DimensionMismatch("seed cluster size differs from matrix size");
  const std::size_t vars = s.cluster.dim_in();
  RationalFunction plus = RationalFunction::constant(vars, 1), minus = plus;
  for (std::size_t j = 0; j < n; ++j) {
    const Integer& e = s.matrix(kk, j);
    if (e > 0) plus = plus * s.cluster[j].pow(e.get_si());
    if (e < 0) minus = minus * s.cluster[j].pow(-e.get_si());
  }
  std::vector<RationalFunction> comps = s.cluster.components();
  comps[kk] = (plus + minus) / s.cluster[kk];
  return {mutate_matrix(s.matrix, k), BirationalMap(vars, std::move(comps))};
}

IntMatrix shift_conjugate(const IntMatrix& b, std::size_t m) {
  const std::size_t n = b.rows();
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = b((i + m) % n, (j + m) % n);
  return out;
}

std::optional<PeriodicityCertificate> detect_period(const IntMatrix& b, std::size_t m_max) {
  require_skew(b);
  const std::size_t n = b.rows();
  if (n == 0) return std::nullopt;
  IntMatrix current = b;
  for (std::size_t m = 1; m <= m_max && m <= n; ++m) {
    current = mutate_matrix(current, m);
    if (shift_conjugate(current, m) == b) {
      PeriodicityCertificate cert{m, {}};
      for (std::size_t k = 1; k <= m; ++k) cert.mutation_sequence.push_back(k);
      return cert;
    }
  }
  return std::nullopt;
}

BirationalMap cluster_map(const IntMatrix& b, const PeriodicityCertificate& cert) {
  require_skew(b);
  const std::size_t n = b.rows();
  if (cert.period == 0 || cert.period > n || cert.mutation_sequence.size() != cert.period)
    throw InvalidCertificate("certificate period and mutation sequence are inconsistent");
  Seed seed = Seed::initial(b);
  for (std::size_t k : cert.mutation_sequence) seed = mutate_seed(seed, k);
  if (!(shift_conjugate(seed.matrix, cert.period) == b))
    throw InvalidCertificate("mutated matrix is not the shifted original for period " + std::to_string(cert.period));
  std::vector<RationalFunction> comps;
  comps.reserve(n);
  for (std::size_t i = 0; i < n; ++i) comps.push_back(seed.cluster[(i + cert.period) % n]);
  return {n, std::move(comps)};
}

}  // namespace cluster_reduce
