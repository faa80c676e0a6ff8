#include <doctest.h>

#include <random>

#include "cluster_reduce/quiver.hpp"

using namespace cluster_reduce;

namespace {

IntMatrix b_rs(long r, long s) {
  return {{0, r, -1, -1, s}, {-r, 0, r + s, r - 1, -1}, {1, -r - s, 0, r + s, -1}, {1, 1 - r, -r - s, 0, r}, {-s, 1, 1, -r, 0}};
}

IntMatrix seven_node() {
  return {{0, 1, 0, -1, -1, 0, 1},  {-1, 0, 1, 1, 0, -1, 0}, {0, -1, 0, 1, 1, 0, -1}, {1, -1, -1, 0, 1, 1, -1},
          {1, 0, -1, -1, 0, 1, 0}, {0, 1, 0, -1, -1, 0, 1}, {-1, 0, 1, 1, 0, -1, 0}};
}

IntMatrix random_skew(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<long> d(-3, 3);
  IntMatrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      b(i, j) = d(rng);
      b(j, i) = -b(i, j);
    }
  return b;
}

BirationalMap parse_map(std::vector<std::string> comps, std::size_t n) { return BirationalMap::parse(comps, n); }

}  // namespace

TEST_CASE("matrix mutation") {
  CHECK(mutate_matrix(IntMatrix(4, 4), 2).is_zero());
  const auto b = b_rs(1, 1);
  CHECK(mutate_matrix(mutate_matrix(b, 3), 3) == b);
  CHECK(shift_conjugate(mutate_matrix(b, 1), 1) == b);
  CHECK_THROWS_AS(mutate_matrix(b, 0), IndexOutOfRange);
  CHECK_THROWS_AS(mutate_matrix(b, 6), IndexOutOfRange);
  CHECK_THROWS_AS(mutate_matrix(IntMatrix{{0, 1}, {1, 0}}, 1), NotSkewSymmetric);

  std::mt19937_64 rng(21);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + t % 5;
    const auto q = random_skew(rng, n);
    const std::size_t k = 1 + t % n;
    const auto mk = mutate_matrix(q, k);
    CHECK(mk.is_skew_symmetric());
    CHECK(mutate_matrix(mk, k) == q);
    // Relabelling commutes with mutation.
    const std::size_t shift = 1 + t % 3;
    const std::size_t k_shifted = (k - 1 + n - shift % n) % n + 1;
    CHECK(mutate_matrix(shift_conjugate(q, shift), k_shifted) == shift_conjugate(mk, shift));
  }
}

TEST_CASE("seed mutation") {
  const Seed zero = Seed::initial(IntMatrix(2, 2));
  CHECK(mutate_seed(zero, 1).cluster[0] == parse_rational_function("2/x1", 2));

  const Seed s = Seed::initial(b_rs(1, 1));
  const Seed m1 = mutate_seed(s, 1);
  CHECK(m1.cluster[0] == parse_rational_function("(x2*x5 + x3*x4)/x1", 5));
  for (std::size_t i = 1; i < 5; ++i) CHECK(m1.cluster[i] == s.cluster[i]);
  const Seed back = mutate_seed(m1, 1);
  CHECK(back.matrix == s.matrix);
  CHECK(back.cluster == s.cluster);
}

TEST_CASE("period detection") {
  CHECK(detect_period(b_rs(1, 1))->period == 1);
  CHECK(detect_period(b_rs(1, 2))->period == 2);
  CHECK(detect_period(b_rs(2, 2))->period == 1);
  CHECK(detect_period(seven_node())->period == 1);
  CHECK(detect_period(IntMatrix(3, 3))->period == 1);
}

TEST_CASE("cluster maps") {
  const auto b1 = b_rs(1, 1);
  CHECK(cluster_map(b1, *detect_period(b1)) == parse_map({"x2", "x3", "x4", "x5", "(x2*x5 + x3*x4)/x1"}, 5));

  const auto b22 = b_rs(2, 2);
  CHECK(cluster_map(b22, *detect_period(b22)) ==
        parse_map({"x2", "x3", "x4", "x5", "(x2^2*x5^2 + x3*x4)/x1"}, 5));

  for (auto [r, s] : {std::pair{1L, 2L}, std::pair{2L, 1L}, std::pair{2L, 3L}}) {
    const auto b = b_rs(r, s);
    const auto rs = std::to_string(r), ss = std::to_string(s);
    const std::string x4 = "(x2^" + rs + "*x5^" + ss + " + x3*x4)/x1";
    const std::string x5 = "(x3^" + ss + "*(x2^" + rs + "*x5^" + ss + " + x3*x4)^" + rs + " + x1^" + rs + "*x4*x5)/(x1^" +
                           rs + "*x2)";
    CHECK(cluster_map(b, *detect_period(b)) == parse_map({"x3", "x4", "x5", x4, x5}, 5));
  }

  const auto b7 = seven_node();
  CHECK(cluster_map(b7, *detect_period(b7)) ==
        parse_map({"x2", "x3", "x4", "x5", "x6", "x7", "(x2*x7 + x4*x5)/x1"}, 7));

  CHECK_THROWS_AS(cluster_map(b_rs(1, 2), PeriodicityCertificate{1, {1}}), InvalidCertificate);

  // Laurent positivity smoke test at the all-ones point.
  const auto phi = cluster_map(b_rs(1, 2), PeriodicityCertificate{2, {1, 2}});
  for (const auto& v : phi.evaluate<Rational>(std::vector<Rational>(5, Rational(1)))) CHECK(v > 0);
}

TEST_CASE("cluster map agrees with step-by-step mutation") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> d(1, 1000);
  const auto b = b_rs(1, 2);
  const auto cert = *detect_period(b);
  const auto phi = cluster_map(b, cert);
  for (int t = 0; t < 50; ++t) {
    std::vector<Rational> x(5);
    for (auto& v : x) {
      v = Rational(d(rng), d(rng));
      v.canonicalize();
    }
    IntMatrix mat = b;
    std::vector<Rational> cl = x;
    for (std::size_t k : cert.mutation_sequence) {
      Rational plus = 1, minus = 1;
      for (std::size_t j = 0; j < 5; ++j) {
        const long e = mat(k - 1, j).get_si();
        for (long p = 0; p < e; ++p) plus *= cl[j];
        for (long p = 0; p < -e; ++p) minus *= cl[j];
      }
      cl[k - 1] = (plus + minus) / cl[k - 1];
      mat = mutate_matrix(mat, k);
    }
    std::vector<Rational> expected(5);
    for (std::size_t i = 0; i < 5; ++i) expected[i] = cl[(i + cert.period) % 5];
    CHECK(phi.evaluate<Rational>(x) == expected);
  }
}
