#include "cluster_reduce/fixtures.hpp"

namespace cluster_reduce {

namespace {

IntMatrix skew_from_rows(const std::vector<std::vector<long>>& upper) {
  const std::size_t n = upper.size() + 1;
  IntMatrix c(n, n);
  for (std::size_t i = 0; i < upper.size(); ++i)
    for (std::size_t k = 0; k < upper[i].size(); ++k) {
      const std::size_t j = i + 1 + k;
      c(i, j) = upper[i][k];
      c(j, i) = -upper[i][k];
    }
  return c;
}

}  // namespace

IntMatrix five_node_matrix(long r, long s) {
  return {{0, r, -1, -1, s},
          {-r, 0, r + s, r - 1, -1},
          {1, -r - s, 0, r + s, -1},
          {1, 1 - r, -r - s, 0, r},
          {-s, 1, 1, -r, 0}};
}

IntMatrix seven_node_matrix() {
  return {{0, 1, 0, -1, -1, 0, 1},  {-1, 0, 1, 1, 0, -1, 0}, {0, -1, 0, 1, 1, 0, -1}, {1, -1, -1, 0, 1, 1, -1},
          {1, 0, -1, -1, 0, 1, 0}, {0, 1, 0, -1, -1, 0, 1}, {-1, 0, 1, 1, 0, -1, 0}};
}

IntMatrix somos5_poisson_matrix() {
  IntMatrix c(5, 5);
  for (long i = 0; i < 5; ++i)
    for (long j = 0; j < 5; ++j) c(i, j) = j - i;
  return c;
}

IntMatrix seven_node_poisson_matrix(int which) {
  if (which == 1)
    return skew_from_rows({{1, 1, 2, 3, 3, 4}, {1, 1, 2, 3, 3}, {1, 1, 2, 3}, {1, 1, 2}, {1, 1}, {1}});
  if (which == 2)
    return skew_from_rows({{1, -1, 0, 1, -1, 0}, {1, -1, 0, 1, -1}, {1, -1, 0, 1}, {1, -1, 0}, {1, -1}, {1}});
  throw IndexOutOfRange("seven-node Poisson matrix index must be 1 or 2");
}

IntMatrix somos5_y_exponents() { return {{1, -1, -1, 1, 0}, {0, 1, -1, -1, 1}, {0, 0, 1, -2, 1}}; }

IntMatrix seven_node_y_exponents() {
  return {{1, 0, -1, -1, 0, 1, 0},
          {0, 1, 0, -1, -1, 0, 1},
          {1, 0, 0, -2, 0, 0, 1},
          {1, 1, 1, 0, 0, 0, 0},
          {0, 1, 1, 1, 0, 0, 0}};
}

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> all = [] {
    std::vector<Fixture> f;
    f.push_back({"somos5", "five-node exchange matrix B(1,1), 1-periodic", {{"B", five_node_matrix(1, 1)}}});
    f.push_back({"five-node-r1-s2", "five-node exchange matrix B(1,2), 2-periodic", {{"B", five_node_matrix(1, 2)}}});
    f.push_back({"somos5-poisson", "invariant Poisson matrix c_ij = j - i for the five-node map",
                 {{"C", somos5_poisson_matrix()}}});
    f.push_back({"somos5-y", "exponents of y1, y2, y3 for the five-node reductions", {{"Y", somos5_y_exponents()}}});
    f.push_back({"c7", "seven-node exchange matrix of rank 2, 1-periodic", {{"B", seven_node_matrix()}}});
    f.push_back({"c7-pair", "compatible Poisson matrices C1 (rank 4) and C2 (rank 2) on seven nodes",
                 {{"C1", seven_node_poisson_matrix(1)}, {"C2", seven_node_poisson_matrix(2)}}});
    f.push_back({"c7-y", "exponents of y1, ..., y5 for the seven-node reductions", {{"Y", seven_node_y_exponents()}}});
    return f;
  }();
  return all;
}

const Fixture& fixture(std::string_view name) {
  for (const auto& f : fixtures())
    if (f.name == name) return f;
  throw Error("unknown fixture \"" + std::string(name) + "\"");
}

}  // namespace cluster_reduce
