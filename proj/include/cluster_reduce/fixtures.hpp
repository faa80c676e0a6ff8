#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cluster_reduce/matrix.hpp"

namespace cluster_reduce {

/// Five-node exchange matrix B(r, s); 1-periodic when r == s, else 2-periodic.
IntMatrix five_node_matrix(long r, long s);

/// Seven-node 1-periodic exchange matrix of rank 2.
IntMatrix seven_node_matrix();

/// c_ij = j - i on five nodes.
IntMatrix somos5_poisson_matrix();

/// The compatible pair on seven nodes; rank 4 and rank 2 respectively.
IntMatrix seven_node_poisson_matrix(int which);

/// Reference exponent rows y_1, y_2, ... for the five- and seven-node
/// reductions; leading rows give the coarser submersions.
IntMatrix somos5_y_exponents();
IntMatrix seven_node_y_exponents();

struct Fixture {
  std::string name;
  std::string description;
  std::vector<std::pair<std::string, IntMatrix>> matrices;
};

const std::vector<Fixture>& fixtures();

/// Throws Error for unknown names.
const Fixture& fixture(std::string_view name);

}  // namespace cluster_reduce
