#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cluster_reduce/matrix.hpp"

namespace cluster_reduce {

/// Basis of a sublattice of Z^n, one basis vector per row of `vectors`.
struct LatticeBasis {
  std::size_t ambient_dim = 0;
  IntMatrix vectors = IntMatrix(0, 0);
  bool saturated = false;

  std::size_t dim() const noexcept { return vectors.rows(); }
  IntVector vector(std::size_t i) const { return vectors.row_vector(i); }
};

struct HermiteForm {
  IntMatrix H;  // row-style Hermite normal form
  IntMatrix U;  // unimodular, U * M == H
};

struct SmithForm {
  IntMatrix S;  // diagonal, S(i,i) | S(i+1,i+1), nonnegative
  IntMatrix U;  // unimodular
  IntMatrix V;  // unimodular, U * M * V == S
};

/// Row-style Hermite normal form: pivots positive, strictly increasing
/// columns, entries above each pivot reduced into [0, pivot).
HermiteForm hermite_normal_form(const IntMatrix& m);

SmithForm smith_normal_form(const IntMatrix& m);

/// Exact determinant (Bareiss fraction-free elimination).
Integer determinant(const IntMatrix& m);

std::size_t rank(const IntMatrix& m);
std::size_t rank(const RationalMatrix& m);

/// Nonzero rows of the Hermite form of the given rows.
IntMatrix normalize_basis(const IntMatrix& rows);

/// Saturated basis of {u in Z^n : m * u == 0}, HNF-normalized.
LatticeBasis kernel_lattice(const IntMatrix& m);

/// Saturated basis of (column space of m) ∩ Z^n, HNF-normalized.
LatticeBasis image_lattice(const IntMatrix& m);

/// Saturation of the lattice spanned by the rows of `generators`.
LatticeBasis saturate(const IntMatrix& generators, std::size_t ambient_dim);

/// Index of the lattice spanned by `generators` in its saturation; 1 means
/// the generators already span a saturated lattice.
Integer saturation_index(const IntMatrix& generators);

/// True iff every vector of `a` lies in the rational span of `b`.
bool sublattice_subset(const LatticeBasis& a, const LatticeBasis& b);

/// Integer coefficients c with sum_i c_i * basis_i == v, or nullopt.
std::optional<IntVector> solve_in_lattice(const LatticeBasis& basis, std::span<const Integer> v);

/// Symplectic (Darboux) basis of the image lattice of a skew matrix B:
/// B == sum_m scales[m] * (u_{2m} u_{2m+1}^T - u_{2m+1} u_{2m}^T), rows of
/// `basis.vectors` being u_0, u_1, ... (0-based pairs).
struct DarbouxBasis {
  LatticeBasis basis;
  std::vector<Integer> scales;
};

DarbouxBasis darboux_basis(const IntMatrix& skew);

/// sum_m scales[m] * (u_{2m} u_{2m+1}^T - u_{2m+1} u_{2m}^T).
IntMatrix wedge_reconstruction(const DarbouxBasis& d);

/// Exact inverse of a square rational matrix; throws if singular.
RationalMatrix inverse(const RationalMatrix& m);

/// Incrementally maintained reduced row echelon form over Q. Used to
/// intersect linear constraints and read off the solution space.
class RationalRowSpace {
 public:
  explicit RationalRowSpace(std::size_t cols) : cols_(cols) {}

  /// Adds a constraint row; returns true when it increased the rank.
  bool add_row(std::vector<Rational> row);

  std::size_t rank() const noexcept { return pivots_.size(); }
  std::size_t cols() const noexcept { return cols_; }

  /// Basis of {v : row . v == 0 for every added row}, as integer vectors
  /// whose lattice is saturated.
  LatticeBasis null_lattice() const;

 private:
  std::size_t cols_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace cluster_reduce
