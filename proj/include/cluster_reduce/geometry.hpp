#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cluster_reduce/lattice.hpp"
#include "cluster_reduce/laurent.hpp"

namespace cluster_reduce {

/// Log-canonical presymplectic form sum b_ij dx_i/x_i ^ dx_j/x_j.
class PresymplecticForm {
 public:
  explicit PresymplecticForm(IntMatrix b);

  const IntMatrix& matrix() const noexcept { return b_; }
  std::size_t dim() const noexcept { return b_.rows(); }
  std::size_t rank() const noexcept { return rank_; }

 private:
  IntMatrix b_;
  std::size_t rank_;
};

/// Log-canonical Poisson structure {x_i, x_j} = c_ij x_i x_j.
class PoissonStructure {
 public:
  explicit PoissonStructure(IntMatrix c);

  const IntMatrix& matrix() const noexcept { return c_; }
  std::size_t dim() const noexcept { return c_.rows(); }
  const LatticeBasis& kernel() const noexcept { return kernel_; }
  std::size_t corank() const noexcept { return kernel_.dim(); }

 private:
  IntMatrix c_;
  LatticeBasis kernel_;
};

enum class SubmersionKind { null, casimir };

std::string to_string(SubmersionKind kind);
SubmersionKind submersion_kind_from_string(const std::string& s);

/// Monomial submersion whose fibres are the leaves of a foliation.
struct Submersion {
  MonomialMap map;
  SubmersionKind kind = SubmersionKind::null;
  IntMatrix structure = IntMatrix(0, 0);  // B or C it was built from
  std::vector<Integer> scales;             // Darboux factors; empty unless the rows form a Darboux basis
  bool not_a_reduction = false;            // as many components as variables
  Integer saturation_index = 1;            // index of the integer image of B in its saturation

  std::size_t ambient_dim() const noexcept { return map.dim_in(); }
  std::size_t size() const noexcept { return map.dim_out(); }
  LatticeBasis lattice() const;
};

/// Outcome of a check run at sampled points.
struct PointCheck {
  bool passed = true;
  std::size_t points_checked = 0;
  std::uint64_t seed = 0;
  std::optional<std::vector<Rational>> witness;  // first failing point

  explicit operator bool() const noexcept { return passed; }
};

PointCheck check_presymplectic_invariance(const BirationalMap& phi, const PresymplecticForm& omega, std::size_t samples,
                                          std::uint64_t seed);

PointCheck check_poisson_map(const BirationalMap& phi, const PoissonStructure& p, std::size_t samples,
                             std::uint64_t seed);

struct PoissonSearch {
  std::vector<IntMatrix> basis;  // saturated integer basis of the solution space
  std::size_t points_used = 0;
  bool verified = false;         // every basis element passed check_poisson_map on fresh points
};

/// Log-canonical Poisson structures preserved by phi (optionally with
/// C * B == 0), found by solving the linear invariance conditions at
/// sampled points until the solution space is stable for three points.
PoissonSearch find_invariant_poisson(const BirationalMap& phi, const std::optional<IntMatrix>& compatible_with,
                                     std::uint64_t seed, std::size_t verify_samples = 20);

/// Skew matrix from its strict upper triangle read row by row, and back.
IntMatrix skew_from_upper(std::span<const Integer> upper, std::size_t n);
IntVector upper_of_skew(const IntMatrix& c);

Submersion null_submersion(const PresymplecticForm& omega);
Submersion casimir_submersion(const PoissonStructure& p);

/// Same submersion written with other exponent rows spanning the same
/// lattice; throws InvalidCertificate otherwise.
Submersion rebase_submersion(const Submersion& s, const IntMatrix& exponents);

/// Symbolic check that every component of a casimir submersion brackets
/// to zero with each coordinate.
bool casimirs_vanish(const PoissonStructure& p, const Submersion& s);

/// B == sum scales[m] (u_{2m} ^ u_{2m+1}) for the rows of a null submersion.
bool darboux_form_holds(const PresymplecticForm& omega, const Submersion& s);

/// F written in the coordinates y_i = x^{u_i} of the submersion; throws
/// NotFiberConstant when F varies along the fibres.
RationalFunction rewrite_in_fiber_coordinates(const RationalFunction& f, const Submersion& pi);

/// (psi, pi) with pi o phi == psi o pi.
struct ReducedSystem {
  BirationalMap psi;
  MonomialMap pi;
  bool verified = false;
  bool not_a_reduction = false;
};

ReducedSystem derive_reduced_map(const BirationalMap& phi, const Submersion& pi);

/// p with p o pi2 == pi1 when the leaves of pi2 sit inside those of pi1.
std::optional<MonomialMap> check_subfoliation(const Submersion& pi1, const Submersion& pi2);

/// Chain of submersions ordered from the coarsest foliation to the finest;
/// projections[i] o levels[i+1] == levels[i].
struct Flag {
  std::vector<Submersion> levels;
  std::vector<MonomialMap> projections;
  std::vector<std::size_t> order;  // input index of each level
};

Flag build_flag(const std::vector<Submersion>& submersions);

/// (outer.psi, p) as a reduced system of inner.psi; throws VerificationFailure.
ReducedSystem chained_reduction(const ReducedSystem& outer, const ReducedSystem& inner, const MonomialMap& p);

/// omega vanishes on the tangent spaces of the fibres of pi, checked at
/// sampled points.
PointCheck check_isotropy(const PresymplecticForm& omega, const Submersion& pi, std::size_t samples,
                          std::uint64_t seed);

}  // namespace cluster_reduce
