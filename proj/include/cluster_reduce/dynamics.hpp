#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cluster_reduce/laurent.hpp"
#include "cluster_reduce/real.hpp"

namespace cluster_reduce {

/// Successive images of a start point; points[k] = f^(k)(points[0]).
/// `precision` is the decimal precision of float orbits and 0 for exact ones.
template <class T>
struct Orbit {
  std::vector<std::vector<T>> points;
  unsigned precision = 0;
};

/// Iterates f n times. Start coordinates must be positive; a vanishing
/// denominator raises ZeroDenominator carrying the step index.
template <class T>
Orbit<T> iterate_orbit(const BirationalMap& f, std::vector<T> x0, std::size_t n) {
  if (f.dim_in() != f.dim_out()) throw DimensionMismatch("orbit: map is not a self-map");
  if (x0.size() != f.dim_in()) throw DimensionMismatch("orbit: start point has wrong dimension");
  for (const auto& v : x0)
    if (!(v > 0)) throw Error("orbit: start point must have positive coordinates");
  Orbit<T> orbit;
  if constexpr (!std::is_same_v<T, Rational>) orbit.precision = Real::default_precision();
  orbit.points.reserve(n + 1);
  orbit.points.push_back(std::move(x0));
  for (std::size_t k = 1; k <= n; ++k) {
    try {
      orbit.points.push_back(f.evaluate<T>(orbit.points.back()));
    } catch (const ZeroDenominator& e) {
      throw ZeroDenominator(std::string("orbit: ") + e.what() + " at step " + std::to_string(k), k);
    }
  }
  return orbit;
}

std::vector<Real> to_real(const std::vector<Rational>& x);

enum class PeriodKind { global, none_up_to };

struct PeriodReport {
  PeriodKind kind = PeriodKind::none_up_to;
  std::size_t period = 0;  // minimal certified period when kind == global
  std::size_t bound = 0;   // largest period examined
  bool symbolic = false;   // f^(period) == id checked as an identity of rational functions
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

PeriodReport detect_global_periodicity(const BirationalMap& f, std::size_t p_max = 12, std::uint64_t seed = 0,
                                       std::size_t samples = 25);

struct PeriodicPoint {
  std::vector<Real> point;
  Real residual;           // max-norm of f^(p)(x) - x
  Real drift;              // change of the point when recomputed at twice the precision
  std::size_t period = 0;  // minimal period
};

struct SearchBox {
  std::vector<Rational> lower, upper;
};

/// Positive solutions of f^(p)(x) == x of minimal period p found by damped
/// Newton iteration started from a grid over the box.
std::vector<PeriodicPoint> find_periodic_points(const BirationalMap& f, std::size_t p, const SearchBox& box,
                                                unsigned precision = kDefaultPrecisionDigits,
                                                std::size_t grid = 5);

/// Leaf labels pi(points[k]) for every submersion along one orbit.
template <class T>
struct LeafItinerary {
  std::vector<std::vector<std::vector<T>>> labels;  // [submersion][step] -> label
  std::vector<std::optional<std::size_t>> periods;  // smallest cycle length of each label sequence
};

/// Smallest q with labels[k + q] == labels[k] for every k (within tol for
/// floats), if one at most half the sequence length exists.
std::optional<std::size_t> label_period(const std::vector<std::vector<Rational>>& labels);
std::optional<std::size_t> label_period(const std::vector<std::vector<Real>>& labels, const Real& tol);

/// Largest coordinate distance of any label from the first one.
Real max_label_drift(const std::vector<std::vector<Real>>& labels);

LeafItinerary<Rational> leaf_itinerary(const BirationalMap& phi, const std::vector<MonomialMap>& submersions,
                                       std::vector<Rational> x0, std::size_t n);
LeafItinerary<Real> leaf_itinerary(const BirationalMap& phi, const std::vector<MonomialMap>& submersions,
                                   std::vector<Real> x0, std::size_t n, const Real& tol);

/// pi o f^(p) == pi as an identity of rational functions.
bool first_integral_check(const BirationalMap& f, const MonomialMap& pi, std::size_t p);

/// Total bit length of numerators and denominators. Exact orbits past
/// kHeightCapBits are too costly to follow and switch to floating point.
std::size_t height_bits(const std::vector<Rational>& x);
inline constexpr std::size_t kHeightCapBits = std::size_t{1} << 18;

struct ScanSample {
  std::vector<Rational> start;
  std::optional<std::size_t> period;  // first k <= p_max with f^(k)(x) == x
  std::size_t exact_steps = 0;        // steps iterated exactly before the height cap
  std::optional<std::size_t> float_return_candidate;  // near return seen after the cap
  std::vector<Real> last_ratios;      // coordinate ratios over the final step of the growth orbit
  std::vector<std::size_t> growth_run;  // per coordinate, trailing run of steps with ratio > 1
  bool escaping = false;                // last coordinate grew over the final run threshold
};

struct ScanReport {
  std::size_t p_max = 0;
  std::uint64_t seed = 0;
  std::size_t growth_steps = 0;
  std::vector<ScanSample> samples;
  std::optional<std::size_t> period_found;  // smallest period seen in any sample
  bool all_escaping = false;
  std::string note;
};

/// Exact search for periodic starts among sampled points, plus float orbits
/// recording coordinate growth. Exact iteration stops once an orbit point
/// exceeds 2^18 bits of height; later steps are screened in floating point.
/// Evidence only; never a proof of absence.
ScanReport no_periodic_points_scan(const BirationalMap& f, std::size_t p_max = 20, std::size_t samples = 25,
                                   std::uint64_t seed = 0, std::size_t growth_steps = 60);

/// Solutions of the five-term recurrence on the singular leaves, with
/// x1 x4 = r x2 x3, x2 x5 = r x3 x4 and x3 x5 = lambda x4^2, r^3 = 1 + r.
struct ClosedForm {
  enum class Family { balanced, alternating };  // lambda == sqrt(r) or not
  Family family = Family::balanced;
  Real x3, x4, lambda, r;

  static Real plastic_root();
  /// lambda = factor * sqrt(r); factor 1 gives the balanced family.
  static ClosedForm with_lambda_factor(const Real& factor, const Real& x3 = 1, const Real& x4 = 1);

  std::vector<Real> initial_data() const;  // x1, ..., x5
  Real value(std::size_t k) const;         // x_k, k >= 1
};

struct ClosedFormReport {
  bool passed = false;
  std::size_t compared = 0;
  Real max_relative_error;
  std::size_t worst_index = 0;
};

/// Compares every sequence term carried by an orbit of the five-dimensional
/// cluster map (point k holds x_{k+1}, ..., x_{k+5}) with the closed form.
ClosedFormReport verify_closed_form(const Orbit<Real>& orbit, const ClosedForm& formula, const Real& tol);

}  // namespace cluster_reduce
