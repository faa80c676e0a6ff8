#include <doctest.h>

#include <chrono>

#include "cluster_reduce/dynamics.hpp"
#include "cluster_reduce/fixtures.hpp"
#include "cluster_reduce/quiver.hpp"

using namespace cluster_reduce;

namespace {

BirationalMap parse_map(std::vector<std::string> comps, std::size_t n) { return BirationalMap::parse(comps, n); }

const BirationalMap& lyness() {
  static const BirationalMap m = parse_map({"x2", "(1 + x2)/x1"}, 2);
  return m;
}

const BirationalMap& psi1() {
  static const BirationalMap m = parse_map({"x2", "(1 + x2)/x1", "x2*(1 + x2)/x3"}, 3);
  return m;
}

const BirationalMap& psi2() {
  static const BirationalMap m = parse_map({"x2", "(1 + x2)/x1", "x2*(1 + x2)/x3", "x5", "x3*x5^2/(x2*x4)"}, 5);
  return m;
}

BirationalMap somos5() {
  const auto b = five_node_matrix(1, 1);
  return cluster_map(b, *detect_period(b));
}

SearchBox box(std::size_t n, long lo, long hi) {
  return {std::vector<Rational>(n, Rational(lo, 2)), std::vector<Rational>(n, Rational(hi))};
}

}  // namespace

TEST_CASE("orbits") {
  const auto phi = somos5();
  CHECK(iterate_orbit(phi, std::vector<Rational>(5, Rational(1)), 0).points.size() == 1);
  const auto orbit = iterate_orbit(phi, std::vector<Rational>(5, Rational(1)), 8);
  std::vector<Rational> last;
  for (std::size_t k = 1; k <= 8; ++k) last.push_back(orbit.points[k][4]);
  CHECK(last == std::vector<Rational>{2, 3, 5, 11, 37, 83, 274, 1217});

  const auto ly = iterate_orbit(lyness(), std::vector<Rational>{1, 1}, 5);
  CHECK(ly.points[5] == ly.points[0]);
  for (std::size_t k = 1; k < 5; ++k) CHECK(!(ly.points[k] == ly.points[0]));

  CHECK_THROWS_AS(iterate_orbit(phi, std::vector<Rational>{1, 1, 0, 1, 1}, 2), Error);
  const auto bad = parse_map({"x1 + 1", "1/(x1 - 2)"}, 2);
  try {
    iterate_orbit(bad, std::vector<Rational>{1, 1}, 3);
    FAIL("expected a zero denominator");
  } catch (const ZeroDenominator& e) {
    CHECK(e.step() == 2);
  }

  // Symbolic iterates agree with pointwise iteration.
  const std::vector<Rational> x0{Rational(3, 7), 2, Rational(5, 3), 1, Rational(9, 4)};
  const auto o = iterate_orbit(phi, x0, 6);
  BirationalMap power = BirationalMap::identity(5);
  for (std::size_t k = 1; k <= 6; ++k) {
    power = compose(phi, power);
    CHECK(power.evaluate<Rational>(x0) == o.points[k]);
  }
}

TEST_CASE("global periodicity") {
  const auto id = detect_global_periodicity(BirationalMap::identity(3), 12, 1);
  CHECK(id.kind == PeriodKind::global);
  CHECK(id.period == 1);
  const auto ly = detect_global_periodicity(lyness(), 12, 1);
  CHECK(ly.kind == PeriodKind::global);
  CHECK(ly.period == 5);
  CHECK(ly.symbolic);
  const auto p1 = detect_global_periodicity(psi1(), 12, 1);
  CHECK(p1.kind == PeriodKind::global);
  CHECK(p1.period == 10);
  CHECK(detect_global_periodicity(somos5(), 6, 1).kind == PeriodKind::none_up_to);
}

TEST_CASE("first integrals") {
  const auto b7 = seven_node_matrix();
  const auto phi7 = cluster_map(b7, *detect_period(b7));
  const auto y = seven_node_y_exponents();
  CHECK(first_integral_check(phi7, MonomialMap(y.row_block(0, 2)), 5));
  CHECK(!first_integral_check(phi7, MonomialMap(y.row_block(0, 2)), 4));
  const auto start = std::chrono::steady_clock::now();
  CHECK(first_integral_check(phi7, MonomialMap(y.row_block(0, 3)), 10));
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(60));
  CHECK(first_integral_check(phi7, MonomialMap(IntMatrix(0, 7)), 3));
}

TEST_CASE("periodic points") {
  const unsigned prec = 64;
  ScopedPrecision scope(prec);
  const Real golden = (1 + sqrt(Real(5))) / 2;

  const auto ly = find_periodic_points(lyness(), 1, box(2, 1, 4), prec);
  REQUIRE(ly.size() == 1);
  CHECK(abs(ly[0].point[0] - golden) < Real(1e-50));
  CHECK(abs(ly[0].point[1] - golden) < Real(1e-50));
  CHECK(ly[0].residual < Real(1e-40));
  CHECK(ly[0].drift >= 0);
  CHECK(ly[0].drift < Real(1e-35));

  const auto hat = find_periodic_points(parse_map({"x2", "(1 + x2)/(x1*x2)"}, 2), 1, box(2, 1, 4), prec);
  REQUIRE(hat.size() == 1);
  const Real r = ClosedForm::plastic_root();
  CHECK(abs(hat[0].point[0] - r) < Real(1e-50));
  CHECK(abs(r * r * r - r - 1) < Real(1e-60));

  const auto p1 = find_periodic_points(psi1(), 1, box(3, 1, 5), prec, 3);
  REQUIRE(p1.size() == 1);
  CHECK(abs(p1[0].point[2] - sqrt(golden * golden * golden)) < Real(1e-50));

  // Every point of the Lyness map except the fixed one has minimal period 5.
  CHECK(find_periodic_points(lyness(), 2, box(2, 1, 4), prec, 3).empty());
}

TEST_CASE("leaf itineraries") {
  const auto b7 = seven_node_matrix();
  const auto phi7 = cluster_map(b7, *detect_period(b7));
  const auto y = seven_node_y_exponents();
  const std::vector<MonomialMap> subs{MonomialMap(y.row_block(0, 2)), MonomialMap(y.row_block(0, 3))};
  const std::vector<Rational> x0{Rational(3, 7), 2, Rational(5, 3), 1, Rational(9, 4), Rational(2, 5), 3};
  const auto it = leaf_itinerary(phi7, subs, x0, 20);
  CHECK(it.periods[0] == std::optional<std::size_t>(5));
  CHECK(it.periods[1] == std::optional<std::size_t>(10));
  const auto single = leaf_itinerary(phi7, subs, x0, 0);
  CHECK(single.labels[0].size() == 1);

  ScopedPrecision scope(64);
  const Real golden = (1 + sqrt(Real(5))) / 2;
  const Rational g = rational_approximation(golden, 40);
  const std::vector<Rational> on_leaf{g, 1, 1, 1, 1, 1, g};
  const auto f = leaf_itinerary(phi7, {subs[0]}, to_real(on_leaf), 20, Real(1e-30));
  CHECK(max_label_drift(f.labels[0]) < Real(1e-30));
  CHECK(f.periods[0] == std::optional<std::size_t>(1));
}

TEST_CASE("periodic point scan") {
  const auto rep = no_periodic_points_scan(psi2(), 20, 25, 3);
  CHECK(!rep.period_found);
  CHECK(rep.all_escaping);
  CHECK(rep.samples.size() == 25);
  CHECK(no_periodic_points_scan(BirationalMap::identity(2), 20, 3, 3).period_found == std::optional<std::size_t>(1));
  CHECK(no_periodic_points_scan(lyness(), 20, 5, 3).period_found == std::optional<std::size_t>(5));
}

TEST_CASE("closed-form solutions") {
  ScopedPrecision scope(64);
  const auto phi = somos5();
  for (int factor : {1, 2}) {
    const auto form = ClosedForm::with_lambda_factor(Real(factor));
    const auto orbit = iterate_orbit(phi, form.initial_data(), 20);
    const auto rep = verify_closed_form(orbit, form, Real(1e-40));
    CHECK(rep.passed);
    CHECK(rep.compared == 25);
    CHECK(form.value(4) == 1);
  }
  const auto form = ClosedForm::with_lambda_factor(Real(1));
  CHECK_THROWS_AS(verify_closed_form(iterate_orbit(phi, form.initial_data(), 2), form, Real("1e-80")), Error);
}
