#include <doctest.h>

#include "cluster_reduce/fixtures.hpp"
#include "cluster_reduce/geometry.hpp"
#include "cluster_reduce/quiver.hpp"
#include "cluster_reduce/sampling.hpp"

using namespace cluster_reduce;

namespace {

BirationalMap phi_of(const IntMatrix& b) { return cluster_map(b, *detect_period(b)); }

BirationalMap parse_map(std::vector<std::string> comps, std::size_t n) { return BirationalMap::parse(comps, n); }

IntMatrix leading_rows(const IntMatrix& m, std::size_t k) { return m.row_block(0, k); }

}  // namespace

TEST_CASE("structures and invariance") {
  const auto b5 = five_node_matrix(1, 1);
  const auto phi5 = phi_of(b5);
  const PresymplecticForm omega5(b5);
  CHECK(omega5.rank() == 2);
  CHECK(check_presymplectic_invariance(phi5, omega5, 20, 1).passed);
  CHECK(check_poisson_map(phi5, PoissonStructure(somos5_poisson_matrix()), 20, 1).passed);
  CHECK(check_poisson_map(phi5, PoissonStructure(IntMatrix(5, 5)), 5, 1).passed);

  IntMatrix perturbed = b5;
  perturbed(0, 1) += 1;
  perturbed(1, 0) -= 1;
  const auto bad = check_presymplectic_invariance(phi5, PresymplecticForm(perturbed), 20, 1);
  CHECK(!bad.passed);
  CHECK(bad.witness.has_value());

  const auto b7 = seven_node_matrix();
  const auto phi7 = phi_of(b7);
  CHECK(check_presymplectic_invariance(phi7, PresymplecticForm(b7), 20, 2).passed);
  CHECK(check_poisson_map(phi7, PoissonStructure(seven_node_poisson_matrix(1)), 20, 2).passed);
  CHECK(check_poisson_map(phi7, PoissonStructure(seven_node_poisson_matrix(2)), 20, 2).passed);
  CHECK_THROWS_AS(check_poisson_map(phi5, PoissonStructure(seven_node_poisson_matrix(1)), 1, 1), DimensionMismatch);
}

TEST_CASE("ranks and kernels of the fixtures") {
  CHECK(rank(seven_node_matrix()) == 2);
  CHECK(PoissonStructure(somos5_poisson_matrix()).corank() == 3);
  const PoissonStructure p1(seven_node_poisson_matrix(1)), p2(seven_node_poisson_matrix(2));
  CHECK(rank(p1.matrix()) == 4);
  CHECK(rank(p2.matrix()) == 2);
  CHECK(sublattice_subset(p1.kernel(), p2.kernel()));
  const auto im = image_lattice(seven_node_matrix());
  CHECK(sublattice_subset(im, p1.kernel()));
  CHECK(sublattice_subset(im, p2.kernel()));
  CHECK((p1.matrix() * seven_node_matrix()).is_zero());
  CHECK((p2.matrix() * seven_node_matrix()).is_zero());
}

TEST_CASE("invariant Poisson discovery") {
  const auto phi5 = phi_of(five_node_matrix(1, 1));
  const auto s5 = find_invariant_poisson(phi5, std::nullopt, 3);
  CHECK(s5.verified);
  REQUIRE(s5.basis.size() == 1);
  CHECK((s5.basis[0] == somos5_poisson_matrix() || s5.basis[0] == IntMatrix(5, 5) - somos5_poisson_matrix()));

  const auto id = find_invariant_poisson(BirationalMap::identity(4), std::nullopt, 3);
  CHECK(id.basis.size() == 6);

  const auto b7 = seven_node_matrix();
  const auto s7 = find_invariant_poisson(phi_of(b7), b7, 5);
  CHECK(s7.verified);
  CHECK(s7.basis.size() == 2);
  LatticeBasis span;
  span.ambient_dim = 21;
  span.vectors = IntMatrix(0, 21);
  for (const auto& c : s7.basis) span.vectors.append_row(std::span<const Integer>(upper_of_skew(c)));
  CHECK(solve_in_lattice(span, upper_of_skew(seven_node_poisson_matrix(1))).has_value());
  CHECK(solve_in_lattice(span, upper_of_skew(seven_node_poisson_matrix(2))).has_value());
}

TEST_CASE("submersions") {
  const auto b5 = five_node_matrix(1, 1);
  const PresymplecticForm omega5(b5);
  const auto hat = null_submersion(omega5);
  CHECK(hat.size() == 2);
  CHECK(hat.kind == SubmersionKind::null);
  CHECK(darboux_form_holds(omega5, hat));
  const auto y = somos5_y_exponents();
  const auto aligned = rebase_submersion(hat, leading_rows(y, 2));
  CHECK(darboux_form_holds(omega5, aligned));
  CHECK(aligned.scales == std::vector<Integer>{1});

  const PoissonStructure p5(somos5_poisson_matrix());
  const auto tilde = casimir_submersion(p5);
  CHECK(tilde.size() == 3);
  CHECK(casimirs_vanish(p5, tilde));
  CHECK_NOTHROW(rebase_submersion(tilde, y));
  CHECK_THROWS_AS(rebase_submersion(tilde, IntMatrix{{2, -2, -2, 2, 0}, {0, 1, -1, -1, 1}, {0, 0, 1, -2, 1}}),
                  InvalidCertificate);

  CHECK(null_submersion(PresymplecticForm(IntMatrix(3, 3))).size() == 0);
  CHECK(casimir_submersion(PoissonStructure(IntMatrix(3, 3))).map.exponents() == IntMatrix::identity(3));
  CHECK(null_submersion(PresymplecticForm(IntMatrix{{0, 1}, {-1, 0}})).not_a_reduction);

  const auto y7 = seven_node_y_exponents();
  const PoissonStructure p1(seven_node_poisson_matrix(1)), p2(seven_node_poisson_matrix(2));
  CHECK(casimir_submersion(p1).size() == 3);
  CHECK(casimir_submersion(p2).size() == 5);
  CHECK(casimirs_vanish(p1, casimir_submersion(p1)));
  CHECK(casimirs_vanish(p2, casimir_submersion(p2)));
  CHECK_NOTHROW(rebase_submersion(null_submersion(PresymplecticForm(seven_node_matrix())), leading_rows(y7, 2)));
  CHECK_NOTHROW(rebase_submersion(casimir_submersion(p1), leading_rows(y7, 3)));
  CHECK_NOTHROW(rebase_submersion(casimir_submersion(p2), y7));
}

TEST_CASE("rewriting in fibre coordinates") {
  const auto hat = rebase_submersion(null_submersion(PresymplecticForm(five_node_matrix(1, 1))),
                                     leading_rows(somos5_y_exponents(), 2));
  CHECK(rewrite_in_fiber_coordinates(parse_rational_function("x2*x5/(x3*x4)", 5), hat) ==
        parse_rational_function("y2", 2));
  CHECK(rewrite_in_fiber_coordinates(parse_rational_function("x1*x4/(x2*x3)*(x2*x5/(x3*x4))^2", 5), hat) ==
        parse_rational_function("y1*y2^2", 2));
  CHECK_THROWS_AS(rewrite_in_fiber_coordinates(parse_rational_function("x1", 5), hat), NotFiberConstant);
}

TEST_CASE("reduced maps") {
  const auto b5 = five_node_matrix(1, 1);
  const auto phi5 = phi_of(b5);
  const auto y5 = somos5_y_exponents();
  const auto hat5 = rebase_submersion(null_submersion(PresymplecticForm(b5)), leading_rows(y5, 2));
  const auto tilde5 = rebase_submersion(casimir_submersion(PoissonStructure(somos5_poisson_matrix())), y5);
  const auto r_hat = derive_reduced_map(phi5, hat5);
  CHECK(r_hat.verified);
  CHECK(r_hat.psi == parse_map({"y2", "(1 + y2)/(y1*y2)"}, 2));
  const auto r_tilde = derive_reduced_map(phi5, tilde5);
  CHECK(r_tilde.verified);
  CHECK(r_tilde.psi == parse_map({"y2", "(1 + y2)/(y1*y2)", "(1 + y2)/(y1*y2*y3)"}, 3));

  const auto p = check_subfoliation(hat5, tilde5);
  REQUIRE(p.has_value());
  CHECK(p->exponents() == IntMatrix{{1, 0, 0}, {0, 1, 0}});
  CHECK(!check_subfoliation(tilde5, hat5).has_value());
  CHECK(chained_reduction(r_hat, r_tilde, *p).verified);
  CHECK(check_subfoliation(hat5, hat5)->exponents() == IntMatrix::identity(2));

  const auto b7 = seven_node_matrix();
  const auto phi7 = phi_of(b7);
  const auto y7 = seven_node_y_exponents();
  const auto hat7 = rebase_submersion(null_submersion(PresymplecticForm(b7)), leading_rows(y7, 2));
  const auto t1 = rebase_submersion(casimir_submersion(PoissonStructure(seven_node_poisson_matrix(1))), leading_rows(y7, 3));
  const auto t2 = rebase_submersion(casimir_submersion(PoissonStructure(seven_node_poisson_matrix(2))), y7);
  const auto r0 = derive_reduced_map(phi7, hat7);
  const auto r1 = derive_reduced_map(phi7, t1);
  const auto r2 = derive_reduced_map(phi7, t2);
  CHECK(r0.verified);
  CHECK(r1.verified);
  CHECK(r2.verified);
  CHECK(r0.psi == parse_map({"y2", "(1 + y2)/y1"}, 2));
  CHECK(r1.psi == parse_map({"y2", "(1 + y2)/y1", "y2*(1 + y2)/y3"}, 3));
  CHECK(r2.psi == parse_map({"y2", "(1 + y2)/y1", "y2*(1 + y2)/y3", "y5", "y3*y5^2/(y2*y4)"}, 5));

  const Flag flag = build_flag({t2, hat7, t1});
  REQUIRE(flag.levels.size() == 3);
  CHECK(flag.order == std::vector<std::size_t>{1, 2, 0});
  CHECK(flag.projections[0].exponents() == IntMatrix{{1, 0, 0}, {0, 1, 0}});
  CHECK(flag.projections[1].exponents() == IntMatrix{{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}});
  CHECK(chained_reduction(r0, r1, flag.projections[0]).verified);
  CHECK(chained_reduction(r1, r2, flag.projections[1]).verified);
  CHECK_THROWS_AS(chained_reduction(r1, r2, flag.projections[0]), DimensionMismatch);

  for (std::size_t k = 0; k < 100; ++k) {
    const auto x = random_positive_point(77, k, 7);
    CHECK(r2.pi.evaluate<Rational>(phi7.evaluate<Rational>(x)) == r2.psi.evaluate<Rational>(r2.pi.evaluate<Rational>(x)));
  }
}

TEST_CASE("flags of incomparable foliations") {
  const PoissonStructure a(IntMatrix{{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}});
  const PoissonStructure b(IntMatrix{{0, 0, 0, 0}, {0, 0, 1, 0}, {0, -1, 0, 0}, {0, 0, 0, 0}});
  CHECK_THROWS_AS(build_flag({casimir_submersion(a), casimir_submersion(b)}), NotAChain);
  const auto single = build_flag({casimir_submersion(a)});
  CHECK(single.levels.size() == 1);
  CHECK(single.projections.empty());
}

TEST_CASE("isotropy") {
  const PresymplecticForm omega5(five_node_matrix(1, 1));
  CHECK(check_isotropy(omega5, casimir_submersion(PoissonStructure(somos5_poisson_matrix())), 10, 4).passed);
  const PresymplecticForm omega7(seven_node_matrix());
  CHECK(check_isotropy(omega7, casimir_submersion(PoissonStructure(seven_node_poisson_matrix(1))), 10, 4).passed);
  // Leaves of the zero structure are points; leaves of a symplectic structure are everything.
  CHECK(check_isotropy(omega5, casimir_submersion(PoissonStructure(IntMatrix(5, 5))), 3, 4).passed);
  const IntMatrix full{{0, 1, 0, 0, 0}, {-1, 0, 0, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, -1, 0, 0}, {0, 0, 0, 0, 0}};
  CHECK(!check_isotropy(omega5, casimir_submersion(PoissonStructure(full)), 3, 4).passed);
}
