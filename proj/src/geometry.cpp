#include "cluster_reduce/geometry.hpp"

#include <algorithm>
#include <numeric>

#include "cluster_reduce/sampling.hpp"

namespace cluster_reduce {

namespace {

// Fresh points for re-verification never collide with discovery points.
constexpr std::uint64_t kVerifyOffset = std::uint64_t{1} << 40;

void require_skew(const IntMatrix& m, const char* what) {
  if (!m.is_skew_symmetric()) throw NotSkewSymmetric(std::string(what) + " must be square and skew-symmetric");
}

void require_self_map(const BirationalMap& phi, std::size_t n) {
  if (phi.dim_in() != n || phi.dim_out() != n)
    throw DimensionMismatch("map dimension " + std::to_string(phi.dim_in()) + " does not match structure dimension " +
                            std::to_string(n));
}

LatticeBasis basis_of(const IntMatrix& rows) {
  LatticeBasis b;
  b.ambient_dim = rows.cols();
  b.vectors = rows;
  return b;
}

// Coefficient matrix A with B == U^T A U for the rows U, when it exists.
std::optional<RationalMatrix> form_in_basis(const IntMatrix& u, const IntMatrix& b) {
  const std::size_t r = u.rows();
  if (r == 0) return RationalMatrix(0, 0);
  const RationalMatrix uq = convert<Rational>(u), bq = convert<Rational>(b);
  const RationalMatrix g_inv = inverse(uq * uq.transpose());
  RationalMatrix a = g_inv * uq * bq * uq.transpose() * g_inv;
  if (!(uq.transpose() * a * uq == bq)) return std::nullopt;
  return a;
}

// Darboux scales when A is block diagonal with blocks [[0, l], [-l, 0]].
std::vector<Integer> darboux_scales(const RationalMatrix& a) {
  const std::size_t r = a.rows();
  if (r % 2 != 0) return {};
  std::vector<Integer> scales;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const bool block = i / 2 == j / 2 && i != j;
      if (!block && a(i, j) != 0) return {};
    }
  for (std::size_t m = 0; m < r / 2; ++m) {
    const Rational& l = a(2 * m, 2 * m + 1);
    if (l.get_den() != 1 || l <= 0) return {};
    scales.push_back(l.get_num());
  }
  return scales;
}

}  // namespace

PresymplecticForm::PresymplecticForm(IntMatrix b) : b_(std::move(b)) {
  require_skew(b_, "presymplectic matrix");
  rank_ = cluster_reduce::rank(b_);
}

PoissonStructure::PoissonStructure(IntMatrix c) : c_(std::move(c)) {
  require_skew(c_, "Poisson matrix");
  kernel_ = kernel_lattice(c_);
}

std::string to_string(SubmersionKind kind) { return kind == SubmersionKind::null ? "null" : "casimir"; }

SubmersionKind submersion_kind_from_string(const std::string& s) {
  if (s == "null") return SubmersionKind::null;
  if (s == "casimir") return SubmersionKind::casimir;
  throw ParseError("unknown submersion kind \"" + s + "\"");
}

LatticeBasis Submersion::lattice() const {
  LatticeBasis b = basis_of(map.exponents());
  b.ambient_dim = map.dim_in();
  b.saturated = true;
  return b;
}

// ---------------------------------------------------------------------------
// Invariance checks

namespace {

// W(x)_ij = b_ij / (x_i x_j).
RationalMatrix presymplectic_matrix(const IntMatrix& b, std::span<const Rational> x) {
  const std::size_t n = b.rows();
  RationalMatrix w(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (b(i, j) != 0) w(i, j) = Rational(b(i, j)) / (x[i] * x[j]);
  return w;
}

// Pi(x)_ij = c_ij x_i x_j.
RationalMatrix poisson_matrix(const IntMatrix& c, std::span<const Rational> x) {
  const std::size_t n = c.rows();
  RationalMatrix p(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (c(i, j) != 0) p(i, j) = Rational(c(i, j)) * x[i] * x[j];
  return p;
}

template <class Check>
PointCheck run_point_check(std::size_t dim, std::size_t samples, std::uint64_t seed, std::uint64_t offset,
                           Check&& check) {
  PointCheck out;
  out.seed = seed;
  for (std::size_t k = 0; k < samples; ++k) {
    const auto x = random_positive_point(seed, offset + k, dim);
    ++out.points_checked;
    if (!check(x)) {
      out.passed = false;
      out.witness = x;
      return out;
    }
  }
  return out;
}

}  // namespace

PointCheck check_presymplectic_invariance(const BirationalMap& phi, const PresymplecticForm& omega, std::size_t samples,
                                          std::uint64_t seed) {
  require_self_map(phi, omega.dim());
  const MapJacobian jac(phi);
  return run_point_check(omega.dim(), samples, seed, 0, [&](const std::vector<Rational>& x) {
    const auto j = jac.evaluate<Rational>(x);
    const auto y = phi.evaluate<Rational>(x);
    return j.transpose() * presymplectic_matrix(omega.matrix(), y) * j == presymplectic_matrix(omega.matrix(), x);
  });
}

PointCheck check_poisson_map(const BirationalMap& phi, const PoissonStructure& p, std::size_t samples,
                             std::uint64_t seed) {
  require_self_map(phi, p.dim());
  const MapJacobian jac(phi);
  return run_point_check(p.dim(), samples, seed, 0, [&](const std::vector<Rational>& x) {
    const auto j = jac.evaluate<Rational>(x);
    const auto y = phi.evaluate<Rational>(x);
    return j * poisson_matrix(p.matrix(), x) * j.transpose() == poisson_matrix(p.matrix(), y);
  });
}

// ---------------------------------------------------------------------------
// Discovery

IntMatrix skew_from_upper(std::span<const Integer> upper, std::size_t n) {
  if (upper.size() != n * (n - 1) / 2) throw DimensionMismatch("upper triangle has wrong length");
  IntMatrix c(n, n);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      c(i, j) = upper[idx++];
      c(j, i) = -c(i, j);
    }
  return c;
}

IntVector upper_of_skew(const IntMatrix& c) {
  IntVector out;
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = i + 1; j < c.cols(); ++j) out.push_back(c(i, j));
  return out;
}

PoissonSearch find_invariant_poisson(const BirationalMap& phi, const std::optional<IntMatrix>& compatible_with,
                                     std::uint64_t seed, std::size_t verify_samples) {
  const std::size_t n = phi.dim_in();
  require_self_map(phi, n);
  const std::size_t unknowns = n * (n - 1) / 2;
  std::vector<std::vector<std::size_t>> index(n, std::vector<std::size_t>(n, 0));
  {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) index[i][j] = idx++;
  }
  RationalRowSpace space(unknowns);

  if (compatible_with) {
    const IntMatrix& b = *compatible_with;
    if (b.rows() != n || b.cols() != n) throw DimensionMismatch("compatibility matrix has wrong size");
    // (C B)_ij = sum_k c_ik b_kj with c_ik = -c_ki below the diagonal.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<Rational> row(unknowns);
        for (std::size_t k = 0; k < n; ++k) {
          if (k == i || b(k, j) == 0) continue;
          if (i < k)
            row[index[i][k]] += b(k, j);
          else
            row[index[k][i]] -= b(k, j);
        }
        space.add_row(std::move(row));
      }
  }

  const MapJacobian jac(phi);
  PoissonSearch out;
  std::size_t stable = 0;
  const std::size_t max_points = 64 + 4 * unknowns;
  for (std::size_t point = 0; point < max_points && stable < 3 && space.rank() < unknowns; ++point) {
    const auto x = random_positive_point(seed, point, n);
    const auto j = jac.evaluate<Rational>(x);
    const auto y = phi.evaluate<Rational>(x);
    ++out.points_used;
    bool grew = false;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        std::vector<Rational> row(unknowns);
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = k + 1; l < n; ++l) {
            const Rational minor = j(a, k) * j(b, l) - j(a, l) * j(b, k);
            if (minor != 0) row[index[k][l]] += minor * x[k] * x[l];
          }
        row[index[a][b]] -= y[a] * y[b];
        grew = space.add_row(std::move(row)) || grew;
      }
    stable = grew ? 0 : stable + 1;
  }

  const LatticeBasis solutions = space.null_lattice();
  for (std::size_t i = 0; i < solutions.dim(); ++i) out.basis.push_back(skew_from_upper(solutions.vectors.row(i), n));
  out.verified = std::all_of(out.basis.begin(), out.basis.end(), [&](const IntMatrix& c) {
    return run_point_check(n, verify_samples, seed, kVerifyOffset, [&](const std::vector<Rational>& x) {
             const auto j = jac.evaluate<Rational>(x);
             const auto y = phi.evaluate<Rational>(x);
             return j * poisson_matrix(c, x) * j.transpose() == poisson_matrix(c, y);
           }).passed;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Submersions

Submersion null_submersion(const PresymplecticForm& omega) {
  const DarbouxBasis d = darboux_basis(omega.matrix());
  Submersion s;
  s.map = MonomialMap(d.basis.vectors.rows() == 0 ? IntMatrix(0, omega.dim()) : d.basis.vectors);
  s.kind = SubmersionKind::null;
  s.structure = omega.matrix();
  s.scales = d.scales;
  s.not_a_reduction = omega.rank() == omega.dim();
  s.saturation_index = omega.rank() == 0 ? Integer(1) : saturation_index(normalize_basis(omega.matrix()));
  return s;
}

Submersion casimir_submersion(const PoissonStructure& p) {
  Submersion s;
  const LatticeBasis& k = p.kernel();
  s.map = MonomialMap(k.dim() == 0 ? IntMatrix(0, p.dim()) : k.vectors);
  s.kind = SubmersionKind::casimir;
  s.structure = p.matrix();
  s.not_a_reduction = k.dim() == p.dim();
  return s;
}

Submersion rebase_submersion(const Submersion& s, const IntMatrix& exponents) {
  if (exponents.cols() != s.ambient_dim() || exponents.rows() != s.size())
    throw DimensionMismatch("rebase: exponent matrix has wrong shape");
  const LatticeBasis current = s.lattice();
  const LatticeBasis proposed = basis_of(exponents);
  for (std::size_t i = 0; i < exponents.rows(); ++i)
    if (!solve_in_lattice(current, exponents.row(i)))
      throw InvalidCertificate("rebase: exponent row " + std::to_string(i + 1) + " is outside the submersion lattice");
  for (std::size_t i = 0; i < current.dim(); ++i)
    if (!solve_in_lattice(proposed, current.vectors.row(i)))
      throw InvalidCertificate("rebase: exponent rows span a proper sublattice");
  Submersion out = s;
  out.map = MonomialMap(exponents);
  out.scales.clear();
  if (s.kind == SubmersionKind::null)
    if (auto a = form_in_basis(exponents, s.structure)) out.scales = darboux_scales(*a);
  return out;
}

bool casimirs_vanish(const PoissonStructure& p, const Submersion& s) {
  const std::size_t n = p.dim();
  for (std::size_t i = 0; i < s.size(); ++i) {
    const LaurentPoly z = LaurentPoly::monomial(n, s.map.exponent(i));
    for (std::size_t j = 0; j < n; ++j)
      if (!log_canonical_bracket(z, LaurentPoly::variable(n, j), p.matrix()).is_zero()) return false;
  }
  return true;
}

bool darboux_form_holds(const PresymplecticForm& omega, const Submersion& s) {
  if (s.kind != SubmersionKind::null || 2 * s.scales.size() != s.size()) return false;
  DarbouxBasis d;
  d.basis = s.lattice();
  d.scales = s.scales;
  if (s.size() == 0) return omega.matrix().is_zero();
  return wedge_reconstruction(d) == omega.matrix();
}

// ---------------------------------------------------------------------------
// Reduction

namespace {

// Coordinates in the lattice basis of the difference a - b.
IntVector lattice_coordinates(const LatticeBasis& basis, const Exponent& a, const Exponent& b) {
  IntVector diff(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
  auto c = solve_in_lattice(basis, diff);
  if (!c) throw NotFiberConstant("monomial exponents differ by a vector outside the submersion lattice");
  return *c;
}

Exponent to_exponent(const IntVector& v) {
  Exponent e;
  e.reserve(v.size());
  for (const auto& x : v) {
    if (!x.fits_slong_p()) throw Error("exponent does not fit in a machine integer");
    e.push_back(x.get_si());
  }
  return e;
}

LaurentPoly pull_to_fiber(const LaurentPoly& p, const LatticeBasis& basis, const Exponent& base, std::size_t r) {
  LaurentPoly out(r);
  for (const auto& [e, c] : p.terms()) out.add_term(to_exponent(lattice_coordinates(basis, e, base)), c);
  return out;
}

}  // namespace

RationalFunction rewrite_in_fiber_coordinates(const RationalFunction& f, const Submersion& pi) {
  if (f.num_vars() != pi.ambient_dim()) throw DimensionMismatch("rewrite: function and submersion dimensions differ");
  const std::size_t r = pi.size();
  if (f.is_zero()) return RationalFunction::constant(r, 0);
  const LatticeBasis basis = pi.lattice();
  const Exponent n0 = f.numerator().leading_exponent();
  const Exponent d0 = f.denominator().leading_exponent();
  LaurentPoly num = pull_to_fiber(f.numerator(), basis, n0, r);
  const LaurentPoly den = pull_to_fiber(f.denominator(), basis, d0, r);
  num = num.shifted(to_exponent(lattice_coordinates(basis, n0, d0)));
  return RationalFunction(num, den);
}

ReducedSystem derive_reduced_map(const BirationalMap& phi, const Submersion& pi) {
  require_self_map(phi, pi.ambient_dim());
  const BirationalMap pi_map = pi.map.to_birational();
  const BirationalMap pulled = compose(pi_map, phi);
  std::vector<RationalFunction> comps;
  comps.reserve(pi.size());
  for (std::size_t i = 0; i < pi.size(); ++i) {
    try {
      comps.push_back(rewrite_in_fiber_coordinates(pulled[i], pi));
    } catch (const NotFiberConstant& e) {
      throw NotReducible("component " + std::to_string(i + 1) + " of the pulled-back submersion: " + e.what());
    }
  }
  ReducedSystem out;
  out.psi = BirationalMap(pi.size(), std::move(comps));
  out.pi = pi.map;
  out.not_a_reduction = pi.not_a_reduction;
  out.verified = compose(out.psi, pi_map) == pulled;
  return out;
}

std::optional<MonomialMap> check_subfoliation(const Submersion& pi1, const Submersion& pi2) {
  if (pi1.ambient_dim() != pi2.ambient_dim()) throw DimensionMismatch("subfoliation: ambient dimensions differ");
  const LatticeBasis outer = pi2.lattice();
  IntMatrix p(pi1.size(), pi2.size());
  for (std::size_t i = 0; i < pi1.size(); ++i) {
    auto c = solve_in_lattice(outer, pi1.map.exponents().row(i));
    if (!c) return std::nullopt;
    for (std::size_t j = 0; j < c->size(); ++j) p(i, j) = (*c)[j];
  }
  MonomialMap proj(p);
  if (!(compose(proj, pi2.map) == pi1.map)) return std::nullopt;
  return proj;
}

Flag build_flag(const std::vector<Submersion>& submersions) {
  Flag flag;
  if (submersions.empty()) return flag;
  const std::size_t n = submersions.front().ambient_dim();
  for (const auto& s : submersions)
    if (s.ambient_dim() != n) throw DimensionMismatch("flag: submersions live on different spaces");
  std::vector<std::size_t> order(submersions.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return submersions[a].size() < submersions[b].size(); });
  for (std::size_t k = 0; k < order.size(); ++k) {
    flag.levels.push_back(submersions[order[k]]);
    if (k == 0) continue;
    auto p = check_subfoliation(submersions[order[k - 1]], submersions[order[k]]);
    if (!p)
      throw NotAChain("submersions " + std::to_string(order[k - 1] + 1) + " and " + std::to_string(order[k] + 1) +
                          " define incomparable foliations",
                      order[k - 1], order[k]);
    flag.projections.push_back(std::move(*p));
  }
  flag.order = std::move(order);
  return flag;
}

ReducedSystem chained_reduction(const ReducedSystem& outer, const ReducedSystem& inner, const MonomialMap& p) {
  if (!(compose(p, inner.pi) == outer.pi)) throw VerificationFailure("projection does not relate the two submersions");
  const BirationalMap pb = p.to_birational();
  if (!(compose(pb, inner.psi) == compose(outer.psi, pb)))
    throw VerificationFailure("projection does not intertwine the reduced maps");
  ReducedSystem out;
  out.psi = outer.psi;
  out.pi = p;
  out.verified = true;
  return out;
}

PointCheck check_isotropy(const PresymplecticForm& omega, const Submersion& pi, std::size_t samples,
                          std::uint64_t seed) {
  const std::size_t n = omega.dim();
  if (pi.ambient_dim() != n) throw DimensionMismatch("isotropy: dimensions differ");
  // Tangent vectors to a fibre at x are x * k (componentwise) with U k == 0.
  const IntMatrix u = pi.size() == 0 ? IntMatrix(1, n) : pi.map.exponents();
  const LatticeBasis tangent = kernel_lattice(u);
  return run_point_check(n, samples, seed, 0, [&](const std::vector<Rational>& x) {
    const RationalMatrix w = presymplectic_matrix(omega.matrix(), x);
    RationalMatrix t(tangent.dim(), n);
    for (std::size_t a = 0; a < tangent.dim(); ++a)
      for (std::size_t i = 0; i < n; ++i) t(a, i) = x[i] * tangent.vectors(a, i);
    return (t * w * t.transpose()).is_zero();
  });
}

}  // namespace cluster_reduce
