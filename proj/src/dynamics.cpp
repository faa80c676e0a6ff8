#include "cluster_reduce/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "cluster_reduce/sampling.hpp"

namespace cluster_reduce {

std::vector<Real> to_real(const std::vector<Rational>& x) {
  std::vector<Real> out;
  out.reserve(x.size());
  for (const auto& q : x) out.push_back(to_real(q));
  return out;
}

// ---------------------------------------------------------------------------
// Global periodicity

PeriodReport detect_global_periodicity(const BirationalMap& f, std::size_t p_max, std::uint64_t seed,
                                       std::size_t samples) {
  if (f.dim_in() != f.dim_out()) throw DimensionMismatch("periodicity: map is not a self-map");
  const std::size_t n = f.dim_in();
  PeriodReport report;
  report.bound = p_max;
  report.samples = samples;
  report.seed = seed;

  // closes[p] stays true while every sampled orbit returns at step p. The
  // screen runs in floating point; only the symbolic test below certifies.
  const Real tol = pow(Real(10), -static_cast<long>(Real::default_precision()) / 3);
  std::vector<bool> closes(p_max + 1, true);
  for (std::size_t s = 0; s < samples; ++s) {
    if (std::none_of(closes.begin() + 1, closes.end(), [](bool b) { return b; })) break;
    const auto x0 = to_real(random_positive_point(seed, s, n));
    std::vector<Real> x = x0;
    for (std::size_t k = 1; k <= p_max; ++k) {
      try {
        x = f.evaluate<Real>(x);
      } catch (const ZeroDenominator&) {
        std::fill(closes.begin() + static_cast<long>(k), closes.end(), false);
        break;
      }
      for (std::size_t i = 0; i < n && closes[k]; ++i)
        if (!(abs(x[i] - x0[i]) <= tol * abs(x0[i]))) closes[k] = false;
    }
  }

  BirationalMap power = BirationalMap::identity(n);
  std::size_t power_exp = 0;
  for (std::size_t p = 1; p <= p_max; ++p) {
    if (!closes[p]) continue;
    while (power_exp < p) {
      power = compose(f, power);
      ++power_exp;
    }
    if (power == BirationalMap::identity(n)) {
      report.kind = PeriodKind::global;
      report.period = p;
      report.symbolic = true;
      return report;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Periodic points

namespace {

Real max_norm(const std::vector<Real>& v) {
  Real m = 0;
  for (const auto& x : v) m = std::max(m, Real(abs(x)));
  return m;
}

std::vector<Real> residual(const BirationalMap& fp, const std::vector<Real>& x) {
  std::vector<Real> r = fp.evaluate<Real>(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= x[i];
  return r;
}

// Solves a x = b by Gaussian elimination with partial pivoting.
std::optional<std::vector<Real>> solve_linear(Matrix<Real> a, std::vector<Real> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t i = col + 1; i < n; ++i)
      if (abs(a(i, col)) > abs(a(piv, col))) piv = i;
    if (a(piv, col) == 0) return std::nullopt;
    a.swap_rows(piv, col);
    std::swap(b[piv], b[col]);
    for (std::size_t i = col + 1; i < n; ++i) {
      const Real f = a(i, col) / a(col, col);
      if (f == 0) continue;
      for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
      b[i] -= f * b[col];
    }
  }
  std::vector<Real> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Real s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return x;
}

bool positive(const std::vector<Real>& x) {
  return std::all_of(x.begin(), x.end(), [](const Real& v) { return v > 0; });
}

// Damped Newton iteration on fp(x) - x; returns the final point when the
// residual reaches `target`.
std::optional<std::vector<Real>> newton(const BirationalMap& fp, const MapJacobian& jac, std::vector<Real> x,
                                        const Real& target) {
  const std::size_t n = x.size();
  std::vector<Real> r;
  try {
    r = residual(fp, x);
  } catch (const ZeroDenominator&) {
    return std::nullopt;
  }
  Real norm = max_norm(r);
  for (int iter = 0; iter < 200 && norm > target; ++iter) {
    Matrix<Real> j;
    try {
      j = jac.evaluate<Real>(x);
    } catch (const ZeroDenominator&) {
      return std::nullopt;
    }
    for (std::size_t i = 0; i < n; ++i) j(i, i) -= 1;
    auto step = solve_linear(std::move(j), r);
    if (!step) return std::nullopt;
    bool accepted = false;
    for (Real t = 1; t > Real(1e-8); t /= 2) {
      std::vector<Real> trial(n);
      for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] - t * (*step)[i];
      if (!positive(trial)) continue;
      try {
        auto rt = residual(fp, trial);
        const Real nt = max_norm(rt);
        if (nt < norm) {
          x = std::move(trial);
          r = std::move(rt);
          norm = nt;
          accepted = true;
          break;
        }
      } catch (const ZeroDenominator&) {
      }
    }
    if (!accepted) break;
  }
  if (norm > target) return std::nullopt;
  return x;
}

Real ten_to_minus(long digits) { return pow(Real(10), -digits); }

}  // namespace

std::vector<PeriodicPoint> find_periodic_points(const BirationalMap& f, std::size_t p, const SearchBox& box,
                                                unsigned precision, std::size_t grid) {
  if (f.dim_in() != f.dim_out()) throw DimensionMismatch("periodic points: map is not a self-map");
  const std::size_t n = f.dim_in();
  if (n > 3) throw DimensionMismatch("periodic points: root finding is limited to dimension 3");
  if (box.lower.size() != n || box.upper.size() != n) throw DimensionMismatch("periodic points: box has wrong dimension");
  if (p == 0 || grid == 0) throw Error("periodic points: period and grid size must be positive");

  std::vector<BirationalMap> powers{BirationalMap::identity(n)};
  for (std::size_t k = 1; k <= p; ++k) powers.push_back(compose(f, powers.back()));
  const BirationalMap& fp = powers[p];
  const MapJacobian jac(fp);

  ScopedPrecision scope(precision);
  const Real target = ten_to_minus(static_cast<long>(precision) - 6);
  const Real accept = ten_to_minus(static_cast<long>(precision) / 2);

  std::vector<PeriodicPoint> found;
  std::size_t starts = 1;
  for (std::size_t i = 0; i < n; ++i) starts *= grid;
  for (std::size_t s = 0; s < starts; ++s) {
    std::vector<Real> x0(n);
    std::size_t code = s;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t g = code % grid;
      code /= grid;
      const Rational frac = grid == 1 ? Rational(1, 2) : Rational(static_cast<long>(g), static_cast<long>(grid - 1));
      x0[i] = to_real(box.lower[i] + (box.upper[i] - box.lower[i]) * frac);
    }
    if (!positive(x0)) continue;
    auto x = newton(fp, jac, x0, target);
    if (!x) continue;
    const Real res = max_norm(residual(fp, *x));
    if (res > accept) continue;

    bool duplicate = false;
    for (const auto& q : found) {
      std::vector<Real> d(n);
      for (std::size_t i = 0; i < n; ++i) d[i] = q.point[i] - (*x)[i];
      if (max_norm(d) < accept) duplicate = true;
    }
    if (duplicate) continue;

    bool shorter = false;
    for (std::size_t d = 1; d < p && !shorter; ++d)
      if (p % d == 0 && max_norm(residual(powers[d], *x)) < accept) shorter = true;
    if (shorter) continue;

    PeriodicPoint pt;
    pt.point = *x;
    pt.residual = res;
    pt.period = p;
    {
      ScopedPrecision doubled(2 * precision);
      std::vector<Real> hi(n);
      for (std::size_t i = 0; i < n; ++i) hi[i] = Real((*x)[i]);
      auto refined = newton(fp, jac, hi, ten_to_minus(2 * static_cast<long>(precision) - 6));
      Real drift = -1;
      if (refined) {
        std::vector<Real> d(n);
        for (std::size_t i = 0; i < n; ++i) d[i] = (*refined)[i] - hi[i];
        drift = max_norm(d);
      }
      pt.drift = drift;
    }
    found.push_back(std::move(pt));
  }
  std::sort(found.begin(), found.end(),
            [](const PeriodicPoint& a, const PeriodicPoint& b) { return a.point < b.point; });
  return found;
}

// ---------------------------------------------------------------------------
// Leaf itineraries

std::optional<std::size_t> label_period(const std::vector<std::vector<Rational>>& labels) {
  for (std::size_t q = 1; 2 * q <= labels.size(); ++q) {
    bool ok = true;
    for (std::size_t k = 0; k + q < labels.size() && ok; ++k) ok = labels[k + q] == labels[k];
    if (ok) return q;
  }
  return std::nullopt;
}

std::optional<std::size_t> label_period(const std::vector<std::vector<Real>>& labels, const Real& tol) {
  auto close = [&](const std::vector<Real>& a, const std::vector<Real>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (abs(a[i] - b[i]) > tol * std::max(Real(1), Real(abs(a[i])))) return false;
    return true;
  };
  for (std::size_t q = 1; 2 * q <= labels.size(); ++q) {
    bool ok = true;
    for (std::size_t k = 0; k + q < labels.size() && ok; ++k) ok = close(labels[k + q], labels[k]);
    if (ok) return q;
  }
  return std::nullopt;
}

Real max_label_drift(const std::vector<std::vector<Real>>& labels) {
  Real m = 0;
  for (const auto& l : labels)
    for (std::size_t i = 0; i < l.size(); ++i) m = std::max(m, Real(abs(l[i] - labels.front()[i])));
  return m;
}

namespace {

template <class T>
LeafItinerary<T> labels_along(const BirationalMap& phi, const std::vector<MonomialMap>& submersions, std::vector<T> x0,
                              std::size_t n) {
  for (const auto& s : submersions)
    if (s.dim_in() != phi.dim_in()) throw DimensionMismatch("itinerary: submersion dimension differs from the map");
  const auto orbit = iterate_orbit(phi, std::move(x0), n);
  LeafItinerary<T> it;
  for (const auto& s : submersions) {
    std::vector<std::vector<T>> seq;
    seq.reserve(orbit.points.size());
    for (const auto& x : orbit.points) seq.push_back(s.evaluate<T>(x));
    it.labels.push_back(std::move(seq));
  }
  return it;
}

}  // namespace

LeafItinerary<Rational> leaf_itinerary(const BirationalMap& phi, const std::vector<MonomialMap>& submersions,
                                       std::vector<Rational> x0, std::size_t n) {
  auto it = labels_along(phi, submersions, std::move(x0), n);
  for (const auto& l : it.labels) it.periods.push_back(label_period(l));
  return it;
}

LeafItinerary<Real> leaf_itinerary(const BirationalMap& phi, const std::vector<MonomialMap>& submersions,
                                   std::vector<Real> x0, std::size_t n, const Real& tol) {
  auto it = labels_along(phi, submersions, std::move(x0), n);
  for (const auto& l : it.labels) it.periods.push_back(label_period(l, tol));
  return it;
}

bool first_integral_check(const BirationalMap& f, const MonomialMap& pi, std::size_t p) {
  if (pi.dim_out() == 0) return true;
  if (pi.dim_in() != f.dim_out()) throw DimensionMismatch("first integral: dimensions differ");
  const BirationalMap start = pi.to_birational();
  BirationalMap g = start;
  for (std::size_t k = 0; k < p; ++k) g = compose(g, f);
  return g == start;
}

// ---------------------------------------------------------------------------
// Scans

std::size_t height_bits(const std::vector<Rational>& x) {
  std::size_t bits = 0;
  for (const auto& q : x)
    bits += mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
  return bits;
}

ScanReport no_periodic_points_scan(const BirationalMap& f, std::size_t p_max, std::size_t samples, std::uint64_t seed,
                                   std::size_t growth_steps) {
  if (f.dim_in() != f.dim_out()) throw DimensionMismatch("scan: map is not a self-map");
  constexpr std::size_t kEscapeRun = 10;
  const std::size_t n = f.dim_in();
  ScanReport report;
  report.p_max = p_max;
  report.seed = seed;
  report.growth_steps = growth_steps;
  report.all_escaping = samples > 0;
  for (std::size_t s = 0; s < samples; ++s) {
    ScanSample sample;
    sample.start = random_positive_point(seed, s, n);
    std::vector<Rational> x = sample.start;
    std::size_t k = 1;
    bool capped = false;
    for (; k <= p_max; ++k) {
      try {
        x = f.evaluate<Rational>(x);
      } catch (const ZeroDenominator&) {
        break;
      }
      sample.exact_steps = k;
      if (x == sample.start) {
        sample.period = k;
        break;
      }
      if (height_bits(x) > kHeightCapBits) {
        capped = true;
        ++k;
        break;
      }
    }
    // Past the height cap the remaining steps are screened in floating point;
    // a near return is reported as a candidate, never as a period.
    if (capped) {
      const auto x0 = to_real(sample.start);
      std::vector<Real> y = to_real(x);
      const Real tol = pow(Real(10), -static_cast<long>(Real::default_precision()) / 3);
      for (; k <= p_max; ++k) {
        try {
          y = f.evaluate<Real>(y);
        } catch (const ZeroDenominator&) {
          break;
        }
        bool close = true;
        for (std::size_t i = 0; i < n && close; ++i) close = abs(y[i] - x0[i]) <= tol * abs(x0[i]);
        if (close) {
          sample.float_return_candidate = k;
          break;
        }
      }
    }
    sample.growth_run.assign(n, 0);
    try {
      const auto orbit = iterate_orbit(f, to_real(sample.start), growth_steps);
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t run = 0;
        for (std::size_t k = orbit.points.size() - 1; k > 0; --k) {
          if (!(orbit.points[k][i] > orbit.points[k - 1][i])) break;
          ++run;
        }
        sample.growth_run[i] = run;
        if (orbit.points.size() > 1)
          sample.last_ratios.push_back(orbit.points.back()[i] / orbit.points[orbit.points.size() - 2][i]);
      }
      sample.escaping = n > 0 && sample.growth_run.back() >= kEscapeRun;
    } catch (const ZeroDenominator&) {
      sample.escaping = false;
    }
    if (sample.period && (!report.period_found || *sample.period < *report.period_found))
      report.period_found = sample.period;
    report.all_escaping = report.all_escaping && sample.escaping;
    report.samples.push_back(std::move(sample));
  }
  report.note = "sampled evidence only: no periodic start found among the samples does not prove that none exists";
  return report;
}

// ---------------------------------------------------------------------------
// Closed forms

Real ClosedForm::plastic_root() {
  Real x = Real(4) / 3;
  for (int i = 0; i < 200; ++i) {
    const Real next = x - (x * x * x - x - 1) / (3 * x * x - 1);
    if (next == x) break;
    x = next;
  }
  return x;
}

ClosedForm ClosedForm::with_lambda_factor(const Real& factor, const Real& x3, const Real& x4) {
  ClosedForm c;
  c.r = plastic_root();
  c.lambda = factor * sqrt(c.r);
  c.family = factor == 1 ? Family::balanced : Family::alternating;
  c.x3 = x3;
  c.x4 = x4;
  return c;
}

std::vector<Real> ClosedForm::initial_data() const {
  const Real x5 = lambda * x4 * x4 / x3;
  const Real x2 = r * x3 * x4 / x5;
  const Real x1 = r * x2 * x3 / x4;
  return {x1, x2, x3, x4, x5};
}

Real ClosedForm::value(std::size_t k) const {
  if (k == 0) throw IndexOutOfRange("sequence indices start at 1");
  if (k <= 5) return initial_data()[k - 1];
  if (family == Family::balanced) {
    const long n = static_cast<long>(k) - 5;
    return pow(r, Real((n + 2) * (n + 1)) / 4) * pow(x4, n + 2) / pow(x3, n + 1);
  }
  if (k % 2 == 0) {
    const long n = (static_cast<long>(k) - 4) / 2;
    return pow(lambda, n) * pow(r, n * n) * pow(x4, 2 * n + 1) / pow(x3, 2 * n);
  }
  const long n = (static_cast<long>(k) - 5) / 2;
  return pow(lambda, n + 1) * pow(r, n * (n + 1)) * pow(x4, 2 * n + 2) / pow(x3, 2 * n + 1);
}

ClosedFormReport verify_closed_form(const Orbit<Real>& orbit, const ClosedForm& formula, const Real& tol) {
  if (orbit.points.empty() || orbit.points.front().size() != 5)
    throw DimensionMismatch("closed form: orbit must come from the five-dimensional map");
  const double digits_needed = -std::log10(tol.convert_to<double>());
  if (orbit.precision == 0 || static_cast<double>(orbit.precision) <= digits_needed)
    throw Error("closed form: orbit precision must exceed the number of digits asked for by the tolerance");
  std::vector<Real> seq(orbit.points.front().begin(), orbit.points.front().end());
  for (std::size_t k = 1; k < orbit.points.size(); ++k) seq.push_back(orbit.points[k][4]);
  ClosedFormReport rep;
  rep.max_relative_error = 0;
  for (std::size_t k = 1; k <= seq.size(); ++k) {
    const Real expected = formula.value(k);
    const Real err = abs(seq[k - 1] - expected) / abs(expected);
    ++rep.compared;
    if (err > rep.max_relative_error) {
      rep.max_relative_error = err;
      rep.worst_index = k;
    }
  }
  rep.passed = rep.max_relative_error < tol;
  return rep;
}

}  // namespace cluster_reduce
