#include "cluster_reduce/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cluster_reduce {

std::string to_string(const IntMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// row_dst += c * row_src
void add_row_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& c) {
  if (c == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += c * m(src, j);
}

void add_col_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& c) {
  if (c == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += c * m(i, src);
}

void negate_row(IntMatrix& m, std::size_t i) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
}

// Replaces rows (a, b) by (s*a + t*b, -(y/g)*a + (x/g)*b) where x = m(a,col),
// y = m(b,col) and g = s*x + t*y = gcd(x, y). The transform has determinant 1.
void gcd_combine_rows(IntMatrix& m, IntMatrix& u, std::size_t a, std::size_t b, std::size_t col) {
  Integer x = m(a, col), y = m(b, col), g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  const Integer xg = x / g, yg = y / g;
  auto combine = [&](IntMatrix& target) {
    for (std::size_t j = 0; j < target.cols(); ++j) {
      Integer va = target(a, j), vb = target(b, j);
      target(a, j) = s * va + t * vb;
      target(b, j) = xg * vb - yg * va;
    }
  };
  combine(m);
  combine(u);
}

std::size_t nonzero_rows(const IntMatrix& h) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < h.cols() && zero; ++j) zero = h(i, j) == 0;
    if (!zero) n = i + 1;
  }
  return n;
}

// Unique solution x of a * x == b for `a` with full column rank, or nullopt
// when the system is inconsistent.
std::optional<std::vector<Rational>> solve_full_column_rank(const RationalMatrix& a, std::span<const Rational> b) {
  const std::size_t n = a.rows(), k = a.cols();
  RationalMatrix aug(n, k + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug(i, j) = a(i, j);
    aug(i, k) = b[i];
  }
  std::size_t row = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t col = 0; col < k && row < n; ++col) {
    std::size_t p = row;
    while (p < n && aug(p, col) == 0) ++p;
    if (p == n) continue;
    aug.swap_rows(p, row);
    const Rational inv = 1 / aug(row, col);
    for (std::size_t j = 0; j <= k; ++j) aug(row, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || aug(i, col) == 0) continue;
      const Rational f = aug(i, col);
      for (std::size_t j = 0; j <= k; ++j) aug(i, j) -= f * aug(row, j);
    }
    pivot_cols.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < n; ++i)
    if (aug(i, k) != 0) return std::nullopt;
  if (pivot_cols.size() != k) throw std::logic_error("solve_full_column_rank: rank-deficient system");
  std::vector<Rational> x(k);
  for (std::size_t i = 0; i < k; ++i) x[pivot_cols[i]] = aug(i, k);
  return x;
}

IntMatrix rational_to_integer(const RationalMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw std::logic_error("expected an integral matrix");
      out(i, j) = m(i, j).get_num();
    }
  return out;
}

}  // namespace

HermiteForm hermite_normal_form(const IntMatrix& m) {
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  std::size_t row = 0;
  for (std::size_t col = 0; col < h.cols() && row < h.rows(); ++col) {
    std::size_t first = row;
    while (first < h.rows() && h(first, col) == 0) ++first;
    if (first == h.rows()) continue;
    h.swap_rows(first, row);
    u.swap_rows(first, row);
    for (std::size_t i = row + 1; i < h.rows(); ++i)
      if (h(i, col) != 0) gcd_combine_rows(h, u, row, i, col);
    if (h(row, col) < 0) {
      negate_row(h, row);
      negate_row(u, row);
    }
    const Integer pivot = h(row, col);
    for (std::size_t k = 0; k < row; ++k) {
      const Integer q = floor_div(h(k, col), pivot);
      add_row_multiple(h, k, row, -q);
      add_row_multiple(u, k, row, -q);
    }
    ++row;
  }
  return {std::move(h), std::move(u)};
}

SmithForm smith_normal_form(const IntMatrix& m) {
  IntMatrix s = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  IntMatrix v = IntMatrix::identity(m.cols());
  const std::size_t n = std::min(s.rows(), s.cols());

  auto move_to_pivot = [&](std::size_t t, std::size_t i, std::size_t j) {
    s.swap_rows(t, i);
    u.swap_rows(t, i);
    s.swap_cols(t, j);
    v.swap_cols(t, j);
  };

  for (std::size_t t = 0; t < n; ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    bool found = false;
    std::size_t pi = t, pj = t;
    for (std::size_t i = t; i < s.rows(); ++i)
      for (std::size_t j = t; j < s.cols(); ++j)
        if (s(i, j) != 0 && (!found || abs(s(i, j)) < abs(s(pi, pj)))) {
          found = true;
          pi = i;
          pj = j;
        }
    if (!found) break;
    move_to_pivot(t, pi, pj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < s.rows(); ++i) {
        if (s(i, t) == 0) continue;
        const Integer q = floor_div(s(i, t), s(t, t));
        add_row_multiple(s, i, t, -q);
        add_row_multiple(u, i, t, -q);
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < s.cols(); ++j) {
        if (s(t, j) == 0) continue;
        const Integer q = floor_div(s(t, j), s(t, t));
        add_col_multiple(s, j, t, -q);
        add_col_multiple(v, j, t, -q);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) {
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < s.rows(); ++i)
          if (s(i, t) != 0 && abs(s(i, t)) < abs(s(bi, bj))) bi = i, bj = t;
        for (std::size_t j = t + 1; j < s.cols(); ++j)
          if (s(t, j) != 0 && abs(s(t, j)) < abs(s(bi, bj))) bi = t, bj = j;
        move_to_pivot(t, bi, bj);
        continue;
      }
      // Divisibility chain: fold an offending row into the pivot row.
      bool divisible = true;
      for (std::size_t i = t + 1; i < s.rows() && divisible; ++i)
        for (std::size_t j = t + 1; j < s.cols(); ++j)
          if (s(i, j) % s(t, t) != 0) {
            add_row_multiple(s, t, i, 1);
            add_row_multiple(u, t, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (s(t, t) < 0) {
      negate_row(s, t);
      negate_row(u, t);
    }
  }
  return {std::move(s), std::move(u), std::move(v)};
}

Integer determinant(const IntMatrix& m) {
  if (!m.square()) throw DimensionMismatch("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::size_t rank(const RationalMatrix& m) {
  RationalRowSpace space(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) space.add_row(m.row_vector(i));
  return space.rank();
}

std::size_t rank(const IntMatrix& m) { return nonzero_rows(hermite_normal_form(m).H); }

IntMatrix normalize_basis(const IntMatrix& rows) {
  const auto h = hermite_normal_form(rows).H;
  return h.row_block(0, nonzero_rows(h));
}

LatticeBasis kernel_lattice(const IntMatrix& m) {
  const std::size_t n = m.cols();
  const auto hnf = hermite_normal_form(m.transpose());
  const std::size_t r = nonzero_rows(hnf.H);
  return {n, normalize_basis(hnf.U.row_block(r, n)), true};
}

LatticeBasis image_lattice(const IntMatrix& m) {
  const std::size_t n = m.rows();
  const LatticeBasis orthogonal = kernel_lattice(m.transpose());
  IntMatrix constraints = orthogonal.vectors;
  if (constraints.rows() == 0) constraints = IntMatrix(0, n);
  return kernel_lattice(constraints);
}

LatticeBasis saturate(const IntMatrix& generators, std::size_t ambient_dim) {
  if (generators.rows() == 0) return {ambient_dim, IntMatrix(0, ambient_dim), true};
  if (generators.cols() != ambient_dim) throw DimensionMismatch("generators do not match the ambient dimension");
  return image_lattice(generators.transpose());
}

Integer saturation_index(const IntMatrix& generators) {
  const auto snf = smith_normal_form(generators);
  Integer index = 1;
  for (std::size_t i = 0; i < std::min(snf.S.rows(), snf.S.cols()); ++i)
    if (snf.S(i, i) != 0) index *= snf.S(i, i);
  return index;
}

bool sublattice_subset(const LatticeBasis& a, const LatticeBasis& b) {
  if (a.ambient_dim != b.ambient_dim) throw DimensionMismatch("sublattice_subset: ambient dimensions differ");
  if (a.dim() == 0) return true;
  IntMatrix stacked = b.dim() == 0 ? IntMatrix(0, b.ambient_dim) : b.vectors;
  for (std::size_t i = 0; i < a.dim(); ++i) stacked.append_row(a.vectors.row(i));
  return rank(stacked) == b.dim();
}

std::optional<IntVector> solve_in_lattice(const LatticeBasis& basis, std::span<const Integer> v) {
  if (v.size() != basis.ambient_dim) throw DimensionMismatch("solve_in_lattice: vector has wrong length");
  if (basis.dim() == 0) {
    for (const auto& x : v)
      if (x != 0) return std::nullopt;
    return IntVector{};
  }
  const RationalMatrix a = convert<Rational>(basis.vectors.transpose());
  std::vector<Rational> b(v.begin(), v.end());
  const auto x = solve_full_column_rank(a, b);
  if (!x) return std::nullopt;
  IntVector out;
  out.reserve(x->size());
  for (const auto& q : *x) {
    if (q.get_den() != 1) return std::nullopt;
    out.push_back(q.get_num());
  }
  return out;
}

RationalMatrix inverse(const RationalMatrix& m) {
  if (!m.square()) throw DimensionMismatch("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix a = m, inv = RationalMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && a(p, col) == 0) ++p;
    if (p == n) throw Error("inverse: singular matrix");
    a.swap_rows(p, col);
    inv.swap_rows(p, col);
    const Rational f = 1 / a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) *= f;
      inv(col, j) *= f;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col) == 0) continue;
      const Rational g = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= g * a(col, j);
        inv(i, j) -= g * inv(col, j);
      }
    }
  }
  return inv;
}

namespace {

// Congruence reduction of a nondegenerate integer skew matrix to
// diag(d_1 J, ..., d_k J) with d_1 | d_2 | ... Returns (D, T), T * A * T^T == D.
std::pair<IntMatrix, IntMatrix> skew_normal_form(const IntMatrix& a0) {
  IntMatrix a = a0;
  const std::size_t n = a.rows();
  IntMatrix t = IntMatrix::identity(n);

  // basis change e_dst += c * e_src
  auto add = [&](std::size_t dst, std::size_t src, const Integer& c) {
    if (c == 0) return;
    add_row_multiple(a, dst, src, c);
    add_col_multiple(a, dst, src, c);
    add_row_multiple(t, dst, src, c);
  };
  auto swap = [&](std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    a.swap_cols(i, j);
    t.swap_rows(i, j);
  };

  for (std::size_t s = 0; s + 1 < n; s += 2) {
    for (;;) {
      // Pivot: smallest absolute value, ties broken lexicographically.
      bool found = false;
      std::size_t pi = 0, pj = 0;
      for (std::size_t i = s; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (a(i, j) != 0 && (!found || abs(a(i, j)) < abs(a(pi, pj)))) {
            found = true;
            pi = i;
            pj = j;
          }
      if (!found) return {std::move(a), std::move(t)};
      swap(pi, s);
      swap(pj, s + 1);
      if (a(s, s + 1) < 0) swap(s, s + 1);
      const Integer p = a(s, s + 1);

      bool clean = true;
      for (std::size_t l = s + 2; l < n; ++l) {
        add(l, s + 1, -floor_div(a(s, l), p));
        if (a(s, l) != 0) clean = false;
        add(l, s, floor_div(a(s + 1, l), p));
        if (a(s + 1, l) != 0) clean = false;
      }
      if (!clean) continue;

      bool divisible = true;
      for (std::size_t i = s + 2; i < n && divisible; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (a(i, j) % p != 0) {
            add(s, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
  }
  return {std::move(a), std::move(t)};
}

}  // namespace

DarbouxBasis darboux_basis(const IntMatrix& skew) {
  if (!skew.is_skew_symmetric()) throw NotSkewSymmetric("darboux_basis: matrix is not skew-symmetric");
  const std::size_t n = skew.rows();
  const LatticeBasis image = image_lattice(skew);
  const std::size_t k2 = image.dim();
  if (k2 == 0) return {{n, IntMatrix(0, n), true}, {}};

  // B == U^T A U with A integral because U spans a saturated lattice.
  const RationalMatrix u = convert<Rational>(image.vectors);
  const RationalMatrix ut = u.transpose();
  const RationalMatrix gram_inv = inverse(u * ut);
  const IntMatrix form = rational_to_integer(gram_inv * u * convert<Rational>(skew) * ut * gram_inv);

  auto [normal, t] = skew_normal_form(form);
  const RationalMatrix t_inv = inverse(convert<Rational>(t));
  const IntMatrix vectors = rational_to_integer(t_inv.transpose() * u);

  DarbouxBasis out{{n, vectors, true}, {}};
  for (std::size_t m = 0; m + 1 < k2; m += 2) out.scales.push_back(normal(m, m + 1));
  if (wedge_reconstruction(out) != skew) throw std::logic_error("darboux_basis: reconstruction failed");
  return out;
}

IntMatrix wedge_reconstruction(const DarbouxBasis& d) {
  const std::size_t n = d.basis.ambient_dim;
  IntMatrix out(n, n);
  for (std::size_t m = 0; m < d.scales.size(); ++m) {
    const auto a = d.basis.vectors.row(2 * m);
    const auto b = d.basis.vectors.row(2 * m + 1);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(i, j) += d.scales[m] * (a[i] * b[j] - b[i] * a[j]);
  }
  return out;
}

bool RationalRowSpace::add_row(std::vector<Rational> row) {
  if (row.size() != cols_) throw DimensionMismatch("RationalRowSpace: row has wrong length");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Rational f = row[pivots_[r]];
    if (f == 0) continue;
    for (std::size_t j = 0; j < cols_; ++j)
      if (rows_[r][j] != 0) row[j] -= f * rows_[r][j];
  }
  std::size_t pivot = 0;
  while (pivot < cols_ && row[pivot] == 0) ++pivot;
  if (pivot == cols_) return false;
  const Rational inv = 1 / row[pivot];
  for (auto& x : row) x *= inv;
  for (auto& existing : rows_) {
    const Rational f = existing[pivot];
    if (f == 0) continue;
    for (std::size_t j = 0; j < cols_; ++j)
      if (row[j] != 0) existing[j] -= f * row[j];
  }
  rows_.push_back(std::move(row));
  pivots_.push_back(pivot);
  return true;
}

LatticeBasis RationalRowSpace::null_lattice() const {
  IntMatrix constraints(0, cols_);
  for (const auto& row : rows_) {
    Integer scale = 1;
    for (const auto& x : row) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), x.get_den_mpz_t());
    IntVector scaled;
    scaled.reserve(cols_);
    for (const auto& x : row) scaled.push_back(x.get_num() * (scale / x.get_den()));
    constraints.append_row(scaled);
  }
  return kernel_lattice(constraints);
}

}  // namespace cluster_reduce
