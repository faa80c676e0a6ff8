#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cluster_reduce/fixtures.hpp"
#include "cluster_reduce/io.hpp"
#include "cluster_reduce/pipeline.hpp"

namespace py = pybind11;
namespace cr = cluster_reduce;

namespace {

using PyMatrix = std::vector<std::vector<py::int_>>;

py::int_ to_py(const cr::Integer& z) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(z.get_str().c_str(), nullptr, 10));
}

py::object to_py(const cr::Rational& q) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_py(q.get_num()), to_py(q.get_den()));
}

cr::Integer integer_of(const py::handle& h) { return cr::Integer(py::str(h).cast<std::string>()); }

cr::IntMatrix matrix_of(const PyMatrix& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  cr::IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw cr::DimensionMismatch("ragged matrix");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = integer_of(rows[i][j]);
  }
  return m;
}

PyMatrix to_py(const cr::IntMatrix& m) {
  PyMatrix rows(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i].push_back(to_py(m(i, j)));
  return rows;
}

// Accepts ints, Fractions and strings such as "3/2".
std::vector<cr::Rational> point_of(const py::sequence& xs) {
  std::vector<cr::Rational> out;
  for (const auto& x : xs) out.push_back(cr::rational_from_string(py::str(x).cast<std::string>()));
  return out;
}

cr::BirationalMap map_of(const std::vector<std::string>& components, std::size_t dim) {
  return cr::BirationalMap::parse(components, dim);
}

py::object to_py(const cr::Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

cr::Submersion submersion_of(const PyMatrix& structure, const std::string& kind, const std::optional<PyMatrix>& align) {
  const auto m = matrix_of(structure);
  cr::Submersion s = cr::submersion_kind_from_string(kind) == cr::SubmersionKind::null
                         ? cr::null_submersion(cr::PresymplecticForm(m))
                         : cr::casimir_submersion(cr::PoissonStructure(m));
  if (align) s = cr::rebase_submersion(s, matrix_of(*align).row_block(0, s.size()));
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cluster maps, invariant log-canonical structures, reductions and their dynamics.";

  py::register_exception<cr::Error>(m, "Error", PyExc_ValueError);
  m.attr("SCHEMA") = cr::kSchemaVersion;

  m.def("mutate", [](const PyMatrix& b, std::size_t k) { return to_py(cr::mutate_matrix(matrix_of(b), k)); },
        py::arg("b"), py::arg("k"), "Matrix mutation at node k (1-based).");

  m.def(
      "detect_period",
      [](const PyMatrix& b, std::size_t m_max) -> std::optional<std::size_t> {
        const auto cert = cr::detect_period(matrix_of(b), m_max);
        if (!cert) return std::nullopt;
        return cert->period;
      },
      py::arg("b"), py::arg("m_max") = 8, "Smallest mutation period up to m_max, or None.");

  m.def(
      "cluster_map",
      [](const PyMatrix& b, std::size_t m_max) {
        const auto mat = matrix_of(b);
        const auto cert = cr::detect_period(mat, m_max);
        if (!cert) throw cr::Error("matrix is not mutation-periodic up to the bound");
        return cr::cluster_map(mat, *cert).to_strings();
      },
      py::arg("b"), py::arg("m_max") = 8, "Components of the cluster map as strings in x1, x2, ...");

  m.def(
      "check_presymplectic_invariance",
      [](const std::vector<std::string>& phi, const PyMatrix& b, std::size_t samples, std::uint64_t seed) {
        const auto mat = matrix_of(b);
        return cr::check_presymplectic_invariance(map_of(phi, mat.rows()), cr::PresymplecticForm(mat), samples, seed).passed;
      },
      py::arg("phi"), py::arg("b"), py::arg("samples") = 20, py::arg("seed") = 42);

  m.def(
      "check_poisson_map",
      [](const std::vector<std::string>& phi, const PyMatrix& c, std::size_t samples, std::uint64_t seed) {
        const auto mat = matrix_of(c);
        return cr::check_poisson_map(map_of(phi, mat.rows()), cr::PoissonStructure(mat), samples, seed).passed;
      },
      py::arg("phi"), py::arg("c"), py::arg("samples") = 20, py::arg("seed") = 42);

  m.def(
      "find_invariant_poisson",
      [](const std::vector<std::string>& phi, std::optional<PyMatrix> compatible, std::uint64_t seed) {
        std::optional<cr::IntMatrix> b;
        if (compatible) b = matrix_of(*compatible);
        const auto search = cr::find_invariant_poisson(map_of(phi, 0), b, seed);
        std::vector<PyMatrix> basis;
        for (const auto& c : search.basis) basis.push_back(to_py(c));
        return basis;
      },
      py::arg("phi"), py::arg("compatible") = py::none(), py::arg("seed") = 42,
      "Integer basis of the invariant log-canonical Poisson matrices.");

  m.def(
      "reduce",
      [](const std::vector<std::string>& phi, const PyMatrix& structure, const std::string& kind,
         std::optional<PyMatrix> align) {
        const auto s = submersion_of(structure, kind, align);
        return to_py(cr::reduced_system_to_json(cr::derive_reduced_map(map_of(phi, s.ambient_dim()), s)));
      },
      py::arg("phi"), py::arg("structure"), py::arg("kind") = "casimir", py::arg("align") = py::none(),
      "Reduced system {'psi', 'pi', 'verified', ...}; kind is 'null' for an exchange matrix.");

  m.def(
      "global_period",
      [](const std::vector<std::string>& f, std::size_t p_max, std::uint64_t seed) -> std::optional<std::size_t> {
        const auto r = cr::detect_global_periodicity(map_of(f, 0), p_max, seed);
        if (r.kind != cr::PeriodKind::global) return std::nullopt;
        return r.period;
      },
      py::arg("f"), py::arg("p_max") = 12, py::arg("seed") = 0, "Certified global period up to p_max, or None.");

  m.def(
      "orbit",
      [](const std::vector<std::string>& f, const py::sequence& start, std::size_t steps) {
        const auto x0 = point_of(start);
        const auto o = cr::iterate_orbit(map_of(f, x0.size()), x0, steps);
        py::list points;
        for (const auto& p : o.points) {
          py::list row;
          for (const auto& q : p) row.append(to_py(q));
          points.append(row);
        }
        return points;
      },
      py::arg("f"), py::arg("start"), py::arg("steps"), "Exact orbit as lists of Fractions.");

  m.def(
      "fixed_points",
      [](const std::vector<std::string>& f, const py::sequence& lower, const py::sequence& upper, unsigned precision) {
        cr::ScopedPrecision scope(precision);
        const cr::SearchBox box{point_of(lower), point_of(upper)};
        const auto pts = cr::find_periodic_points(map_of(f, box.lower.size()), 1, box, precision);
        return to_py(cr::periodic_points_to_json(pts, precision));
      },
      py::arg("f"), py::arg("lower"), py::arg("upper"), py::arg("precision") = cr::kDefaultPrecisionDigits,
      "Fixed points in a box, coordinates as decimal strings.");

  m.def("hermite_normal_form", [](const PyMatrix& a) {
    const auto h = cr::hermite_normal_form(matrix_of(a));
    return py::make_tuple(to_py(h.H), to_py(h.U));
  });
  m.def("smith_normal_form", [](const PyMatrix& a) {
    const auto s = cr::smith_normal_form(matrix_of(a));
    return py::make_tuple(to_py(s.S), to_py(s.U), to_py(s.V));
  });

  m.def("fixtures", [] {
    py::dict out;
    for (const auto& f : cr::fixtures()) {
      py::dict mats;
      for (const auto& [k, mat] : f.matrices) mats[py::str(k)] = to_py(mat);
      out[py::str(f.name)] = mats;
    }
    return out;
  });

  m.def(
      "run_pipeline",
      [](std::optional<std::string> fixture, std::optional<PyMatrix> matrix, std::uint64_t seed) {
        cr::WorkflowConfig config;
        if (fixture) config = cr::config_for_fixture(*fixture);
        if (matrix) config.matrix = matrix_of(*matrix);
        if (!fixture && !matrix) throw cr::Error("give a fixture name or a matrix");
        config.seed = seed;
        py::gil_scoped_release release;
        const auto report = cr::run_pipeline(config);
        py::gil_scoped_acquire acquire;
        return to_py(report);
      },
      py::arg("fixture") = py::none(), py::arg("matrix") = py::none(), py::arg("seed") = 42,
      "Full analysis report as a dict.");
}
