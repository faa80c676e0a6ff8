#include "cluster_reduce/io.hpp"

#include <fstream>
#include <sstream>

namespace cluster_reduce {

namespace {

Integer integer_from_json(const Json& j) {
  try {
    if (j.is_string()) return Integer(j.get<std::string>());
    if (j.is_number_integer()) return Integer(j.get<long>());
  } catch (const std::invalid_argument&) {
  }
  throw ParseError("expected an integer (JSON number or decimal string), got " + j.dump());
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Json int_rows(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_si());
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMatrix rows_to_matrix(const Json& rows, std::size_t cols_hint) {
  if (!rows.is_array()) throw ParseError("expected an array of rows");
  const std::size_t cols = rows.empty() ? cols_hint : rows.front().size();
  IntMatrix m(0, cols);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != cols) throw ParseError("ragged or malformed matrix row");
    IntVector v;
    for (const auto& x : row) v.push_back(integer_from_json(x));
    m.append_row(std::span<const Integer>(v));
  }
  return m;
}

}  // namespace

Json matrix_to_json(const IntMatrix& m) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
    entries.push_back(std::move(row));
  }
  return Json{{"schema", kSchemaVersion}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

IntMatrix matrix_from_json(const Json& j) {
  if (j.is_array()) return rows_to_matrix(j, 0);
  if (j.is_object() && j.contains("matrix")) return matrix_from_json(j.at("matrix"));
  const Json& entries = require(j, "entries");
  const std::size_t cols = j.contains("cols") ? j.at("cols").get<std::size_t>() : 0;
  IntMatrix m = rows_to_matrix(entries, cols);
  if (j.contains("rows") && j.at("rows").get<std::size_t>() != m.rows())
    throw ParseError("matrix \"rows\" disagrees with the entries");
  if (j.contains("cols") && j.at("cols").get<std::size_t>() != m.cols())
    throw ParseError("matrix \"cols\" disagrees with the entries");
  return m;
}

std::string rational_to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

Rational rational_from_string(const std::string& s) {
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0) throw ParseError("not a rational number: \"" + s + "\"");
  q.canonicalize();
  return q;
}

Json rationals_to_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(rational_to_string(q));
  return out;
}

Json reals_to_json(const std::vector<Real>& v, unsigned digits) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_decimal(x, digits));
  return out;
}

Json map_to_json(const BirationalMap& f, const std::string& prefix) {
  return Json{{"schema", kSchemaVersion}, {"dim", f.dim_in()}, {"components", f.to_strings(prefix)}};
}

BirationalMap map_from_json(const Json& j) {
  const Json& comps = j.is_array() ? j : (j.contains("psi") ? j.at("psi") : require(j, "components"));
  if (!comps.is_array()) throw ParseError("map components must be an array of strings");
  std::vector<std::string> strings;
  for (const auto& c : comps) {
    if (!c.is_string()) throw ParseError("map component is not a string: " + c.dump());
    strings.push_back(c.get<std::string>());
  }
  std::size_t dim = 0;
  if (j.is_object() && j.contains("dim")) dim = j.at("dim").get<std::size_t>();
  return BirationalMap::parse(strings, dim);
}

Json monomial_map_to_json(const MonomialMap& m) {
  return Json{{"dim", m.dim_in()}, {"exponents", int_rows(m.exponents())}};
}

MonomialMap monomial_map_from_json(const Json& j) {
  const std::size_t dim = j.contains("dim") ? j.at("dim").get<std::size_t>() : 0;
  return MonomialMap(rows_to_matrix(require(j, "exponents"), dim));
}

Json submersion_to_json(const Submersion& s) {
  Json scales = Json::array();
  for (const auto& l : s.scales) scales.push_back(l.get_str());
  return Json{{"schema", kSchemaVersion},
              {"kind", to_string(s.kind)},
              {"dim", s.ambient_dim()},
              {"exponents", int_rows(s.map.exponents())},
              {"scales", std::move(scales)},
              {"not_a_reduction", s.not_a_reduction},
              {"saturation_index", s.saturation_index.get_str()},
              {"structure", matrix_to_json(s.structure)}};
}

Submersion submersion_from_json(const Json& j) {
  Submersion s;
  s.map = monomial_map_from_json(j);
  s.kind = submersion_kind_from_string(require(j, "kind").get<std::string>());
  if (j.contains("structure")) s.structure = matrix_from_json(j.at("structure"));
  if (j.contains("scales"))
    for (const auto& l : j.at("scales")) s.scales.push_back(integer_from_json(l));
  s.not_a_reduction = j.value("not_a_reduction", false);
  if (j.contains("saturation_index")) s.saturation_index = integer_from_json(j.at("saturation_index"));
  return s;
}

Json reduced_system_to_json(const ReducedSystem& r) {
  return Json{{"schema", kSchemaVersion},
              {"psi", r.psi.to_strings("y")},
              {"pi", monomial_map_to_json(r.pi)},
              {"verified", r.verified},
              {"not_a_reduction", r.not_a_reduction}};
}

ReducedSystem reduced_system_from_json(const Json& j) {
  ReducedSystem r;
  r.pi = monomial_map_from_json(require(j, "pi"));
  std::vector<std::string> comps;
  for (const auto& c : require(j, "psi")) comps.push_back(c.get<std::string>());
  r.psi = BirationalMap::parse(comps, r.pi.dim_out());
  r.verified = j.value("verified", false);
  r.not_a_reduction = j.value("not_a_reduction", false);
  return r;
}

Json certificate_to_json(const std::optional<PeriodicityCertificate>& cert, std::size_t m_max) {
  if (!cert) return Json{{"periodic", false}, {"max_m", m_max}};
  return Json{{"periodic", true}, {"period", cert->period}, {"mutation_sequence", cert->mutation_sequence},
              {"permutation", "cyclic shift"}};
}

Json point_check_to_json(const PointCheck& c) {
  Json out{{"passed", c.passed}, {"points_checked", c.points_checked}, {"seed", c.seed}};
  if (c.witness) out["witness"] = rationals_to_json(*c.witness);
  return out;
}

Json period_report_to_json(const PeriodReport& r) {
  Json out{{"kind", r.kind == PeriodKind::global ? "global" : "none_up_to"}, {"bound", r.bound}};
  if (r.kind == PeriodKind::global) out["period"] = r.period;
  out["certificate"] = r.symbolic ? "symbolic" : "sampled";
  out["samples"] = r.samples;
  out["seed"] = r.seed;
  return out;
}

Json periodic_points_to_json(const std::vector<PeriodicPoint>& pts, unsigned digits) {
  Json out = Json::array();
  for (const auto& p : pts)
    out.push_back(Json{{"point", reals_to_json(p.point, digits)},
                       {"period", p.period},
                       {"residual", to_decimal(p.residual, 6)},
                       {"drift_under_doubling", to_decimal(p.drift, 6)}});
  return out;
}

Json scan_report_to_json(const ScanReport& r, unsigned digits) {
  Json samples = Json::array();
  for (const auto& s : r.samples) {
    Json js{{"start", rationals_to_json(s.start)}, {"escaping", s.escaping}, {"growth_run", s.growth_run}};
    js["period"] = s.period ? Json(*s.period) : Json(nullptr);
    js["exact_steps"] = s.exact_steps;
    js["float_return_candidate"] = s.float_return_candidate ? Json(*s.float_return_candidate) : Json(nullptr);
    js["last_ratios"] = reals_to_json(s.last_ratios, digits);
    samples.push_back(std::move(js));
  }
  Json out{{"p_max", r.p_max}, {"seed", r.seed}, {"growth_steps", r.growth_steps}};
  out["period_found"] = r.period_found ? Json(*r.period_found) : Json(nullptr);
  out["all_escaping"] = r.all_escaping;
  out["note"] = r.note;
  out["samples"] = std::move(samples);
  return out;
}

Json flag_to_json(const Flag& f) {
  Json levels = Json::array();
  for (std::size_t i = 0; i < f.levels.size(); ++i) {
    Json level = submersion_to_json(f.levels[i]);
    level["input_index"] = f.order.empty() ? i : f.order[i];
    levels.push_back(std::move(level));
  }
  Json projections = Json::array();
  for (const auto& p : f.projections) projections.push_back(monomial_map_to_json(p));
  return Json{{"schema", kSchemaVersion},
              {"order", "coarsest to finest"},
              {"levels", std::move(levels)},
              {"projections", std::move(projections)}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << '\n';
}

std::vector<Rational> parse_point(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw ParseError("empty coordinate in \"" + text + "\"");
    out.push_back(rational_from_string(item.substr(first, last - first + 1)));
  }
  if (out.empty()) throw ParseError("empty point");
  return out;
}

}  // namespace cluster_reduce
