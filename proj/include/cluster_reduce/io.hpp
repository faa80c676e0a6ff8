#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cluster_reduce/dynamics.hpp"
#include "cluster_reduce/geometry.hpp"
#include "cluster_reduce/quiver.hpp"

namespace cluster_reduce {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "v1";

/// {"schema": "v1", "rows": r, "cols": c, "entries": [["1", "-2"], ...]}; integers are
/// written as decimal strings and accepted as strings or JSON numbers.
Json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);

std::string rational_to_string(const Rational& q);
Rational rational_from_string(const std::string& s);
Json rationals_to_json(const std::vector<Rational>& v);
Json reals_to_json(const std::vector<Real>& v, unsigned digits);

/// {"schema": "v1", "dim": n, "components": [...]} with variables named
/// prefix1, prefix2, ...; a bare array of strings is also accepted.
Json map_to_json(const BirationalMap& f, const std::string& prefix = "x");
BirationalMap map_from_json(const Json& j);

Json monomial_map_to_json(const MonomialMap& m);
MonomialMap monomial_map_from_json(const Json& j);

Json submersion_to_json(const Submersion& s);
Submersion submersion_from_json(const Json& j);

Json reduced_system_to_json(const ReducedSystem& r);
ReducedSystem reduced_system_from_json(const Json& j);

Json certificate_to_json(const std::optional<PeriodicityCertificate>& cert, std::size_t m_max);
Json point_check_to_json(const PointCheck& c);
Json period_report_to_json(const PeriodReport& r);
Json periodic_points_to_json(const std::vector<PeriodicPoint>& pts, unsigned digits);
Json scan_report_to_json(const ScanReport& r, unsigned digits);
Json flag_to_json(const Flag& f);

/// Reads a whole file; throws Error when it cannot be opened or parsed.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

/// Comma separated positive rationals, e.g. "1,3/2,2".
std::vector<Rational> parse_point(const std::string& text);

}  // namespace cluster_reduce
