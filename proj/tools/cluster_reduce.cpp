// cluster-reduce: command line front end.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cluster_reduce/fixtures.hpp"
#include "cluster_reduce/io.hpp"
#include "cluster_reduce/pipeline.hpp"

namespace cr = cluster_reduce;
using cr::Json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 2;
constexpr int kExitInput = 3;

// Raised for failed checks; main maps it to exit code 2.
struct CheckFailed {
  Json report;
};

// "fixture:NAME[:KEY]" or a JSON file.
cr::IntMatrix load_matrix(const std::string& source) {
  if (source.rfind("fixture:", 0) == 0) {
    const std::string rest = source.substr(8);
    const auto colon = rest.find(':');
    const auto& fx = cr::fixture(rest.substr(0, colon));
    if (colon == std::string::npos) return fx.matrices.front().second;
    const std::string key = rest.substr(colon + 1);
    for (const auto& [name, m] : fx.matrices)
      if (name == key) return m;
    throw cr::Error("fixture " + fx.name + " has no matrix \"" + key + "\"");
  }
  return cr::matrix_from_json(cr::read_json_file(source));
}

cr::MonomialMap load_monomial_map(const std::string& path) {
  const Json j = cr::read_json_file(path);
  return cr::monomial_map_from_json(j.contains("pi") ? j.at("pi") : j);
}

std::vector<cr::Real> parse_real_point(const std::string& text) {
  std::vector<cr::Real> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_of(".eE") != std::string::npos) {
      try {
        out.emplace_back(item);
      } catch (const std::exception&) {
        throw cr::ParseError("not a number: \"" + item + "\"");
      }
    } else {
      out.push_back(cr::to_real(cr::rational_from_string(item)));
    }
  }
  if (out.empty()) throw cr::ParseError("empty start point");
  return out;
}

void emit(Json j, const std::string& out) {
  if (j.is_object() && !j.contains("schema")) {
    Json tagged{{"schema", cr::kSchemaVersion}};
    tagged.update(j);
    j = std::move(tagged);
  }
  if (out.empty())
    std::cout << j.dump(2) << "\n";
  else
    cr::write_json_file(out, j);
}

// Options shared by subcommands that start from an exchange matrix.
struct MatrixInput {
  std::string matrix, fixture;

  void add(CLI::App* app) {
    app->add_option("--matrix", matrix, "exchange matrix JSON file, or fixture:NAME[:KEY]");
    app->add_option("--fixture", fixture, "named fixture, optionally NAME:KEY");
  }
  bool given() const { return !matrix.empty() || !fixture.empty(); }
  cr::IntMatrix load() const {
    if (!matrix.empty() && !fixture.empty()) throw cr::Error("give either --matrix or --fixture, not both");
    if (!fixture.empty()) return load_matrix("fixture:" + fixture);
    if (matrix.empty()) throw cr::Error("an exchange matrix is required (--matrix or --fixture)");
    return load_matrix(matrix);
  }
};

cr::BirationalMap map_of_matrix(const cr::IntMatrix& b, std::size_t m_max) {
  const auto cert = cr::detect_period(b, m_max);
  if (!cert) throw CheckFailed{Json{{"schema", cr::kSchemaVersion}, {"error", "matrix is not mutation-periodic up to the bound"}}};
  return cr::cluster_map(b, *cert);
}

// The map comes from --map, or is built from the exchange matrix.
struct MapInput {
  std::string map;
  MatrixInput matrix;
  std::size_t m_max = 8;
  mutable std::optional<cr::IntMatrix> exchange;  // set when the map was built from a matrix

  void add(CLI::App* app) {
    app->add_option("--map", map, "map JSON file (component strings)");
    matrix.add(app);
    app->add_option("--max-m", m_max, "largest mutation period tried when building the map")->capture_default_str();
  }
  cr::BirationalMap load() const {
    if (!map.empty()) {
      if (matrix.given()) throw cr::Error("give either --map or an exchange matrix, not both");
      return cr::map_from_json(cr::read_json_file(map));
    }
    exchange = matrix.load();
    return map_of_matrix(*exchange, m_max);
  }
};

// Null submersion for a presymplectic input, Casimir submersion otherwise.
// The exchange matrix the map was built from always counts as presymplectic.
cr::Submersion structure_submersion(const cr::IntMatrix& m, const std::string& kind, const cr::BirationalMap* phi,
                                    const std::optional<cr::IntMatrix>& exchange, std::uint64_t seed,
                                    std::size_t samples) {
  std::string k = kind;
  if (k == "auto" && exchange && *exchange == m) k = "null";
  if (k == "auto") {
    if (!phi) throw cr::Error("--kind auto needs a map to test the structure against");
    if (cr::check_poisson_map(*phi, cr::PoissonStructure(m), samples, seed))
      k = "casimir";
    else if (cr::check_presymplectic_invariance(*phi, cr::PresymplecticForm(m), samples, seed))
      k = "null";
    else
      throw CheckFailed{Json{{"schema", cr::kSchemaVersion},
                             {"error", "structure is neither an invariant Poisson structure nor an invariant presymplectic form"}}};
  }
  if (cr::submersion_kind_from_string(k) == cr::SubmersionKind::null) return cr::null_submersion(cr::PresymplecticForm(m));
  return cr::casimir_submersion(cr::PoissonStructure(m));
}

cr::Submersion maybe_aligned(const cr::Submersion& s, const std::string& align) {
  if (align.empty()) return s;
  const cr::IntMatrix y = load_matrix(align);
  if (y.rows() < s.size()) throw cr::Error("alignment has fewer rows than the submersion");
  return cr::rebase_submersion(s, y.row_block(0, s.size()));
}

void require_positive(std::size_t v, const char* name) {
  if (v == 0) throw cr::Error(std::string(name) + " must be positive");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cluster maps from mutation-periodic quivers, their invariant structures, reductions and dynamics."};
  app.require_subcommand(1);
  app.set_version_flag("--version", "cluster-reduce 1.0.0");
  std::size_t precision = cr::kDefaultPrecisionDigits;
  std::string out;
  std::uint64_t seed = 42;

  // period
  auto* period = app.add_subcommand("period", "mutation period of an exchange matrix, or global period of a map");
  MatrixInput period_matrix;
  period_matrix.add(period);
  std::string period_map;
  std::size_t max_m = 8, max_p = 12, period_samples = 25;
  period->add_option("--map", period_map, "map JSON file; reports its global period instead");
  period->add_option("--max-m", max_m, "largest mutation period tried")->capture_default_str();
  period->add_option("--max", max_p, "largest global period tried for --map")->capture_default_str();
  period->add_option("--samples", period_samples, "sampled orbits screening candidate periods")->capture_default_str();
  period->add_option("--seed", seed, "sampling seed")->capture_default_str();
  period->add_option("--out", out, "write JSON here instead of stdout");

  // map
  auto* map = app.add_subcommand("map", "cluster map of a mutation-periodic exchange matrix");
  MatrixInput map_matrix;
  map_matrix.add(map);
  map->add_option("--max-m", max_m, "largest mutation period tried")->capture_default_str();
  map->add_option("--out", out, "write JSON here instead of stdout");

  // find-poisson
  auto* find = app.add_subcommand("find-poisson", "invariant log-canonical Poisson structures of a map");
  MapInput find_map;
  find_map.add(find);
  std::string compatible;
  std::size_t samples = 20;
  find->add_option("--compatible", compatible, "also require C * B == 0 for this exchange matrix");
  find->add_option("--seed", seed, "sampling seed")->capture_default_str();
  find->add_option("--samples", samples, "fresh points used to verify the basis")->capture_default_str();
  find->add_option("--out", out, "write JSON here instead of stdout");

  // reduce
  auto* reduce = app.add_subcommand("reduce", "reduced map on the leaf space of a structure's foliation");
  MapInput reduce_map;
  reduce_map.add(reduce);
  std::string structure, kind = "auto", align;
  reduce->add_option("--structure", structure, "Poisson matrix C or exchange matrix B (file or fixture:NAME[:KEY])")->required();
  reduce->add_option("--kind", kind, "null (presymplectic), casimir (Poisson) or auto")
      ->check(CLI::IsMember({"auto", "null", "casimir"}))
      ->capture_default_str();
  reduce->add_option("--align", align, "exponent rows to express the submersion in");
  reduce->add_option("--seed", seed, "sampling seed for --kind auto")->capture_default_str();
  reduce->add_option("--out", out, "write the reduced system JSON here instead of stdout");
  std::string submersion_out;
  reduce->add_option("--submersion-out", submersion_out, "also write the submersion JSON here");

  // flag
  auto* flag = app.add_subcommand("flag", "order submersions into a flag and chain their reductions");
  MapInput flag_map;
  flag_map.add(flag);
  std::vector<std::string> structures;
  flag->add_option("--structures", structures, "structure matrices (files or fixture:NAME[:KEY]), in any order")->required();
  flag->add_option("--kind", kind, "kind applied to every structure: null, casimir or auto")
      ->check(CLI::IsMember({"auto", "null", "casimir"}))
      ->capture_default_str();
  flag->add_option("--align", align, "exponent rows; leading rows rebase each level");
  flag->add_option("--seed", seed, "sampling seed for --kind auto")->capture_default_str();
  flag->add_option("--out", out, "write JSON here instead of stdout");

  // orbit
  auto* orbit = app.add_subcommand("orbit", "iterate a map from a start point");
  MapInput orbit_map;
  orbit_map.add(orbit);
  std::string start, mode = "exact";
  std::size_t steps = 20;
  orbit->add_option("--start", start, "comma separated positive coordinates, e.g. 1,3/2,2")->required();
  orbit->add_option("--steps", steps, "number of iterations")->capture_default_str();
  orbit->add_option("--mode", mode, "exact or float")->check(CLI::IsMember({"exact", "float"}))->capture_default_str();
  orbit->add_option("--precision", precision, "decimal digits for float mode");
  orbit->add_option("--out", out, "write JSON here instead of stdout");

  // itinerary
  auto* itinerary = app.add_subcommand("itinerary", "leaf labels of an orbit under one or more submersions");
  MapInput itinerary_map;
  itinerary_map.add(itinerary);
  std::vector<std::string> submersions;
  double tol_exponent = 0;
  itinerary->add_option("--submersions", submersions, "submersion, monomial map or reduced system JSON files")->required();
  itinerary->add_option("--start", start, "comma separated positive coordinates")->required();
  itinerary->add_option("--steps", steps, "number of iterations")->capture_default_str();
  itinerary->add_option("--mode", mode, "exact or float")->check(CLI::IsMember({"exact", "float"}))->capture_default_str();
  itinerary->add_option("--precision", precision, "decimal digits for float mode");
  itinerary->add_option("--tol-digits", tol_exponent, "float label tolerance 10^-D (default: half the precision)");
  itinerary->add_option("--out", out, "write JSON here instead of stdout");

  // verify
  auto* verify = app.add_subcommand("verify", "check invariance, reduction and first-integral claims");
  MapInput verify_map;
  verify_map.add(verify);
  std::string system, presymplectic, poisson, integral;
  std::size_t integral_period = 0;
  verify->add_option("--system", system, "reduced system JSON; checks psi o pi == pi o phi");
  verify->add_option("--presymplectic", presymplectic, "exchange matrix; checks invariance of the 2-form");
  verify->add_option("--poisson", poisson, "Poisson matrix; checks the map is Poisson");
  verify->add_option("--first-integral", integral, "submersion or reduced system JSON whose pi is checked");
  verify->add_option("--period", integral_period, "iterate used by --first-integral");
  verify->add_option("--seed", seed, "sampling seed")->capture_default_str();
  verify->add_option("--samples", samples, "points per sampled check")->capture_default_str();
  verify->add_option("--out", out, "write JSON here instead of stdout");

  // pipeline
  auto* pipeline = app.add_subcommand("pipeline", "run the whole reduce-and-analyze workflow");
  MatrixInput pipeline_matrix;
  pipeline_matrix.add(pipeline);
  std::vector<std::string> extra;
  std::string out_dir;
  bool json = false;
  cr::WorkflowConfig config;
  pipeline->add_option("--structures", extra, "additional Poisson matrices to try first");
  pipeline->add_option("--align", align, "exponent rows used to express the submersions");
  pipeline->add_option("--seed", seed, "seed of every sampled check")->capture_default_str();
  pipeline->add_option("--max-m", config.m_max, "largest mutation period tried")->capture_default_str();
  pipeline->add_option("--max-period", config.p_max, "largest global period tried")->capture_default_str();
  pipeline->add_option("--scan-max-period", config.scan_p_max, "period bound of the periodic point scan")->capture_default_str();
  pipeline->add_option("--samples", config.samples, "points per sampled check")->capture_default_str();
  pipeline->add_option("--scan-samples", config.scan_samples, "starts in the periodic point scan")->capture_default_str();
  pipeline->add_option("--starts", config.itinerary_starts, "orbits in the itinerary taxonomy")->capture_default_str();
  pipeline->add_option("--steps", config.itinerary_steps, "steps per itinerary orbit")->capture_default_str();
  pipeline->add_option("--precision", precision, "decimal digits of float computations");
  pipeline->add_option("--out-dir", out_dir, "write report.json and summary.txt here");
  pipeline->add_flag("--json", json, "print the JSON report instead of the summary");

  // fixtures
  auto* fixtures_cmd = app.add_subcommand("fixtures", "list, show or export the embedded fixtures");
  std::string show, write_dir;
  fixtures_cmd->add_option("--show", show, "print one fixture as JSON");
  fixtures_cmd->add_option("--write-dir", write_dir, "write every fixture matrix as NAME[-KEY].json");

  try {
    precision = cr::precision_from_environment();
  } catch (const cr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (precision < 10) throw cr::Error("precision must be at least 10 digits");
    cr::ScopedPrecision scoped(static_cast<unsigned>(precision));

    if (period->parsed()) {
      require_positive(max_m, "--max-m");
      require_positive(max_p, "--max");
      if (!period_map.empty()) {
        const auto f = cr::map_from_json(cr::read_json_file(period_map));
        Json j = cr::period_report_to_json(cr::detect_global_periodicity(f, max_p, seed, period_samples));
        j["schema"] = cr::kSchemaVersion;
        emit(j, out);
      } else {
        const auto b = period_matrix.load();
        emit(cr::certificate_to_json(cr::detect_period(b, max_m), max_m), out);
      }
    } else if (map->parsed()) {
      require_positive(max_m, "--max-m");
      emit(cr::map_to_json(map_of_matrix(map_matrix.load(), max_m)), out);
    } else if (find->parsed()) {
      const auto phi = find_map.load();
      std::optional<cr::IntMatrix> b;
      if (!compatible.empty()) b = load_matrix(compatible);
      const auto search = cr::find_invariant_poisson(phi, b, seed, samples);
      Json basis = Json::array();
      for (const auto& c : search.basis) basis.push_back(cr::matrix_to_json(c));
      Json j{{"schema", cr::kSchemaVersion},
             {"seed", seed},
             {"compatible_with", b ? cr::matrix_to_json(*b) : Json(nullptr)},
             {"dimension", search.basis.size()},
             {"basis", std::move(basis)},
             {"points_used", search.points_used},
             {"verified", search.verified}};
      emit(j, out);
      if (!search.verified) return kExitVerification;
    } else if (reduce->parsed()) {
      const auto phi = reduce_map.load();
      const auto s = maybe_aligned(structure_submersion(load_matrix(structure), kind, &phi, reduce_map.exchange, seed, samples), align);
      const auto r = cr::derive_reduced_map(phi, s);
      if (!submersion_out.empty()) cr::write_json_file(submersion_out, cr::submersion_to_json(s));
      emit(cr::reduced_system_to_json(r), out);
      if (!r.verified) return kExitVerification;
    } else if (flag->parsed()) {
      std::optional<cr::BirationalMap> phi;
      if (!flag_map.map.empty() || flag_map.matrix.given()) phi = flag_map.load();
      std::vector<cr::Submersion> subs;
      for (const auto& s : structures)
        subs.push_back(maybe_aligned(structure_submersion(load_matrix(s), kind, phi ? &*phi : nullptr, flag_map.exchange, seed, samples), align));
      const auto f = cr::build_flag(subs);
      Json j = cr::flag_to_json(f);
      bool ok = true;
      if (phi) {
        std::vector<cr::ReducedSystem> reduced;
        Json systems = Json::array();
        for (const auto& level : f.levels) {
          reduced.push_back(cr::derive_reduced_map(*phi, level));
          systems.push_back(cr::reduced_system_to_json(reduced.back()));
          ok = ok && reduced.back().verified;
        }
        Json chained = Json::array();
        for (std::size_t i = 0; i + 1 < reduced.size(); ++i) {
          bool v = false;
          try {
            v = cr::chained_reduction(reduced[i], reduced[i + 1], f.projections[i]).verified;
          } catch (const cr::VerificationFailure&) {
          }
          ok = ok && v;
          chained.push_back(Json{{"outer", i}, {"inner", i + 1}, {"verified", v}});
        }
        j["reduced_systems"] = std::move(systems);
        j["chained_reductions"] = std::move(chained);
      }
      emit(j, out);
      if (!ok) return kExitVerification;
    } else if (orbit->parsed()) {
      const auto f = orbit_map.load();
      Json j{{"schema", cr::kSchemaVersion}, {"mode", mode}, {"steps", steps}};
      Json points = Json::array();
      if (mode == "exact") {
        for (const auto& p : cr::iterate_orbit(f, cr::parse_point(start), steps).points)
          points.push_back(cr::rationals_to_json(p));
      } else {
        j["precision"] = precision;
        for (const auto& p : cr::iterate_orbit(f, parse_real_point(start), steps).points)
          points.push_back(cr::reals_to_json(p, static_cast<unsigned>(precision)));
      }
      j["points"] = std::move(points);
      emit(j, out);
    } else if (itinerary->parsed()) {
      const auto f = itinerary_map.load();
      std::vector<cr::MonomialMap> pis;
      for (const auto& s : submersions) pis.push_back(load_monomial_map(s));
      Json j{{"schema", cr::kSchemaVersion}, {"mode", mode}, {"steps", steps}};
      Json levels = Json::array();
      if (mode == "exact") {
        const auto it = cr::leaf_itinerary(f, pis, cr::parse_point(start), steps);
        for (std::size_t i = 0; i < pis.size(); ++i) {
          Json labels = Json::array();
          for (const auto& l : it.labels[i]) labels.push_back(cr::rationals_to_json(l));
          levels.push_back(Json{{"submersion", submersions[i]},
                                {"label_period", it.periods[i] ? Json(*it.periods[i]) : Json(nullptr)},
                                {"labels", std::move(labels)}});
        }
      } else {
        const double d = tol_exponent > 0 ? tol_exponent : static_cast<double>(precision) / 2;
        const cr::Real tol = pow(cr::Real(10), cr::Real(-d));
        j["precision"] = precision;
        j["tolerance"] = cr::to_decimal(tol, 6);
        const auto it = cr::leaf_itinerary(f, pis, parse_real_point(start), steps, tol);
        const unsigned digits = static_cast<unsigned>(precision);
        for (std::size_t i = 0; i < pis.size(); ++i) {
          Json labels = Json::array();
          for (const auto& l : it.labels[i]) labels.push_back(cr::reals_to_json(l, digits));
          levels.push_back(Json{{"submersion", submersions[i]},
                                {"label_period", it.periods[i] ? Json(*it.periods[i]) : Json(nullptr)},
                                {"max_label_drift", cr::to_decimal(cr::max_label_drift(it.labels[i]), 6)},
                                {"labels", std::move(labels)}});
        }
      }
      j["submersions"] = std::move(levels);
      emit(j, out);
    } else if (verify->parsed()) {
      const auto phi = verify_map.load();
      Json checks = Json::array();
      bool ok = true;
      auto record = [&](Json c, bool passed) {
        c["passed"] = passed;
        ok = ok && passed;
        checks.push_back(std::move(c));
      };
      if (!system.empty()) {
        const auto r = cr::reduced_system_from_json(cr::read_json_file(system));
        const auto pi = r.pi.to_birational();
        record(Json{{"check", "reduction"}, {"file", system}, {"symbolic", true}},
               cr::compose(r.psi, pi) == cr::compose(pi, phi));
      }
      if (!presymplectic.empty()) {
        const auto c = cr::check_presymplectic_invariance(phi, cr::PresymplecticForm(load_matrix(presymplectic)), samples, seed);
        Json j = cr::point_check_to_json(c);
        j["check"] = "presymplectic_invariance";
        record(std::move(j), c.passed);
      }
      if (!poisson.empty()) {
        const auto c = cr::check_poisson_map(phi, cr::PoissonStructure(load_matrix(poisson)), samples, seed);
        Json j = cr::point_check_to_json(c);
        j["check"] = "poisson_map";
        record(std::move(j), c.passed);
      }
      if (!integral.empty()) {
        require_positive(integral_period, "--period");
        record(Json{{"check", "first_integral"}, {"file", integral}, {"period", integral_period}, {"symbolic", true}},
               cr::first_integral_check(phi, load_monomial_map(integral), integral_period));
      }
      if (checks.empty()) throw cr::Error("nothing to verify: give --system, --presymplectic, --poisson or --first-integral");
      emit(Json{{"schema", cr::kSchemaVersion}, {"passed", ok}, {"checks", std::move(checks)}}, out);
      if (!ok) return kExitVerification;
    } else if (pipeline->parsed()) {
      if (!pipeline_matrix.fixture.empty() && pipeline_matrix.matrix.empty()) {
        const std::string name = pipeline_matrix.fixture.substr(0, pipeline_matrix.fixture.find(':'));
        try {
          const auto fixture_config = cr::config_for_fixture(name);
          config.extra_structures = fixture_config.extra_structures;
          config.alignment = fixture_config.alignment;
        } catch (const cr::Error&) {
          // Fixtures without a preset run from the matrix alone.
        }
      }
      config.matrix = pipeline_matrix.load();
      config.label = !pipeline_matrix.fixture.empty() ? pipeline_matrix.fixture : pipeline_matrix.matrix;
      for (const auto& s : extra) config.extra_structures.push_back(load_matrix(s));
      if (!align.empty()) config.alignment = load_matrix(align);
      config.seed = seed;
      config.precision = static_cast<unsigned>(precision);
      for (auto v : {config.m_max, config.p_max, config.scan_p_max, config.samples, config.itinerary_steps})
        require_positive(v, "bounds and sample counts");
      if (!config.matrix.is_skew_symmetric()) throw cr::NotSkewSymmetric("exchange matrix is not skew-symmetric");
      const Json report = cr::run_pipeline(config);
      const std::string summary = cr::render_summary(report);
      if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        cr::write_json_file((std::filesystem::path(out_dir) / "report.json").string(), report);
        std::ofstream((std::filesystem::path(out_dir) / "summary.txt").string()) << summary;
      }
      if (json)
        std::cout << report.dump(2) << "\n";
      else
        std::cout << summary;
      if (!report["errors"].empty()) return kExitVerification;
    } else if (fixtures_cmd->parsed()) {
      auto fixture_json = [](const cr::Fixture& f) {
        Json matrices = Json::object();
        for (const auto& [k, m] : f.matrices) matrices[k] = cr::matrix_to_json(m);
        return Json{{"schema", cr::kSchemaVersion},
                    {"name", f.name},
                    {"description", f.description},
                    {"matrices", std::move(matrices)}};
      };
      if (!show.empty()) {
        std::cout << fixture_json(cr::fixture(show)).dump(2) << "\n";
      } else if (!write_dir.empty()) {
        std::filesystem::create_directories(write_dir);
        for (const auto& f : cr::fixtures())
          for (const auto& [k, m] : f.matrices) {
            const std::string file = f.matrices.size() == 1 ? f.name : f.name + "-" + k;
            cr::write_json_file((std::filesystem::path(write_dir) / (file + ".json")).string(), cr::matrix_to_json(m));
          }
      } else {
        for (const auto& f : cr::fixtures()) {
          std::cout << f.name << "\t" << f.description << "\t[";
          for (std::size_t i = 0; i < f.matrices.size(); ++i) std::cout << (i ? " " : "") << f.matrices[i].first;
          std::cout << "]\n";
        }
      }
    }
  } catch (const CheckFailed& f) {
    std::cout << f.report.dump(2) << "\n";
    return kExitVerification;
  } catch (const cr::NotReducible& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kExitVerification;
  } catch (const cr::NotFiberConstant& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kExitVerification;
  } catch (const cr::NotAChain& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kExitVerification;
  } catch (const cr::VerificationFailure& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kExitVerification;
  } catch (const cr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Json::exception& e) {
    std::cerr << "error: malformed JSON input: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
