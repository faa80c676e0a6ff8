#include "cluster_reduce/pipeline.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "cluster_reduce/fixtures.hpp"
#include "cluster_reduce/sampling.hpp"

namespace cluster_reduce {

WorkflowConfig config_for_fixture(const std::string& name) {
  WorkflowConfig c;
  c.label = name;
  if (name == "somos5" || name == "somos5-poisson" || name == "somos5-y") {
    c.matrix = five_node_matrix(1, 1);
    c.extra_structures = {somos5_poisson_matrix()};
    c.alignment = somos5_y_exponents();
  } else if (name == "five-node-r1-s2") {
    c.matrix = five_node_matrix(1, 2);
  } else if (name == "c7" || name == "c7-pair" || name == "c7-y") {
    c.matrix = seven_node_matrix();
    c.extra_structures = {seven_node_poisson_matrix(1), seven_node_poisson_matrix(2)};
    c.alignment = seven_node_y_exponents();
  } else {
    throw Error("no pipeline configuration for fixture \"" + name + "\"");
  }
  return c;
}

namespace {

// Seeds of derived streams stay disjoint from the base stream.
constexpr std::uint64_t kItineraryOffset = 1'000'000;

struct Candidate {
  Submersion submersion;
  std::string source;
};

std::vector<IntVector> small_combinations(std::size_t k) {
  std::vector<IntVector> out;
  if (k == 0) return out;
  if (k > 3) {
    for (std::size_t i = 0; i < k; ++i) {
      IntVector v(k, 0);
      v[i] = 1;
      out.push_back(v);
    }
    return out;
  }
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= 5;
  for (std::size_t code = 0; code < total; ++code) {
    IntVector v(k);
    std::size_t c = code;
    for (std::size_t i = 0; i < k; ++i) {
      v[i] = static_cast<long>(c % 5) - 2;
      c /= 5;
    }
    auto first = std::find_if(v.begin(), v.end(), [](const Integer& x) { return x != 0; });
    if (first == v.end() || *first < 0) continue;
    out.push_back(v);
  }
  auto weight = [](const IntVector& v) {
    Integer w = 0;
    for (const auto& x : v) w += abs(x);
    return w;
  };
  std::stable_sort(out.begin(), out.end(), [&](const IntVector& a, const IntVector& b) {
    const Integer wa = weight(a), wb = weight(b);
    if (wa != wb) return wa < wb;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  });
  return out;
}

IntMatrix combination(const std::vector<IntMatrix>& basis, const IntVector& coeffs) {
  IntMatrix c(basis.front().rows(), basis.front().cols());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t r = 0; r < c.rows(); ++r)
      for (std::size_t s = 0; s < c.cols(); ++s) c(r, s) += coeffs[i] * basis[i](r, s);
  return c;
}

Submersion aligned(const Submersion& s, const std::optional<IntMatrix>& alignment) {
  if (!alignment || alignment->rows() < s.size() || alignment->cols() != s.ambient_dim() || s.size() == 0) return s;
  try {
    return rebase_submersion(s, alignment->row_block(0, s.size()));
  } catch (const InvalidCertificate&) {
    return s;
  }
}

// Longest chain (under lattice inclusion) that starts at candidate 0;
// ties go to chains using earlier candidates.
std::vector<std::size_t> longest_chain(const std::vector<Candidate>& cands) {
  const std::size_t n = cands.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cands[a].submersion.size() < cands[b].submersion.size();
  });
  std::vector<std::vector<std::size_t>> best(n);
  best[0] = {0};
  for (std::size_t idx : order) {
    if (idx == 0 || cands[idx].submersion.size() <= cands[0].submersion.size()) continue;
    for (std::size_t prev : order) {
      if (best[prev].empty() || cands[prev].submersion.size() >= cands[idx].submersion.size()) continue;
      if (!check_subfoliation(cands[prev].submersion, cands[idx].submersion)) continue;
      std::vector<std::size_t> chain = best[prev];
      chain.push_back(idx);
      auto better = [&](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        std::vector<std::size_t> sa = a, sb = b;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        return sa < sb;
      };
      if (best[idx].empty() || better(chain, best[idx])) best[idx] = std::move(chain);
    }
  }
  std::vector<std::size_t> result = best[0];
  for (std::size_t i = 0; i < n; ++i) {
    if (best[i].empty()) continue;
    if (best[i].size() > result.size()) result = best[i];
  }
  return result;
}

// Real point whose image under the monomial map is alpha: x = exp(U^T (U U^T)^-1 log alpha).
std::vector<Real> point_on_leaf(const MonomialMap& pi, const std::vector<Real>& alpha) {
  const std::size_t r = pi.dim_out(), n = pi.dim_in();
  const RationalMatrix u = convert<Rational>(pi.exponents());
  const RationalMatrix g_inv = inverse(u * u.transpose());
  std::vector<Real> logs(r);
  for (std::size_t i = 0; i < r; ++i) logs[i] = log(alpha[i]);
  std::vector<Real> w(r, Real(0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) w[i] += to_real(g_inv(i, j)) * logs[j];
  std::vector<Real> x(n);
  for (std::size_t k = 0; k < n; ++k) {
    Real v = 0;
    for (std::size_t i = 0; i < r; ++i) v += to_real(u(i, k)) * w[i];
    x[k] = exp(v);
  }
  return x;
}

std::string level_name(const Submersion& s, std::size_t index) {
  return to_string(s.kind) + "-" + std::to_string(index) + " (" + std::to_string(s.size()) + " components)";
}

}  // namespace

Json run_pipeline(const WorkflowConfig& config) {
  ScopedPrecision precision(config.precision);
  const unsigned digits = std::min(config.precision, 40u);
  Json report;
  report["schema"] = kSchemaVersion;
  report["input"] = Json{{"label", config.label}, {"matrix", matrix_to_json(config.matrix)}};
  report["config"] = Json{{"seed", config.seed},
                          {"max_m", config.m_max},
                          {"max_period", config.p_max},
                          {"scan_max_period", config.scan_p_max},
                          {"samples", config.samples},
                          {"scan_samples", config.scan_samples},
                          {"itinerary_starts", config.itinerary_starts},
                          {"itinerary_steps", config.itinerary_steps},
                          {"precision", config.precision}};
  Json errors = Json::array();
  auto fail = [&](const std::string& stage, const std::exception& e) {
    errors.push_back(Json{{"stage", stage}, {"error", e.what()}});
  };
  auto finish = [&]() {
    report["errors"] = errors;
    return report;
  };

  const IntMatrix& b = config.matrix;
  std::optional<PeriodicityCertificate> cert;
  try {
    cert = detect_period(b, config.m_max);
    report["period"] = certificate_to_json(cert, config.m_max);
  } catch (const Error& e) {
    fail("period", e);
    return finish();
  }
  if (!cert) {
    errors.push_back(Json{{"stage", "period"}, {"error", "no period up to the bound"}});
    return finish();
  }

  const BirationalMap phi = cluster_map(b, *cert);
  report["cluster_map"] = map_to_json(phi);
  const PresymplecticForm omega(b);
  const PointCheck omega_check = check_presymplectic_invariance(phi, omega, config.samples, config.seed);
  report["presymplectic"] = Json{{"matrix", matrix_to_json(b)},
                                 {"rank", omega.rank()},
                                 {"invariant", point_check_to_json(omega_check)}};
  report["degenerate"] = b.is_zero();
  if (b.is_zero())
    report["degenerate_note"] = "zero exchange matrix: trivial quiver, the null foliation is the whole space and its reduction is empty";

  // Poisson structures: inputs first, then small combinations of the discovered basis.
  std::vector<Candidate> candidates;
  Json structures = Json::array();
  const Submersion null_sub = aligned(null_submersion(omega), config.alignment);
  candidates.push_back({null_sub, "presymplectic"});

  auto consider = [&](const IntMatrix& c, const std::string& source) {
    if (c.is_zero()) return;
    const PoissonStructure p(c);
    const PointCheck check = check_poisson_map(phi, p, config.samples, config.seed);
    Json entry{{"source", source},
               {"matrix", matrix_to_json(c)},
               {"rank", c.rows() - p.corank()},
               {"corank", p.corank()},
               {"compatible", (c * b).is_zero()},
               {"poisson_map", point_check_to_json(check)}};
    const Submersion sub = casimir_submersion(p);
    bool duplicate = false;
    for (const auto& cand : candidates)
      if (cand.submersion.size() == sub.size() && sublattice_subset(cand.submersion.lattice(), sub.lattice()) &&
          sublattice_subset(sub.lattice(), cand.submersion.lattice()))
        duplicate = true;
    entry["used"] = check.passed && !duplicate && !sub.not_a_reduction;
    structures.push_back(std::move(entry));
    if (check.passed && !duplicate && !sub.not_a_reduction) candidates.push_back({aligned(sub, config.alignment), source});
  };

  for (const auto& c : config.extra_structures) {
    try {
      consider(c, "input");
    } catch (const Error& e) {
      fail("input structure", e);
    }
  }
  try {
    const PoissonSearch search = find_invariant_poisson(phi, b, config.seed, config.samples);
    Json basis = Json::array();
    for (const auto& c : search.basis) basis.push_back(matrix_to_json(c));
    report["poisson_search"] = Json{{"compatible_with_exchange_matrix", true},
                                    {"dimension", search.basis.size()},
                                    {"basis", std::move(basis)},
                                    {"points_used", search.points_used},
                                    {"verified", search.verified},
                                    {"seed", config.seed}};
    for (const auto& coeffs : small_combinations(search.basis.size())) consider(combination(search.basis, coeffs), "discovered");
  } catch (const Error& e) {
    fail("poisson search", e);
  }
  report["structures"] = std::move(structures);

  // Flag and reductions.
  std::vector<Submersion> chain;
  for (std::size_t idx : longest_chain(candidates)) chain.push_back(candidates[idx].submersion);
  Flag flag;
  try {
    flag = build_flag(chain);
    report["flag"] = flag_to_json(flag);
  } catch (const Error& e) {
    fail("flag", e);
    return finish();
  }

  Json levels = Json::array();
  std::vector<std::optional<ReducedSystem>> reduced(flag.levels.size());
  for (std::size_t i = 0; i < flag.levels.size(); ++i) {
    const Submersion& s = flag.levels[i];
    Json level{{"level", i}, {"name", level_name(s, i)}, {"kind", to_string(s.kind)}};
    if (s.kind == SubmersionKind::null)
      level["darboux_form"] = darboux_form_holds(omega, s);
    else {
      level["casimirs_vanish"] = casimirs_vanish(PoissonStructure(s.structure), s);
      level["isotropic"] = point_check_to_json(check_isotropy(omega, s, config.samples, config.seed));
    }
    try {
      reduced[i] = derive_reduced_map(phi, s);
      level["reduced_system"] = reduced_system_to_json(*reduced[i]);
    } catch (const Error& e) {
      fail("reduction " + std::to_string(i), e);
    }
    levels.push_back(std::move(level));
  }

  Json chained = Json::array();
  for (std::size_t i = 0; i + 1 < flag.levels.size(); ++i) {
    if (!reduced[i] || !reduced[i + 1]) continue;
    Json entry{{"outer", i}, {"inner", i + 1}, {"projection", monomial_map_to_json(flag.projections[i])}};
    try {
      entry["verified"] = chained_reduction(*reduced[i], *reduced[i + 1], flag.projections[i]).verified;
    } catch (const VerificationFailure& e) {
      entry["verified"] = false;
      entry["error"] = e.what();
    }
    chained.push_back(std::move(entry));
  }
  report["chained_reductions"] = std::move(chained);

  // Dynamics of each reduced level.
  std::optional<std::pair<std::size_t, std::vector<Real>>> fixed_leaf;
  for (std::size_t i = 0; i < flag.levels.size(); ++i) {
    if (!reduced[i] || reduced[i]->psi.dim_out() == 0 || reduced[i]->not_a_reduction) continue;
    const BirationalMap& psi = reduced[i]->psi;
    Json dyn;
    try {
      const PeriodReport period = detect_global_periodicity(psi, config.p_max, config.seed);
      dyn["global_period"] = period_report_to_json(period);
      if (period.kind == PeriodKind::global)
        dyn["first_integral_of_iterate"] = first_integral_check(phi, reduced[i]->pi, period.period);
      if (psi.dim_in() <= 3) {
        const std::size_t d = psi.dim_in();
        const SearchBox box{std::vector<Rational>(d, Rational(1, 2)), std::vector<Rational>(d, Rational(4))};
        const auto fixed = find_periodic_points(psi, 1, box, config.precision, d == 3 ? 3 : 5);
        dyn["fixed_points"] = periodic_points_to_json(fixed, digits);
        if (!fixed.empty() && !fixed_leaf) fixed_leaf = {i, fixed.front().point};
      }
      if (period.kind != PeriodKind::global)
        dyn["periodic_point_scan"] =
            scan_report_to_json(no_periodic_points_scan(psi, config.scan_p_max, config.scan_samples, config.seed), 12);
    } catch (const Error& e) {
      fail("dynamics " + std::to_string(i), e);
    }
    levels[i]["dynamics"] = std::move(dyn);
  }
  report["levels"] = std::move(levels);

  // Orbit taxonomy: label periods along exact orbits from seeded starts.
  try {
    std::vector<MonomialMap> maps;
    for (const auto& s : flag.levels) maps.push_back(s.map);
    std::vector<std::map<std::string, std::size_t>> histogram(maps.size());
    std::size_t float_starts = 0;
    const Real tol = pow(Real(10), -static_cast<long>(digits) / 2);
    for (std::size_t s = 0; s < config.itinerary_starts; ++s) {
      const auto x0 = random_positive_point(config.seed, kItineraryOffset + s, phi.dim_in());
      // Exact unless the orbit's height runs past the cap.
      bool exact = true;
      std::vector<Rational> x = x0;
      for (std::size_t k = 0; k < config.itinerary_steps && exact; ++k) {
        x = phi.evaluate<Rational>(x);
        exact = height_bits(x) <= kHeightCapBits;
      }
      std::vector<std::optional<std::size_t>> periods;
      if (exact) {
        periods = leaf_itinerary(phi, maps, x0, config.itinerary_steps).periods;
      } else {
        ++float_starts;
        periods = leaf_itinerary(phi, maps, to_real(x0), config.itinerary_steps, tol).periods;
      }
      for (std::size_t l = 0; l < maps.size(); ++l)
        ++histogram[l][periods[l] ? std::to_string(*periods[l]) : std::string("none")];
    }
    Json taxonomy = Json::array();
    for (std::size_t l = 0; l < maps.size(); ++l) {
      Json counts = Json::object();
      for (const auto& [k, v] : histogram[l]) counts[k] = v;
      taxonomy.push_back(Json{{"level", l}, {"label_periods", std::move(counts)}});
    }
    Json itin{{"starts", config.itinerary_starts},
              {"steps", config.itinerary_steps},
              {"seed", config.seed},
              {"exact_starts", config.itinerary_starts - float_starts},
              {"float_starts", float_starts},
              {"levels", std::move(taxonomy)}};
    if (fixed_leaf) {
      const auto& [lvl, alpha] = *fixed_leaf;
      const auto x0 = point_on_leaf(flag.levels[lvl].map, alpha);
      const auto it = leaf_itinerary(phi, {flag.levels[lvl].map}, x0, config.itinerary_steps,
                                     pow(Real(10), -static_cast<long>(digits) / 2));
      itin["fixed_leaf_orbit"] = Json{{"level", lvl},
                                      {"label", reals_to_json(alpha, digits)},
                                      {"mode", "float"},
                                      {"max_label_drift", to_decimal(max_label_drift(it.labels[0]), 6)}};
    }
    report["itineraries"] = std::move(itin);
  } catch (const Error& e) {
    fail("itineraries", e);
  }
  return finish();
}

std::string render_summary(const Json& r) {
  std::ostringstream os;
  os << "input: " << r["input"].value("label", std::string("(matrix)")) << "\n";
  if (r.contains("period")) {
    const auto& p = r["period"];
    if (p.value("periodic", false))
      os << "period: m = " << p["period"].get<std::size_t>() << "\n";
    else
      os << "period: none up to " << p["max_m"].get<std::size_t>() << "\n";
  }
  if (r.contains("cluster_map")) {
    os << "cluster map:\n";
    for (const auto& c : r["cluster_map"]["components"]) os << "  " << c.get<std::string>() << "\n";
  }
  if (r.contains("presymplectic"))
    os << "presymplectic form: rank " << r["presymplectic"]["rank"].get<std::size_t>() << ", invariant "
       << (r["presymplectic"]["invariant"]["passed"].get<bool>() ? "yes" : "no") << "\n";
  if (r.value("degenerate", false)) os << "degenerate input: " << r["degenerate_note"].get<std::string>() << "\n";
  if (r.contains("poisson_search"))
    os << "invariant compatible Poisson structures: dimension " << r["poisson_search"]["dimension"].get<std::size_t>()
       << "\n";
  if (r.contains("levels")) {
    os << "flag (coarsest to finest):\n";
    for (const auto& l : r["levels"]) {
      os << "  [" << l["level"].get<std::size_t>() << "] " << l["name"].get<std::string>() << "\n";
      if (l.contains("reduced_system")) {
        const auto& rs = l["reduced_system"];
        os << "      psi = (";
        for (std::size_t k = 0; k < rs["psi"].size(); ++k) os << (k ? ", " : "") << rs["psi"][k].get<std::string>();
        os << ")  verified " << (rs["verified"].get<bool>() ? "yes" : "no") << "\n";
      }
      if (l.contains("dynamics")) {
        const auto& d = l["dynamics"];
        const auto& gp = d["global_period"];
        if (gp["kind"] == "global")
          os << "      globally " << gp["period"].get<std::size_t>() << "-periodic (symbolic)\n";
        else
          os << "      not globally periodic up to " << gp["bound"].get<std::size_t>() << "\n";
        if (d.contains("fixed_points"))
          for (const auto& fp : d["fixed_points"]) {
            os << "      fixed point (";
            for (std::size_t k = 0; k < fp["point"].size(); ++k)
              os << (k ? ", " : "") << fp["point"][k].get<std::string>().substr(0, 14);
            os << ")\n";
          }
        if (d.contains("periodic_point_scan")) {
          const auto& s = d["periodic_point_scan"];
          os << "      periodic point scan: " << (s["period_found"].is_null() ? "none found" : "period found")
             << ", all samples escaping " << (s["all_escaping"].get<bool>() ? "yes" : "no") << "\n";
        }
      }
    }
  }
  if (r.contains("itineraries")) {
    const auto& it = r["itineraries"];
    os << "leaf label periods over " << it["starts"].get<std::size_t>() << " orbits ("
       << it["exact_starts"].get<std::size_t>() << " exact, " << it["float_starts"].get<std::size_t>() << " float):\n";
    for (const auto& l : r["itineraries"]["levels"]) os << "  level " << l["level"].get<std::size_t>() << ": " << l["label_periods"].dump() << "\n";
    if (r["itineraries"].contains("fixed_leaf_orbit"))
      os << "  orbit on the fixed leaf: label drift " << r["itineraries"]["fixed_leaf_orbit"]["max_label_drift"].get<std::string>()
         << "\n";
  }
  if (!r["errors"].empty()) {
    os << "errors:\n";
    for (const auto& e : r["errors"]) os << "  " << e["stage"].get<std::string>() << ": " << e["error"].get<std::string>() << "\n";
  }
  return os.str();
}

}  // namespace cluster_reduce
