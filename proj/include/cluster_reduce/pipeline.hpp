#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cluster_reduce/io.hpp"

namespace cluster_reduce {

struct WorkflowConfig {
  IntMatrix matrix = IntMatrix(0, 0);
  std::string label;                          // fixture name or input path, echoed in the report
  std::vector<IntMatrix> extra_structures;    // Poisson matrices tried before discovered ones
  std::optional<IntMatrix> alignment;         // preferred exponent rows, coarse levels first
  std::uint64_t seed = 42;
  std::size_t m_max = 8;
  std::size_t p_max = 12;
  std::size_t scan_p_max = 20;
  std::size_t samples = 20;
  std::size_t scan_samples = 25;
  std::size_t itinerary_starts = 10;
  std::size_t itinerary_steps = 20;
  unsigned precision = kDefaultPrecisionDigits;
};

/// Config preloaded with a fixture's matrices (exchange matrix, known
/// Poisson matrices and reference exponents).
WorkflowConfig config_for_fixture(const std::string& name);

/// Period, cluster map, invariance, Poisson discovery, flag, reduced maps,
/// chained reductions and dynamics of every reduced level. Failures of a
/// stage are recorded in the report and later stages continue when they can.
Json run_pipeline(const WorkflowConfig& config);

/// Human-readable rendering of a pipeline report.
std::string render_summary(const Json& report);

}  // namespace cluster_reduce
