#pragma once

// Seeded property sweep over (family, p, dim) cells and its JSON/CSV reports.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "cmtk/registry.hpp"

namespace cmtk {

std::vector<double> default_p_grid();
std::vector<int> default_dims();

struct SuiteConfig {
  std::vector<std::string> families;  // empty: every theorem family
  std::vector<double> p_grid = default_p_grid();
  std::vector<int> dims = default_dims();
  int trials = 200;
  double tol = kViolationTol;
  std::uint64_t seed = 0;
};

struct CellResult {
  std::string family;
  double p;
  int dim;
  int trials;   // evaluated trials
  int skipped;  // trials whose operands fell outside a stated branch
  int failures; // numerical failures (non-convergence and similar)
  long cases;
  double min_rel_margin;  // +inf when no case was evaluated
  int violations;         // cases with rel_margin < -tol
  std::string worst_operand_digest;
  std::string anchor;
  Status status;
};

struct SuiteReport {
  SuiteConfig config;
  std::vector<CellResult> results;  // sorted by family, p, dim

  int theorem_violations() const;
  int failures() const;
};

/// Trial t of a cell draws from derive_seed(cell seed, t) and uses the
/// (t mod V)-th variant applicable at that p.
SuiteReport run_suite(const SuiteConfig& config);

/// Cell seed: derive_seed(master, stable_hash("family|p|dim")).
std::uint64_t cell_seed(std::uint64_t master, const std::string& family, double p, int dim);

std::string format_double(double x);

nlohmann::json to_json(const SuiteReport& report, const std::string& timestamp);
std::string to_csv(const SuiteReport& report);

}  // namespace cmtk
