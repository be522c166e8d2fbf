#pragma once

// Counterexample search: seeded random sweeps and multi-restart Nelder-Mead
// over the real and imaginary parts of the raw operands of a family variant.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cmtk/registry.hpp"

namespace cmtk {

struct SearchTarget {
  std::string family;
  std::string variant;  // empty: the family's first variant
  double p = 2.0;
  int dim = 2;
  std::string branch;   // empty: every case the variant returns
};

struct SearchConfig {
  int iters = 300;
  int restarts = 20;
  double step = 0.5;
  std::uint64_t seed = 0;
};

struct SearchResult {
  double best_rel_margin;             // +inf when nothing was evaluated
  std::vector<Matrix> best_operands;  // normalized raw operands
  long iterations = 0;  // simplex iterations (sweep: trials)
  std::vector<std::pair<long, double>> history;  // (iteration, best so far) on improvement
  std::uint64_t seed = 0;
  int best_restart = -1;
};

/// Raw tuple divided by the largest Schatten-p norm among its members.
std::vector<Matrix> normalize_operands(std::span<const Matrix> raw, double p);

/// Minimum rel_margin over the selected cases of the target, after
/// normalization. Throws whatever the evaluator throws.
double target_margin(const SearchTarget& target, std::span<const Matrix> raw);

/// Fresh evaluation of stored operands, no search state involved.
double reevaluate(const SearchTarget& target, std::span<const Matrix> operands);

SearchResult random_sweep(const SearchTarget& target, int trials, std::uint64_t seed);

SearchResult maximize_violation(const SearchTarget& target, const SearchConfig& config);

struct ProbeCell {
  std::string family;
  std::string variant;
  double p;
  int dim;
  double best_rel_margin;
};

/// Searches CONJ_5_3, CONJ_5_4 and AK_COMPRESSION over n in {2, 3},
/// dim in {1, 2, 3}, p in {1.25, 1.5, 3, 4}. Reports only.
std::vector<ProbeCell> probe_conjectures(const SearchConfig& budget);

nlohmann::json to_json(const SearchTarget& target, const SearchResult& result);
nlohmann::json to_json(std::span<const ProbeCell> cells);

}  // namespace cmtk
