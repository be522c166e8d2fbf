#include "cmtk/falsifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <gsl/gsl_multimin.h>
#include <gsl/gsl_vector.h>

#include "cmtk/error.hpp"
#include "cmtk/matrix_json.hpp"

namespace cmtk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Objective value for points the evaluator rejects.
constexpr double kRejected = 1e3;

const Variant& target_variant(const SearchTarget& target) {
  const Family& f = find_family(target.family);
  if (target.variant.empty()) return f.variants.front();
  return f.variant(target.variant);
}

std::size_t parameter_count(const std::vector<Shape>& shapes) {
  std::size_t n = 0;
  for (const auto& [r, c] : shapes) n += static_cast<std::size_t>(2 * r * c);
  return n;
}

// Row-major (re, im) pairs, matching the draw order of ginibre().
std::vector<Matrix> unpack(const gsl_vector* x, const std::vector<Shape>& shapes) {
  std::vector<Matrix> out;
  std::size_t at = 0;
  for (const auto& [rows, cols] : shapes) {
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) {
        m(i, j) = Complex(gsl_vector_get(x, at), gsl_vector_get(x, at + 1));
        at += 2;
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

void pack(std::span<const Matrix> ms, gsl_vector* x) {
  std::size_t at = 0;
  for (const auto& m : ms) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        gsl_vector_set(x, at++, m(i, j).real());
        gsl_vector_set(x, at++, m(i, j).imag());
      }
    }
  }
}

struct Objective {
  const SearchTarget* target;
  const std::vector<Shape>* shapes;
  SearchResult* result;
  int restart;
};

// History is keyed by the number of completed iterations.
void record(SearchResult& r, double value, std::vector<Matrix> operands, int restart) {
  if (value < r.best_rel_margin) {
    r.best_rel_margin = value;
    r.best_operands = std::move(operands);
    r.best_restart = restart;
    r.history.emplace_back(r.iterations, value);
  }
}

double safe_margin(const SearchTarget& target, std::span<const Matrix> normalized) {
  try {
    const double v = reevaluate(target, normalized);
    return std::isfinite(v) ? v : kRejected;
  } catch (const Error&) {
    return kRejected;
  }
}

double objective(const gsl_vector* x, void* params) {
  auto* ctx = static_cast<Objective*>(params);
  const auto raw = unpack(x, *ctx->shapes);
  double norm = 0.0;
  for (const auto& m : raw) {
    if (!all_finite(m)) return kRejected;
    norm = std::max(norm, max_abs(m));
  }
  if (!(norm > 0.0)) return kRejected;
  std::vector<Matrix> normalized;
  try {
    normalized = normalize_operands(raw, ctx->target->p);
  } catch (const Error&) {
    return kRejected;
  }
  const double v = safe_margin(*ctx->target, normalized);
  record(*ctx->result, v, std::move(normalized), ctx->restart);
  return v;
}

}  // namespace

std::vector<Matrix> normalize_operands(std::span<const Matrix> raw, double p) {
  const Exponent e(p);
  double scale = 0.0;
  for (const auto& m : raw) scale = std::max(scale, schatten_norm(m, e));
  std::vector<Matrix> out(raw.begin(), raw.end());
  if (scale > 0.0) {
    for (auto& m : out) m /= scale;
  }
  return out;
}

double reevaluate(const SearchTarget& target, std::span<const Matrix> operands) {
  const Variant& v = target_variant(target);
  const auto cases = v.eval(target.p, operands);
  double best = kInf;
  for (const auto& c : cases) {
    if (!target.branch.empty() && c.branch != target.branch) continue;
    best = std::min(best, c.rel_margin);
  }
  return best;
}

double target_margin(const SearchTarget& target, std::span<const Matrix> raw) {
  return reevaluate(target, normalize_operands(raw, target.p));
}

SearchResult random_sweep(const SearchTarget& target, int trials, std::uint64_t seed) {
  const Variant& v = target_variant(target);
  SearchResult r{kInf, {}, 0, {}, seed, -1};
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    auto normalized = normalize_operands(draw_raw(v, target.dim, rng), target.p);
    const double m = safe_margin(target, normalized);
    record(r, m, std::move(normalized), t);
    ++r.iterations;
  }
  return r;
}

SearchResult maximize_violation(const SearchTarget& target, const SearchConfig& config) {
  const Variant& v = target_variant(target);
  const std::vector<Shape> shapes = v.shapes(target.dim);
  const std::size_t n = parameter_count(shapes);
  SearchResult result{kInf, {}, 0, {}, config.seed, -1};
  if (n == 0) return result;

  gsl_vector* x = gsl_vector_alloc(n);
  gsl_vector* step = gsl_vector_alloc(n);
  gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n);
  gsl_vector_set_all(step, config.step);

  // Restarts run in index order and share one result, so the merge keeps the
  // earliest restart on ties.
  for (int r = 0; r < config.restarts; ++r) {
    Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(r)));
    const auto start = normalize_operands(draw_raw(v, target.dim, rng), target.p);
    pack(start, x);
    Objective ctx{&target, &shapes, &result, r};
    gsl_multimin_function f{&objective, n, &ctx};
    gsl_multimin_fminimizer_set(s, &f, x, step);
    for (int it = 0; it < config.iters; ++it) {
      if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
      ++result.iterations;
      if (gsl_multimin_fminimizer_size(s) < 1e-12) break;
    }
  }

  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(step);
  gsl_vector_free(x);
  return result;
}

std::vector<ProbeCell> probe_conjectures(const SearchConfig& budget) {
  struct Job {
    const char* family;
    const char* variant;
  };
  const Job jobs[] = {{"CONJ_5_3", "n2"},       {"CONJ_5_3", "n3"}, {"CONJ_5_4", "n2"},
                      {"CONJ_5_4", "n3"},       {"AK_COMPRESSION", "N2"},
                      {"AK_COMPRESSION", "N3"}, {"AK_COMPRESSION", "N2_psd"}};
  std::vector<ProbeCell> cells;
  for (const auto& job : jobs) {
    for (const int dim : {1, 2, 3}) {
      for (const double p : {1.25, 1.5, 3.0, 4.0}) {
        const SearchTarget target{job.family, job.variant, p, dim, ""};
        SearchConfig cfg = budget;
        const std::string key = std::string(job.family) + "/" + job.variant + "/" +
                                std::to_string(dim) + "/" + std::to_string(p);
        cfg.seed = derive_seed(budget.seed, stable_hash(key));
        cells.push_back({job.family, job.variant, p, dim,
                         maximize_violation(target, cfg).best_rel_margin});
      }
    }
  }
  return cells;
}

nlohmann::json to_json(const SearchTarget& target, const SearchResult& result) {
  nlohmann::json history = nlohmann::json::array();
  for (const auto& [it, m] : result.history) history.push_back({it, m});
  nlohmann::json j;
  j["target"] = {{"family", target.family},
                 {"variant", target.variant.empty() ? target_variant(target).name : target.variant},
                 {"p", target.p},
                 {"dim", target.dim},
                 {"branch", target.branch}};
  j["best_rel_margin"] = std::isfinite(result.best_rel_margin)
                             ? nlohmann::json(result.best_rel_margin)
                             : nlohmann::json(nullptr);
  j["violation"] = result.best_rel_margin < -kViolationTol;
  j["best_operands"] = matrices_to_json(result.best_operands);
  j["iterations"] = result.iterations;
  j["best_restart"] = result.best_restart;
  j["seed"] = result.seed;
  j["history"] = std::move(history);
  return j;
}

nlohmann::json to_json(std::span<const ProbeCell> cells) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : cells) {
    out.push_back({{"family", c.family},
                   {"variant", c.variant},
                   {"p", c.p},
                   {"dim", c.dim},
                   {"best_rel_margin", std::isfinite(c.best_rel_margin)
                                           ? nlohmann::json(c.best_rel_margin)
                                           : nlohmann::json(nullptr)}});
  }
  return out;
}

}  // namespace cmtk
