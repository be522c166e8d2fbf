// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "cmtk/error.hpp"
#include "cmtk/falsifier.hpp"
#include "cmtk/inequalities.hpp"
#include "cmtk/orbits.hpp"
#include "cmtk/schemes.hpp"
#include "cmtk/suite.hpp"
#include "scalar_oracle.hpp"

namespace {

using cmtk::Matrix;

struct Verdict {
  bool pass;
  std::string detail;
};

std::vector<Matrix> tuple(int count, Eigen::Index n, cmtk::Rng& rng) {
  std::vector<Matrix> out;
  for (int i = 0; i < count; ++i) out.push_back(cmtk::ginibre(n, n, rng));
  return out;
}

double rel_gap(double x, double y) {
  return std::abs(x - y) / std::max({std::abs(x), std::abs(y), 1e-300});
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

Verdict table1_gram() {
  double worst = 0.0;
  for (int label = 0; label <= 7; ++label) {
    for (int n = 1; n <= 4; ++n) worst = std::max(worst, cmtk::table1_scheme(label, n).gram_residual());
  }
  return {worst <= 1e-12, "32 schemes, worst residual " + fmt(worst)};
}

Verdict theorem_suite() {
  cmtk::SuiteConfig cfg;  // every theorem family, default grid and dims, 200 trials
  const auto report = cmtk::run_suite(cfg);
  double worst = std::numeric_limits<double>::infinity();
  long cases = 0;
  for (const auto& c : report.results) {
    worst = std::min(worst, c.min_rel_margin);
    cases += c.cases;
  }
  const int bad = report.theorem_violations();
  return {bad == 0 && report.failures() == 0,
          std::to_string(report.results.size()) + " cells, " + std::to_string(cases) + " cases, " +
              std::to_string(bad) + " violations, " + std::to_string(report.failures()) +
              " numerical failures, min rel_margin " + fmt(worst)};
}

Verdict collapse_at_two() {
  cmtk::Rng rng(cmtk::derive_seed(3, 0));
  double worst = 0.0;
  auto take = [&](const std::vector<cmtk::InequalityCase>& cs) {
    for (const auto& c : cs) worst = std::max(worst, std::abs(c.rel_margin));
  };
  for (int t = 0; t < 100; ++t) {
    const auto a2 = tuple(2, 3, rng);
    const auto a3 = tuple(3, 3, rng);
    const auto a4 = tuple(4, 3, rng);
    take(cmtk::eval_pair("CM_P", 2.0, a2[0], a2[1]));
    take(cmtk::eval_roots("BK_P", 2.0, a3));
    take(cmtk::eval_littlewood("KE_P", 2, 2.0, a4));
    take(cmtk::eval_pairwise("HK_P", 2.0, a3));
    take(cmtk::eval_roots("TABLE4_1", 2.0, a3));
    take(cmtk::eval_littlewood("TABLE4_2", 2, 2.0, a4));
    take(cmtk::eval_pairwise("TABLE4_3", 2.0, a3));
  }
  return {worst <= 1e-9, "7 families x 100 trials, worst |rel_margin| " + fmt(worst)};
}

Verdict reductions() {
  cmtk::Rng rng(cmtk::derive_seed(4, 0));
  double worst = 0.0;
  bool bounds_agree = true;
  const double ps[] = {0.5, 1.0, 1.5, 2.5, 3.0, 4.0};
  for (int t = 0; t < 50; ++t) {
    const auto ab = tuple(2, 3, rng);
    const double p = ps[t % 6];
    const auto cm = cmtk::eval_pair("CM_P", p, ab[0], ab[1]);
    for (const auto& other : {cmtk::eval_roots("BK_P", p, ab), cmtk::eval_pairwise("HK_P", p, ab),
                              cmtk::eval_littlewood("KE_P", 1, p, ab)}) {
      worst = std::max({worst, rel_gap(other[0].lhs, cm[0].lhs), rel_gap(other[0].rhs, cm[0].rhs)});
      bounds_agree = bounds_agree && other[0].bound == cm[0].bound;
    }
    if (p > 1.0) {
      const auto cq = cmtk::eval_pair("CM_Q", p, ab[0], ab[1]);
      const auto kq = cmtk::eval_littlewood("KE_Q", 1, p, ab);
      worst = std::max({worst, rel_gap(kq[0].lhs, cq[0].lhs), rel_gap(kq[0].rhs, cq[0].rhs)});
    }
    // [[A,B],[B,A]] is unitarily (A+B) + (A-B); both King sides are BCL's after
    // squaring and dividing by 2^{2/p}.
    const Matrix a = (ab[0] + ab[0].adjoint()) * 0.5;
    const Matrix b = (ab[1] + ab[1].adjoint()) * 0.5;
    const double pk = std::max(p, 1.0);
    const auto k = cmtk::eval_king(pk, a, b, a, b);
    const auto bcl = cmtk::eval_pair("BCL", pk, a, b);
    const double s = std::pow(2.0, 2.0 / pk);
    worst = std::max({worst, rel_gap(k[0].lhs * k[0].lhs / s, bcl[0].lhs),
                      rel_gap(k[0].rhs * k[0].rhs / s, bcl[0].rhs)});
    bounds_agree = bounds_agree && k[0].bound == bcl[0].bound;
  }
  return {worst <= 1e-10 && bounds_agree, "50 pairs per reduction, worst relative gap " + fmt(worst)};
}

Verdict counterexample() {
  Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  b(1, 1) = 1.0;
  const std::vector<Matrix> ab = {a, b};
  const auto c = cmtk::eval_conjecture("CONJ_5_2", 4.0, ab);
  const bool exact = c.size() == 1 && std::abs(c[0].lhs - 8.0) <= 1e-12 && std::abs(c[0].rhs - 4.0) <= 1e-12;
  std::string margins;
  bool found = true;
  const auto start = std::chrono::steady_clock::now();
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto r = cmtk::maximize_violation({"CONJ_5_2", "", 4.0, 2, ""}, {300, 20, 0.5, seed});
    found = found && r.best_rel_margin <= -0.45;
    margins += (seed > 1 ? ", " : "") + fmt(r.best_rel_margin);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {exact && found && secs < 30.0,
          std::string("diag pair lhs 8 rhs 4 ") + (exact ? "exact" : "MISMATCH") + "; best per seed " + margins};
}

Verdict circulant() {
  cmtk::Rng rng(cmtk::derive_seed(6, 0));
  double worst = 0.0;
  for (int n : {2, 3, 4}) {
    for (int m : {2, 3, 5}) {
      for (int t = 0; t < 100; ++t) worst = std::max(worst, cmtk::circulant_identity(tuple(n, m, rng)).max_gap);
    }
  }
  return {worst <= 1e-9, "900 tuples, worst spectral gap " + fmt(worst)};
}

Verdict pinching() {
  cmtk::Rng rng(cmtk::derive_seed(7, 0));
  double worst_res = 0.0, worst_unit = 0.0;
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index side = 4 + t % 5;
    std::vector<Eigen::Index> splits;
    Eigen::Index left = side;
    while (left > 0) {
      const auto s = std::min<Eigen::Index>(left, 1 + static_cast<Eigen::Index>(rng() % 3));
      splits.push_back(s);
      left -= s;
    }
    if (splits.size() < 2) splits = {1, side - 1};
    const Eigen::Index rank = t % 3 == 0 ? 2 : side;  // every third input is rank-deficient
    const Matrix g = cmtk::ginibre(side, rank, rng);
    const Matrix h = g * g.adjoint();
    const auto r = cmtk::pinch_n(h, splits);
    worst_res = std::max(worst_res, r.residual);
    for (const auto& u : r.unitaries) worst_unit = std::max(worst_unit, cmtk::unitarity_residual(u));
  }
  return {worst_res <= 1e-9 && worst_unit <= 1e-10,
          "200 inputs, worst residual " + fmt(worst_res) + ", worst unitarity " + fmt(worst_unit)};
}

Verdict subunitary_lemma() {
  cmtk::Rng rng(cmtk::derive_seed(8, 0));
  double worst_keep = 0.0, weakest_break = std::numeric_limits<double>::infinity();
  int passed_check = 0;
  for (int t = 0; t < 100; ++t) {
    const int s = 2 + t % 4;
    const int cols = 1 + t % s;
    const Matrix u = cmtk::haar_columns(cmtk::ginibre(s, s, rng), cols);
    if (cmtk::is_subunitary(u, 1e-10).ok) ++passed_check;
    const auto y = tuple(cols, 3, rng);
    const Matrix gy = cmtk::sum_of_squares(y);
    const Matrix gx = cmtk::sum_of_squares(cmtk::apply_scheme(cmtk::Subunitary::checked(u), y));
    worst_keep = std::max(worst_keep, (gx - gy).cwiseAbs().maxCoeff() / std::max(1.0, gy.cwiseAbs().maxCoeff()));
  }
  // Draw until 100 blocks have Gram deviation above 1e-3.
  int perturbed = 0;
  for (int t = 0; perturbed < 100 && t < 1000; ++t) {
    const int s = 2 + t % 4;
    const int cols = 1 + t % s;
    const Matrix u = cmtk::haar_columns(cmtk::ginibre(s, s, rng), cols) + 0.05 * cmtk::ginibre(s, cols, rng);
    if (cmtk::is_subunitary(u, 1e-3).residual <= 1e-3) continue;
    ++perturbed;
    const cmtk::IdentityScheme scheme{u, Matrix::Identity(cols, cols), 1.0, -1, cols};
    weakest_break = std::min(weakest_break, cmtk::verify_identity(scheme, tuple(cols, 3, rng)));
  }
  return {passed_check == 100 && worst_keep <= 1e-9 && perturbed == 100 && weakest_break > 1e-6,
          std::to_string(passed_check) + " Haar blocks pass, worst drift " + fmt(worst_keep) + "; " +
              std::to_string(perturbed) + " perturbed, smallest residual " + fmt(weakest_break)};
}

Verdict table5_reconciliation() {
  cmtk::SuiteConfig cfg;
  cfg.families = {"SUBUNITARY_Q"};
  const auto generic = cmtk::run_suite(cfg);
  cmtk::Rng rng(cmtk::derive_seed(9, 0));
  double worst = std::numeric_limits<double>::infinity();
  const double ps[] = {1.25, 1.5, 2.0, 2.5, 3.0, 4.0};
  for (int label : {0, 1, 5, 6}) {
    const auto entry = cmtk::table5_subunitary(label, 3);
    const int cols = static_cast<int>(entry.u.matrix().cols());
    for (int t = 0; t < 200; ++t) {
      const double p = ps[t % 6];
      for (const auto& c : cmtk::eval_table5_row(label, 3, p, tuple(cols, 2, rng))) {
        if (c.branch.rfind("printed", 0) == 0) worst = std::min(worst, c.rel_margin);
      }
    }
  }
  return {generic.theorem_violations() == 0 && generic.failures() == 0 && worst >= -cmtk::kViolationTol,
          "generic suite " + std::to_string(generic.theorem_violations()) +
              " violations; printed rows 0,1,5,6 min rel_margin " + fmt(worst)};
}

Verdict scalar_oracle() {
  int mismatches = 0;
  double worst = 0.0;
  std::string first;
  const auto families = oracle::covered_families();
  for (std::size_t i = 0; i < families.size(); ++i) {
    const auto o = oracle::check_family(families[i], 1000, cmtk::derive_seed(10, i), 1e-12);
    mismatches += o.mismatches;
    worst = std::max(worst, o.worst);
    if (first.empty()) first = o.first_failure;
  }
  return {mismatches == 0, std::to_string(families.size()) + " families x 1000 tuples, worst gap " + fmt(worst) +
                               (first.empty() ? "" : "; " + first)};
}

Verdict determinism() {
  cmtk::SuiteConfig cfg;
  cfg.trials = 20;
  cfg.seed = 11;
  const auto a = cmtk::run_suite(cfg);
  const auto b = cmtk::run_suite(cfg);
  const bool suite_same = cmtk::to_json(a, "fixed").dump(2) == cmtk::to_json(b, "fixed").dump(2) &&
                          cmtk::to_csv(a) == cmtk::to_csv(b);
  const cmtk::SearchTarget target{"CONJ_5_2", "", 4.0, 2, ""};
  const cmtk::SearchConfig search{100, 4, 0.5, 11};
  const bool search_same = cmtk::to_json(target, cmtk::maximize_violation(target, search)).dump() ==
                           cmtk::to_json(target, cmtk::maximize_violation(target, search)).dump();
  return {suite_same && search_same, std::string("suite reports ") + (suite_same ? "identical" : "DIFFER") +
                                         ", search results " + (search_same ? "identical" : "DIFFER")};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Verdict()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "identity schemes satisfy Gram equality", 1.0, table1_gram},
      {2, "theorem families never violate", 300.0, theorem_suite},
      {3, "equality collapse at p = 2", 0.0, collapse_at_two},
      {4, "reduction equivalences", 0.0, reductions},
      {5, "counterexample rediscovery", 30.0, counterexample},
      {6, "block-circulant spectrum identity", 0.0, circulant},
      {7, "pinching decompositions", 0.0, pinching},
      {8, "subunitary characterization", 0.0, subunitary_lemma},
      {9, "subunitary q-bound and printed rows", 0.0, table5_reconciliation},
      {10, "scalar oracle equivalence", 0.0, scalar_oracle},
      {11, "determinism", 0.0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0.0 && secs > c.budget_s) {
      v.pass = false;
      v.detail += "; over time budget " + fmt(c.budget_s) + " s";
    }
    if (!v.pass) ++failed;
    std::printf("%s %2d  %-40s %8.2f s  %s\n", v.pass ? "PASS" : "FAIL", c.id, c.name, secs, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/11 criteria passed\n", 11 - failed);
  return failed == 0 ? 0 : 1;
}
