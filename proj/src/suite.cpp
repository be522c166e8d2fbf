#include "cmtk/suite.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "cmtk/error.hpp"

namespace cmtk {

namespace {

std::string hex(std::uint64_t v) {
  char buf[17];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, 16);
  return "0x" + std::string(buf, res.ptr);
}

std::string digest(std::uint64_t seed, const Variant& v, int dim) {
  std::string out = "seed=" + hex(seed) + ";variant=" + v.name + ";shapes=";
  bool first = true;
  for (const auto& [r, c] : v.shapes(dim)) {
    if (!first) out += ",";
    out += std::to_string(r) + "x" + std::to_string(c);
    first = false;
  }
  return out;
}

CellResult run_cell(const Family& family, double p, int dim, const SuiteConfig& config) {
  CellResult cell{family.spec.id, p, dim, 0, 0, 0, 0,
                  std::numeric_limits<double>::infinity(), 0, "", family.spec.anchor,
                  family.spec.status};
  std::vector<const Variant*> usable;
  for (const auto& v : family.variants) {
    if (!v.applies || v.applies(p)) usable.push_back(&v);
  }
  if (usable.empty()) return cell;
  const std::uint64_t base = cell_seed(config.seed, family.spec.id, p, dim);
  for (int t = 0; t < config.trials; ++t) {
    const Variant& v = *usable[static_cast<std::size_t>(t) % usable.size()];
    const std::uint64_t seed = derive_seed(base, static_cast<std::uint64_t>(t));
    Rng rng(seed);
    const auto raw = draw_raw(v, dim, rng);
    std::vector<InequalityCase> cases;
    try {
      cases = v.eval(p, raw);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Skipped) {
        ++cell.skipped;
      } else {
        ++cell.failures;
      }
      continue;
    }
    ++cell.trials;
    for (const auto& c : cases) {
      ++cell.cases;
      if (c.rel_margin < -config.tol) ++cell.violations;
      if (c.rel_margin < cell.min_rel_margin || cell.worst_operand_digest.empty()) {
        if (c.rel_margin < cell.min_rel_margin) cell.min_rel_margin = c.rel_margin;
        cell.worst_operand_digest = digest(seed, v, dim);
      }
    }
  }
  return cell;
}

nlohmann::json finite_or_null(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

}  // namespace

std::vector<double> default_p_grid() { return {0.5, 1.0, 1.25, 1.5, 2.0, 2.5, 3.0, 4.0}; }

std::vector<int> default_dims() { return {1, 2, 3, 4, 6}; }

std::uint64_t cell_seed(std::uint64_t master, const std::string& family, double p, int dim) {
  const std::string key = family + "|" + format_double(p) + "|" + std::to_string(dim);
  return derive_seed(master, stable_hash(key));
}

std::string format_double(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

int SuiteReport::theorem_violations() const {
  int n = 0;
  for (const auto& c : results) {
    if (c.status == Status::theorem) n += c.violations;
  }
  return n;
}

int SuiteReport::failures() const {
  int n = 0;
  for (const auto& c : results) n += c.failures;
  return n;
}

SuiteReport run_suite(const SuiteConfig& config) {
  if (!(config.tol > 0.0)) throw Error(ErrorKind::BadInput, "tol must be > 0");
  if (config.trials < 0) throw Error(ErrorKind::BadInput, "trials must be >= 0");
  for (const double p : config.p_grid) Exponent{p};
  for (const int d : config.dims) {
    if (d < 1) throw Error(ErrorKind::BadInput, "dims must be >= 1");
  }
  std::vector<const Family*> families;
  if (config.families.empty()) {
    for (const auto& f : registry()) {
      if (f.spec.status == Status::theorem) families.push_back(&f);
    }
  } else {
    for (const auto& id : config.families) families.push_back(&find_family(id));
  }

  SuiteReport report{config, {}};
  for (const Family* f : families) {
    for (const double p : config.p_grid) {
      if (!f->in_window(p)) continue;
      for (const int dim : config.dims) report.results.push_back(run_cell(*f, p, dim, config));
    }
  }
  std::sort(report.results.begin(), report.results.end(), [](const auto& a, const auto& b) {
    if (a.family != b.family) return a.family < b.family;
    if (a.p != b.p) return a.p < b.p;
    return a.dim < b.dim;
  });
  return report;
}

nlohmann::json to_json(const SuiteReport& report, const std::string& timestamp) {
  nlohmann::json results = nlohmann::json::array();
  for (const auto& c : report.results) {
    results.push_back({{"family", c.family},
                       {"p", c.p},
                       {"dim", c.dim},
                       {"trials", c.trials},
                       {"skipped", c.skipped},
                       {"failures", c.failures},
                       {"cases", c.cases},
                       {"min_rel_margin", finite_or_null(c.min_rel_margin)},
                       {"violations", c.violations},
                       {"worst_operand_digest", c.worst_operand_digest},
                       {"status", std::string(to_string(c.status))},
                       {"anchor", c.anchor}});
  }
  nlohmann::json meta = {{"seed", report.config.seed},
                         {"tol", report.config.tol},
                         {"p_grid", report.config.p_grid},
                         {"dims", report.config.dims},
                         {"trials", report.config.trials},
                         {"timestamp", timestamp}};
  return {{"meta", std::move(meta)}, {"results", std::move(results)}};
}

namespace {

// RFC 4180 quoting for fields that carry separators.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (const char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

}  // namespace

std::string to_csv(const SuiteReport& report) {
  std::ostringstream out;
  out << "family,p,dim,trials,skipped,failures,cases,min_rel_margin,violations,"
         "worst_operand_digest,status\n";
  for (const auto& c : report.results) {
    out << c.family << ',' << format_double(c.p) << ',' << c.dim << ',' << c.trials << ','
        << c.skipped << ',' << c.failures << ',' << c.cases << ','
        << (std::isfinite(c.min_rel_margin) ? format_double(c.min_rel_margin) : "") << ','
        << c.violations << ',' << csv_field(c.worst_operand_digest) << ',' << to_string(c.status) << '\n';
  }
  return out.str();
}

}  // namespace cmtk
