#include <gtest/gtest.h>

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cmtk/cli.hpp"
#include "cmtk/error.hpp"
#include "cmtk/falsifier.hpp"
#include "cmtk/matrix_json.hpp"
#include "cmtk/registry.hpp"
#include "cmtk/suite.hpp"

namespace {

using nlohmann::json;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cmtk::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string without_timestamp(const std::string& s) {
  return std::regex_replace(s, std::regex("\"timestamp\": \"[^\"]*\""), "\"timestamp\": \"\"");
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        fields.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back();
    } else {
      fields.back() += ch;
    }
  }
  return fields;
}

cmtk::SuiteConfig small_config() {
  cmtk::SuiteConfig c;
  c.families = {"CM_P", "HANNER", "KING_PSD", "SUBUNITARY_Q"};
  c.p_grid = {1.25, 2.0, 3.0};
  c.dims = {1, 2};
  c.trials = 20;
  c.seed = 5;
  return c;
}

TEST(Suite, DefaultGrid) {
  EXPECT_EQ(cmtk::default_p_grid(), (std::vector<double>{0.5, 1, 1.25, 1.5, 2, 2.5, 3, 4}));
  EXPECT_EQ(cmtk::default_dims(), (std::vector<int>{1, 2, 3, 4, 6}));
}

TEST(Suite, CellsSortedAndClean) {
  const auto r = cmtk::run_suite(small_config());
  ASSERT_FALSE(r.results.empty());
  for (std::size_t i = 1; i < r.results.size(); ++i) {
    const auto& a = r.results[i - 1];
    const auto& b = r.results[i];
    EXPECT_TRUE(std::tie(a.family, a.p, a.dim) < std::tie(b.family, b.p, b.dim));
  }
  EXPECT_EQ(r.theorem_violations(), 0);
  EXPECT_EQ(r.failures(), 0);
  for (const auto& c : r.results) {
    EXPECT_EQ(c.trials + c.skipped + c.failures, 20) << c.family;
    EXPECT_FALSE(c.anchor.empty());
  }
}

TEST(Suite, WindowClipsCells) {
  auto c = small_config();
  c.families = {"CM_Q"};
  c.p_grid = {0.5, 1.0, 3.0};
  const auto r = cmtk::run_suite(c);
  for (const auto& cell : r.results) EXPECT_GT(cell.p, 1.0);
}

TEST(Suite, CellSeedDependsOnEveryKeyPart) {
  std::set<std::uint64_t> seeds = {cmtk::cell_seed(1, "CM_P", 3.0, 2), cmtk::cell_seed(2, "CM_P", 3.0, 2),
                                   cmtk::cell_seed(1, "CM_Q", 3.0, 2), cmtk::cell_seed(1, "CM_P", 2.5, 2),
                                   cmtk::cell_seed(1, "CM_P", 3.0, 3)};
  EXPECT_EQ(seeds.size(), 5u);
}

TEST(Suite, ByteIdenticalReports) {
  const auto a = cmtk::run_suite(small_config());
  const auto b = cmtk::run_suite(small_config());
  EXPECT_EQ(cmtk::to_json(a, "t").dump(2), cmtk::to_json(b, "t").dump(2));
  EXPECT_EQ(cmtk::to_csv(a), cmtk::to_csv(b));
}

TEST(Suite, UnknownFamily) {
  auto c = small_config();
  c.families = {"NOPE"};
  EXPECT_THROW(cmtk::run_suite(c), cmtk::Error);
}

TEST(Suite, CsvRowsEqualJsonResults) {
  const auto r = cmtk::run_suite(small_config());
  const json j = cmtk::to_json(r, "t");
  std::istringstream csv(cmtk::to_csv(r));
  std::string line;
  std::getline(csv, line);
  const auto header = split_csv_line(line);
  std::size_t row = 0;
  while (std::getline(csv, line)) {
    const auto f = split_csv_line(line);
    ASSERT_EQ(f.size(), header.size()) << line;
    ASSERT_LT(row, j["results"].size());
    const json& res = j["results"][row];
    for (std::size_t k = 0; k < header.size(); ++k) {
      const json& v = res.at(header[k]);
      if (v.is_string()) {
        EXPECT_EQ(f[k], v.get<std::string>()) << header[k];
      } else if (v.is_null()) {
        EXPECT_EQ(f[k], "") << header[k];
      } else {
        EXPECT_EQ(std::stod(f[k]), v.get<double>()) << header[k];
      }
    }
    ++row;
  }
  EXPECT_EQ(row, j["results"].size());
}

TEST(Cli, VerifyExample) {
  const auto r = cli({"verify", "--families", "CM_P", "--p", "3", "--dims", "2", "--trials", "100", "--seed", "1"});
  EXPECT_EQ(r.code, cmtk::kExitOk) << r.err;
  const json j = json::parse(r.out);
  ASSERT_EQ(j["results"].size(), 1u);
  EXPECT_EQ(j["results"][0]["trials"], 100);
  EXPECT_GE(j["results"][0]["min_rel_margin"].get<double>(), -1e-8);
  EXPECT_EQ(j["meta"]["seed"], 1);
}

TEST(Cli, VerifyDeterministicModuloTimestamp) {
  const std::vector<std::string> args = {"verify", "--families", "BK_P,KING", "--p", "1.5,3", "--dims", "2", "--trials", "30", "--seed", "4"};
  const auto a = cli(args);
  const auto b = cli(args);
  EXPECT_EQ(without_timestamp(a.out), without_timestamp(b.out));
  EXPECT_NE(a.out.find("\"timestamp\""), std::string::npos);
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const std::string path = ::testing::TempDir() + "cmtk_config.json";
  std::ofstream(path) << R"({"families": ["CM_P"], "p_grid": [3], "dims": [2], "trials": 3, "seed": 2})";
  const auto r = cli({"verify", "--config", path, "--trials", "4"});
  ASSERT_EQ(r.code, cmtk::kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["meta"]["trials"], 4);
  EXPECT_EQ(j["meta"]["seed"], 2);
  ASSERT_EQ(j["results"].size(), 1u);
  EXPECT_EQ(j["results"][0]["family"], "CM_P");
}

TEST(Cli, VerifyWritesCsvFile) {
  const std::string path = ::testing::TempDir() + "cmtk_report.csv";
  const auto r = cli({"verify", "--families", "CM_P", "--p", "3", "--dims", "1", "--trials", "3", "--format", "csv", "--out", path});
  EXPECT_EQ(r.code, cmtk::kExitOk);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header.rfind("family,p,dim", 0), 0u);
}

TEST(Cli, FalsifyFindsCounterexample) {
  const auto r = cli({"falsify", "--target", "CONJ_5_2", "--p", "4", "--dim", "2", "--seed", "7"});
  EXPECT_EQ(r.code, cmtk::kExitViolation);
  const json j = json::parse(r.out);
  EXPECT_LE(j["best_rel_margin"].get<double>(), -0.45);
  // Stored operands re-evaluate to the reported margin.
  const auto ops = cmtk::matrices_from_json(j["best_operands"]);
  const double again = cmtk::reevaluate({"CONJ_5_2", "", 4.0, 2, ""}, ops);
  EXPECT_NEAR(again, j["best_rel_margin"].get<double>(), 1e-10);
}

TEST(Cli, FalsifyTheoremExitsZero) {
  const auto r = cli({"falsify", "--target", "CM_P", "--p", "3", "--dim", "2", "--restarts", "3", "--iters", "100"});
  EXPECT_EQ(r.code, cmtk::kExitOk);
}

TEST(Cli, GenLittlewood) {
  const auto r = cli({"gen", "littlewood", "--n", "1"});
  ASSERT_EQ(r.code, cmtk::kExitOk);
  const cmtk::Matrix m = cmtk::matrix_from_json(json::parse(r.out));
  EXPECT_EQ(m, cmtk::littlewood(1));
}

TEST(Cli, GenSchemeFormat) {
  const auto r = cli({"gen", "scheme", "--label", "3", "--n", "2"});
  ASSERT_EQ(r.code, cmtk::kExitOk);
  const json j = json::parse(r.out);
  for (const char* k : {"label", "n", "L", "R", "scale"}) EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(cmtk::matrix_from_json(j["L"]), cmtk::table1_scheme(3, 2).left);
}

TEST(Cli, GenRandomIsSeeded) {
  const auto a = cli({"gen", "random", "--kind", "haar_unitary", "--dim", "3", "--seed", "8"});
  const auto b = cli({"gen", "random", "--kind", "haar_unitary", "--dim", "3", "--seed", "8"});
  EXPECT_EQ(a.code, cmtk::kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_LE(cmtk::unitarity_residual(cmtk::matrix_from_json(json::parse(a.out))), 1e-12);
}

TEST(Cli, FamiliesJsonListsRegistry) {
  const auto r = cli({"families", "--json"});
  ASSERT_EQ(r.code, cmtk::kExitOk);
  const json j = json::parse(r.out);
  std::set<std::string> listed;
  for (const auto& f : j) listed.insert(f["id"].get<std::string>());
  std::set<std::string> ids;
  for (const auto& f : cmtk::registry()) ids.insert(f.spec.id);
  EXPECT_EQ(listed, ids);
}

TEST(Cli, IdentityChecksEveryScheme) {
  const auto r = cli({"identity"});
  EXPECT_EQ(r.code, cmtk::kExitOk);
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["all_ok"].get<bool>());
  EXPECT_EQ(j["schemes"].size(), 32u);
}

TEST(Cli, OrbitPinchAndCirculant) {
  const std::string h = ::testing::TempDir() + "cmtk_h.json";
  cmtk::Matrix m = cmtk::Matrix::Identity(4, 4);
  m(0, 3) = 0.5;
  m(3, 0) = 0.5;
  std::ofstream(h) << cmtk::matrix_to_json(m).dump();
  const auto p = cli({"orbit", "pinch", "--input", h, "--splits", "1,2,1"});
  ASSERT_EQ(p.code, cmtk::kExitOk) << p.err;
  const json pj = json::parse(p.out);
  EXPECT_LE(pj["residual"].get<double>(), 1e-12);
  EXPECT_EQ(pj["unitaries"].size(), 3u);

  const std::string a1 = ::testing::TempDir() + "cmtk_a1.json";
  const std::string a2 = ::testing::TempDir() + "cmtk_a2.json";
  std::ofstream(a1) << cmtk::matrix_to_json(cmtk::Matrix::Ones(1, 1)).dump();
  std::ofstream(a2) << cmtk::matrix_to_json(cmtk::Matrix::Zero(1, 1)).dump();
  const auto c = cli({"orbit", "circulant", "--inputs", a1, a2});
  ASSERT_EQ(c.code, cmtk::kExitOk) << c.err;
  EXPECT_LE(json::parse(c.out)["max_gap"].get<double>(), 1e-15);
}

TEST(Cli, UsageAndInputErrors) {
  const std::vector<std::vector<std::string>> bad = {
      {},
      {"nonsense"},
      {"verify", "--trials", "x"},
      {"verify", "--format", "xml"},
      {"falsify", "--p", "4"},
      {"falsify", "--target", "NOPE", "--p", "4"},
      {"gen", "table5", "--label", "4", "--n", "3"},
      {"orbit", "pinch", "--input", "/nonexistent.json", "--splits", "1,1"},
  };
  for (const auto& args : bad) {
    const auto r = cli(args);
    EXPECT_EQ(r.code, cmtk::kExitUsage) << (args.empty() ? "" : args[0]) << " " << r.err;
    const json e = json::parse(r.err);
    EXPECT_TRUE(e.contains("error"));
    EXPECT_TRUE(e.contains("message"));
  }
}

TEST(Cli, NotPsdInputIsAnInputError) {
  const std::string h = ::testing::TempDir() + "cmtk_neg.json";
  cmtk::Matrix m = cmtk::Matrix::Identity(2, 2);
  m(1, 1) = -1.0;
  std::ofstream(h) << cmtk::matrix_to_json(m).dump();
  const auto r = cli({"orbit", "pinch", "--input", h, "--splits", "1,1"});
  EXPECT_EQ(r.code, cmtk::kExitUsage);
  EXPECT_EQ(json::parse(r.err)["error"], "NotPSD");
}

}  // namespace
