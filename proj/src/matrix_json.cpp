#include "cmtk/matrix_json.hpp"

#include <fstream>

#include "cmtk/error.hpp"

namespace cmtk {

nlohmann::json matrix_to_json(const Matrix& m) {
  std::vector<double> re;
  std::vector<double> im;
  re.reserve(static_cast<std::size_t>(m.size()));
  im.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re.push_back(m(i, j).real());
      im.push_back(m(i, j).imag());
    }
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

namespace {

Matrix parse_matrix(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("re") ||
      !j.contains("im")) {
    throw Error(ErrorKind::BadInput, "matrix JSON needs rows, cols, re, im");
  }
  const auto rows = j.at("rows").get<long long>();
  const auto cols = j.at("cols").get<long long>();
  if (rows <= 0 || cols <= 0) throw Error(ErrorKind::BadInput, "matrix dimensions must be positive");
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  const auto count = static_cast<std::size_t>(rows * cols);
  if (re.size() != count || im.size() != count) {
    throw Error(ErrorKind::BadInput, "entry count must equal rows*cols");
  }
  Matrix m(rows, cols);
  for (long long i = 0; i < rows; ++i) {
    for (long long k = 0; k < cols; ++k) {
      const auto at = static_cast<std::size_t>(i * cols + k);
      m(i, k) = Complex(re[at], im[at]);
    }
  }
  if (!all_finite(m)) throw Error(ErrorKind::BadInput, "matrix entries must be finite");
  return m;
}

}  // namespace

Matrix matrix_from_json(const nlohmann::json& j) {
  try {
    return parse_matrix(j);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::BadInput, std::string("matrix JSON: ") + e.what());
  }
}

nlohmann::json matrices_to_json(std::span<const Matrix> ms) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& m : ms) out.push_back(matrix_to_json(m));
  return out;
}

std::vector<Matrix> matrices_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorKind::BadInput, "expected an array of matrices");
  std::vector<Matrix> out;
  for (const auto& item : j) out.push_back(matrix_from_json(item));
  return out;
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::BadInput, "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::BadInput, path + ": " + e.what());
  }
  return matrix_from_json(j);
}

}  // namespace cmtk
