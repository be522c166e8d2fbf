#pragma once

// Matrix <-> JSON: {"rows": r, "cols": c, "re": [...], "im": [...]} with
// row-major entry order. Doubles round-trip bit-exactly.

#include <span>
#include <vector>

#include <json.hpp>

#include "cmtk/numerics.hpp"

namespace cmtk {

nlohmann::json matrix_to_json(const Matrix& m);

/// Throws BadInput on missing fields, count mismatch or non-finite entries.
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json matrices_to_json(std::span<const Matrix> ms);
std::vector<Matrix> matrices_from_json(const nlohmann::json& j);

Matrix read_matrix_file(const std::string& path);

}  // namespace cmtk
