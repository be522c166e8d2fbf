#pragma once

// Catalogue of inequality families. Each family knows its exponent window
// and a list of operand variants: a variant maps raw Ginibre samples of
// fixed shapes onto a structured operand tuple and evaluates the family.

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cmtk/inequalities.hpp"

namespace cmtk {

enum class Direction { upper, lower, two_sided };

std::string_view to_string(Direction d);

struct FamilySpec {
  std::string id;
  std::string arity;
  std::string p_window;
  Direction direction;  // in the regime p >= 2 where the family is stated there
  Status status;
  std::string anchor;
};

using Shape = std::pair<Eigen::Index, Eigen::Index>;

struct Variant {
  std::string name;
  std::function<std::vector<Shape>(int dim)> shapes;
  std::function<bool(double p)> applies;
  std::function<std::vector<InequalityCase>(double p, std::span<const Matrix> raw)> eval;
};

struct Family {
  FamilySpec spec;
  std::function<bool(double p)> in_window;
  std::vector<Variant> variants;

  const Variant& variant(std::string_view name) const;
};

const std::vector<Family>& registry();

/// Throws UnknownFamily.
const Family& find_family(std::string_view id);

std::vector<std::string> family_ids(Status status);

/// Raw Ginibre operands for a variant, drawn row-major in shape order.
std::vector<Matrix> draw_raw(const Variant& v, int dim, Rng& rng);

}  // namespace cmtk
