#include "cmtk/registry.hpp"

#include <algorithm>

#include "cmtk/error.hpp"

namespace cmtk {

namespace {

using Cases = std::vector<InequalityCase>;
using Raw = std::span<const Matrix>;

bool any_p(double p) { return p > 0.0; }
bool above_one(double p) { return p > 1.0; }
bool from_one(double p) { return p >= 1.0; }
bool from_two(double p) { return p >= 2.0; }
bool dual_window(double p) { return p > 1.0 && p <= 2.0; }
bool hanner_generic(double p) { return (p >= 1.0 && p <= 4.0 / 3.0) || p >= 4.0; }

std::vector<Shape> squares(int count, int dim) {
  return std::vector<Shape>(static_cast<std::size_t>(count), Shape{dim, dim});
}

Variant tuple_variant(std::string name, int count, std::function<Cases(double, Raw)> eval) {
  return {std::move(name), [count](int dim) { return squares(count, dim); },
          [](double) { return true; }, std::move(eval)};
}

Matrix hermitian_part(const Matrix& g) { return (g + g.adjoint()) * 0.5; }

Subunitary haar_block(const Matrix& seed, Eigen::Index cols) {
  return Subunitary::checked(haar_columns(seed, cols), 1e-10);
}

// Variant whose first raw operand is an s x s seed for a Haar s x t block,
// followed by the operand tuples the evaluator consumes.
Variant haar_variant(std::string name, int s, int t, int operand_count,
                     std::function<Cases(double, const Subunitary&, Raw)> eval) {
  return {std::move(name),
          [s, operand_count](int dim) {
            std::vector<Shape> shapes{{s, s}};
            const auto rest = squares(operand_count, dim);
            shapes.insert(shapes.end(), rest.begin(), rest.end());
            return shapes;
          },
          [](double) { return true; },
          [t, eval = std::move(eval)](double p, Raw raw) {
            return eval(p, haar_block(raw[0], t), raw.subspan(1));
          }};
}

std::vector<Variant> pair_variants(std::string id) {
  return {tuple_variant("generic", 2,
                        [id](double p, Raw r) { return eval_pair(id, p, r[0], r[1]); }),
          tuple_variant("hermitian", 2, [id](double p, Raw r) {
            return eval_pair(id, p, hermitian_part(r[0]), hermitian_part(r[1]));
          })};
}

template <class F>
std::vector<Variant> counts(std::initializer_list<int> ns, F make) {
  std::vector<Variant> out;
  for (const int n : ns) out.push_back(make(n));
  return out;
}

std::vector<Variant> roots_variants(std::string id) {
  return counts({2, 3, 4}, [id](int n) {
    return tuple_variant("n" + std::to_string(n), n,
                         [id](double p, Raw r) { return eval_roots(id, p, r); });
  });
}

std::vector<Variant> pairwise_variants(std::string id) {
  return counts({2, 3, 4}, [id](int n) {
    return tuple_variant("n" + std::to_string(n), n,
                         [id](double p, Raw r) { return eval_pairwise(id, p, r); });
  });
}

std::vector<Variant> littlewood_variants(std::string id) {
  return counts({1, 2}, [id](int level) {
    return tuple_variant("level" + std::to_string(level), 1 << level, [id, level](double p, Raw r) {
      return eval_littlewood(id, level, p, r);
    });
  });
}

std::vector<Variant> table4_variants(int label, std::initializer_list<int> ns) {
  return counts(ns, [label](int n) {
    const int count = label == 4 ? 2 * n : n;
    return tuple_variant("n" + std::to_string(n), count, [label, n](double p, Raw r) {
      if (label == 4) return eval_table4(label, p, r.first(n), r.subspan(n));
      return eval_table4(label, p, r);
    });
  });
}

std::vector<Variant> ee_variants(std::string id) {
  return counts({2, 3, 4}, [id](int n) {
    return tuple_variant("n" + std::to_string(n), 2, [id, n](double p, Raw r) {
      return eval_roots_pair(id, n, p, r[0], r[1]);
    });
  });
}

// Scheme sizes used by the suite: label 0 fixes two operands, label 2 is
// read at Littlewood level 2, the rest at n = 3.
int suite_scheme_n(int label) {
  if (label == 0) return 2;
  if (label == 2) return 2;
  return 3;
}

std::vector<Variant> sos_variants() {
  return counts({0, 1, 2, 3, 4, 5, 6, 7}, [](int label) {
    const IdentityScheme scheme = table1_scheme(label, suite_scheme_n(label));
    return tuple_variant("label" + std::to_string(label), static_cast<int>(scheme.base_count()),
                         [scheme](double p, Raw r) {
                           return eval_sum_of_squares_trace(scheme, p, r);
                         });
  });
}

std::vector<Variant> antinorm_variants() {
  return counts({0, 1, 3, 4, 5, 6, 7}, [](int label) {
    const IdentityScheme scheme = table1_scheme(label, suite_scheme_n(label));
    return tuple_variant("label" + std::to_string(label), static_cast<int>(scheme.base_count()),
                         [scheme](double p, Raw r) {
                           const auto x = apply_coefficients(scheme.left, r);
                           const auto y = apply_coefficients(scheme.right, r);
                           Cases out;
                           const int m = static_cast<int>(r.front().cols());
                           for (int k = 1; k <= m; ++k) {
                             auto c = eval_antinorm(p, k, x, y);
                             out.insert(out.end(), c.begin(), c.end());
                           }
                           return out;
                         });
  });
}

std::vector<Variant> subunitary_variants() {
  std::vector<Variant> out;
  for (const auto& [s, t] : {std::pair{4, 3}, std::pair{3, 2}, std::pair{3, 3}}) {
    out.push_back(haar_variant("haar" + std::to_string(s) + "x" + std::to_string(t), s, t, t,
                               [](double p, const Subunitary& u, Raw y) {
                                 return eval_subunitary_q(u, p, y);
                               }));
  }
  return out;
}

std::vector<Variant> table5_variants() {
  return counts({0, 1, 2, 3, 5, 6, 7}, [](int label) {
    const int n = label == 0 ? 2 : (label == 2 ? 2 : 3);
    const int count = static_cast<int>(table5_subunitary(label, n).u.cols());
    return tuple_variant("label" + std::to_string(label), count, [label, n](double p, Raw r) {
      return eval_table5_row(label, n, p, r);
    });
  });
}

std::vector<Variant> directsum_variants() {
  return counts({2, 3}, [](int n) {
    return tuple_variant("n" + std::to_string(n), n, [](double p, Raw r) {
      Cases out;
      const int m = static_cast<int>(r.front().rows());
      for (int j = 0; j < m; ++j) out.push_back(eval_directsum_eig(p, j, r));
      return out;
    });
  });
}

std::vector<Variant> king_variants() {
  return {tuple_variant("general", 4,
                        [](double p, Raw r) { return eval_king(p, r[0], r[1], r[2], r[3]); }),
          tuple_variant("hermitian_sym", 2, [](double p, Raw r) {
            const Matrix a = hermitian_part(r[0]);
            const Matrix b = hermitian_part(r[1]);
            return eval_king(p, a, b, a, b);
          })};
}

std::vector<Variant> king_psd_variants() {
  return {{"gram", [](int dim) { return std::vector<Shape>{{2 * dim, 2 * dim}}; },
           [](double) { return true; },
           [](double p, Raw r) { return eval_king_psd(p, r[0].adjoint() * r[0]); }}};
}

std::vector<Variant> trace_dual_variants() {
  std::vector<Variant> out;
  out.push_back(tuple_variant("fourier2", 4, [](double p, Raw r) {
    return Cases{eval_trace_dual(fourier_matrix(2), p, r.first(2), r.subspan(2))};
  }));
  out.push_back(haar_variant("haar4x3", 4, 3, 7, [](double p, const Subunitary& u, Raw r) {
    return Cases{eval_trace_dual(u, p, r.first(3), r.subspan(3))};
  }));
  return out;
}

std::vector<Variant> hanner_variants() {
  Variant generic = tuple_variant("generic", 2,
                                  [](double p, Raw r) { return eval_pair("HANNER", p, r[0], r[1]); });
  generic.applies = hanner_generic;
  Variant ordered = tuple_variant("psd_order", 2, [](double p, Raw r) {
    const Matrix pp = r[0] * r[0].adjoint();
    const Matrix qq = r[1] * r[1].adjoint();
    return eval_pair("HANNER", p, pp + qq, pp - qq, true);
  });
  return {generic, ordered};
}

std::vector<Variant> conjecture_roots_variants(std::string id) {
  return counts({2, 3}, [id](int n) {
    return tuple_variant("n" + std::to_string(n), n,
                         [id](double p, Raw r) { return eval_conjecture(id, p, r); });
  });
}

std::vector<Variant> ak_variants() {
  std::vector<Variant> out = counts({1, 2, 3}, [](int big_n) {
    return tuple_variant("N" + std::to_string(big_n), 2 * big_n,
                         [](double p, Raw r) { return eval_conjecture("AK_COMPRESSION", p, r); });
  });
  out.push_back({"N2_psd", [](int dim) { return std::vector<Shape>{{2 * dim, 2 * dim}}; },
                 [](double) { return true; },
                 [](double p, Raw r) {
                   const Matrix m = r[0].adjoint() * r[0];
                   const Eigen::Index d = m.rows() / 2;
                   const std::vector<Matrix> blocks{m.topLeftCorner(d, d), m.topRightCorner(d, d),
                                                    m.bottomLeftCorner(d, d),
                                                    m.bottomRightCorner(d, d)};
                   return eval_conjecture("AK_COMPRESSION", p, blocks);
                 }});
  return out;
}

Family family(std::string id, std::string arity, std::string window_text, Direction d, Status s,
              std::string anchor, std::function<bool(double)> window,
              std::vector<Variant> variants) {
  return {{std::move(id), std::move(arity), std::move(window_text), d, s, std::move(anchor)},
          std::move(window),
          std::move(variants)};
}

std::vector<Family> build_registry() {
  const auto T = Status::theorem;
  const auto U = Direction::upper;
  const auto L = Direction::lower;
  const auto B = Direction::two_sided;
  std::vector<Family> r;
  r.push_back(family("CM_P", "A, B", "p > 0", U, T,
                     "Clarkson-McCarthy inequality, p-power form (McCarthy 1967)", any_p,
                     pair_variants("CM_P")));
  r.push_back(family("CM_Q", "A, B", "p > 1", L, T,
                     "Clarkson-McCarthy inequality, conjugate-exponent form (McCarthy 1967)",
                     above_one, pair_variants("CM_Q")));
  r.push_back(family("BCL", "A, B", "p >= 1", U, T,
                     "optimal 2-uniform convexity (Ball, Carlen and Lieb 1994)", from_one,
                     pair_variants("BCL")));
  r.push_back(family("BCL_LOWER", "A, B", "p > 0", U, T,
                     "complement of the 2-uniform convexity bound", any_p,
                     pair_variants("BCL_LOWER")));
  r.push_back(family("BK_SQ", "A, B", "p > 0", U, T,
                     "squared-norm parallelogram bound (Bhatia and Kittaneh)", any_p,
                     pair_variants("BK_SQ")));
  r.push_back(family("HANNER", "A, B", "1 <= p <= 4/3 or p >= 4; 1 <= p with A+B, A-B >= 0", U, T,
                     "Hanner's inequality, partial cases (Ball, Carlen and Lieb 1994)", from_one,
                     hanner_variants()));
  r.push_back(family("ABS_CM", "A, B", "p > 0", B, T,
                     "two-sided bound against |A| + |B| and |A| - |B|", any_p,
                     pair_variants("ABS_CM")));
  r.push_back(family("ABS_HANNER", "A, B", "p >= 1", U, Status::conditional,
                     "weaker Hanner form, conditional on Hanner for positive operands", from_one,
                     pair_variants("ABS_HANNER")));
  r.push_back(family("BK_P", "A_1..A_n", "p > 0", U, T,
                     "roots-of-unity Clarkson-McCarthy, p-power form (Bhatia and Kittaneh 2004)",
                     any_p, roots_variants("BK_P")));
  r.push_back(family("BK_Q", "A_1..A_n", "p > 1", L, T,
                     "roots-of-unity Clarkson-McCarthy, conjugate form (Bhatia and Kittaneh 2004)",
                     above_one, roots_variants("BK_Q")));
  r.push_back(family("TABLE4_1", "A_1..A_n", "p > 0", B, T,
                     "two-sided trace bound from the Fourier identity", any_p,
                     roots_variants("TABLE4_1")));
  r.push_back(family("ROOTS_GRAM", "A_1..A_n", "p > 0", U, T,
                     "Fourier combinations against the Gram sum", any_p,
                     roots_variants("ROOTS_GRAM")));
  r.push_back(family("HK_P", "A_1..A_n", "p > 0", U, T,
                     "sum and pairwise differences, p-power form (Hirzallah and Kittaneh 2008)",
                     any_p, pairwise_variants("HK_P")));
  r.push_back(family("HK_Q", "A_1..A_n", "p > 1", L, T,
                     "sum and pairwise differences, conjugate form (Audenaert and Kittaneh 2012)",
                     above_one, pairwise_variants("HK_Q")));
  r.push_back(family("TABLE4_3", "A_1..A_n", "p > 0", B, T,
                     "two-sided trace bound from the pairwise-difference identity", any_p,
                     pairwise_variants("TABLE4_3")));
  r.push_back(family("KE_P", "A_1..A_{2^n}", "p > 0", U, T,
                     "Littlewood matrix Clarkson-McCarthy, p-power form (Keckic 2019)", any_p,
                     littlewood_variants("KE_P")));
  r.push_back(family("KE_Q", "A_1..A_{2^n}", "p > 1", L, T,
                     "Littlewood matrix Clarkson-McCarthy, conjugate form (Keckic 2019)",
                     above_one, littlewood_variants("KE_Q")));
  r.push_back(family("TABLE4_2", "A_1..A_{2^n}", "p > 0", B, T,
                     "two-sided trace bound from the Littlewood identity", any_p,
                     littlewood_variants("TABLE4_2")));
  r.push_back(family("TABLE4_4", "A_1..A_n, B_1..B_n", "p > 0", B, T,
                     "two-sided trace bound from the cross-difference identity", any_p,
                     table4_variants(4, {1, 2, 3})));
  r.push_back(family("TABLE4_5", "A_1..A_n", "p > 0", B, T,
                     "two-sided trace bound from the centroid identity", any_p,
                     table4_variants(5, {2, 3, 4})));
  r.push_back(family("TABLE4_6", "A_1..A_n", "p > 0", B, T,
                     "two-sided trace bound from the mean-variance identity", any_p,
                     table4_variants(6, {2, 3, 4})));
  r.push_back(family("TABLE4_7", "A_1..A_n", "p > 0", B, T,
                     "two-sided trace bound from the sign-pattern identity", any_p,
                     table4_variants(7, {1, 2, 3})));
  r.push_back(family("EE_P", "A, B, n", "p > 0", U, T,
                     "pair combined with the n-th roots of unity, p-power form", any_p,
                     ee_variants("EE_P")));
  r.push_back(family("EE_Q", "A, B, n", "p > 1", L, T,
                     "pair combined with the n-th roots of unity, conjugate form", above_one,
                     ee_variants("EE_Q")));
  r.push_back(family("SOS_TRACE", "scheme, z", "p > 0", B, T,
                     "trace bounds under a sum-of-squares identity", any_p, sos_variants()));
  r.push_back(family("SUBUNITARY_Q", "U, Y_1..Y_t", "p > 1", L, T,
                     "conjugate-exponent bound for subunitary coefficients", above_one,
                     subunitary_variants()));
  r.push_back(family("TABLE5_ROW", "label, Y_1..Y_t", "p > 1", L, T,
                     "subunitary bound at the structured coefficient matrices", above_one,
                     table5_variants()));
  r.push_back(family("ANTINORM", "X_1..X_s, Y_1..Y_t, k", "p >= 2", L, T,
                     "symmetric anti-norm bounds (anti-norms after Bourin and Hiai 2011)",
                     from_two, antinorm_variants()));
  r.push_back(family("DIRECTSUM_EIG", "A_1..A_n, j", "p >= 2", U, T,
                     "eigenvalue bound for the direct sum of Fourier combinations", from_two,
                     directsum_variants()));
  r.push_back(family("KING", "X, Y, Z, W", "p >= 1", U, T,
                     "2 x 2 block norm bound (King 2003)", from_one, king_variants()));
  r.push_back(family("KING_PSD", "M >= 0", "p >= 1", U, T,
                     "PSD block norm compression (King 2003)", from_one, king_psd_variants()));
  r.push_back(family("TRACE_DUAL", "U, Y_1..Y_t, Z_1..Z_s", "1 < p <= 2", U, T,
                     "trace duality bound for subunitary coefficients (after Fack and Kosaki 1986)",
                     dual_window, trace_dual_variants()));
  const auto C = Status::conjecture;
  r.push_back(family("CONJ_5_2", "A, B", "p > 0", U, C,
                     "sharpened 2-uniform convexity complement (false)", any_p,
                     {tuple_variant("pair", 2, [](double p, Raw raw) {
                       return eval_conjecture("CONJ_5_2", p, raw);
                     })}));
  r.push_back(family("CONJ_5_3", "A_1..A_n", "p > 0", U, C,
                     "n-operator form of the sharpened complement", any_p,
                     conjecture_roots_variants("CONJ_5_3")));
  r.push_back(family("CONJ_5_4", "A_1..A_n", "p > 0", U, C,
                     "n-operator form of the 2-uniform convexity complement", any_p,
                     conjecture_roots_variants("CONJ_5_4")));
  r.push_back(family("AK_COMPRESSION", "A_1..A_N, B_1..B_N", "p >= 1", U, C,
                     "norm compression conjecture (Audenaert and Kittaneh 2012)", from_one,
                     ak_variants()));
  return r;
}

}  // namespace

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::upper: return "upper";
    case Direction::lower: return "lower";
    case Direction::two_sided: return "two_sided";
  }
  return "upper";
}

const Variant& Family::variant(std::string_view name) const {
  for (const auto& v : variants) {
    if (v.name == name) return v;
  }
  throw Error(ErrorKind::UnknownFamily,
              spec.id + " has no variant '" + std::string(name) + "'");
}

const std::vector<Family>& registry() {
  static const std::vector<Family> families = build_registry();
  return families;
}

const Family& find_family(std::string_view id) {
  for (const auto& f : registry()) {
    if (f.spec.id == id) return f;
  }
  throw Error(ErrorKind::UnknownFamily, "no family '" + std::string(id) + "'");
}

std::vector<std::string> family_ids(Status status) {
  std::vector<std::string> ids;
  for (const auto& f : registry()) {
    if (f.spec.status == status) ids.push_back(f.spec.id);
  }
  return ids;
}

std::vector<Matrix> draw_raw(const Variant& v, int dim, Rng& rng) {
  std::vector<Matrix> raw;
  for (const auto& [rows, cols] : v.shapes(dim)) raw.push_back(ginibre(rows, cols, rng));
  return raw;
}

}  // namespace cmtk
