#pragma once

// Constructive unitary-orbit decompositions: pinching a PSD block matrix into
// unitary conjugates of its padded diagonal blocks, and the spectral identity
// behind block-circulant Fourier diagonalization.

#include <span>
#include <vector>

#include "cmtk/inequalities.hpp"
#include "cmtk/numerics.hpp"
#include "cmtk/schemes.hpp"

namespace cmtk {

struct DecompositionResult {
  std::vector<Matrix> unitaries;
  std::vector<Matrix> summands;  // diagonal blocks of h padded with zeros
  double residual;               // max |h - sum U_i S_i U_i*| / max(1, max |h|)
};

/// h = U (A + 0) U* + V (0 + B) V* for the diagonal blocks A (a x a), B (b x b).
/// Throws NotPSD, BadSplit.
DecompositionResult pinch2(const Matrix& h, Eigen::Index a, Eigen::Index b);

/// n-block version, built by recursion on the merged last two blocks.
DecompositionResult pinch_n(const Matrix& h, std::span<const Eigen::Index> splits);

struct CirculantCheck {
  RealVector lhs_spectrum;  // direct sum of |C_k|^2, ascending
  RealVector rhs_spectrum;  // |circ(A_1..A_n)|^2, ascending
  double max_gap;
  Matrix fourier_kron;      // F_n (x) I_m
};

CirculantCheck circulant_identity(std::span<const Matrix> a);

struct OrbitReport {
  std::vector<InequalityCase> cases;
  int violations = 0;
  double min_rel_margin = 0.0;
};

/// Trace bounds, anti-norm bounds for every k when p >= 2, and the
/// roots-of-unity trace bound for label-1 schemes. Throws GramViolation.
OrbitReport orbit_consequence_suite(const IdentityScheme& scheme, double p,
                                    std::span<const Matrix> z);

}  // namespace cmtk
