#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dkg/matrix4.hpp"
#include "dkg/types.hpp"

namespace dkg {

// Dirac matrices in the Dirac representation:
//   gamma^0 = diag(I, -I),  gamma^j = [[0, sigma^j], [-sigma^j, 0]],
//   beta = gamma^0,  alpha^j = gamma^0 gamma^j,  S^m = i gamma^k gamma^l
// for (k, l, m) a cyclic permutation of (1, 2, 3).

Matrix2 pauli(int j);
Matrix4 gamma_matrix(int mu);
Matrix4 beta_matrix();
Matrix4 alpha_matrix(int j);
Matrix4 spin_matrix(int m);

/** Lookup by family name: "gamma" (0..3), "alpha" (1..3), "spin" (1..3), "beta". */
Matrix4 basis_matrix(const std::string& kind, int index);

/**
 * Eigenprojection of the symbol xi_hat . alpha:
 *   P_{+-}(xi) = (I +- xi_hat . alpha) / 2, and P_{+-}(0) = I / 2.
 */
Matrix4 projection(Sign s, const Vec3& xi);

/**
 * Matrix symbol of the projected bilinear form <beta P_+(D) psi, P_s(D) psi'>
 * at input frequency eta and output-shift frequency zeta:
 *   beta P_{flip(s)}(-zeta) P_+(eta).
 * Vanishes when the spatial interaction is parallel: for s = plus at
 * angle(eta, -zeta) = 0, for s = minus at angle(eta, zeta) = 0.
 */
Matrix4 null_symbol(Sign s, const Vec3& eta, const Vec3& zeta);

/**
 * Components of 4 P_+(xi) P_-(eta) = scalar * I - i (rot . S) + (disp . alpha)
 * with scalar = 1 - cos(theta), rot = xi_hat x eta_hat, disp = xi_hat - eta_hat.
 * Each piece is O(theta), which gives the angular smallness of the symbol.
 */
struct AngularParts {
  double scalar;
  Vec3 rot;
  Vec3 disp;
};
AngularParts angular_decomposition(const Vec3& xi, const Vec3& eta);

/** Largest singular value (spectral norm). */
double operator_norm(const Matrix4& a);

struct IdentityCheck {
  std::string name;
  double max_dev = 0.0;  // worst absolute entry deviation over all samples
  bool exact = false;    // true for integer-matrix identities (expected dev 0)
  bool pass = false;
};

struct AlgebraReport {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::vector<IdentityCheck> checks;
  double worst_dev = 0.0;
  std::string worst_name;
  bool exact_pass = false;    // integer-matrix identities at tolerance 0
  bool sampled_pass = false;  // direction-sampled identities at tol
  bool pass = false;
};

/**
 * Checks the Dirac matrix identities (exact integer arithmetic) and the
 * projection identities at `samples` random unit directions.
 */
AlgebraReport verify_algebra(std::uint64_t samples, std::uint64_t seed, double tol);

}  // namespace dkg
