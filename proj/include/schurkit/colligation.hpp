#ifndef SCHURKIT_COLLIGATION_HPP
#define SCHURKIT_COLLIGATION_HPP

#include <cstdint>

#include "schurkit/series.hpp"

namespace schurkit {

/// Unitary system node with equal input and output dimension m and state
/// dimension h, stored as the single unitary
///     U = [ D  C ]   (input  + state) -> (output + state)
///         [ B  A ]
/// acting on C^m (+) C^h. Transfer coefficients: C_0 = D, C_k = C A^{k-1} B.
struct Colligation {
    Eigen::Index m = 0;
    Eigen::Index h = 0;
    CMatrix U;

    CMatrix D() const { return U.topLeftCorner(m, m); }
    CMatrix C() const { return U.topRightCorner(m, h); }
    CMatrix B() const { return U.bottomLeftCorner(h, m); }
    CMatrix A() const { return U.bottomRightCorner(h, h); }
};

/// Validates the shape and unitarity of U within match_tol.
Colligation make_colligation(Eigen::Index m, CMatrix U, const Tolerances& tol = {});

/// Deterministic Haar-style random unitary colligation (QR of a Gaussian
/// matrix with the R-diagonal phases absorbed).
Colligation random_colligation(Eigen::Index m, Eigen::Index h, std::uint64_t seed);

/// Taylor coefficients of the transfer function to order K.
MatSeries transfer_coeffs(const Colligation& col, int K);

/// Orthonormal basis of H_{n,m} = ker D_{A^n} intersect ker D_{A*^m}
/// (the subspace on which the first n forward and m backward steps of A are
/// isometric); n = 0 or m = 0 drop the corresponding factor.
CMatrix hnm_basis(const Colligation& col, int n, int m_idx, const Tolerances& tol = {});

struct SimplicityReport {
    bool simple = false;
    Eigen::Index cnu_defect_dim = 0;  // codimension of the span of the defect orbit
};

/// A colligation is simple when the defect orbit
/// { A*^k D_A x, A^k D_{A*} y : k < h } spans the state space; the complement
/// carries the unitary (removable) part of A.
SimplicityReport simplicity_check(const Colligation& col, const Tolerances& tol = {});

struct Main1Report {
    bool skipped = false;  // identity only claimed for simple colligations
    double max_residual_M = 0.0;
    double max_residual_N = 0.0;
};

/// Checks, for every level n <= n_max and every input (resp. output) basis
/// vector, that the squared norm of the projection of B e_j onto ker D_{A^n}
/// equals the squared norm of the Schur-parameter defect chain of the transfer
/// function applied to e_j (and the mirror identity through C* and the
/// adjoint chain).
Main1Report verify_main1(const Colligation& col, int n_max, const Tolerances& tol = {});

struct AssociatedSystem {
    Colligation system;
    double unitarity_residual = 0.0;
    double transfer_residual = 0.0;  // against the shifted-quotient route, at verify_order
    bool theta1_constant_nonunitary = false;  // reported, not asserted
};

/// The unitary colligation whose transfer function is the first associated
/// function of the given one (the Schur-algorithm shift of its transfer
/// function), built directly from the blocks of U on the defect spaces of D.
/// Throws DegenerateDefect when a defect space of D is trivial, and
/// VerificationFailure when the construction fails its own two-route checks.
AssociatedSystem associated_system(const Colligation& col, int verify_order = 4,
                                   const Tolerances& tol = {});

/// Taylor coefficients, on the defect coordinates of a contraction A, of the
/// function Psi_A with Psi_0 = -A and Psi_k = D_{A*} A*^{k-1} D_A (k >= 1),
/// compressed through defect_basis(A) on the right and defect_basis(A*) on
/// the left.
MatSeries characteristic_function(const CMatrix& A, int K, const Tolerances& tol = {});

} // namespace schurkit

#endif
