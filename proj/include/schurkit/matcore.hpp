#ifndef SCHURKIT_MATCORE_HPP
#define SCHURKIT_MATCORE_HPP

#include <Eigen/Dense>
#include <complex>

#include "schurkit/errors.hpp"

namespace schurkit {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

struct Tolerances {
    /// slack above 1 still accepted when testing contractivity
    double contraction_slack = 1e-10;
    /// relative singular-value cutoff for pseudo-inverses and generic ranks
    double rank_rel_tol = 1e-10;
    /// tolerance for verifying operator identities
    double match_tol = 1e-8;

    /// Cutoff on eigenvalues of a defect operator D_T: a singular direction of
    /// a contraction counts toward the defect space iff 1 - sigma^2 exceeds
    /// rank_rel_tol, i.e. its defect eigenvalue exceeds sqrt(rank_rel_tol).
    /// A boundary direction (sigma = 1 exactly) shows up numerically with a
    /// defect eigenvalue of order sqrt(machine eps); this cutoff classifies it
    /// as dead, consistently with the scalar termination rule |gamma| >= 1 - cutoff.
    double defect_cut() const;
};

/// Largest singular value; 0 for empty matrices.
double sigma_max(const CMatrix& M);

/// (M + M*)/2
CMatrix hermitize(const CMatrix& M);

struct ContractionCheck {
    bool ok = false;
    double sigma = 0.0;
};

/// ok iff sigma_max(T) <= 1 + contraction_slack; always reports sigma_max.
ContractionCheck is_contraction(const CMatrix& T, const Tolerances& tol = {});

/// Throws NotAContraction unless is_contraction passes. `where` labels the message.
void require_contraction(const CMatrix& T, const Tolerances& tol = {},
                         const std::string& where = "");

/// Defect operator D_T = (I - T*T)^{1/2}, Hermitian PSD with negative
/// eigenvalues clamped to 0. Requires T contractive within slack.
CMatrix defect(const CMatrix& T, const Tolerances& tol = {});

/// Orthonormal basis (as columns) of the defect subspace of T: eigenvectors of
/// D_T with eigenvalue above the defect cutoff, ordered by descending
/// eigenvalue, deterministic tie-breaking and phase fixing (largest-magnitude
/// entry made real positive). May have 0 columns.
CMatrix defect_basis(const CMatrix& T, const Tolerances& tol = {});

/// Orthonormal basis of ker D_T (the isometric subspace of T): the eigenvectors
/// defect_basis rejects, ordered by ascending eigenvalue.
CMatrix defect_kernel_basis(const CMatrix& T, const Tolerances& tol = {});

/// Moore-Penrose pseudo-inverse via SVD; singular values <= rank_rel_tol * sigma_max
/// are treated as zero.
CMatrix pinv(const CMatrix& M, const Tolerances& tol = {});

/// Hermitian PSD square root via eigendecomposition; negative eigenvalues are
/// clamped at 0; throws NotPSD when an eigenvalue falls below
/// -contraction_slack * max(1, |spectrum|), or when S is visibly non-Hermitian.
CMatrix psd_sqrt(const CMatrix& S, const Tolerances& tol = {});

/// Nearest-in-spirit PSD version of S: hermitize, then clamp negative eigenvalues at 0.
CMatrix psd_clamp(const CMatrix& S);

/// Columns completing an isometric `basis` to a unitary of the ambient space.
CMatrix orthonormal_complement(const CMatrix& basis);

/// Number of singular values above rel_cut * max(sigma_max, floor); `floor`
/// guards rank decisions on matrices whose natural scale is the unit
/// (defect operators, spans of defect vectors) against counting pure noise.
Eigen::Index numerical_rank(const CMatrix& M, double rel_cut, double floor = 0.0);

/// Orthonormal basis of the intersection of two column spans (principal-angle
/// method): directions whose principal cosine is >= 1 - gap_tol.
CMatrix intersect_spans(const CMatrix& P, const CMatrix& Q, double gap_tol);

} // namespace schurkit

#endif
