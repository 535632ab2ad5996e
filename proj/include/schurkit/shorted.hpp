#ifndef SCHURKIT_SHORTED_HPP
#define SCHURKIT_SHORTED_HPP

#include "schurkit/matcore.hpp"

namespace schurkit {

/// A subspace of C^ambient_dim given by an isometric column basis (k >= 0).
struct Subspace {
    Eigen::Index ambient_dim = 0;
    CMatrix basis;  // ambient_dim x k, basis* basis = I_k
};

/// Validates orthonormality of the columns within match_tol.
Subspace make_subspace(CMatrix basis, const Tolerances& tol = {});

/// Subspace spanned by coordinate axes [first, first+count) of C^ambient_dim.
Subspace coordinate_subspace(Eigen::Index ambient_dim, Eigen::Index first, Eigen::Index count);

struct ShortedResult {
    CMatrix full;        // ambient PSD matrix, kernel contains the complement of K
    CMatrix compressed;  // basis* full basis, k x k PSD
    Eigen::Index numerical_rank = 0;
    Tolerances tol_used;
};

/// Kreĭn shorted operator of a PSD matrix S to the subspace K: the maximal
/// PSD matrix below S with range inside K, computed by the Schur-complement
/// block formula in coordinates where K is the leading block.
ShortedResult shorted_operator(const CMatrix& S, const Subspace& K, const Tolerances& tol = {});

/// The variational value inf_{phi in K-perp} (S(f+phi), f+phi), computed
/// independently of shorted_operator through a least-squares solve.
double shorted_quadratic_form(const CMatrix& S, const Subspace& K, const CVector& f,
                              const Tolerances& tol = {});

struct ZeroVerdict {
    bool zero = false;
    double witness_norm = 0.0;
};

/// S_K = 0 detection: the shorted compression's operator norm against match_tol.
ZeroVerdict shorted_is_zero(const CMatrix& S, const Subspace& K, const Tolerances& tol = {});

} // namespace schurkit

#endif
