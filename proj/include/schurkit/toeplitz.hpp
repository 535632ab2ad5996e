#ifndef SCHURKIT_TOEPLITZ_HPP
#define SCHURKIT_TOEPLITZ_HPP

#include <vector>

#include "schurkit/schur.hpp"
#include "schurkit/shorted.hpp"

namespace schurkit {

/// Lower block Toeplitz truncation of order n: block (i,j) = coeffs[i-j] for
/// i >= j, zero above the diagonal; (n+1) x (n+1) blocks.
CMatrix build_toeplitz(const std::vector<CMatrix>& coeffs, int n);

/// The flipped truncation S with block (i,j) = coeffs[i+j-n] for i+j >= n.
/// Identical to build_toeplitz(...) times the block anti-diagonal identity;
/// that identity is re-checked internally.
CMatrix flip_toeplitz(const std::vector<CMatrix>& coeffs, int n);

/// The defect square of T_n shorted to the first input block, computed two
/// ways (variational shorted operator, and the one-step formula through
/// pinv(D_{T*_{n-1}}) applied to the stacked column of coefficients); throws
/// RouteDisagreement if they differ beyond match_tol.
ShortedResult defect_shorted_M(const std::vector<CMatrix>& coeffs, int n,
                               const Tolerances& tol = {});

/// Same for the adjoint-coefficient truncation, shorted to the first block of
/// the opposite side.
ShortedResult defect_shorted_N(const std::vector<CMatrix>& coeffs, int n,
                               const Tolerances& tol = {});

/// The shorted defect square computed from Schur parameters alone:
/// defect_chain(cs, n)^* defect_chain(cs, n).
CMatrix product_formula(const ChoiceSequence& cs, int n, const Tolerances& tol = {});

struct LimitDiagnostics {
    std::vector<CMatrix> M_sequence;  // product_formula(cs, k), k = 0..n_max
    std::vector<CMatrix> N_sequence;  // same for the adjoint sequence
    double M_limit_est = 0.0;         // operator norm of the last M entry
    double N_limit_est = 0.0;
    bool observable = false;          // M_limit_est below match_tol
    bool controllable = false;
    double monotonicity_violation = 0.0;  // worst eigenvalue increase along either sequence
};

/// Tracks both shorted-defect sequences of a choice sequence out to n_max.
LimitDiagnostics limit_diagnostics(const ChoiceSequence& cs, int n_max,
                                   const Tolerances& tol = {});

struct RangeInclusion {
    bool M_in_ran = false;  // first input block subspace inside ran D_{T_n}
    bool N_in_ran = false;  // mirror statement for the adjoint truncation
    bool all_strict = false;  // every Schur parameter up to level n strictly contractive
};

/// Range inclusion criterion for strictness of the parameters; the three
/// verdicts must agree, otherwise InternalInconsistency is thrown.
RangeInclusion range_inclusion_check(const std::vector<CMatrix>& coeffs, int n,
                                     const Tolerances& tol = {});

} // namespace schurkit

#endif
