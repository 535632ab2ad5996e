#ifndef SCHURKIT_CFSOLVER_HPP
#define SCHURKIT_CFSOLVER_HPP

#include <optional>
#include <vector>

#include "schurkit/toeplitz.hpp"

namespace schurkit {

/// Data of a truncated interpolation problem: prescribed Taylor coefficients
/// C_0..C_N (all of one shape) that a Schur-class function must match.
struct SchurProblem {
    std::vector<CMatrix> coeffs;
};

/// Shape-checks the data.
SchurProblem make_problem(std::vector<CMatrix> coeffs);

/// The data as a truncated series of order N.
MatSeries problem_series(const SchurProblem& p);

struct Validation {
    bool solvable = false;
    double sigma_max = 0.0;  // of the level-N Toeplitz truncation
};

/// Solvability = contractivity of the level-N Toeplitz truncation.
Validation validate(const SchurProblem& p, const Tolerances& tol = {});

struct UniquenessVerdict {
    bool unique = false;
    bool M_side_zero = false;  // shorted defect square of T_N vanishes on the first block
    bool N_side_zero = false;  // mirror statement for the adjoint truncation
    double M_witness = 0.0;    // operator norms of the two shorted compressions
    double N_witness = 0.0;
    std::optional<int> terminating_index;  // level of the first degenerate parameter
};

/// A solvable problem has exactly one Schur-class solution iff either shorted
/// defect square vanishes, iff the Schur parameter sequence terminates. Both
/// criteria are evaluated and must agree (InternalInconsistency otherwise).
UniquenessVerdict uniqueness(const SchurProblem& p, const Tolerances& tol = {});

/// The next coefficient of the central (maximum-defect) extension:
/// C_{N+1} = -X_N^* T_{N-1}^* pinv(D_{T*_{N-1}}) [C_1; ...; C_N] with
/// X_N = pinv(D_{T_{N-1}}) [C_N^*; ...; C_1^*]; zero when N = 0.
CMatrix central_next(const SchurProblem& p, const Tolerances& tol = {});

/// One-step extension C_{N+1} = central_next + R_N^{1/2} Y R_M^{1/2}, where
/// R_M / R_N are the two shorted defect compressions and the free contraction
/// Y (full coefficient shape) must annihilate the orthogonal complements of
/// their numerical ranges. Throws PostconditionFailure if the extended
/// truncation fails contractivity.
CMatrix extend(const SchurProblem& p, const CMatrix& Y, const Tolerances& tol = {});

/// Coefficients of the central solution to order K, computed two ways
/// (iterated central_next, and the zero-tail Moebius composition of the Schur
/// parameters); RouteDisagreement if they differ. Returns the composition route.
MatSeries central_solution(const SchurProblem& p, int K, const Tolerances& tol = {});

} // namespace schurkit

#endif
