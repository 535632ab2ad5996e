#include "schurkit/cfsolver.hpp"

#include <Eigen/Eigenvalues>
#include <string>

namespace schurkit {

namespace {

double max_abs(const CMatrix& M) { return M.size() == 0 ? 0.0 : M.cwiseAbs().maxCoeff(); }

void check_problem(const SchurProblem& p, const char* who) {
    if (p.coeffs.empty()) throw DimensionMismatch(std::string(who) + ": empty coefficient list");
    const Eigen::Index r = p.coeffs[0].rows(), c = p.coeffs[0].cols();
    if (r == 0 || c == 0) throw ShapeMismatch(std::string(who) + ": empty coefficient shape");
    for (const auto& m : p.coeffs)
        if (m.rows() != r || m.cols() != c)
            throw ShapeMismatch(std::string(who) + ": coefficients of mixed shapes");
}

void require_solvable(const SchurProblem& p, const Tolerances& tol) {
    auto v = validate(p, tol);
    if (!v.solvable) throw NotSolvable(v.sigma_max);
}

/// Orthonormal eigenbasis of the numerical range of a PSD matrix (unit-scale
/// floored cutoff, same grading as defect-dimension decisions).
CMatrix psd_range_basis(const CMatrix& S, const Tolerances& tol) {
    if (S.rows() == 0) return CMatrix(0, 0);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitize(S));
    const Eigen::VectorXd& vals = es.eigenvalues();  // ascending
    const double cut = tol.rank_rel_tol * std::max(1.0, vals.cwiseAbs().maxCoeff());
    Eigen::Index keep = 0;
    for (Eigen::Index i = 0; i < vals.size(); ++i)
        if (vals(i) > cut) ++keep;
    return es.eigenvectors().rightCols(keep);
}

} // namespace

SchurProblem make_problem(std::vector<CMatrix> coeffs) {
    SchurProblem p{std::move(coeffs)};
    check_problem(p, "make_problem");
    return p;
}

MatSeries problem_series(const SchurProblem& p) {
    check_problem(p, "problem_series");
    return MatSeries(p.coeffs);
}

Validation validate(const SchurProblem& p, const Tolerances& tol) {
    check_problem(p, "validate");
    const int n = static_cast<int>(p.coeffs.size()) - 1;
    auto c = is_contraction(build_toeplitz(p.coeffs, n), tol);
    return {c.ok, c.sigma};
}

UniquenessVerdict uniqueness(const SchurProblem& p, const Tolerances& tol) {
    require_solvable(p, tol);
    const int n = static_cast<int>(p.coeffs.size()) - 1;
    UniquenessVerdict v;
    v.M_witness = sigma_max(defect_shorted_M(p.coeffs, n, tol).compressed);
    v.N_witness = sigma_max(defect_shorted_N(p.coeffs, n, tol).compressed);
    v.M_side_zero = v.M_witness <= tol.match_tol;
    v.N_side_zero = v.N_witness <= tol.match_tol;
    v.unique = v.M_side_zero || v.N_side_zero;

    ChoiceSequence cs = operator_schur_params(problem_series(p), n, tol);
    const bool term = terminated(cs);
    const bool term_m = term && cs.in_bases.back().cols() == 0;
    const bool term_n = term && cs.out_bases.back().cols() == 0;
    if (term) v.terminating_index = static_cast<int>(cs.gammas.size()) - 1;

    // the shorted-defect verdicts must reproduce the termination pattern
    if (term_m != v.M_side_zero || term_n != v.N_side_zero)
        throw InternalInconsistency(
            "uniqueness: shorted-defect verdict disagrees with parameter termination");
    return v;
}

CMatrix central_next(const SchurProblem& p, const Tolerances& tol) {
    require_solvable(p, tol);
    const int n = static_cast<int>(p.coeffs.size()) - 1;
    const Eigen::Index r = p.coeffs[0].rows(), c = p.coeffs[0].cols();
    if (n == 0) return CMatrix::Zero(r, c);

    CMatrix tprev = build_toeplitz(p.coeffs, n - 1);
    CMatrix col(static_cast<Eigen::Index>(n) * r, c);       // [C_1; ...; C_n]
    CMatrix col_adj(static_cast<Eigen::Index>(n) * c, r);   // [C_n^*; ...; C_1^*]
    for (int i = 1; i <= n; ++i) {
        col.block(static_cast<Eigen::Index>(i - 1) * r, 0, r, c) = p.coeffs[static_cast<size_t>(i)];
        col_adj.block(static_cast<Eigen::Index>(n - i) * c, 0, c, r) =
            p.coeffs[static_cast<size_t>(i)].adjoint();
    }
    CMatrix x = pinv(defect(tprev, tol), tol) * col_adj;
    CMatrix y = pinv(defect(tprev.adjoint(), tol), tol) * col;
    return -(x.adjoint() * (tprev.adjoint() * y));
}

CMatrix extend(const SchurProblem& p, const CMatrix& Y, const Tolerances& tol) {
    require_solvable(p, tol);
    const int n = static_cast<int>(p.coeffs.size()) - 1;
    const Eigen::Index r = p.coeffs[0].rows(), c = p.coeffs[0].cols();
    if (Y.rows() != r || Y.cols() != c)
        throw ShapeMismatch("extend: Y must have the coefficient shape");
    {
        auto chk = is_contraction(Y, tol);
        if (!chk.ok) throw NotAContraction(chk.sigma, "extend: Y");
    }
    CMatrix rm = defect_shorted_M(p.coeffs, n, tol).compressed;  // c x c
    CMatrix rn = defect_shorted_N(p.coeffs, n, tol).compressed;  // r x r
    CMatrix bm = psd_range_basis(rm, tol);
    CMatrix bn = psd_range_basis(rn, tol);
    CMatrix in_perp = Y * (CMatrix::Identity(c, c) - bm * bm.adjoint());
    CMatrix out_perp = (CMatrix::Identity(r, r) - bn * bn.adjoint()) * Y;
    if (max_abs(in_perp) > tol.match_tol || max_abs(out_perp) > tol.match_tol)
        throw ShapeMismatch("extend: Y does not vanish off the shorted numerical ranges");

    CMatrix next = central_next(p, tol) + psd_sqrt(rn, tol) * Y * psd_sqrt(rm, tol);

    std::vector<CMatrix> ext = p.coeffs;
    ext.push_back(next);
    auto chk = is_contraction(build_toeplitz(ext, n + 1), tol);
    if (!chk.ok)
        throw PostconditionFailure("extend: extended truncation has sigma_max = " +
                                   format_real(chk.sigma));
    return next;
}

MatSeries central_solution(const SchurProblem& p, int K, const Tolerances& tol) {
    require_solvable(p, tol);
    if (K < 0) throw DimensionMismatch("central_solution: negative order");
    const int n = static_cast<int>(p.coeffs.size()) - 1;

    // route one: grow the data coefficient by coefficient
    std::vector<CMatrix> grown = p.coeffs;
    while (static_cast<int>(grown.size()) <= K)
        grown.push_back(central_next(SchurProblem{grown}, tol));

    // route two: zero-tail composition of the Schur parameters
    ChoiceSequence cs = operator_schur_params(problem_series(p), n, tol);
    MatSeries composed = params_to_coeffs(cs, K, tol);

    double residual = 0.0;
    for (int k = 0; k <= K; ++k)
        residual = std::max(residual, max_abs(composed.at(k) - grown[static_cast<size_t>(k)]));
    if (residual > tol.match_tol) throw RouteDisagreement(residual, "central_solution");
    return composed;
}

} // namespace schurkit
