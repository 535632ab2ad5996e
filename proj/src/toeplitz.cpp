#include "schurkit/toeplitz.hpp"

#include <string>

namespace schurkit {

namespace {

void check_coeffs(const std::vector<CMatrix>& coeffs, int n, const char* who) {
    if (n < 0) throw DimensionMismatch(std::string(who) + ": negative truncation level");
    if (static_cast<int>(coeffs.size()) < n + 1)
        throw DimensionMismatch(std::string(who) + ": needs coefficients up to index " +
                                std::to_string(n));
    if (coeffs.empty()) throw DimensionMismatch(std::string(who) + ": no coefficients");
    const Eigen::Index r = coeffs[0].rows(), c = coeffs[0].cols();
    for (const auto& m : coeffs)
        if (m.rows() != r || m.cols() != c)
            throw ShapeMismatch(std::string(who) + ": coefficients of mixed shapes");
}

std::vector<CMatrix> adjointed(const std::vector<CMatrix>& coeffs) {
    std::vector<CMatrix> out;
    out.reserve(coeffs.size());
    for (const auto& m : coeffs) out.push_back(m.adjoint());
    return out;
}

double max_abs(const CMatrix& M) { return M.size() == 0 ? 0.0 : M.cwiseAbs().maxCoeff(); }

/// One-step defect formula for the first-block shorted defect square:
/// I - C_0^* C_0 - X^* X with X = pinv(D_{T*_{n-1}}) [C_1; ...; C_n].
CMatrix one_step_shorted(const std::vector<CMatrix>& coeffs, int n, const Tolerances& tol) {
    const Eigen::Index r = coeffs[0].rows(), c = coeffs[0].cols();
    CMatrix out = CMatrix::Identity(c, c) - coeffs[0].adjoint() * coeffs[0];
    if (n == 0) return hermitize(out);
    CMatrix tprev = build_toeplitz(coeffs, n - 1);
    CMatrix dstar = defect(tprev.adjoint(), tol);
    CMatrix col(static_cast<Eigen::Index>(n) * r, c);
    for (int i = 1; i <= n; ++i)
        col.block(static_cast<Eigen::Index>(i - 1) * r, 0, r, c) = coeffs[static_cast<size_t>(i)];
    CMatrix x = pinv(dstar, tol) * col;
    return hermitize(out - x.adjoint() * x);
}

} // namespace

CMatrix build_toeplitz(const std::vector<CMatrix>& coeffs, int n) {
    check_coeffs(coeffs, n, "build_toeplitz");
    const Eigen::Index r = coeffs[0].rows(), c = coeffs[0].cols();
    CMatrix t = CMatrix::Zero(static_cast<Eigen::Index>(n + 1) * r,
                              static_cast<Eigen::Index>(n + 1) * c);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= i; ++j)
            t.block(static_cast<Eigen::Index>(i) * r, static_cast<Eigen::Index>(j) * c, r, c) =
                coeffs[static_cast<size_t>(i - j)];
    return t;
}

CMatrix flip_toeplitz(const std::vector<CMatrix>& coeffs, int n) {
    check_coeffs(coeffs, n, "flip_toeplitz");
    const Eigen::Index r = coeffs[0].rows(), c = coeffs[0].cols();
    CMatrix s = CMatrix::Zero(static_cast<Eigen::Index>(n + 1) * r,
                              static_cast<Eigen::Index>(n + 1) * c);
    for (int i = 0; i <= n; ++i)
        for (int j = n - i; j <= n; ++j)
            s.block(static_cast<Eigen::Index>(i) * r, static_cast<Eigen::Index>(j) * c, r, c) =
                coeffs[static_cast<size_t>(i + j - n)];
    // cross-check against T times the block anti-diagonal identity
    CMatrix jmat = CMatrix::Zero(static_cast<Eigen::Index>(n + 1) * c,
                                 static_cast<Eigen::Index>(n + 1) * c);
    for (int i = 0; i <= n; ++i)
        jmat.block(static_cast<Eigen::Index>(i) * c, static_cast<Eigen::Index>(n - i) * c, c, c) =
            CMatrix::Identity(c, c);
    if (max_abs(s - build_toeplitz(coeffs, n) * jmat) > 0.0)
        throw InternalInconsistency("flip_toeplitz: flipped truncation disagrees with T J");
    return s;
}

ShortedResult defect_shorted_M(const std::vector<CMatrix>& coeffs, int n, const Tolerances& tol) {
    check_coeffs(coeffs, n, "defect_shorted_M");
    const Eigen::Index c = coeffs[0].cols();
    CMatrix t = build_toeplitz(coeffs, n);
    require_contraction(t, tol, "defect_shorted_M");
    CMatrix d2 = hermitize(CMatrix::Identity(t.cols(), t.cols()) - t.adjoint() * t);
    Subspace first = coordinate_subspace(t.cols(), 0, c);
    ShortedResult res = shorted_operator(d2, first, tol);
    CMatrix direct = one_step_shorted(coeffs, n, tol);
    const double resid = max_abs(res.compressed - direct);
    if (resid > tol.match_tol) throw RouteDisagreement(resid, "defect_shorted_M");
    return res;
}

ShortedResult defect_shorted_N(const std::vector<CMatrix>& coeffs, int n, const Tolerances& tol) {
    check_coeffs(coeffs, n, "defect_shorted_N");
    std::vector<CMatrix> tilde = adjointed(coeffs);
    const Eigen::Index r = tilde[0].cols();  // = coeffs[0].rows()
    CMatrix t = build_toeplitz(tilde, n);
    require_contraction(t, tol, "defect_shorted_N");
    CMatrix d2 = hermitize(CMatrix::Identity(t.cols(), t.cols()) - t.adjoint() * t);
    Subspace first = coordinate_subspace(t.cols(), 0, r);
    ShortedResult res = shorted_operator(d2, first, tol);
    CMatrix direct = one_step_shorted(tilde, n, tol);
    const double resid = max_abs(res.compressed - direct);
    if (resid > tol.match_tol) throw RouteDisagreement(resid, "defect_shorted_N");
    return res;
}

CMatrix product_formula(const ChoiceSequence& cs, int n, const Tolerances& tol) {
    CMatrix chain = defect_chain(cs, n, tol);
    return hermitize(chain.adjoint() * chain);
}

LimitDiagnostics limit_diagnostics(const ChoiceSequence& cs, int n_max, const Tolerances& tol) {
    if (n_max < 0) throw DimensionMismatch("limit_diagnostics: negative level");
    LimitDiagnostics out;
    ChoiceSequence adj = adjoint_sequence(cs);
    for (int k = 0; k <= n_max; ++k) {
        out.M_sequence.push_back(product_formula(cs, k, tol));
        out.N_sequence.push_back(product_formula(adj, k, tol));
    }
    out.M_limit_est = sigma_max(out.M_sequence.back());
    out.N_limit_est = sigma_max(out.N_sequence.back());
    out.observable = out.M_limit_est <= tol.match_tol;
    out.controllable = out.N_limit_est <= tol.match_tol;
    double worst = 0.0;
    for (const auto* seq : {&out.M_sequence, &out.N_sequence})
        for (size_t k = 1; k < seq->size(); ++k) {
            // each step must not increase: largest eigenvalue of (next - prev)
            CMatrix diff = hermitize((*seq)[k] - (*seq)[k - 1]);
            if (diff.size() == 0) continue;
            Eigen::SelfAdjointEigenSolver<CMatrix> es(diff);
            worst = std::max(worst, es.eigenvalues().maxCoeff());
        }
    out.monotonicity_violation = worst;
    return out;
}

RangeInclusion range_inclusion_check(const std::vector<CMatrix>& coeffs, int n,
                                     const Tolerances& tol) {
    check_coeffs(coeffs, n, "range_inclusion_check");
    const Eigen::Index r = coeffs[0].rows(), c = coeffs[0].cols();
    RangeInclusion out;

    const double cut = tol.defect_cut();
    {
        CMatrix t = build_toeplitz(coeffs, n);
        require_contraction(t, tol, "range_inclusion_check");
        CMatrix d = defect(t, tol);
        CMatrix aug(d.rows(), d.cols() + c);
        aug.leftCols(d.cols()) = d;
        aug.rightCols(c) = CMatrix::Identity(d.rows(), d.cols()).leftCols(c);
        out.M_in_ran =
            numerical_rank(aug, cut, /*floor=*/1.0) == numerical_rank(d, cut, /*floor=*/1.0);
    }
    {
        CMatrix t = build_toeplitz(adjointed(coeffs), n);
        require_contraction(t, tol, "range_inclusion_check");
        CMatrix d = defect(t, tol);
        CMatrix aug(d.rows(), d.cols() + r);
        aug.leftCols(d.cols()) = d;
        aug.rightCols(r) = CMatrix::Identity(d.rows(), d.cols()).leftCols(r);
        out.N_in_ran =
            numerical_rank(aug, cut, /*floor=*/1.0) == numerical_rank(d, cut, /*floor=*/1.0);
    }

    std::vector<CMatrix> head(coeffs.begin(), coeffs.begin() + n + 1);
    ChoiceSequence cs = operator_schur_params(MatSeries(head), n, tol);
    bool strict = static_cast<int>(cs.gammas.size()) == n + 1;
    for (size_t k = 0; strict && k < cs.gammas.size(); ++k)
        strict = cs.in_bases[k].cols() == cs.gammas[k].cols();
    out.all_strict = strict;

    if (out.M_in_ran != out.all_strict || out.N_in_ran != out.all_strict)
        throw InternalInconsistency(
            "range_inclusion_check: range criteria and parameter strictness disagree");
    return out;
}

} // namespace schurkit
