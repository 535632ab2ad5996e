#include "schurkit/schur.hpp"

#include <cmath>
#include <string>

#include "schurkit/toeplitz.hpp"

namespace schurkit {

bool terminated(const ChoiceSequence& cs) {
    if (cs.gammas.empty()) return false;
    return cs.in_bases.back().cols() == 0 || cs.out_bases.back().cols() == 0;
}

namespace {

double max_abs(const CMatrix& M) { return M.size() == 0 ? 0.0 : M.cwiseAbs().maxCoeff(); }

} // namespace

void validate_sequence(const ChoiceSequence& cs, const Tolerances& tol) {
    if (cs.gammas.empty()) throw ShapeMismatch("validate_sequence: empty sequence");
    if (cs.in_bases.size() != cs.gammas.size() || cs.out_bases.size() != cs.gammas.size())
        throw ShapeMismatch("validate_sequence: bases lists out of step with parameters");
    if (cs.gammas[0].rows() != cs.n || cs.gammas[0].cols() != cs.m)
        throw ShapeMismatch("validate_sequence: first parameter is not n x m");
    for (size_t k = 0; k < cs.gammas.size(); ++k) {
        const std::string at = " at level " + std::to_string(k);
        const CMatrix& g = cs.gammas[k];
        if (k > 0 &&
            (g.rows() != cs.out_bases[k - 1].cols() || g.cols() != cs.in_bases[k - 1].cols()))
            throw ShapeMismatch("validate_sequence: parameter breaks the defect chain" + at);
        auto c = is_contraction(g, tol);
        if (!c.ok)
            throw NotSchurSequence(static_cast<int>(k),
                                   "parameter not contractive, sigma_max = " + format_real(c.sigma));
        const CMatrix& ui = cs.in_bases[k];
        const CMatrix& uo = cs.out_bases[k];
        if (ui.rows() != g.cols() || uo.rows() != g.rows())
            throw ShapeMismatch("validate_sequence: basis lives in the wrong space" + at);
        CMatrix gi = ui.adjoint() * ui - CMatrix::Identity(ui.cols(), ui.cols());
        CMatrix go = uo.adjoint() * uo - CMatrix::Identity(uo.cols(), uo.cols());
        if (max_abs(gi) > tol.match_tol || max_abs(go) > tol.match_tol)
            throw ShapeMismatch("validate_sequence: recorded basis not orthonormal" + at);
        CMatrix vi = defect_basis(g, tol);
        CMatrix vo = defect_basis(g.adjoint(), tol);
        if (max_abs(ui * ui.adjoint() - vi * vi.adjoint()) > tol.match_tol ||
            max_abs(uo * uo.adjoint() - vo * vo.adjoint()) > tol.match_tol)
            throw ShapeMismatch("validate_sequence: recorded basis does not span the defect space" + at);
    }
}

ChoiceSequence adjoint_sequence(const ChoiceSequence& cs) {
    ChoiceSequence out;
    out.m = cs.n;
    out.n = cs.m;
    out.gammas.reserve(cs.gammas.size());
    for (const auto& g : cs.gammas) out.gammas.push_back(g.adjoint());
    out.in_bases = cs.out_bases;
    out.out_bases = cs.in_bases;
    return out;
}

std::vector<SequenceStep> padded_steps(const ChoiceSequence& cs, int n, const Tolerances& tol) {
    validate_sequence(cs, tol);
    if (n < 0) throw DimensionMismatch("padded_steps: negative level");
    std::vector<SequenceStep> steps;
    steps.reserve(static_cast<size_t>(n) + 1);
    const int have = static_cast<int>(cs.gammas.size());
    for (int k = 0; k <= n; ++k) {
        if (k < have) {
            steps.push_back({cs.gammas[static_cast<size_t>(k)],
                             cs.in_bases[static_cast<size_t>(k)],
                             cs.out_bases[static_cast<size_t>(k)]});
        } else {
            // zero parameter between the surviving defect spaces; a zero map
            // has full defects on both sides
            const Eigen::Index din = steps.back().in_basis.cols();
            const Eigen::Index dout = steps.back().out_basis.cols();
            steps.push_back({CMatrix::Zero(dout, din), CMatrix::Identity(din, din),
                             CMatrix::Identity(dout, dout)});
        }
    }
    return steps;
}

CMatrix defect_chain(const ChoiceSequence& cs, int n, const Tolerances& tol) {
    auto steps = padded_steps(cs, n, tol);
    CMatrix chain = defect(steps[0].gamma, tol);
    for (int k = 1; k <= n; ++k)
        chain = defect(steps[static_cast<size_t>(k)].gamma, tol) *
                (steps[static_cast<size_t>(k) - 1].in_basis.adjoint() * chain);
    return chain;
}

ScalarSchurResult scalar_schur_params(const MatSeries& f, const Tolerances& tol) {
    if (f.rows() != 1 || f.cols() != 1)
        throw ShapeMismatch("scalar_schur_params: series is not 1x1");
    const int K = f.order();
    {
        CMatrix t = build_toeplitz(f.coeffs(), K);
        auto c = is_contraction(t, tol);
        if (!c.ok) throw NotSchurClass(K, c.sigma);
    }
    ScalarSchurResult out;
    MatSeries cur = f;
    for (int k = 0; k <= K; ++k) {
        const Complex g = cur.at(0)(0, 0);
        out.gammas.push_back(g);
        if (1.0 - std::norm(g) <= tol.rank_rel_tol) {
            out.terminated = true;
            break;
        }
        if (k == K) break;
        MatSeries num = cur;
        num.set(0, CMatrix::Zero(1, 1));
        MatSeries shifted = shift_div(num, tol);  // order K - k - 1
        MatSeries den(1, 1, shifted.order());
        for (int j = 0; j <= shifted.order(); ++j)
            den.set(j, (j == 0 ? CMatrix(CMatrix::Identity(1, 1)) : CMatrix(CMatrix::Zero(1, 1))) -
                           std::conj(g) * cur.at(j));
        cur = mul(shifted, inverse(den, tol));
    }
    return out;
}

SchurStep schur_step(const MatSeries& theta, const Tolerances& tol) {
    CMatrix g = theta.at(0);
    auto c = is_contraction(g, tol);
    if (!c.ok) {
        // Defect-space arithmetic can push an exactly-unitary parameter a
        // noise margin above 1. Within the defect classification band that is
        // a boundary parameter, so clamp its singular values; anything larger
        // is genuinely non-contractive data.
        if (c.sigma > 1.0 + tol.defect_cut()) require_contraction(g, tol, "schur_step");
        Eigen::JacobiSVD<CMatrix> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
        Eigen::VectorXd s = svd.singularValues().cwiseMin(1.0);
        g = svd.matrixU() * s.asDiagonal() * svd.matrixV().adjoint();
    }
    SchurStep st;
    st.gamma = g;
    st.in_basis = defect_basis(g, tol);
    st.out_basis = defect_basis(g.adjoint(), tol);
    st.terminal = (st.in_basis.cols() == 0 || st.out_basis.cols() == 0);
    if (st.terminal || theta.order() == 0) return st;

    const Eigen::Index n = theta.rows(), m = theta.cols();
    const int K = theta.order();
    const CMatrix dg_pinv = pinv(defect(g, tol), tol);
    const CMatrix dgs_pinv = pinv(defect(g.adjoint(), tol), tol);

    // y = pinv(D_{g*}) (theta - g) pinv(D_g); the constant term vanishes exactly
    MatSeries y(n, m, K);
    for (int k = 1; k <= K; ++k) y.set(k, dgs_pinv * theta.at(k) * dg_pinv);

    // z = y (I - g* y)^{-1}; the inverted factor has constant term I, so this
    // stays well defined even when D_{g*} is singular
    MatSeries hfac(m, m, K);
    hfac.set(0, CMatrix::Identity(m, m));
    for (int k = 1; k <= K; ++k) hfac.set(k, CMatrix(-(g.adjoint() * y.at(k))));
    MatSeries z = mul(y, inverse(hfac, tol));

    MatSeries shifted = shift_div(z, tol);  // order K - 1
    MatSeries next(st.out_basis.cols(), st.in_basis.cols(), shifted.order());
    for (int k = 0; k <= shifted.order(); ++k)
        next.set(k, CMatrix(st.out_basis.adjoint() * shifted.at(k) * st.in_basis));
    st.next = std::move(next);
    return st;
}

ChoiceSequence operator_schur_params(const MatSeries& theta, int N, const Tolerances& tol) {
    if (N < 0) throw DimensionMismatch("operator_schur_params: negative level count");
    const int levels = std::min(N, theta.order());
    {
        CMatrix t = build_toeplitz(theta.coeffs(), levels);
        auto c = is_contraction(t, tol);
        if (!c.ok) throw NotSchurClass(levels, c.sigma);
    }
    ChoiceSequence cs;
    cs.m = theta.cols();
    cs.n = theta.rows();
    MatSeries cur = theta;
    for (int k = 0; k <= levels; ++k) {
        SchurStep st;
        try {
            st = schur_step(cur, tol);
        } catch (const NotAContraction& e) {
            throw NotSchurSequence(k, "parameter not contractive, sigma_max = " +
                                          format_real(e.sigma_max));
        }
        cs.gammas.push_back(st.gamma);
        cs.in_bases.push_back(st.in_basis);
        cs.out_bases.push_back(st.out_basis);
        if (st.terminal || !st.next.has_value()) break;
        cur = *st.next;
    }
    return cs;
}

MatSeries params_to_coeffs(const ChoiceSequence& cs, int K, const Tolerances& tol) {
    validate_sequence(cs, tol);
    if (K < 0) throw DimensionMismatch("params_to_coeffs: negative order");
    const int last = static_cast<int>(cs.gammas.size()) - 1;
    // the zero tail beyond the last recorded parameter
    MatSeries x(cs.out_bases[static_cast<size_t>(last)].cols(),
                cs.in_bases[static_cast<size_t>(last)].cols(), K);
    for (int k = last; k >= 0; --k)
        x = moebius_apply(cs.gammas[static_cast<size_t>(k)], shift_mul(x),
                          cs.in_bases[static_cast<size_t>(k)],
                          cs.out_bases[static_cast<size_t>(k)], tol);
    return x;
}

SzegoResult szego_recursion(const std::vector<Complex>& alphas) {
    SzegoResult out;
    out.monic_polys.push_back({Complex(1.0)});
    double prod = 1.0;
    for (size_t j = 0; j < alphas.size(); ++j) {
        const Complex a = alphas[j];
        if (std::abs(a) >= 1.0) throw NotVerblunsky(static_cast<int>(j));
        const auto& p = out.monic_polys.back();
        std::vector<Complex> next(p.size() + 1, Complex(0.0));
        for (size_t i = 0; i < p.size(); ++i) next[i + 1] = p[i];
        for (size_t i = 0; i < p.size(); ++i)
            next[i] -= std::conj(a) * std::conj(p[p.size() - 1 - i]);
        out.monic_polys.push_back(std::move(next));
        prod *= 1.0 - std::norm(a);
        out.norm_products.push_back(prod);
    }
    return out;
}

MatSeries schur_function_from_moments(const std::vector<Complex>& moments, const Tolerances& tol) {
    if (moments.empty())
        throw DimensionMismatch("schur_function_from_moments: needs at least one moment");
    const int K = static_cast<int>(moments.size());
    // Caratheodory transform F(z) = 1 + 2 sum_{k>=1} c_k z^k; the Schur
    // function is (F - 1) / (z (F + 1)), truncated to order K - 1
    MatSeries fnum(1, 1, K - 1);
    for (int k = 0; k <= K - 1; ++k)
        fnum.set(k, CMatrix(2.0 * moments[static_cast<size_t>(k)] * CMatrix::Identity(1, 1)));
    MatSeries fden(1, 1, K - 1);
    fden.set(0, CMatrix(2.0 * CMatrix::Identity(1, 1)));
    for (int k = 1; k <= K - 1; ++k)
        fden.set(k, CMatrix(2.0 * moments[static_cast<size_t>(k) - 1] * CMatrix::Identity(1, 1)));
    MatSeries f = mul(fnum, inverse(fden, tol));
    {
        CMatrix t = build_toeplitz(f.coeffs(), f.order());
        auto c = is_contraction(t, tol);
        if (!c.ok) throw NotSchurClass(f.order(), c.sigma);
    }
    return f;
}

} // namespace schurkit
