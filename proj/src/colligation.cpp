#include "schurkit/colligation.hpp"

#include <random>
#include <string>

#include "schurkit/schur.hpp"

namespace schurkit {

namespace {

double max_abs(const CMatrix& M) { return M.size() == 0 ? 0.0 : M.cwiseAbs().maxCoeff(); }

CMatrix mpow(const CMatrix& A, int k) {
    CMatrix out = CMatrix::Identity(A.rows(), A.cols());
    for (int i = 0; i < k; ++i) out = out * A;
    return out;
}

} // namespace

Colligation make_colligation(Eigen::Index m, CMatrix U, const Tolerances& tol) {
    if (m < 0) throw DimensionMismatch("make_colligation: negative input dimension");
    if (U.rows() != U.cols() || U.rows() < m)
        throw ShapeMismatch("make_colligation: U must be square with side >= m");
    const Eigen::Index side = U.rows();
    CMatrix gram = U.adjoint() * U - CMatrix::Identity(side, side);
    if (max_abs(gram) > tol.match_tol)
        throw NotAContraction(sigma_max(U), "make_colligation: U not unitary");
    Colligation col;
    col.m = m;
    col.h = side - m;
    col.U = std::move(U);
    return col;
}

Colligation random_colligation(Eigen::Index m, Eigen::Index h, std::uint64_t seed) {
    if (m < 0 || h < 0) throw DimensionMismatch("random_colligation: negative dimension");
    const Eigen::Index side = m + h;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMatrix g(side, side);
    for (Eigen::Index i = 0; i < side; ++i)
        for (Eigen::Index j = 0; j < side; ++j) {
            double re = gauss(rng), im = gauss(rng);
            g(i, j) = Complex(re, im);
        }
    if (side == 0) return Colligation{m, h, CMatrix(0, 0)};
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ() * CMatrix::Identity(side, side);
    CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < side; ++j) {
        Complex d = r(j, j);
        double a = std::abs(d);
        q.col(j) *= (a > 0.0 ? d / a : Complex(1.0));
    }
    Colligation col;
    col.m = m;
    col.h = h;
    col.U = std::move(q);
    return col;
}

MatSeries transfer_coeffs(const Colligation& col, int K) {
    if (K < 0) throw DimensionMismatch("transfer_coeffs: negative order");
    MatSeries out(col.m, col.m, K);
    out.set(0, col.D());
    CMatrix power = CMatrix::Identity(col.h, col.h);
    const CMatrix a = col.A(), b = col.B(), c = col.C();
    for (int k = 1; k <= K; ++k) {
        out.set(k, CMatrix(c * power * b));
        power = power * a;
    }
    return out;
}

CMatrix hnm_basis(const Colligation& col, int n, int m_idx, const Tolerances& tol) {
    if (n < 0 || m_idx < 0) throw DimensionMismatch("hnm_basis: negative step counts");
    const CMatrix a = col.A();
    if (n == 0 && m_idx == 0) return CMatrix::Identity(col.h, col.h);
    CMatrix kf, kb;
    if (n > 0) kf = defect_kernel_basis(mpow(a, n), tol);
    if (m_idx > 0) kb = defect_kernel_basis(mpow(a.adjoint(), m_idx), tol);
    if (n == 0) return kb;
    if (m_idx == 0) return kf;
    return intersect_spans(kf, kb, tol.defect_cut());
}

SimplicityReport simplicity_check(const Colligation& col, const Tolerances& tol) {
    const CMatrix a = col.A();
    const Eigen::Index h = col.h;
    SimplicityReport rep;
    if (h == 0) {
        rep.simple = true;
        rep.cnu_defect_dim = 0;
        return rep;
    }
    const CMatrix da = defect(a, tol);
    const CMatrix das = defect(a.adjoint(), tol);
    CMatrix span(h, 2 * h * h);
    CMatrix fwd = da, bwd = das;
    for (Eigen::Index k = 0; k < h; ++k) {
        span.block(0, 2 * k * h, h, h) = fwd;
        span.block(0, (2 * k + 1) * h, h, h) = bwd;
        fwd = a.adjoint() * fwd;
        bwd = a * bwd;
    }
    const Eigen::Index rank = numerical_rank(span, tol.defect_cut(), /*floor=*/1.0);
    rep.simple = (rank == h);
    rep.cnu_defect_dim = h - rank;
    return rep;
}

Main1Report verify_main1(const Colligation& col, int n_max, const Tolerances& tol) {
    if (n_max < 0) throw DimensionMismatch("verify_main1: negative level");
    Main1Report rep;
    if (!simplicity_check(col, tol).simple) {
        rep.skipped = true;
        return rep;
    }
    const CMatrix a = col.A(), b = col.B(), cst = col.C().adjoint();
    MatSeries theta = transfer_coeffs(col, n_max);
    ChoiceSequence cs = operator_schur_params(theta, n_max, tol);
    ChoiceSequence adj = adjoint_sequence(cs);
    for (int n = 0; n <= n_max; ++n) {
        const CMatrix kf = (n == 0) ? CMatrix(CMatrix::Identity(col.h, col.h))
                                    : defect_kernel_basis(mpow(a, n), tol);
        const CMatrix kb = (n == 0) ? CMatrix(CMatrix::Identity(col.h, col.h))
                                    : defect_kernel_basis(mpow(a.adjoint(), n), tol);
        const CMatrix chain_m = defect_chain(cs, n, tol);
        const CMatrix chain_n = defect_chain(adj, n, tol);
        for (Eigen::Index j = 0; j < col.m; ++j) {
            const double lhs_m = (kf.adjoint() * b.col(j)).squaredNorm();
            const double rhs_m = chain_m.col(j).squaredNorm();
            rep.max_residual_M = std::max(rep.max_residual_M, std::abs(lhs_m - rhs_m));
            const double lhs_n = (kb.adjoint() * cst.col(j)).squaredNorm();
            const double rhs_n = chain_n.col(j).squaredNorm();
            rep.max_residual_N = std::max(rep.max_residual_N, std::abs(lhs_n - rhs_n));
        }
    }
    return rep;
}

AssociatedSystem associated_system(const Colligation& col, int verify_order,
                                   const Tolerances& tol) {
    if (verify_order < 0) throw DimensionMismatch("associated_system: negative order");
    const CMatrix d = col.D(), c = col.C(), b = col.B(), a = col.A();
    const CMatrix u_in = defect_basis(d, tol);
    const CMatrix u_out = defect_basis(d.adjoint(), tol);
    if (u_in.cols() == 0 || u_out.cols() == 0)
        throw DegenerateDefect("associated_system: a defect space of the main operator is trivial");

    // the unitary relations of U make F isometric and G co-isometric
    const CMatrix f_c = b * pinv(defect(d, tol), tol) * u_in;                 // h x dim
    const CMatrix g_c = u_out.adjoint() * (pinv(defect(d.adjoint(), tol), tol) * c);  // dim* x h
    const CMatrix a_mod = a + (f_c * u_in.adjoint()) * d.adjoint() * (u_out * g_c);

    const CMatrix w_f = defect_basis(f_c.adjoint(), tol);  // basis of the complement of ran F
    const CMatrix w_g = defect_basis(g_c, tol);            // basis of ker G
    CMatrix l_c = w_f.adjoint() *
                  (pinv(defect(f_c.adjoint(), tol), tol) *
                   (a_mod * (pinv(defect(g_c, tol), tol) * w_g)));
    // l_c is unitary between the recorded bases up to inversion noise from the
    // two defect pseudo-inverses; snap it back to the nearest isometry. The
    // unitarity and transfer checks below still verify the assembled node.
    if (l_c.size() > 0) {
        Eigen::JacobiSVD<CMatrix> svd(l_c, Eigen::ComputeThinU | Eigen::ComputeThinV);
        l_c = svd.matrixU() * svd.matrixV().adjoint();
    }

    const CMatrix dgc = defect(g_c, tol);
    const Eigen::Index din = u_in.cols(), dout = u_out.cols(), df = w_f.cols();
    CMatrix u_new(dout + df, din + df);
    u_new.topLeftCorner(dout, din) = g_c * f_c;
    u_new.topRightCorner(dout, df) = g_c * w_f;
    u_new.bottomLeftCorner(df, din) = l_c * (w_g.adjoint() * (dgc * f_c));
    u_new.bottomRightCorner(df, df) = l_c * (w_g.adjoint() * (dgc * w_f));

    AssociatedSystem out;
    out.unitarity_residual =
        max_abs(u_new.adjoint() * u_new - CMatrix::Identity(u_new.cols(), u_new.cols()));
    if (din != dout || out.unitarity_residual > tol.match_tol)
        throw VerificationFailure(out.unitarity_residual,
                                  "associated_system: assembled node not unitary");
    out.system = Colligation{din, df, u_new};

    // two-route check: the node's transfer function against the shifted
    // quotient of the original transfer function
    SchurStep step = schur_step(transfer_coeffs(col, verify_order + 1), tol);
    if (!step.next.has_value())
        throw InternalInconsistency("associated_system: shift route vanished unexpectedly");
    const MatSeries& direct = *step.next;  // order verify_order
    MatSeries via_node = transfer_coeffs(out.system, verify_order);
    double resid = 0.0;
    for (int k = 0; k <= verify_order; ++k)
        resid = std::max(resid, max_abs(via_node.at(k) - direct.at(k)));
    out.transfer_residual = resid;
    if (resid > tol.match_tol)
        throw VerificationFailure(resid, "associated_system: transfer functions disagree");

    bool constant = true;
    for (int k = 1; k <= direct.order() && constant; ++k)
        constant = max_abs(direct.at(k)) <= tol.match_tol;
    if (constant) {
        const CMatrix g1 = direct.at(0);
        const bool unitary = defect_basis(g1, tol).cols() == 0 &&
                             defect_basis(g1.adjoint(), tol).cols() == 0;
        out.theta1_constant_nonunitary = !unitary;
    }
    return out;
}

MatSeries characteristic_function(const CMatrix& A, int K, const Tolerances& tol) {
    if (K < 0) throw DimensionMismatch("characteristic_function: negative order");
    require_contraction(A, tol, "characteristic_function");
    const CMatrix u_in = defect_basis(A, tol);
    const CMatrix u_out = defect_basis(A.adjoint(), tol);
    const CMatrix da = defect(A, tol), das = defect(A.adjoint(), tol);
    MatSeries out(u_out.cols(), u_in.cols(), K);
    out.set(0, CMatrix(u_out.adjoint() * (-A) * u_in));
    CMatrix power = CMatrix::Identity(A.rows(), A.cols());
    for (int k = 1; k <= K; ++k) {
        out.set(k, CMatrix(u_out.adjoint() * (das * power * da) * u_in));
        power = power * A.adjoint();
    }
    return out;
}

} // namespace schurkit
