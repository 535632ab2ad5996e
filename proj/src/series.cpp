#include "schurkit/series.hpp"

namespace schurkit {

MatSeries MatSeries::truncated(int order) const {
    if (order < 0) throw ShapeMismatch("MatSeries::truncated: negative order");
    MatSeries out(rows_, cols_, order);
    int keep = std::min(order, this->order());
    for (int k = 0; k <= keep; ++k) out.set(k, at(k));
    return out;
}

namespace {
void require_same_order(const MatSeries& a, const MatSeries& b, const char* op) {
    if (a.order() != b.order())
        throw ShapeMismatch(std::string(op) + ": truncation orders differ");
}
} // namespace

MatSeries add(const MatSeries& a, const MatSeries& b) {
    require_same_order(a, b, "add");
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeMismatch("add: shapes differ");
    MatSeries out(a.rows(), a.cols(), a.order());
    for (int k = 0; k <= a.order(); ++k) out.set(k, a.at(k) + b.at(k));
    return out;
}

MatSeries sub(const MatSeries& a, const MatSeries& b) {
    require_same_order(a, b, "sub");
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeMismatch("sub: shapes differ");
    MatSeries out(a.rows(), a.cols(), a.order());
    for (int k = 0; k <= a.order(); ++k) out.set(k, a.at(k) - b.at(k));
    return out;
}

MatSeries mul(const MatSeries& a, const MatSeries& b) {
    require_same_order(a, b, "mul");
    if (a.cols() != b.rows()) throw ShapeMismatch("mul: inner dimensions differ");
    MatSeries out(a.rows(), b.cols(), a.order());
    for (int k = 0; k <= a.order(); ++k) {
        CMatrix c = CMatrix::Zero(a.rows(), b.cols());
        for (int i = 0; i <= k; ++i) c += a.at(i) * b.at(k - i);
        out.set(k, c);
    }
    return out;
}

MatSeries inverse(const MatSeries& a, const Tolerances& tol) {
    if (a.rows() != a.cols()) throw ShapeMismatch("inverse: constant term not square");
    const Eigen::Index n = a.rows();
    CMatrix a0inv = pinv(a.at(0), tol);
    if (n > 0 && (a.at(0) * a0inv - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > tol.match_tol)
        throw SingularConstantTerm("inverse: a_0 not invertible within tolerance");
    MatSeries out(n, n, a.order());
    out.set(0, a0inv);
    for (int k = 1; k <= a.order(); ++k) {
        CMatrix acc = CMatrix::Zero(n, n);
        for (int j = 1; j <= k; ++j) acc += a.at(j) * out.at(k - j);
        out.set(k, -a0inv * acc);
    }
    return out;
}

MatSeries shift_div(const MatSeries& a, const Tolerances& tol) {
    double n0 = a.at(0).size() == 0 ? 0.0 : a.at(0).cwiseAbs().maxCoeff();
    if (n0 > tol.match_tol) throw NonzeroConstantTerm(n0);
    MatSeries out(a.rows(), a.cols(), std::max(a.order() - 1, 0));
    for (int k = 1; k <= a.order(); ++k) out.set(k - 1, a.at(k));
    return out;
}

MatSeries shift_mul(const MatSeries& a) {
    MatSeries out(a.rows(), a.cols(), a.order());
    for (int k = 1; k <= a.order(); ++k) out.set(k, a.at(k - 1));
    return out;
}

MatSeries adjoint_coeffs(const MatSeries& a) {
    MatSeries out(a.cols(), a.rows(), a.order());
    for (int k = 0; k <= a.order(); ++k) out.set(k, a.at(k).adjoint());
    return out;
}

CMatrix eval(const MatSeries& a, Complex lambda) {
    CMatrix acc = CMatrix::Zero(a.rows(), a.cols());
    Complex p = 1.0;
    for (int k = 0; k <= a.order(); ++k, p *= lambda) acc += p * a.at(k);
    return acc;
}

MatSeries moebius_apply(const CMatrix& S, const MatSeries& X, const Tolerances& tol) {
    return moebius_apply(S, X, defect_basis(S, tol), defect_basis(S.adjoint(), tol), tol);
}

MatSeries moebius_apply(const CMatrix& S, const MatSeries& X, const CMatrix& in_basis,
                        const CMatrix& out_basis, const Tolerances& tol) {
    require_contraction(S, tol, "moebius_apply");
    const Eigen::Index n = S.rows(), m = S.cols();
    const CMatrix& u_in = in_basis;
    const CMatrix& u_out = out_basis;
    if (u_in.rows() != m || u_out.rows() != n)
        throw ShapeMismatch("moebius_apply: defect bases not in the coordinate spaces of S");
    if (X.rows() != u_out.cols() || X.cols() != u_in.cols())
        throw ShapeMismatch("moebius_apply: X not shaped for the defect coordinates of S");

    const int K = X.order();
    MatSeries xhat(n, m, K);
    for (int k = 0; k <= K; ++k) xhat.set(k, u_out * X.at(k) * u_in.adjoint());

    MatSeries g(m, m, K);
    for (int k = 0; k <= K; ++k)
        g.set(k, (k == 0 ? CMatrix(CMatrix::Identity(m, m)) : CMatrix(CMatrix::Zero(m, m))) +
                     S.adjoint() * xhat.at(k));

    MatSeries core = mul(xhat, inverse(g, tol));
    CMatrix ds = defect(S, tol);
    CMatrix dss = defect(S.adjoint(), tol);
    MatSeries out(n, m, K);
    for (int k = 0; k <= K; ++k)
        out.set(k, (k == 0 ? CMatrix(S) : CMatrix(CMatrix::Zero(n, m))) + dss * core.at(k) * ds);
    return out;
}

} // namespace schurkit
