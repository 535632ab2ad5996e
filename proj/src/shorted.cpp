#include "schurkit/shorted.hpp"

#include <Eigen/Eigenvalues>

namespace schurkit {

Subspace make_subspace(CMatrix basis, const Tolerances& tol) {
    Eigen::Index k = basis.cols();
    if (k > basis.rows()) throw ShapeMismatch("make_subspace: more columns than ambient dim");
    if (k > 0) {
        CMatrix gram = basis.adjoint() * basis;
        if ((gram - CMatrix::Identity(k, k)).cwiseAbs().maxCoeff() > tol.match_tol)
            throw ShapeMismatch("make_subspace: columns not orthonormal");
    }
    return {basis.rows(), std::move(basis)};
}

Subspace coordinate_subspace(Eigen::Index ambient_dim, Eigen::Index first, Eigen::Index count) {
    if (first < 0 || count < 0 || first + count > ambient_dim)
        throw ShapeMismatch("coordinate_subspace: block out of range");
    CMatrix basis = CMatrix::Zero(ambient_dim, count);
    for (Eigen::Index j = 0; j < count; ++j) basis(first + j, j) = 1.0;
    return {ambient_dim, std::move(basis)};
}

namespace {

CMatrix checked_psd(const CMatrix& S, const Tolerances& tol, const char* where) {
    if (S.rows() != S.cols()) throw ShapeMismatch(std::string(where) + ": S not square");
    if (S.rows() == 0) return S;
    double scale = std::max(1.0, S.cwiseAbs().maxCoeff());
    if ((S - S.adjoint()).cwiseAbs().maxCoeff() > tol.match_tol * scale)
        throw NotPSD(0.0, std::string(where) + ": S not Hermitian");
    CMatrix H = hermitize(S);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(H);
    double lo = es.eigenvalues().minCoeff();
    double bound = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    if (lo < -tol.contraction_slack * bound) throw NotPSD(lo, where);
    return es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).asDiagonal() *
           es.eigenvectors().adjoint();
}

void check_ambient(const CMatrix& S, const Subspace& K, const char* where) {
    if (K.ambient_dim != S.rows() || K.basis.rows() != S.rows())
        throw DimensionMismatch(std::string(where) + ": subspace ambient dim != dim(S)");
}

} // namespace

ShortedResult shorted_operator(const CMatrix& S, const Subspace& K, const Tolerances& tol) {
    check_ambient(S, K, "shorted_operator");
    CMatrix H = checked_psd(S, tol, "shorted_operator");
    const Eigen::Index k = K.basis.cols();

    CMatrix bperp = orthonormal_complement(K.basis);
    CMatrix s11 = K.basis.adjoint() * H * K.basis;
    CMatrix s12 = K.basis.adjoint() * H * bperp;
    CMatrix s22 = bperp.adjoint() * H * bperp;

    // Rank decisions on the complement block are made relative to the ambient
    // scale of S, not to the block itself: when the complement block is pure
    // rounding noise, a block-relative cutoff would keep noise directions and
    // amplify them catastrophically under inversion.
    const double cut = tol.rank_rel_tol * std::max(1.0, H.cwiseAbs().maxCoeff());
    CMatrix g = CMatrix::Zero(s22.rows(), k);
    if (s22.rows() > 0) {
        Eigen::SelfAdjointEigenSolver<CMatrix> es22(hermitize(s22));
        Eigen::VectorXd inv_root = Eigen::VectorXd::Zero(es22.eigenvalues().size());
        for (Eigen::Index i = 0; i < inv_root.size(); ++i)
            if (es22.eigenvalues()(i) > cut) inv_root(i) = 1.0 / std::sqrt(es22.eigenvalues()(i));
        g = es22.eigenvectors() * inv_root.asDiagonal() * es22.eigenvectors().adjoint() *
            s12.adjoint();
    }
    CMatrix compressed = psd_clamp(s11 - g.adjoint() * g);

    ShortedResult out;
    out.compressed = compressed;
    out.full = K.basis * compressed * K.basis.adjoint();
    out.numerical_rank = numerical_rank(compressed, tol.rank_rel_tol, /*floor=*/1.0);
    out.tol_used = tol;
    return out;
}

double shorted_quadratic_form(const CMatrix& S, const Subspace& K, const CVector& f,
                              const Tolerances& tol) {
    check_ambient(S, K, "shorted_quadratic_form");
    if (f.size() != S.rows())
        throw DimensionMismatch("shorted_quadratic_form: vector dim != dim(S)");
    CMatrix H = checked_psd(S, tol, "shorted_quadratic_form");

    CMatrix bperp = orthonormal_complement(K.basis);
    CMatrix a = bperp.adjoint() * H * bperp;
    CVector rhs = bperp.adjoint() * (H * f);
    // Same ambient-scale cutoff as shorted_operator: noise-level directions in
    // the complement block must not be inverted.
    const double cut = tol.rank_rel_tol * std::max(1.0, H.cwiseAbs().maxCoeff());
    CVector phi = CVector::Zero(f.size());
    if (a.rows() > 0) {
        Eigen::SelfAdjointEigenSolver<CMatrix> esa(hermitize(a));
        Eigen::VectorXd inv = Eigen::VectorXd::Zero(esa.eigenvalues().size());
        for (Eigen::Index i = 0; i < inv.size(); ++i)
            if (esa.eigenvalues()(i) > cut) inv(i) = 1.0 / esa.eigenvalues()(i);
        phi = bperp *
              (-(esa.eigenvectors() * inv.asDiagonal() * esa.eigenvectors().adjoint() * rhs));
    }
    CVector g = f + phi;
    return std::real(Complex(g.adjoint() * (H * g)));
}

ZeroVerdict shorted_is_zero(const CMatrix& S, const Subspace& K, const Tolerances& tol) {
    auto r = shorted_operator(S, K, tol);
    double w = r.compressed.size() == 0 ? 0.0 : sigma_max(r.compressed);
    return {w <= tol.match_tol, w};
}

} // namespace schurkit
