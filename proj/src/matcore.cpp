#include "schurkit/matcore.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace schurkit {

double Tolerances::defect_cut() const { return std::sqrt(rank_rel_tol); }

double sigma_max(const CMatrix& M) {
    if (M.rows() == 0 || M.cols() == 0) return 0.0;
    Eigen::JacobiSVD<CMatrix> svd(M);
    return svd.singularValues()(0);
}

CMatrix hermitize(const CMatrix& M) { return 0.5 * (M + M.adjoint()); }

ContractionCheck is_contraction(const CMatrix& T, const Tolerances& tol) {
    double s = sigma_max(T);
    return {s <= 1.0 + tol.contraction_slack, s};
}

void require_contraction(const CMatrix& T, const Tolerances& tol, const std::string& where) {
    auto c = is_contraction(T, tol);
    if (!c.ok) throw NotAContraction(c.sigma, where);
}

namespace {

struct HermEig {
    Eigen::VectorXd values;   // ascending
    CMatrix vectors;
};

HermEig herm_eig(const CMatrix& H) {
    HermEig out;
    if (H.rows() == 0) {
        out.values = Eigen::VectorXd(0);
        out.vectors = CMatrix(0, 0);
        return out;
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(H);
    out.values = es.eigenvalues();
    out.vectors = es.eigenvectors();
    return out;
}

void fix_phase(Eigen::Ref<CVector> v) {
    double best = 0.0;
    Eigen::Index pick = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        double a = std::abs(v(i));
        if (a > best * (1.0 + 1e-12)) {
            best = a;
            pick = i;
        }
    }
    if (best > 0.0) {
        Complex phase = std::conj(v(pick)) / best;
        v *= phase;
        v(pick) = Complex(std::abs(v(pick)), 0.0);  // kill residual imaginary dust
    }
}

bool lex_less(const CVector& a, const CVector& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        double ar = std::round(a(i).real() * 1e9), br = std::round(b(i).real() * 1e9);
        if (ar != br) return ar < br;
        double ai = std::round(a(i).imag() * 1e9), bi = std::round(b(i).imag() * 1e9);
        if (ai != bi) return ai < bi;
    }
    return false;
}

/// Eigenvectors of the Hermitian PSD matrix H with eigenvalue selected by
/// `keep`, ordered by `descending` eigenvalue (or ascending), phases fixed,
/// near-ties broken lexicographically.
template <class Keep>
CMatrix selected_eigvecs(const HermEig& eig, Keep keep, bool descending) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i)
        if (keep(eig.values(i))) idx.push_back(i);
    std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
        return descending ? eig.values(a) > eig.values(b) : eig.values(a) < eig.values(b);
    });

    CMatrix out(eig.vectors.rows(), static_cast<Eigen::Index>(idx.size()));
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
        out.col(j) = eig.vectors.col(idx[static_cast<size_t>(j)]);
        fix_phase(out.col(j));
    }

    // lexicographic refinement inside (numerically) degenerate eigenvalue runs
    double scale = eig.values.size() ? std::max(1.0, eig.values.cwiseAbs().maxCoeff()) : 1.0;
    Eigen::Index j = 0;
    while (j < out.cols()) {
        Eigen::Index k = j + 1;
        while (k < out.cols() &&
               std::abs(eig.values(idx[static_cast<size_t>(k)]) -
                        eig.values(idx[static_cast<size_t>(j)])) <= 1e-12 * scale)
            ++k;
        if (k - j > 1) {
            std::vector<CVector> run;
            for (Eigen::Index t = j; t < k; ++t) run.push_back(out.col(t));
            std::sort(run.begin(), run.end(), lex_less);
            for (Eigen::Index t = j; t < k; ++t) out.col(t) = run[static_cast<size_t>(t - j)];
        }
        j = k;
    }
    return out;
}

HermEig defect_square_eig(const CMatrix& T, const Tolerances& tol, const std::string& where) {
    require_contraction(T, tol, where);
    CMatrix H = hermitize(CMatrix::Identity(T.cols(), T.cols()) - T.adjoint() * T);
    return herm_eig(H);
}

} // namespace

CMatrix defect(const CMatrix& T, const Tolerances& tol) {
    auto eig = defect_square_eig(T, tol, "defect");
    if (eig.values.size() == 0) return CMatrix(0, 0);
    Eigen::VectorXd s = eig.values.cwiseMax(0.0).cwiseSqrt();
    return hermitize(eig.vectors * s.asDiagonal() * eig.vectors.adjoint());
}

CMatrix defect_basis(const CMatrix& T, const Tolerances& tol) {
    auto eig = defect_square_eig(T, tol, "defect_basis");
    double cut = tol.rank_rel_tol;  // on D_T^2 eigenvalues, i.e. defect eigenvalue > sqrt(cut)
    return selected_eigvecs(eig, [&](double v) { return v > cut; }, /*descending=*/true);
}

CMatrix defect_kernel_basis(const CMatrix& T, const Tolerances& tol) {
    auto eig = defect_square_eig(T, tol, "defect_kernel_basis");
    double cut = tol.rank_rel_tol;
    return selected_eigvecs(eig, [&](double v) { return v <= cut; }, /*descending=*/false);
}

CMatrix pinv(const CMatrix& M, const Tolerances& tol) {
    if (M.rows() == 0 || M.cols() == 0) return CMatrix::Zero(M.cols(), M.rows());
    Eigen::JacobiSVD<CMatrix> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    double cut = tol.rank_rel_tol * s(0);
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cut) inv(i) = 1.0 / s(i);
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

CMatrix psd_sqrt(const CMatrix& S, const Tolerances& tol) {
    if (S.rows() != S.cols()) throw ShapeMismatch("psd_sqrt: matrix not square");
    if (S.rows() == 0) return CMatrix(0, 0);
    double scale = std::max(1.0, S.cwiseAbs().maxCoeff());
    if ((S - S.adjoint()).cwiseAbs().maxCoeff() > tol.match_tol * scale)
        throw NotPSD(0.0, "psd_sqrt: input not Hermitian");
    auto eig = herm_eig(hermitize(S));
    double lo = eig.values.minCoeff();
    double bound = std::max(1.0, eig.values.cwiseAbs().maxCoeff());
    if (lo < -tol.contraction_slack * bound) throw NotPSD(lo, "psd_sqrt");
    Eigen::VectorXd s = eig.values.cwiseMax(0.0).cwiseSqrt();
    return hermitize(eig.vectors * s.asDiagonal() * eig.vectors.adjoint());
}

CMatrix psd_clamp(const CMatrix& S) {
    if (S.rows() == 0) return CMatrix(0, 0);
    auto eig = herm_eig(hermitize(S));
    Eigen::VectorXd s = eig.values.cwiseMax(0.0);
    return hermitize(eig.vectors * s.asDiagonal() * eig.vectors.adjoint());
}

CMatrix orthonormal_complement(const CMatrix& basis) {
    Eigen::Index n = basis.rows(), k = basis.cols();
    if (k == 0) return CMatrix::Identity(n, n);
    if (k >= n) return CMatrix(n, 0);
    Eigen::HouseholderQR<CMatrix> qr(basis);
    CMatrix Q = qr.householderQ() * CMatrix::Identity(n, n);
    return Q.rightCols(n - k);
}

Eigen::Index numerical_rank(const CMatrix& M, double rel_cut, double floor) {
    if (M.rows() == 0 || M.cols() == 0) return 0;
    Eigen::JacobiSVD<CMatrix> svd(M);
    const auto& s = svd.singularValues();
    double cut = rel_cut * std::max(s(0), floor);
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cut) ++r;
    return r;
}

CMatrix intersect_spans(const CMatrix& P, const CMatrix& Q, double gap_tol) {
    if (P.cols() == 0 || Q.cols() == 0) return CMatrix(P.rows(), 0);
    Eigen::JacobiSVD<CMatrix> svd(P.adjoint() * Q, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    Eigen::Index k = 0;
    while (k < s.size() && s(k) >= 1.0 - gap_tol) ++k;
    if (k == 0) return CMatrix(P.rows(), 0);
    CMatrix raw = P * svd.matrixU().leftCols(k);
    Eigen::HouseholderQR<CMatrix> qr(raw);
    CMatrix Qfull = qr.householderQ() * CMatrix::Identity(P.rows(), P.rows());
    return Qfull.leftCols(k);
}

} // namespace schurkit
