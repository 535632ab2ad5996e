#ifndef SCHURKIT_TEST_HELPERS_HPP
#define SCHURKIT_TEST_HELPERS_HPP

#include <random>

#include <schurkit/matcore.hpp>

namespace testkit {

using schurkit::CMatrix;
using schurkit::Complex;

inline double max_abs(const CMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline CMatrix randc(Eigen::Index r, Eigen::Index c, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    CMatrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j) m(i, j) = Complex(g(rng), g(rng));
    return m;
}

/// Random matrix rescaled to a prescribed largest singular value.
inline CMatrix random_contraction(Eigen::Index r, Eigen::Index c, double sigma,
                                  std::mt19937_64& rng) {
    CMatrix m = randc(r, c, rng);
    double s = schurkit::sigma_max(m);
    if (s > 0.0) m *= sigma / s;
    return m;
}

inline CMatrix random_unitary(Eigen::Index n, std::mt19937_64& rng) {
    if (n == 0) return CMatrix(0, 0);
    CMatrix g = randc(n, n, rng);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
    CMatrix rmat = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
        Complex d = rmat(j, j);
        double a = std::abs(d);
        q.col(j) *= (a > 0.0 ? d / a : Complex(1.0));
    }
    return q;
}

inline CMatrix random_psd(Eigen::Index n, std::mt19937_64& rng) {
    CMatrix g = randc(n, n, rng);
    return schurkit::hermitize(g * g.adjoint());
}

} // namespace testkit

#endif
