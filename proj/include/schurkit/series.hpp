#ifndef SCHURKIT_SERIES_HPP
#define SCHURKIT_SERIES_HPP

#include <vector>

#include "schurkit/matcore.hpp"

namespace schurkit {

/// Truncated power series with matrix coefficients C_0..C_K of a fixed shape.
/// All arithmetic is truncation closed: no operation reads or writes past the
/// declared order.
class MatSeries {
public:
    MatSeries(Eigen::Index rows, Eigen::Index cols, int order)
        : rows_(rows), cols_(cols),
          coeffs_(static_cast<size_t>(order) + 1, CMatrix::Zero(rows, cols)) {
        if (order < 0) throw ShapeMismatch("MatSeries: negative order");
    }

    explicit MatSeries(std::vector<CMatrix> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw ShapeMismatch("MatSeries: needs at least one coefficient");
        rows_ = coeffs_[0].rows();
        cols_ = coeffs_[0].cols();
        for (const auto& c : coeffs_)
            if (c.rows() != rows_ || c.cols() != cols_)
                throw ShapeMismatch("MatSeries: coefficients of mixed shapes");
    }

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    Eigen::Index rows() const { return rows_; }
    Eigen::Index cols() const { return cols_; }

    const CMatrix& at(int k) const { return coeffs_.at(static_cast<size_t>(k)); }
    void set(int k, CMatrix value) {
        if (value.rows() != rows_ || value.cols() != cols_)
            throw ShapeMismatch("MatSeries::set: wrong coefficient shape");
        coeffs_.at(static_cast<size_t>(k)) = std::move(value);
    }

    const std::vector<CMatrix>& coeffs() const { return coeffs_; }

    /// Same coefficients cut or zero-padded to the requested order.
    MatSeries truncated(int order) const;

private:
    Eigen::Index rows_ = 0, cols_ = 0;
    std::vector<CMatrix> coeffs_;
};

MatSeries add(const MatSeries& a, const MatSeries& b);
MatSeries sub(const MatSeries& a, const MatSeries& b);

/// Cauchy product truncated at the common order; shapes must compose.
MatSeries mul(const MatSeries& a, const MatSeries& b);

/// Series inverse: b with (a*b)_k = delta_{k0} I. Requires invertible a_0
/// (checked through a pinv residual).
MatSeries inverse(const MatSeries& a, const Tolerances& tol = {});

/// lambda^{-1}(a - a_0) with a_0 required to vanish within match_tol; the
/// order drops by one (a constant zero series stays a constant zero series).
MatSeries shift_div(const MatSeries& a, const Tolerances& tol = {});

/// lambda * a truncated back to the same order (top coefficient dropped).
MatSeries shift_mul(const MatSeries& a);

/// Coefficients replaced by their adjoints: the series of Theta~(lambda) = Theta(conj lambda)^*.
MatSeries adjoint_coeffs(const MatSeries& a);

/// Evaluate the truncated series at a point (diagnostic helper).
CMatrix eval(const MatSeries& a, Complex lambda);

/// Moebius transformation M_S(X) = S + D_{S*} X (I + S* X)^{-1} D_S of a
/// contraction S. X is given on the defect coordinates of S: its coefficients
/// are dim(D_{S*}) x dim(D_S) matrices with respect to defect_basis(S) and
/// defect_basis(S*). Returns a full-shape series of the same order as X whose
/// constant term is S whenever X_0 = 0.
MatSeries moebius_apply(const CMatrix& S, const MatSeries& X, const Tolerances& tol = {});

/// Same transformation with caller-supplied orthonormal defect bases (columns
/// spanning ran D_S and ran D_{S*}); X's coordinates refer to these bases.
MatSeries moebius_apply(const CMatrix& S, const MatSeries& X, const CMatrix& in_basis,
                        const CMatrix& out_basis, const Tolerances& tol = {});

} // namespace schurkit

#endif
