#ifndef SCHURKIT_SCHUR_HPP
#define SCHURKIT_SCHUR_HPP

#include <optional>
#include <vector>

#include "schurkit/series.hpp"

namespace schurkit {

/// Schur parameters Gamma_0..Gamma_N of an operator Schur-class function,
/// stored on explicitly recorded orthonormal defect bases.
///
/// gammas[0] is n x m on the ambient coordinates. For k >= 1, gammas[k] maps
/// the defect space of gammas[k-1] into the defect space of gammas[k-1]^*, and
/// is stored on the coordinates defined by in_bases[k-1] / out_bases[k-1].
/// in_bases[k] / out_bases[k] are the defect bases of gammas[k] itself
/// (computed in gammas[k]'s own coordinate spaces); the lists have the same
/// length as gammas. A sequence is terminated when the last level's defect
/// dimension is 0 on either side.
struct ChoiceSequence {
    Eigen::Index m = 0, n = 0;
    std::vector<CMatrix> gammas;
    std::vector<CMatrix> in_bases;
    std::vector<CMatrix> out_bases;
};

/// True when the last recorded level has a zero-dimensional defect space on
/// either side (isometric or co-isometric parameter).
bool terminated(const ChoiceSequence& cs);

/// Shape-chain, contraction and recorded-basis checks; throws on violation.
void validate_sequence(const ChoiceSequence& cs, const Tolerances& tol = {});

/// The sequence of Theta~(lambda) = Theta(conj lambda)^*: adjoint parameters,
/// swapped bases and ambient dimensions.
ChoiceSequence adjoint_sequence(const ChoiceSequence& cs);

/// One effective level of a (possibly padded) sequence.
struct SequenceStep {
    CMatrix gamma;
    CMatrix in_basis;
    CMatrix out_basis;
};

/// Levels 0..n of the sequence, padded past its recorded end with zero
/// parameters between the surviving defect spaces (the isometric /
/// co-isometric tail convention; a zero parameter has full defects, so its
/// bases are identities).
std::vector<SequenceStep> padded_steps(const ChoiceSequence& cs, int n,
                                       const Tolerances& tol = {});

/// The product D_{Gamma_n} D_{Gamma_{n-1}} ... D_{Gamma_0} assembled through
/// the recorded bases, as a matrix from the ambient input space into the
/// level-n defect coordinates. Its Gram square is the shorted-defect value of
/// the associated Toeplitz truncation.
CMatrix defect_chain(const ChoiceSequence& cs, int n, const Tolerances& tol = {});

struct ScalarSchurResult {
    std::vector<Complex> gammas;
    bool terminated = false;
};

/// Scalar Schur algorithm f_{k+1} = (f_k - f_k(0)) / (lambda (1 - conj(f_k(0)) f_k)),
/// gamma_k = f_k(0), run on a 1x1 truncated series. Stops at a unimodular
/// parameter (1 - |gamma|^2 <= rank_rel_tol) or when the order is exhausted.
ScalarSchurResult scalar_schur_params(const MatSeries& f, const Tolerances& tol = {});

/// One step of the operator Schur algorithm: Gamma = Theta(0), its defect
/// bases, and the next function Theta_1 on those defect coordinates (absent
/// when a defect dimension is 0 or the truncation order is exhausted).
struct SchurStep {
    CMatrix gamma;
    CMatrix in_basis;
    CMatrix out_basis;
    std::optional<MatSeries> next;
    bool terminal = false;  // a defect dimension hit 0
};

SchurStep schur_step(const MatSeries& theta, const Tolerances& tol = {});

/// Schur parameters Gamma_0..Gamma_{min(N, order)} of theta; stops early at
/// termination. Checks that the level-min(N, order) Toeplitz truncation is a
/// contraction first.
ChoiceSequence operator_schur_params(const MatSeries& theta, int N, const Tolerances& tol = {});

/// Taylor coefficients to order K of the function with parameters
/// Gamma_0..Gamma_N, 0, 0, ... (zero tail): the nested Moebius composition
/// M_{Gamma_0}(lambda M_{Gamma_1}(lambda ... M_{Gamma_N}(lambda 0))),
/// converted through the recorded bases at each level.
MatSeries params_to_coeffs(const ChoiceSequence& cs, int K, const Tolerances& tol = {});

struct SzegoResult {
    /// monic_polys[k] holds Phi_k's coefficients, ascending degree (length k+1)
    std::vector<std::vector<Complex>> monic_polys;
    /// norm_products[k] = prod_{j<=k} (1 - |alpha_j|^2) = ||Phi_{k+1}||^2
    std::vector<double> norm_products;
};

/// Szegő recursion Phi_{k+1}(z) = z Phi_k(z) - conj(alpha_k) Phi_k^*(z).
SzegoResult szego_recursion(const std::vector<Complex>& alphas);

/// Schur function of a measure from its moments c_1..c_K (c_0 = 1 implicit):
/// F(z) = 1 + 2 sum c_k z^k, f = (F - 1) / (z (F + 1)), returned to order K-1.
MatSeries schur_function_from_moments(const std::vector<Complex>& moments,
                                      const Tolerances& tol = {});

} // namespace schurkit

#endif
