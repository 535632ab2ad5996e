#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "helpers.hpp"
#include "schurkit/colligation.hpp"
#include "schurkit/toeplitz.hpp"

using namespace schurkit;
using testkit::max_abs;
using testkit::randc;
using testkit::random_unitary;

namespace {

/// Unitary node around a given state contraction A (rotation-of-defects
/// completion): U = [[-A*, D_A], [D_A*, A]] with input dim = state dim.
Colligation julia_node(const CMatrix& A, const Tolerances& tol = {}) {
    Eigen::Index h = A.rows();
    CMatrix u(2 * h, 2 * h);
    u.topLeftCorner(h, h) = -A.adjoint();
    u.topRightCorner(h, h) = defect(A, tol);
    u.bottomLeftCorner(h, h) = defect(A.adjoint(), tol);
    u.bottomRightCorner(h, h) = A;
    return make_colligation(h, u, tol);
}

CMatrix truncated_shift(int h) {
    CMatrix a = CMatrix::Zero(h, h);
    for (int i = 0; i + 1 < h; ++i) a(i + 1, i) = Complex(1.0, 0.0);
    return a;
}

/// Direct sum with a decoupled unitary state block (a non-simple node).
Colligation with_unitary_part(const Colligation& col, const CMatrix& w,
                              const Tolerances& tol = {}) {
    Eigen::Index m = col.m, h = col.h, e = w.rows();
    CMatrix u = CMatrix::Zero(m + h + e, m + h + e);
    u.topLeftCorner(m, m) = col.D();
    u.block(0, m, m, h) = col.C();
    u.block(m, 0, h, m) = col.B();
    u.block(m, m, h, h) = col.A();
    u.bottomRightCorner(e, e) = w;
    return make_colligation(m, u, tol);
}

} // namespace

TEST_CASE("random colligations are deterministic unitary nodes") {
    Colligation a = random_colligation(2, 3, 42);
    Colligation b = random_colligation(2, 3, 42);
    CHECK(max_abs(a.U - b.U) == 0.0);
    Colligation c = random_colligation(2, 3, 43);
    CHECK(max_abs(a.U - c.U) > 1e-3);
    REQUIRE(a.U.rows() == 5);
    CHECK(max_abs(a.U.adjoint() * a.U - CMatrix::Identity(5, 5)) < 1e-12);

    Colligation flat = random_colligation(2, 0, 7);
    CHECK(flat.h == 0);
    CHECK(max_abs(flat.U.adjoint() * flat.U - CMatrix::Identity(2, 2)) < 1e-12);

    CHECK_THROWS_AS(make_colligation(2, 2.0 * CMatrix::Identity(3, 3)), NotAContraction);
    CHECK_THROWS_AS(make_colligation(4, CMatrix::Identity(3, 3)), ShapeMismatch);
}

TEST_CASE("transfer coefficients follow the block formula") {
    // a decoupled state (A = 0 via the swap node) transfers to the shift
    CMatrix u(4, 4);
    u.setZero();
    u.topRightCorner(2, 2) = CMatrix::Identity(2, 2);
    u.bottomLeftCorner(2, 2) = CMatrix::Identity(2, 2);
    Colligation swap = make_colligation(2, u);
    MatSeries t = transfer_coeffs(swap, 3);
    CHECK(max_abs(t.coeffs()[0]) == 0.0);
    CHECK(max_abs(t.coeffs()[1] - CMatrix::Identity(2, 2)) < 1e-14);
    CHECK(max_abs(t.coeffs()[2]) < 1e-14);
    CHECK(max_abs(t.coeffs()[3]) < 1e-14);

    // no state at all: the transfer is the constant D
    Colligation flat = random_colligation(2, 0, 11);
    MatSeries tf = transfer_coeffs(flat, 2);
    CHECK(max_abs(tf.coeffs()[0] - flat.D()) == 0.0);
    CHECK(max_abs(tf.coeffs()[1]) == 0.0);
    CHECK(max_abs(tf.coeffs()[2]) == 0.0);
}

TEST_CASE("transfer functions are Schur class at every truncation level") {
    Tolerances tol;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Colligation col = random_colligation(1 + seed % 3, 1 + (seed * 7) % 3, 1000 + seed);
        MatSeries t = transfer_coeffs(col, 5);
        for (int n = 0; n <= 5; ++n)
            CHECK(is_contraction(build_toeplitz(t.coeffs(), n), tol).ok);
    }
}

TEST_CASE("isometric-step subspaces of the truncated shift") {
    Tolerances tol;
    Colligation col = julia_node(truncated_shift(2), tol);

    CMatrix h00 = hnm_basis(col, 0, 0, tol);
    CHECK(h00.cols() == 2);

    CMatrix h10 = hnm_basis(col, 1, 0, tol);
    REQUIRE(h10.cols() == 1);
    CHECK(std::abs(std::abs(h10(0, 0)) - 1.0) < 1e-12);
    CHECK(std::abs(h10(1, 0)) < 1e-12);

    CHECK(hnm_basis(col, 2, 0, tol).cols() == 0);
    CHECK(hnm_basis(col, 0, 1, tol).cols() == 1);
    CHECK(hnm_basis(col, 1, 1, tol).cols() == 0);

    // a strictly contractive state has no isometric steps at all
    std::mt19937_64 rng(5);
    Colligation strict = julia_node(0.6 * random_unitary(3, rng), tol);
    CHECK(hnm_basis(strict, 1, 0, tol).cols() == 0);
    CHECK(hnm_basis(strict, 0, 1, tol).cols() == 0);
}

TEST_CASE("kernels of compressed powers step down the subspace lattice") {
    Tolerances tol;
    Colligation col = julia_node(truncated_shift(3), tol);
    for (int n = 0; n <= 2; ++n) {
        CMatrix basis = hnm_basis(col, n, 0, tol);
        if (basis.cols() == 0) continue;
        CMatrix compressed = basis.adjoint() * col.A() * basis;
        for (int k = 1; k <= 2; ++k) {
            CMatrix pw = CMatrix::Identity(compressed.rows(), compressed.rows());
            for (int i = 0; i < k; ++i) pw = compressed * pw;
            Eigen::Index via_kernel = defect_kernel_basis(pw, tol).cols();
            Eigen::Index via_lattice = hnm_basis(col, n + k, 0, tol).cols();
            CHECK(via_kernel == via_lattice);
        }
    }
}

TEST_CASE("simplicity detects decoupled unitary state parts") {
    Tolerances tol;
    std::mt19937_64 rng(83);

    SimplicityReport strict = simplicity_check(julia_node(0.5 * random_unitary(3, rng), tol), tol);
    CHECK(strict.simple);
    CHECK(strict.cnu_defect_dim == 0);

    SimplicityReport shift = simplicity_check(julia_node(truncated_shift(3), tol), tol);
    CHECK(shift.simple);

    // no input at all: the whole state is a unitary part
    Colligation closed = make_colligation(0, random_unitary(3, rng), tol);
    SimplicityReport cr = simplicity_check(closed, tol);
    CHECK_FALSE(cr.simple);
    CHECK(cr.cnu_defect_dim == 3);

    Colligation padded = with_unitary_part(random_colligation(2, 2, 17), random_unitary(2, rng), tol);
    SimplicityReport pr = simplicity_check(padded, tol);
    CHECK_FALSE(pr.simple);
    CHECK(pr.cnu_defect_dim == 2);
}

TEST_CASE("projection norms match the parameter chain norms") {
    Tolerances tol;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Colligation col = random_colligation(2, 2 + seed % 5, 2000 + seed);
        if (!simplicity_check(col, tol).simple) continue;
        Main1Report rep = verify_main1(col, 4, tol);
        CHECK_FALSE(rep.skipped);
        CHECK(rep.max_residual_M <= 1e-8);
        CHECK(rep.max_residual_N <= 1e-8);
    }

    std::mt19937_64 rng(89);
    Colligation padded = with_unitary_part(random_colligation(2, 2, 23), random_unitary(2, rng), tol);
    Main1Report rep = verify_main1(padded, 3, tol);
    CHECK(rep.skipped);
}

TEST_CASE("the associated node realizes the shifted transfer function") {
    Tolerances tol;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Colligation col = random_colligation(2, 3, 3000 + seed);
        AssociatedSystem assoc = associated_system(col, 4, tol);
        CHECK(assoc.unitarity_residual <= 1e-8);
        CHECK(assoc.transfer_residual <= 1e-8);

        // independent replay: the new node's transfer equals the shift of the
        // old transfer expressed on the defect bases of the constant term
        MatSeries theta = transfer_coeffs(col, 5);
        SchurStep step = schur_step(theta, tol);
        REQUIRE(step.next.has_value());
        MatSeries direct = transfer_coeffs(assoc.system, 4);
        for (int k = 0; k <= 4; ++k)
            CHECK(max_abs(direct.coeffs()[k] - step.next->coeffs()[k]) < 1e-8);
    }

    // a unitary constant block leaves nothing to shift
    CMatrix diag = CMatrix::Zero(2, 2);
    diag(0, 0) = std::polar(1.0, 0.3);
    diag(1, 1) = std::polar(1.0, -1.1);
    Colligation degenerate = make_colligation(1, diag, tol);
    CHECK_THROWS_AS(associated_system(degenerate, 2, tol), DegenerateDefect);
}

TEST_CASE("characteristic coefficients of the truncated shift") {
    Tolerances tol;
    MatSeries psi = characteristic_function(truncated_shift(2), 4, tol);
    REQUIRE(psi.coeffs()[0].rows() == 1);
    REQUIRE(psi.coeffs()[0].cols() == 1);
    CHECK(max_abs(psi.coeffs()[0]) < 1e-14);
    CHECK(max_abs(psi.coeffs()[1]) < 1e-14);
    CHECK(std::abs(psi.coeffs()[2](0, 0) - Complex(1.0, 0.0)) < 1e-12);
    CHECK(max_abs(psi.coeffs()[3]) < 1e-14);
    CHECK(max_abs(psi.coeffs()[4]) < 1e-14);

    // scalar strict contraction: a single degree-one inner factor
    CMatrix a(1, 1);
    a(0, 0) = Complex(0.7, 0.0);
    MatSeries pa = characteristic_function(a, 3, tol);
    CHECK(std::abs(pa.coeffs()[0](0, 0) - Complex(-0.7, 0.0)) < 1e-12);
    CHECK(std::abs(pa.coeffs()[1](0, 0) - Complex(0.51, 0.0)) < 1e-12);
    CHECK(std::abs(pa.coeffs()[2](0, 0) - Complex(0.357, 0.0)) < 1e-12);

    // unitary state: both defect spaces vanish
    std::mt19937_64 rng(97);
    MatSeries pu = characteristic_function(random_unitary(3, rng), 2, tol);
    CHECK(pu.coeffs()[0].rows() == 0);
    CHECK(pu.coeffs()[0].cols() == 0);
}

TEST_CASE("characteristic functions are Schur class") {
    std::mt19937_64 rng(101);
    Tolerances tol;
    for (int trial = 0; trial < 6; ++trial) {
        CMatrix a = 0.9 * testkit::random_contraction(3, 3, 0.9, rng);
        MatSeries psi = characteristic_function(a, 5, tol);
        for (int n = 0; n <= 5; ++n)
            CHECK(is_contraction(build_toeplitz(psi.coeffs(), n), tol).ok);
    }
}

TEST_CASE("parameter limits of the characteristic function detect pure contractions") {
    Tolerances tol;
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 5; ++trial) {
        // strict block plus a nilpotent shift block: no isometric directions survive
        CMatrix strict = 0.7 * random_unitary(1 + static_cast<int>(rng() % 2), rng);
        CMatrix shift = truncated_shift(2);
        Eigen::Index h = strict.rows() + shift.rows();
        CMatrix a = CMatrix::Zero(h, h);
        a.topLeftCorner(strict.rows(), strict.rows()) = strict;
        a.bottomRightCorner(2, 2) = shift;

        CMatrix ah = CMatrix::Identity(h, h);
        for (Eigen::Index i = 0; i < h; ++i) ah = a * ah;
        bool no_forward_isometry = defect_kernel_basis(ah, tol).cols() == 0;
        bool no_backward_isometry = defect_kernel_basis(ah.adjoint(), tol).cols() == 0;
        REQUIRE(no_forward_isometry);
        REQUIRE(no_backward_isometry);

        MatSeries psi = characteristic_function(a, static_cast<int>(h) + 3, tol);
        ChoiceSequence cs = operator_schur_params(psi, static_cast<int>(h), tol);
        LimitDiagnostics diag = limit_diagnostics(cs, static_cast<int>(h), tol);
        CHECK(diag.observable == no_backward_isometry);
        CHECK(diag.controllable == no_forward_isometry);
        CHECK(diag.M_limit_est <= 1e-8);
        CHECK(diag.N_limit_est <= 1e-8);
    }
}
