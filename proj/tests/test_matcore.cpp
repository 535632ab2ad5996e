#include <doctest.h>

#include <schurkit/matcore.hpp>

#include "helpers.hpp"

using namespace schurkit;
using testkit::max_abs;
using testkit::randc;
using testkit::random_contraction;
using testkit::random_unitary;

TEST_CASE("sigma_max matches a known singular spectrum") {
    CMatrix m(2, 2);
    m << Complex(3, 0), Complex(0, 0), Complex(0, 0), Complex(0, -2);
    CHECK(sigma_max(m) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(sigma_max(CMatrix(0, 3)) == 0.0);
}

TEST_CASE("is_contraction honors the slack band") {
    Tolerances tol;
    CMatrix m = CMatrix::Identity(2, 2) * (1.0 + 0.5 * tol.contraction_slack);
    CHECK(is_contraction(m, tol).ok);
    CMatrix bad = CMatrix::Identity(2, 2) * (1.0 + 50 * tol.contraction_slack);
    auto c = is_contraction(bad, tol);
    CHECK_FALSE(c.ok);
    CHECK(c.sigma == doctest::Approx(1.0 + 50 * tol.contraction_slack));
    CHECK_THROWS_AS(require_contraction(bad, tol), NotAContraction);
}

TEST_CASE("defect squares back to I - T*T and intertwines") {
    std::mt19937_64 rng(7);
    Tolerances tol;
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::Index r = 1 + static_cast<Eigen::Index>(rng() % 3);
        Eigen::Index c = 1 + static_cast<Eigen::Index>(rng() % 3);
        CMatrix t = random_contraction(r, c, 0.9, rng);
        CMatrix d = defect(t, tol);
        CMatrix ds = defect(t.adjoint(), tol);
        CHECK(max_abs(d * d - (CMatrix::Identity(c, c) - t.adjoint() * t)) < 1e-12);
        CHECK(max_abs(d - d.adjoint()) < 1e-13);
        // T D_T = D_{T*} T
        CHECK(max_abs(t * d - ds * t) < 1e-12);
    }
}

TEST_CASE("defect_basis spans the defect space and is deterministic") {
    std::mt19937_64 rng(11);
    Tolerances tol;
    for (int trial = 0; trial < 20; ++trial) {
        CMatrix t = random_contraction(3, 3, 0.95, rng);
        CMatrix u = defect_basis(t, tol);
        CHECK(u.cols() == 3);  // strict contraction: full defect
        CHECK(max_abs(u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols())) < 1e-12);
        CMatrix d = defect(t, tol);
        CHECK(max_abs(d * (CMatrix::Identity(3, 3) - u * u.adjoint())) < 1e-10);
        CMatrix again = defect_basis(t, tol);
        CHECK(max_abs(u - again) == 0.0);
    }
}

TEST_CASE("boundary singular directions are excluded from the defect basis") {
    Tolerances tol;
    std::mt19937_64 rng(13);
    CMatrix v = random_unitary(3, rng), w = random_unitary(3, rng);
    Eigen::Vector3d s(1.0, 0.6, 0.2);
    CMatrix t = v * s.cast<Complex>().asDiagonal() * w.adjoint();
    CMatrix u = defect_basis(t, tol);
    CHECK(u.cols() == 2);
    CMatrix k = defect_kernel_basis(t, tol);
    CHECK(k.cols() == 1);
    // the kernel direction is the right singular vector of sigma = 1
    CHECK(std::abs(std::abs((k.adjoint() * w.col(0))(0, 0)) - 1.0) < 1e-10);
    // basis and kernel together are unitary
    CMatrix both(3, 3);
    both << u, k;
    CHECK(max_abs(both.adjoint() * both - CMatrix::Identity(3, 3)) < 1e-12);
}

TEST_CASE("pinv satisfies the Penrose identities, also on rank-deficient input") {
    std::mt19937_64 rng(17);
    Tolerances tol;
    for (int trial = 0; trial < 20; ++trial) {
        CMatrix a = randc(3, 2, rng);
        if (trial % 2 == 0) a.col(1) = a.col(0) * Complex(0.5, 0.25);  // force rank 1
        CMatrix p = pinv(a, tol);
        CHECK(max_abs(a * p * a - a) < 1e-10);
        CHECK(max_abs(p * a * p - p) < 1e-10);
        CHECK(max_abs((a * p) - (a * p).adjoint()) < 1e-10);
        CHECK(max_abs((p * a) - (p * a).adjoint()) < 1e-10);
    }
    CHECK(pinv(CMatrix(2, 0), tol).rows() == 0);
    CHECK(pinv(CMatrix(2, 0), tol).cols() == 2);
}

TEST_CASE("psd_sqrt squares back and rejects indefinite input") {
    std::mt19937_64 rng(19);
    Tolerances tol;
    CMatrix s = testkit::random_psd(4, rng);
    CMatrix r = psd_sqrt(s, tol);
    CHECK(max_abs(r * r - s) < 1e-10);
    CHECK(max_abs(r - r.adjoint()) < 1e-12);
    CMatrix bad = CMatrix::Identity(2, 2);
    bad(1, 1) = Complex(-0.5, 0);
    CHECK_THROWS_AS(psd_sqrt(bad, tol), NotPSD);
    CMatrix nonherm = randc(3, 3, rng);
    CHECK_THROWS_AS(psd_sqrt(nonherm + 10 * CMatrix::Identity(3, 3), tol), NotPSD);
}

TEST_CASE("psd_clamp floors the spectrum at zero") {
    CMatrix s(2, 2);
    s << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1e-3, 0);
    CMatrix c = psd_clamp(s);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(c);
    CHECK(es.eigenvalues().minCoeff() >= 0.0);
    CHECK(max_abs(c - psd_clamp(c)) < 1e-14);
}

TEST_CASE("orthonormal_complement completes a basis") {
    std::mt19937_64 rng(23);
    CMatrix u = random_unitary(4, rng).leftCols(2);
    CMatrix c = orthonormal_complement(u);
    CHECK(c.cols() == 2);
    CHECK(max_abs(u.adjoint() * c) < 1e-12);
    CHECK(max_abs(c.adjoint() * c - CMatrix::Identity(2, 2)) < 1e-12);
    CHECK(orthonormal_complement(CMatrix(3, 0)).isIdentity(1e-14));
    CHECK(orthonormal_complement(random_unitary(3, rng)).cols() == 0);
}

TEST_CASE("numerical_rank uses the unit floor to ignore noise") {
    std::mt19937_64 rng(29);
    CMatrix noise = 1e-9 * randc(4, 4, rng);
    CHECK(numerical_rank(noise, 1e-5, /*floor=*/1.0) == 0);
    CHECK(numerical_rank(noise, 1e-5, /*floor=*/0.0) == 4);  // relative-only keeps them
    CHECK(numerical_rank(CMatrix::Identity(4, 4), 1e-5, 1.0) == 4);
}

TEST_CASE("intersect_spans finds the common direction of two planes") {
    CMatrix p = CMatrix::Zero(4, 2), q = CMatrix::Zero(4, 2);
    p(0, 0) = 1;  // span{e0, e1}
    p(1, 1) = 1;
    q(0, 0) = 1;  // span{e0, e2}
    q(2, 1) = 1;
    CMatrix w = intersect_spans(p, q, 1e-8);
    REQUIRE(w.cols() == 1);
    CHECK(std::abs(std::abs(w(0, 0)) - 1.0) < 1e-12);
    CMatrix none = intersect_spans(p.rightCols(1), q.rightCols(1), 1e-8);
    CHECK(none.cols() == 0);
}
