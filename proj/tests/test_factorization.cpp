#include "doctest.h"

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "helpers.hpp"
#include "tubal/algebra.hpp"
#include "tubal/factorization.hpp"
#include "tubal/oracle.hpp"
#include "tubal/synth.hpp"

using namespace tubal;
using testutil::max_abs_diff;
using testutil::orthonormality_residual;
using testutil::randn_matrix;
using testutil::rel_err;
using testutil::t_orthonormality_residual;
using cd = std::complex<double>;

namespace {

double upper_triangular_residual(const ComplexMatrix& r) {
    double m = 0.0;
    for (std::size_t j = 0; j < r.cols(); ++j)
        for (std::size_t i = j + 1; i < r.rows(); ++i) m = std::max(m, std::abs(r(i, j)));
    return m;
}

ComplexMatrix csvd_reconstruction(const CsvdFactors& f) {
    return multiply(f.l, multiply(f.d, f.r));
}

// Sum of squared off-f-diagonal entries.
double off_fdiag_mass(const RealTensor3& d) {
    double s = 0.0;
    for (std::size_t k = 0; k < d.n3(); ++k)
        for (std::size_t j = 0; j < d.n2(); ++j)
            for (std::size_t i = 0; i < d.n1(); ++i)
                if (i != j) s += d(i, j, k) * d(i, j, k);
    return s;
}

RealTensor3 ctsvd_reconstruction(const FactorTriple& f) {
    return t_product(t_product(f.l, f.d), f.r);
}

}  // namespace

TEST_CASE("economy_qr: identity fixed point") {
    QRPair qr = economy_qr(ComplexMatrix::identity(4));
    CHECK(frobenius_norm(subtract(qr.q, ComplexMatrix::identity(4))) <= 1e-14);
    CHECK(frobenius_norm(subtract(qr.r, ComplexMatrix::identity(4))) <= 1e-14);
}

TEST_CASE("economy_qr: random complex 8x5 contract") {
    ComplexMatrix a = randn_matrix(8, 5, 201);
    QRPair qr = economy_qr(a);
    CHECK(frobenius_norm(subtract(multiply(qr.q, qr.r), a)) <= 1e-12 * frobenius_norm(a));
    CHECK(orthonormality_residual(qr.q) <= 1e-12);
    CHECK(upper_triangular_residual(qr.r) == 0.0);
    for (std::size_t k = 0; k < 5; ++k) {
        CHECK(qr.r(k, k).imag() == 0.0);
        CHECK(qr.r(k, k).real() >= 0.0);
    }
}

TEST_CASE("economy_qr: positive-diagonal upper-triangular input is a fixed point") {
    ComplexMatrix a(4, 4);
    const double vals[4][4] = {{2.0, -1.0, 0.5, 3.0},
                               {0.0, 1.5, -2.0, 0.25},
                               {0.0, 0.0, 0.75, 1.0},
                               {0.0, 0.0, 0.0, 4.0}};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) a(i, j) = vals[i][j];
    QRPair qr = economy_qr(a);
    CHECK(frobenius_norm(subtract(qr.r, a)) <= 1e-12);
    CHECK(frobenius_norm(subtract(qr.q, ComplexMatrix::identity(4))) <= 1e-12);
}

TEST_CASE("economy_qr: error paths") {
    CHECK_THROWS_AS(economy_qr(randn_matrix(3, 5, 202)), ShapeError);
    ComplexMatrix bad = randn_matrix(4, 2, 203);
    bad(1, 1) = cd{std::numeric_limits<double>::quiet_NaN(), 0.0};
    CHECK_THROWS_AS(economy_qr(bad), NumericalError);
}

TEST_CASE("economy_qr: rank-deficient input keeps q orthonormal") {
    ComplexMatrix a = randn_matrix(6, 2, 204);
    ComplexMatrix wide(6, 4);
    for (std::size_t i = 0; i < 6; ++i) {
        wide(i, 0) = a(i, 0);
        wide(i, 1) = a(i, 1);
        wide(i, 2) = a(i, 0) * 2.0;  // dependent columns
        wide(i, 3) = a(i, 0) + a(i, 1);
    }
    QRPair qr = economy_qr(wide);
    CHECK(frobenius_norm(subtract(multiply(qr.q, qr.r), wide)) <= 1e-11 * frobenius_norm(wide));
    CHECK(orthonormality_residual(qr.q) <= 1e-11);
}

TEST_CASE("csvd_qr: diagonal input recovers singular values") {
    ComplexMatrix a(3, 3);
    a(0, 0) = 3.0;
    a(1, 1) = 2.0;
    a(2, 2) = 1.0;
    CsvdFactors f = csvd_qr(a, 3, 30);
    oracle::Svd sv = oracle::jacobi_svd(f.d);
    CHECK(std::abs(sv.s[0] - 3.0) <= 1e-8);
    CHECK(std::abs(sv.s[1] - 2.0) <= 1e-8);
    CHECK(std::abs(sv.s[2] - 1.0) <= 1e-8);
}

TEST_CASE("csvd_qr: exact rank-2 input reconstructs at rank 2") {
    ComplexMatrix u = randn_matrix(8, 2, 211);
    ComplexMatrix v = randn_matrix(2, 6, 212);
    ComplexMatrix a = multiply(u, v);
    CsvdFactors f = csvd_qr(a, 2, 40);
    CHECK(frobenius_norm(subtract(csvd_reconstruction(f), a)) <= 1e-8 * frobenius_norm(a));
    CHECK(orthonormality_residual(f.l) <= 1e-12);
    CHECK(orthonormality_residual(adjoint(f.r)) <= 1e-12);
}

TEST_CASE("csvd_qr: unitary input has unit singular values") {
    ComplexMatrix q = economy_qr(randn_matrix(5, 5, 213)).q;
    CsvdFactors f = csvd_qr(q, 5, 20);
    oracle::Svd sv = oracle::jacobi_svd(f.d);
    for (double s : sv.s) CHECK(std::abs(s - 1.0) <= 1e-8);
}

TEST_CASE("csvd_qr: reconstruction residual is non-increasing in iterations") {
    ComplexMatrix a = randn_matrix(7, 5, 214);
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t iters = 1; iters <= 15; ++iters) {
        CsvdFactors f = csvd_qr(a, 3, iters);
        const double res = frobenius_norm(subtract(csvd_reconstruction(f), a));
        CHECK(res <= prev + 1e-12);
        prev = res;
    }
}

TEST_CASE("csvd_qr: rank validation") {
    ComplexMatrix a = randn_matrix(5, 4, 215);
    CHECK_THROWS_AS(csvd_qr(a, 0, 10), RankError);
    CHECK_THROWS_AS(csvd_qr(a, 5, 10), RankError);
    CHECK_THROWS_AS(csvd_qr(a, 2, 0), ConfigError);
}

TEST_CASE("t_qr: identity tensor") {
    TqrPair qr = t_qr(identity_tensor(3, 4));
    CHECK(max_abs_diff(qr.q, identity_tensor(3, 4)) <= 1e-12);
    CHECK(max_abs_diff(qr.r, identity_tensor(3, 4)) <= 1e-12);
}

TEST_CASE("t_qr: single slice equals the matrix factorization") {
    RealTensor3 a = randn_tensor(6, 4, 1, 221);
    TqrPair qr = t_qr(a);
    ComplexMatrix slice(6, 4);
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t i = 0; i < 6; ++i) slice(i, j) = a(i, j, 0);
    QRPair mqr = householder_qr(slice);
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t i = 0; i < 6; ++i)
            CHECK(std::abs(qr.q(i, j, 0) - mqr.q(i, j)) <= 1e-12);
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(std::abs(qr.r(i, j, 0) - mqr.r(i, j)) <= 1e-12);
}

TEST_CASE("t_qr: random 6x4x3 contract") {
    RealTensor3 a = randn_tensor(6, 4, 3, 222);
    TqrPair qr = t_qr(a);
    CHECK(rel_err(t_product(qr.q, qr.r), a) <= 1e-10);
    CHECK(t_orthonormality_residual(qr.q) <= 1e-10);

    // Fourier slices of r stay upper triangular.
    ComplexTensor3 rhat = dft_mode3(qr.r);
    double below = 0.0;
    for (std::size_t s = 0; s < 3; ++s)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t i = j + 1; i < 4; ++i)
                below = std::max(below, std::abs(rhat(i, j, s)));
    CHECK(below <= 1e-10);

    // Reconstruction also agrees with the block-circulant oracle path.
    CHECK(rel_err(oracle::t_product_naive(qr.q, qr.r), a) <= 1e-9);
}

TEST_CASE("t_qr: non-finite input raises NumericalError") {
    RealTensor3 a = randn_tensor(4, 3, 2, 224);
    a(1, 2, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(t_qr(a), NumericalError);
}

TEST_CASE("t_qr: wide tensor") {
    RealTensor3 a = randn_tensor(4, 7, 3, 223);
    TqrPair qr = t_qr(a);
    CHECK(qr.q.n2() == 4);
    CHECK(qr.r.n1() == 4);
    CHECK(rel_err(t_product(qr.q, qr.r), a) <= 1e-10);
    CHECK(t_orthonormality_residual(qr.q) <= 1e-10);
}

TEST_CASE("ctsvd_qr: exact tubal rank 10 at desk scale") {
    RealTensor3 x = synth_lowrank({20, 20, 3, 10, 231});
    FactorTriple f = ctsvd_qr(x, 10, 60);

    // Reconstruction converges within a few iterations at exact rank.
    RealTensor3 rec = ctsvd_reconstruction(f);
    double sq = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t) {
        const double d = rec.data()[t] - x.data()[t];
        sq += d * d;
    }
    CHECK(std::sqrt(sq / static_cast<double>(x.size())) <= 1e-6);

    // The f-diagonal entries approach the singular values at a rate set
    // by the adjacent singular-value ratios, so the tube comparison
    // runs at a budget past convergence for generic gaps.
    FactorTriple fc = ctsvd_qr(x, 10, 300);
    ComplexTensor3 dhat = dft_mode3(fc.d);
    oracle::TsvdFactors ref = oracle::t_svd_ref(x);
    ComplexTensor3 shat = dft_mode3(ref.s);
    for (std::size_t s = 0; s < 3; ++s) {
        std::vector<double> got, want;
        for (std::size_t i = 0; i < 10; ++i) got.push_back(std::abs(dhat(i, i, s)));
        for (std::size_t i = 0; i < 10; ++i) want.push_back(std::abs(shat(i, i, s)));
        std::sort(got.rbegin(), got.rend());
        std::sort(want.rbegin(), want.rend());
        for (std::size_t i = 0; i < 10; ++i) CHECK(std::abs(got[i] - want[i]) <= 1e-6);
    }

    // Ritz-style check: the singular values of d itself match the
    // reference already at the short budget.
    ComplexTensor3 dhat60 = dft_mode3(f.d);
    for (std::size_t s = 0; s < 3; ++s) {
        ComplexMatrix dsl(10, 10);
        for (std::size_t j = 0; j < 10; ++j)
            for (std::size_t i = 0; i < 10; ++i) dsl(i, j) = dhat60(i, j, s);
        oracle::Svd sv = oracle::jacobi_svd(dsl);
        std::vector<double> want;
        for (std::size_t i = 0; i < 10; ++i) want.push_back(std::abs(shat(i, i, s)));
        std::sort(want.rbegin(), want.rend());
        for (std::size_t i = 0; i < 10; ++i) CHECK(std::abs(sv.s[i] - want[i]) <= 1e-8);
    }
}

TEST_CASE("ctsvd_qr: identity tensor is already converged") {
    FactorTriple f = ctsvd_qr(identity_tensor(4, 3), 4, 10);
    CHECK(max_abs_diff(f.d, identity_tensor(4, 3)) <= 1e-10);
    CHECK(rel_err(ctsvd_reconstruction(f), identity_tensor(4, 3)) <= 1e-12);
}

TEST_CASE("ctsvd_qr: reconstruction error is non-increasing across iterations") {
    RealTensor3 a = randn_tensor(8, 6, 3, 232);
    std::vector<DecomposeTraceRow> trace;
    ctsvd_qr(a, 4, 25, &trace);
    REQUIRE(!trace.empty());
    for (std::size_t k = 1; k < trace.size(); ++k)
        CHECK(trace[k].rmse <= trace[k - 1].rmse + 1e-12);
}

TEST_CASE("ctsvd_qr: off-f-diagonal mass decays over checkpoints") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        RealTensor3 a = randn_tensor(12, 12, 3, 240 + seed);
        const std::size_t checkpoints[] = {5, 20, 40, 60};
        double prev = std::numeric_limits<double>::infinity();
        for (std::size_t iters : checkpoints) {
            FactorTriple f = ctsvd_qr(a, 12, iters);
            const double mass = off_fdiag_mass(f.d);
            CHECK(mass <= prev + 1e-12);
            prev = mass;
        }
        FactorTriple f60 = ctsvd_qr(a, 12, 60);
        const double fn = frobenius_norm(f60.d);
        CHECK(off_fdiag_mass(f60.d) <= 1e-6 * fn * fn);
    }
}

TEST_CASE("ctsvd_qr: partial orthogonality holds at every checkpoint") {
    RealTensor3 a = randn_tensor(9, 7, 4, 233);
    for (std::size_t iters : {1, 3, 7, 15, 40}) {
        FactorTriple f = ctsvd_qr(a, 5, iters);
        CHECK(t_orthonormality_residual(f.l) <= 1e-8);
        // r has orthonormal rows: r * r^* = identity.
        RealTensor3 gram = t_product(f.r, conj_transpose(f.r));
        CHECK(frobenius_norm(subtract(gram, identity_tensor(5, 4))) <= 1e-8);
    }
}

TEST_CASE("ctsvd_qr: full rank reproduces the input") {
    RealTensor3 a = randn_tensor(7, 9, 3, 234);
    FactorTriple f = ctsvd_qr(a, 7, 80);
    CHECK(rel_err(ctsvd_reconstruction(f), a) <= 1e-7);
}

TEST_CASE("ctsvd_qr: rank validation") {
    RealTensor3 a = randn_tensor(5, 4, 2, 235);
    CHECK_THROWS_AS(ctsvd_qr(a, 0, 10), RankError);
    CHECK_THROWS_AS(ctsvd_qr(a, 5, 10), RankError);
}
