#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>

#include "helpers.hpp"
#include "tubal/algebra.hpp"
#include "tubal/factorization.hpp"
#include "tubal/oracle.hpp"
#include "tubal/synth.hpp"

using namespace tubal;
using testutil::max_abs_diff;
using testutil::randn_matrix;
using testutil::rel_err;
using cd = std::complex<double>;

namespace {

// Kronecker product of complex matrices.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t aj = 0; aj < a.cols(); ++aj)
        for (std::size_t ai = 0; ai < a.rows(); ++ai)
            for (std::size_t bj = 0; bj < b.cols(); ++bj)
                for (std::size_t bi = 0; bi < b.rows(); ++bi)
                    out(ai * b.rows() + bi, aj * b.cols() + bj) = a(ai, aj) * b(bi, bj);
    return out;
}

ComplexMatrix dft_matrix(std::size_t n) {
    ComplexMatrix f(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            f(i, j) = std::polar(1.0, -2.0 * std::numbers::pi *
                                          static_cast<double>((i * j) % n) /
                                          static_cast<double>(n));
    return f;
}

ComplexMatrix to_complex(const oracle::BlockMatrix& b) {
    ComplexMatrix out(b.rows, b.cols);
    for (std::size_t j = 0; j < b.cols; ++j)
        for (std::size_t i = 0; i < b.rows; ++i) out(i, j) = b.at(i, j);
    return out;
}

// Smallest positive root bracketing by bisection; used to extract
// eigenvalues of 2x2/3x3 Gram matrices from their characteristic
// polynomials independently of any SVD code.
double bisect_root(double lo, double hi, auto poly) {
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((poly(lo) <= 0.0) == (poly(mid) <= 0.0))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("bcirc: single slice, identity tensor, diagonalization identity") {
    RealTensor3 a1 = randn_tensor(3, 2, 1, 5);
    oracle::BlockMatrix b1 = oracle::bcirc(a1);
    CHECK(b1.rows == 3);
    CHECK(b1.cols == 2);
    for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t i = 0; i < 3; ++i) CHECK(b1.at(i, j) == a1(i, j, 0));

    oracle::BlockMatrix bi = oracle::bcirc(identity_tensor(2, 3));
    for (std::size_t j = 0; j < 6; ++j)
        for (std::size_t i = 0; i < 6; ++i) CHECK(bi.at(i, j) == (i == j ? 1.0 : 0.0));

    // (F3 (x) I2) bcirc(a) (F3^-1 (x) I2) equals bdiag of the Fourier tensor.
    RealTensor3 a = randn_tensor(2, 2, 3, 6);
    ComplexMatrix f3 = dft_matrix(3);
    ComplexMatrix f3inv = adjoint(f3);
    for (std::size_t t = 0; t < 9; ++t) f3inv.data()[t] /= 3.0;
    ComplexMatrix left = kron(f3, ComplexMatrix::identity(2));
    ComplexMatrix right = kron(f3inv, ComplexMatrix::identity(2));
    ComplexMatrix got = multiply(left, multiply(to_complex(oracle::bcirc(a)), right));
    ComplexMatrix want = oracle::bdiag(dft_mode3(a));
    CHECK(frobenius_norm(subtract(got, want)) <= 1e-11 * std::max(1.0, frobenius_norm(want)));
}

TEST_CASE("bcirc diagonalization holds on random small tensors") {
    for (std::uint64_t trial = 0; trial < 12; ++trial) {
        const std::size_t n1 = 1 + counter_hash(33, 3 * trial) % 4;
        const std::size_t n2 = 1 + counter_hash(33, 3 * trial + 1) % 4;
        const std::size_t n3 = 1 + counter_hash(33, 3 * trial + 2) % 4;
        RealTensor3 a = randn_tensor(n1, n2, n3, 7700 + trial);
        ComplexMatrix fn = dft_matrix(n3);
        ComplexMatrix fninv = adjoint(fn);
        for (std::size_t t = 0; t < n3 * n3; ++t)
            fninv.data()[t] /= static_cast<double>(n3);
        ComplexMatrix got =
            multiply(kron(fn, ComplexMatrix::identity(n1)),
                     multiply(to_complex(oracle::bcirc(a)),
                              kron(fninv, ComplexMatrix::identity(n2))));
        ComplexMatrix want = oracle::bdiag(dft_mode3(a));
        CHECK(frobenius_norm(subtract(got, want)) <=
              1e-11 * std::max(1.0, frobenius_norm(want)));
    }
}

TEST_CASE("unfold/fold: round trip, single slice, block rows") {
    RealTensor3 a = randn_tensor(3, 2, 4, 15);
    oracle::BlockMatrix u = oracle::unfold(a);
    CHECK(u.rows == 12);
    CHECK(u.cols == 2);
    CHECK(max_abs_diff(oracle::fold(u), a) == 0.0);

    for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t i = 0; i < 3; ++i) CHECK(u.at(k * 3 + i, j) == a(i, j, k));

    RealTensor3 a1 = randn_tensor(3, 2, 1, 16);
    oracle::BlockMatrix u1 = oracle::unfold(a1);
    for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t i = 0; i < 3; ++i) CHECK(u1.at(i, j) == a1(i, j, 0));

    oracle::BlockMatrix bad = u;
    bad.n3 = 3;  // 3 * 3 != 12 rows
    CHECK_THROWS_AS(oracle::fold(bad), ShapeError);
}

TEST_CASE("t_product_naive: identity law and bilinearity") {
    RealTensor3 b = randn_tensor(3, 2, 4, 25);
    CHECK(max_abs_diff(oracle::t_product_naive(identity_tensor(3, 4), b), b) <= 1e-12);

    RealTensor3 a = randn_tensor(4, 3, 3, 26);
    RealTensor3 x = randn_tensor(3, 2, 3, 27);
    RealTensor3 y = randn_tensor(3, 2, 3, 28);
    RealTensor3 lhs = oracle::t_product_naive(a, add(x, y));
    RealTensor3 rhs = add(oracle::t_product_naive(a, x), oracle::t_product_naive(a, y));
    CHECK(rel_err(lhs, rhs) <= 1e-11);

    CHECK_THROWS_AS(oracle::t_product_naive(a, randn_tensor(4, 2, 3, 29)), ShapeError);
}

TEST_CASE("jacobi_svd: diagonal, unitary, norm identity, reconstruction") {
    ComplexMatrix d(3, 3);
    d(0, 0) = 3.0;
    d(1, 1) = 2.0;
    d(2, 2) = 1.0;
    oracle::Svd s1 = oracle::jacobi_svd(d);
    CHECK(std::abs(s1.s[0] - 3.0) <= 1e-14);
    CHECK(std::abs(s1.s[1] - 2.0) <= 1e-14);
    CHECK(std::abs(s1.s[2] - 1.0) <= 1e-14);

    ComplexMatrix q = economy_qr(randn_matrix(5, 5, 31)).q;
    oracle::Svd s2 = oracle::jacobi_svd(q);
    for (double sv : s2.s) CHECK(std::abs(sv - 1.0) <= 1e-12);

    ComplexMatrix a = randn_matrix(6, 4, 32);
    oracle::Svd s3 = oracle::jacobi_svd(a);
    double sumsq = 0.0;
    for (double sv : s3.s) sumsq += sv * sv;
    const double fn = frobenius_norm(a);
    CHECK(std::abs(fn * fn - sumsq) <= 1e-11 * fn * fn);

    ComplexMatrix sd(4, 4);
    for (std::size_t i = 0; i < 4; ++i) sd(i, i) = s3.s[i];
    ComplexMatrix rec = multiply(s3.u, multiply(sd, adjoint(s3.v)));
    CHECK(frobenius_norm(subtract(rec, a)) <= 1e-11 * fn);
    CHECK(testutil::orthonormality_residual(s3.u) <= 1e-12);
    CHECK(testutil::orthonormality_residual(s3.v) <= 1e-12);

    // Wide input goes through the adjoint path.
    ComplexMatrix w = randn_matrix(3, 5, 33);
    oracle::Svd s4 = oracle::jacobi_svd(w);
    ComplexMatrix sw(3, 3);
    for (std::size_t i = 0; i < 3; ++i) sw(i, i) = s4.s[i];
    CHECK(frobenius_norm(subtract(multiply(s4.u, multiply(sw, adjoint(s4.v))), w)) <=
          1e-11 * frobenius_norm(w));

    CHECK_THROWS_AS(oracle::jacobi_svd(ComplexMatrix(200, 200)), SizeGuardError);
}

TEST_CASE("jacobi_svd singular values match characteristic-polynomial roots") {
    // 2x2: A = [[1, 2], [3, 4]], Gram eigenvalues from the quadratic.
    ComplexMatrix a2(2, 2);
    a2(0, 0) = 1.0;
    a2(0, 1) = 2.0;
    a2(1, 0) = 3.0;
    a2(1, 1) = 4.0;
    // A^T A = [[10, 14], [14, 20]]: lambda^2 - 30 lambda + 4 = 0.
    const double disc = std::sqrt(30.0 * 30.0 - 4.0 * 4.0);
    const double l1 = (30.0 + disc) / 2.0, l2 = (30.0 - disc) / 2.0;
    oracle::Svd s2 = oracle::jacobi_svd(a2);
    CHECK(std::abs(s2.s[0] - std::sqrt(l1)) <= 1e-10);
    CHECK(std::abs(s2.s[1] - std::sqrt(l2)) <= 1e-10);

    // 3x3 upper bidiagonal of ones: Gram charpoly lambda^3 - 5 lambda^2
    // + 6 lambda - 1, roots isolated by bisection.
    ComplexMatrix a3(3, 3);
    a3(0, 0) = 1.0;
    a3(0, 1) = 1.0;
    a3(1, 1) = 1.0;
    a3(1, 2) = 1.0;
    a3(2, 2) = 1.0;
    auto poly = [](double x) { return ((x - 5.0) * x + 6.0) * x - 1.0; };
    const double r1 = bisect_root(0.0, 0.5, poly);
    const double r2 = bisect_root(0.5, 2.0, poly);
    const double r3 = bisect_root(2.0, 5.0, poly);
    oracle::Svd s3 = oracle::jacobi_svd(a3);
    CHECK(std::abs(s3.s[0] - std::sqrt(r3)) <= 1e-10);
    CHECK(std::abs(s3.s[1] - std::sqrt(r2)) <= 1e-10);
    CHECK(std::abs(s3.s[2] - std::sqrt(r1)) <= 1e-10);
}

TEST_CASE("t_svd_ref: identity, single slice, random reconstruction") {
    oracle::TsvdFactors fi = oracle::t_svd_ref(identity_tensor(3, 4));
    CHECK(max_abs_diff(fi.s, identity_tensor(3, 4)) <= 1e-12);

    RealTensor3 a1 = randn_tensor(4, 3, 1, 41);
    oracle::TsvdFactors f1 = oracle::t_svd_ref(a1);
    ComplexMatrix slice(4, 3);
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < 4; ++i) slice(i, j) = a1(i, j, 0);
    oracle::Svd sv = oracle::jacobi_svd(slice);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(f1.s(i, i, 0) - sv.s[i]) <= 1e-12);

    RealTensor3 a = randn_tensor(8, 6, 3, 42);
    oracle::TsvdFactors f = oracle::t_svd_ref(a);
    RealTensor3 rec = t_product(t_product(f.u, f.s), conj_transpose(f.v));
    CHECK(rel_err(rec, a) <= 1e-10);
    CHECK(testutil::t_orthonormality_residual(f.u) <= 1e-9);
    CHECK(testutil::t_orthonormality_residual(f.v) <= 1e-9);

    // Off-f-diagonal entries of s vanish.
    double offdiag = 0.0;
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t j = 0; j < 6; ++j)
            for (std::size_t i = 0; i < 6; ++i)
                if (i != j) offdiag = std::max(offdiag, std::abs(f.s(i, j, k)));
    CHECK(offdiag <= 1e-12);
}

TEST_CASE("tubal_rank: zero, identity, synthetic construction") {
    CHECK(oracle::tubal_rank(RealTensor3(4, 4, 3), 1e-8) == 0);
    CHECK(oracle::tubal_rank(identity_tensor(5, 3), 1e-8) == 5);
    CHECK(oracle::tubal_rank(synth_lowrank({12, 12, 3, 5, 99}), 1e-8) == 5);
}

TEST_CASE("nuclear_norm_tensor: zero, identity") {
    CHECK(oracle::nuclear_norm_tensor(RealTensor3(3, 4, 2)) == 0.0);
    CHECK(std::abs(oracle::nuclear_norm_tensor(identity_tensor(4, 3)) - 4.0) <= 1e-12);
}

TEST_CASE("verification battery is green") {
    oracle::VerifyResult vr = oracle::run_verification();
    CHECK(vr.checks > 0);
    CHECK(vr.failures == 0);
}
