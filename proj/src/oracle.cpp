#include "tubal/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tubal/algebra.hpp"
#include "tubal/factorization.hpp"
#include "tubal/synth.hpp"

namespace tubal::oracle {

namespace {

using cd = std::complex<double>;

void guard(std::size_t m, std::size_t n, const char* who) {
    if (std::min(m, n) > kSizeGuard)
        throw SizeGuardError(std::string(who) + ": dimension exceeds the reference size cap");
}

}  // namespace

BlockMatrix bcirc(const RealTensor3& a) {
    const std::size_t n1 = a.n1(), n2 = a.n2(), n3 = a.n3();
    BlockMatrix out;
    out.rows = n1 * n3;
    out.cols = n2 * n3;
    out.n1 = n1;
    out.n2 = n2;
    out.n3 = n3;
    out.data.assign(out.rows * out.cols, 0.0);
    for (std::size_t bj = 0; bj < n3; ++bj) {
        for (std::size_t bi = 0; bi < n3; ++bi) {
            const std::size_t k = (bi + n3 - bj) % n3;
            for (std::size_t j = 0; j < n2; ++j)
                for (std::size_t i = 0; i < n1; ++i)
                    out.at(bi * n1 + i, bj * n2 + j) = a(i, j, k);
        }
    }
    return out;
}

BlockMatrix unfold(const RealTensor3& a) {
    const std::size_t n1 = a.n1(), n2 = a.n2(), n3 = a.n3();
    BlockMatrix out;
    out.rows = n1 * n3;
    out.cols = n2;
    out.n1 = n1;
    out.n2 = n2;
    out.n3 = n3;
    out.data.assign(out.rows * out.cols, 0.0);
    for (std::size_t k = 0; k < n3; ++k)
        for (std::size_t j = 0; j < n2; ++j)
            for (std::size_t i = 0; i < n1; ++i) out.at(k * n1 + i, j) = a(i, j, k);
    return out;
}

RealTensor3 fold(const BlockMatrix& u) {
    if (u.rows != u.n1 * u.n3 || u.cols != u.n2)
        throw ShapeError("fold: block metadata disagrees with matrix size");
    RealTensor3 out(u.n1, u.n2, u.n3);
    for (std::size_t k = 0; k < u.n3; ++k)
        for (std::size_t j = 0; j < u.n2; ++j)
            for (std::size_t i = 0; i < u.n1; ++i) out(i, j, k) = u.at(k * u.n1 + i, j);
    return out;
}

RealTensor3 t_product_naive(const RealTensor3& a, const RealTensor3& b) {
    if (a.n2() != b.n1() || a.n3() != b.n3())
        throw ShapeError("t_product_naive: inner dimension or depth mismatch");
    BlockMatrix bc = bcirc(a);
    BlockMatrix ub = unfold(b);
    BlockMatrix prod;
    prod.rows = bc.rows;
    prod.cols = ub.cols;
    prod.n1 = a.n1();
    prod.n2 = b.n2();
    prod.n3 = a.n3();
    prod.data.assign(prod.rows * prod.cols, 0.0);
    for (std::size_t j = 0; j < prod.cols; ++j)
        for (std::size_t k = 0; k < bc.cols; ++k) {
            const double w = ub.at(k, j);
            if (w == 0.0) continue;
            for (std::size_t i = 0; i < prod.rows; ++i) prod.at(i, j) += bc.at(i, k) * w;
        }
    return fold(prod);
}

ComplexTensor3 dft_mode3_naive(const RealTensor3& a) {
    const std::size_t n1 = a.n1(), n2 = a.n2(), n3 = a.n3();
    ComplexTensor3 out(n1, n2, n3);
    for (std::size_t j = 0; j < n2; ++j)
        for (std::size_t i = 0; i < n1; ++i)
            for (std::size_t k = 0; k < n3; ++k) {
                cd acc{0.0, 0.0};
                for (std::size_t t = 0; t < n3; ++t) {
                    const double ang = -2.0 * std::numbers::pi *
                                       static_cast<double>((k * t) % n3) /
                                       static_cast<double>(n3);
                    acc += a(i, j, t) * std::polar(1.0, ang);
                }
                out(i, j, k) = acc;
            }
    return out;
}

ComplexMatrix bdiag(const ComplexTensor3& a) {
    const std::size_t n1 = a.n1(), n2 = a.n2(), n3 = a.n3();
    ComplexMatrix out(n1 * n3, n2 * n3);
    for (std::size_t k = 0; k < n3; ++k)
        for (std::size_t j = 0; j < n2; ++j)
            for (std::size_t i = 0; i < n1; ++i) out(k * n1 + i, k * n2 + j) = a(i, j, k);
    return out;
}

namespace {

// Jacobi rotation diagonalizing [[a, c], [conj(c), b]]; returns false
// when c is already zero.
bool make_rotation(double a, double b, cd c, double& cs, cd& sn) {
    const double cabs = std::abs(c);
    if (cabs == 0.0) return false;
    const double zeta = (a - b) / (2.0 * cabs);
    const double w = std::sqrt(zeta * zeta + 1.0);
    const double t = (zeta > 0.0) ? 1.0 / (zeta + w) : 1.0 / (zeta - w);
    cs = 1.0 / std::sqrt(t * t + 1.0);
    sn = -t * cs * (std::conj(c) / cabs);
    return true;
}

void rotate_columns(ComplexMatrix& m, std::size_t i, std::size_t j, double cs, cd sn) {
    for (std::size_t k = 0; k < m.rows(); ++k) {
        const cd t1 = m(k, i);
        const cd t2 = m(k, j);
        m(k, i) = cs * t1 - sn * t2;
        m(k, j) = std::conj(sn) * t1 + cs * t2;
    }
}

}  // namespace

Svd jacobi_svd(const ComplexMatrix& a) {
    guard(a.rows(), a.cols(), "jacobi_svd");
    if (a.rows() < a.cols()) {
        Svd flipped = jacobi_svd(adjoint(a));
        return {std::move(flipped.v), std::move(flipped.s), std::move(flipped.u)};
    }

    const std::size_t m = a.rows(), n = a.cols();
    ComplexMatrix g = a;
    ComplexMatrix v = ComplexMatrix::identity(n);

    constexpr double tol = 1e-15;
    constexpr std::size_t max_sweeps = 64;
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        double max_resid = 0.0;
        for (std::size_t j = 1; j < n; ++j) {
            for (std::size_t i = 0; i < j; ++i) {
                double aa = 0.0, bb = 0.0;
                cd c{0.0, 0.0};
                for (std::size_t k = 0; k < m; ++k) {
                    aa += std::norm(g(k, i));
                    bb += std::norm(g(k, j));
                    c += std::conj(g(k, i)) * g(k, j);
                }
                const double denom = std::sqrt(aa * bb);
                if (denom > 0.0) max_resid = std::max(max_resid, std::abs(c) / denom);
                double cs;
                cd sn;
                if (make_rotation(aa, bb, c, cs, sn)) {
                    rotate_columns(g, i, j, cs, sn);
                    rotate_columns(v, i, j, cs, sn);
                }
            }
        }
        if (max_resid <= tol) break;
    }

    Svd out;
    out.s.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < m; ++k) s += std::norm(g(k, j));
        out.s[j] = std::sqrt(s);
    }
    // Sort descending, carrying columns along.
    for (std::size_t i = 0; i + 1 < n; ++i) {
        std::size_t imax = i;
        for (std::size_t k = i + 1; k < n; ++k)
            if (out.s[k] > out.s[imax]) imax = k;
        if (imax != i) {
            std::swap(out.s[i], out.s[imax]);
            for (std::size_t k = 0; k < m; ++k) std::swap(g(k, i), g(k, imax));
            for (std::size_t k = 0; k < n; ++k) std::swap(v(k, i), v(k, imax));
        }
    }

    // Normalize left vectors; columns with (numerically) zero singular
    // value get an orthonormal completion instead of a 0/0 direction.
    const double smax = out.s.empty() ? 0.0 : out.s[0];
    const double negligible = smax * 1e-14;
    for (std::size_t j = 0; j < n; ++j) {
        if (out.s[j] > negligible && out.s[j] > 0.0) {
            const double inv = 1.0 / out.s[j];
            for (std::size_t k = 0; k < m; ++k) g(k, j) *= inv;
        } else {
            // Gram-Schmidt a canonical vector against the columns so far.
            for (std::size_t e = 0; e < m; ++e) {
                for (std::size_t k = 0; k < m; ++k) g(k, j) = (k == e) ? 1.0 : 0.0;
                for (std::size_t prev = 0; prev < j; ++prev) {
                    cd dot{0.0, 0.0};
                    for (std::size_t k = 0; k < m; ++k) dot += std::conj(g(k, prev)) * g(k, j);
                    for (std::size_t k = 0; k < m; ++k) g(k, j) -= dot * g(k, prev);
                }
                double norm = 0.0;
                for (std::size_t k = 0; k < m; ++k) norm += std::norm(g(k, j));
                norm = std::sqrt(norm);
                if (norm > 0.5) {
                    for (std::size_t k = 0; k < m; ++k) g(k, j) /= norm;
                    break;
                }
            }
        }
    }
    out.u = std::move(g);
    out.v = std::move(v);
    return out;
}

TsvdFactors t_svd_ref(const RealTensor3& a) {
    const std::size_t n1 = a.n1(), n2 = a.n2(), n3 = a.n3();
    guard(n1, n2, "t_svd_ref");
    const std::size_t p = std::min(n1, n2);

    ComplexTensor3 ahat = dft_mode3(a);
    ComplexTensor3 uhat(n1, p, n3), shat(p, p, n3), vhat(n2, p, n3);
    for (std::size_t s = 0; s < fourier_half_count(n3); ++s) {
        Svd svd = jacobi_svd(fourier_slice(ahat, s));
        set_fourier_slice(uhat, s, svd.u);
        ComplexMatrix sm(p, p);
        for (std::size_t i = 0; i < p; ++i) sm(i, i) = svd.s[i];
        set_fourier_slice(shat, s, sm);
        set_fourier_slice(vhat, s, svd.v);
    }
    conjugate_fill(uhat);
    conjugate_fill(shat);
    conjugate_fill(vhat);

    TsvdFactors out;
    out.u = idft_mode3(uhat);
    out.s = idft_mode3(shat);
    out.v = idft_mode3(vhat);
    return out;
}

std::size_t tubal_rank(const RealTensor3& a, double tol) {
    TsvdFactors f = t_svd_ref(a);
    ComplexTensor3 shat = dft_mode3(f.s);
    const std::size_t p = shat.n1();
    double global = 0.0;
    std::vector<double> tube_max(p, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t t = 0; t < shat.n3(); ++t)
            tube_max[i] = std::max(tube_max[i], std::abs(shat(i, i, t)));
        global = std::max(global, tube_max[i]);
    }
    std::size_t rank = 0;
    for (std::size_t i = 0; i < p; ++i)
        if (tube_max[i] > tol * global && tube_max[i] > 0.0) ++rank;
    return rank;
}

double nuclear_norm_tensor(const RealTensor3& a) {
    const std::size_t n3 = a.n3();
    guard(a.n1(), a.n2(), "nuclear_norm_tensor");
    ComplexTensor3 ahat = dft_mode3(a);
    double total = 0.0;
    for (std::size_t s = 0; s < fourier_half_count(n3); ++s) {
        Svd svd = jacobi_svd(fourier_slice(ahat, s));
        double sum = 0.0;
        for (double sv : svd.s) sum += sv;
        const bool self_paired = (s == 0) || (2 * s == n3);
        total += (self_paired ? 1.0 : 2.0) * sum;
    }
    return total / static_cast<double>(n3);
}

namespace {

void check(VerifyResult& vr, bool ok, const std::string& what, double value, double limit) {
    ++vr.checks;
    std::ostringstream os;
    os << (ok ? "ok  " : "FAIL") << "  " << what << "  (" << value << " vs limit " << limit
       << ")";
    vr.log.push_back(os.str());
    if (!ok) ++vr.failures;
}

double rel_residual(const RealTensor3& x, const RealTensor3& ref) {
    const double denom = std::max(frobenius_norm(ref), 1e-30);
    return frobenius_norm(subtract(x, ref)) / denom;
}

}  // namespace

VerifyResult run_verification() {
    VerifyResult vr;
    const std::uint64_t seed = 0x5eedULL;

    struct Dims {
        std::size_t n1, n2, n3;
    };
    const Dims cases[] = {{3, 4, 2}, {4, 3, 5}, {5, 5, 4}, {2, 6, 7}, {6, 2, 1}, {2, 2, 37}};

    std::size_t tag = 0;
    for (const Dims& d : cases) {
        RealTensor3 a = randn_tensor(d.n1, d.n2, d.n3, seed + tag++);

        // DFT against the quadratic reference, and the inverse round trip.
        ComplexTensor3 fast = dft_mode3(a);
        ComplexTensor3 slow = dft_mode3_naive(a);
        double derr = 0.0;
        for (std::size_t t = 0; t < fast.size(); ++t)
            derr = std::max(derr, std::abs(fast.data()[t] - slow.data()[t]));
        check(vr, derr <= 1e-11, "dft_mode3 matches quadratic DFT", derr, 1e-11);

        const double rt = rel_residual(idft_mode3(fast), a);
        check(vr, rt <= 1e-12, "idft(dft(x)) round trip", rt, 1e-12);

        // Norm identities through the Fourier block diagonal.
        const double lhs = frobenius_norm(a);
        const double rhs = frobenius_norm(bdiag(fast)) / std::sqrt(static_cast<double>(d.n3));
        check(vr, std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, lhs),
              "Frobenius norm via block diagonal", std::abs(lhs - rhs), 1e-10);

        // t-product against the block-circulant construction.
        RealTensor3 b = randn_tensor(d.n2, 3, d.n3, seed + 100 + tag);
        const double terr = rel_residual(t_product(a, b), t_product_naive(a, b));
        check(vr, terr <= 1e-11, "t_product matches bcirc/unfold/fold", terr, 1e-11);

        // t-QR contract.
        TqrPair qr = t_qr(a);
        const double qerr = rel_residual(t_product(qr.q, qr.r), a);
        check(vr, qerr <= 1e-9, "t_qr reconstruction", qerr, 1e-9);
        RealTensor3 gram = t_product(conj_transpose(qr.q), qr.q);
        const double oerr =
            frobenius_norm(subtract(gram, identity_tensor(gram.n1(), d.n3)));
        check(vr, oerr <= 1e-8, "t_qr orthogonality", oerr, 1e-8);
    }

    // Jacobi SVD reconstruction on a random complex matrix.
    {
        ComplexMatrix m(6, 4);
        for (std::size_t t = 0; t < 24; ++t)
            m.data()[t] = cd{counter_normal(seed + 7, 2 * t), counter_normal(seed + 7, 2 * t + 1)};
        Svd svd = jacobi_svd(m);
        ComplexMatrix sd(4, 4);
        for (std::size_t i = 0; i < 4; ++i) sd(i, i) = svd.s[i];
        ComplexMatrix rec = multiply(svd.u, multiply(sd, adjoint(svd.v)));
        const double err = frobenius_norm(subtract(rec, m)) / frobenius_norm(m);
        check(vr, err <= 1e-11, "jacobi_svd reconstruction", err, 1e-11);
    }

    // CTSVD-QR against the reference t-SVD on an exact-tubal-rank input.
    {
        RealTensor3 x = synth_lowrank({12, 12, 3, 5, seed + 9});
        FactorTriple f = ctsvd_qr(x, 5, 60);
        RealTensor3 rec = t_product(t_product(f.l, f.d), f.r);
        const double err = rel_residual(rec, x);
        check(vr, err <= 1e-8, "ctsvd_qr reconstruction at exact rank", err, 1e-8);

        const std::size_t rk = tubal_rank(x, 1e-8);
        check(vr, rk == 5, "tubal_rank of synthetic construction", static_cast<double>(rk), 5.0);
    }

    return vr;
}

}  // namespace tubal::oracle
