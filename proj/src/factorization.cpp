#include "tubal/factorization.hpp"

#include <chrono>
#include <cmath>
#include <vector>

#include "tubal/algebra.hpp"

namespace tubal {

namespace {

using cd = std::complex<double>;

// Stationarity threshold for the alternating QR iteration: stop once
// the D factor moves by less than this (relative to the operand norm)
// in one step.
constexpr double kCsvdStall = 1e-12;

struct Reflector {
    std::vector<cd> u;  // length m - k
    double coef = 0.0;  // 2 / ||u||^2
};

// Applies H = I - coef * u * u^H to column data of length u.size()
// starting at `v`.
void apply_reflector(const Reflector& h, cd* v) {
    cd z{0.0, 0.0};
    for (std::size_t t = 0; t < h.u.size(); ++t) z += std::conj(h.u[t]) * v[t];
    z *= h.coef;
    for (std::size_t t = 0; t < h.u.size(); ++t) v[t] -= z * h.u[t];
}

}  // namespace

QRPair householder_qr(const ComplexMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) throw ShapeError("householder_qr: empty matrix");
    if (!all_finite(a)) throw NumericalError("householder_qr: non-finite input");

    const std::size_t m = a.rows(), n = a.cols();
    const std::size_t p = m < n ? m : n;
    ComplexMatrix w = a;
    std::vector<Reflector> hs(p);

    for (std::size_t k = 0; k < p; ++k) {
        const std::size_t len = m - k;
        double normx = 0.0;
        for (std::size_t t = 0; t < len; ++t) normx += std::norm(w(k + t, k));
        normx = std::sqrt(normx);
        if (normx == 0.0) continue;  // zero column tail, nothing to reflect

        const cd alpha = w(k, k);
        const double aabs = std::abs(alpha);
        const cd phase = (aabs == 0.0) ? cd{1.0, 0.0} : alpha / aabs;
        const cd beta = -phase * normx;

        Reflector& h = hs[k];
        h.u.resize(len);
        h.u[0] = alpha - beta;
        for (std::size_t t = 1; t < len; ++t) h.u[t] = w(k + t, k);
        double sigma = 0.0;
        for (const cd& u : h.u) sigma += std::norm(u);
        h.coef = 2.0 / sigma;

        w(k, k) = beta;
        for (std::size_t t = 1; t < len; ++t) w(k + t, k) = 0.0;
        for (std::size_t c = k + 1; c < n; ++c) apply_reflector(h, &w(k, c));
    }

    QRPair out;
    out.r = ComplexMatrix(p, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < p && i <= j; ++i) out.r(i, j) = w(i, j);

    out.q = ComplexMatrix::identity_rect(m, p);
    for (std::size_t k = p; k-- > 0;) {
        if (hs[k].u.empty()) continue;
        for (std::size_t c = 0; c < p; ++c) apply_reflector(hs[k], &out.q(k, c));
    }

    // Gauge: make the diagonal of r real and nonnegative.
    for (std::size_t k = 0; k < p; ++k) {
        const cd d = out.r(k, k);
        const double dabs = std::abs(d);
        if (dabs == 0.0 || (d.imag() == 0.0 && d.real() >= 0.0)) continue;
        const cd ph = d / dabs;
        const cd phc = std::conj(ph);
        out.r(k, k) = dabs;
        for (std::size_t j = k + 1; j < n; ++j) out.r(k, j) *= phc;
        for (std::size_t i = 0; i < m; ++i) out.q(i, k) *= ph;
    }
    return out;
}

QRPair economy_qr(const ComplexMatrix& a) {
    if (a.rows() < a.cols())
        throw ShapeError("economy_qr: wide input (rows < cols) not accepted");
    return householder_qr(a);
}

namespace {

struct CsvdState {
    CsvdFactors f;
    double stall_tol = 0.0;
    bool done = false;

    CsvdState() = default;
    CsvdState(const ComplexMatrix& a, std::size_t rank) {
        f.l = ComplexMatrix::identity_rect(a.rows(), rank);
        f.d = ComplexMatrix::identity(rank);
        f.r = ComplexMatrix::identity_rect(rank, a.cols());
        const double anorm = frobenius_norm(a);
        stall_tol = kCsvdStall * (anorm > 1.0 ? anorm : 1.0);
    }

    void step(const ComplexMatrix& a) {
        ComplexMatrix d_prev = f.d;
        f.l = economy_qr(multiply(a, adjoint(f.r))).q;
        QRPair second = economy_qr(multiply(adjoint(a), f.l));
        f.r = adjoint(second.q);
        f.d = adjoint(second.r);
        if (frobenius_norm(subtract(f.d, d_prev)) <= stall_tol) done = true;
    }
};

void check_rank(std::size_t rank, std::size_t n1, std::size_t n2, std::size_t iters) {
    const std::size_t p = n1 < n2 ? n1 : n2;
    if (rank < 1 || rank > p) throw RankError("rank must be in [1, min(n1, n2)]");
    if (iters < 1) throw ConfigError("iteration count must be >= 1");
}

}  // namespace

CsvdFactors csvd_qr(const ComplexMatrix& a, std::size_t rank, std::size_t iters) {
    check_rank(rank, a.rows(), a.cols(), iters);
    CsvdState st(a, rank);
    for (std::size_t k = 0; k < iters && !st.done; ++k) st.step(a);
    return st.f;
}

TqrPair t_qr(const RealTensor3& a) {
    const std::size_t n1 = a.n1(), n2 = a.n2(), n3 = a.n3();
    const std::size_t p = n1 < n2 ? n1 : n2;
    ComplexTensor3 ahat = dft_mode3(a);
    ComplexTensor3 qhat(n1, p, n3), rhat(p, n2, n3);
    for (std::size_t s = 0; s < fourier_half_count(n3); ++s) {
        QRPair qr = householder_qr(fourier_slice(ahat, s));
        set_fourier_slice(qhat, s, qr.q);
        set_fourier_slice(rhat, s, qr.r);
    }
    conjugate_fill(qhat);
    conjugate_fill(rhat);
    return {idft_mode3(qhat), idft_mode3(rhat)};
}

FactorTriple ctsvd_qr(const RealTensor3& a, std::size_t rank, std::size_t iters,
                      std::vector<DecomposeTraceRow>* trace) {
    const std::size_t n1 = a.n1(), n2 = a.n2(), n3 = a.n3();
    check_rank(rank, n1, n2, iters);

    ComplexTensor3 ahat = dft_mode3(a);
    const std::size_t half = fourier_half_count(n3);
    std::vector<ComplexMatrix> slices(half);
    std::vector<CsvdState> states(half);
    for (std::size_t s = 0; s < half; ++s) {
        slices[s] = fourier_slice(ahat, s);
        states[s] = CsvdState(slices[s], rank);
    }

    const auto t0 = std::chrono::steady_clock::now();
    std::size_t iterations_run = 0;
    for (std::size_t k = 0; k < iters; ++k) {
        bool all_done = true;
        for (std::size_t s = 0; s < half; ++s) {
            if (!states[s].done) states[s].step(slices[s]);
            all_done = all_done && states[s].done;
        }
        if (trace) {
            // Fourier-slice residuals; mirrored slices contribute twice.
            double sq = 0.0;
            for (std::size_t s = 0; s < half; ++s) {
                const CsvdFactors& f = states[s].f;
                ComplexMatrix rec = multiply(f.l, multiply(f.d, f.r));
                const double res = frobenius_norm(subtract(rec, slices[s]));
                const bool self_paired = (s == 0) || (2 * s == n3);
                sq += (self_paired ? 1.0 : 2.0) * res * res;
            }
            const double real_sq = sq / static_cast<double>(n3);
            const double ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - t0)
                                  .count();
            trace->push_back({k + 1,
                              std::sqrt(real_sq / static_cast<double>(n1 * n2 * n3)), ms});
        }
        iterations_run = k + 1;
        if (all_done) break;
    }

    ComplexTensor3 lhat(n1, rank, n3), dhat(rank, rank, n3), rrhat(rank, n2, n3);
    for (std::size_t s = 0; s < half; ++s) {
        set_fourier_slice(lhat, s, states[s].f.l);
        set_fourier_slice(dhat, s, states[s].f.d);
        set_fourier_slice(rrhat, s, states[s].f.r);
    }
    conjugate_fill(lhat);
    conjugate_fill(dhat);
    conjugate_fill(rrhat);

    FactorTriple out;
    out.l = idft_mode3(lhat);
    out.d = idft_mode3(dhat);
    out.r = idft_mode3(rrhat);
    out.rank = rank;
    out.iterations = iterations_run;
    return out;
}

}  // namespace tubal
