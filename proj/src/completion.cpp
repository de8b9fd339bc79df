#include "tubal/completion.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "tubal/algebra.hpp"

namespace tubal {

namespace {

RealTensor3 blend_on_mask(const RealTensor3& ldr, const RealTensor3& m,
                          const ObservationMask& omega) {
    RealTensor3 out = ldr;
    const std::uint8_t* mk = omega.data();
    for (std::size_t t = 0; t < out.size(); ++t)
        if (mk[t]) out.data()[t] = m.data()[t];
    return out;
}

}  // namespace

FactorUpdate update_factors(const RealTensor3& x_c, const RealTensor3& r_k) {
    if (r_k.n2() != x_c.n2() || r_k.n3() != x_c.n3() || r_k.n1() > std::min(x_c.n1(), x_c.n2()))
        throw ShapeError("update_factors: factor shape mismatch");
    FactorUpdate out;
    out.l = t_qr(t_product(x_c, conj_transpose(r_k))).q;
    TqrPair second = t_qr(t_product(conj_transpose(x_c), out.l));
    out.r = conj_transpose(second.q);
    out.d_t = conj_transpose(second.r);
    return out;
}

RealTensor3 shrink_d(const RealTensor3& d_t, double mu) {
    if (!(mu > 0.0)) throw ConfigError("shrink_d: mu must be positive");
    const std::size_t n1 = d_t.n1(), n2 = d_t.n2(), n3 = d_t.n3();
    ComplexTensor3 dhat = dft_mode3(d_t);
    const double thresh = 1.0 / mu;
    for (std::size_t s = 0; s < fourier_half_count(n3); ++s) {
        auto sl = dhat.slice(s);
        for (std::size_t j = 0; j < n2; ++j) {
            std::complex<double>* col = sl.data() + j * n1;
            double c = 0.0;
            for (std::size_t i = 0; i < n1; ++i) c += std::norm(col[i]);
            c = std::sqrt(c);
            const double scale = (c > thresh) ? (c - thresh) / c : 0.0;
            for (std::size_t i = 0; i < n1; ++i) col[i] *= scale;
        }
    }
    conjugate_fill(dhat);
    return idft_mode3(dhat);
}

RealTensor3 reassemble_x(const RealTensor3& l, const RealTensor3& d, const RealTensor3& r,
                         const RealTensor3& m, const ObservationMask& omega) {
    if (l.n1() != m.n1() || r.n2() != m.n2() || l.n3() != m.n3() || !omega.matches(m))
        throw ShapeError("reassemble_x: shape mismatch");
    RealTensor3 ldr = t_product(t_product(l, d), r);
    return blend_on_mask(ldr, m, omega);
}

DualStep dual_step(const RealTensor3& y, double mu, const RealTensor3& x,
                   const RealTensor3& ldr, double rho) {
    if (!y.same_shape(x) || !y.same_shape(ldr)) throw ShapeError("dual_step: shape mismatch");
    DualStep out;
    out.y = RealTensor3(y.n1(), y.n2(), y.n3());
    for (std::size_t t = 0; t < y.size(); ++t)
        out.y.data()[t] = y.data()[t] + mu * (x.data()[t] - ldr.data()[t]);
    out.mu = rho * mu;
    return out;
}

double rmse(const RealTensor3& x, const RealTensor3& y) {
    if (!x.same_shape(y)) throw ShapeError("rmse: shape mismatch");
    double sq = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t) {
        const double d = x.data()[t] - y.data()[t];
        sq += d * d;
    }
    return std::sqrt(sq / static_cast<double>(x.size()));
}

CompletionReport tlnm_tqr(const RealTensor3& m, const ObservationMask& omega,
                          const CompletionConfig& cfg, const RealTensor3* truth,
                          const IterationObserver& observer) {
    const std::size_t n1 = m.n1(), n2 = m.n2(), n3 = m.n3();
    if (!omega.matches(m)) throw ShapeError("tlnm_tqr: mask shape mismatch");
    if (omega.observed_count() == 0) throw EmptyMaskError("tlnm_tqr: empty observation mask");
    if (cfg.rank < 1 || cfg.rank > std::min(n1, n2))
        throw ConfigError("tlnm_tqr: rank out of range");
    if (!(cfg.mu0 > 0.0)) throw ConfigError("tlnm_tqr: mu must be positive");
    if (!(cfg.rho >= 1.0)) throw ConfigError("tlnm_tqr: rho must be >= 1");
    if (cfg.eps && !(*cfg.eps > 0.0)) throw ConfigError("tlnm_tqr: eps must be positive");
    if (cfg.max_iters < 1) throw ConfigError("tlnm_tqr: max_iters must be >= 1");
    if (truth && !truth->same_shape(m)) throw ShapeError("tlnm_tqr: truth shape mismatch");
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j)
            for (std::size_t k = 0; k < n3; ++k)
                if (omega.observed(i, j, k) && !std::isfinite(m(i, j, k)))
                    throw NumericalError("tlnm_tqr: non-finite observed entry");

    const double eps = cfg.eps ? *cfg.eps : 1e-7 * static_cast<double>(n1 * n2 * n3);
    const std::size_t r = cfg.rank;
    // With every entry observed the projection step fixes x completely;
    // no later iteration can change it.
    const bool fully_observed = omega.observed_count() == omega.size();

    RealTensor3 x = mask_project(m, omega);
    RealTensor3 y(n1, n2, n3);
    RealTensor3 rr = identity_tensor_rect(r, n2, n3);
    double mu = cfg.mu0;

    CompletionReport report;
    const auto t0 = std::chrono::steady_clock::now();

    for (std::size_t k = 0; k < cfg.max_iters; ++k) {
        // X_c = X + Y/mu
        RealTensor3 x_c(n1, n2, n3);
        const double inv_mu = 1.0 / mu;
        for (std::size_t t = 0; t < x.size(); ++t)
            x_c.data()[t] = x.data()[t] + y.data()[t] * inv_mu;

        FactorUpdate f = update_factors(x_c, rr);
        rr = f.r;
        RealTensor3 d = shrink_d(f.d_t, mu);

        RealTensor3 ldr = t_product(t_product(f.l, d), rr);
        RealTensor3 x_next = blend_on_mask(ldr, m, omega);

        DualStep ds = dual_step(y, mu, x_next, ldr, cfg.rho);
        y = std::move(ds.y);
        const double mu_used = mu;
        mu = ds.mu;

        double residual = 0.0;
        for (std::size_t t = 0; t < x.size(); ++t) {
            const double dv = ldr.data()[t] - x_next.data()[t];
            residual += dv * dv;
        }

        x = std::move(x_next);

        CompletionTraceRow row;
        row.iter = k + 1;
        row.residual = residual;
        row.mu = mu_used;
        if (truth) row.rmse = rmse(x, *truth);
        row.elapsed_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
        report.trace.push_back(row);
        if (observer) observer(row);

        if (residual < eps || fully_observed) {
            report.converged = true;
            break;
        }
    }

    report.x = std::move(x);
    report.iterations = report.trace.size();
    return report;
}

}  // namespace tubal
