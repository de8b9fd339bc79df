#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "tubal/factorization.hpp"
#include "tubal/tensor.hpp"

namespace tubal {

/// Solver configuration for tlnm_tqr.
struct CompletionConfig {
    std::size_t rank = 1;       // target tubal rank, <= min(n1, n2)
    double mu0 = 1e-2;          // initial penalty
    double rho = 1.5;           // penalty growth factor, >= 1
    std::optional<double> eps;  // residual tolerance on ||L*D*R - X||_F^2;
                                // defaults to 1e-7 * n1*n2*n3 when unset
    std::size_t max_iters = 100;
    std::uint64_t seed = 0;     // reserved for stochastic plumbing; the
                                // solver itself is deterministic
};

struct CompletionTraceRow {
    std::size_t iter = 0;        // 1-based
    double residual = 0.0;       // ||L*D*R - X||_F^2 after the iteration
    double mu = 0.0;             // penalty used during the iteration
    std::optional<double> rmse;  // vs ground truth when one was supplied
    double elapsed_ms = 0.0;     // cumulative
};

struct CompletionReport {
    RealTensor3 x;
    std::size_t iterations = 0;
    std::vector<CompletionTraceRow> trace;
    bool converged = false;
};

/// One factor refresh: l <- Q of t_qr(x_c * r_k^*), then the second
/// t-QR of x_c^* * l gives Q-factor q_r and R-factor tt, returned as
/// r = q_r^* and d_t = tt^* (so l^* * x_c = d_t * r and
/// x_c ~ l * d_t * r).
struct FactorUpdate {
    RealTensor3 l;    // n1 x r x n3
    RealTensor3 r;    // r x n2 x n3
    RealTensor3 d_t;  // r x r x n3
};

FactorUpdate update_factors(const RealTensor3& x_c, const RealTensor3& r_k);

/// Fourier-column soft threshold: every Fourier-domain column of d_t
/// is scaled by max(c - 1/mu, 0)/c where c is its Euclidean norm
/// (scale 0 when c = 0). The unique minimizer of the column-group
/// shrinkage objective (1/mu) * (1/n3) * sum of Fourier column norms
/// + 1/2 * ||D - d_t||_F^2.
RealTensor3 shrink_d(const RealTensor3& d_t, double mu);

/// l * d * r off the mask, exactly m on the mask.
RealTensor3 reassemble_x(const RealTensor3& l, const RealTensor3& d, const RealTensor3& r,
                         const RealTensor3& m, const ObservationMask& omega);

/// Dual ascent: y + mu*(x - ldr), with the penalty scaled by rho.
struct DualStep {
    RealTensor3 y;
    double mu = 0.0;
};

DualStep dual_step(const RealTensor3& y, double mu, const RealTensor3& x,
                   const RealTensor3& ldr, double rho);

/// Called after each iteration when installed; purely observational.
using IterationObserver = std::function<void(const CompletionTraceRow&)>;

/// Tensor completion by L2,1-norm minimization over the QR-based
/// tri-factorization, solved with ADMM (TLNM-TQR). Observed entries of
/// the result equal m exactly. `truth`, when given, only feeds the
/// per-iteration RMSE column of the trace.
CompletionReport tlnm_tqr(const RealTensor3& m, const ObservationMask& omega,
                          const CompletionConfig& cfg, const RealTensor3* truth = nullptr,
                          const IterationObserver& observer = {});

/// Root-mean-square error sqrt(||x - y||_F^2 / (n1*n2*n3)).
double rmse(const RealTensor3& x, const RealTensor3& y);

}  // namespace tubal
