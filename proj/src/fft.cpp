#include "tubal/fft.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tubal {

namespace {

using cd = std::complex<double>;

constexpr std::size_t kMaxRadix = 31;

std::size_t smallest_factor(std::size_t n) {
    for (std::size_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return p;
    return n;
}

bool is_smooth(std::size_t n) {
    while (n > 1) {
        std::size_t p = smallest_factor(n);
        if (p > kMaxRadix) return false;
        n /= p;
    }
    return true;
}

}  // namespace

DftPlan::DftPlan(std::size_t n) : n_(n == 0 ? 1 : n) {
    roots_.resize(n_);
    for (std::size_t t = 0; t < n_; ++t) {
        double ang = -2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(n_);
        roots_[t] = std::polar(1.0, ang);
    }
    smooth_ = is_smooth(n_);
    if (!smooth_) {
        std::size_t m = 1;
        while (m < 2 * n_ - 1) m <<= 1;
        conv_plan_ = std::make_unique<DftPlan>(m);
        chirp_.resize(n_);
        const std::size_t period = 2 * n_;
        for (std::size_t j = 0; j < n_; ++j) {
            std::size_t sq = (j * j) % period;
            double ang = -std::numbers::pi * static_cast<double>(sq) / static_cast<double>(n_);
            chirp_[j] = std::polar(1.0, ang);
        }
        std::vector<cd> b(m, cd{0.0, 0.0});
        b[0] = std::conj(chirp_[0]);
        for (std::size_t j = 1; j < n_; ++j) {
            b[j] = std::conj(chirp_[j]);
            b[m - j] = std::conj(chirp_[j]);
        }
        conv_plan_->forward(b.data());
        chirp_hat_ = std::move(b);
    }
}

void DftPlan::forward(cd* data) const {
    if (n_ == 1) return;
    std::vector<cd> in(data, data + n_);
    dispatch(in.data(), data);
}

void DftPlan::inverse(cd* data) const {
    if (n_ == 1) return;
    for (std::size_t t = 0; t < n_; ++t) data[t] = std::conj(data[t]);
    forward(data);
    const double s = 1.0 / static_cast<double>(n_);
    for (std::size_t t = 0; t < n_; ++t) data[t] = std::conj(data[t]) * s;
}

void DftPlan::dispatch(const cd* in, cd* out) const {
    if (smooth_) {
        recurse(in, 1, out, n_);
    } else {
        bluestein(in, out);
    }
}

// Decimation-in-time over the smallest prime factor p of the current
// length n: p interleaved subsequences of length m = n/p are
// transformed recursively into contiguous blocks of `out`, then
// combined with twiddles w_n^{rk} read from the precomputed full-size
// root table (w_n = w_N^{N/n}).
void DftPlan::recurse(const cd* in, std::size_t stride, cd* out, std::size_t n) const {
    if (n == 1) {
        out[0] = in[0];
        return;
    }
    const std::size_t p = smallest_factor(n);
    const std::size_t m = n / p;
    for (std::size_t r = 0; r < p; ++r)
        recurse(in + r * stride, stride * p, out + r * m, m);

    const std::size_t root_step = n_ / n;
    std::array<cd, kMaxRadix> y;
    for (std::size_t k2 = 0; k2 < m; ++k2) {
        for (std::size_t r = 0; r < p; ++r) y[r] = out[r * m + k2];
        for (std::size_t q = 0; q < p; ++q) {
            const std::size_t k = q * m + k2;
            cd acc = y[0];
            for (std::size_t r = 1; r < p; ++r)
                acc += y[r] * roots_[((r * k) % n) * root_step];
            out[k] = acc;
        }
    }
}

void DftPlan::bluestein(const cd* in, cd* out) const {
    const std::size_t m = conv_plan_->size();
    std::vector<cd> a(m, cd{0.0, 0.0});
    for (std::size_t j = 0; j < n_; ++j) a[j] = in[j] * chirp_[j];
    conv_plan_->forward(a.data());
    for (std::size_t t = 0; t < m; ++t) a[t] *= chirp_hat_[t];
    conv_plan_->inverse(a.data());
    for (std::size_t k = 0; k < n_; ++k) out[k] = a[k] * chirp_[k];
}

}  // namespace tubal
