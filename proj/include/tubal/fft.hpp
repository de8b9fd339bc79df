#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace tubal {

/// Complex DFT plan for one fixed length.
///
/// Forward is the unnormalized transform (w = exp(-2*pi*i/n)); the
/// inverse carries the 1/n factor. Lengths whose prime factors are all
/// <= 31 run through a mixed-radix Cooley-Tukey recursion; anything
/// with a larger prime factor runs through the Bluestein chirp
/// transform on a power-of-two convolution. Plans are immutable after
/// construction and safe to share across threads.
class DftPlan {
public:
    explicit DftPlan(std::size_t n);

    std::size_t size() const { return n_; }

    /// In-place transform of a contiguous length-n buffer.
    void forward(std::complex<double>* data) const;
    /// In-place inverse (conjugate transform scaled by 1/n).
    void inverse(std::complex<double>* data) const;

private:
    void dispatch(const std::complex<double>* in, std::complex<double>* out) const;
    void recurse(const std::complex<double>* in, std::size_t stride,
                 std::complex<double>* out, std::size_t n) const;
    void bluestein(const std::complex<double>* in, std::complex<double>* out) const;

    std::size_t n_ = 1;
    std::vector<std::complex<double>> roots_;  // w^t, t = 0..n-1
    bool smooth_ = true;

    // Bluestein state, populated only when a prime factor exceeds 31.
    std::unique_ptr<DftPlan> conv_plan_;
    std::vector<std::complex<double>> chirp_;      // exp(-i*pi*j^2/n)
    std::vector<std::complex<double>> chirp_hat_;  // transform of padded conj chirp
};

}  // namespace tubal
