#include "tubal/algebra.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "tubal/fft.hpp"

namespace tubal {

namespace {

using cd = std::complex<double>;

constexpr double kImagDiscard = 1e-10;
constexpr double kImagError = 1e-8;

// Column-major complex GEMM for one frontal slice, fixed (j, k, i)
// loop order so the summation order is always the same.
void slice_multiply(const ComplexTensor3& a, const ComplexTensor3& b, ComplexTensor3& c,
                    std::size_t s) {
    const std::size_t n1 = a.n1(), n2 = a.n2(), l = b.n2();
    const cd* as = a.slice(s).data();
    const cd* bs = b.slice(s).data();
    cd* cs = c.slice(s).data();
    for (std::size_t j = 0; j < l; ++j) {
        cd* ccol = cs + j * n1;
        for (std::size_t k = 0; k < n2; ++k) {
            const cd w = bs[j * n2 + k];
            const cd* acol = as + k * n1;
            for (std::size_t i = 0; i < n1; ++i) ccol[i] += acol[i] * w;
        }
    }
}

}  // namespace

ComplexTensor3 dft_mode3(const RealTensor3& a) {
    const std::size_t n1 = a.n1(), n2 = a.n2(), n3 = a.n3();
    ComplexTensor3 out(n1, n2, n3);
    DftPlan plan(n3);
    const std::size_t tube_stride = n1 * n2;
    std::vector<cd> buf(n3);
    for (std::size_t j = 0; j < n2; ++j) {
        for (std::size_t i = 0; i < n1; ++i) {
            const double* src = a.data() + j * n1 + i;
            for (std::size_t k = 0; k < n3; ++k) buf[k] = cd{src[k * tube_stride], 0.0};
            plan.forward(buf.data());
            cd* dst = out.data() + j * n1 + i;
            for (std::size_t k = 0; k < n3; ++k) dst[k * tube_stride] = buf[k];
        }
    }
    return out;
}

RealTensor3 idft_mode3(const ComplexTensor3& a, double* max_imag_residue) {
    const std::size_t n1 = a.n1(), n2 = a.n2(), n3 = a.n3();
    RealTensor3 out(n1, n2, n3);
    DftPlan plan(n3);
    const std::size_t tube_stride = n1 * n2;
    std::vector<cd> buf(n3);
    double max_imag = 0.0;
    for (std::size_t j = 0; j < n2; ++j) {
        for (std::size_t i = 0; i < n1; ++i) {
            const cd* src = a.data() + j * n1 + i;
            for (std::size_t k = 0; k < n3; ++k) buf[k] = src[k * tube_stride];
            plan.inverse(buf.data());
            double* dst = out.data() + j * n1 + i;
            for (std::size_t k = 0; k < n3; ++k) {
                const double im = std::abs(buf[k].imag());
                if (im > max_imag) max_imag = im;
                dst[k * tube_stride] = buf[k].real();
            }
        }
    }
    if (max_imag_residue) *max_imag_residue = max_imag;
    if (max_imag > kImagError) {
        char msg[128];
        std::snprintf(msg, sizeof msg,
                      "idft_mode3: imaginary residue %.3e exceeds 1e-8; Fourier-domain "
                      "input lost conjugate symmetry",
                      max_imag);
        throw SymmetryError(msg);
    }
    if (max_imag > kImagDiscard) {
        std::fprintf(stderr,
                     "tubal: idft_mode3 discarding imaginary residue %.3e (above 1e-10)\n",
                     max_imag);
    }
    return out;
}

ComplexTensor3 t_product_hat(const ComplexTensor3& a, const ComplexTensor3& b) {
    if (a.n2() != b.n1() || a.n3() != b.n3())
        throw ShapeError("t_product: inner dimension or depth mismatch");
    const std::size_t n3 = a.n3();
    ComplexTensor3 c(a.n1(), b.n2(), n3);
    const std::size_t half = fourier_half_count(n3);
    for (std::size_t s = 0; s < half; ++s) slice_multiply(a, b, c, s);
    for (std::size_t s = half; s < n3; ++s) {
        const std::size_t src = n3 - s;
        auto from = c.slice(src);
        auto to = c.slice(s);
        for (std::size_t t = 0; t < to.size(); ++t) to[t] = std::conj(from[t]);
    }
    return c;
}

RealTensor3 t_product(const RealTensor3& a, const RealTensor3& b) {
    if (a.n2() != b.n1() || a.n3() != b.n3())
        throw ShapeError("t_product: inner dimension or depth mismatch");
    return idft_mode3(t_product_hat(dft_mode3(a), dft_mode3(b)));
}

RealTensor3 conj_transpose(const RealTensor3& a) {
    const std::size_t n1 = a.n1(), n2 = a.n2(), n3 = a.n3();
    RealTensor3 out(n2, n1, n3);
    for (std::size_t k = 0; k < n3; ++k) {
        const std::size_t src = (k == 0) ? 0 : n3 - k;
        for (std::size_t j = 0; j < n2; ++j)
            for (std::size_t i = 0; i < n1; ++i) out(j, i, k) = a(i, j, src);
    }
    return out;
}

double frobenius_norm(const RealTensor3& a) {
    double s = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t) s += a.data()[t] * a.data()[t];
    return std::sqrt(s);
}

double frobenius_norm(const ComplexTensor3& a) {
    double s = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t) s += std::norm(a.data()[t]);
    return std::sqrt(s);
}

double inner_product(const RealTensor3& a, const RealTensor3& b) {
    if (!a.same_shape(b)) throw ShapeError("inner_product: shape mismatch");
    double s = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t) s += a.data()[t] * b.data()[t];
    return s;
}

double l21_norm(const RealTensor3& a) {
    double total = 0.0;
    for (std::size_t j = 0; j < a.n2(); ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < a.n3(); ++k)
            for (std::size_t i = 0; i < a.n1(); ++i) s += a(i, j, k) * a(i, j, k);
        total += std::sqrt(s);
    }
    return total;
}

RealTensor3 identity_tensor(std::size_t n, std::size_t n3) {
    return identity_tensor_rect(n, n, n3);
}

RealTensor3 identity_tensor_rect(std::size_t m, std::size_t n, std::size_t n3) {
    RealTensor3 out(m, n, n3);
    const std::size_t p = m < n ? m : n;
    for (std::size_t i = 0; i < p; ++i) out(i, i, 0) = 1.0;
    return out;
}

RealTensor3 mask_project(const RealTensor3& a, const ObservationMask& omega) {
    if (!omega.matches(a)) throw ShapeError("mask_project: mask shape mismatch");
    RealTensor3 out(a.n1(), a.n2(), a.n3());
    const std::uint8_t* m = omega.data();
    for (std::size_t t = 0; t < a.size(); ++t) out.data()[t] = m[t] ? a.data()[t] : 0.0;
    return out;
}

ComplexMatrix fourier_slice(const ComplexTensor3& a, std::size_t s) {
    ComplexMatrix m(a.n1(), a.n2());
    auto src = a.slice(s);
    for (std::size_t t = 0; t < src.size(); ++t) m.data()[t] = src[t];
    return m;
}

void set_fourier_slice(ComplexTensor3& a, std::size_t s, const ComplexMatrix& m) {
    if (m.rows() != a.n1() || m.cols() != a.n2())
        throw ShapeError("set_fourier_slice: slice shape mismatch");
    auto dst = a.slice(s);
    for (std::size_t t = 0; t < dst.size(); ++t) dst[t] = m.data()[t];
}

void conjugate_fill(ComplexTensor3& a) {
    const std::size_t n3 = a.n3();
    for (std::size_t s = fourier_half_count(n3); s < n3; ++s) {
        auto from = a.slice(n3 - s);
        auto to = a.slice(s);
        for (std::size_t t = 0; t < to.size(); ++t) to[t] = std::conj(from[t]);
    }
}

}  // namespace tubal
