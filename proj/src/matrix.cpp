#include "tubal/matrix.hpp"

#include <cmath>

namespace tubal {

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw ShapeError("multiply: inner dimension mismatch");
    ComplexMatrix c(a.rows(), b.cols());
    const std::size_t m = a.rows(), n = a.cols(), l = b.cols();
    for (std::size_t j = 0; j < l; ++j) {
        std::complex<double>* cc = c.col(j);
        for (std::size_t k = 0; k < n; ++k) {
            const std::complex<double> w = b(k, j);
            const std::complex<double>* ac = a.col(k);
            for (std::size_t i = 0; i < m; ++i) cc[i] += ac[i] * w;
        }
    }
    return c;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) out(j, i) = std::conj(a(i, j));
    return out;
}

ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError("subtract: shape mismatch");
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t t = 0; t < a.rows() * a.cols(); ++t)
        out.data()[t] = a.data()[t] - b.data()[t];
    return out;
}

double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t t = 0; t < a.rows() * a.cols(); ++t) s += std::norm(a.data()[t]);
    return std::sqrt(s);
}

bool all_finite(const ComplexMatrix& a) {
    for (std::size_t t = 0; t < a.rows() * a.cols(); ++t) {
        if (!std::isfinite(a.data()[t].real()) || !std::isfinite(a.data()[t].imag()))
            return false;
    }
    return true;
}

}  // namespace tubal
