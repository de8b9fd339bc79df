#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>

#include "tubal/algebra.hpp"
#include "tubal/matrix.hpp"
#include "tubal/synth.hpp"
#include "tubal/tensor.hpp"

namespace testutil {

inline double rel_err(const tubal::RealTensor3& x, const tubal::RealTensor3& ref) {
    const double denom = std::max(tubal::frobenius_norm(ref), 1e-300);
    return tubal::frobenius_norm(tubal::subtract(x, ref)) / denom;
}

inline double max_abs_diff(const tubal::RealTensor3& a, const tubal::RealTensor3& b) {
    double m = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t)
        m = std::max(m, std::abs(a.data()[t] - b.data()[t]));
    return m;
}

inline double max_abs_diff(const tubal::ComplexTensor3& a, const tubal::ComplexTensor3& b) {
    double m = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t)
        m = std::max(m, std::abs(a.data()[t] - b.data()[t]));
    return m;
}

inline tubal::ComplexMatrix randn_matrix(std::size_t rows, std::size_t cols,
                                         std::uint64_t seed) {
    tubal::ComplexMatrix m(rows, cols);
    for (std::size_t t = 0; t < rows * cols; ++t)
        m.data()[t] = {tubal::counter_normal(seed, 2 * t),
                       tubal::counter_normal(seed, 2 * t + 1)};
    return m;
}

inline double orthonormality_residual(const tubal::ComplexMatrix& q) {
    using tubal::adjoint;
    using tubal::multiply;
    tubal::ComplexMatrix gram = multiply(adjoint(q), q);
    return tubal::frobenius_norm(
        tubal::subtract(gram, tubal::ComplexMatrix::identity(q.cols())));
}

/// Partial-orthogonality residual ||q^* * q - identity||_F for tensors.
inline double t_orthonormality_residual(const tubal::RealTensor3& q) {
    tubal::RealTensor3 gram = tubal::t_product(tubal::conj_transpose(q), q);
    return tubal::frobenius_norm(
        tubal::subtract(gram, tubal::identity_tensor(q.n2(), q.n3())));
}

}  // namespace testutil
