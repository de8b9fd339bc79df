#pragma once

#include <cstddef>
#include <vector>

#include "tubal/matrix.hpp"
#include "tubal/tensor.hpp"

namespace tubal {

/// Economy QR factors: q has orthonormal columns, r is upper
/// triangular with nonnegative real diagonal (the gauge fixed by
/// column sign normalization).
struct QRPair {
    ComplexMatrix q;  // m x p
    ComplexMatrix r;  // p x n
};

/// Householder economy QR of a tall (m >= n) matrix.
/// Throws ShapeError for wide inputs, NumericalError on NaN/Inf.
QRPair economy_qr(const ComplexMatrix& a);

/// Householder QR for any shape, p = min(m, n); r is upper trapezoid.
/// Same sign convention as economy_qr.
QRPair householder_qr(const ComplexMatrix& a);

/// Tri-factorization A ~ L D R computed by alternating QR passes:
/// L <- Q of qr(A R*), then [Qr, T] = qr(A* L) gives R = Qr*, D = T*.
/// L has orthonormal columns, R orthonormal rows, D converges to the
/// diagonal matrix of the leading `rank` singular values.
struct CsvdFactors {
    ComplexMatrix l;  // m x rank
    ComplexMatrix d;  // rank x rank
    ComplexMatrix r;  // rank x n, orthonormal rows
};

CsvdFactors csvd_qr(const ComplexMatrix& a, std::size_t rank, std::size_t iters);

/// Tensor QR: a = q * r with q^* * q = identity and every Fourier
/// slice of r upper triangular. p = min(n1, n2).
struct TqrPair {
    RealTensor3 q;  // n1 x p x n3
    RealTensor3 r;  // p x n2 x n3
};

TqrPair t_qr(const RealTensor3& a);

/// Result of the QR-based approximate tensor SVD: a ~ l * d * r with
/// partially orthogonal l, r and d converging to the f-diagonal tensor
/// of singular tubes.
struct FactorTriple {
    RealTensor3 l;  // n1 x rank x n3
    RealTensor3 d;  // rank x rank x n3
    RealTensor3 r;  // rank x n2 x n3
    std::size_t rank = 0;
    std::size_t iterations = 0;  // iterations actually run (early exit may stop short)
};

struct DecomposeTraceRow {
    std::size_t iter = 0;    // 1-based
    double rmse = 0.0;       // reconstruction RMSE at this iteration
    double elapsed_ms = 0.0; // cumulative
};

/// Approximate t-SVD via per-Fourier-slice csvd_qr on the leading
/// floor(n3/2)+1 slices with conjugate fill for the rest. When trace
/// is non-null a per-iteration reconstruction RMSE record is appended.
FactorTriple ctsvd_qr(const RealTensor3& a, std::size_t rank, std::size_t iters,
                      std::vector<DecomposeTraceRow>* trace = nullptr);

/// Default iteration budget used when callers do not specify one.
inline constexpr std::size_t kDefaultCtsvdIters = 30;

}  // namespace tubal
