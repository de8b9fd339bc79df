#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tubal/matrix.hpp"
#include "tubal/tensor.hpp"

// Slow, obviously-correct reference implementations. Everything here
// exists to cross-check the fast paths; sizes are capped and nothing
// is tuned for speed.
namespace tubal::oracle {

/// Deliberate size cap (min dimension) for the dense references.
inline constexpr std::size_t kSizeGuard = 128;

/// Dense real matrix assembled from n1 x n2 blocks of an n3-deep
/// tensor; column-major.
struct BlockMatrix {
    std::size_t rows = 0, cols = 0;
    std::size_t n1 = 0, n2 = 0, n3 = 0;
    std::vector<double> data;

    double& at(std::size_t i, std::size_t j) { return data[j * rows + i]; }
    double at(std::size_t i, std::size_t j) const { return data[j * rows + i]; }
};

/// Block circulant matrix: first block column is the frontal slices in
/// order, each next block column a downward cyclic shift.
BlockMatrix bcirc(const RealTensor3& a);

/// Frontal slices stacked vertically (n1*n3 x n2).
BlockMatrix unfold(const RealTensor3& a);

/// Inverse of unfold; ShapeError when the block metadata disagrees
/// with the matrix size.
RealTensor3 fold(const BlockMatrix& u);

/// Literal fold(bcirc(a) . unfold(b)); ground truth for t_product.
RealTensor3 t_product_naive(const RealTensor3& a, const RealTensor3& b);

/// O(n3^2) tube-wise DFT; ground truth for dft_mode3.
ComplexTensor3 dft_mode3_naive(const RealTensor3& a);

/// Block diagonal matrix of the frontal slices of a Fourier-domain
/// tensor (n1*n3 x n2*n3).
ComplexMatrix bdiag(const ComplexTensor3& a);

/// One-sided Jacobi SVD to machine precision; s sorted descending.
/// Economy shapes: u is m x p, v is n x p, p = min(m, n).
struct Svd {
    ComplexMatrix u;
    std::vector<double> s;
    ComplexMatrix v;
};

Svd jacobi_svd(const ComplexMatrix& a);

/// Reference t-SVD via per-Fourier-slice jacobi_svd: a = u * s * v^*
/// with f-diagonal s. Economy shapes as in Svd.
struct TsvdFactors {
    RealTensor3 u;  // n1 x p x n3
    RealTensor3 s;  // p x p x n3
    RealTensor3 v;  // n2 x p x n3
};

TsvdFactors t_svd_ref(const RealTensor3& a);

/// Number of singular tubes whose largest Fourier-domain magnitude
/// exceeds tol times the overall largest singular value.
std::size_t tubal_rank(const RealTensor3& a, double tol);

/// (1/n3) times the sum of all Fourier-slice singular values.
double nuclear_norm_tensor(const RealTensor3& a);

struct VerifyResult {
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::vector<std::string> log;
};

/// Cross-checks the fast implementations against the references on a
/// fixed set of random instances.
VerifyResult run_verification();

}  // namespace tubal::oracle
