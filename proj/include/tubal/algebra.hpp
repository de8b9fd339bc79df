#pragma once

#include "tubal/matrix.hpp"
#include "tubal/tensor.hpp"

namespace tubal {

/// Unnormalized DFT of every tube a(i, j, :).
ComplexTensor3 dft_mode3(const RealTensor3& a);

/// Inverse of dft_mode3 (1/n3 scaling per tube). The imaginary residue
/// of each reconstructed entry is discarded when it is at most 1e-10,
/// discarded with a stderr warning up to 1e-8, and raises SymmetryError
/// beyond that -- residue that large means the caller broke the
/// conjugate symmetry of the Fourier-domain tensor.
///
/// When max_imag_residue is non-null it receives the largest absolute
/// imaginary part seen before discarding.
RealTensor3 idft_mode3(const ComplexTensor3& a, double* max_imag_residue = nullptr);

/// t-product a * b: slice-wise matrix products in the Fourier domain.
/// Equals fold(bcirc(a) . unfold(b)).
RealTensor3 t_product(const RealTensor3& a, const RealTensor3& b);

/// Fourier-domain t-product: per-slice matrix products of two
/// conjugate-symmetric tensors. Slices 0..floor(n3/2) are multiplied
/// directly, the rest are conjugate-filled.
ComplexTensor3 t_product_hat(const ComplexTensor3& a, const ComplexTensor3& b);

/// Tensor conjugate transpose: slice 0 transposed, slice s of the
/// output is the transpose of slice n3-s of the input for s >= 1.
RealTensor3 conj_transpose(const RealTensor3& a);

double frobenius_norm(const RealTensor3& a);
double frobenius_norm(const ComplexTensor3& a);

double inner_product(const RealTensor3& a, const RealTensor3& b);

/// Tensor L2,1 norm: sum over lateral slices j of ||a(:, j, :)||_F.
double l21_norm(const RealTensor3& a);

/// Identity tensor: n x n identity as slice 0, zero elsewhere.
RealTensor3 identity_tensor(std::size_t n, std::size_t n3);

/// Rectangular variant: the leading m x n identity block as slice 0.
RealTensor3 identity_tensor_rect(std::size_t m, std::size_t n, std::size_t n3);

/// Keeps entries on the mask, zeroes the rest. Idempotent.
RealTensor3 mask_project(const RealTensor3& a, const ObservationMask& omega);

/// Number of leading conjugate-independent Fourier slices,
/// floor(n3/2) + 1. Slices beyond this are conjugate mirrors.
inline std::size_t fourier_half_count(std::size_t n3) { return n3 / 2 + 1; }

/// Frontal slice s of a Fourier-domain tensor as a matrix.
ComplexMatrix fourier_slice(const ComplexTensor3& a, std::size_t s);

/// Writes a matrix into frontal slice s.
void set_fourier_slice(ComplexTensor3& a, std::size_t s, const ComplexMatrix& m);

/// Fills slices floor(n3/2)+1 .. n3-1 with the conjugates of their
/// mirror slices, restoring exact conjugate symmetry.
void conjugate_fill(ComplexTensor3& a);

}  // namespace tubal
