#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "tubal/errors.hpp"

namespace tubal {

/// Dense column-major complex matrix, double precision.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n) { return identity_rect(n, n); }
    static ComplexMatrix identity_rect(std::size_t rows, std::size_t cols) {
        ComplexMatrix m(rows, cols);
        const std::size_t p = rows < cols ? rows : cols;
        for (std::size_t i = 0; i < p; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::complex<double>& operator()(std::size_t i, std::size_t j) {
        return data_[j * rows_ + i];
    }
    std::complex<double> operator()(std::size_t i, std::size_t j) const {
        return data_[j * rows_ + i];
    }

    std::complex<double>* data() { return data_.data(); }
    const std::complex<double>* data() const { return data_.data(); }

    std::complex<double>* col(std::size_t j) { return data_.data() + j * rows_; }
    const std::complex<double>* col(std::size_t j) const { return data_.data() + j * rows_; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::complex<double>> data_;
};

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm(const ComplexMatrix& a);
bool all_finite(const ComplexMatrix& a);

}  // namespace tubal
