#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tubal/errors.hpp"

namespace tubal {

/// Dense n1 x n2 x n3 real tensor, double precision.
///
/// Storage is frontal-slice-major with column-major slices: entry
/// (i, j, k) lives at data[(k*n2 + j)*n1 + i]. Frontal slices are
/// contiguous; tubes (i, j, :) are strided by n1*n2. Indices are
/// 0-based.
class RealTensor3 {
public:
    RealTensor3() = default;
    RealTensor3(std::size_t n1, std::size_t n2, std::size_t n3)
        : n1_(n1), n2_(n2), n3_(n3), data_(n1 * n2 * n3, 0.0) {}

    std::size_t n1() const { return n1_; }
    std::size_t n2() const { return n2_; }
    std::size_t n3() const { return n3_; }
    std::size_t size() const { return data_.size(); }

    double& operator()(std::size_t i, std::size_t j, std::size_t k) {
        return data_[(k * n2_ + j) * n1_ + i];
    }
    double operator()(std::size_t i, std::size_t j, std::size_t k) const {
        return data_[(k * n2_ + j) * n1_ + i];
    }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    /// Contiguous frontal slice k (column-major n1 x n2 matrix).
    std::span<double> slice(std::size_t k) {
        return {data_.data() + k * n1_ * n2_, n1_ * n2_};
    }
    std::span<const double> slice(std::size_t k) const {
        return {data_.data() + k * n1_ * n2_, n1_ * n2_};
    }

    bool same_shape(const RealTensor3& o) const {
        return n1_ == o.n1_ && n2_ == o.n2_ && n3_ == o.n3_;
    }

private:
    std::size_t n1_ = 0, n2_ = 0, n3_ = 0;
    std::vector<double> data_;
};

/// Fourier-domain counterpart of RealTensor3; same layout, complex
/// entries. When produced by dft_mode3 of a real tensor, slice 0 is
/// real and slice s is the conjugate of slice n3-s for s >= 1.
class ComplexTensor3 {
public:
    ComplexTensor3() = default;
    ComplexTensor3(std::size_t n1, std::size_t n2, std::size_t n3)
        : n1_(n1), n2_(n2), n3_(n3), data_(n1 * n2 * n3) {}

    std::size_t n1() const { return n1_; }
    std::size_t n2() const { return n2_; }
    std::size_t n3() const { return n3_; }
    std::size_t size() const { return data_.size(); }

    std::complex<double>& operator()(std::size_t i, std::size_t j, std::size_t k) {
        return data_[(k * n2_ + j) * n1_ + i];
    }
    std::complex<double> operator()(std::size_t i, std::size_t j, std::size_t k) const {
        return data_[(k * n2_ + j) * n1_ + i];
    }

    std::complex<double>* data() { return data_.data(); }
    const std::complex<double>* data() const { return data_.data(); }

    std::span<std::complex<double>> slice(std::size_t k) {
        return {data_.data() + k * n1_ * n2_, n1_ * n2_};
    }
    std::span<const std::complex<double>> slice(std::size_t k) const {
        return {data_.data() + k * n1_ * n2_, n1_ * n2_};
    }

    bool same_shape(const ComplexTensor3& o) const {
        return n1_ == o.n1_ && n2_ == o.n2_ && n3_ == o.n3_;
    }

private:
    std::size_t n1_ = 0, n2_ = 0, n3_ = 0;
    std::vector<std::complex<double>> data_;
};

/// Set of observed entry positions; one byte per entry, same layout as
/// RealTensor3.
class ObservationMask {
public:
    ObservationMask() = default;
    ObservationMask(std::size_t n1, std::size_t n2, std::size_t n3)
        : n1_(n1), n2_(n2), n3_(n3), data_(n1 * n2 * n3, 0) {}

    std::size_t n1() const { return n1_; }
    std::size_t n2() const { return n2_; }
    std::size_t n3() const { return n3_; }
    std::size_t size() const { return data_.size(); }

    bool observed(std::size_t i, std::size_t j, std::size_t k) const {
        return data_[(k * n2_ + j) * n1_ + i] != 0;
    }
    void set(std::size_t i, std::size_t j, std::size_t k, bool v) {
        data_[(k * n2_ + j) * n1_ + i] = v ? 1 : 0;
    }

    std::uint8_t* data() { return data_.data(); }
    const std::uint8_t* data() const { return data_.data(); }

    std::size_t observed_count() const {
        std::size_t c = 0;
        for (auto b : data_) c += b;
        return c;
    }

    bool matches(const RealTensor3& a) const {
        return n1_ == a.n1() && n2_ == a.n2() && n3_ == a.n3();
    }

private:
    std::size_t n1_ = 0, n2_ = 0, n3_ = 0;
    std::vector<std::uint8_t> data_;
};

inline RealTensor3 add(const RealTensor3& a, const RealTensor3& b) {
    if (!a.same_shape(b)) throw ShapeError("add: shape mismatch");
    RealTensor3 out(a.n1(), a.n2(), a.n3());
    for (std::size_t t = 0; t < a.size(); ++t) out.data()[t] = a.data()[t] + b.data()[t];
    return out;
}

inline RealTensor3 subtract(const RealTensor3& a, const RealTensor3& b) {
    if (!a.same_shape(b)) throw ShapeError("subtract: shape mismatch");
    RealTensor3 out(a.n1(), a.n2(), a.n3());
    for (std::size_t t = 0; t < a.size(); ++t) out.data()[t] = a.data()[t] - b.data()[t];
    return out;
}

inline RealTensor3 scale(const RealTensor3& a, double s) {
    RealTensor3 out(a.n1(), a.n2(), a.n3());
    for (std::size_t t = 0; t < a.size(); ++t) out.data()[t] = a.data()[t] * s;
    return out;
}

}  // namespace tubal
