#pragma once

#include "splitexp/common.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace splitexp {

using Shape = std::vector<std::size_t>;

/// d-dimensional grid function. Values are stored in column-major vec order:
/// the first index runs fastest, so a 2D field is the matrix V with
/// vec(V) = values.
class Field {
public:
    Field() = default;
    explicit Field(Shape shape, double fill = 0.0);
    Field(Shape shape, std::vector<double> values);

    [[nodiscard]] const Shape& shape() const noexcept { return shape_; }
    [[nodiscard]] std::size_t dims() const noexcept { return shape_.size(); }
    [[nodiscard]] std::size_t extent(std::size_t mu) const { return shape_.at(mu); }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::span<double> values() noexcept { return values_; }
    [[nodiscard]] const double* data() const noexcept { return values_.data(); }
    [[nodiscard]] double* data() noexcept { return values_.data(); }

    /// Element access by multi-index (i0, i1, ...).
    [[nodiscard]] double& at(std::span<const std::size_t> index);
    [[nodiscard]] double at(std::span<const std::size_t> index) const;

    [[nodiscard]] bool all_finite() const noexcept;

    Field& operator+=(const Field& other);
    Field& operator-=(const Field& other);
    Field& operator*=(double scale) noexcept;

    /// this += alpha * other
    Field& add_scaled(double alpha, const Field& other);

    friend Field operator+(Field lhs, const Field& rhs) { return lhs += rhs; }
    friend Field operator-(Field lhs, const Field& rhs) { return lhs -= rhs; }
    friend Field operator*(double scale, Field f) { return f *= scale; }

    friend bool operator==(const Field&, const Field&) = default;

private:
    [[nodiscard]] std::size_t offset(std::span<const std::size_t> index) const;
    void check_same_shape(const Field& other, const char* what) const;

    Shape shape_;
    std::vector<double> values_;
};

[[nodiscard]] std::size_t shape_size(const Shape& shape) noexcept;

/// Column-major flattening and its inverse.
[[nodiscard]] std::vector<double> vec(const Field& field);
[[nodiscard]] Field unvec(std::span<const double> flat, Shape shape);

/// Mode-mu product (0-based mu): contracts index mu of the field with the
/// columns of m. The result has m.rows() entries along mu.
[[nodiscard]] Field mode_product(const Field& field, const DenseMatrix& m, std::size_t mu);

/// Max absolute entry; 0 for an empty field.
[[nodiscard]] double inf_norm(const Field& field) noexcept;

}  // namespace splitexp
