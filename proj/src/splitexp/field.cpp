#include "splitexp/field.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

namespace splitexp {
namespace {

std::string shape_string(const Shape& shape)
{
    std::string out = "(";
    for (std::size_t i = 0; i < shape.size(); ++i) {
        out += (i ? "," : "") + std::to_string(shape[i]);
    }
    return out + ")";
}

using ConstMap = Eigen::Map<const DenseMatrix>;
using MutMap = Eigen::Map<DenseMatrix>;

}  // namespace

std::size_t shape_size(const Shape& shape) noexcept
{
    return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

Field::Field(Shape shape, double fill)
    : shape_(std::move(shape)), values_(shape_size(shape_), fill)
{
}

Field::Field(Shape shape, std::vector<double> values)
    : shape_(std::move(shape)), values_(std::move(values))
{
    if (values_.size() != shape_size(shape_)) {
        fail(ErrorCode::Dimension, "field of shape " + shape_string(shape_) + " needs " +
                                       std::to_string(shape_size(shape_)) + " values, got " +
                                       std::to_string(values_.size()));
    }
}

std::size_t Field::offset(std::span<const std::size_t> index) const
{
    if (index.size() != shape_.size()) {
        fail(ErrorCode::Dimension, "index rank does not match field rank");
    }
    std::size_t off = 0;
    std::size_t stride = 1;
    for (std::size_t mu = 0; mu < shape_.size(); ++mu) {
        if (index[mu] >= shape_[mu]) {
            fail(ErrorCode::Dimension, "index out of range along mode " + std::to_string(mu));
        }
        off += index[mu] * stride;
        stride *= shape_[mu];
    }
    return off;
}

double& Field::at(std::span<const std::size_t> index)
{
    return values_[offset(index)];
}

double Field::at(std::span<const std::size_t> index) const
{
    return values_[offset(index)];
}

bool Field::all_finite() const noexcept
{
    return std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); });
}

void Field::check_same_shape(const Field& other, const char* what) const
{
    if (shape_ != other.shape_) {
        fail(ErrorCode::Dimension, std::string(what) + ": shape " + shape_string(shape_) + " vs " +
                                       shape_string(other.shape_));
    }
}

Field& Field::operator+=(const Field& other)
{
    return add_scaled(1.0, other);
}

Field& Field::operator-=(const Field& other)
{
    return add_scaled(-1.0, other);
}

Field& Field::operator*=(double scale) noexcept
{
    for (double& x : values_) {
        x *= scale;
    }
    return *this;
}

Field& Field::add_scaled(double alpha, const Field& other)
{
    check_same_shape(other, "field arithmetic");
    const double* src = other.values_.data();
    double* dst = values_.data();
    const std::size_t count = values_.size();
    for (std::size_t i = 0; i < count; ++i) {
        dst[i] += alpha * src[i];
    }
    return *this;
}

std::vector<double> vec(const Field& field)
{
    return {field.values().begin(), field.values().end()};
}

Field unvec(std::span<const double> flat, Shape shape)
{
    return Field(std::move(shape), std::vector<double>(flat.begin(), flat.end()));
}

Field mode_product(const Field& field, const DenseMatrix& m, std::size_t mu)
{
    const Shape& shape = field.shape();
    if (mu >= shape.size()) {
        fail(ErrorCode::Dimension, "mode " + std::to_string(mu) + " out of range for a " +
                                       std::to_string(shape.size()) + "-dimensional field");
    }
    const auto extent = static_cast<Eigen::Index>(shape[mu]);
    if (m.cols() != extent) {
        fail(ErrorCode::Dimension, "mode product: matrix has " + std::to_string(m.cols()) +
                                       " columns but mode " + std::to_string(mu) + " has extent " +
                                       std::to_string(extent));
    }
    Eigen::Index left = 1;
    for (std::size_t k = 0; k < mu; ++k) {
        left *= static_cast<Eigen::Index>(shape[k]);
    }
    Eigen::Index right = 1;
    for (std::size_t k = mu + 1; k < shape.size(); ++k) {
        right *= static_cast<Eigen::Index>(shape[k]);
    }
    Shape out_shape = shape;
    out_shape[mu] = static_cast<std::size_t>(m.rows());
    Field out(out_shape);
    const Eigen::Index rows = m.rows();

    if (left == 1) {
        // Mode 0: one product M * [extent x right].
        ConstMap in(field.data(), extent, right);
        MutMap res(out.data(), rows, right);
        res.noalias() = m * in;
        return out;
    }
    // Each trailing slice is a [left x extent] matrix multiplied by M^T.
    const DenseMatrix mt = m.transpose();
    for (Eigen::Index r = 0; r < right; ++r) {
        ConstMap in(field.data() + r * left * extent, left, extent);
        MutMap res(out.data() + r * left * rows, left, rows);
        res.noalias() = in * mt;
    }
    return out;
}

double inf_norm(const Field& field) noexcept
{
    double norm = 0.0;
    for (double x : field.values()) {
        norm = std::max(norm, std::abs(x));
    }
    return norm;
}

}  // namespace splitexp
