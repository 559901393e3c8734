#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace splitexp {

/// Dense real matrix. Storage is column-major (Eigen default), matching the
/// column-major vec ordering used for fields.
using DenseMatrix = Eigen::MatrixXd;
using DenseVector = Eigen::VectorXd;

enum class ErrorCode {
    InvalidArgument,
    Dimension,
    InvalidSize,
    InvalidStep,
    Unsupported,
    Divergence,
    Config,
    Io,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

/// Maximum absolute row sum.
double inf_norm(const DenseMatrix& m);

/// n! as a double; exact for n <= 22.
double factorial(int n);

}  // namespace splitexp
