#include "splitexp/common.hpp"

namespace splitexp {

const char* to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::Dimension: return "dimension mismatch";
    case ErrorCode::InvalidSize: return "invalid size";
    case ErrorCode::InvalidStep: return "invalid step";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::Divergence: return "divergence";
    case ErrorCode::Config: return "configuration error";
    case ErrorCode::Io: return "I/O error";
    }
    return "unknown error";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code)
{
}

void fail(ErrorCode code, const std::string& message)
{
    throw Error(code, message);
}

double inf_norm(const DenseMatrix& m)
{
    if (m.size() == 0) {
        return 0.0;
    }
    return m.cwiseAbs().rowwise().sum().maxCoeff();
}

double factorial(int n)
{
    double result = 1.0;
    for (int k = 2; k <= n; ++k) {
        result *= k;
    }
    return result;
}

}  // namespace splitexp
