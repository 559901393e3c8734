#pragma once

// Published reference series compiled into the library.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace splitexp {

std::string_view golden_json_text();

struct GoldenSeries {
    std::string figure;
    // Local series.
    std::string function;  // v1..v5, empty for the Strang series
    std::string kind;      // split name
    int power = -1;        // Strang test power
    // Global series.
    std::string scheme;
    int p = -1;
    double kappa = 0.0;
    double final_time = 0.0;
    std::vector<std::size_t> steps;

    std::size_t dim = 2;
    std::size_t n = 0;
    std::string provenance;
    std::vector<double> taus;
    std::vector<double> errors;
};

/// figure is 1..4. Throws ErrorCode::InvalidArgument otherwise.
const std::vector<GoldenSeries>& golden_series(int figure);

}  // namespace splitexp
