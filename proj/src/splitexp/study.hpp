#pragma once

// Convergence studies: local errors of the split approximations over a list
// of step sizes, and global errors of the integrators over a list of step
// counts, plus slope fitting and report output.

#include "splitexp/integrators.hpp"
#include "splitexp/problems.hpp"
#include "splitexp/split_phi.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace splitexp {

enum class StudyKind { Local, Global };

const char* to_string(StudyKind kind) noexcept;

inline constexpr std::size_t kDefaultN2D = 250;
inline constexpr std::size_t kDefaultN3D = 63;
inline constexpr std::size_t kDefaultRefSteps = 8192;

struct StudyConfig {
    StudyKind study = StudyKind::Local;
    std::size_t dim = 2;
    std::size_t n = kDefaultN2D;

    // Local studies.
    SplitSpec split{SplitKind::ExpHalfPhi1, 1};
    TestFunctionId function = TestFunctionId::V1;
    /// When set, the local study measures the Strang step with
    /// v = (16 x(1-x) y(1-y))^power instead of a split approximation.
    std::optional<int> strang_power;
    std::vector<double> taus;

    // Global studies.
    SchemeKind scheme = SchemeKind::ERK2L;
    int p = 1;
    double kappa = 2.0;
    double final_time = 0.1;
    std::vector<std::size_t> steps;
    std::size_t ref_steps = kDefaultRefSteps;

    static StudyConfig local_defaults();
    static StudyConfig global_defaults(std::size_t dim = 2);

    /// Throws ErrorCode::Config on inconsistent settings.
    void validate() const;
};

std::vector<double> default_local_taus();
std::vector<std::size_t> default_global_steps();

struct ConvergenceSample {
    double tau = 0.0;
    double error = 0.0;
    double seconds = 0.0;
};

struct OrderEstimate {
    /// Least-squares slope of log(error) against log(tau).
    double fitted = 0.0;
    /// log(e_i/e_{i+1}) / log(tau_i/tau_{i+1}) over consecutive positive samples.
    std::vector<double> pairwise;
    std::size_t zero_samples = 0;
};

/// Zero errors are skipped; throws ErrorCode::InvalidArgument when fewer
/// than two positive samples remain.
OrderEstimate estimate_order(std::span<const double> taus, std::span<const double> errors);

struct ConvergenceReport {
    StudyConfig config;
    std::vector<ConvergenceSample> samples;
    /// Empty when the fit is degenerate (fewer than two non-zero errors).
    std::optional<double> fitted_order;
    std::vector<double> pairwise_orders;
    std::size_t zero_samples = 0;

    [[nodiscard]] std::vector<double> taus() const;
    [[nodiscard]] std::vector<double> errors() const;
};

ConvergenceReport run_local_study(const StudyConfig& config);
ConvergenceReport run_global_study(const StudyConfig& config);
ConvergenceReport run_study(const StudyConfig& config);

/// ETD2RK solution with ref_steps steps, memoised per process.
Field reference_solution(const SemilinearProblem& problem, std::size_t ref_steps);

/// CSV (header `tau,error`) at `csv_path` and a companion JSON report next to it.
/// Returns the JSON path.
std::filesystem::path write_report(const ConvergenceReport& report, const std::filesystem::path& csv_path);
std::string report_csv(const ConvergenceReport& report);
std::string report_json(const ConvergenceReport& report);

using LogSink = std::function<void(std::string_view)>;

/// Writes the CSV series behind one of the four published figures into
/// out_dir and returns the CSV paths. n = 0 selects the figure's default
/// resolution (250, or 63 for the three-dimensional figure).
std::vector<std::filesystem::path> reproduce_figure(int figure, const std::filesystem::path& out_dir,
                                                    std::size_t n = 0, const LogSink& log = {});

}  // namespace splitexp
