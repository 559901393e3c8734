#include "splitexp/study.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace splitexp {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void fill_order(ConvergenceReport& report)
{
    const auto taus = report.taus();
    const auto errors = report.errors();
    std::size_t positive = 0;
    for (double e : errors) {
        positive += e > 0.0 ? 1 : 0;
    }
    report.zero_samples = errors.size() - positive;
    if (positive < 2) {
        report.fitted_order.reset();
        report.pairwise_orders.clear();
        return;
    }
    const OrderEstimate est = estimate_order(taus, errors);
    report.fitted_order = est.fitted;
    report.pairwise_orders = est.pairwise;
}

}  // namespace

const char* to_string(StudyKind kind) noexcept
{
    return kind == StudyKind::Local ? "local" : "global";
}

std::vector<double> default_local_taus()
{
    return {std::ldexp(1.0, -6), std::ldexp(1.0, -8), std::ldexp(1.0, -10), std::ldexp(1.0, -12),
            std::ldexp(1.0, -14)};
}

std::vector<std::size_t> default_global_steps()
{
    return {4, 16, 64, 256, 1024};
}

StudyConfig StudyConfig::local_defaults()
{
    StudyConfig c;
    c.study = StudyKind::Local;
    c.taus = default_local_taus();
    return c;
}

StudyConfig StudyConfig::global_defaults(std::size_t dim)
{
    StudyConfig c;
    c.study = StudyKind::Global;
    c.dim = dim;
    c.n = dim == 3 ? kDefaultN3D : kDefaultN2D;
    c.steps = default_global_steps();
    return c;
}

void StudyConfig::validate() const
{
    auto bad = [](const std::string& what) { fail(ErrorCode::Config, what); };
    if (n == 0) {
        bad("n must be at least 1");
    }
    if (study == StudyKind::Local) {
        if (dim != 2) {
            bad("local studies use the two-dimensional test functions; dim must be 2");
        }
        if (taus.size() < 2) {
            bad("a local study needs at least two step sizes");
        }
        for (std::size_t i = 0; i < taus.size(); ++i) {
            if (!(taus[i] > 0.0) || !std::isfinite(taus[i])) {
                bad("step sizes must be positive");
            }
            if (i > 0 && !(taus[i] < taus[i - 1])) {
                bad("step sizes must be strictly decreasing");
            }
        }
        if (strang_power && *strang_power < 0) {
            bad("Strang test power must be non-negative");
        }
        return;
    }
    if (dim != 2 && dim != 3) {
        bad("global studies run in 2 or 3 dimensions");
    }
    if (p != 0 && p != 1) {
        bad("p must be 0 or 1");
    }
    if (!(final_time > 0.0)) {
        bad("final time must be positive");
    }
    if (steps.size() < 2) {
        bad("a global study needs at least two step counts");
    }
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (steps[i] == 0) {
            bad("step counts must be positive");
        }
        if (i > 0 && !(steps[i] > steps[i - 1])) {
            bad("step counts must be strictly increasing");
        }
    }
    if (!(ref_steps > steps.back())) {
        bad("reference step count " + std::to_string(ref_steps) + " must exceed the largest tested count " +
            std::to_string(steps.back()));
    }
}

OrderEstimate estimate_order(std::span<const double> taus, std::span<const double> errors)
{
    if (taus.size() != errors.size()) {
        fail(ErrorCode::InvalidArgument, "estimate_order: taus and errors differ in length");
    }
    std::vector<double> x;
    std::vector<double> y;
    OrderEstimate est;
    for (std::size_t i = 0; i < taus.size(); ++i) {
        if (errors[i] > 0.0 && taus[i] > 0.0) {
            x.push_back(std::log(taus[i]));
            y.push_back(std::log(errors[i]));
        } else {
            ++est.zero_samples;
        }
    }
    if (x.size() < 2) {
        fail(ErrorCode::InvalidArgument, "order estimation needs at least two positive samples");
    }
    const double count = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= count;
    my /= count;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0) {
        fail(ErrorCode::InvalidArgument, "order estimation needs distinct step sizes");
    }
    est.fitted = sxy / sxx;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        est.pairwise.push_back((y[i] - y[i + 1]) / (x[i] - x[i + 1]));
    }
    return est;
}

std::vector<double> ConvergenceReport::taus() const
{
    std::vector<double> out;
    for (const auto& s : samples) {
        out.push_back(s.tau);
    }
    return out;
}

std::vector<double> ConvergenceReport::errors() const
{
    std::vector<double> out;
    for (const auto& s : samples) {
        out.push_back(s.error);
    }
    return out;
}

ConvergenceReport run_local_study(const StudyConfig& config)
{
    if (config.study != StudyKind::Local) {
        fail(ErrorCode::Config, "run_local_study needs a local configuration");
    }
    config.validate();
    const KronSumOperator op = KronSumOperator::uniform(2, config.n);
    const auto spec = config.split;
    if (!config.strang_power) {
        validate_split(spec.kind, spec.ell, op.dims());
    }
    const Field v = config.strang_power ? bubble_power(2, *config.strang_power, config.n)
                                        : test_function(config.function, config.n);
    const Field u0 = bubble_power(2, 1, config.n);

    ConvergenceReport report;
    report.config = config;
    for (double tau : config.taus) {
        const auto start = Clock::now();
        double error = 0.0;
        if (config.strang_power) {
            Field exact = kron_phi_apply_exact(0, tau, op, u0);
            exact.add_scaled(tau, kron_phi_apply_exact(1, tau, op, v));
            error = inf_norm(strang_linear_step(tau, op, u0, v) - exact);
        } else {
            const PhiSet phis = PhiSet::build(op, tau, std::max(spec.ell, 1));
            error = local_error(spec.kind, spec.ell, phis, op, v).error;
        }
        report.samples.push_back({tau, error, seconds_since(start)});
    }
    fill_order(report);
    return report;
}

Field reference_solution(const SemilinearProblem& problem, std::size_t ref_steps)
{
    using Key = std::tuple<Shape, int, double, double, std::size_t>;
    static std::mutex mutex;
    static std::map<Key, Field> cache;
    const Key key{problem.op.shape(), problem.p, problem.kappa, problem.final_time, ref_steps};
    {
        const std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) {
            return it->second;
        }
    }
    Field ref = integrate(problem.u0, SchemeKind::ETD2RK, ref_steps, problem.final_time, problem);
    const std::lock_guard lock(mutex);
    return cache.emplace(key, std::move(ref)).first->second;
}

ConvergenceReport run_global_study(const StudyConfig& config)
{
    if (config.study != StudyKind::Global) {
        fail(ErrorCode::Config, "run_global_study needs a global configuration");
    }
    config.validate();
    const SemilinearProblem problem = make_problem(config.dim, config.p, config.kappa, config.n, config.final_time);
    const Field reference = reference_solution(problem, config.ref_steps);

    ConvergenceReport report;
    report.config = config;
    for (std::size_t steps : config.steps) {
        const auto start = Clock::now();
        const Field u = integrate(problem.u0, config.scheme, steps, config.final_time, problem);
        const double error = inf_norm(u - reference);
        report.samples.push_back({config.final_time / static_cast<double>(steps), error, seconds_since(start)});
    }
    fill_order(report);
    return report;
}

ConvergenceReport run_study(const StudyConfig& config)
{
    return config.study == StudyKind::Local ? run_local_study(config) : run_global_study(config);
}

namespace {

std::string kappa_tag(double kappa)
{
    std::ostringstream os;
    os << kappa;
    return os.str();
}

std::filesystem::path emit(const ConvergenceReport& report, const std::filesystem::path& out_dir,
                           const std::string& stem, const LogSink& log)
{
    const auto path = out_dir / (stem + ".csv");
    write_report(report, path);
    if (log) {
        std::ostringstream os;
        os << stem << ": fitted order ";
        if (report.fitted_order) {
            os << *report.fitted_order;
        } else {
            os << "n/a";
        }
        log(os.str());
    }
    return path;
}

}  // namespace

std::vector<std::filesystem::path> reproduce_figure(int figure, const std::filesystem::path& out_dir,
                                                    std::size_t n, const LogSink& log)
{
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        fail(ErrorCode::Io, "cannot create output directory " + out_dir.string() + ": " + ec.message());
    }
    std::vector<std::filesystem::path> files;
    switch (figure) {
    case 1:
        for (int p = 0; p <= 3; ++p) {
            StudyConfig c = StudyConfig::local_defaults();
            c.n = n ? n : kDefaultN2D;
            c.strang_power = p;
            files.push_back(emit(run_local_study(c), out_dir, "fig1_p" + std::to_string(p), log));
        }
        break;
    case 2:
        for (auto fn : {TestFunctionId::V1, TestFunctionId::V2, TestFunctionId::V3, TestFunctionId::V4,
                        TestFunctionId::V5}) {
            for (const char* name : {"exphalfphi1", "exphalfexphalf", "phi1phi1", "phi2phi2"}) {
                StudyConfig c = StudyConfig::local_defaults();
                c.n = n ? n : kDefaultN2D;
                c.function = fn;
                c.split = *parse_split_kind(name);
                files.push_back(emit(run_local_study(c), out_dir,
                                     std::string("fig2_") + to_string(fn) + "_" + name, log));
            }
        }
        break;
    case 3:
    case 4: {
        const std::size_t dim = figure == 3 ? 2 : 3;
        std::vector<SchemeKind> schemes{SchemeKind::ERK2L, SchemeKind::ERK2};
        if (dim == 2) {
            schemes.push_back(SchemeKind::ETD2RK);
        }
        for (int p : {1, 0}) {
            for (double kappa : {2.0, 0.02}) {
                for (SchemeKind scheme : schemes) {
                    StudyConfig c = StudyConfig::global_defaults(dim);
                    if (n) {
                        c.n = n;
                    }
                    c.scheme = scheme;
                    c.p = p;
                    c.kappa = kappa;
                    files.push_back(emit(run_global_study(c), out_dir,
                                         "fig" + std::to_string(figure) + "_" + to_string(scheme) + "_p" +
                                             std::to_string(p) + "_kappa" + kappa_tag(kappa),
                                         log));
                }
            }
        }
        break;
    }
    default:
        fail(ErrorCode::InvalidArgument, "figure must be 1, 2, 3 or 4, got " + std::to_string(figure));
    }
    return files;
}

}  // namespace splitexp
