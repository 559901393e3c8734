#include "splitexp/splitexp.h"

#include "splitexp/integrators.hpp"
#include "splitexp/phi.hpp"
#include "splitexp/problems.hpp"
#include "splitexp/selfcheck.hpp"
#include "splitexp/split_phi.hpp"
#include "splitexp/study.hpp"

#include <new>
#include <string>

using namespace splitexp;

struct sxp_operator {
    KronSumOperator op;
};
struct sxp_field {
    Field field;
};
struct sxp_problem {
    SemilinearProblem problem;
};
struct sxp_report {
    ConvergenceReport report;
};

namespace {

thread_local std::string last_error;

sxp_status to_status(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InvalidArgument: return SXP_ERR_INVALID_ARGUMENT;
    case ErrorCode::Dimension: return SXP_ERR_DIMENSION;
    case ErrorCode::InvalidSize: return SXP_ERR_INVALID_SIZE;
    case ErrorCode::InvalidStep: return SXP_ERR_INVALID_STEP;
    case ErrorCode::Unsupported: return SXP_ERR_UNSUPPORTED;
    case ErrorCode::Divergence: return SXP_ERR_DIVERGENCE;
    case ErrorCode::Config: return SXP_ERR_CONFIG;
    case ErrorCode::Io: return SXP_ERR_IO;
    }
    return SXP_ERR_INTERNAL;
}

sxp_status set_error(sxp_status status, std::string message)
{
    last_error = std::move(message);
    return status;
}

template <class F>
sxp_status guarded(F&& body)
{
    try {
        last_error.clear();
        body();
        return SXP_OK;
    } catch (const Error& e) {
        return set_error(to_status(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return set_error(SXP_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return set_error(SXP_ERR_INTERNAL, e.what());
    } catch (...) {
        return set_error(SXP_ERR_INTERNAL, "unknown failure");
    }
}

#define SXP_REQUIRE(ptr)                                                          \
    do {                                                                          \
        if ((ptr) == nullptr) {                                                   \
            return set_error(SXP_ERR_NULL_HANDLE, #ptr " must not be NULL");      \
        }                                                                         \
    } while (0)

SplitKind to_kind(sxp_split_kind k)
{
    switch (k) {
    case SXP_SPLIT_EXPHALF_PHI1: return SplitKind::ExpHalfPhi1;
    case SXP_SPLIT_EXPHALF_EXPHALF: return SplitKind::ExpHalfExpHalf;
    case SXP_SPLIT_PHI1_PHI1: return SplitKind::Phi1Phi1;
    case SXP_SPLIT_PHIELL_PHIELL: return SplitKind::PhiEllPhiEll;
    case SXP_SPLIT_EXACT: return SplitKind::Exact;
    }
    fail(ErrorCode::InvalidArgument, "unknown split kind " + std::to_string(static_cast<int>(k)));
}

sxp_split_kind from_kind(SplitKind k)
{
    switch (k) {
    case SplitKind::ExpHalfPhi1: return SXP_SPLIT_EXPHALF_PHI1;
    case SplitKind::ExpHalfExpHalf: return SXP_SPLIT_EXPHALF_EXPHALF;
    case SplitKind::Phi1Phi1: return SXP_SPLIT_PHI1_PHI1;
    case SplitKind::PhiEllPhiEll: return SXP_SPLIT_PHIELL_PHIELL;
    case SplitKind::Exact: return SXP_SPLIT_EXACT;
    }
    return SXP_SPLIT_EXACT;
}

SchemeKind to_scheme(sxp_scheme s)
{
    switch (s) {
    case SXP_SCHEME_ERK2L: return SchemeKind::ERK2L;
    case SXP_SCHEME_ERK2: return SchemeKind::ERK2;
    case SXP_SCHEME_ETD2RK: return SchemeKind::ETD2RK;
    }
    fail(ErrorCode::InvalidArgument, "unknown scheme " + std::to_string(static_cast<int>(s)));
}

TestFunctionId to_function(sxp_test_function f)
{
    if (f < SXP_FUNCTION_V1 || f > SXP_FUNCTION_V5) {
        fail(ErrorCode::InvalidArgument, "unknown test function " + std::to_string(static_cast<int>(f)));
    }
    return static_cast<TestFunctionId>(f);
}

sxp_field* wrap(Field f)
{
    return new sxp_field{std::move(f)};
}

}  // namespace

extern "C" {

const char* sxp_last_error_message(void)
{
    return last_error.c_str();
}

const char* sxp_status_name(sxp_status status)
{
    switch (status) {
    case SXP_OK: return "ok";
    case SXP_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SXP_ERR_DIMENSION: return "dimension mismatch";
    case SXP_ERR_INVALID_SIZE: return "invalid size";
    case SXP_ERR_INVALID_STEP: return "invalid step";
    case SXP_ERR_UNSUPPORTED: return "unsupported";
    case SXP_ERR_DIVERGENCE: return "divergence";
    case SXP_ERR_CONFIG: return "configuration error";
    case SXP_ERR_IO: return "i/o error";
    case SXP_ERR_NULL_HANDLE: return "null handle";
    case SXP_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* sxp_version(void)
{
    return "0.1.0";
}

sxp_status sxp_phi_scalar(int ell, double z, double* out)
{
    SXP_REQUIRE(out);
    return guarded([&] { *out = phi_scalar(ell, z); });
}

sxp_status sxp_stability_function(double a, double b, double* out)
{
    SXP_REQUIRE(out);
    return guarded([&] { *out = stability_function(a, b); });
}

sxp_status sxp_operator_create(size_t dims, size_t n, double length, sxp_operator** out)
{
    SXP_REQUIRE(out);
    return guarded([&] { *out = new sxp_operator{KronSumOperator::uniform(dims, n, length)}; });
}

void sxp_operator_destroy(sxp_operator* op)
{
    delete op;
}

sxp_status sxp_field_create(size_t dims, const size_t* extents, const double* values, sxp_field** out)
{
    SXP_REQUIRE(out);
    SXP_REQUIRE(extents);
    return guarded([&] {
        if (dims == 0) {
            fail(ErrorCode::InvalidSize, "a field needs at least one mode");
        }
        Shape shape(extents, extents + dims);
        Field f(shape);
        if (values != nullptr) {
            std::copy(values, values + f.size(), f.data());
        }
        *out = wrap(std::move(f));
    });
}

sxp_status sxp_field_test_function(sxp_test_function fn, size_t n, sxp_field** out)
{
    SXP_REQUIRE(out);
    return guarded([&] { *out = wrap(test_function(to_function(fn), n)); });
}

sxp_status sxp_field_dims(const sxp_field* f, size_t* dims)
{
    SXP_REQUIRE(f);
    SXP_REQUIRE(dims);
    *dims = f->field.dims();
    return SXP_OK;
}

sxp_status sxp_field_extent(const sxp_field* f, size_t mode, size_t* extent)
{
    SXP_REQUIRE(f);
    SXP_REQUIRE(extent);
    if (mode >= f->field.dims()) {
        return set_error(SXP_ERR_DIMENSION, "mode " + std::to_string(mode) + " out of range");
    }
    *extent = f->field.extent(mode);
    return SXP_OK;
}

sxp_status sxp_field_size(const sxp_field* f, size_t* size)
{
    SXP_REQUIRE(f);
    SXP_REQUIRE(size);
    *size = f->field.size();
    return SXP_OK;
}

sxp_status sxp_field_values(const sxp_field* f, double* buffer, size_t capacity)
{
    SXP_REQUIRE(f);
    SXP_REQUIRE(buffer);
    if (capacity < f->field.size()) {
        return set_error(SXP_ERR_INVALID_SIZE, "buffer holds " + std::to_string(capacity) + " values, need " +
                                                   std::to_string(f->field.size()));
    }
    std::copy(f->field.data(), f->field.data() + f->field.size(), buffer);
    return SXP_OK;
}

sxp_status sxp_field_inf_norm(const sxp_field* f, double* out)
{
    SXP_REQUIRE(f);
    SXP_REQUIRE(out);
    *out = inf_norm(f->field);
    return SXP_OK;
}

void sxp_field_destroy(sxp_field* f)
{
    delete f;
}

sxp_status sxp_apply_split(sxp_split_kind kind, int ell, double tau, const sxp_operator* op, const sxp_field* v,
                           sxp_field** out)
{
    SXP_REQUIRE(op);
    SXP_REQUIRE(v);
    SXP_REQUIRE(out);
    return guarded([&] { *out = wrap(apply_split(to_kind(kind), ell, tau, op->op, v->field)); });
}

sxp_status sxp_local_error(sxp_split_kind kind, int ell, double tau, const sxp_operator* op, const sxp_field* v,
                           double* error)
{
    SXP_REQUIRE(op);
    SXP_REQUIRE(v);
    SXP_REQUIRE(error);
    return guarded([&] { *error = local_error(to_kind(kind), ell, tau, op->op, v->field).error; });
}

sxp_status sxp_strang_linear_step(double tau, const sxp_operator* op, const sxp_field* u0, const sxp_field* v,
                                  sxp_field** out)
{
    SXP_REQUIRE(op);
    SXP_REQUIRE(u0);
    SXP_REQUIRE(v);
    SXP_REQUIRE(out);
    return guarded([&] { *out = wrap(strang_linear_step(tau, op->op, u0->field, v->field)); });
}

sxp_status sxp_problem_create(size_t dims, int p, double kappa, size_t n, double final_time, sxp_problem** out)
{
    SXP_REQUIRE(out);
    return guarded([&] { *out = new sxp_problem{make_problem(dims, p, kappa, n, final_time)}; });
}

sxp_status sxp_problem_initial(const sxp_problem* problem, sxp_field** out)
{
    SXP_REQUIRE(problem);
    SXP_REQUIRE(out);
    return guarded([&] { *out = wrap(problem->problem.u0); });
}

void sxp_problem_destroy(sxp_problem* problem)
{
    delete problem;
}

sxp_status sxp_integrate(const sxp_problem* problem, sxp_scheme scheme, size_t steps, sxp_field** out)
{
    SXP_REQUIRE(problem);
    SXP_REQUIRE(out);
    return guarded([&] {
        const auto& pr = problem->problem;
        *out = wrap(integrate(pr.u0, to_scheme(scheme), steps, pr.final_time, pr));
    });
}

sxp_status sxp_study_config_defaults(sxp_study_kind study, size_t dim, sxp_study_config* config)
{
    SXP_REQUIRE(config);
    return guarded([&] {
        const StudyConfig c = study == SXP_STUDY_LOCAL ? StudyConfig::local_defaults() : StudyConfig::global_defaults(dim);
        *config = sxp_study_config{};
        config->study = study;
        config->dim = study == SXP_STUDY_LOCAL ? c.dim : dim;
        config->n = c.n;
        config->kind = from_kind(c.split.kind);
        config->ell = c.split.ell;
        config->function = static_cast<sxp_test_function>(c.function);
        config->scheme = static_cast<sxp_scheme>(c.scheme);
        config->p = c.p;
        config->kappa = c.kappa;
        config->final_time = c.final_time;
        config->ref_steps = c.ref_steps;
    });
}

sxp_status sxp_run_study(const sxp_study_config* config, sxp_report** out)
{
    SXP_REQUIRE(config);
    SXP_REQUIRE(out);
    return guarded([&] {
        StudyConfig c = config->study == SXP_STUDY_LOCAL ? StudyConfig::local_defaults()
                                                         : StudyConfig::global_defaults(config->dim);
        c.dim = config->dim;
        c.n = config->n;
        c.split = SplitSpec{to_kind(config->kind), config->ell};
        c.function = to_function(config->function);
        if (config->taus != nullptr) {
            c.taus.assign(config->taus, config->taus + config->tau_count);
        }
        c.scheme = to_scheme(config->scheme);
        c.p = config->p;
        c.kappa = config->kappa;
        c.final_time = config->final_time;
        if (config->steps != nullptr) {
            c.steps.assign(config->steps, config->steps + config->step_count);
        }
        c.ref_steps = config->ref_steps;
        *out = new sxp_report{run_study(c)};
    });
}

sxp_status sxp_report_sample_count(const sxp_report* report, size_t* count)
{
    SXP_REQUIRE(report);
    SXP_REQUIRE(count);
    *count = report->report.samples.size();
    return SXP_OK;
}

sxp_status sxp_report_sample(const sxp_report* report, size_t index, double* tau, double* error, double* seconds)
{
    SXP_REQUIRE(report);
    const auto& samples = report->report.samples;
    if (index >= samples.size()) {
        return set_error(SXP_ERR_INVALID_ARGUMENT, "sample index " + std::to_string(index) + " out of range");
    }
    if (tau != nullptr) {
        *tau = samples[index].tau;
    }
    if (error != nullptr) {
        *error = samples[index].error;
    }
    if (seconds != nullptr) {
        *seconds = samples[index].seconds;
    }
    return SXP_OK;
}

sxp_status sxp_report_fitted_order(const sxp_report* report, double* order, int* valid)
{
    SXP_REQUIRE(report);
    SXP_REQUIRE(order);
    SXP_REQUIRE(valid);
    const auto& fit = report->report.fitted_order;
    *valid = fit ? 1 : 0;
    *order = fit ? *fit : 0.0;
    return SXP_OK;
}

sxp_status sxp_report_write(const sxp_report* report, const char* csv_path)
{
    SXP_REQUIRE(report);
    SXP_REQUIRE(csv_path);
    return guarded([&] { write_report(report->report, csv_path); });
}

void sxp_report_destroy(sxp_report* report)
{
    delete report;
}

sxp_status sxp_parse_split_kind(const char* name, sxp_split_kind* kind, int* ell)
{
    SXP_REQUIRE(name);
    SXP_REQUIRE(kind);
    const auto spec = parse_split_kind(name);
    if (!spec) {
        return set_error(SXP_ERR_INVALID_ARGUMENT, std::string("unknown split kind '") + name + "'");
    }
    *kind = from_kind(spec->kind);
    if (ell != nullptr) {
        *ell = spec->ell;
    }
    return SXP_OK;
}

sxp_status sxp_parse_scheme(const char* name, sxp_scheme* scheme)
{
    SXP_REQUIRE(name);
    SXP_REQUIRE(scheme);
    const auto s = parse_scheme(name);
    if (!s) {
        return set_error(SXP_ERR_INVALID_ARGUMENT, std::string("unknown scheme '") + name + "'");
    }
    *scheme = static_cast<sxp_scheme>(*s);
    return SXP_OK;
}

sxp_status sxp_parse_test_function(const char* name, sxp_test_function* fn)
{
    SXP_REQUIRE(name);
    SXP_REQUIRE(fn);
    const auto f = parse_test_function(name);
    if (!f) {
        return set_error(SXP_ERR_INVALID_ARGUMENT, std::string("unknown test function '") + name + "'");
    }
    *fn = static_cast<sxp_test_function>(*f);
    return SXP_OK;
}

sxp_status sxp_reproduce_figure(int figure, const char* out_dir, size_t n, sxp_log_fn log, void* user,
                                size_t* files_written)
{
    SXP_REQUIRE(out_dir);
    return guarded([&] {
        LogSink sink;
        if (log != nullptr) {
            sink = [log, user](std::string_view line) { log(std::string(line).c_str(), user); };
        }
        const auto files = reproduce_figure(figure, out_dir, n, sink);
        if (files_written != nullptr) {
            *files_written = files.size();
        }
    });
}

sxp_status sxp_selftest(int full, sxp_log_fn log, void* user, size_t* failures)
{
    return guarded([&] {
        auto results = run_invariant_suite();
        const auto local = run_golden_local_checks();
        results.insert(results.end(), local.begin(), local.end());
        if (full) {
            const auto global = run_golden_global_checks();
            results.insert(results.end(), global.begin(), global.end());
        }
        std::size_t failed = 0;
        for (const auto& r : results) {
            failed += r.passed ? 0 : 1;
            if (log != nullptr) {
                log(format_check(r).c_str(), user);
            }
        }
        if (failures != nullptr) {
            *failures = failed;
        }
    });
}

}  // extern "C"
