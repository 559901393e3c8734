// Command-line driver: convergence studies, figure series and self checks.

#include "splitexp/splitexp.h"

#include "CLI11.hpp"

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

namespace {

struct Options {
    std::string study;
    std::size_t dim = 2;
    std::optional<std::size_t> n;
    std::string kind = "exphalfphi1";
    std::optional<int> ell;
    std::string function = "v1";
    std::string scheme = "erk2l";
    int p = 1;
    double kappa = 2.0;
    double final_time = 0.1;
    std::vector<double> taus;
    std::vector<std::size_t> steps;
    std::optional<std::size_t> ref_steps;
    std::string out;
};

int report_failure(sxp_status status)
{
    std::fprintf(stderr, "error (%s): %s\n", sxp_status_name(status), sxp_last_error_message());
    return status == SXP_ERR_CONFIG || status == SXP_ERR_INVALID_ARGUMENT ? 2 : 1;
}

void print_line(const char* line, void*)
{
    std::printf("%s\n", line);
    std::fflush(stdout);
}

void add_study_options(CLI::App& app, Options& o)
{
    app.add_option("--dim", o.dim, "Spatial dimension")->check(CLI::IsMember({2, 3}));
    app.add_option("--n", o.n, "Interior grid points per direction")->check(CLI::PositiveNumber);
    app.add_option("--kind", o.kind, "Split approximation (local)")
        ->check(CLI::IsMember({"exphalfphi1", "exphalfexphalf", "phi1phi1", "phi2phi2", "exact"},
                              CLI::ignore_case));
    app.add_option("--ell", o.ell, "phi order for phi2phi2/exact (local)")->check(CLI::PositiveNumber);
    app.add_option("--function", o.function, "Test function (local)")
        ->check(CLI::IsMember({"v1", "v2", "v3", "v4", "v5"}, CLI::ignore_case));
    app.add_option("--scheme", o.scheme, "Integrator (global)")
        ->check(CLI::IsMember({"erk2l", "erk2", "etd2rk"}, CLI::ignore_case));
    app.add_option("--p", o.p, "Exponent of q in the source (global)")->check(CLI::IsMember({0, 1}));
    app.add_option("--kappa", o.kappa, "Reaction strength (global)");
    app.add_option("--T", o.final_time, "Final time (global)")->check(CLI::PositiveNumber);
    app.add_option("--taus", o.taus, "Comma-separated step sizes, decreasing (local)")->delimiter(',');
    app.add_option("--steps", o.steps, "Comma-separated step counts, increasing (global)")->delimiter(',');
    app.add_option("--ref-steps", o.ref_steps, "Step count of the ETD2RK reference (global)");
    app.add_option("--out", o.out, "CSV output path; a JSON report is written next to it");
}

int run_study(const Options& o, sxp_study_kind study)
{
    sxp_study_config config;
    if (auto s = sxp_study_config_defaults(study, o.dim, &config); s != SXP_OK) {
        return report_failure(s);
    }
    config.dim = o.dim;
    if (o.n) {
        config.n = *o.n;
    }
    if (study == SXP_STUDY_LOCAL) {
        int ell = 1;
        if (auto s = sxp_parse_split_kind(o.kind.c_str(), &config.kind, &ell); s != SXP_OK) {
            return report_failure(s);
        }
        config.ell = o.ell.value_or(ell);
        if (auto s = sxp_parse_test_function(o.function.c_str(), &config.function); s != SXP_OK) {
            return report_failure(s);
        }
        if (!o.taus.empty()) {
            config.taus = o.taus.data();
            config.tau_count = o.taus.size();
        }
    } else {
        if (auto s = sxp_parse_scheme(o.scheme.c_str(), &config.scheme); s != SXP_OK) {
            return report_failure(s);
        }
        config.p = o.p;
        config.kappa = o.kappa;
        config.final_time = o.final_time;
        if (!o.steps.empty()) {
            config.steps = o.steps.data();
            config.step_count = o.steps.size();
        }
        if (o.ref_steps) {
            config.ref_steps = *o.ref_steps;
        }
    }

    sxp_report* report = nullptr;
    if (auto s = sxp_run_study(&config, &report); s != SXP_OK) {
        return report_failure(s);
    }
    size_t count = 0;
    sxp_report_sample_count(report, &count);
    std::printf("tau,error\n");
    for (size_t i = 0; i < count; ++i) {
        double tau = 0.0;
        double error = 0.0;
        sxp_report_sample(report, i, &tau, &error, nullptr);
        std::printf("%.16e,%.16e\n", tau, error);
    }
    double order = 0.0;
    int valid = 0;
    sxp_report_fitted_order(report, &order, &valid);
    if (valid) {
        std::fprintf(stderr, "fitted order %.4f\n", order);
    } else {
        std::fprintf(stderr, "fitted order undefined (fewer than two non-zero errors)\n");
    }
    int rc = 0;
    if (!o.out.empty()) {
        if (auto s = sxp_report_write(report, o.out.c_str()); s != SXP_OK) {
            rc = report_failure(s);
        }
    }
    sxp_report_destroy(report);
    return rc;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Split exponential integrators: convergence studies and checks", "splitexp"};
    app.require_subcommand(0, 1);

    Options opts;
    add_study_options(app, opts);
    app.add_option("--study", opts.study, "Study to run without a subcommand")
        ->check(CLI::IsMember({"local", "global"}, CLI::ignore_case));

    auto* local = app.add_subcommand("local", "Local error of a split approximation over step sizes");
    local->fallthrough();
    auto* global = app.add_subcommand("global", "Global error of an integrator over step counts");
    global->fallthrough();

    bool full = false;
    auto* selftest = app.add_subcommand("selftest", "Run the built-in checks");
    selftest->add_flag("--full", full, "Also compare global errors (several minutes)");

    int figure = 0;
    std::string figure_out;
    std::size_t figure_n = 0;
    auto* reproduce = app.add_subcommand("reproduce-figure", "Write the CSV series of one figure");
    reproduce->add_option("figure", figure, "Figure number")->required()->check(CLI::Range(1, 4));
    reproduce->add_option("--out", figure_out, "Output directory (default figure<k>)");
    reproduce->add_option("--n", figure_n, "Grid points per direction (default per figure)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "%s\n\n%s", e.what(),
                     app.get_formatter()->make_help(&app, "splitexp", CLI::AppFormatMode::Normal).c_str());
        return 2;
    }

    if (*selftest) {
        size_t failures = 0;
        if (auto s = sxp_selftest(full ? 1 : 0, print_line, nullptr, &failures); s != SXP_OK) {
            return report_failure(s);
        }
        std::printf("%zu check(s) failed\n", failures);
        return failures == 0 ? 0 : 1;
    }
    if (*reproduce) {
        if (figure_out.empty()) {
            figure_out = "figure" + std::to_string(figure);
        }
        size_t files = 0;
        if (auto s = sxp_reproduce_figure(figure, figure_out.c_str(), figure_n, print_line, nullptr, &files);
            s != SXP_OK) {
            return report_failure(s);
        }
        std::printf("wrote %zu series to %s\n", files, figure_out.c_str());
        return 0;
    }

    std::string study = opts.study;
    if (*local) {
        study = "local";
    } else if (*global) {
        study = "global";
    }
    if (study.empty()) {
        std::fprintf(stderr, "%s", app.help().c_str());
        return 2;
    }
    if ((*local && opts.study == "global") || (*global && opts.study == "local")) {
        std::fprintf(stderr, "--study contradicts the subcommand\n");
        return 2;
    }
    return run_study(opts, study == "local" ? SXP_STUDY_LOCAL : SXP_STUDY_GLOBAL);
}
