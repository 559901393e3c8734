#include "splitexp/study.hpp"

#include "json.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace splitexp;

namespace {

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path scratch_dir()
{
    auto dir = std::filesystem::temp_directory_path() / "splitexp_test_study";
    std::filesystem::create_directories(dir);
    return dir;
}

StudyConfig small_local()
{
    StudyConfig c = StudyConfig::local_defaults();
    c.n = 31;
    c.taus = {1.0 / 64.0, 1.0 / 256.0, 1.0 / 1024.0};
    return c;
}

}  // namespace

TEST(EstimateOrder, ExactPowerLaws)
{
    const std::vector<double> taus{0.1, 0.05, 0.02, 0.01, 0.001};
    std::vector<double> quad;
    std::vector<double> lin;
    for (double t : taus) {
        quad.push_back(7.0 * t * t);
        lin.push_back(3.0 * t);
    }
    const auto q = estimate_order(taus, quad);
    EXPECT_NEAR(q.fitted, 2.0, 1e-12);
    ASSERT_EQ(q.pairwise.size(), 4u);
    for (double p : q.pairwise) {
        EXPECT_NEAR(p, 2.0, 1e-12);
    }
    EXPECT_NEAR(estimate_order(taus, lin).fitted, 1.0, 1e-12);
}

TEST(EstimateOrder, PublishedStrangSeries)
{
    const std::vector<double> taus{0.015625, 0.00390625, 0.0009765625, 0.000244140625, 6.103515625e-05};
    const std::vector<double> errors{0.00117872951576602, 0.000294330494825977, 7.32604967307338e-05,
                                     1.7962482105881e-05, 4.1755986256652e-06};
    const double fitted = estimate_order(taus, errors).fitted;
    EXPECT_GE(fitted, 0.75);
    EXPECT_LE(fitted, 1.1);
}

TEST(EstimateOrder, ZerosAreSkipped)
{
    const std::vector<double> taus{0.1, 0.01, 0.001};
    const auto est = estimate_order(taus, std::vector<double>{1e-2, 0.0, 1e-6});
    EXPECT_EQ(est.zero_samples, 1u);
    EXPECT_NEAR(est.fitted, 2.0, 1e-12);
    EXPECT_THROW((void)estimate_order(taus, std::vector<double>{0.0, 0.0, 1e-6}), Error);
    EXPECT_THROW((void)estimate_order(taus, std::vector<double>{1.0, 2.0}), Error);
}

TEST(Config, Defaults)
{
    const StudyConfig l = StudyConfig::local_defaults();
    EXPECT_EQ(l.n, 250u);
    ASSERT_EQ(l.taus.size(), 5u);
    EXPECT_EQ(l.taus.front(), std::ldexp(1.0, -6));
    EXPECT_EQ(l.taus.back(), std::ldexp(1.0, -14));
    const StudyConfig g3 = StudyConfig::global_defaults(3);
    EXPECT_EQ(g3.n, 63u);
    EXPECT_EQ(g3.steps, (std::vector<std::size_t>{4, 16, 64, 256, 1024}));
    EXPECT_EQ(g3.ref_steps, 8192u);
    EXPECT_DOUBLE_EQ(g3.final_time, 0.1);
}

TEST(Config, ValidationErrors)
{
    auto expect_config_error = [](const StudyConfig& c) {
        try {
            c.validate();
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::Config);
        }
    };
    StudyConfig l = small_local();
    l.taus = {0.01, 0.02};
    expect_config_error(l);
    l.taus = {0.01};
    expect_config_error(l);
    StudyConfig g = StudyConfig::global_defaults(2);
    g.ref_steps = 1024;
    expect_config_error(g);
    g = StudyConfig::global_defaults(2);
    g.steps = {16, 4};
    expect_config_error(g);
    g = StudyConfig::global_defaults(2);
    g.p = 3;
    expect_config_error(g);
}

TEST(LocalStudy, OrdersOnCoarseGrid)
{
    StudyConfig c = small_local();
    c.function = TestFunctionId::V5;
    c.split = {SplitKind::Phi1Phi1, 1};
    const auto report = run_local_study(c);
    ASSERT_EQ(report.samples.size(), 3u);
    ASSERT_TRUE(report.fitted_order);
    EXPECT_GT(*report.fitted_order, 0.7);
    EXPECT_LT(*report.fitted_order, 1.5);
}

TEST(LocalStudy, ExactKindIsDegenerate)
{
    StudyConfig c = small_local();
    c.split = {SplitKind::Exact, 1};
    const auto report = run_local_study(c);
    EXPECT_FALSE(report.fitted_order);
    EXPECT_EQ(report.zero_samples, 3u);
    for (const auto& s : report.samples) {
        EXPECT_EQ(s.error, 0.0);
    }
}

TEST(LocalStudy, UnsupportedCombination)
{
    StudyConfig c = small_local();
    c.split = {SplitKind::ExpHalfPhi1, 2};
    EXPECT_THROW((void)run_local_study(c), Error);
    c = small_local();
    c.dim = 3;
    EXPECT_THROW((void)run_local_study(c), Error);
}

TEST(GlobalStudy, SmallProblemOrders)
{
    StudyConfig c = StudyConfig::global_defaults(2);
    c.n = 15;
    c.scheme = SchemeKind::ERK2;
    c.steps = {4, 8, 16, 32};
    c.ref_steps = 512;
    const auto report = run_global_study(c);
    ASSERT_TRUE(report.fitted_order);
    EXPECT_NEAR(*report.fitted_order, 2.0, 0.3);
    EXPECT_DOUBLE_EQ(report.samples.front().tau, 0.025);
}

TEST(GlobalStudy, ReferenceIsMemoised)
{
    const SemilinearProblem p = make_problem(2, 0, 2.0, 9);
    const Field a = reference_solution(p, 64);
    const Field b = reference_solution(p, 64);
    EXPECT_EQ(a, b);
    EXPECT_LE(inf_norm(a - integrate(p.u0, SchemeKind::ETD2RK, 64, p.final_time, p)), 0.0);
}

TEST(Report, CsvFormat)
{
    ConvergenceReport r;
    r.config = small_local();
    r.samples = {{0.015625, 1.96800256324108e-4, 0.1}, {0.00390625, 6.59571613521136e-06, 0.1}};
    const std::string csv = report_csv(r);
    EXPECT_EQ(csv.rfind("tau,error\n", 0), 0u);
    EXPECT_EQ(csv.find('\r'), std::string::npos);
    EXPECT_NE(csv.find("1.5625000000000000e-02,1.9680025632410800e-04\n"), std::string::npos);
    // round trip at full precision
    std::istringstream in(csv.substr(10));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(std::stod(line.substr(line.find(',') + 1)), 1.96800256324108e-4);
}

TEST(Report, DeterministicOutput)
{
    const StudyConfig c = small_local();
    EXPECT_EQ(report_csv(run_local_study(c)), report_csv(run_local_study(c)));
}

TEST(Report, WritesCsvAndJson)
{
    const auto dir = scratch_dir();
    const auto report = run_local_study(small_local());
    const auto json_path = write_report(report, dir / "series.csv");
    EXPECT_EQ(json_path, dir / "series.json");
    EXPECT_EQ(slurp(dir / "series.csv"), report_csv(report));
    const auto j = nlohmann::json::parse(slurp(json_path));
    for (const char* key : {"config", "samples", "fitted_order", "pairwise_orders", "wall_clock_seconds_per_sample"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_EQ(j["samples"].size(), 3u);
    EXPECT_EQ(j["wall_clock_seconds_per_sample"].size(), 3u);
    EXPECT_EQ(j["config"]["kind"], "exphalfphi1");
    EXPECT_NEAR(j["fitted_order"].get<double>(), *report.fitted_order, 0.0);

    ConvergenceReport degenerate;
    degenerate.config = small_local();
    EXPECT_TRUE(nlohmann::json::parse(report_json(degenerate))["fitted_order"].is_null());
}

TEST(Report, IoErrorNamesPath)
{
    const auto report = run_local_study(small_local());
    const std::filesystem::path bad = "/nonexistent-dir/sub/out.csv";
    try {
        (void)write_report(report, bad);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Io);
        EXPECT_NE(std::string(e.what()).find(bad.string()), std::string::npos);
    }
}

TEST(Reproduce, FigureTwoFileSet)
{
    const auto dir = scratch_dir() / "fig2";
    std::filesystem::remove_all(dir);
    const auto files = reproduce_figure(2, dir, 15);
    EXPECT_EQ(files.size(), 20u);
    for (const auto& f : files) {
        EXPECT_TRUE(std::filesystem::exists(f));
        EXPECT_TRUE(std::filesystem::exists(std::filesystem::path(f).replace_extension(".json")));
    }
    EXPECT_TRUE(std::filesystem::exists(dir / "fig2_v2_phi2phi2.csv"));
    EXPECT_THROW((void)reproduce_figure(5, dir), Error);
}
