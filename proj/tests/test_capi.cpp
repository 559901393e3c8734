// Exercises the shared library through its C header only.

#include "splitexp/splitexp.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

TEST(CApi, StatusAndVersion)
{
    EXPECT_STREQ(sxp_status_name(SXP_OK), "ok");
    EXPECT_STREQ(sxp_version(), "0.1.0");
}

TEST(CApi, PhiScalar)
{
    double v = 0.0;
    ASSERT_EQ(sxp_phi_scalar(2, 0.0, &v), SXP_OK);
    EXPECT_EQ(v, 0.5);
    EXPECT_EQ(sxp_phi_scalar(1, 1.0, nullptr), SXP_ERR_NULL_HANDLE);
    EXPECT_NE(std::string(sxp_last_error_message()), "");
    ASSERT_EQ(sxp_stability_function(-3.0, 3.0, &v), SXP_OK);
    EXPECT_EQ(v, 1.0);
}

TEST(CApi, FieldRoundTrip)
{
    const size_t ext[2] = {2, 3};
    const double vals[6] = {1, 2, 3, 4, 5, -6};
    sxp_field* f = nullptr;
    ASSERT_EQ(sxp_field_create(2, ext, vals, &f), SXP_OK);
    size_t dims = 0;
    size_t e1 = 0;
    size_t size = 0;
    sxp_field_dims(f, &dims);
    sxp_field_extent(f, 1, &e1);
    sxp_field_size(f, &size);
    EXPECT_EQ(dims, 2u);
    EXPECT_EQ(e1, 3u);
    EXPECT_EQ(size, 6u);
    double out[6];
    ASSERT_EQ(sxp_field_values(f, out, 6), SXP_OK);
    EXPECT_EQ(out[5], -6.0);
    EXPECT_EQ(sxp_field_values(f, out, 5), SXP_ERR_INVALID_SIZE);
    EXPECT_EQ(sxp_field_extent(f, 2, &e1), SXP_ERR_DIMENSION);
    double norm = 0.0;
    sxp_field_inf_norm(f, &norm);
    EXPECT_EQ(norm, 6.0);
    sxp_field_destroy(f);
}

TEST(CApi, LocalErrorMatchesSplitDifference)
{
    sxp_operator* op = nullptr;
    ASSERT_EQ(sxp_operator_create(2, 20, 1.0, &op), SXP_OK);
    sxp_field* v = nullptr;
    ASSERT_EQ(sxp_field_test_function(SXP_FUNCTION_V3, 20, &v), SXP_OK);
    double err = -1.0;
    ASSERT_EQ(sxp_local_error(SXP_SPLIT_PHI1_PHI1, 1, 0.01, op, v, &err), SXP_OK);
    EXPECT_GT(err, 0.0);

    sxp_field* a = nullptr;
    sxp_field* b = nullptr;
    ASSERT_EQ(sxp_apply_split(SXP_SPLIT_PHI1_PHI1, 1, 0.01, op, v, &a), SXP_OK);
    ASSERT_EQ(sxp_apply_split(SXP_SPLIT_EXACT, 1, 0.01, op, v, &b), SXP_OK);
    std::vector<double> va(400);
    std::vector<double> vb(400);
    sxp_field_values(a, va.data(), va.size());
    sxp_field_values(b, vb.data(), vb.size());
    double diff = 0.0;
    for (size_t i = 0; i < va.size(); ++i) {
        diff = std::max(diff, std::abs(va[i] - vb[i]));
    }
    EXPECT_DOUBLE_EQ(diff, err);

    EXPECT_EQ(sxp_apply_split(SXP_SPLIT_EXPHALF_PHI1, 2, 0.01, op, v, &a), SXP_ERR_INVALID_ARGUMENT);
    sxp_field_destroy(a);
    sxp_field_destroy(b);
    sxp_field_destroy(v);
    sxp_operator_destroy(op);
}

TEST(CApi, StrangStepShapeError)
{
    sxp_operator* op = nullptr;
    ASSERT_EQ(sxp_operator_create(2, 5, 1.0, &op), SXP_OK);
    const size_t ext[2] = {5, 4};
    sxp_field* bad = nullptr;
    ASSERT_EQ(sxp_field_create(2, ext, nullptr, &bad), SXP_OK);
    sxp_field* out = nullptr;
    EXPECT_EQ(sxp_strang_linear_step(0.01, op, bad, bad, &out), SXP_ERR_DIMENSION);
    EXPECT_EQ(out, nullptr);
    sxp_field_destroy(bad);
    sxp_operator_destroy(op);
}

TEST(CApi, IntegrateAndErrors)
{
    sxp_problem* p = nullptr;
    ASSERT_EQ(sxp_problem_create(3, 1, 2.0, 6, 0.1, &p), SXP_OK);
    sxp_field* u = nullptr;
    ASSERT_EQ(sxp_integrate(p, SXP_SCHEME_ERK2L, 4, &u), SXP_OK);
    double norm = 0.0;
    sxp_field_inf_norm(u, &norm);
    EXPECT_GT(norm, 0.0);
    EXPECT_LT(norm, 1.5);
    sxp_field_destroy(u);
    EXPECT_EQ(sxp_integrate(p, SXP_SCHEME_ERK2L, 0, &u), SXP_ERR_INVALID_ARGUMENT);
    sxp_problem_destroy(p);
    EXPECT_EQ(sxp_problem_create(2, 5, 2.0, 6, 0.1, &p), SXP_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(sxp_operator_create(2, 0, 1.0, nullptr), SXP_ERR_NULL_HANDLE);
    sxp_operator* op = nullptr;
    EXPECT_EQ(sxp_operator_create(2, 0, 1.0, &op), SXP_ERR_INVALID_SIZE);
    EXPECT_EQ(sxp_integrate(nullptr, SXP_SCHEME_ERK2, 4, &u), SXP_ERR_NULL_HANDLE);
}

TEST(CApi, StudyRoundTrip)
{
    sxp_study_config c;
    ASSERT_EQ(sxp_study_config_defaults(SXP_STUDY_GLOBAL, 2, &c), SXP_OK);
    EXPECT_EQ(c.n, 250u);
    EXPECT_EQ(c.ref_steps, 8192u);
    const size_t steps[3] = {2, 4, 8};
    c.n = 11;
    c.steps = steps;
    c.step_count = 3;
    c.ref_steps = 128;
    c.scheme = SXP_SCHEME_ERK2;
    sxp_report* r = nullptr;
    ASSERT_EQ(sxp_run_study(&c, &r), SXP_OK) << sxp_last_error_message();
    size_t count = 0;
    sxp_report_sample_count(r, &count);
    EXPECT_EQ(count, 3u);
    double tau = 0.0;
    double err = 0.0;
    ASSERT_EQ(sxp_report_sample(r, 0, &tau, &err, nullptr), SXP_OK);
    EXPECT_DOUBLE_EQ(tau, 0.05);
    EXPECT_EQ(sxp_report_sample(r, 3, &tau, &err, nullptr), SXP_ERR_INVALID_ARGUMENT);
    double order = 0.0;
    int valid = 0;
    sxp_report_fitted_order(r, &order, &valid);
    EXPECT_EQ(valid, 1);
    EXPECT_NEAR(order, 2.0, 0.4);

    const auto path = std::filesystem::temp_directory_path() / "splitexp_capi_report.csv";
    ASSERT_EQ(sxp_report_write(r, path.c_str()), SXP_OK);
    EXPECT_TRUE(std::filesystem::exists(std::filesystem::path(path).replace_extension(".json")));
    EXPECT_EQ(sxp_report_write(r, "/nonexistent-dir/x.csv"), SXP_ERR_IO);
    EXPECT_NE(std::string(sxp_last_error_message()).find("/nonexistent-dir/x.csv"), std::string::npos);
    sxp_report_destroy(r);

    c.ref_steps = 8;
    EXPECT_EQ(sxp_run_study(&c, &r), SXP_ERR_CONFIG);
}

TEST(CApi, ParseHelpers)
{
    sxp_split_kind k;
    int ell = 0;
    ASSERT_EQ(sxp_parse_split_kind("phi2phi2", &k, &ell), SXP_OK);
    EXPECT_EQ(k, SXP_SPLIT_PHIELL_PHIELL);
    EXPECT_EQ(ell, 2);
    EXPECT_EQ(sxp_parse_split_kind("bogus", &k, &ell), SXP_ERR_INVALID_ARGUMENT);
    sxp_scheme s;
    ASSERT_EQ(sxp_parse_scheme("ETD2RK", &s), SXP_OK);
    EXPECT_EQ(s, SXP_SCHEME_ETD2RK);
    sxp_test_function f;
    ASSERT_EQ(sxp_parse_test_function("v4", &f), SXP_OK);
    EXPECT_EQ(f, SXP_FUNCTION_V4);
}

TEST(CApi, ReproduceRejectsUnknownFigure)
{
    EXPECT_EQ(sxp_reproduce_figure(7, "/tmp", 0, nullptr, nullptr, nullptr), SXP_ERR_INVALID_ARGUMENT);
}
