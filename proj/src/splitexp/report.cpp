#include "splitexp/study.hpp"

#include "json.hpp"

#include <cstdio>
#include <fstream>

namespace splitexp {
namespace {

nlohmann::json config_json(const StudyConfig& c)
{
    nlohmann::json j;
    j["study"] = to_string(c.study);
    j["dim"] = c.dim;
    j["n"] = c.n;
    if (c.study == StudyKind::Local) {
        if (c.strang_power) {
            j["method"] = "strang";
            j["strang_power"] = *c.strang_power;
        } else {
            j["kind"] = split_name(c.split);
            j["ell"] = c.split.ell;
            j["function"] = to_string(c.function);
        }
        j["taus"] = c.taus;
    } else {
        j["scheme"] = to_string(c.scheme);
        j["p"] = c.p;
        j["kappa"] = c.kappa;
        j["T"] = c.final_time;
        j["steps"] = c.steps;
        j["ref_steps"] = c.ref_steps;
        j["reference_scheme"] = "etd2rk";
    }
    return j;
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        fail(ErrorCode::Io, "cannot open " + path.string() + " for writing");
    }
    out << text;
    out.close();
    if (!out) {
        fail(ErrorCode::Io, "failed writing " + path.string());
    }
}

}  // namespace

std::string report_csv(const ConvergenceReport& report)
{
    std::string out = "tau,error\n";
    char line[96];
    for (const auto& s : report.samples) {
        std::snprintf(line, sizeof line, "%.16e,%.16e\n", s.tau, s.error);
        out += line;
    }
    return out;
}

std::string report_json(const ConvergenceReport& report)
{
    nlohmann::json j;
    j["config"] = config_json(report.config);
    j["samples"] = nlohmann::json::array();
    std::vector<double> seconds;
    for (const auto& s : report.samples) {
        j["samples"].push_back({{"tau", s.tau}, {"error", s.error}});
        seconds.push_back(s.seconds);
    }
    j["fitted_order"] = report.fitted_order ? nlohmann::json(*report.fitted_order) : nlohmann::json();
    j["pairwise_orders"] = report.pairwise_orders;
    j["zero_samples"] = report.zero_samples;
    j["wall_clock_seconds_per_sample"] = seconds;
    return j.dump(2) + "\n";
}

std::filesystem::path write_report(const ConvergenceReport& report, const std::filesystem::path& csv_path)
{
    std::filesystem::path json_path = csv_path;
    if (json_path.extension() == ".csv") {
        json_path.replace_extension(".json");
    } else {
        json_path += ".json";
    }
    write_text(csv_path, report_csv(report));
    write_text(json_path, report_json(report));
    return json_path;
}

}  // namespace splitexp
