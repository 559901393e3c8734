#include "splitexp/golden.hpp"

#include "splitexp/common.hpp"

#include "json.hpp"

#include <array>
#include <mutex>

namespace splitexp {
namespace {

GoldenSeries parse_series(const std::string& figure, const nlohmann::json& j)
{
    GoldenSeries s;
    s.figure = figure;
    s.function = j.value("function", std::string{});
    s.kind = j.value("kind", std::string{});
    s.scheme = j.value("scheme", std::string{});
    s.p = j.value("p", -1);
    if (figure == "figure1") {
        s.power = s.p;
        s.p = -1;
    }
    s.kappa = j.value("kappa", 0.0);
    s.final_time = j.value("T", 0.0);
    s.steps = j.value("steps", std::vector<std::size_t>{});
    s.dim = j.at("dim").get<std::size_t>();
    s.n = j.at("n").get<std::size_t>();
    s.provenance = j.value("provenance", std::string{});
    s.taus = j.at("taus").get<std::vector<double>>();
    s.errors = j.at("errors").get<std::vector<double>>();
    if (s.taus.size() != s.errors.size()) {
        fail(ErrorCode::Config, "golden series in " + figure + " has mismatched lengths");
    }
    return s;
}

const std::array<std::vector<GoldenSeries>, 4>& all_series()
{
    static const std::array<std::vector<GoldenSeries>, 4> table = [] {
        const auto doc = nlohmann::json::parse(golden_json_text());
        std::array<std::vector<GoldenSeries>, 4> out;
        for (int f = 1; f <= 4; ++f) {
            const std::string key = "figure" + std::to_string(f);
            for (const auto& entry : doc.at(key)) {
                out[f - 1].push_back(parse_series(key, entry));
            }
        }
        return out;
    }();
    return table;
}

}  // namespace

const std::vector<GoldenSeries>& golden_series(int figure)
{
    if (figure < 1 || figure > 4) {
        fail(ErrorCode::InvalidArgument, "no reference data for figure " + std::to_string(figure));
    }
    return all_series()[figure - 1];
}

}  // namespace splitexp
