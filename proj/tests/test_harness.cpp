#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "movwall/harness.hpp"

using namespace movwall;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / ("movwall-test-" + name);
    fs::remove_all(dir);
    return dir;
}

RunConfig small_oscillating()
{
    auto c = find_preset("fojon-oscillating-w10").config(Method::Spectral, 8);
    c.t_max = 0.3;
    c.n_samples = 31;
    c.density_points = 101;
    return c;
}

} // namespace

TEST(Presets, NamedScenariosExistAndValidate)
{
    for (const char* name : {"uniform-a16", "doescher-a16", "fojon-oscillating-w1", "fojon-oscillating-w10",
                             "fojon-oscillating-w4pi2", "sudden-b1", "sudden-b10", "sudden-b20"})
        EXPECT_NO_THROW(find_preset(name)) << name;
    for (const auto& p : presets()) {
        for (auto m : {Method::Spectral, Method::Fd}) EXPECT_NO_THROW(p.config(m).validate()) << p.name;
        if (std::holds_alternative<Uniform>(p.motion) && p.initial.kind == InitialCondition::Kind::Fojon) {
            EXPECT_NO_THROW(p.config(Method::Exact).validate()) << p.name;
        }
    }
    EXPECT_THROW(find_preset("no-such-preset"), UsageError);
}

TEST(Config, JsonRoundTrip)
{
    auto c = small_oscillating();
    c.initial = {InitialCondition::Kind::Doescher, 3};
    c.outputs = {"norm", "position"};
    c.density_times = {0.1, 0.2};
    const auto back = from_json(to_json(c));
    EXPECT_EQ(to_json(back), to_json(c));
    EXPECT_EQ(back.initial.j, 3);
    EXPECT_EQ(back.density_times.size(), 2u);
}

TEST(Config, PartialJsonKeepsOtherFields)
{
    const auto base = small_oscillating();
    const auto c = apply_json(base, nlohmann::json{{"resolution", 12}});
    EXPECT_EQ(c.resolution, 12);
    EXPECT_EQ(c.t_max, base.t_max);
    EXPECT_EQ(motion_to_json(c.motion), motion_to_json(base.motion));
}

TEST(Config, InvalidFieldsNameTheField)
{
    auto expect_field = [](RunConfig c, const std::string& field) {
        try {
            c.validate();
            FAIL() << "accepted invalid " << field;
        } catch (const UsageError& e) {
            EXPECT_NE(std::string(e.what()).find(field), std::string::npos) << e.what();
        }
    };
    auto c = small_oscillating();
    c.resolution = 0;
    expect_field(c, "resolution");
    c = small_oscillating();
    c.outputs = {"norm", "momentum"};
    expect_field(c, "outputs");
    c = small_oscillating();
    c.t_max = -1.0;
    expect_field(c, "t_max");
    c = small_oscillating();
    c.method = Method::Exact;
    expect_field(c, "method");
    EXPECT_THROW(parse_method("galerkin"), UsageError);
    EXPECT_THROW(apply_json(RunConfig{}, nlohmann::json{{"motion", {{"kind", "uniform"}, {"L0", 1.0}}}}), UsageError);
    EXPECT_THROW(apply_json(RunConfig{}, nlohmann::json{{"dt", "small"}}), UsageError);
}

TEST(Config, CollapsingTrajectoryIsADomainError)
{
    auto c = find_preset("uniform-a16").config();
    c.t_max = 0.1;
    EXPECT_THROW(c.validate(), DomainError);
}

TEST(Run, WritesSeriesAndManifest)
{
    const auto dir = scratch("run");
    auto c = small_oscillating();
    c.output_path = dir.string();
    c.density_times = {0.0, 0.3};
    const auto result = run(c);
    for (const char* f : {"norm.csv", "energy.csv", "position.csv", "density_0.csv", "density_1.csv", "manifest.json"})
        EXPECT_TRUE(fs::exists(dir / f)) << f;
    const auto& m = result.manifest;
    EXPECT_EQ(m.at("complex_odes").get<int>(), 8);
    EXPECT_NEAR(m.at("captured_initial_norm").get<double>(), 1.0, 1e-3);
    EXPECT_LT(std::abs(m.at("final_norm_drift").get<double>()), 1e-8);
    EXPECT_TRUE(m.contains("wall_clock_seconds"));
    EXPECT_EQ(m.at("config").at("resolution").get<int>(), 8);

    const auto energy = slurp(dir / "energy.csv");
    EXPECT_EQ(energy.substr(0, energy.find('\n')), "t,energy,energy_normalized");
    std::stringstream lines(energy);
    std::string line;
    std::getline(lines, line);
    std::getline(lines, line);
    EXPECT_EQ(line.substr(line.rfind(',') + 1), "1");
    int rows = 0;
    for (std::stringstream all(energy); std::getline(all, line);) ++rows;
    EXPECT_EQ(rows, 32);
    fs::remove_all(dir);
}

TEST(Run, ManifestReplayIsBitIdentical)
{
    const auto first = scratch("first"), second = scratch("second");
    auto c = small_oscillating();
    c.output_path = first.string();
    run(c);
    auto replay = from_json(nlohmann::json::parse(slurp(first / "manifest.json")).at("config"));
    replay.output_path = second.string();
    run(replay);
    for (const char* f : {"norm.csv", "energy.csv", "position.csv", "density_0.csv"})
        EXPECT_EQ(slurp(first / f), slurp(second / f)) << f;
    fs::remove_all(first);
    fs::remove_all(second);
}

TEST(Run, EnvironmentOverridesOutputDirectory)
{
    const auto dir = scratch("env");
    auto c = small_oscillating();
    c.output_path = "should-not-be-used";
    ::setenv("MOVWALL_OUTPUT_DIR", dir.string().c_str(), 1);
    EXPECT_EQ(output_directory(c), dir);
    ::unsetenv("MOVWALL_OUTPUT_DIR");
    EXPECT_EQ(output_directory(c), fs::path("should-not-be-used"));
}

TEST(Run, ExactDensitySnapshot)
{
    const auto dir = scratch("exact");
    auto c = find_preset("uniform-a16").config(Method::Exact);
    c.output_path = dir.string();
    c.outputs = {"density"};
    c.density_points = 201;
    run(c);
    std::stringstream csv(slurp(dir / "density_0.csv"));
    std::string line;
    std::getline(csv, line);
    const double l = 1.0 - 16.0 * (1.0 / 16.0 - 1.0 / 1000.0);
    int rows = 0;
    while (std::getline(csv, line)) {
        const double x = std::stod(line.substr(0, line.find(',')));
        const double d = std::stod(line.substr(line.find(',') + 1));
        EXPECT_NEAR(d, 2.0 / l * std::pow(std::sin(2 * kPi * x / l), 2), 1e-9 / l);
        ++rows;
    }
    EXPECT_EQ(rows, 201);
    fs::remove_all(dir);
}

TEST(Compare, AgainstItselfIsZero)
{
    const auto c = small_oscillating();
    const auto rows = compare({c}, c);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].average_error, 0.0);
    EXPECT_EQ(rows[0].max_relative_x_error, 0.0);
    EXPECT_EQ(rows[0].complex_odes, 8);
    const auto csv = comparison_csv(rows);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "method,resolution,complex_odes,average_error,final_norm_drift,max_relative_x_error");
}

TEST(Compare, CountsGridOdesAndRejectsMixedScenarios)
{
    auto ref = small_oscillating();
    auto fd = ref;
    fd.method = Method::Fd;
    fd.resolution = 40;
    const auto rows = compare({fd}, ref);
    EXPECT_EQ(rows[0].complex_odes, 39);
    EXPECT_GT(rows[0].average_error, 0.0);
    auto other = ref;
    other.t_max = 0.2;
    EXPECT_THROW(compare({other}, ref), DomainError);
}

TEST(Coefficients, StaticWallStaysInGroundState)
{
    RunConfig c;
    c.motion = Uniform{1.0, 0.0};
    c.initial = {InitialCondition::Kind::Doescher, 1};
    c.resolution = 5;
    c.t_max = 0.5;
    c.n_samples = 11;
    std::stringstream csv(coefficients_csv(c, {1, 2, 3}));
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, "t,b1,b2,b3");
    while (std::getline(csv, line)) {
        std::stringstream row(line);
        std::string cell;
        std::vector<double> v;
        while (std::getline(row, cell, ',')) v.push_back(std::stod(cell));
        ASSERT_EQ(v.size(), 4u);
        EXPECT_EQ(v[1], 1.0);
        EXPECT_EQ(v[2], 0.0);
        EXPECT_EQ(v[3], 0.0);
    }
}

TEST(Coefficients, SlowWallKeepsDominantMode)
{
    auto c = find_preset("fojon-oscillating-w1").config(Method::Spectral, 12);
    c.dt = 1e-4;
    c.n_samples = 100;
    Solution sol(c);
    double min_dominant = 1.0;
    for (std::size_t i = 0; i < sol.size(); ++i) {
        const auto& s = sol.spectral_state(i);
        const double p2 = std::norm(s.b(2));
        for (int k = 1; k <= 12; ++k)
            if (k != 2) {
                EXPECT_LT(std::norm(s.b(k)), p2);
            }
        min_dominant = std::min(min_dominant, p2);
    }
    EXPECT_GT(min_dominant, 0.9);
}

TEST(Coefficients, Errors)
{
    auto c = small_oscillating();
    EXPECT_THROW(coefficients_csv(c, {1, 9}), UsageError);
    EXPECT_THROW(coefficients_csv(c, {0}), UsageError);
    c.method = Method::Fd;
    c.resolution = 20;
    EXPECT_THROW(coefficients_csv(c, {1}), UsageError);
}
