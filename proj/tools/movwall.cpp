// movwall: command-line front end for the moving-wall square well solvers.
//
//   movwall list-presets
//   movwall run --preset fojon-oscillating-w4pi2 --method spectral --resolution 20
//   movwall compare --preset uniform-a16 --spectral 10,20,40,60 --fd 30,60,90,100,120 --reference exact
//   movwall coefficients --preset fojon-oscillating-w4pi2 --modes 1,2,3,4,5
//
// Exit codes: 0 success, 2 usage error, 3 domain error, 4 numerical error, 1 anything else.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "movwall/harness.hpp"

namespace {

using movwall::RunConfig;
using movwall::UsageError;

struct Overrides {
    std::string preset;
    std::string config_file;
    std::string wall;
    std::string method;
    std::optional<int> resolution;
    std::string initial;
    std::optional<int> j;
    std::optional<double> t_max;
    std::optional<double> dt;
    std::optional<int> samples;
    std::vector<std::string> outputs;
    std::vector<double> density_times;
    std::optional<int> density_points;
    std::string output;
};

void add_common_options(CLI::App* cmd, Overrides& o)
{
    cmd->add_option("--preset", o.preset, "Scenario preset (see list-presets)");
    cmd->add_option("--config", o.config_file, "JSON run configuration or manifest; its fields override flags");
    cmd->add_option("--wall", o.wall,
                    "Explicit wall law, e.g. uniform:L0=1,a=-16 | oscillatory:l0=1,a=0.3,omega=10 | "
                    "sudden_expansion:a=2,b=10");
    cmd->add_option("--method", o.method, "spectral | fd | exact");
    cmd->add_option("--resolution", o.resolution, "k_max (spectral) or N (fd)");
    cmd->add_option("--initial", o.initial, "doescher | fojon");
    cmd->add_option("--j", o.j, "Initial mode index");
    cmd->add_option("--t-max", o.t_max, "Final time");
    cmd->add_option("--dt", o.dt, "RK4 step on the phase clock");
    cmd->add_option("--samples", o.samples, "Number of output samples over [0, t_max]");
    cmd->add_option("--outputs", o.outputs, "Observables: norm, energy, position, density")->delimiter(',');
    cmd->add_option("--density-times", o.density_times, "Times of density snapshots")->delimiter(',');
    cmd->add_option("--density-points", o.density_points, "Points per density snapshot");
    cmd->add_option("--output", o.output, "Output directory (MOVWALL_OUTPUT_DIR takes precedence)");
}

movwall::WallMotion::Law parse_wall(const std::string& spec)
{
    const auto colon = spec.find(':');
    nlohmann::json j;
    j["kind"] = spec.substr(0, colon);
    if (colon != std::string::npos) {
        std::stringstream rest(spec.substr(colon + 1));
        std::string item;
        while (std::getline(rest, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos) throw UsageError("wall: expected key=value, got '" + item + "'");
            try {
                j[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
            } catch (const std::exception&) {
                throw UsageError("wall: bad number in '" + item + "'");
            }
        }
    }
    return movwall::motion_from_json(j);
}

nlohmann::json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw UsageError("config: cannot open '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError(std::string("config: ") + e.what());
    }
}

RunConfig build_config(const Overrides& o)
{
    RunConfig c;
    bool have_scenario = false;
    const auto method = o.method.empty() ? std::optional<movwall::Method>{} : movwall::parse_method(o.method);
    if (!o.preset.empty()) {
        c = movwall::find_preset(o.preset).config(method.value_or(movwall::Method::Spectral), o.resolution);
        have_scenario = true;
    }
    if (!o.wall.empty()) {
        c.motion = parse_wall(o.wall);
        if (o.preset.empty()) c.scenario = "custom";
        have_scenario = true;
    }
    if (method) c.method = *method;
    if (o.resolution) c.resolution = *o.resolution;
    if (!o.initial.empty()) {
        if (o.initial == "doescher")
            c.initial.kind = movwall::InitialCondition::Kind::Doescher;
        else if (o.initial == "fojon")
            c.initial.kind = movwall::InitialCondition::Kind::Fojon;
        else
            throw UsageError("initial: unknown value '" + o.initial + "'");
    }
    if (o.j) c.initial.j = *o.j;
    if (o.t_max) {
        c.t_max = *o.t_max;
        if (o.density_times.empty()) c.density_times = {c.t_max};
    }
    if (o.dt) c.dt = *o.dt;
    if (o.samples) c.n_samples = *o.samples;
    if (!o.outputs.empty()) c.outputs = o.outputs;
    if (!o.density_times.empty()) c.density_times = o.density_times;
    if (o.density_points) c.density_points = *o.density_points;
    if (!o.output.empty()) c.output_path = o.output;
    if (!o.config_file.empty()) {
        auto j = read_json(o.config_file);
        // a manifest carries the configuration under "config"
        if (j.contains("config")) j = j.at("config");
        c = movwall::apply_json(c, j);
        have_scenario = have_scenario || j.contains("motion");
    }
    if (!have_scenario) throw UsageError("scenario: give --preset, --wall or a --config file with a motion");
    c.validate();
    return c;
}

std::vector<int> parse_int_list(const std::string& s, const std::string& what)
{
    std::vector<int> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw UsageError(what + ": bad integer '" + item + "'");
        }
    }
    return out;
}

int list_presets()
{
    for (const auto& p : movwall::presets()) {
        std::cout << p.name << "\n    " << p.description << "\n    t_max=" << p.t_max << " dt=" << p.dt
                  << " k_max=" << p.k_max << " N=" << p.grid << "\n";
    }
    return 0;
}

int do_run(const Overrides& o)
{
    const auto config = build_config(o);
    const auto result = movwall::run(config);
    for (const auto& f : result.files) std::cout << f.string() << "\n";
    if (result.manifest.at("norm_warning").get<bool>())
        std::cerr << "warning: norm drift above 10% (max " << result.manifest.at("max_norm_drift").get<double>()
                  << ")\n";
    return 0;
}

int do_compare(const Overrides& o, const std::string& spectral, const std::string& fd, const std::string& reference)
{
    const auto base = build_config(o);
    std::vector<RunConfig> runs;
    auto with = [&](movwall::Method m, int resolution) {
        RunConfig c = base;
        c.method = m;
        c.resolution = resolution;
        c.validate();
        return c;
    };
    for (int k : parse_int_list(spectral, "spectral")) runs.push_back(with(movwall::Method::Spectral, k));
    for (int n : parse_int_list(fd, "fd")) runs.push_back(with(movwall::Method::Fd, n));
    if (runs.empty()) throw UsageError("compare: give at least one --spectral or --fd resolution");

    RunConfig ref;
    if (reference == "exact") {
        ref = with(movwall::Method::Exact, 1);
    } else {
        const auto colon = reference.find(':');
        if (colon == std::string::npos) throw UsageError("reference: expected exact, spectral:K or fd:N");
        const auto ints = parse_int_list(reference.substr(colon + 1), "reference");
        if (ints.size() != 1) throw UsageError("reference: expected one resolution");
        ref = with(movwall::parse_method(reference.substr(0, colon)), ints.front());
    }

    const auto rows = movwall::compare(runs, ref);
    const auto csv = movwall::comparison_csv(rows);
    const auto dir = movwall::output_directory(base);
    std::filesystem::create_directories(dir);
    const auto path = dir / "compare.csv";
    std::ofstream(path) << csv;
    std::cout << csv << "written to " << path.string() << "\n";
    return 0;
}

int do_coefficients(const Overrides& o, const std::string& modes)
{
    const auto config = build_config(o);
    const auto csv = movwall::coefficients_csv(config, parse_int_list(modes, "modes"));
    const auto dir = movwall::output_directory(config);
    std::filesystem::create_directories(dir);
    const auto path = dir / "coefficients.csv";
    std::ofstream(path) << csv;
    std::cout << path.string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Square well with a moving wall: spectral, finite-difference and exact solvers"};
    app.require_subcommand(1);

    app.add_subcommand("list-presets", "List the built-in scenarios");

    Overrides run_opts;
    auto* run_cmd = app.add_subcommand("run", "Run one configuration and write CSV series plus a JSON manifest");
    add_common_options(run_cmd, run_opts);

    Overrides cmp_opts;
    std::string spectral_list, fd_list, reference = "exact";
    auto* cmp_cmd = app.add_subcommand("compare", "Average-error table of several resolutions against a reference");
    add_common_options(cmp_cmd, cmp_opts);
    cmp_cmd->add_option("--spectral", spectral_list, "Comma-separated k_max values");
    cmp_cmd->add_option("--fd", fd_list, "Comma-separated grid sizes N");
    cmp_cmd->add_option("--reference", reference, "exact | spectral:K | fd:N")->capture_default_str();

    Overrides coef_opts;
    std::string modes = "1,2,3,4,5";
    auto* coef_cmd = app.add_subcommand("coefficients", "Mode occupations |b_k|^2(t) of a spectral run");
    add_common_options(coef_cmd, coef_opts);
    coef_cmd->add_option("--modes", modes, "Comma-separated mode indices")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("list-presets")) return list_presets();
        if (run_cmd->parsed()) return do_run(run_opts);
        if (cmp_cmd->parsed()) return do_compare(cmp_opts, spectral_list, fd_list, reference);
        if (coef_cmd->parsed()) return do_coefficients(coef_opts, modes);
    } catch (const movwall::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const movwall::DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const movwall::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
