#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "basis.hpp"
#include "errors.hpp"
#include "exact.hpp"
#include "fdref.hpp"
#include "motion.hpp"
#include "observables.hpp"
#include "spectral.hpp"

namespace movwall {

enum class Method { Spectral, Fd, Exact };

inline std::string to_string(Method m)
{
    switch (m) {
    case Method::Spectral: return "spectral";
    case Method::Fd: return "fd";
    case Method::Exact: return "exact";
    }
    return "?";
}

inline Method parse_method(const std::string& s)
{
    if (s == "spectral") return Method::Spectral;
    if (s == "fd") return Method::Fd;
    if (s == "exact") return Method::Exact;
    throw UsageError("method: unknown value '" + s + "' (expected spectral, fd or exact)");
}

/// Doescher: psi(x,0) = u_j(x,0). Fojon: u_j(x,0) exp(i x^2 l'(0) / (4 l(0))).
struct InitialCondition {
    enum class Kind { Doescher, Fojon };
    Kind kind = Kind::Fojon;
    int j = 1;
};

inline const std::vector<std::string>& known_observables()
{
    static const std::vector<std::string> names = {"norm", "energy", "position", "density"};
    return names;
}

struct RunConfig {
    std::string scenario = "custom";
    WallMotion::Law motion = Uniform{1.0, 0.0};
    Method method = Method::Spectral;
    /// k_max for the spectral method, N for the grid; ignored by the exact method.
    int resolution = 10;
    InitialCondition initial{};
    double t_max = 1.0;
    double dt = 1e-5;
    int n_samples = 1000;
    std::vector<std::string> outputs = {"norm", "energy", "position", "density"};
    /// Density snapshots are taken at the output sample nearest to each requested time.
    std::vector<double> density_times{};
    int density_points = 2001;
    std::string output_path = "movwall-out";

    WallMotion wall() const
    {
        return std::visit([](const auto& law) { return WallMotion(law); }, motion);
    }

    void validate() const
    {
        if (resolution < 1) throw UsageError("resolution: must be positive");
        if (method == Method::Fd && resolution < 3) throw UsageError("resolution: the grid needs N >= 3");
        if (initial.j < 1) throw UsageError("initial.j: must be at least 1");
        if (method == Method::Spectral && resolution < initial.j)
            throw UsageError("resolution: k_max must be at least the initial mode j");
        if (!(t_max > 0.0) || !std::isfinite(t_max)) throw UsageError("t_max: must be positive");
        if (!(dt > 0.0)) throw UsageError("dt: must be positive");
        if (n_samples < 2) throw UsageError("n_samples: must be at least 2");
        if (density_points < 3) throw UsageError("density_points: must be at least 3");
        for (const auto& o : outputs) {
            const auto& known = known_observables();
            if (std::find(known.begin(), known.end(), o) == known.end())
                throw UsageError("outputs: unknown observable '" + o + "'");
        }
        if (method == Method::Exact) {
            if (!std::holds_alternative<Uniform>(motion))
                throw UsageError("method: exact requires uniform wall motion");
            const auto& u = std::get<Uniform>(motion);
            if (initial.kind == InitialCondition::Kind::Doescher && u.a != 0.0)
                throw UsageError("initial: the exact solution starts from the fojon state, not doescher");
        }
        wall().validate(t_max);
    }
};

// ---- JSON ----------------------------------------------------------------------------

inline nlohmann::json motion_to_json(const WallMotion::Law& law)
{
    return std::visit(
        [](const auto& m) -> nlohmann::json {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, Uniform>)
                return {{"kind", "uniform"}, {"L0", m.L0}, {"a", m.a}};
            else if constexpr (std::is_same_v<M, Oscillatory>)
                return {{"kind", "oscillatory"}, {"l0", m.l0}, {"a", m.a}, {"omega", m.omega}};
            else
                return {{"kind", "sudden_expansion"}, {"a", m.a}, {"b", m.b}};
        },
        law);
}

namespace detail {

template <typename T>
T field(const nlohmann::json& j, const char* key, const std::string& where)
{
    if (!j.contains(key)) throw UsageError(where + "." + key + ": missing");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw UsageError(where + "." + key + ": wrong type");
    }
}

} // namespace detail

inline WallMotion::Law motion_from_json(const nlohmann::json& j)
{
    const auto kind = detail::field<std::string>(j, "kind", "motion");
    if (kind == "uniform")
        return Uniform{detail::field<double>(j, "L0", "motion"), detail::field<double>(j, "a", "motion")};
    if (kind == "oscillatory")
        return Oscillatory{detail::field<double>(j, "l0", "motion"), detail::field<double>(j, "a", "motion"),
                           detail::field<double>(j, "omega", "motion")};
    if (kind == "sudden_expansion")
        return SuddenExpansion{detail::field<double>(j, "a", "motion"), detail::field<double>(j, "b", "motion")};
    throw UsageError("motion.kind: unknown value '" + kind + "'");
}

inline nlohmann::json to_json(const RunConfig& c)
{
    return {{"scenario", c.scenario},
            {"motion", motion_to_json(c.motion)},
            {"method", to_string(c.method)},
            {"resolution", c.resolution},
            {"initial",
             {{"kind", c.initial.kind == InitialCondition::Kind::Doescher ? "doescher" : "fojon"},
              {"j", c.initial.j}}},
            {"t_max", c.t_max},
            {"dt", c.dt},
            {"n_samples", c.n_samples},
            {"outputs", c.outputs},
            {"density_times", c.density_times},
            {"density_points", c.density_points},
            {"output_path", c.output_path}};
}

/// Applies every field present in `j` on top of `base`; absent fields keep their value.
inline RunConfig apply_json(RunConfig base, const nlohmann::json& j)
{
    if (!j.is_object()) throw UsageError("config: expected a JSON object");
    if (j.contains("scenario")) base.scenario = detail::field<std::string>(j, "scenario", "config");
    if (j.contains("motion")) base.motion = motion_from_json(j.at("motion"));
    if (j.contains("method")) base.method = parse_method(detail::field<std::string>(j, "method", "config"));
    if (j.contains("resolution")) base.resolution = detail::field<int>(j, "resolution", "config");
    if (j.contains("initial")) {
        const auto& init = j.at("initial");
        const auto kind = detail::field<std::string>(init, "kind", "initial");
        if (kind == "doescher")
            base.initial.kind = InitialCondition::Kind::Doescher;
        else if (kind == "fojon")
            base.initial.kind = InitialCondition::Kind::Fojon;
        else
            throw UsageError("initial.kind: unknown value '" + kind + "'");
        if (init.contains("j")) base.initial.j = detail::field<int>(init, "j", "initial");
    }
    if (j.contains("t_max")) base.t_max = detail::field<double>(j, "t_max", "config");
    if (j.contains("dt")) base.dt = detail::field<double>(j, "dt", "config");
    if (j.contains("n_samples")) base.n_samples = detail::field<int>(j, "n_samples", "config");
    if (j.contains("outputs")) base.outputs = detail::field<std::vector<std::string>>(j, "outputs", "config");
    if (j.contains("density_times"))
        base.density_times = detail::field<std::vector<double>>(j, "density_times", "config");
    if (j.contains("density_points")) base.density_points = detail::field<int>(j, "density_points", "config");
    if (j.contains("output_path")) base.output_path = detail::field<std::string>(j, "output_path", "config");
    return base;
}

inline RunConfig from_json(const nlohmann::json& j) { return apply_json(RunConfig{}, j); }

// ---- presets -------------------------------------------------------------------------

struct Preset {
    std::string name;
    std::string description;
    WallMotion::Law motion;
    InitialCondition initial;
    double t_max;
    double dt;
    int k_max;
    int grid;
    std::vector<std::string> outputs;

    RunConfig config(Method method = Method::Spectral, std::optional<int> resolution = std::nullopt) const
    {
        RunConfig c;
        c.scenario = name;
        c.motion = motion;
        c.method = method;
        c.resolution = resolution.value_or(method == Method::Fd ? grid : k_max);
        c.initial = initial;
        c.t_max = t_max;
        c.dt = dt;
        c.outputs = outputs;
        c.density_times = {t_max};
        c.output_path = "movwall-out/" + name;
        return c;
    }
};

inline const std::vector<Preset>& presets()
{
    using K = InitialCondition::Kind;
    const std::vector<std::string> all = {"norm", "energy", "position", "density"};
    static const std::vector<Preset> list = {
        {"uniform-a16", "compression l = 1 - 16 t, Fojon state j=2, up to t = 1/16 - 1/1000",
         Uniform{1.0, -16.0}, {K::Fojon, 2}, 1.0 / 16.0 - 1.0 / 1000.0, 1e-5, 60, 100, all},
        {"doescher-a16", "compression l = 1 - 16 t from the ground state", Uniform{1.0, -16.0}, {K::Doescher, 1},
         1.0 / 16.0 - 1.0 / 1000.0, 1e-5, 10, 100, all},
        {"fojon-oscillating-w1", "l = 1 + 0.3 sin t, Fojon state j=2", Oscillatory{1.0, 0.3, 1.0}, {K::Fojon, 2},
         3.0, 1e-5, 20, 120, all},
        {"fojon-oscillating-w10", "l = 1 + 0.3 sin 10t, Fojon state j=2", Oscillatory{1.0, 0.3, 10.0},
         {K::Fojon, 2}, 3.0, 1e-5, 40, 120, all},
        {"fojon-oscillating-w4pi2", "l = 1 + 0.3 sin 4 pi^2 t, Fojon state j=2",
         Oscillatory{1.0, 0.3, 4.0 * kPi2}, {K::Fojon, 2}, 3.0, 1e-5, 60, 120, all},
        {"sudden-b1", "l = 2 - 1/(1 + t^2), Fojon state j=2", SuddenExpansion{2.0, 1.0}, {K::Fojon, 2}, 5.0, 1e-5,
         40, 100, all},
        {"sudden-b10", "l = 2 - 1/(1 + 100 t^2), Fojon state j=2", SuddenExpansion{2.0, 10.0}, {K::Fojon, 2}, 5.0,
         1e-5, 40, 100, all},
        {"sudden-b20", "l = 2 - 1/(1 + 400 t^2), Fojon state j=2", SuddenExpansion{2.0, 20.0}, {K::Fojon, 2}, 5.0,
         1e-5, 40, 100, all},
    };
    return list;
}

inline const Preset& find_preset(const std::string& name)
{
    for (const auto& p : presets())
        if (p.name == name) return p;
    throw UsageError("preset: unknown name '" + name + "'");
}

// ---- solving -------------------------------------------------------------------------

/// A finished run: the sampled trajectory of one method plus per-sample observables.
class Solution {
public:
    explicit Solution(RunConfig config) : config_(std::move(config)), motion_(config_.wall())
    {
        config_.validate();
        const double l0 = motion_.length(0.0);
        alpha_ = config_.initial.kind == InitialCondition::Kind::Fojon ? initial_alpha(l0, motion_.velocity(0.0)) : 0.0;
        switch (config_.method) {
        case Method::Spectral: solve_spectral(); break;
        case Method::Fd: solve_fd(); break;
        case Method::Exact: solve_exact(); break;
        }
    }

    const RunConfig& config() const { return config_; }
    const WallMotion& motion() const { return motion_; }
    const std::vector<double>& times() const { return times_; }
    std::size_t size() const { return times_.size(); }
    double alpha() const { return alpha_; }
    double captured_norm() const { return captured_norm_; }
    double max_norm_drift() const { return max_norm_drift_; }
    double final_norm_drift() const { return norm(size() - 1) / norm(0) - 1.0; }
    bool norm_warning() const { return norm_warning_; }
    long steps() const { return steps_; }

    /// Number of complex ODEs integrated (k_max or N - 1; zero for the closed form).
    int complex_odes() const
    {
        switch (config_.method) {
        case Method::Spectral: return config_.resolution;
        case Method::Fd: return config_.resolution - 1;
        case Method::Exact: return 0;
        }
        return 0;
    }

    const SpectralState& spectral_state(std::size_t i) const { return std::get<SpectralTrajectory>(data_).states.at(i); }

    Sampler wave(std::size_t i) const
    {
        if (const auto* s = std::get_if<SpectralTrajectory>(&data_)) return SpectralWave(s->states.at(i), motion_);
        if (const auto* f = std::get_if<FdTrajectory>(&data_)) return fd_sampler(f->states.at(i), motion_);
        const auto& ex = std::get<ExactUniformSolution>(data_);
        const double t = times_.at(i);
        return [ex, t](double x) { return ex.psi(x, t); };
    }

    double norm(std::size_t i) const
    {
        if (const auto* s = std::get_if<SpectralTrajectory>(&data_)) return movwall::norm(s->states.at(i));
        if (const auto* f = std::get_if<FdTrajectory>(&data_)) return movwall::norm(f->states.at(i), motion_);
        const double l = motion_.length(times_.at(i));
        const auto w = wave(i);
        return quad::simpson([&](double x) { return std::norm(w(x)); }, 0.0, l, kQuadraturePoints);
    }

    double position(std::size_t i) const
    {
        if (const auto* s = std::get_if<SpectralTrajectory>(&data_)) return mean_position(s->states.at(i), motion_);
        if (const auto* f = std::get_if<FdTrajectory>(&data_)) return mean_position(f->states.at(i), motion_);
        const double l = motion_.length(times_.at(i));
        const auto w = wave(i);
        const double p = quad::simpson([&](double x) { return std::norm(w(x)); }, 0.0, l, kQuadraturePoints);
        return quad::simpson([&](double x) { return x * std::norm(w(x)); }, 0.0, l, kQuadraturePoints) / p;
    }

    double energy(std::size_t i) const
    {
        if (const auto* s = std::get_if<SpectralTrajectory>(&data_)) return mean_energy(s->states.at(i), motion_);
        if (const auto* f = std::get_if<FdTrajectory>(&data_)) return mean_energy(f->states.at(i), motion_);
        const auto& ex = std::get<ExactUniformSolution>(data_);
        return ex.mean_energy(times_.at(i)) / norm(i);
    }

    TimeSeries series(const std::string& name) const
    {
        TimeSeries ts{name, times_, {}};
        ts.values.reserve(size());
        for (std::size_t i = 0; i < size(); ++i) {
            if (name == "norm")
                ts.values.push_back(norm(i));
            else if (name == "position")
                ts.values.push_back(position(i));
            else if (name == "energy")
                ts.values.push_back(energy(i));
            else
                throw UsageError("series: unknown observable '" + name + "'");
        }
        return ts;
    }

    std::size_t nearest_sample(double t) const
    {
        std::size_t best = 0;
        for (std::size_t i = 1; i < size(); ++i)
            if (std::abs(times_[i] - t) < std::abs(times_[best] - t)) best = i;
        return best;
    }

    std::string energy_method() const
    {
        switch (config_.method) {
        case Method::Spectral: return "sum_k |b_k|^2 E_k(t) / sum_k |b_k|^2";
        case Method::Fd: return "grid: central-difference -psi_xx, normalized by the grid norm";
        case Method::Exact: return "Simpson quadrature of |dPsi/dx|^2";
        }
        return "";
    }

private:
    void solve_spectral()
    {
        std::vector<cplx> q;
        if (config_.initial.kind == InitialCondition::Kind::Doescher) {
            q.assign(std::size_t(config_.resolution), cplx{});
            q[std::size_t(config_.initial.j - 1)] = 1.0;
        } else {
            q = decompose_initial(config_.initial.j, alpha_, config_.resolution).q;
        }
        SpectralOptions options;
        options.dt = config_.dt;
        options.n_samples = config_.n_samples;
        auto traj = evolve(std::span<const cplx>(q), motion_, config_.t_max, options);
        captured_norm_ = traj.initial_norm;
        max_norm_drift_ = traj.max_norm_drift;
        steps_ = traj.steps;
        for (const auto& s : traj.states) times_.push_back(s.t);
        data_ = std::move(traj);
    }

    void solve_fd()
    {
        const double l0 = motion_.length(0.0);
        const int j = config_.initial.j;
        const double alpha = alpha_;
        auto psi0 = [l0, j, alpha](double x) {
            const double s = x / l0;
            return eigenfunction(j, x, l0) * std::polar(1.0, alpha * s * s);
        };
        FdOptions options;
        options.dt = config_.dt;
        options.n_samples = config_.n_samples;
        auto traj = fd_evolve(psi0, motion_, config_.resolution, config_.t_max, options);
        captured_norm_ = traj.initial_norm;
        max_norm_drift_ = traj.max_norm_drift;
        norm_warning_ = traj.norm_warning;
        steps_ = traj.steps;
        for (const auto& s : traj.states) times_.push_back(s.t);
        data_ = std::move(traj);
    }

    void solve_exact()
    {
        const auto plan = ClockPlan::make(motion_, config_.t_max, config_.dt, config_.n_samples);
        times_ = plan.sample_times;
        data_ = ExactUniformSolution::for_motion(motion_, config_.initial.j);
        captured_norm_ = 1.0;
        max_norm_drift_ = 0.0;
    }

    RunConfig config_;
    WallMotion motion_;
    double alpha_ = 0.0;
    std::vector<double> times_;
    std::variant<std::monostate, SpectralTrajectory, FdTrajectory, ExactUniformSolution> data_;
    double captured_norm_ = 1.0;
    double max_norm_drift_ = 0.0;
    bool norm_warning_ = false;
    long steps_ = 0;
};

// ---- output --------------------------------------------------------------------------

namespace detail {

inline std::string format_double(double v)
{
    std::ostringstream out;
    out << std::setprecision(17) << v;
    return out.str();
}

inline void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

} // namespace detail

/// Resolves the output directory; the MOVWALL_OUTPUT_DIR environment variable wins.
inline std::filesystem::path output_directory(const RunConfig& c)
{
    if (const char* env = std::getenv("MOVWALL_OUTPUT_DIR"); env && *env) return env;
    return c.output_path;
}

inline std::string series_csv(const TimeSeries& ts, const std::string& header)
{
    std::string out = "t," + header + "\n";
    for (std::size_t i = 0; i < ts.times.size(); ++i)
        out += detail::format_double(ts.times[i]) + "," + detail::format_double(ts.values[i]) + "\n";
    return out;
}

struct RunResult {
    nlohmann::json manifest;
    std::vector<std::filesystem::path> files;
};

/// Runs one configuration and writes its CSV files plus manifest.json.
inline RunResult run(const RunConfig& config)
{
    const auto started = std::chrono::steady_clock::now();
    const Solution sol(config);
    const auto dir = output_directory(config);
    std::filesystem::create_directories(dir);
    RunResult result;

    for (const auto& name : config.outputs) {
        if (name == "density") continue;
        const auto ts = sol.series(name);
        const auto path = dir / (name + ".csv");
        if (name == "energy") {
            std::string text = "t,energy,energy_normalized\n";
            const double e0 = ts.values.front();
            for (std::size_t i = 0; i < ts.times.size(); ++i)
                text += detail::format_double(ts.times[i]) + "," + detail::format_double(ts.values[i]) + "," +
                        detail::format_double(ts.values[i] / e0) + "\n";
            detail::write_text(path, text);
        } else {
            detail::write_text(path, series_csv(ts, name));
        }
        result.files.push_back(path);
    }

    nlohmann::json snapshots = nlohmann::json::array();
    if (std::find(config.outputs.begin(), config.outputs.end(), "density") != config.outputs.end()) {
        const auto requested = config.density_times.empty() ? std::vector<double>{config.t_max} : config.density_times;
        for (std::size_t k = 0; k < requested.size(); ++k) {
            const std::size_t i = sol.nearest_sample(requested[k]);
            const double t = sol.times()[i];
            const double l = sol.motion().length(t);
            const auto xs = uniform_grid(l, std::size_t(config.density_points));
            const auto dens = density(sol.wave(i), l, std::size_t(config.density_points));
            std::string text = "x,density\n";
            for (std::size_t p = 0; p < xs.size(); ++p)
                text += detail::format_double(xs[p]) + "," + detail::format_double(dens[p]) + "\n";
            const auto path = dir / ("density_" + std::to_string(k) + ".csv");
            detail::write_text(path, text);
            result.files.push_back(path);
            snapshots.push_back({{"file", path.filename().string()}, {"requested_t", requested[k]}, {"t", t}});
        }
    }

    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    nlohmann::json files = nlohmann::json::array();
    for (const auto& f : result.files) files.push_back(f.filename().string());
    result.manifest = {{"config", to_json(config)},
                       {"motion", sol.motion().describe()},
                       {"alpha", sol.alpha()},
                       {"captured_initial_norm", sol.captured_norm()},
                       {"final_norm_drift", sol.final_norm_drift()},
                       {"max_norm_drift", sol.max_norm_drift()},
                       {"norm_warning", sol.norm_warning()},
                       {"complex_odes", sol.complex_odes()},
                       {"rk4_steps", sol.steps()},
                       {"energy_method", sol.energy_method()},
                       {"density_snapshots", snapshots},
                       {"files", files},
                       {"wall_clock_seconds", seconds}};
    const auto manifest_path = dir / "manifest.json";
    detail::write_text(manifest_path, result.manifest.dump(2) + "\n");
    result.files.push_back(manifest_path);
    return result;
}

// ---- comparison ----------------------------------------------------------------------

struct ComparisonRow {
    std::string method;
    int resolution = 0;
    int complex_odes = 0;
    double average_error = 0.0;
    double final_norm_drift = 0.0;
    double max_relative_x_error = 0.0;
};

namespace detail {

inline bool same_scenario(const RunConfig& a, const RunConfig& b)
{
    return motion_to_json(a.motion) == motion_to_json(b.motion) && a.t_max == b.t_max &&
           a.n_samples == b.n_samples && a.initial.kind == b.initial.kind && a.initial.j == b.initial.j;
}

} // namespace detail

/// Average error at t_max of every run against the reference, plus the worst relative
/// <x> error over the shared sample grid. Runs are solved concurrently.
inline std::vector<ComparisonRow> compare(const std::vector<RunConfig>& configs, const RunConfig& reference)
{
    for (const auto& c : configs)
        if (!detail::same_scenario(c, reference))
            throw DomainError("compare: run '" + to_string(c.method) + "/" + std::to_string(c.resolution) +
                              "' does not share the reference scenario and t_max");

    auto ref_future = std::async(std::launch::async, [&] { return Solution(reference); });
    std::vector<std::future<Solution>> futures;
    futures.reserve(configs.size());
    for (const auto& c : configs) futures.push_back(std::async(std::launch::async, [c] { return Solution(c); }));
    const Solution ref = ref_future.get();
    const auto ref_x = ref.series("position");
    const std::size_t last = ref.size() - 1;
    const double l_end = ref.motion().length(ref.times()[last]);

    std::vector<ComparisonRow> rows;
    for (auto& f : futures) {
        const Solution sol = f.get();
        ComparisonRow row;
        row.method = to_string(sol.config().method);
        row.resolution = sol.config().resolution;
        row.complex_odes = sol.complex_odes();
        row.average_error = average_error(sol.wave(sol.size() - 1), ref.wave(last), l_end);
        row.final_norm_drift = sol.final_norm_drift();
        const auto rel = relative_x_error(sol.series("position"), ref_x);
        row.max_relative_x_error = *std::max_element(rel.values.begin(), rel.values.end());
        rows.push_back(row);
    }
    return rows;
}

inline std::string comparison_csv(const std::vector<ComparisonRow>& rows)
{
    std::string out = "method,resolution,complex_odes,average_error,final_norm_drift,max_relative_x_error\n";
    for (const auto& r : rows)
        out += r.method + "," + std::to_string(r.resolution) + "," + std::to_string(r.complex_odes) + "," +
               detail::format_double(r.average_error) + "," + detail::format_double(r.final_norm_drift) + "," +
               detail::format_double(r.max_relative_x_error) + "\n";
    return out;
}

// ---- mode occupations ----------------------------------------------------------------

/// |b_k|^2(t) for the requested modes of a spectral run; CSV columns t, b<k>.
inline std::string coefficients_csv(const RunConfig& config, const std::vector<int>& modes)
{
    if (config.method != Method::Spectral) throw UsageError("coefficients: only the spectral method has mode coefficients");
    if (modes.empty()) throw UsageError("modes: at least one mode is required");
    for (int k : modes)
        if (k < 1 || k > config.resolution)
            throw UsageError("modes: mode " + std::to_string(k) + " is outside 1.." + std::to_string(config.resolution));
    const Solution sol(config);
    std::string out = "t";
    for (int k : modes) out += ",b" + std::to_string(k);
    out += "\n";
    for (std::size_t i = 0; i < sol.size(); ++i) {
        const auto& s = sol.spectral_state(i);
        out += detail::format_double(s.t);
        for (int k : modes) out += "," + detail::format_double(std::norm(s.b(k)));
        out += "\n";
    }
    return out;
}

} // namespace movwall
