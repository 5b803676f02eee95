#include "rsn/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rsn/core.hpp"
#include "rsn/local.hpp"
#include "rsn/parallel.hpp"
#include "rsn/rng.hpp"
#include "rsn/sampler.hpp"
#include "rsn/stats.hpp"
#include "rsn/verify.hpp"

namespace rsn {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream os{path, std::ios::binary};
    os << text;
    os.close();
    if (!os) throw fs::filesystem_error("cannot write file", path, std::make_error_code(std::errc::io_error));
}

fs::path prepare_dir(const std::string& dir) {
    const fs::path p{dir};
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) throw fs::filesystem_error("cannot create output directory", p, ec);
    return p;
}

std::string env_or(const char* name, std::string fallback) {
    const char* v = std::getenv(name);
    return v && *v ? std::string{v} : fallback;
}

int env_workers() {
    const std::string v = env_or("RSN_WORKERS", "");
    if (v.empty()) return 0;
    try {
        return std::stoi(v);
    } catch (const std::exception&) {
        throw UsageError("RSN_WORKERS must be an integer, got '" + v + "'");
    }
}

// Seed handling: every command records the seed it used.
struct SeedOption {
    std::optional<std::uint64_t> value;
    std::uint64_t resolve(std::ostream& err) {
        if (!value) {
            value = entropy_seed();
            err << "seed=" << *value << '\n';
        }
        return *value;
    }
};

std::string json_scalar(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

// Appends options from a JSON config for every flag not given on the command
// line. Keys are long flag names; a nested object under the subcommand name
// takes precedence over top-level keys.
void merge_config(std::vector<std::string>& args, const CLI::App& sub, const std::string& path) {
    std::ifstream is{path};
    if (!is) throw fs::filesystem_error("cannot read config", fs::path{path}, std::make_error_code(std::errc::io_error));
    nlohmann::json cfg;
    try {
        cfg = nlohmann::json::parse(is);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError("config " + path + ": " + e.what());
    }
    if (!cfg.is_object()) throw UsageError("config " + path + " must hold a JSON object");
    nlohmann::json merged = nlohmann::json::object();
    for (const auto& [k, v] : cfg.items()) {
        if (!v.is_object()) merged[k] = v;
    }
    if (cfg.contains(sub.get_name()) && cfg[sub.get_name()].is_object()) {
        for (const auto& [k, v] : cfg[sub.get_name()].items()) merged[k] = v;
    }
    auto given = [&](const std::string& flag) {
        for (const auto& a : args) {
            if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
        }
        return false;
    };
    for (const auto& [k, v] : merged.items()) {
        const std::string flag = "--" + k;
        if (k == "config" || given(flag)) continue;
        const CLI::Option* opt = sub.get_option_no_throw(flag);
        if (!opt) continue;
        if (v.is_boolean()) {
            if (v.get<bool>()) args.push_back(flag);
        } else if (v.is_array()) {
            args.push_back(flag);
            for (const auto& e : v) args.push_back(json_scalar(e));
        } else {
            args.push_back(flag);
            args.push_back(json_scalar(v));
        }
    }
}

std::string fmt_time(double t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", t);
    return buf;
}

std::vector<int> spaced_particles(int n, int count) {
    std::vector<int> out;
    if (count <= 1) return {(n + 1) / 2};
    for (int i = 0; i < count; ++i) {
        out.push_back(1 + static_cast<int>(std::lround(static_cast<double>(n - 1) * i / (count - 1))));
    }
    return out;
}

std::string polyline_csv(const std::vector<Point2>& pts, const std::string& comment) {
    std::ostringstream os;
    write_scatter_csv(os, pts, comment);
    return os.str();
}

struct FigureConfig {
    std::string figure = "all";
    int n = 0;
    std::vector<double> times;
    std::vector<int> particles;
    int grid = kDefaultGrid;
    int ellipse_points = 256;
};

nlohmann::ordered_json emit_figure(const std::string& fig, const FigureConfig& cfg, std::uint64_t seed,
                                   const fs::path& dir) {
    const int n = cfg.n ? cfg.n : (fig == "fig1" || fig == "fig2" ? 2000 : 500);
    const SortingNetwork net = sample_indexed(n, seed, 0);
    nlohmann::ordered_json entry;
    entry["figure"] = fig;
    entry["n"] = n;
    entry["network_index"] = 0;
    std::vector<std::string> files;
    auto emit = [&](const std::string& name, const std::string& text) {
        write_text(dir / name, text);
        files.push_back(name);
    };
    if (fig == "fig1" || fig == "fig3") {
        std::vector<double> times = cfg.times;
        if (times.empty()) {
            if (fig == "fig1") {
                times = {0.5};
            } else {
                for (int i = 0; i <= 10; ++i) times.push_back(i / 10.0);
            }
        }
        for (const double t : times) {
            if (!(t >= 0 && t <= 1)) throw UsageError("figure times must lie in [0, 1]");
            const std::vector<double> one{t};
            const std::string meta = csv_metadata(seed, n, 0, one) + " figure=" + fig;
            const auto eta = eta_t(net, t);
            emit(fig + "_eta_t" + fmt_time(t) + ".csv", polyline_csv(eta.points, meta + " kind=scatter"));
            emit(fig + "_ellipse_t" + fmt_time(t) + ".csv",
                 polyline_csv(ArchEllipse{t}.boundary(cfg.ellipse_points), meta + " kind=ellipse_boundary"));
        }
        entry["times"] = times;
    } else if (fig == "fig2" || fig == "fig4") {
        const auto particles = cfg.particles.empty() ? spaced_particles(n, 10) : cfg.particles;
        for (const int x : particles) {
            if (x < 1 || x > n) throw UsageError("particle " + std::to_string(x) + " outside 1..n");
        }
        const auto traj = global_trajectories(net, cfg.grid);
        const std::vector<double> ends{0.0, 1.0};
        const std::string meta = csv_metadata(seed, n, cfg.grid, ends) + " figure=" + fig;
        if (fig == "fig2") {
            std::ostringstream os;
            write_trajectory_csv(os, traj, particles, meta);
            emit("fig2_trajectories.csv", os.str());
        } else {
            if (cfg.grid % 2 != 0) throw UsageError("fig4 needs an even grid");
            std::ostringstream os;
            os.precision(10);
            os << meta << '\n' << "particle,t,z_re,z_im\n";
            nlohmann::ordered_json disp = nlohmann::ordered_json::object();
            for (const int x : particles) {
                const ZPath z = z_functions(traj, x);
                for (std::size_t j = 0; j < z.times.size(); ++j) {
                    os << x << ',' << z.times[j] << ',' << z.values[j].real() << ',' << z.values[j].imag() << '\n';
                }
                disp[std::to_string(x)] = z.scaled_dispersion;
            }
            emit("fig4_z_paths.csv", os.str());
            entry["scaled_dispersion"] = disp;
        }
        entry["particles"] = particles;
        entry["grid"] = cfg.grid;
    } else {
        throw UsageError("unknown figure '" + fig + "'");
    }
    entry["files"] = files;
    return entry;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Monte Carlo lab for uniformly random sorting networks", "rsn"};
    app.set_version_flag("--version", std::string{"rsn "} + RSN_VERSION);
    app.require_subcommand(1);
    std::string config_path;
    const std::string default_out = env_or("RSN_OUT_DIR", "rsn_out");

    // sample
    auto* sample = app.add_subcommand("sample", "Sample uniform sorting networks into a batch directory");
    int sample_n = 0;
    std::int64_t sample_count = 1;
    SeedOption sample_seed;
    std::string sample_out = default_out;
    int sample_workers = 0;
    sample->add_option("--n", sample_n, "Number of particles")->required();
    sample->add_option("--count", sample_count, "Number of networks")->check(CLI::PositiveNumber);
    sample->add_option("--seed", sample_seed.value, "Master seed (random if omitted)");
    sample->add_option("--out", sample_out, "Output directory (env RSN_OUT_DIR)");
    sample->add_option("--workers", sample_workers, "Worker threads, 0 = all cores (env RSN_WORKERS)");
    sample->add_option("--config", config_path, "JSON file with default flag values");

    // verify
    auto* verify = app.add_subcommand("verify", "Run a verification suite and print a JSON verdict");
    std::string suite;
    VerifyOptions vopt;
    SeedOption verify_seed;
    std::string verify_json;
    verify->add_option("--suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
    verify->add_option("--n", vopt.n, "Number of particles (suite default if omitted)");
    verify->add_option("--samples", vopt.samples, "Networks or draws (suite default if omitted)");
    verify->add_option("--seed", verify_seed.value, "Master seed (random if omitted)");
    verify->add_option("--workers", vopt.workers, "Worker threads, 0 = all cores (env RSN_WORKERS)");
    verify->add_option("--json-out", verify_json, "Also write the verdict to this file");
    verify->add_option("--config", config_path, "JSON file with default flag values");

    // figures
    auto* figures = app.add_subcommand("figures", "Emit CSV bundles for the figure scripts");
    FigureConfig fcfg;
    SeedOption figure_seed;
    std::string figure_out = default_out;
    figures->add_option("--figure", fcfg.figure, "fig1, fig2, fig3, fig4 or all")
        ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4", "all"}));
    figures->add_option("--n", fcfg.n, "Number of particles (figure default if omitted)");
    figures->add_option("--t", fcfg.times, "Times for the scatter figures");
    figures->add_option("--particles", fcfg.particles, "Particle labels for the trajectory figures");
    figures->add_option("--grid", fcfg.grid, "Time grid size G")->check(CLI::PositiveNumber);
    figures->add_option("--seed", figure_seed.value, "Master seed (random if omitted)");
    figures->add_option("--out", figure_out, "Output directory (env RSN_OUT_DIR)");
    figures->add_option("--config", config_path, "JSON file with default flag values");

    // local
    auto* local = app.add_subcommand("local", "Extract local windows and write their event log");
    int local_n = 0;
    int local_center = 0;
    int local_width = 10;
    double local_horizon = 1;
    int local_windows = 1;
    SeedOption local_seed;
    std::string local_out = default_out;
    local->add_option("--n", local_n, "Number of particles")->required();
    local->add_option("--center", local_center, "Window centre k (default n/2)");
    local->add_option("--half-width", local_width, "Tracked offsets -w..w")->check(CLI::NonNegativeNumber);
    local->add_option("--horizon", local_horizon, "Local time horizon T")->check(CLI::PositiveNumber);
    local->add_option("--windows", local_windows, "Windows at evenly spaced time origins")->check(CLI::PositiveNumber);
    local->add_option("--seed", local_seed.value, "Master seed (random if omitted)");
    local->add_option("--out", local_out, "Output directory (env RSN_OUT_DIR)");
    local->add_option("--config", config_path, "JSON file with default flag values");

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        // Pre-scan for --config so its values can be merged as defaults.
        for (std::size_t i = 0; i < args.size(); ++i) {
            std::string path;
            if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
            if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
            if (path.empty()) continue;
            CLI::App* target = nullptr;
            for (const auto& a : args) {
                for (auto* s : app.get_subcommands({})) {
                    if (!target && s->get_name() == a) target = s;
                }
            }
            if (target) merge_config(args, *target, path);
            break;
        }
        std::vector<const char*> cargv{argv[0]};
        for (const auto& a : args) cargv.push_back(a.c_str());
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::ParseError& e) {
        // Help and version requests are reported as successes by CLI11.
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }

    try {
        const int workers_env = env_workers();
        if (*sample) {
            const std::uint64_t seed = sample_seed.resolve(err);
            if (sample_n < 2 || sample_n > kMaxParticles) {
                throw UsageError("--n must be in [2, " + std::to_string(kMaxParticles) + "]");
            }
            const int workers = sample->count("--workers") ? sample_workers : workers_env;
            const fs::path dir = prepare_dir(sample_out);
            const BatchManifest m = write_batch(dir, sample_n, sample_count, seed, workers);
            out << "wrote " << m.files.size() << " networks to " << dir.string() << '\n';
            if (!m.errors.empty()) {
                err << m.errors.size() << " samples failed; see manifest.json\n";
                return kExitIo;
            }
            return kExitOk;
        }
        if (*verify) {
            vopt.seed = verify_seed.resolve(err);
            if (!verify->count("--workers")) vopt.workers = workers_env;
            const SuiteReport report = run_suite(suite, vopt);
            const std::string text = report.to_json().dump(2) + "\n";
            out << text;
            if (!verify_json.empty()) write_text(verify_json, text);
            return report.pass() ? kExitOk : kExitCheckFailed;
        }
        if (*figures) {
            const std::uint64_t seed = figure_seed.resolve(err);
            const fs::path dir = prepare_dir(figure_out);
            nlohmann::ordered_json manifest;
            manifest["format_version"] = 1;
            manifest["generator"] = std::string{"rsn "} + RSN_VERSION;
            manifest["seed"] = seed;
            manifest["figures"] = nlohmann::ordered_json::array();
            const std::vector<std::string> list =
                fcfg.figure == "all" ? std::vector<std::string>{"fig1", "fig2", "fig3", "fig4"}
                                     : std::vector<std::string>{fcfg.figure};
            for (const auto& fig : list) manifest["figures"].push_back(emit_figure(fig, fcfg, seed, dir));
            write_text(dir / "figures.json", manifest.dump(2) + "\n");
            out << "wrote figure bundle to " << dir.string() << '\n';
            return kExitOk;
        }
        if (*local) {
            const std::uint64_t seed = local_seed.resolve(err);
            if (local_n < 2 || local_n > kMaxParticles) {
                throw UsageError("--n must be in [2, " + std::to_string(kMaxParticles) + "]");
            }
            const int center = local_center ? local_center : local_n / 2;
            const SortingNetwork net = sample_indexed(local_n, seed, 0);
            std::vector<WindowSpec> specs;
            for (const auto origin : spread_origins(local_n, center, local_horizon, local_windows)) {
                specs.push_back({center, local_width, local_horizon, origin, -1});
            }
            const auto windows = extract_windows(net, specs);
            const fs::path dir = prepare_dir(local_out);
            std::ostringstream os;
            const std::vector<double> ends{0.0, local_horizon};
            os << csv_metadata(seed, local_n, 0, ends) << " center=" << center << " half_width=" << local_width
               << " guard=" << windows.front().guard() << '\n';
            write_event_log_csv(os, windows);
            write_text(dir / "event_log.csv", os.str());

            nlohmann::ordered_json summary;
            summary["generator"] = std::string{"rsn "} + RSN_VERSION;
            summary["seed"] = seed;
            summary["n"] = local_n;
            summary["center"] = center;
            summary["alpha"] = windows.front().alpha();
            summary["half_width"] = local_width;
            summary["guard"] = windows.front().guard();
            summary["horizon"] = local_horizon;
            summary["origins"] = nlohmann::ordered_json::array();
            double q = 0, w = 0;
            bool axioms = true;
            for (const auto& win : windows) {
                summary["origins"].push_back(win.origin());
                for (int x = -local_width; x <= local_width; ++x) q += static_cast<double>(swap_count_Q(win, x, local_horizon));
                if (local_width > 0) w += static_cast<double>(swap_count_W(win, 0, local_horizon));
                axioms = axioms && satisfies_swap_axioms(win);
            }
            const auto nw = static_cast<double>(windows.size());
            summary["mean_Q"] = q / (nw * (2 * local_width + 1));
            if (local_width > 0) summary["mean_W0"] = w / nw;
            summary["swap_axioms"] = axioms;
            summary["event_log"] = (dir / "event_log.csv").string();
            out << summary.dump(2) << '\n';
            return kExitOk;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::bad_alloc&) {
        err << "error: out of memory\n";
        return kExitIo;
    }
    return kExitUsage;
}

}  // namespace rsn
