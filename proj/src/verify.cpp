#include "rsn/verify.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rsn/core.hpp"
#include "rsn/local.hpp"
#include "rsn/parallel.hpp"
#include "rsn/sampler.hpp"
#include "rsn/stat_tests.hpp"
#include "rsn/stats.hpp"

namespace rsn {

Check make_check(std::string name, double statistic, double target, double tolerance, std::string relation) {
    Check c{std::move(name), statistic, target, tolerance, std::move(relation), false};
    if (c.relation == "abs") {
        c.pass = std::abs(statistic - target) <= tolerance;
    } else if (c.relation == "le") {
        c.pass = statistic <= target + tolerance;
    } else if (c.relation == "ge") {
        c.pass = statistic >= target - tolerance;
    } else {
        throw std::invalid_argument("unknown check relation " + c.relation);
    }
    if (!std::isfinite(statistic)) c.pass = false;
    return c;
}

bool SuiteReport::pass() const noexcept {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

nlohmann::ordered_json SuiteReport::to_json() const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["generator"] = std::string{"rsn "} + RSN_VERSION;
    j["n"] = n;
    j["samples"] = samples;
    j["seed"] = seed;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        j["checks"].push_back({{"name", c.name},
                               {"statistic", c.statistic},
                               {"target", c.target},
                               {"tolerance", c.tolerance},
                               {"relation", c.relation},
                               {"pass", c.pass}});
    }
    j["details"] = details;
    j["pass"] = pass();
    return j;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"uniformity", "holder",      "lipschitz",   "ellipse",
                                                "lis",        "edge-sine",   "local-rates", "speed-support"};
    return names;
}

namespace {

double mean_of(std::span<const double> v) {
    return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Samples network i of the run and hands it to fn(i, net).
template <class Fn>
void per_network(const VerifyOptions& o, Fn&& fn) {
    parallel_for(0, o.samples, o.workers, [&](std::int64_t i) {
        const SortingNetwork net = sample_indexed(o.n, o.seed, static_cast<std::uint64_t>(i));
        fn(i, net);
    });
}

SuiteReport uniformity(const VerifyOptions& o, SuiteReport r) {
    const auto all = enumerate_all(o.n);
    std::vector<std::int64_t> counts(all.size(), 0);
    for (std::int64_t i = 0; i < o.samples; ++i) {
        const SortingNetwork net = sample_indexed(o.n, o.seed, static_cast<std::uint64_t>(i));
        const auto it = std::lower_bound(all.begin(), all.end(), net);
        if (it == all.end() || *it != net) throw std::logic_error("sampled word missing from the enumeration");
        counts[static_cast<std::size_t>(it - all.begin())]++;
    }
    const TestResult chi = chi_square_uniform(counts);
    r.checks.push_back(make_check("chi_square_p_value", chi.p_value, 0.001, 0, "ge"));
    r.details["networks"] = all.size();
    r.details["chi_square"] = chi.statistic;
    r.details["dof"] = chi.dof;
    r.details["counts"] = counts;
    if (o.n == 3) {
        const auto m = static_cast<double>(o.samples);
        const double sigma = std::sqrt(0.25 / m);
        for (std::size_t i = 0; i < counts.size(); ++i) {
            r.checks.push_back(make_check("frequency_" + std::to_string(i), static_cast<double>(counts[i]) / m, 0.5,
                                          3 * sigma, "abs"));
        }
    }
    return r;
}

SuiteReport holder(const VerifyOptions& o, SuiteReport r) {
    std::vector<double> per(static_cast<std::size_t>(o.samples));
    per_network(o, [&](std::int64_t i, const SortingNetwork& net) {
        per[static_cast<std::size_t>(i)] = holder_max_all(global_trajectories(net, kHolderGrid));
    });
    r.checks.push_back(make_check("max_holder_ratio", *std::max_element(per.begin(), per.end()), std::sqrt(8.0), 0.5, "le"));
    r.details["grid"] = kHolderGrid;
    r.details["per_network"] = per;
    return r;
}

SuiteReport lipschitz(const VerifyOptions& o, SuiteReport r) {
    std::vector<double> per(static_cast<std::size_t>(o.samples));
    per_network(o, [&](std::int64_t i, const SortingNetwork& net) {
        const auto traj = global_trajectories(net, kHolderGrid);
        double worst = -1;
        for (int x = 1; x <= net.n(); ++x) worst = std::max(worst, lipschitz_violation(traj, x));
        per[static_cast<std::size_t>(i)] = worst;
    });
    r.checks.push_back(make_check("mean_worst_excess", mean_of(per), 0, 0.15, "le"));
    r.details["grid"] = kHolderGrid;
    r.details["per_network"] = per;
    return r;
}

SuiteReport ellipse(const VerifyOptions& o, SuiteReport r) {
    const std::vector<double> times{0.5, 0.2, 0.8};
    std::vector<std::vector<double>> per(times.size(), std::vector<double>(static_cast<std::size_t>(o.samples)));
    per_network(o, [&](std::int64_t i, const SortingNetwork& net) {
        for (std::size_t k = 0; k < times.size(); ++k) {
            per[k][static_cast<std::size_t>(i)] = ellipse_outside_fraction(eta_t(net, times[k]), kEllipseMargin);
        }
    });
    r.details["margin"] = kEllipseMargin;
    for (std::size_t k = 0; k < times.size(); ++k) {
        char name[48];
        std::snprintf(name, sizeof name, "outside_fraction_t%.2f", times[k]);
        r.checks.push_back(make_check(name, mean_of(per[k]), 0, 0.01, "le"));
        r.details[name] = per[k];
    }
    return r;
}

SuiteReport lis(const VerifyOptions& o, SuiteReport r) {
    const std::vector<double> times{0.25, 0.5, 1.0};
    std::vector<std::vector<double>> per(times.size(), std::vector<double>(static_cast<std::size_t>(o.samples)));
    per_network(o, [&](std::int64_t i, const SortingNetwork& net) {
        const auto profile = lis_prefix_profile(net, times);
        for (std::size_t k = 0; k < times.size(); ++k) per[k][static_cast<std::size_t>(i)] = profile[k];
    });
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        const double target = std::sqrt(t * (2 - t));
        // Every network must be within tolerance, so the statistic is the
        // network farthest from the target.
        const double farthest = *std::max_element(per[k].begin(), per[k].end(), [&](double a, double b) {
            return std::abs(a - target) < std::abs(b - target);
        });
        char name[48];
        std::snprintf(name, sizeof name, "lis_t%.2f", t);
        r.checks.push_back(make_check(name, farthest, target, 0.05, "abs"));
        r.details[std::string{name} + "_mean"] = mean_of(per[k]);
        r.details[name] = per[k];
    }
    return r;
}

SuiteReport edge_sine(const VerifyOptions& o, SuiteReport r) {
    std::vector<std::int64_t> close(static_cast<std::size_t>(o.samples), 0);
    std::vector<std::int64_t> total(static_cast<std::size_t>(o.samples), 0);
    per_network(o, [&](std::int64_t i, const SortingNetwork& net) {
        const auto traj = global_trajectories(net, kDefaultGrid);
        for (int x = 1; x <= net.n(); ++x) {
            const auto dev = edge_sine_deviation(traj, x, kEdgeBand);
            if (!dev) continue;
            total[static_cast<std::size_t>(i)]++;
            if (dev->dev <= std::sqrt(2 * dev->eps) + 0.1) close[static_cast<std::size_t>(i)]++;
        }
    });
    const auto c = std::accumulate(close.begin(), close.end(), std::int64_t{0});
    const auto t = std::accumulate(total.begin(), total.end(), std::int64_t{0});
    r.checks.push_back(make_check("fraction_within_sine_bound", t ? static_cast<double>(c) / static_cast<double>(t) : 0,
                                  0.95, 0, "ge"));
    r.details["band"] = kEdgeBand;
    r.details["grid"] = kDefaultGrid;
    r.details["edge_particles"] = t;
    return r;
}

SuiteReport local_rates(const VerifyOptions& o, SuiteReport r) {
    const int center = o.n / 2;
    const double horizon = 1;
    const auto origins = spread_origins(o.n, center, horizon, kLocalRateOrigins);
    std::vector<WindowSpec> specs;
    for (const auto origin : origins) specs.push_back({center, kLocalRateHalfWidth, horizon, origin, -1});
    std::vector<double> q_mean(static_cast<std::size_t>(o.samples));
    std::vector<double> w_mean(static_cast<std::size_t>(o.samples));
    per_network(o, [&](std::int64_t i, const SortingNetwork& net) {
        const auto windows = extract_windows(net, specs);
        double q = 0, w = 0;
        for (const auto& win : windows) {
            for (int x = -win.half_width(); x <= win.half_width(); ++x) q += static_cast<double>(swap_count_Q(win, x, horizon));
            w += static_cast<double>(swap_count_W(win, 0, horizon));
        }
        q_mean[static_cast<std::size_t>(i)] = q / static_cast<double>(windows.size() * (2 * kLocalRateHalfWidth + 1));
        w_mean[static_cast<std::size_t>(i)] = w / static_cast<double>(windows.size());
    });
    const double q_target = 8 / kPi;
    const double w_target = 4 / kPi;
    r.checks.push_back(make_check("mean_Q", mean_of(q_mean), q_target, 0.05 * q_target, "abs"));
    r.checks.push_back(make_check("mean_W0", mean_of(w_mean), w_target, 0.05 * w_target, "abs"));
    r.details["center"] = center;
    r.details["horizon"] = horizon;
    r.details["half_width"] = kLocalRateHalfWidth;
    r.details["origins_per_network"] = kLocalRateOrigins;
    return r;
}

SuiteReport speed_support(const VerifyOptions& o, SuiteReport r) {
    const int center = o.n / 2;
    const double horizon = kSpeedHorizon;
    const auto span = static_cast<std::int64_t>(std::floor(horizon * local_time_scale(o.n, center) + 1e-9));
    const auto per_net = static_cast<int>(std::min<std::int64_t>(network_length(o.n) / std::max<std::int64_t>(span, 1), 4096));
    if (per_net < 1) throw std::invalid_argument("speed-support: network too short for the horizon");
    std::vector<WindowSpec> specs;
    for (int k = 0; k < per_net; ++k) specs.push_back({center, kSpeedHalfWidth, horizon, k * span, -1});

    std::vector<std::vector<double>> speeds(static_cast<std::size_t>(o.samples));
    std::vector<std::vector<double>> rates(static_cast<std::size_t>(o.samples));
    std::vector<std::vector<LocalWindow>> kept(static_cast<std::size_t>(o.samples));
    per_network(o, [&](std::int64_t i, const SortingNetwork& net) {
        auto windows = extract_windows(net, specs);
        const std::vector<double> at{horizon};
        for (const auto& win : windows) {
            for (const auto& s : speed_estimates(win, at)) speeds[static_cast<std::size_t>(i)].push_back(s.speed);
        }
        kept[static_cast<std::size_t>(i)] = std::move(windows);
    });

    EmpiricalSpeedDist dist;
    std::vector<double> centre_speeds;
    const std::size_t tracked = 2 * kSpeedHalfWidth + 1;
    for (std::size_t i = 0; i < speeds.size(); ++i) {
        for (std::size_t j = 0; j < speeds[i].size(); ++j) {
            dist.add(speeds[i][j], static_cast<std::int64_t>(i * static_cast<std::size_t>(per_net) + j / tracked));
            if (j % tracked == static_cast<std::size_t>(kSpeedHalfWidth)) centre_speeds.push_back(speeds[i][j]);
        }
    }
    const double lo = -kPi - 0.5;
    const double hi = kPi + 0.5;
    r.checks.push_back(make_check("fraction_in_support", dist.fraction_within(lo, hi), 0.99, 0, "ge"));
    const TestResult sym = sign_flip_symmetry(centre_speeds, 0.5);
    r.checks.push_back(make_check("symmetry_p_value", sym.p_value, 0.001, 0, "ge"));
    const double gap_target = 8 / kPi;
    r.checks.push_back(make_check("mean_abs_speed_gap", mean_abs_speed_gap(dist), gap_target, 0.1 * gap_target, "abs"));

    std::vector<LocalWindow> pooled;
    for (auto& v : kept) {
        for (auto& w : v) pooled.push_back(std::move(w));
    }
    nlohmann::ordered_json bins = nlohmann::ordered_json::array();
    for (const auto& b : swap_rate_vs_speed(pooled, horizon, kSpeedBinWidth)) {
        if (b.count == 0) continue;
        bins.push_back({{"lo", b.lo},
                        {"hi", b.hi},
                        {"count", b.count},
                        {"mean_speed", b.mean_speed},
                        {"mean_rate", b.mean_rate},
                        {"rate_stderr", b.rate_stderr},
                        {"predicted", b.predicted}});
    }
    r.details["center"] = center;
    r.details["horizon"] = horizon;
    r.details["windows_per_network"] = per_net;
    r.details["speed_samples"] = dist.size();
    r.details["mean_speed"] = dist.mean();
    r.details["symmetry_statistic"] = sym.statistic;
    r.details["symmetry_dof"] = sym.dof;
    r.details["symmetry_samples"] = centre_speeds.size();
    r.details["swap_rate_vs_speed"] = bins;
    return r;
}

struct Defaults {
    int n;
    std::int64_t samples;
};

Defaults defaults_for(std::string_view suite) {
    if (suite == "uniformity") return {4, 32000};
    if (suite == "holder" || suite == "lipschitz" || suite == "ellipse" || suite == "lis") return {500, 20};
    if (suite == "edge-sine") return {1000, 10};
    if (suite == "local-rates") return {600, 200};
    if (suite == "speed-support") return {2000, 8};
    throw std::invalid_argument("unknown suite '" + std::string{suite} + "'");
}

}  // namespace

SuiteReport run_suite(std::string_view suite, const VerifyOptions& options) {
    const Defaults d = defaults_for(suite);
    VerifyOptions o = options;
    if (o.n == 0) o.n = d.n;
    if (o.samples == 0) o.samples = d.samples;
    if (o.n < 2 || o.n > kMaxParticles) throw std::invalid_argument("n must be in [2, " + std::to_string(kMaxParticles) + "]");
    if (o.samples < 1) throw std::invalid_argument("samples must be >= 1");
    if (suite == "uniformity" && o.n > kMaxEnumerable) {
        throw std::invalid_argument("uniformity needs n <= " + std::to_string(kMaxEnumerable));
    }
    SuiteReport r;
    r.suite = std::string{suite};
    r.n = o.n;
    r.samples = o.samples;
    r.seed = o.seed;
    if (suite == "uniformity") return uniformity(o, std::move(r));
    if (suite == "holder") return holder(o, std::move(r));
    if (suite == "lipschitz") return lipschitz(o, std::move(r));
    if (suite == "ellipse") return ellipse(o, std::move(r));
    if (suite == "lis") return lis(o, std::move(r));
    if (suite == "edge-sine") return edge_sine(o, std::move(r));
    if (suite == "local-rates") return local_rates(o, std::move(r));
    return speed_support(o, std::move(r));
}

}  // namespace rsn
