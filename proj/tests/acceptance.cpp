// Acceptance suite: one PASS/FAIL line per criterion, seeds and tolerances
// fixed below. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rsn/core.hpp"
#include "rsn/eg.hpp"
#include "rsn/local.hpp"
#include "rsn/sampler.hpp"
#include "rsn/stats.hpp"
#include "rsn/tableau.hpp"
#include "rsn/verify.hpp"

namespace {

using namespace rsn;

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
    bool pass;
    std::string detail;
};

struct Criterion {
    const char* name;
    std::function<Outcome()> run;
};

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

const Check& find_check(const SuiteReport& r, const std::string& name) {
    for (const auto& c : r.checks) {
        if (c.name == name) return c;
    }
    throw std::logic_error("suite " + r.suite + " has no check " + name);
}

SuiteReport suite(const char* name, int n, std::int64_t samples) {
    VerifyOptions o;
    o.n = n;
    o.samples = samples;
    o.seed = kSeed;
    o.workers = 0;
    return run_suite(name, o);
}

// The pooled speed suite feeds two criteria; run it once.
const SuiteReport& speed_report() {
    static const SuiteReport r = suite("speed-support", 2000, 8);
    return r;
}

Outcome exactness() {
    const std::vector<std::pair<int, int>> plan{{2, 5},   {3, 50},  {4, 200},  {5, 200},  {10, 100},
                                                {50, 20}, {100, 10}, {500, 4}, {1000, 2}, {2000, 1}};
    std::int64_t sampled = 0, valid = 0;
    for (const auto& [n, count] : plan) {
        for (int i = 0; i < count; ++i) {
            const auto net = sample_indexed(n, kSeed, static_cast<std::uint64_t>(i));
            ++sampled;
            valid += is_sorting_network(net.sequence()) && every_pair_swaps_once(net.sequence()) &&
                     (n > 500 || oracle::sorts(n, {net.swaps().begin(), net.swaps().end()}));
        }
    }
    std::int64_t round_trips = 0, failures = 0;
    for (int n = 2; n <= 5; ++n) {
        for (const auto& rows : oracle::all_staircase_syt(n)) {
            const auto q = StaircaseTableau::from_rows(rows);
            const auto net = eg_inverse(q);
            ++round_trips;
            failures += !(eg_insert(net.sequence()).recording == q &&
                          oracle::eg_recording({net.swaps().begin(), net.swaps().end()}) == rows);
        }
    }
    for (int n : {10, 50}) {
        for (std::uint64_t i = 0; i < 1000; ++i) {
            Stream rng{kSeed + static_cast<std::uint64_t>(n), i};
            const auto q = hook_walk_sample(StaircaseShape{n}, rng);
            const auto net = eg_inverse(q);
            ++round_trips;
            failures += !(eg_insert(net.sequence()).recording == q);
        }
    }
    return {valid == sampled && failures == 0,
            std::to_string(valid) + "/" + std::to_string(sampled) + " networks sort (n up to 2000); " +
                std::to_string(round_trips - failures) + "/" + std::to_string(round_trips) + " EG round trips"};
}

Outcome uniformity() {
    const auto four = suite("uniformity", 4, 32000);
    const auto three = suite("uniformity", 3, 32000);
    const double p4 = find_check(four, "chi_square_p_value").statistic;
    bool ok = p4 > 0.001;
    std::string detail = "n=4 chi-square p=" + fmt("%.4f", p4);
    const double sigma = std::sqrt(0.25 / 32000.0);
    for (const auto& c : three.checks) {
        if (c.name.rfind("frequency_", 0) != 0) continue;
        ok = ok && std::abs(c.statistic - 0.5) <= 3 * sigma;
        detail += "; n=3 " + c.name + "=" + fmt("%.4f", c.statistic);
    }
    return {ok, detail + " (3 sigma = " + fmt("%.4f", 3 * sigma) + ")"};
}

Outcome local_rates() {
    const auto r = suite("local-rates", 600, 200);
    const double q = find_check(r, "mean_Q").statistic;
    const double w = find_check(r, "mean_W0").statistic;
    const double qt = 8 / kPi, wt = 4 / kPi;
    return {std::abs(q - qt) <= 0.05 * qt && std::abs(w - wt) <= 0.05 * wt,
            "mean Q=" + fmt("%.4f", q) + " (target " + fmt("%.4f", qt) + " +-5%), mean W(0)=" + fmt("%.4f", w) +
                " (target " + fmt("%.4f", wt) + " +-5%)"};
}

Outcome speed_support() {
    const auto& r = speed_report();
    const double inside = find_check(r, "fraction_in_support").statistic;
    const double p = find_check(r, "symmetry_p_value").statistic;
    return {inside >= 0.99 && p > 0.001,
            fmt("%.4f", inside) + " of " + std::to_string(r.details["speed_samples"].get<std::size_t>()) +
                " speeds in [-pi-0.5, pi+0.5] (need >= 0.99); symmetry p=" + fmt("%.4f", p) + " (need > 0.001)"};
}

Outcome speed_gap() {
    const double gap = find_check(speed_report(), "mean_abs_speed_gap").statistic;
    const double target = 8 / kPi;
    return {std::abs(gap - target) <= 0.1 * target,
            "U-statistic E|X-X'|=" + fmt("%.4f", gap) + " (target " + fmt("%.4f", target) + " +-10%)"};
}

Outcome lis() {
    const auto r = suite("lis", 500, 20);
    bool ok = true;
    std::string detail;
    for (double t : {0.25, 0.5, 1.0}) {
        const auto& c = find_check(r, "lis_t" + fmt("%.2f", t));
        const double target = std::sqrt(t * (2 - t));
        ok = ok && std::abs(c.statistic - target) <= 0.05;
        detail += (detail.empty() ? "" : "; ") + std::string{"t="} + fmt("%.2f", t) + " worst network " +
                  fmt("%+.4f", c.statistic - target);
    }
    return {ok, detail + " (tolerance 0.05)"};
}

Outcome ellipse() {
    const auto r = suite("ellipse", 500, 20);
    bool ok = true;
    std::string detail;
    for (double t : {0.5, 0.2, 0.8}) {
        const double f = find_check(r, "outside_fraction_t" + fmt("%.2f", t)).statistic;
        ok = ok && f <= 0.01;
        detail += (detail.empty() ? "" : "; ") + std::string{"t="} + fmt("%.1f", t) + " outside " + fmt("%.4f", f);
    }
    return {ok, detail + " (margin 0.05, need <= 0.01)"};
}

Outcome holder() {
    const double h = find_check(suite("holder", 500, 20), "max_holder_ratio").statistic;
    return {h <= std::sqrt(8.0) + 0.5, "max ratio " + fmt("%.4f", h) + " (bound " + fmt("%.4f", std::sqrt(8.0) + 0.5) + ")"};
}

Outcome lipschitz() {
    const double e = find_check(suite("lipschitz", 500, 20), "mean_worst_excess").statistic;
    return {e <= 0.15, "mean worst excess " + fmt("%.4f", e) + " (need <= 0.15)"};
}

Outcome edge_sine() {
    const auto r = suite("edge-sine", 1000, 10);
    const double f = find_check(r, "fraction_within_sine_bound").statistic;
    return {f >= 0.95, fmt("%.4f", f) + " of " + std::to_string(r.details["edge_particles"].get<std::int64_t>()) +
                           " edge particles within sqrt(2 eps) + 0.1 (need >= 0.95)"};
}

// Finite-size trend across n = 200, 600, 2000. Informational.
void trend() {
    const std::vector<std::pair<int, int>> sizes{{200, 6}, {600, 3}, {2000, 1}};
    std::vector<double> outside, q_err;
    for (const auto& [n, count] : sizes) {
        double f = 0, q = 0;
        std::int64_t windows = 0;
        for (int i = 0; i < count; ++i) {
            const auto net = sample_indexed(n, kSeed, static_cast<std::uint64_t>(i));
            f += ellipse_outside_fraction(eta_t(net, 0.5), 0);
            std::vector<WindowSpec> specs;
            for (const auto o : spread_origins(n, n / 2, 1, 256 / count)) specs.push_back({n / 2, 10, 1, o, -1});
            for (const auto& win : extract_windows(net, specs)) {
                for (int x = -10; x <= 10; ++x) q += static_cast<double>(swap_count_Q(win, x, 1));
                ++windows;
            }
        }
        outside.push_back(f / count);
        q_err.push_back(std::abs(q / (21.0 * static_cast<double>(windows)) - 8 / kPi) / (8 / kPi));
        std::printf("TREND n=%d: outside fraction at t=0.5, margin 0: %.4f; relative error of mean Q: %.4f\n", n,
                    outside.back(), q_err.back());
    }
    const bool monotone = outside[0] >= outside[1] && outside[1] >= outside[2];
    std::printf("TREND outside fraction decreasing in n: %s\n", monotone ? "yes" : "no");
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"exactness", exactness}, {"uniformity", uniformity}, {"local swap rates", local_rates},
        {"speed support", speed_support}, {"pairwise speed gap", speed_gap}, {"LIS profile", lis},
        {"ellipse support", ellipse}, {"Holder", holder}, {"Lipschitz", lipschitz}, {"edge sine", edge_sine}};
    int passed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string{"exception: "} + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
        passed += o.pass;
    }
    trend();
    std::printf("SUMMARY %d/%zu criteria passed (seed %llu)\n", passed, criteria.size(),
                static_cast<unsigned long long>(kSeed));
    return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
