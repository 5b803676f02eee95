#include "rsn/local.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "rsn/stat_tests.hpp"
#include "rsn/stats.hpp"

namespace rsn {

namespace {

double semicircle(int n, int center) {
    const double alpha = 2.0 * center / n - 1.0;
    return std::sqrt(std::max(0.0, 1 - alpha * alpha));
}

void check_spec(const SortingNetwork& net, const WindowSpec& spec, int guard) {
    const int n = net.n();
    const int reach = spec.half_width + guard;
    if (spec.half_width < 0 || guard < 0) throw WindowError("window widths must be non-negative");
    if (spec.center - reach < 1 || spec.center + reach > n) {
        throw WindowError("window k=" + std::to_string(spec.center) + " +- " + std::to_string(reach) +
                          " touches the boundary of [1, " + std::to_string(n) + "]");
    }
    const double root = semicircle(n, spec.center);
    if (!(spec.horizon > 0)) throw WindowError("window horizon must be positive");
    if (spec.horizon > (n - 1) / (2 * root)) {
        throw WindowError("horizon exceeds the constancy cutoff (n-1)/(2 sqrt(1-alpha^2))");
    }
    const auto span = static_cast<std::int64_t>(std::floor(spec.horizon * n / root + 1e-9));
    if (spec.origin < 0 || spec.origin + span > net.size()) {
        throw WindowError("window runs past the last swap");
    }
}

}  // namespace

int default_guard(int n, int center, double horizon) {
    return static_cast<int>(std::ceil(horizon * (kPi + 1) / semicircle(n, center)));
}

double local_time_scale(int n, int center) { return n / semicircle(n, center); }

std::int64_t LocalWindow::offset_limit(double t) const noexcept {
    if (t <= 0) return 0;
    const auto v = static_cast<std::int64_t>(std::floor(t * scale_ + 1e-9));
    return std::min(v, span_);
}

std::span<const ParticleEvent> LocalWindow::events(int x) const {
    if (!recorded(x)) throw WindowError("particle offset " + std::to_string(x) + " is not recorded");
    return events_[static_cast<std::size_t>(x + reach())];
}

int LocalWindow::position(int x, double t) const {
    const auto ev = events(x);
    const std::int64_t limit = offset_limit(t);
    auto it = std::upper_bound(ev.begin(), ev.end(), limit,
                               [](std::int64_t lim, const ParticleEvent& e) { return lim < e.offset; });
    return it == ev.begin() ? x : std::prev(it)->position;
}

std::vector<LocalWindow> extract_windows(const SortingNetwork& net, std::span<const WindowSpec> specs) {
    const int n = net.n();
    std::vector<std::size_t> order(specs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return specs[a].origin < specs[b].origin; });

    std::vector<LocalWindow> out(specs.size());
    WiringState state{n};
    std::vector<int> slot(static_cast<std::size_t>(n) + 1, -1);
    for (const std::size_t idx : order) {
        const WindowSpec& spec = specs[idx];
        const int guard = spec.guard >= 0 ? spec.guard : default_guard(n, spec.center, spec.horizon);
        check_spec(net, spec, guard);
        while (state.time() < spec.origin) state.step(net[state.time()]);

        LocalWindow& win = out[idx];
        win.n_ = n;
        win.center_ = spec.center;
        win.half_width_ = spec.half_width;
        win.guard_ = guard;
        win.horizon_ = spec.horizon;
        win.origin_ = spec.origin;
        win.scale_ = local_time_scale(n, spec.center);
        win.span_ = static_cast<std::int64_t>(std::floor(spec.horizon * win.scale_ + 1e-9));
        const int reach = win.reach();
        win.events_.assign(static_cast<std::size_t>(2 * reach + 1), {});

        WiringState local = state;
        for (int x = -reach; x <= reach; ++x) slot[static_cast<std::size_t>(local.particle_at(spec.center + x))] = x + reach;
        const int k = spec.center;
        for (std::int64_t j = 0; j < win.span_; ++j) {
            const Letter p = net[spec.origin + j];
            const std::int32_t a = local.particle_at(p);
            const std::int32_t b = local.particle_at(p + 1);
            local.step(p);
            const std::int64_t offset = j + 1;
            if (const int s = slot[static_cast<std::size_t>(a)]; s >= 0) {
                win.events_[static_cast<std::size_t>(s)].push_back({offset, p + 1 - k});
            }
            if (const int s = slot[static_cast<std::size_t>(b)]; s >= 0) {
                win.events_[static_cast<std::size_t>(s)].push_back({offset, p - k});
            }
            const int location = p - k;
            if (location >= -reach && location + 1 <= reach) win.swaps_.push_back({offset, location});
        }
        for (int x = -reach; x <= reach; ++x) slot[static_cast<std::size_t>(state.particle_at(spec.center + x))] = -1;
    }
    return out;
}

LocalWindow extract_window(const SortingNetwork& net, const WindowSpec& spec) {
    return std::move(extract_windows(net, std::span<const WindowSpec>(&spec, 1)).front());
}

std::vector<std::int64_t> spread_origins(int n, int center, double horizon, int count) {
    if (count < 1) throw std::invalid_argument("need at least one origin");
    const auto span = static_cast<std::int64_t>(std::floor(horizon * local_time_scale(n, center) + 1e-9));
    const std::int64_t last = network_length(n) - span;
    if (last < 0) throw WindowError("window longer than the network");
    std::vector<std::int64_t> out;
    for (int i = 0; i < count; ++i) out.push_back(count == 1 ? 0 : last * i / (count - 1));
    return out;
}

std::int64_t swap_count_Q(const LocalWindow& win, int x, double t) {
    const auto ev = win.events(x);
    const std::int64_t limit = win.offset_limit(t);
    return std::upper_bound(ev.begin(), ev.end(), limit,
                            [](std::int64_t lim, const ParticleEvent& e) { return lim < e.offset; }) -
           ev.begin();
}

std::int64_t swap_count_W(const LocalWindow& win, int i, double t) {
    if (i < -win.half_width() || i >= win.half_width()) {
        throw WindowError("location " + std::to_string(i) + " is not strictly inside the window");
    }
    const std::int64_t limit = win.offset_limit(t);
    std::int64_t count = 0;
    for (const auto& s : win.swaps()) {
        if (s.offset > limit) break;
        count += s.location == i;
    }
    return count;
}

bool satisfies_swap_axioms(const LocalWindow& win) {
    const int reach = win.reach();
    struct Jump {
        std::int64_t offset;
        int x;
        int from;
        int to;
    };
    std::vector<Jump> jumps;
    for (int x = -reach; x <= reach; ++x) {
        int pos = x;
        std::int64_t last = 0;
        for (const auto& e : win.events(x)) {
            if (e.offset <= last || std::abs(e.position - pos) != 1) return false;
            jumps.push_back({e.offset, x, pos, e.position});
            pos = e.position;
            last = e.offset;
        }
    }
    std::sort(jumps.begin(), jumps.end(), [](const Jump& a, const Jump& b) { return a.offset < b.offset; });

    std::unordered_map<int, int> occupant;
    for (int x = -reach; x <= reach; ++x) occupant[x] = x;
    for (std::size_t i = 0; i < jumps.size();) {
        std::size_t j = i;
        while (j < jumps.size() && jumps[j].offset == jumps[i].offset) ++j;
        if (j - i > 2) return false;
        if (j - i == 2) {
            const Jump& a = jumps[i];
            const Jump& b = jumps[i + 1];
            if (a.from != b.to || a.to != b.from) return false;
        }
        for (std::size_t q = i; q < j; ++q) {
            auto it = occupant.find(jumps[q].from);
            if (it != occupant.end() && it->second == jumps[q].x) occupant.erase(it);
        }
        for (std::size_t q = i; q < j; ++q) {
            if (!occupant.emplace(jumps[q].to, jumps[q].x).second) return false;
        }
        i = j;
    }
    // Jumps recorded at a swap offset sit on that swap's two positions.
    std::size_t cursor = 0;
    for (const auto& s : win.swaps()) {
        if (s.location < -win.half_width() || s.location >= win.half_width()) continue;
        while (cursor < jumps.size() && jumps[cursor].offset < s.offset) ++cursor;
        std::size_t hits = 0;
        for (std::size_t q = cursor; q < jumps.size() && jumps[q].offset == s.offset; ++q) {
            const int lo = std::min(jumps[q].from, jumps[q].to);
            if (lo != s.location) return false;
            ++hits;
        }
        if (hits > 2) return false;
    }
    return true;
}

std::vector<SpeedSample> speed_estimates(const LocalWindow& win, std::span<const double> times) {
    std::vector<SpeedSample> out;
    for (const double t : times) {
        if (!(t > 0) || t > win.horizon() + 1e-12) throw WindowError("speed time outside (0, T]");
        for (int x = -win.half_width(); x <= win.half_width(); ++x) {
            out.push_back({x, t, (win.position(x, t) - x) / t});
        }
    }
    return out;
}

void EmpiricalSpeedDist::add(double speed, std::int64_t group) {
    speeds_.push_back(speed);
    groups_.push_back(group);
    sorted_.clear();
}

void EmpiricalSpeedDist::add(std::span<const SpeedSample> samples, std::int64_t group) {
    for (const auto& s : samples) add(s.speed, group);
}

void EmpiricalSpeedDist::prepare() const {
    if (sorted_.size() == speeds_.size() && !speeds_.empty()) return;
    sorted_ = speeds_;
    std::sort(sorted_.begin(), sorted_.end());
    prefix_.assign(sorted_.size() + 1, 0);
    for (std::size_t i = 0; i < sorted_.size(); ++i) prefix_[i + 1] = prefix_[i] + sorted_[i];
}

std::vector<double> EmpiricalSpeedDist::histogram(double lo, double hi, double width) const {
    const auto counts = histogram_counts(speeds_, lo, hi, width);
    std::vector<double> mass(counts.size(), 0);
    if (speeds_.empty()) return mass;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        mass[i] = static_cast<double>(counts[i]) / static_cast<double>(speeds_.size());
    }
    return mass;
}

double EmpiricalSpeedDist::mean() const {
    if (speeds_.empty()) throw std::invalid_argument("mean of an empty speed distribution");
    return std::accumulate(speeds_.begin(), speeds_.end(), 0.0) / static_cast<double>(speeds_.size());
}

double EmpiricalSpeedDist::fraction_within(double lo, double hi) const {
    if (speeds_.empty()) return 0;
    const auto inside = std::count_if(speeds_.begin(), speeds_.end(), [&](double s) { return s >= lo && s <= hi; });
    return static_cast<double>(inside) / static_cast<double>(speeds_.size());
}

double EmpiricalSpeedDist::abs_deviation_from(double s) const {
    if (speeds_.empty()) throw std::invalid_argument("empty speed distribution");
    prepare();
    const auto m = static_cast<double>(sorted_.size());
    const auto below = static_cast<std::size_t>(std::lower_bound(sorted_.begin(), sorted_.end(), s) - sorted_.begin());
    const double sum_below = prefix_[below];
    const double sum_above = prefix_.back() - sum_below;
    const auto nb = static_cast<double>(below);
    return (nb * s - sum_below + sum_above - (m - nb) * s) / m;
}

namespace {

// Sum over unordered pairs of |a_i - a_j|.
double pair_abs_sum(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    double total = 0;
    const auto m = static_cast<double>(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) total += v[k] * (2.0 * static_cast<double>(k) - (m - 1));
    return total;
}

}  // namespace

double mean_abs_speed_gap(const EmpiricalSpeedDist& dist) {
    if (dist.size() < 2) throw std::invalid_argument("mean_abs_speed_gap needs at least two samples");
    std::map<std::int64_t, std::vector<double>> by_group;
    for (std::size_t i = 0; i < dist.size(); ++i) by_group[dist.groups()[i]].push_back(dist.speeds()[i]);
    double within = 0;
    double within_pairs = 0;
    for (auto& [g, v] : by_group) {
        const auto k = static_cast<double>(v.size());
        within_pairs += k * (k - 1) / 2;
        within += pair_abs_sum(std::move(v));
    }
    const auto m = static_cast<double>(dist.size());
    const double cross_pairs = m * (m - 1) / 2 - within_pairs;
    if (cross_pairs <= 0) throw std::invalid_argument("mean_abs_speed_gap needs samples from two groups");
    const auto all = dist.speeds();
    return (pair_abs_sum(std::vector<double>(all.begin(), all.end())) - within) / cross_pairs;
}

double empirical_abs_gap(std::span<const double> speeds) {
    if (speeds.empty()) throw std::invalid_argument("empirical_abs_gap of empty data");
    const auto m = static_cast<double>(speeds.size());
    return 2 * pair_abs_sum(std::vector<double>(speeds.begin(), speeds.end())) / (m * m);
}

std::vector<SpeedBin> swap_rate_vs_speed(std::span<const LocalWindow> windows, double t, double bin_width) {
    if (bin_width <= 0) throw std::invalid_argument("bin width must be positive");
    EmpiricalSpeedDist dist;
    std::vector<std::pair<double, double>> samples;  // (speed, rate)
    for (std::size_t w = 0; w < windows.size(); ++w) {
        const auto& win = windows[w];
        if (!(t > 0) || t > win.horizon() + 1e-12) throw WindowError("swap-rate time outside (0, T]");
        for (int x = -win.half_width(); x <= win.half_width(); ++x) {
            const double speed = (win.position(x, t) - x) / t;
            samples.emplace_back(speed, static_cast<double>(swap_count_Q(win, x, t)) / t);
            dist.add(speed, static_cast<std::int64_t>(w));
        }
    }
    if (samples.empty()) return {};
    std::map<std::int64_t, std::vector<std::pair<double, double>>> bins;
    for (const auto& s : samples) bins[static_cast<std::int64_t>(std::floor(s.first / bin_width))].push_back(s);
    std::vector<SpeedBin> out;
    for (std::int64_t b = bins.begin()->first; b <= bins.rbegin()->first; ++b) {
        SpeedBin bin;
        bin.lo = static_cast<double>(b) * bin_width;
        bin.hi = bin.lo + bin_width;
        auto it = bins.find(b);
        if (it != bins.end()) {
            const auto& v = it->second;
            bin.count = static_cast<std::int64_t>(v.size());
            double ss = 0, sr = 0;
            for (const auto& [s, r] : v) {
                ss += s;
                sr += r;
            }
            bin.mean_speed = ss / static_cast<double>(v.size());
            bin.mean_rate = sr / static_cast<double>(v.size());
            double var = 0;
            for (const auto& [s, r] : v) var += (r - bin.mean_rate) * (r - bin.mean_rate);
            if (v.size() > 1) bin.rate_stderr = std::sqrt(var / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
            bin.predicted = dist.abs_deviation_from(bin.mean_speed);
        }
        out.push_back(bin);
    }
    return out;
}

std::pair<std::int64_t, std::int64_t> line_crossings(const LocalWindow& win, double c, double d, double t) {
    if (t < 0 || t > win.horizon() + 1e-12) throw WindowError("crossing time outside [0, T]");
    const double end = c * t + d;
    const double w = win.half_width();
    if (std::abs(d) > w || std::abs(end) > w) throw WindowError("line leaves the window");
    std::int64_t up = 0, down = 0;
    for (int x = -win.reach(); x <= win.reach(); ++x) {
        const int u = win.position(x, t);
        if (x <= d && u > end) ++up;
        if (x >= d && u < end) ++down;
    }
    return {up, down};
}

void write_event_log_csv(std::ostream& os, std::span<const LocalWindow> windows, bool header) {
    std::ostringstream out;
    out.precision(17);
    if (header) out << "window_id,particle,local_time_num,local_time_den,new_position\n";
    for (std::size_t w = 0; w < windows.size(); ++w) {
        const auto& win = windows[w];
        for (int x = -win.reach(); x <= win.reach(); ++x) {
            for (const auto& e : win.events(x)) {
                out << w << ',' << x << ',' << e.offset << ',' << win.scale() << ',' << e.position << '\n';
            }
        }
    }
    os << out.str();
}

}  // namespace rsn
