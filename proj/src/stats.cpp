#include "rsn/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rsn {

namespace {

std::int64_t floor_index(std::int64_t length, double t) {
    const auto v = static_cast<std::int64_t>(std::floor(static_cast<long double>(length) * t + 1e-9L));
    return std::clamp<std::int64_t>(v, 0, length);
}

double grid_time(std::size_t j, std::size_t size) {
    return static_cast<double>(j) / static_cast<double>(size - 1);
}

}  // namespace

EmpiricalMeasure2D eta_t(const SortingNetwork& net, double t) {
    if (!(t >= 0 && t <= 1)) throw std::invalid_argument("eta_t: t must lie in [0, 1]");
    const int n = net.n();
    const auto pos = apply_prefix(net.sequence(), floor_index(net.size(), t));
    EmpiricalMeasure2D m{t, {}};
    m.points.reserve(static_cast<std::size_t>(n));
    for (int x = 1; x <= n; ++x) {
        m.points.push_back({scale_position(x, n), scale_position(pos[static_cast<std::size_t>(x - 1)], n)});
    }
    return m;
}

ArchEllipse::ArchEllipse(double t)
    : t_{t}, cos_{std::cos(kPi * t)}, sin_{std::sin(kPi * t)}, degenerate_{std::abs(std::sin(kPi * t)) < 1e-12} {
    if (degenerate_) {
        sin_ = 0;
        cos_ = cos_ > 0 ? 1.0 : -1.0;
    }
}

bool ArchEllipse::contains(Point2 p, double margin) const noexcept {
    if (std::abs(p.x) > 1) return false;
    const double d = p.z - p.x * cos_;
    if (degenerate_) return std::abs(d) <= margin;
    return d * d <= (1 - p.x * p.x) * sin_ * sin_ + margin;
}

std::vector<Point2> ArchEllipse::boundary(int points) const {
    std::vector<Point2> out;
    out.reserve(static_cast<std::size_t>(points) + 1);
    for (int i = 0; i <= points; ++i) {
        const double a = 2 * kPi * i / points;
        out.push_back({std::cos(a), std::cos(a - kPi * t_)});
    }
    return out;
}

double ellipse_outside_fraction(const EmpiricalMeasure2D& m, double margin) {
    if (margin < 0) throw std::invalid_argument("margin must be >= 0");
    if (m.points.empty()) return 0;
    const ArchEllipse e{m.t};
    const auto outside = std::count_if(m.points.begin(), m.points.end(),
                                       [&](Point2 p) { return !e.contains(p, margin); });
    return static_cast<double>(outside) / static_cast<double>(m.points.size());
}

std::int64_t lis_length(std::span<const Letter> word) {
    std::vector<Letter> tails;
    for (const Letter k : word) {
        auto it = std::lower_bound(tails.begin(), tails.end(), k);
        if (it == tails.end()) {
            tails.push_back(k);
        } else {
            *it = k;
        }
    }
    return static_cast<std::int64_t>(tails.size());
}

std::int64_t prefix_length(std::int64_t length, double t) {
    const auto v = static_cast<std::int64_t>(std::ceil(static_cast<long double>(length) * t - 1e-9L));
    return std::clamp<std::int64_t>(v, 0, length);
}

std::vector<double> lis_prefix_profile(const SortingNetwork& net, std::span<const double> times) {
    std::vector<std::pair<std::int64_t, std::size_t>> order;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] >= 0 && times[i] <= 1)) throw std::invalid_argument("LIS time outside [0, 1]");
        order.emplace_back(prefix_length(net.size(), times[i]), i);
    }
    std::sort(order.begin(), order.end());
    std::vector<double> out(times.size(), 0);
    std::vector<Letter> tails;
    std::int64_t done = 0;
    for (const auto& [len, idx] : order) {
        for (; done < len; ++done) {
            const Letter k = net[done];
            auto it = std::lower_bound(tails.begin(), tails.end(), k);
            if (it == tails.end()) {
                tails.push_back(k);
            } else {
                *it = k;
            }
        }
        out[idx] = static_cast<double>(tails.size()) / net.n();
    }
    return out;
}

double holder_max(std::span<const double> path) {
    if (path.size() < 3) throw std::invalid_argument("holder_max needs a grid with G >= 2");
    const auto size = path.size();
    double best = 0;
    for (std::size_t s = 0; s < size; ++s) {
        for (std::size_t t = s + 1; t < size; ++t) {
            const double ratio = std::abs(path[t] - path[s]) / std::sqrt(grid_time(t - s, size));
            best = std::max(best, ratio);
        }
    }
    return best;
}

double holder_max(const TrajectoryGrid& traj, int particle) { return holder_max(traj.path(particle)); }

double holder_max_all(const TrajectoryGrid& traj) {
    double best = 0;
    for (int x = 1; x <= traj.n(); ++x) best = std::max(best, holder_max(traj, x));
    return best;
}

double lipschitz_violation(std::span<const double> path) {
    if (path.size() < 2) throw std::invalid_argument("lipschitz_violation needs at least two grid points");
    const auto size = path.size();
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < size; ++p) {
        double m = std::abs(path[p]);
        for (std::size_t q = p + 1; q < size; ++q) {
            m = std::min(m, std::abs(path[q]));
            const double bound = kPi * grid_time(q - p, size) * std::sqrt(std::max(0.0, 1 - m * m));
            worst = std::max(worst, std::abs(path[q] - path[p]) - bound);
        }
    }
    return worst;
}

double lipschitz_violation(const TrajectoryGrid& traj, int particle) {
    return lipschitz_violation(traj.path(particle));
}

std::optional<EdgeDeviation> edge_sine_deviation(std::span<const double> path, double band) {
    if (path.size() < 2) throw std::invalid_argument("edge_sine_deviation needs at least two grid points");
    const bool top = path.front() >= 0;
    const double eps = 1 - std::abs(path.front());
    if (eps > band) return std::nullopt;
    const double sign = top ? 1.0 : -1.0;
    double dev = 0;
    for (std::size_t j = 0; j < path.size(); ++j) {
        dev = std::max(dev, std::abs(path[j] - sign * std::cos(kPi * grid_time(j, path.size()))));
    }
    return EdgeDeviation{top, eps, dev};
}

std::optional<EdgeDeviation> edge_sine_deviation(const TrajectoryGrid& traj, int particle, double band) {
    return edge_sine_deviation(traj.path(particle), band);
}

SineFit sine_fit(std::span<const double> path) {
    if (path.size() < 3) throw std::invalid_argument("sine_fit needs at least three grid points");
    double ss = 0, sc = 0, cc = 0, ys = 0, yc = 0;
    for (std::size_t j = 0; j < path.size(); ++j) {
        const double t = grid_time(j, path.size());
        const double s = std::sin(kPi * t);
        const double c = std::cos(kPi * t);
        ss += s * s;
        sc += s * c;
        cc += c * c;
        ys += path[j] * s;
        yc += path[j] * c;
    }
    const double det = ss * cc - sc * sc;
    const double a = (ys * cc - yc * sc) / det;
    const double b = (yc * ss - ys * sc) / det;
    SineFit fit;
    fit.amplitude = std::hypot(a, b);
    if (fit.amplitude > 0) {
        fit.phase = std::atan2(b, a);
        if (fit.phase <= -kPi) fit.phase = kPi;
    }
    for (std::size_t j = 0; j < path.size(); ++j) {
        const double t = grid_time(j, path.size());
        fit.residual = std::max(fit.residual, std::abs(path[j] - (a * std::sin(kPi * t) + b * std::cos(kPi * t))));
    }
    return fit;
}

SineFit sine_fit(const TrajectoryGrid& traj, int particle) { return sine_fit(traj.path(particle)); }

ZPath z_functions(const TrajectoryGrid& traj, int particle) {
    const int grid = traj.grid_size();
    if (grid % 2 != 0) throw std::invalid_argument("z_functions needs an even grid size");
    const int half = grid / 2;
    ZPath z;
    std::complex<double> mean{};
    for (int j = 0; j <= half; ++j) {
        const double t = traj.time(j);
        const std::complex<double> w{traj.at(j, particle), traj.at(j + half, particle)};
        z.times.push_back(t);
        z.values.push_back(std::polar(1.0, kPi * t) * w);
        mean += z.values.back();
    }
    mean /= static_cast<double>(z.values.size());
    double var = 0;
    for (const auto& v : z.values) var += std::norm(v - mean);
    z.scaled_dispersion = traj.n() * var / static_cast<double>(z.values.size());
    return z;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw std::invalid_argument("quantile of empty data");
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

Summary summarize(std::span<const double> values) {
    Summary s;
    s.count = static_cast<std::int64_t>(values.size());
    if (values.empty()) return s;
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0;
    for (const double x : v) ss += (x - s.mean) * (x - s.mean);
    s.stddev = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0;
    s.min = v.front();
    s.max = v.back();
    s.q05 = quantile(v, 0.05);
    s.q25 = quantile(v, 0.25);
    s.median = quantile(v, 0.5);
    s.q75 = quantile(v, 0.75);
    s.q95 = quantile(v, 0.95);
    return s;
}

std::string csv_metadata(std::uint64_t seed, int n, int grid, std::span<const double> times) {
    std::ostringstream os;
    os << "# seed=" << seed << " n=" << n << " G=" << grid << " t_grid=";
    for (std::size_t i = 0; i < times.size(); ++i) os << (i ? ";" : "") << times[i];
    return os.str();
}

void write_statistic_csv(std::ostream& os, const std::string& statistic,
                         std::span<const double> per_network, bool header) {
    std::ostringstream out;
    out.precision(12);
    if (header) out << "statistic,scope,key,value\n";
    for (std::size_t i = 0; i < per_network.size(); ++i) {
        out << statistic << ",network," << i << ',' << per_network[i] << '\n';
    }
    const Summary s = summarize(per_network);
    const std::pair<const char*, double> rows[] = {
        {"count", static_cast<double>(s.count)}, {"mean", s.mean},  {"stddev", s.stddev},
        {"min", s.min},     {"q05", s.q05}, {"q25", s.q25},   {"median", s.median},
        {"q75", s.q75},     {"q95", s.q95}, {"max", s.max}};
    for (const auto& [key, value] : rows) out << statistic << ",aggregate," << key << ',' << value << '\n';
    os << out.str();
}

void write_scatter_csv(std::ostream& os, std::span<const Point2> points, const std::string& comment) {
    std::ostringstream out;
    out.precision(10);
    if (!comment.empty()) out << comment << '\n';
    out << "x,z\n";
    for (const auto& p : points) out << p.x << ',' << p.z << '\n';
    os << out.str();
}

}  // namespace rsn
