#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "rsn/core.hpp"
#include "rsn/rng.hpp"
#include "rsn/sampler.hpp"
#include "rsn/stats.hpp"

using namespace rsn;

namespace {

std::vector<double> sampled(int grid, double (*f)(double)) {
    std::vector<double> v;
    for (int j = 0; j <= grid; ++j) v.push_back(f(static_cast<double>(j) / grid));
    return v;
}

double cos_path(double t) { return std::cos(kPi * t); }
double shifted_sine(double t) { return 0.7 * std::sin(kPi * t + 0.4); }
double edge_path(double t) { return 0.9 * std::cos(kPi * t); }
double constant_path(double) { return 0.25; }

}  // namespace

TEST_CASE("ellipse predicate: disk at t = 1/2, segments at t = 0 and t = 1") {
    const ArchEllipse half{0.5};
    CHECK_FALSE(half.degenerate());
    CHECK(half.contains({0.6, 0.79}));
    CHECK_FALSE(half.contains({0.6, 0.81}));
    CHECK_FALSE(half.contains({0.0, 1.2}));
    CHECK_FALSE(half.contains({0.0, 1.2}, 0.05));
    CHECK(half.contains({0.0, 1.02}, 0.05));
    CHECK_FALSE(half.contains({1.01, 0}, 10));

    const ArchEllipse start{0};
    CHECK(start.degenerate());
    CHECK(start.contains({0.3, 0.3}));
    CHECK_FALSE(start.contains({0.3, 0.31}));
    CHECK(start.contains({0.3, 0.31}, 0.02));
    const ArchEllipse end{1};
    CHECK(end.degenerate());
    CHECK(end.contains({0.3, -0.3}));

    for (double t : {0.2, 0.5, 0.8}) {
        const ArchEllipse e{t};
        for (const auto& p : e.boundary(64)) CHECK(e.contains({p.x * 0.999, p.z * 0.999}, 1e-9));
    }
}

TEST_CASE("outside fraction is monotone in the margin and counts fabricated points") {
    const auto net = sample_indexed(60, 1, 0);
    auto m = eta_t(net, 0.5);
    double prev = 1;
    for (double margin : {0.0, 0.01, 0.05, 0.2, 1.0}) {
        const double f = ellipse_outside_fraction(m, margin);
        CHECK(f <= prev);
        prev = f;
    }
    EmpiricalMeasure2D fake{0.5, {{0, 1.2}, {0, 0}, {0.5, 0.5}, {0.1, -0.2}}};
    CHECK(ellipse_outside_fraction(fake, 0.05) == doctest::Approx(0.25));
    CHECK_THROWS(ellipse_outside_fraction(fake, -1));
}

TEST_CASE("eta_t rows are the scaled positions") {
    const SortingNetwork net{3, {1, 2, 1}};
    const auto m = eta_t(net, 1);
    REQUIRE(m.points.size() == 3);
    CHECK(m.points[0].x == doctest::Approx(2.0 / 3 - 1));
    CHECK(m.points[0].z == doctest::Approx(1));
    const auto m0 = eta_t(net, 0);
    for (const auto& p : m0.points) CHECK(p.x == p.z);
}

TEST_CASE("patience sorting matches the quadratic recurrence") {
    for (int n = 2; n <= 8; ++n) {
        for (std::uint64_t i = 0; i < 20; ++i) {
            const auto net = sample_indexed(n, 5, i);
            const std::vector<int> w(net.swaps().begin(), net.swaps().end());
            for (std::size_t len = 0; len <= w.size(); ++len) {
                const std::vector<int> prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(len));
                const std::vector<Letter> pl(prefix.begin(), prefix.end());
                CHECK(lis_length(pl) == oracle::lis_dp(prefix));
            }
            const std::vector<double> times{1.0, 0.0, 0.5, 0.25};
            const auto prof = lis_prefix_profile(net, times);
            for (std::size_t k = 0; k < times.size(); ++k) {
                const auto len = prefix_length(net.size(), times[k]);
                const std::vector<int> prefix(w.begin(), w.begin() + len);
                CHECK(prof[k] == doctest::Approx(static_cast<double>(oracle::lis_dp(prefix)) / n));
            }
        }
    }
    CHECK(prefix_length(6, 0.5) == 3);
    CHECK(prefix_length(6, 0.51) == 4);
    CHECK(prefix_length(10, 0.3) == 3);
}

TEST_CASE("Hölder ratio of cos(pi t) on a fine grid") {
    const auto path = sampled(400, cos_path);
    // The supremum over the grid tends to a value below sqrt(8).
    const double h = holder_max(path);
    CHECK(h < std::sqrt(8.0));
    CHECK(h > 2.0);
    CHECK_THROWS(holder_max(std::vector<double>{0, 1}));
}

TEST_CASE("sine curves saturate the Lipschitz bound but do not exceed it") {
    CHECK(lipschitz_violation(sampled(200, cos_path)) <= 1e-9);
    CHECK(lipschitz_violation(sampled(200, edge_path)) <= 1e-9);
    CHECK(lipschitz_violation(sampled(200, constant_path)) <= 0);
    // A jump from -1 to 1 in one step violates it by almost 2.
    std::vector<double> jump(11, -1.0);
    for (std::size_t j = 6; j < jump.size(); ++j) jump[j] = 1;
    CHECK(lipschitz_violation(jump) == doctest::Approx(2.0));
}

TEST_CASE("edge deviation and band selection") {
    const auto dev = edge_sine_deviation(sampled(100, edge_path), 0.2);
    REQUIRE(dev);
    CHECK(dev->top);
    CHECK(dev->eps == doctest::Approx(0.1));
    CHECK(dev->dev == doctest::Approx(0.1));
    CHECK_FALSE(edge_sine_deviation(sampled(100, edge_path), 0.05));
    const auto exact = edge_sine_deviation(sampled(100, cos_path), 0.05);
    REQUIRE(exact);
    CHECK(exact->dev <= 1e-12);
}

TEST_CASE("sine fit recovers amplitude and phase exactly") {
    const auto fit = sine_fit(sampled(100, shifted_sine));
    CHECK(std::abs(fit.amplitude - 0.7) < 1e-9);
    CHECK(std::abs(fit.phase - 0.4) < 1e-9);
    CHECK(fit.residual < 1e-9);
    const auto zero = sine_fit(std::vector<double>(5, 0.0));
    CHECK(zero.amplitude == 0);
    CHECK(zero.phase == 0);
}

TEST_CASE("Z functions are constant along sine curves") {
    const int grid = 40;
    const int n = 1;
    std::vector<double> values;
    for (int j = 0; j <= grid; ++j) values.push_back(shifted_sine(static_cast<double>(j) / grid));
    const TrajectoryGrid traj{n, grid, values};
    const auto z = z_functions(traj, 1);
    CHECK(z.times.size() == grid / 2 + 1);
    CHECK(z.scaled_dispersion < 1e-20);
    CHECK(std::abs(z.values.front() - std::polar(0.7, kPi / 2 - 0.4)) < 1e-12);
    const TrajectoryGrid odd{1, 3, {0, 0, 0, 0}};
    CHECK_THROWS(z_functions(odd, 1));
}

TEST_CASE("quantiles and CSV schemas") {
    CHECK(quantile({3, 1, 2, 4}, 0.5) == doctest::Approx(2.5));
    CHECK(quantile({5}, 0.9) == 5);
    const std::vector<double> v{1, 2, 3};
    const auto s = summarize(v);
    CHECK(s.count == 3);
    CHECK(s.mean == doctest::Approx(2));
    CHECK(s.stddev == doctest::Approx(1));

    std::ostringstream os;
    write_statistic_csv(os, "holder", v);
    const std::string text = os.str();
    CHECK(text.rfind("statistic,scope,key,value\nholder,network,0,1\n", 0) == 0);
    CHECK(text.find("holder,aggregate,median,2\n") != std::string::npos);

    const std::vector<double> times{0.25, 0.5};
    CHECK(csv_metadata(9, 100, 50, times) == "# seed=9 n=100 G=50 t_grid=0.25;0.5");
    std::ostringstream sc;
    const std::vector<Point2> pts{{0.5, -0.25}};
    write_scatter_csv(sc, pts, "# c");
    CHECK(sc.str() == "# c\nx,z\n0.5,-0.25\n");
}
