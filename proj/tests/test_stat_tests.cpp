#include <doctest.h>

#include "rsn/rng.hpp"
#include "rsn/stat_tests.hpp"

using namespace rsn;

TEST_CASE("chi-square against uniform") {
    const std::vector<std::int64_t> flat{100, 100, 100, 100};
    CHECK(chi_square_uniform(flat).statistic == 0);
    CHECK(chi_square_uniform(flat).p_value == doctest::Approx(1));
    const std::vector<std::int64_t> skew{400, 0, 0, 0};
    CHECK(chi_square_uniform(skew).p_value < 1e-10);
    // 1 dof, statistic 3.841 is the 5% point.
    CHECK(chi_square_sf(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-6));
    CHECK_THROWS(chi_square_uniform(std::vector<std::int64_t>{5}));
}

TEST_CASE("two-sample homogeneity") {
    const std::vector<std::int64_t> a{10, 20, 30, 0};
    const std::vector<std::int64_t> b{20, 40, 60, 0};
    const auto r = chi_square_two_sample(a, b);
    CHECK(r.statistic == doctest::Approx(0));
    CHECK(r.dof == 2);
    const std::vector<std::int64_t> c{60, 40, 20, 0};
    // Cross-checked against an independent contingency-table implementation.
    CHECK(chi_square_two_sample(a, c).statistic == doctest::Approx(27.428571428571427));
    CHECK(chi_square_two_sample(a, c).p_value == doctest::Approx(1.1065254090388897e-06).epsilon(1e-6));
}

TEST_CASE("sign-flip symmetry") {
    const std::vector<double> sym{-1, 1, -2, 2, -0.5, 0.5, 0};
    const auto r = sign_flip_symmetry(sym, 1);
    CHECK(r.statistic == 0);
    CHECK(r.p_value == doctest::Approx(1));
    std::vector<double> shifted;
    Stream s{3, 0};
    for (int i = 0; i < 2000; ++i) shifted.push_back(s.uniform() * 2 - 0.7);
    CHECK(sign_flip_symmetry(shifted, 0.25).p_value < 1e-6);
    std::vector<double> fair;
    for (int i = 0; i < 2000; ++i) fair.push_back(s.uniform() * 2 - 1);
    CHECK(sign_flip_symmetry(fair, 0.25).p_value > 1e-4);
}

TEST_CASE("Welch t and normal tails") {
    const std::vector<double> a{1, 2, 3, 4, 5};
    const std::vector<double> b{1, 2, 3, 4, 5};
    CHECK(welch_t(a, b).p_value == doctest::Approx(1));
    const std::vector<double> c{11, 12, 13, 14, 15};
    CHECK(welch_t(a, c).p_value < 1e-4);
    CHECK(normal_two_sided(1.959963984540054) == doctest::Approx(0.05).epsilon(1e-9));
}

TEST_CASE("histogram counts clamp to the end bins") {
    const std::vector<double> v{-5, 0.1, 0.6, 0.99, 7};
    const auto h = histogram_counts(v, 0, 1, 0.5);
    CHECK(h == std::vector<std::int64_t>{2, 3});
    CHECK_THROWS(histogram_counts(v, 1, 0, 0.5));
}
