#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "rsn/rng.hpp"
#include "rsn/sampler.hpp"

using namespace rsn;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream is{p, std::ios::binary};
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("rsn_test_" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("streams are reproducible and distinct across indices") {
    Stream a{5, 0}, b{5, 0}, c{5, 1}, d{6, 0};
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
    CHECK(x != d());
    Stream e{1, 2};
    for (int i = 0; i < 1000; ++i) {
        CHECK(e.below(7) < 7);
        const double u = e.uniform();
        CHECK(u >= 0);
        CHECK(u < 1);
    }
}

TEST_CASE("bounded draws are unbiased") {
    Stream s{11, 3};
    std::vector<std::int64_t> counts(6, 0);
    for (int i = 0; i < 60000; ++i) counts[s.below(6)]++;
    for (const auto c : counts) CHECK(std::abs(c - 10000) < 500);
}

TEST_CASE("samples are valid networks at every size tried") {
    for (int n : {2, 3, 4, 7, 30, 150}) {
        for (std::uint64_t i = 0; i < 5; ++i) {
            const auto net = sample_indexed(n, 3, i);
            CHECK(oracle::sorts(n, {net.swaps().begin(), net.swaps().end()}));
        }
    }
    CHECK(sample_indexed(2, 0, 0).swaps()[0] == 1);
}

TEST_CASE("batches do not depend on the worker count") {
    const auto one = sample_batch(12, 24, 77, 1);
    const auto four = sample_batch(12, 24, 77, 4);
    CHECK(one == four);
    for (std::size_t i = 0; i < one.size(); ++i) CHECK(one[i] == sample_indexed(12, 77, i));
}

TEST_CASE("batch directories are byte-identical on re-runs") {
    const auto a = scratch("batch_a");
    const auto b = scratch("batch_b");
    const auto ma = write_batch(a, 6, 10, 42, 1);
    const auto mb = write_batch(b, 6, 10, 42, 3);
    REQUIRE(ma.files.size() == 10);
    CHECK(ma.files.front() == "net_000000.sortnet");
    for (const auto& f : ma.files) CHECK(slurp(a / f) == slurp(b / f));
    CHECK(slurp(a / "manifest.json") == slurp(b / "manifest.json"));

    const auto j = nlohmann::json::parse(slurp(a / "manifest.json"));
    CHECK(j["n"] == 6);
    CHECK(j["count"] == 10);
    CHECK(j["seed"] == 42);
    CHECK(j["format_version"] == 1);
    CHECK(j["files"].size() == 10);
    CHECK(j.contains("generator"));
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("invalid batch parameters are rejected") {
    CHECK_THROWS(sample_batch(1, 1, 0, 1));
    CHECK_THROWS_AS(sample_batch(4, 0, 0, 1), std::invalid_argument);
}
