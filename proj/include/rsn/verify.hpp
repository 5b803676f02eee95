// Verification suites behind `rsn verify`.
//
// Each suite samples its own networks from (n, samples, seed), computes its
// statistics and compares them with the limit values. A suite passes when
// every one of its checks passes.

#ifndef RSN_VERIFY_HPP
#define RSN_VERIFY_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace rsn {

struct Check {
    std::string name;
    double statistic = 0;
    double target = 0;
    double tolerance = 0;
    /// "abs": |statistic - target| <= tolerance; "le": statistic <= target +
    /// tolerance; "ge": statistic >= target - tolerance.
    std::string relation = "abs";
    bool pass = false;
};

Check make_check(std::string name, double statistic, double target, double tolerance, std::string relation);

struct SuiteReport {
    std::string suite;
    int n = 0;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    std::vector<Check> checks;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();

    bool pass() const noexcept;
    nlohmann::ordered_json to_json() const;
};

struct VerifyOptions {
    int n = 0;                 ///< 0 selects the suite default
    std::int64_t samples = 0;  ///< networks (or draws, for uniformity); 0 selects the default
    std::uint64_t seed = 1;
    int workers = 0;
};

const std::vector<std::string>& suite_names();

/// Runs one suite. Throws std::invalid_argument for an unknown name or
/// parameters the suite cannot use.
SuiteReport run_suite(std::string_view suite, const VerifyOptions& options);

// Suite parameters that are not command-line flags.
inline constexpr int kHolderGrid = 100;
inline constexpr double kEllipseMargin = 0.05;
inline constexpr double kEdgeBand = 0.05;
inline constexpr int kLocalRateHalfWidth = 10;
inline constexpr int kLocalRateOrigins = 64;
inline constexpr double kSpeedHorizon = 20;
inline constexpr int kSpeedHalfWidth = 10;
inline constexpr double kSpeedBinWidth = 0.25;

}  // namespace rsn

#endif  // RSN_VERIFY_HPP
