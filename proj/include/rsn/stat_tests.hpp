// Classical hypothesis tests used by the verification suites.

#ifndef RSN_STAT_TESTS_HPP
#define RSN_STAT_TESTS_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace rsn {

struct TestResult {
    double statistic = 0;
    double dof = 0;
    double p_value = 1;
};

/// Pearson chi-square against equal cell probabilities.
TestResult chi_square_uniform(std::span<const std::int64_t> counts);

/// Pearson chi-square test of homogeneity for two count vectors over the
/// same bins. Bins empty in both samples are dropped.
TestResult chi_square_two_sample(std::span<const std::int64_t> a, std::span<const std::int64_t> b);

/// Sign-flip symmetry of a sample about 0. Values are binned by |s| with the
/// given width; within each bin the positive count is Binomial(k, 1/2)
/// under symmetry. Zeros carry no sign information and are ignored.
TestResult sign_flip_symmetry(std::span<const double> samples, double bin_width);

/// Welch two-sample t test for equal means (normal approximation to the
/// t distribution with Welch-Satterthwaite degrees of freedom).
TestResult welch_t(std::span<const double> a, std::span<const double> b);

/// Upper tail of the chi-square distribution.
double chi_square_sf(double statistic, double dof);
/// Two-sided normal p-value for a z score.
double normal_two_sided(double z);

/// Bin index counts of `samples` over [lo, hi) with the given width;
/// out-of-range samples go to the end bins.
std::vector<std::int64_t> histogram_counts(std::span<const double> samples, double lo, double hi,
                                           double width);

}  // namespace rsn

#endif  // RSN_STAT_TESTS_HPP
