// Global-scaling diagnostics of sorting networks.
//
// Paths passed as spans are samples of a trajectory on the uniform grid
// t_j = j / G, j = 0..G (so G = size - 1).

#ifndef RSN_STATS_HPP
#define RSN_STATS_HPP

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rsn/core.hpp"

namespace rsn {

inline constexpr double kPi = 3.14159265358979323846;

/// Default grid size for trajectory diagnostics. Pairwise scans cost O(G^2)
/// per particle.
inline constexpr int kDefaultGrid = 200;

// ---------------------------------------------------------------------------
// Empirical permutation-matrix measures and their elliptical support.

struct Point2 {
    double x;  ///< scaled start position
    double z;  ///< scaled position at time t
};

struct EmpiricalMeasure2D {
    double t = 0;
    std::vector<Point2> points;  ///< entry i-1 belongs to particle i
};

/// Points (sigma_G(i, 0), sigma_G(i, t)) using swap index floor(N t).
EmpiricalMeasure2D eta_t(const SortingNetwork& net, double t);

/// Support of the Archimedean measure at time t:
///   |x| <= 1 and (z - x cos(pi t))^2 <= (1 - x^2) sin^2(pi t).
/// At sin(pi t) = 0 the ellipse is the segment z = x cos(pi t).
class ArchEllipse {
public:
    explicit ArchEllipse(double t);

    double time() const noexcept { return t_; }
    bool degenerate() const noexcept { return degenerate_; }
    /// Membership with additive slack: the squared inequality gets `margin`
    /// on its right side; the degenerate segment uses |z - x cos(pi t)| <= margin.
    bool contains(Point2 p, double margin = 0) const noexcept;
    /// Closed boundary polyline (x, z) = (cos a, cos(a - pi t)), `points` vertices.
    std::vector<Point2> boundary(int points = 256) const;

private:
    double t_;
    double cos_;
    double sin_;
    bool degenerate_;
};

/// Fraction of points outside ArchEllipse(m.t) at the given margin.
double ellipse_outside_fraction(const EmpiricalMeasure2D& m, double margin);

// ---------------------------------------------------------------------------
// Longest increasing subsequences of swap prefixes.

/// Length of the longest strictly increasing subsequence (patience sorting).
std::int64_t lis_length(std::span<const Letter> word);

/// L_n(t) / n for each t, where L_n(t) is the strict LIS of the prefix
/// (k_1, ..., k_ceil(N t)). One incremental pass over the longest prefix.
std::vector<double> lis_prefix_profile(const SortingNetwork& net, std::span<const double> times);

/// ceil(N t), robust to rounding when N t is an integer.
std::int64_t prefix_length(std::int64_t length, double t);

// ---------------------------------------------------------------------------
// Trajectory regularity.

/// max over grid pairs s < t of |Y(t) - Y(s)| / sqrt(t - s). Needs G >= 2.
double holder_max(std::span<const double> path);
double holder_max(const TrajectoryGrid& traj, int particle);
/// Maximum of holder_max over all particles.
double holder_max_all(const TrajectoryGrid& traj);

/// Worst excess over grid pairs p < q of
///   |Y(q) - Y(p)| - pi (q - p) sqrt(1 - m^2),
/// where m is the minimum of |Y| over the grid points in [p, q].
double lipschitz_violation(std::span<const double> path);
double lipschitz_violation(const TrajectoryGrid& traj, int particle);

struct EdgeDeviation {
    bool top;    ///< started near +1 (compared with cos), else near -1 (-cos)
    double eps;  ///< 1 - |Y(0)|
    double dev;  ///< sup over the grid of |Y(t) -+ cos(pi t)|
};

/// Deviation of an edge trajectory from the sine curve it should follow.
/// Returns nullopt (the skipped marker) when 1 - |Y(0)| > band.
std::optional<EdgeDeviation> edge_sine_deviation(std::span<const double> path, double band);
std::optional<EdgeDeviation> edge_sine_deviation(const TrajectoryGrid& traj, int particle, double band);

// ---------------------------------------------------------------------------
// Sine fits and the halfway-rotation functions.

struct SineFit {
    double amplitude = 0;  ///< A >= 0
    double phase = 0;      ///< Theta in (-pi, pi]; 0 when A = 0
    double residual = 0;   ///< sup-norm of the fit error on the grid
};

/// Least squares Y ~ a sin(pi t) + b cos(pi t) = A sin(pi t + Theta).
SineFit sine_fit(std::span<const double> path);
SineFit sine_fit(const TrajectoryGrid& traj, int particle);

struct ZPath {
    std::vector<double> times;                 ///< grid times in [0, 1/2]
    std::vector<std::complex<double>> values;  ///< Z_j(t)
    double scaled_dispersion = 0;              ///< n * mean |Z - mean Z|^2
};

/// Z_j(t) = exp(i pi t) [Y_j(t) + i Y_j(t + 1/2)] on the grid points of
/// [0, 1/2]. Needs an even grid size.
ZPath z_functions(const TrajectoryGrid& traj, int particle);

// ---------------------------------------------------------------------------
// Aggregation and CSV emission.

struct Summary {
    std::int64_t count = 0;
    double mean = 0;
    double stddev = 0;
    double min = 0;
    double q05 = 0;
    double q25 = 0;
    double median = 0;
    double q75 = 0;
    double q95 = 0;
    double max = 0;
};

/// Linear-interpolation quantile of unsorted data, q in [0, 1].
double quantile(std::vector<double> values, double q);
Summary summarize(std::span<const double> values);

/// Leading metadata comment line shared by every CSV the library writes.
std::string csv_metadata(std::uint64_t seed, int n, int grid, std::span<const double> times);

/// Schema: statistic,scope,key,value. One "network" row per value (key is
/// the network index) followed by "aggregate" rows (count, mean, stddev,
/// min, q05, q25, median, q75, q95, max).
void write_statistic_csv(std::ostream& os, const std::string& statistic,
                         std::span<const double> per_network, bool header = true);

/// Schema: x,z.
void write_scatter_csv(std::ostream& os, std::span<const Point2> points, const std::string& comment = {});

}  // namespace rsn

#endif  // RSN_STATS_HPP
