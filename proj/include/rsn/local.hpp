// Finite-n windows onto the local limit of a sorting network.
//
// A window centred at position k (bulk coordinate alpha = 2k/n - 1) relabels
// particles by their offset from k at the window's time origin i0, and runs
// time at the semicircle-rescaled local clock
//     s = (swap index - i0) * sqrt(1 - alpha^2) / n.
// Event times are kept exactly as integer swap offsets; the scale
// n / sqrt(1 - alpha^2) (swaps per unit of local time) converts them to
// floating local time only when a caller asks for it.

#ifndef RSN_LOCAL_HPP
#define RSN_LOCAL_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rsn/core.hpp"

namespace rsn {

/// Raised when a window or line violates its geometric preconditions.
class WindowError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct WindowSpec {
    int center = 0;           ///< k, 1-based global position
    int half_width = 0;       ///< tracked offsets -w..w
    double horizon = 0;       ///< T, in local time
    std::int64_t origin = 0;  ///< i0, swaps applied before local time 0
    int guard = -1;           ///< extra recorded offsets; -1 selects default_guard
};

/// ceil(T (pi + 1) / sqrt(1 - alpha^2)).
int default_guard(int n, int center, double horizon);

/// Swaps per unit of local time at this centre: n / sqrt(1 - alpha^2).
double local_time_scale(int n, int center);

struct ParticleEvent {
    std::int64_t offset;  ///< swaps since the origin (1-based: the offset-th swap of the window)
    int position;         ///< local position after the jump
};

struct SwapEvent {
    std::int64_t offset;
    int location;  ///< swap between local positions location and location + 1
};

class LocalWindow {
public:
    int n() const noexcept { return n_; }
    int center() const noexcept { return center_; }
    double alpha() const noexcept { return 2.0 * center_ / n_ - 1.0; }
    int half_width() const noexcept { return half_width_; }
    int guard() const noexcept { return guard_; }
    /// Offsets recorded: -reach()..reach(), reach = w + guard.
    int reach() const noexcept { return half_width_ + guard_; }
    double horizon() const noexcept { return horizon_; }
    std::int64_t origin() const noexcept { return origin_; }
    double scale() const noexcept { return scale_; }
    /// Number of swaps the window covers: floor(T * scale).
    std::int64_t span() const noexcept { return span_; }

    /// Last swap offset with local time <= t.
    std::int64_t offset_limit(double t) const noexcept;

    bool recorded(int x) const noexcept { return x >= -reach() && x <= reach(); }
    bool tracked(int x) const noexcept { return x >= -half_width_ && x <= half_width_; }

    std::span<const ParticleEvent> events(int x) const;
    std::span<const SwapEvent> swaps() const noexcept { return swaps_; }

    /// U(x, t): local position at local time t of the particle that started
    /// at offset x.
    int position(int x, double t) const;

private:
    friend std::vector<LocalWindow> extract_windows(const SortingNetwork&, std::span<const WindowSpec>);

    int n_ = 0;
    int center_ = 0;
    int half_width_ = 0;
    int guard_ = 0;
    double horizon_ = 0;
    std::int64_t origin_ = 0;
    double scale_ = 0;
    std::int64_t span_ = 0;
    std::vector<std::vector<ParticleEvent>> events_;  ///< index x + reach()
    std::vector<SwapEvent> swaps_;                    ///< swaps with both sides recorded
};

/// Extracts one window. Throws WindowError if the recorded range
/// k +- (w + guard) leaves [1, n], if T exceeds the constancy cutoff
/// (n - 1) / (2 sqrt(1 - alpha^2)), or if the window runs past the last swap.
LocalWindow extract_window(const SortingNetwork& net, const WindowSpec& spec);

/// Several windows from one sweep over the network; result order matches
/// `specs`.
std::vector<LocalWindow> extract_windows(const SortingNetwork& net, std::span<const WindowSpec> specs);

/// Evenly spaced window origins: `count` origins in [0, N - span], where
/// span is the swap length of a window of horizon T at this centre.
std::vector<std::int64_t> spread_origins(int n, int center, double horizon, int count);

/// Q(x, t): number of jumps of particle x in local time [0, t].
std::int64_t swap_count_Q(const LocalWindow& win, int x, double t);

/// W(i, t): swaps between local positions i and i+1 in [0, t]. Requires
/// -w <= i < w.
std::int64_t swap_count_W(const LocalWindow& win, int i, double t);

/// Checks the swap-function structure: unit jumps, distinct positions at
/// every time, and jumps that come in swapping pairs.
bool satisfies_swap_axioms(const LocalWindow& win);

struct SpeedSample {
    int x;
    double t;
    double speed;  ///< (U(x, t) - x) / t
};

/// S(x, t) for every tracked particle and every t in `times` (each in (0, T]).
std::vector<SpeedSample> speed_estimates(const LocalWindow& win, std::span<const double> times);

/// Pooled speed samples. `group` tags samples that share a window, so
/// estimators can restrict themselves to independent pairs.
class EmpiricalSpeedDist {
public:
    void add(double speed, std::int64_t group);
    void add(std::span<const SpeedSample> samples, std::int64_t group);

    std::size_t size() const noexcept { return speeds_.size(); }
    std::span<const double> speeds() const noexcept { return speeds_; }
    std::span<const std::int64_t> groups() const noexcept { return groups_; }

    /// Normalized histogram (mass sums to 1) over [lo, hi) with width.
    std::vector<double> histogram(double lo, double hi, double width) const;
    double mean() const;
    double fraction_within(double lo, double hi) const;
    /// Integral of |y - s| against the empirical measure.
    double abs_deviation_from(double s) const;

private:
    std::vector<double> speeds_;
    std::vector<std::int64_t> groups_;
    mutable std::vector<double> sorted_;
    mutable std::vector<double> prefix_;
    void prepare() const;
};

/// U-statistic estimate of E|X - X'|: the mean of |s_i - s_j| over pairs
/// from different groups. Throws std::invalid_argument with fewer than two
/// samples or no cross-group pair.
double mean_abs_speed_gap(const EmpiricalSpeedDist& dist);

/// E|X - X'| for X, X' i.i.d. from the empirical measure itself (all
/// ordered pairs, ties included).
double empirical_abs_gap(std::span<const double> speeds);

struct SpeedBin {
    double lo = 0;
    double hi = 0;
    std::int64_t count = 0;     ///< 0 marks an empty bin (skipped)
    double mean_speed = 0;
    double mean_rate = 0;       ///< mean of Q(x, t) / t in the bin
    double rate_stderr = 0;
    double predicted = 0;       ///< integral |y - mean_speed| d mu_hat(y)
};

/// Bins tracked particles of `windows` by S(x, t) with the given width and
/// compares the mean swap rate in each bin to the first moment of |y - s|
/// under the pooled speed distribution of the same particles.
std::vector<SpeedBin> swap_rate_vs_speed(std::span<const LocalWindow> windows, double t,
                                         double bin_width = 0.25);

/// Net crossings of the line L(s) = c s + d over [0, t]:
///   up   = #{x : x <= L(0), U(x, t) >  L(t)},
///   down = #{x : x >= L(0), U(x, t) <  L(t)},
/// over all recorded particles. Throws WindowError unless L(0) and L(t)
/// lie in [-w, w].
std::pair<std::int64_t, std::int64_t> line_crossings(const LocalWindow& win, double c, double d, double t);

/// Event log, schema window_id,particle,local_time_num,local_time_den,new_position.
/// Local time is local_time_num / local_time_den.
void write_event_log_csv(std::ostream& os, std::span<const LocalWindow> windows, bool header = true);

}  // namespace rsn

#endif  // RSN_LOCAL_HPP
