// Swap-sequence mechanics for sorting networks of the reverse permutation.
//
// Conventions used throughout the library:
//   * particles are labelled 1..n and start at the position equal to their
//     label;
//   * a swap letter k in {1, ..., n-1} exchanges the particles currently at
//     positions k and k+1 (wiring-diagram reading: letters are applied to
//     positions left to right, k_1 first);
//   * sigma(x, t) is the position of particle x after the first floor(t)
//     swaps.

#ifndef RSN_CORE_HPP
#define RSN_CORE_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsn {

using Letter = std::int32_t;

/// Raised for structurally malformed input (wrong length, out-of-range
/// letter, bad file header) and for words that are not sorting networks.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Largest supported number of particles. Memory, not arithmetic, is the cap.
inline constexpr int kMaxParticles = 100000;

constexpr std::int64_t network_length(int n) noexcept {
    return static_cast<std::int64_t>(n) * (n - 1) / 2;
}

/// A word (k_1, ..., k_N) over {1, ..., n-1} with N = n(n-1)/2.
/// Structural invariants are checked on construction.
class SwapSequence {
public:
    SwapSequence(int n, std::vector<Letter> swaps);

    int n() const noexcept { return n_; }
    std::int64_t size() const noexcept { return static_cast<std::int64_t>(swaps_.size()); }
    std::span<const Letter> swaps() const noexcept { return swaps_; }
    Letter operator[](std::int64_t i) const noexcept { return swaps_[static_cast<std::size_t>(i)]; }

    friend bool operator==(const SwapSequence&, const SwapSequence&) = default;
    friend auto operator<=>(const SwapSequence& a, const SwapSequence& b) {
        return a.swaps_ <=> b.swaps_;
    }

private:
    int n_;
    std::vector<Letter> swaps_;
};

/// A swap sequence that sorts 1 2 ... n into n ... 2 1.
class SortingNetwork {
public:
    /// Throws ValidationError unless `seq` is a sorting network.
    explicit SortingNetwork(SwapSequence seq);
    SortingNetwork(int n, std::vector<Letter> swaps);

    int n() const noexcept { return seq_.n(); }
    std::int64_t size() const noexcept { return seq_.size(); }
    std::span<const Letter> swaps() const noexcept { return seq_.swaps(); }
    Letter operator[](std::int64_t i) const noexcept { return seq_[i]; }
    const SwapSequence& sequence() const noexcept { return seq_; }

    friend bool operator==(const SortingNetwork&, const SortingNetwork&) = default;
    friend auto operator<=>(const SortingNetwork& a, const SortingNetwork& b) {
        return a.seq_ <=> b.seq_;
    }

private:
    SwapSequence seq_;
};

/// Incremental evaluation of sigma(., t). Positions and labels are 1-based.
class WiringState {
public:
    explicit WiringState(int n);

    int n() const noexcept { return static_cast<int>(position_.size()) - 1; }
    std::int64_t time() const noexcept { return time_; }

    /// Applies one swap at positions (k, k+1).
    void step(Letter k) noexcept {
        const std::int32_t a = occupant_[static_cast<std::size_t>(k)];
        const std::int32_t b = occupant_[static_cast<std::size_t>(k) + 1];
        occupant_[static_cast<std::size_t>(k)] = b;
        occupant_[static_cast<std::size_t>(k) + 1] = a;
        position_[static_cast<std::size_t>(a)] = k + 1;
        position_[static_cast<std::size_t>(b)] = k;
        ++time_;
    }

    std::int32_t position_of(std::int32_t particle) const noexcept {
        return position_[static_cast<std::size_t>(particle)];
    }
    std::int32_t particle_at(std::int32_t pos) const noexcept {
        return occupant_[static_cast<std::size_t>(pos)];
    }
    /// Index 0 unused; entry x is sigma(x, time()).
    std::span<const std::int32_t> positions() const noexcept { return position_; }
    std::span<const std::int32_t> occupants() const noexcept { return occupant_; }

private:
    std::vector<std::int32_t> position_;
    std::vector<std::int32_t> occupant_;
    std::int64_t time_ = 0;
};

/// sigma(x, N) for x = 1..n, returned as a 0-based vector (entry x-1).
std::vector<std::int32_t> apply(const SwapSequence& seq);

/// sigma(x, t) for x = 1..n after the first t swaps.
std::vector<std::int32_t> apply_prefix(const SwapSequence& seq, std::int64_t t);

/// True iff apply(seq) is the reverse permutation.
bool is_sorting_network(const SwapSequence& seq);

/// Independent criterion: every swap creates a new inversion, i.e. every
/// unordered pair of particles swaps exactly once.
bool every_pair_swaps_once(const SwapSequence& seq);

/// Global trajectories sampled on a uniform time grid of G+1 points.
/// Entry (j, x) is 2 sigma(x, floor(N j / G)) / n - 1.
class TrajectoryGrid {
public:
    TrajectoryGrid(int n, int grid_size, std::vector<double> values);

    int n() const noexcept { return n_; }
    int grid_size() const noexcept { return grid_; }
    double time(int j) const noexcept { return static_cast<double>(j) / grid_; }
    /// Particle labels are 1-based.
    double at(int j, int particle) const noexcept {
        return values_[static_cast<std::size_t>(j) * static_cast<std::size_t>(n_) +
                       static_cast<std::size_t>(particle - 1)];
    }
    std::span<const double> row(int j) const noexcept {
        return std::span<const double>(values_).subspan(
            static_cast<std::size_t>(j) * static_cast<std::size_t>(n_), static_cast<std::size_t>(n_));
    }
    std::vector<double> path(int particle) const;

private:
    int n_;
    int grid_;
    std::vector<double> values_;
};

/// Swap index used for grid row j: floor(N j / G).
constexpr std::int64_t grid_swap_index(std::int64_t length, int j, int grid) noexcept {
    return length * j / grid;
}

constexpr double scale_position(std::int32_t pos, int n) noexcept {
    return 2.0 * pos / n - 1.0;
}

TrajectoryGrid global_trajectories(const SortingNetwork& net, int grid_size);

// Symmetries. Each maps the set of n-element sorting networks onto itself.

/// (k_2, ..., k_N, n - k_1). With 1-based letters the appended letter is
/// n - k_1; this is the time-stationarity map.
SortingNetwork time_shift(const SortingNetwork& net);
/// (k_N, ..., k_1).
SortingNetwork time_reversal(const SortingNetwork& net);
/// (n - k_1, ..., n - k_N).
SortingNetwork reflection(const SortingNetwork& net);

/// Largest n accepted by enumerate_all.
inline constexpr int kMaxEnumerable = 6;

/// All n-element sorting networks in lexicographic order. Throws
/// std::invalid_argument for n < 2 or n > kMaxEnumerable.
std::vector<SortingNetwork> enumerate_all(int n);

// File formats.

/// "sortnet v1 n=<n>" header line, then the N letters separated by spaces.
void write_network(std::ostream& os, const SortingNetwork& net);
/// Parses the format above; throws ValidationError on malformed input or a
/// word that does not sort.
SortingNetwork read_network(std::istream& is);

/// CSV with columns particle,t,position_scaled, preceded by the metadata
/// line `comment` (e.g. from csv_metadata) when non-empty.
void write_trajectory_csv(std::ostream& os, const TrajectoryGrid& grid,
                          std::span<const int> particles, const std::string& comment = {});

}  // namespace rsn

#endif  // RSN_CORE_HPP
