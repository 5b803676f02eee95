#include "rsn/core.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

namespace rsn {

SwapSequence::SwapSequence(int n, std::vector<Letter> swaps) : n_{n}, swaps_{std::move(swaps)} {
    if (n < 2 || n > kMaxParticles) {
        throw ValidationError("n=" + std::to_string(n) + " outside [2, " +
                              std::to_string(kMaxParticles) + "]");
    }
    if (static_cast<std::int64_t>(swaps_.size()) != network_length(n)) {
        throw ValidationError("swap sequence has length " + std::to_string(swaps_.size()) +
                              ", expected " + std::to_string(network_length(n)));
    }
    for (std::size_t i = 0; i < swaps_.size(); ++i) {
        if (swaps_[i] < 1 || swaps_[i] > n - 1) {
            throw ValidationError("letter " + std::to_string(swaps_[i]) + " at index " +
                                  std::to_string(i + 1) + " outside [1, " +
                                  std::to_string(n - 1) + "]");
        }
    }
}

SortingNetwork::SortingNetwork(SwapSequence seq) : seq_{std::move(seq)} {
    if (!every_pair_swaps_once(seq_)) {
        throw ValidationError("swap sequence is not a sorting network");
    }
}

SortingNetwork::SortingNetwork(int n, std::vector<Letter> swaps)
    : SortingNetwork(SwapSequence{n, std::move(swaps)}) {}

WiringState::WiringState(int n)
    : position_(static_cast<std::size_t>(n) + 1), occupant_(static_cast<std::size_t>(n) + 1) {
    for (int x = 0; x <= n; ++x) {
        position_[static_cast<std::size_t>(x)] = x;
        occupant_[static_cast<std::size_t>(x)] = x;
    }
}

std::vector<std::int32_t> apply_prefix(const SwapSequence& seq, std::int64_t t) {
    t = std::clamp<std::int64_t>(t, 0, seq.size());
    WiringState state{seq.n()};
    for (std::int64_t i = 0; i < t; ++i) state.step(seq[i]);
    auto pos = state.positions();
    return {pos.begin() + 1, pos.end()};
}

std::vector<std::int32_t> apply(const SwapSequence& seq) { return apply_prefix(seq, seq.size()); }

bool is_sorting_network(const SwapSequence& seq) {
    const auto final_pos = apply(seq);
    const int n = seq.n();
    for (int x = 1; x <= n; ++x) {
        if (final_pos[static_cast<std::size_t>(x - 1)] != n + 1 - x) return false;
    }
    return true;
}

bool every_pair_swaps_once(const SwapSequence& seq) {
    WiringState state{seq.n()};
    for (const Letter k : seq.swaps()) {
        if (state.particle_at(k) > state.particle_at(k + 1)) return false;
        state.step(k);
    }
    return true;
}

TrajectoryGrid::TrajectoryGrid(int n, int grid_size, std::vector<double> values)
    : n_{n}, grid_{grid_size}, values_{std::move(values)} {
    if (grid_size < 1) throw std::invalid_argument("grid size must be >= 1");
    if (values_.size() != static_cast<std::size_t>(grid_size + 1) * static_cast<std::size_t>(n)) {
        throw std::invalid_argument("trajectory grid has wrong number of values");
    }
}

std::vector<double> TrajectoryGrid::path(int particle) const {
    std::vector<double> out(static_cast<std::size_t>(grid_) + 1);
    for (int j = 0; j <= grid_; ++j) out[static_cast<std::size_t>(j)] = at(j, particle);
    return out;
}

TrajectoryGrid global_trajectories(const SortingNetwork& net, int grid_size) {
    if (grid_size < 1) throw std::invalid_argument("grid size must be >= 1");
    const int n = net.n();
    const std::int64_t length = net.size();
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(grid_size + 1) * static_cast<std::size_t>(n));
    WiringState state{n};
    for (int j = 0; j <= grid_size; ++j) {
        const std::int64_t target = grid_swap_index(length, j, grid_size);
        while (state.time() < target) state.step(net[state.time()]);
        for (int x = 1; x <= n; ++x) values.push_back(scale_position(state.position_of(x), n));
    }
    return TrajectoryGrid{n, grid_size, std::move(values)};
}

SortingNetwork time_shift(const SortingNetwork& net) {
    const auto s = net.swaps();
    std::vector<Letter> out(s.begin() + 1, s.end());
    out.push_back(net.n() - s.front());
    return SortingNetwork{net.n(), std::move(out)};
}

SortingNetwork time_reversal(const SortingNetwork& net) {
    const auto s = net.swaps();
    return SortingNetwork{net.n(), std::vector<Letter>(s.rbegin(), s.rend())};
}

SortingNetwork reflection(const SortingNetwork& net) {
    std::vector<Letter> out;
    out.reserve(static_cast<std::size_t>(net.size()));
    for (const Letter k : net.swaps()) out.push_back(net.n() - k);
    return SortingNetwork{net.n(), std::move(out)};
}

namespace {

void enumerate_rec(WiringState& state, std::vector<Letter>& word, std::size_t length,
                   std::vector<SortingNetwork>& out) {
    if (word.size() == length) {
        out.emplace_back(state.n(), word);
        return;
    }
    for (Letter k = 1; k < state.n(); ++k) {
        if (state.particle_at(k) > state.particle_at(k + 1)) continue;
        state.step(k);
        word.push_back(k);
        enumerate_rec(state, word, length, out);
        word.pop_back();
        state.step(k);  // a swap is its own inverse; time() is not used here
    }
}

}  // namespace

std::vector<SortingNetwork> enumerate_all(int n) {
    if (n < 2 || n > kMaxEnumerable) {
        throw std::invalid_argument("enumerate_all supports 2 <= n <= " +
                                    std::to_string(kMaxEnumerable) + ", got " + std::to_string(n));
    }
    WiringState state{n};
    std::vector<Letter> word;
    std::vector<SortingNetwork> out;
    enumerate_rec(state, word, static_cast<std::size_t>(network_length(n)), out);
    return out;
}

void write_network(std::ostream& os, const SortingNetwork& net) {
    os << "sortnet v1 n=" << net.n() << '\n';
    std::string line;
    line.reserve(static_cast<std::size_t>(net.size()) * 5);
    char buf[16];
    for (std::int64_t i = 0; i < net.size(); ++i) {
        if (i > 0) line.push_back(' ');
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, net[i]);
        line.append(buf, end);
    }
    line.push_back('\n');
    os << line;
}

SortingNetwork read_network(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw ValidationError("empty network file");
    constexpr std::string_view prefix = "sortnet v1 n=";
    if (header.rfind(prefix, 0) != 0) throw ValidationError("bad network header: '" + header + "'");
    int n = 0;
    const char* first = header.data() + prefix.size();
    const char* last = header.data() + header.size();
    while (last > first && (last[-1] == '\r' || last[-1] == ' ')) --last;
    auto [ptr, ec] = std::from_chars(first, last, n);
    if (ec != std::errc{} || ptr != last) throw ValidationError("bad n in header: '" + header + "'");
    if (n < 2 || n > kMaxParticles) throw ValidationError("n out of range: " + std::to_string(n));
    std::vector<Letter> letters;
    letters.reserve(static_cast<std::size_t>(network_length(n)));
    std::string token;
    while (is >> token) {
        Letter k = 0;
        auto [p, e] = std::from_chars(token.data(), token.data() + token.size(), k);
        if (e != std::errc{} || p != token.data() + token.size()) {
            throw ValidationError("bad letter token '" + token + "'");
        }
        letters.push_back(k);
    }
    return SortingNetwork{n, std::move(letters)};
}

void write_trajectory_csv(std::ostream& os, const TrajectoryGrid& grid,
                          std::span<const int> particles, const std::string& comment) {
    if (!comment.empty()) os << comment << '\n';
    os << "particle,t,position_scaled\n";
    std::ostringstream row;
    row.precision(10);
    for (const int x : particles) {
        if (x < 1 || x > grid.n()) throw std::out_of_range("particle label out of range");
        for (int j = 0; j <= grid.grid_size(); ++j) {
            row << x << ',' << grid.time(j) << ',' << grid.at(j, x) << '\n';
        }
    }
    os << row.str();
}

}  // namespace rsn
