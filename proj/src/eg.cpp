#include "rsn/eg.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rsn {

std::vector<std::vector<Letter>> canonical_insertion_tableau(int n) {
    std::vector<std::vector<Letter>> rows;
    for (int r = 1; r < n; ++r) {
        std::vector<Letter> row;
        for (Letter v = r; v < n; ++v) row.push_back(v);
        rows.push_back(std::move(row));
    }
    return rows;
}

EGPair eg_insert(const SwapSequence& word) {
    const int n = word.n();
    std::vector<std::vector<Letter>> rows;
    std::vector<std::vector<Entry>> rec;
    for (std::int64_t step = 0; step < word.size(); ++step) {
        Letter x = word[step];
        std::size_t r = 0;
        for (;; ++r) {
            if (r == rows.size()) {
                rows.emplace_back();
                rec.emplace_back();
            }
            auto& row = rows[r];
            auto it = std::upper_bound(row.begin(), row.end(), x);
            if (it == row.end()) {
                row.push_back(x);
                rec[r].push_back(step + 1);
                break;
            }
            const bool holds_x = it != row.begin() && *(it - 1) == x;
            if (holds_x && *it == x + 1) {
                x = x + 1;
            } else {
                std::swap(*it, x);
            }
        }
    }
    if (rows != canonical_insertion_tableau(n)) {
        throw ValidationError("word is not a reduced word of the reverse permutation");
    }
    std::vector<Entry> flat;
    for (const auto& row : rec) flat.insert(flat.end(), row.begin(), row.end());
    return EGPair{std::move(rows), StaircaseTableau{StaircaseShape{n}, std::move(flat)}};
}

namespace {

// The rows of P as sets over a bit array (rows are strictly increasing, so
// the set determines the row). Storage is word-major: word w of every row is
// contiguous, because a reverse bump keeps v nearly constant while it climbs
// through consecutive rows.
class RowSets {
public:
    RowSets(int rows, int max_value)
        : rows_{static_cast<std::size_t>(rows)},
          words_{static_cast<std::size_t>(max_value) / 64 + 1},
          bits_(rows_ * words_, 0) {}

    void set(int r, int v) noexcept { at(r, word(v)) |= bit(v); }
    void clear(int r, int v) noexcept { at(r, word(v)) &= ~bit(v); }
    bool test(int r, int v) const noexcept { return (at(r, word(v)) & bit(v)) != 0; }

    // Largest member of row r, or -1 when empty.
    int max(int r) const noexcept { return prev_from(r, words_, ~std::uint64_t{0}); }

    // Largest member of row r strictly below v, or -1.
    int below(int r, int v) const noexcept { return prev_from(r, word(v) + 1, bit(v) - 1); }

    // Reverse-bumps v from row `from` up through row 1 and returns the value
    // expelled from row 1, or -1 if some row has no entry below the incoming
    // value. While v stays inside one 64-bit word the climb runs on a single
    // contiguous column of words.
    int climb(int from, int v) noexcept {
        for (int i = from; i >= 1;) {
            const std::size_t w = word(v);
            std::uint64_t* column = &bits_[w * rows_];
            const int base = static_cast<int>(w * 64);
            for (; i >= 1; --i) {
                const std::uint64_t x = column[i];
                const int off = v - base;
                const std::uint64_t low = x & ((std::uint64_t{1} << off) - 1);
                if (low == 0) break;
                const int u = base + 63 - std::countl_zero(low);
                // Inverse of the x, x+1 rule: the row keeps both and v-1 moves up.
                const bool keep = u == v - 1 && ((x >> off) & 1) != 0;
                const std::uint64_t bumped = (x & ~(std::uint64_t{1} << (u - base))) | (std::uint64_t{1} << off);
                column[i] = keep ? x : bumped;
                v = u;
            }
            if (i < 1) break;
            // Row i has nothing below v inside v's word: look further down.
            const int u = below(i, v);
            if (u < 0) return -1;
            if (u != v - 1 || !test(i, v)) {
                clear(i, u);
                set(i, v);
            }
            v = u;
            --i;
        }
        return v;
    }

private:
    static std::size_t word(int v) noexcept { return static_cast<std::size_t>(v) >> 6; }
    static std::uint64_t bit(int v) noexcept { return std::uint64_t{1} << (v & 63); }

    std::uint64_t& at(int r, std::size_t w) noexcept { return bits_[w * rows_ + static_cast<std::size_t>(r)]; }
    std::uint64_t at(int r, std::size_t w) const noexcept { return bits_[w * rows_ + static_cast<std::size_t>(r)]; }

    // Scans words [0, end) of row r downward; the top word is masked.
    int prev_from(int r, std::size_t end, std::uint64_t mask) const noexcept {
        for (std::size_t w = end; w-- > 0;) {
            const std::uint64_t b = at(r, w) & mask;
            if (b != 0) return static_cast<int>(w * 64 + 63 - static_cast<std::size_t>(std::countl_zero(b)));
            mask = ~std::uint64_t{0};
        }
        return -1;
    }

    std::size_t rows_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
};

[[noreturn]] void inconsistent(const std::string& what) {
    throw std::logic_error("eg_inverse: inconsistent deletion state: " + what);
}

}  // namespace

SortingNetwork eg_inverse(const StaircaseTableau& recording) {
    if (!validate_syt(recording)) throw ValidationError("recording tableau is not standard");
    const auto& shape = recording.shape();
    const int n = shape.n();
    const std::int64_t cells = shape.cells();

    std::vector<Cell> cell_of(static_cast<std::size_t>(cells) + 1);
    for (int r = 1; r <= shape.rows(); ++r) {
        for (int c = 1; c <= shape.row_length(r); ++c) {
            cell_of[static_cast<std::size_t>(recording.at({r, c}))] = {r, c};
        }
    }

    RowSets rows{n, n};
    std::vector<int> row_len(static_cast<std::size_t>(n), 0);
    for (int r = 1; r < n; ++r) {
        for (int v = r; v < n; ++v) rows.set(r, v);
        row_len[static_cast<std::size_t>(r)] = n - r;
    }

    std::vector<Letter> letters(static_cast<std::size_t>(cells));
    for (std::int64_t m = cells; m >= 1; --m) {
        const Cell cell = cell_of[static_cast<std::size_t>(m)];
        if (row_len[static_cast<std::size_t>(cell.row)] != cell.col) inconsistent("cell is not a corner");
        int v = rows.max(cell.row);
        if (v < 0) inconsistent("empty row");
        rows.clear(cell.row, v);
        --row_len[static_cast<std::size_t>(cell.row)];
        v = rows.climb(cell.row - 1, v);
        if (v < 0) inconsistent("no entry below bumped value");
        letters[static_cast<std::size_t>(m - 1)] = v;
    }
    return SortingNetwork{n, std::move(letters)};
}

}  // namespace rsn
