// Staircase shapes (n-1, n-2, ..., 1), their standard Young tableaux, and
// exact uniform sampling by the Greene-Nijenhuis-Wilf hook walk.
//
// Cells are addressed (row, col), both 1-based, row 1 on top.

#ifndef RSN_TABLEAU_HPP
#define RSN_TABLEAU_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rsn/core.hpp"
#include "rsn/rng.hpp"

namespace rsn {

using Entry = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;

struct Cell {
    int row;
    int col;
    friend bool operator==(Cell, Cell) = default;
};

class StaircaseShape {
public:
    explicit StaircaseShape(int n);

    int n() const noexcept { return n_; }
    int rows() const noexcept { return n_ - 1; }
    int row_length(int r) const noexcept { return n_ - r; }
    int column_height(int c) const noexcept { return n_ - c; }
    std::int64_t cells() const noexcept { return network_length(n_); }
    bool contains(Cell c) const noexcept {
        return c.row >= 1 && c.col >= 1 && c.row + c.col <= n_;
    }
    /// Row-major offset of a cell in flat storage.
    std::size_t offset(Cell c) const noexcept {
        const auto r = static_cast<std::int64_t>(c.row - 1);
        return static_cast<std::size_t>(r * n_ - r * (r + 1) / 2 + (c.col - 1));
    }

private:
    int n_;
};

/// Values on the cells of a staircase shape. Construction only checks the
/// shape; validate_syt checks the standard-tableau conditions.
class StaircaseTableau {
public:
    StaircaseTableau(StaircaseShape shape, std::vector<Entry> flat);
    /// Rows top to bottom; must have lengths n-1, ..., 1 for some n >= 2.
    static StaircaseTableau from_rows(const std::vector<std::vector<Entry>>& rows);

    const StaircaseShape& shape() const noexcept { return shape_; }
    int n() const noexcept { return shape_.n(); }
    Entry at(Cell c) const noexcept { return flat_[shape_.offset(c)]; }
    std::span<const Entry> row(int r) const noexcept {
        return std::span<const Entry>(flat_).subspan(shape_.offset({r, 1}),
                                                    static_cast<std::size_t>(shape_.row_length(r)));
    }
    std::span<const Entry> flat() const noexcept { return flat_; }
    std::vector<std::vector<Entry>> to_rows() const;

    friend bool operator==(const StaircaseTableau& a, const StaircaseTableau& b) {
        return a.n() == b.n() && a.flat_ == b.flat_;
    }
    friend auto operator<=>(const StaircaseTableau& a, const StaircaseTableau& b) {
        return a.flat_ <=> b.flat_;
    }

private:
    StaircaseShape shape_;
    std::vector<Entry> flat_;
};

/// Hook length of every cell, row-major; hook(r, c) = 2n - 2r - 2c + 1.
std::vector<std::int64_t> hook_lengths(const StaircaseShape& shape);

/// Number of standard tableaux of the shape: N! / prod(hooks), exact.
BigInt count_syt(const StaircaseShape& shape);

/// Entries are a bijection onto {1..N}, strictly increasing along rows and
/// down columns.
bool validate_syt(const StaircaseTableau& t);

/// Exactly uniform standard tableau of the staircase shape (hook walk).
StaircaseTableau hook_walk_sample(const StaircaseShape& shape, Stream& rng);

/// Debug dump: one row per line, entries separated by spaces.
void write_tableau(std::ostream& os, const StaircaseTableau& t);

}  // namespace rsn

#endif  // RSN_TABLEAU_HPP
