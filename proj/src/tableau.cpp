#include "rsn/tableau.hpp"

#include <ostream>
#include <stdexcept>
#include <string>

namespace rsn {

StaircaseShape::StaircaseShape(int n) : n_{n} {
    if (n < 2 || n > kMaxParticles) {
        throw std::invalid_argument("staircase shape needs 2 <= n <= " +
                                    std::to_string(kMaxParticles) + ", got " + std::to_string(n));
    }
}

StaircaseTableau::StaircaseTableau(StaircaseShape shape, std::vector<Entry> flat)
    : shape_{shape}, flat_{std::move(flat)} {
    if (static_cast<std::int64_t>(flat_.size()) != shape_.cells()) {
        throw ValidationError("tableau has " + std::to_string(flat_.size()) + " entries, shape needs " +
                              std::to_string(shape_.cells()));
    }
}

StaircaseTableau StaircaseTableau::from_rows(const std::vector<std::vector<Entry>>& rows) {
    const int n = static_cast<int>(rows.size()) + 1;
    if (n < 2) throw ValidationError("tableau needs at least one row");
    std::vector<Entry> flat;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (static_cast<int>(rows[r].size()) != n - 1 - static_cast<int>(r)) {
            throw ValidationError("row " + std::to_string(r + 1) + " has length " +
                                  std::to_string(rows[r].size()) + ", staircase needs " +
                                  std::to_string(n - 1 - static_cast<int>(r)));
        }
        flat.insert(flat.end(), rows[r].begin(), rows[r].end());
    }
    return StaircaseTableau{StaircaseShape{n}, std::move(flat)};
}

std::vector<std::vector<Entry>> StaircaseTableau::to_rows() const {
    std::vector<std::vector<Entry>> out;
    for (int r = 1; r <= shape_.rows(); ++r) {
        auto s = row(r);
        out.emplace_back(s.begin(), s.end());
    }
    return out;
}

std::vector<std::int64_t> hook_lengths(const StaircaseShape& shape) {
    std::vector<std::int64_t> hooks;
    hooks.reserve(static_cast<std::size_t>(shape.cells()));
    for (int r = 1; r <= shape.rows(); ++r) {
        for (int c = 1; c <= shape.row_length(r); ++c) {
            const int arm = shape.row_length(r) - c;
            const int leg = shape.column_height(c) - r;
            hooks.push_back(arm + leg + 1);
        }
    }
    return hooks;
}

BigInt count_syt(const StaircaseShape& shape) {
    BigInt numerator = 1;
    for (std::int64_t k = 2; k <= shape.cells(); ++k) numerator *= k;
    BigInt denominator = 1;
    for (const auto h : hook_lengths(shape)) denominator *= h;
    return numerator / denominator;
}

bool validate_syt(const StaircaseTableau& t) {
    const auto& shape = t.shape();
    const std::int64_t cells = shape.cells();
    std::vector<bool> seen(static_cast<std::size_t>(cells) + 1, false);
    for (const Entry e : t.flat()) {
        if (e < 1 || e > cells || seen[static_cast<std::size_t>(e)]) return false;
        seen[static_cast<std::size_t>(e)] = true;
    }
    for (int r = 1; r <= shape.rows(); ++r) {
        for (int c = 1; c <= shape.row_length(r); ++c) {
            const Entry e = t.at({r, c});
            if (c > 1 && t.at({r, c - 1}) >= e) return false;
            if (r > 1 && t.at({r - 1, c}) >= e) return false;
        }
    }
    return true;
}

namespace {

// Fenwick tree over row lengths; finds the row holding the u-th remaining
// cell in O(log rows).
class RowIndex {
public:
    explicit RowIndex(const std::vector<int>& lengths)
        : tree_(lengths.size() + 1, 0), log_{1} {
        for (std::size_t i = 0; i < lengths.size(); ++i) add(i, lengths[i]);
        while ((log_ << 1) <= lengths.size()) log_ <<= 1;
    }

    void add(std::size_t row, std::int64_t delta) {
        for (std::size_t i = row + 1; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
    }

    // Returns (row, column) 0-based of the u-th cell in row-major order.
    std::pair<int, int> locate(std::int64_t u) const {
        std::size_t pos = 0;
        for (std::size_t step = log_; step > 0; step >>= 1) {
            const std::size_t next = pos + step;
            if (next < tree_.size() && tree_[next] <= u) {
                pos = next;
                u -= tree_[next];
            }
        }
        return {static_cast<int>(pos), static_cast<int>(u)};
    }

private:
    std::vector<std::int64_t> tree_;
    std::size_t log_;
};

}  // namespace

StaircaseTableau hook_walk_sample(const StaircaseShape& shape, Stream& rng) {
    const int rows = shape.rows();
    std::vector<int> row_len(static_cast<std::size_t>(rows));
    std::vector<int> col_height(static_cast<std::size_t>(rows));
    for (int i = 0; i < rows; ++i) {
        row_len[static_cast<std::size_t>(i)] = shape.row_length(i + 1);
        col_height[static_cast<std::size_t>(i)] = shape.column_height(i + 1);
    }
    RowIndex index{row_len};
    std::vector<Entry> flat(static_cast<std::size_t>(shape.cells()), 0);

    for (std::int64_t m = shape.cells(); m >= 1; --m) {
        auto [r, c] = index.locate(static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(m))));
        for (;;) {
            const int arm = row_len[static_cast<std::size_t>(r)] - c - 1;
            const int leg = col_height[static_cast<std::size_t>(c)] - r - 1;
            if (arm + leg == 0) break;
            const auto u = static_cast<int>(rng.below(static_cast<std::uint64_t>(arm + leg)));
            if (u < arm) {
                c += 1 + u;
            } else {
                r += 1 + (u - arm);
            }
        }
        flat[shape.offset({r + 1, c + 1})] = m;
        --row_len[static_cast<std::size_t>(r)];
        --col_height[static_cast<std::size_t>(c)];
        index.add(static_cast<std::size_t>(r), -1);
    }
    return StaircaseTableau{shape, std::move(flat)};
}

void write_tableau(std::ostream& os, const StaircaseTableau& t) {
    for (int r = 1; r <= t.shape().rows(); ++r) {
        const auto row = t.row(r);
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) os << ' ';
            os << row[i];
        }
        os << '\n';
    }
}

}  // namespace rsn
