#pragma once

// Grid conventions used throughout gemlab: cells are addressed (row, col),
// zero-based, and entries are stored row-major.

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gemlab {

using Value = std::int32_t;

struct Cell {
    int row = 0;
    int col = 0;
    friend constexpr auto operator<=>(const Cell&, const Cell&) = default;
};

/// Reason a candidate entry sequence is not an arrangement.
enum class ValidationFailure { wrong_length, out_of_range, duplicate, bad_order };

class ValidationError : public std::invalid_argument {
public:
    ValidationError(ValidationFailure failure, const std::string& what)
        : std::invalid_argument(what), failure_(failure) {}
    ValidationFailure failure() const noexcept { return failure_; }

private:
    ValidationFailure failure_;
};

/// M(n) = n(n^2+1)/2.
inline std::int64_t magic_constant(int n) {
    if (n < 1) throw std::domain_error("magic_constant: order must be >= 1");
    const std::int64_t m = n;
    return m * (m * m + 1) / 2;
}

/// An n x n grid holding each of 1..n^2 exactly once. Immutable once built.
class Arrangement {
public:
    /// Validating factory; throws ValidationError.
    static Arrangement validate(int n, std::vector<Value> entries) {
        if (n < 1) throw ValidationError(ValidationFailure::bad_order, "order must be >= 1");
        const std::size_t cells = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
        if (entries.size() != cells) {
            throw ValidationError(ValidationFailure::wrong_length,
                                  "expected " + std::to_string(cells) + " entries, got " +
                                      std::to_string(entries.size()));
        }
        std::vector<bool> seen(cells + 1, false);
        for (Value v : entries) {
            if (v < 1 || static_cast<std::size_t>(v) > cells) {
                throw ValidationError(ValidationFailure::out_of_range,
                                      "entry " + std::to_string(v) + " outside 1.." + std::to_string(cells));
            }
            if (seen[static_cast<std::size_t>(v)]) {
                throw ValidationError(ValidationFailure::duplicate, "entry " + std::to_string(v) + " repeated");
            }
            seen[static_cast<std::size_t>(v)] = true;
        }
        return Arrangement(n, std::move(entries));
    }

    /// Row-major 1..n^2.
    static Arrangement identity(int n) {
        std::vector<Value> e(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
        for (std::size_t k = 0; k < e.size(); ++k) e[k] = static_cast<Value>(k + 1);
        return validate(n, std::move(e));
    }

    int order() const noexcept { return n_; }
    std::size_t size() const noexcept { return entries_.size(); }
    std::span<const Value> entries() const noexcept { return entries_; }
    Value at(int row, int col) const { return entries_[index(row, col)]; }
    Value at(Cell c) const { return at(c.row, c.col); }
    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(col);
    }

    friend bool operator==(const Arrangement&, const Arrangement&) = default;
    friend auto operator<=>(const Arrangement& a, const Arrangement& b) {
        if (a.n_ != b.n_) return a.n_ <=> b.n_;
        return std::lexicographical_compare_three_way(a.entries_.begin(), a.entries_.end(), b.entries_.begin(),
                                                      b.entries_.end());
    }

private:
    Arrangement(int n, std::vector<Value> entries) : n_(n), entries_(std::move(entries)) {}

    // Only the D4 action and swap build arrangements without re-validating:
    // both are bijections on cells, so the permutation invariant carries over.
    friend Arrangement unchecked_arrangement(int n, std::vector<Value> entries);

    int n_ = 1;
    std::vector<Value> entries_{1};
};

inline Arrangement unchecked_arrangement(int n, std::vector<Value> entries) {
    return Arrangement(n, std::move(entries));
}

struct LineSums {
    std::vector<std::int64_t> rows;
    std::vector<std::int64_t> cols;
    std::int64_t diag_main = 0;
    std::int64_t diag_anti = 0;
    // Same groups minus M(n).
    std::vector<std::int64_t> row_dev;
    std::vector<std::int64_t> col_dev;
    std::int64_t diag_main_dev = 0;
    std::int64_t diag_anti_dev = 0;
};

inline LineSums line_sums(const Arrangement& a) {
    const int n = a.order();
    const std::int64_t m = magic_constant(n);
    LineSums s;
    s.rows.assign(static_cast<std::size_t>(n), 0);
    s.cols.assign(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const std::int64_t v = a.at(i, j);
            s.rows[static_cast<std::size_t>(i)] += v;
            s.cols[static_cast<std::size_t>(j)] += v;
            if (i == j) s.diag_main += v;
            if (i + j == n - 1) s.diag_anti += v;
        }
    }
    for (auto r : s.rows) s.row_dev.push_back(r - m);
    for (auto c : s.cols) s.col_dev.push_back(c - m);
    s.diag_main_dev = s.diag_main - m;
    s.diag_anti_dev = s.diag_anti - m;
    return s;
}

inline bool is_magic(const Arrangement& a) {
    const LineSums s = line_sums(a);
    auto zero = [](std::int64_t d) { return d == 0; };
    return std::all_of(s.row_dev.begin(), s.row_dev.end(), zero) &&
           std::all_of(s.col_dev.begin(), s.col_dev.end(), zero) && s.diag_main_dev == 0 && s.diag_anti_dev == 0;
}

// ---------------------------------------------------------------------------
// Dihedral group of the square.

enum class D4Element : std::uint8_t {
    identity,
    rot90,   // clockwise quarter turn
    rot180,
    rot270,
    flip_h,  // mirror left <-> right
    flip_v,  // mirror top <-> bottom
    flip_diag_main,  // transpose
    flip_diag_anti,
};

inline constexpr std::array<D4Element, 8> kD4Elements = {
    D4Element::identity, D4Element::rot90,  D4Element::rot180,         D4Element::rot270,
    D4Element::flip_h,   D4Element::flip_v, D4Element::flip_diag_main, D4Element::flip_diag_anti,
};

inline constexpr std::string_view to_string(D4Element g) {
    switch (g) {
        case D4Element::identity: return "identity";
        case D4Element::rot90: return "rot90";
        case D4Element::rot180: return "rot180";
        case D4Element::rot270: return "rot270";
        case D4Element::flip_h: return "flipH";
        case D4Element::flip_v: return "flipV";
        case D4Element::flip_diag_main: return "flipDiagMain";
        case D4Element::flip_diag_anti: return "flipDiagAnti";
    }
    return "?";
}

/// Destination of cell (row, col) under g on an n x n grid.
inline constexpr Cell d4_map_cell(D4Element g, int n, Cell c) {
    const int last = n - 1;
    switch (g) {
        case D4Element::identity: return {c.row, c.col};
        case D4Element::rot90: return {c.col, last - c.row};
        case D4Element::rot180: return {last - c.row, last - c.col};
        case D4Element::rot270: return {last - c.col, c.row};
        case D4Element::flip_h: return {c.row, last - c.col};
        case D4Element::flip_v: return {last - c.row, c.col};
        case D4Element::flip_diag_main: return {c.col, c.row};
        case D4Element::flip_diag_anti: return {last - c.col, last - c.row};
    }
    return c;
}

/// g∘h: apply h first, then g. Resolved by tracking two asymmetric cells on a
/// 3 x 3 grid, which pins down a unique element.
inline constexpr D4Element d4_compose(D4Element g, D4Element h) {
    constexpr Cell probe_a{0, 1};
    constexpr Cell probe_b{0, 0};
    const Cell ta = d4_map_cell(g, 3, d4_map_cell(h, 3, probe_a));
    const Cell tb = d4_map_cell(g, 3, d4_map_cell(h, 3, probe_b));
    for (D4Element k : kD4Elements) {
        if (d4_map_cell(k, 3, probe_a) == ta && d4_map_cell(k, 3, probe_b) == tb) return k;
    }
    return D4Element::identity;  // unreachable: D4 is closed
}

inline constexpr D4Element d4_inverse(D4Element g) {
    for (D4Element k : kD4Elements) {
        if (d4_compose(g, k) == D4Element::identity) return k;
    }
    return D4Element::identity;
}

inline Arrangement apply_d4(const Arrangement& a, D4Element g) {
    const int n = a.order();
    std::vector<Value> out(a.size());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Cell d = d4_map_cell(g, n, {i, j});
            out[a.index(d.row, d.col)] = a.at(i, j);
        }
    }
    return unchecked_arrangement(n, std::move(out));
}

/// Distinct images of a under D4, sorted by entries.
inline std::vector<Arrangement> d4_orbit(const Arrangement& a) {
    std::vector<Arrangement> orbit;
    orbit.reserve(8);
    for (D4Element g : kD4Elements) orbit.push_back(apply_d4(a, g));
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    return orbit;
}

/// Lexicographically smallest entries sequence over the D4 orbit.
inline Arrangement canonical_form(const Arrangement& a) {
    Arrangement best = a;
    for (D4Element g : kD4Elements) {
        Arrangement img = apply_d4(a, g);
        if (img < best) best = std::move(img);
    }
    return best;
}

inline Arrangement swap(const Arrangement& a, Cell x, Cell y) {
    const int n = a.order();
    auto in_range = [n](Cell c) { return c.row >= 0 && c.row < n && c.col >= 0 && c.col < n; };
    if (!in_range(x) || !in_range(y)) throw std::domain_error("swap: cell out of range");
    if (x == y) throw std::domain_error("swap: cells must differ");
    std::vector<Value> e(a.entries().begin(), a.entries().end());
    std::swap(e[a.index(x.row, x.col)], e[a.index(y.row, y.col)]);
    return unchecked_arrangement(n, std::move(e));
}

}  // namespace gemlab
