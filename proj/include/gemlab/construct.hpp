#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "gemlab/arrangement.hpp"

namespace gemlab {

/// de la Loubère construction for odd n: 1 goes in the middle of the top row,
/// each next value moves up-right with wraparound, dropping one cell down
/// when the target is taken.
inline Arrangement siamese(int n) {
    if (n < 1 || n % 2 == 0) throw std::domain_error("siamese: order must be odd and >= 1");
    std::vector<Value> grid(static_cast<std::size_t>(n * n), 0);
    auto at = [&](int i, int j) -> Value& { return grid[static_cast<std::size_t>(i * n + j)]; };
    int i = 0;
    int j = n / 2;
    for (Value v = 1; v <= n * n; ++v) {
        at(i, j) = v;
        const int ni = (i - 1 + n) % n;
        const int nj = (j + 1) % n;
        if (at(ni, nj) != 0) {
            i = (i + 1) % n;
        } else {
            i = ni;
            j = nj;
        }
    }
    return Arrangement::validate(n, std::move(grid));
}

/// Doubly-even construction: fill 1..n^2 row-major, then complement
/// (v -> n^2+1-v) every cell lying on a diagonal of its 4 x 4 block.
inline Arrangement doubly_even(int n) {
    if (n < 4 || n % 4 != 0) throw std::domain_error("doubly_even: order must be a positive multiple of 4");
    const Value total = n * n;
    std::vector<Value> grid(static_cast<std::size_t>(total));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Value v = i * n + j + 1;
            const int bi = i % 4;
            const int bj = j % 4;
            const bool on_block_diagonal = bi == bj || bi + bj == 3;
            grid[static_cast<std::size_t>(i * n + j)] = on_block_diagonal ? total + 1 - v : v;
        }
    }
    return Arrangement::validate(n, std::move(grid));
}

struct EnumerationSummary {
    int order = 0;
    std::uint64_t total_magic = 0;
    std::uint64_t class_count = 0;
    double elapsed_seconds = 0.0;
};

namespace detail {

// Row-major backtracking over one n x n grid (n <= 5 fits the 32-bit mask;
// callers restrict to n in {3, 4}). Values are tried in ascending order and
// forced cells are unique, so squares come out in lexicographic order.
class MagicSearch {
public:
    MagicSearch(int n, std::function<void(const Arrangement&)> sink)
        : n_(n), cells_(n * n), target_(magic_constant(n)), sink_(std::move(sink)),
          grid_(static_cast<std::size_t>(cells_), 0), rows_(static_cast<std::size_t>(n), 0),
          cols_(static_cast<std::size_t>(n), 0) {}

    /// Searches the subtree whose top-left cell holds `first`.
    void run_with_first(Value first) {
        if (place(0, first)) descend(1);
        unplace(0, first);
    }

private:
    bool available(std::int64_t v) const {
        return v >= 1 && v <= cells_ && !(used_ & (1u << static_cast<unsigned>(v)));
    }

    // Can `k` distinct unused values sum to `need`?
    bool reachable(std::int64_t need, int k) const {
        if (k == 0) return need == 0;
        if (k == 1) return available(need);
        std::int64_t lo = 0, hi = 0;
        int taken = 0;
        for (Value v = 1; v <= cells_ && taken < k; ++v) {
            if (!(used_ & (1u << static_cast<unsigned>(v)))) {
                lo += v;
                ++taken;
            }
        }
        if (taken < k) return false;
        taken = 0;
        for (Value v = cells_; v >= 1 && taken < k; --v) {
            if (!(used_ & (1u << static_cast<unsigned>(v)))) {
                hi += v;
                ++taken;
            }
        }
        return lo <= need && need <= hi;
    }

    // Places v at cell c and checks every line through c.
    bool place(int c, Value v) {
        const int i = c / n_;
        const int j = c % n_;
        grid_[static_cast<std::size_t>(c)] = v;
        used_ |= 1u << static_cast<unsigned>(v);
        rows_[static_cast<std::size_t>(i)] += v;
        cols_[static_cast<std::size_t>(j)] += v;
        if (i == j) diag_main_ += v;
        if (i + j == n_ - 1) diag_anti_ += v;

        const int rest_in_col = n_ - 1 - i;
        if (!reachable(target_ - rows_[static_cast<std::size_t>(i)], n_ - 1 - j)) return false;
        if (!reachable(target_ - cols_[static_cast<std::size_t>(j)], rest_in_col)) return false;
        if (i == j && !reachable(target_ - diag_main_, rest_in_col)) return false;
        if (i + j == n_ - 1 && !reachable(target_ - diag_anti_, rest_in_col)) return false;
        return true;
    }

    void unplace(int c, Value v) {
        const int i = c / n_;
        const int j = c % n_;
        grid_[static_cast<std::size_t>(c)] = 0;
        used_ &= ~(1u << static_cast<unsigned>(v));
        rows_[static_cast<std::size_t>(i)] -= v;
        cols_[static_cast<std::size_t>(j)] -= v;
        if (i == j) diag_main_ -= v;
        if (i + j == n_ - 1) diag_anti_ -= v;
    }

    void descend(int c) {
        if (c == cells_) {
            sink_(Arrangement::validate(n_, grid_));
            return;
        }
        const int i = c / n_;
        const int j = c % n_;
        std::int64_t forced = 0;
        bool is_forced = false;
        if (j == n_ - 1) {
            forced = target_ - rows_[static_cast<std::size_t>(i)];
            is_forced = true;
        }
        if (i == n_ - 1) {
            const std::int64_t by_col = target_ - cols_[static_cast<std::size_t>(j)];
            if (is_forced && forced != by_col) return;
            forced = by_col;
            is_forced = true;
        }
        if (is_forced) {
            if (!available(forced)) return;
            const auto v = static_cast<Value>(forced);
            if (place(c, v)) descend(c + 1);
            unplace(c, v);
            return;
        }
        for (Value v = 1; v <= cells_; ++v) {
            if (used_ & (1u << static_cast<unsigned>(v))) continue;
            if (place(c, v)) descend(c + 1);
            unplace(c, v);
        }
    }

    int n_;
    int cells_;
    std::int64_t target_;
    std::function<void(const Arrangement&)> sink_;
    std::vector<Value> grid_;
    std::vector<std::int64_t> rows_;
    std::vector<std::int64_t> cols_;
    std::int64_t diag_main_ = 0;
    std::int64_t diag_anti_ = 0;
    std::uint32_t used_ = 0;
};

}  // namespace detail

/// Streams every magic square of order n (3 or 4) to `visit` in
/// lexicographic order of the entries. With workers > 1 the search is split
/// by the value of the top-left cell; partitions are buffered and replayed in
/// order, so the emitted sequence does not depend on the worker count.
inline EnumerationSummary enumerate_magic(int n, const std::function<void(const Arrangement&)>& visit,
                                          unsigned workers = 1) {
    if (n != 3 && n != 4) throw std::domain_error("enumerate_magic: only orders 3 and 4 are supported");
    const auto start = std::chrono::steady_clock::now();
    EnumerationSummary summary;
    summary.order = n;
    auto tally = [&](const Arrangement& a) {
        ++summary.total_magic;
        if (canonical_form(a) == a) ++summary.class_count;
        if (visit) visit(a);
    };

    const Value cells = n * n;
    if (workers <= 1) {
        detail::MagicSearch search(n, tally);
        for (Value first = 1; first <= cells; ++first) search.run_with_first(first);
    } else {
        std::vector<std::vector<Arrangement>> parts(static_cast<std::size_t>(cells));
        std::vector<std::thread> pool;
        std::atomic<Value> next{1};
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (Value first = next++; first <= cells; first = next++) {
                    auto& bucket = parts[static_cast<std::size_t>(first - 1)];
                    detail::MagicSearch search(n, [&bucket](const Arrangement& a) { bucket.push_back(a); });
                    search.run_with_first(first);
                }
            });
        }
        for (auto& t : pool) t.join();
        for (const auto& bucket : parts) {
            for (const auto& a : bucket) tally(a);
        }
    }
    summary.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return summary;
}

inline std::vector<Arrangement> all_magic_squares(int n, unsigned workers = 1) {
    std::vector<Arrangement> out;
    enumerate_magic(n, [&out](const Arrangement& a) { out.push_back(a); }, workers);
    return out;
}

}  // namespace gemlab
