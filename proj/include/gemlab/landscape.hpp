#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <vector>

#include "gemlab/arrangement.hpp"
#include "gemlab/energy.hpp"
#include "gemlab/random.hpp"

namespace gemlab {

inline constexpr int kDefaultBins = 200;

struct EnergyHistogram {
    int bin_count = kDefaultBins;
    double lo = 0;
    double hi = 0;
    std::vector<std::uint64_t> counts;
    std::uint64_t underflow = 0;
    std::uint64_t overflow = 0;

    static EnergyHistogram with_range(int bins, double lo, double hi) {
        if (bins < 1) throw std::domain_error("histogram: bin count must be >= 1");
        EnergyHistogram h;
        h.bin_count = bins;
        h.lo = lo;
        h.hi = hi;
        h.counts.assign(static_cast<std::size_t>(bins), 0);
        return h;
    }

    double width() const { return (hi - lo) / bin_count; }
    double bin_lo(int k) const { return lo + width() * k; }
    double bin_hi(int k) const { return k + 1 == bin_count ? hi : lo + width() * (k + 1); }

    /// Bins are half-open except the last, which includes hi.
    void add(double v, std::uint64_t times = 1) {
        if (v < lo) {
            underflow += times;
        } else if (v > hi) {
            overflow += times;
        } else {
            auto k = hi > lo ? static_cast<int>((v - lo) / (hi - lo) * bin_count) : 0;
            counts[static_cast<std::size_t>(std::min(k, bin_count - 1))] += times;
        }
    }

    std::uint64_t total() const { return std::accumulate(counts.begin(), counts.end(), underflow + overflow); }
};

/// Natural-log Shannon entropy of the binned fractions (empty bins skipped).
inline double entropy(const EnergyHistogram& h) {
    std::uint64_t total = 0;
    for (auto c : h.counts) total += c;
    if (total == 0) throw std::domain_error("entropy: empty histogram");
    double s = 0;
    for (auto c : h.counts) {
        if (c == 0) continue;
        const double pk = static_cast<double>(c) / static_cast<double>(total);
        s -= pk * std::log(pk);
    }
    return s;
}

/// Exact distribution of energy numerators (over a fixed denominator).
/// Merging is associative and commutative, and every statistic is derived
/// from the merged map in key order, so results do not depend on how the
/// input was partitioned.
struct EnergyTally {
    std::int64_t denominator = 1;
    std::map<std::int64_t, std::uint64_t> counts;

    void merge(const EnergyTally& other) {
        for (const auto& [k, c] : other.counts) counts[k] += c;
    }
    template <class Map>
    void merge_counts(const Map& m) {
        for (const auto& [k, c] : m) counts[k] += c;
    }
};

struct LandscapeStats {
    std::uint64_t total = 0;
    double mean = 0;
    double std = 0;  // population
    double mode_bin_center = 0;
    double max_observed = 0;
    double entropy = 0;
    std::uint64_t zero_count = 0;
    double zero_fraction = 0;
    EnergyHistogram histogram;
};

/// Histogram over [0, observed max] with `bins` equal bins; the mode is the
/// centre of the fullest bin, ties going to the lowest bin.
inline LandscapeStats summarize(const EnergyTally& tally, int bins = kDefaultBins) {
    if (bins < 1) throw std::domain_error("summarize: bin count must be >= 1");
    LandscapeStats st;
    if (tally.counts.empty()) throw std::domain_error("summarize: no observations");
    const auto den = static_cast<long double>(tally.denominator);
    __int128 s1 = 0, s2 = 0;
    for (const auto& [num, c] : tally.counts) {
        st.total += c;
        s1 += static_cast<__int128>(num) * c;
        s2 += static_cast<__int128>(num) * num * c;
    }
    const std::int64_t max_num = tally.counts.rbegin()->first;
    const auto total = static_cast<long double>(st.total);
    const long double mean = static_cast<long double>(s1) / total / den;
    const long double var = static_cast<long double>(s2) / total / (den * den) - mean * mean;
    st.mean = static_cast<double>(mean);
    st.std = static_cast<double>(std::sqrt(std::max(0.0L, var)));
    st.max_observed = static_cast<double>(static_cast<long double>(max_num) / den);
    auto zero = tally.counts.find(0);
    st.zero_count = zero == tally.counts.end() ? 0 : zero->second;
    st.zero_fraction = static_cast<double>(st.zero_count) / static_cast<double>(st.total);

    st.histogram = EnergyHistogram::with_range(bins, 0.0, st.max_observed);
    for (const auto& [num, c] : tally.counts) {
        // exact bin index: floor(num * bins / max), top value in the last bin
        std::int64_t k = max_num > 0 ? static_cast<std::int64_t>(static_cast<__int128>(num) * bins / max_num) : 0;
        k = std::min<std::int64_t>(k, bins - 1);
        st.histogram.counts[static_cast<std::size_t>(k)] += c;
    }
    const auto fullest = std::max_element(st.histogram.counts.begin(), st.histogram.counts.end());
    const int mode_bin = static_cast<int>(fullest - st.histogram.counts.begin());
    st.mode_bin_center = 0.5 * (st.histogram.bin_lo(mode_bin) + st.histogram.bin_hi(mode_bin));
    st.entropy = entropy(st.histogram);
    return st;
}

namespace detail {

inline unsigned resolve_workers(unsigned workers) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    return workers;
}

// Runs body(task) for task in [0, tasks) on up to `workers` threads.
template <class Body>
void parallel_tasks(std::size_t tasks, unsigned workers, Body&& body) {
    workers = static_cast<unsigned>(std::min<std::size_t>(resolve_workers(workers), std::max<std::size_t>(tasks, 1)));
    if (workers <= 1) {
        for (std::size_t t = 0; t < tasks; ++t) body(t);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t t = next++; t < tasks; t = next++) body(t);
        });
    }
    for (auto& th : pool) th.join();
}

// Visits all 9! arrangements of order 3 whose top-left cell is `first`, in
// lexicographic order.
template <class Visit>
void for_each_order3_with_first(Value first, Visit&& visit) {
    std::array<Value, 9> e{};
    e[0] = first;
    int k = 1;
    for (Value v = 1; v <= 9; ++v)
        if (v != first) e[static_cast<std::size_t>(k++)] = v;
    do {
        visit(std::span<const Value>(e));
    } while (std::next_permutation(e.begin() + 1, e.end()));
}

}  // namespace detail

inline constexpr std::uint64_t kOrder3Arrangements = 362880;

struct ScanResult {
    EnergyKind kind = EnergyKind::low;
    LandscapeStats stats;
    std::vector<Arrangement> zeros;  // sorted
};

/// Every arrangement of order 3, exact zero detection and binned statistics.
inline ScanResult exhaustive_scan(EnergyKind kind, int bins = kDefaultBins, unsigned workers = 1) {
    std::vector<EnergyTally> parts(9);
    std::vector<std::vector<Arrangement>> zeros(9);
    detail::parallel_tasks(9, workers, [&](std::size_t t) {
        std::unordered_map<std::int64_t, std::uint64_t> local;
        detail::for_each_order3_with_first(static_cast<Value>(t + 1), [&](std::span<const Value> e) {
            const std::int64_t num = energy_numerator(kind, LineState(3, e));
            ++local[num];
            if (num == 0) zeros[t].push_back(Arrangement::validate(3, {e.begin(), e.end()}));
        });
        parts[t].merge_counts(local);
    });
    EnergyTally all{energy_denominator(3), {}};
    ScanResult out;
    out.kind = kind;
    for (std::size_t t = 0; t < 9; ++t) {
        all.merge(parts[t]);
        out.zeros.insert(out.zeros.end(), zeros[t].begin(), zeros[t].end());
    }
    out.stats = summarize(all, bins);
    return out;
}

/// Order-3 arrangements with Cov(X,Z) = Cov(Y,Z) = 0 exactly, sorted.
inline std::vector<Arrangement> aggregate_balanced_order3() {
    std::vector<Arrangement> out;
    for (Value first = 1; first <= 9; ++first) {
        detail::for_each_order3_with_first(first, [&](std::span<const Value> e) {
            const LineState s(3, e);
            if (s.x_moment() == 0 && s.y_moment() == 0) out.push_back(Arrangement::validate(3, {e.begin(), e.end()}));
        });
    }
    return out;
}

struct LocalMinimaReport {
    EnergyKind kind = EnergyKind::full;
    std::uint64_t total_minima = 0;
    std::uint64_t global_minima = 0;
    std::uint64_t non_global = 0;
    std::vector<Arrangement> minima;  // sorted
};

namespace detail {

// True when no single swap strictly lowers the energy.
inline bool is_local_minimum(EnergyKind kind, std::span<const Value> e, int n, LineState& s, std::int64_t base) {
    const int cells = n * n;
    for (int p = 0; p < cells; ++p) {
        for (int q = p + 1; q < cells; ++q) {
            const Value vp = e[static_cast<std::size_t>(p)];
            const Value vq = e[static_cast<std::size_t>(q)];
            s.apply_swap(p, vp, q, vq);
            const std::int64_t after = energy_numerator(kind, s);
            s.apply_swap(p, vq, q, vp);
            if (after < base) return false;
        }
    }
    return true;
}

}  // namespace detail

/// Order-3 census of arrangements that no single swap strictly improves.
inline LocalMinimaReport count_local_minima(EnergyKind kind, unsigned workers = 1) {
    std::vector<std::vector<Arrangement>> found(9);
    detail::parallel_tasks(9, workers, [&](std::size_t t) {
        detail::for_each_order3_with_first(static_cast<Value>(t + 1), [&](std::span<const Value> e) {
            LineState s(3, e);
            const std::int64_t base = energy_numerator(kind, s);
            if (detail::is_local_minimum(kind, e, 3, s, base)) found[t].push_back(Arrangement::validate(3, {e.begin(), e.end()}));
        });
    });
    LocalMinimaReport rep;
    rep.kind = kind;
    for (auto& part : found) {
        for (auto& a : part) {
            if (energy_numerator(kind, a) == 0) ++rep.global_minima;
            rep.minima.push_back(std::move(a));
        }
    }
    rep.total_minima = rep.minima.size();
    rep.non_global = rep.total_minima - rep.global_minima;
    return rep;
}

struct SamplingConfig {
    int n = 4;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 0;
    unsigned workers = 1;  // 0 = hardware concurrency
    EnergyKind energy_kind = EnergyKind::low;
    int bins = kDefaultBins;
};

/// Uniform arrangements by Fisher-Yates; sample i uses stream_seed(seed, i),
/// so the result is identical for any worker count.
inline LandscapeStats sample_landscape(const SamplingConfig& cfg) {
    if (cfg.samples == 0) throw std::domain_error("sample_landscape: samples must be >= 1");
    if (cfg.n < 1 || cfg.n > LineState::kMaxOrder) throw std::domain_error("sample_landscape: unsupported order");
    const unsigned workers = detail::resolve_workers(cfg.workers);
    // Chunks are a fixed function of the sample count, not of the worker count.
    constexpr std::uint64_t kChunk = 1u << 16;
    const std::size_t chunks = static_cast<std::size_t>((cfg.samples + kChunk - 1) / kChunk);
    std::vector<EnergyTally> parts(chunks);
    const std::size_t cells = static_cast<std::size_t>(cfg.n) * static_cast<std::size_t>(cfg.n);
    detail::parallel_tasks(chunks, workers, [&](std::size_t c) {
        std::unordered_map<std::int64_t, std::uint64_t> local;
        std::vector<Value> e(cells);
        const std::uint64_t begin = c * kChunk;
        const std::uint64_t end = std::min(cfg.samples, begin + kChunk);
        for (std::uint64_t i = begin; i < end; ++i) {
            for (std::size_t k = 0; k < cells; ++k) e[k] = static_cast<Value>(k + 1);
            SplitMix64 rng(stream_seed(cfg.seed, i));
            shuffle(e, rng);
            ++local[energy_numerator(cfg.energy_kind, LineState(cfg.n, e))];
        }
        parts[c].merge_counts(local);
    });
    EnergyTally all{energy_denominator(cfg.n), {}};
    for (const auto& p : parts) all.merge(p);
    return summarize(all, cfg.bins);
}

struct QuadraticFit {
    double a = 0;  // coefficient of n^2
    double b = 0;
    double c = 0;
    double r_squared = 0;
    double operator()(double x) const { return (a * x + b) * x + c; }
};

/// Least-squares peak = a n^2 + b n + c.
inline QuadraticFit quadratic_peak_fit(std::span<const std::pair<double, double>> pts) {
    if (pts.size() < 3) throw std::domain_error("quadratic_peak_fit: need at least 3 points");
    // Normal equations in the centred variable t = n - mean(n).
    long double mx = 0;
    for (const auto& [x, y] : pts) mx += x;
    mx /= static_cast<long double>(pts.size());
    std::array<long double, 5> sx{};  // sum t^k
    std::array<long double, 3> sxy{};
    long double my = 0;
    for (const auto& [x, y] : pts) {
        const long double t = x - mx;
        long double tk = 1;
        for (int k = 0; k < 5; ++k) {
            sx[static_cast<std::size_t>(k)] += tk;
            if (k < 3) sxy[static_cast<std::size_t>(k)] += tk * y;
            tk *= t;
        }
        my += y;
    }
    my /= static_cast<long double>(pts.size());
    // Solve [[s0 s1 s2][s1 s2 s3][s2 s3 s4]] [c0 c1 c2]^T = sxy by Gaussian elimination.
    std::array<std::array<long double, 4>, 3> m{{{sx[0], sx[1], sx[2], sxy[0]},
                                                 {sx[1], sx[2], sx[3], sxy[1]},
                                                 {sx[2], sx[3], sx[4], sxy[2]}}};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
        std::swap(m[col], m[piv]);
        if (std::fabs(m[col][col]) < 1e-300L) throw std::domain_error("quadratic_peak_fit: points do not determine a quadratic");
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const long double f = m[r][col] / m[col][col];
            for (int k = col; k < 4; ++k) m[r][k] -= f * m[col][k];
        }
    }
    const long double c0 = m[0][3] / m[0][0], c1 = m[1][3] / m[1][1], c2 = m[2][3] / m[2][2];
    // y = c2 t^2 + c1 t + c0 with t = x - mx
    QuadraticFit fit;
    fit.a = static_cast<double>(c2);
    fit.b = static_cast<double>(c1 - 2 * c2 * mx);
    fit.c = static_cast<double>(c0 - c1 * mx + c2 * mx * mx);
    long double ss_res = 0, ss_tot = 0;
    for (const auto& [x, y] : pts) {
        const long double t = x - mx;
        const long double r = y - (c2 * t * t + c1 * t + c0);
        ss_res += r * r;
        ss_tot += (y - my) * (y - my);
    }
    fit.r_squared = ss_tot > 0 ? static_cast<double>(1 - ss_res / ss_tot) : 1.0;
    return fit;
}

enum class Label : std::uint8_t { magic, semi_magic, low_mode_balanced, aggregate_balanced, generic };

inline constexpr std::string_view to_string(Label l) {
    switch (l) {
        case Label::magic: return "magic";
        case Label::semi_magic: return "semi-magic";
        case Label::low_mode_balanced: return "low-mode-balanced";
        case Label::aggregate_balanced: return "aggregate-balanced";
        case Label::generic: return "generic";
    }
    return "?";
}

/// Most specific label that applies.
inline Label classify(const Arrangement& a) {
    const LineState s(a);
    const int n = a.order();
    bool rows_cols = true;
    for (int k = 0; k < n; ++k) rows_cols = rows_cols && s.row_dev(k) == 0 && s.col_dev(k) == 0;
    const bool diags = s.diag_main_dev() == 0 && s.diag_anti_dev() == 0;
    if (rows_cols && diags) return Label::magic;
    if (rows_cols) return Label::semi_magic;
    if (energy_numerator(EnergyKind::low, s) == 0) return Label::low_mode_balanced;
    if (s.x_moment() == 0 && s.y_moment() == 0) return Label::aggregate_balanced;
    return Label::generic;
}

struct SearchResult {
    std::optional<Arrangement> found;
    bool magic = false;
    std::uint64_t steps = 0;     // neighbourhood scans performed
    std::uint64_t restarts = 0;  // climbs started
};

/// Steepest descent on the low-mode energy over single swaps. Each climb
/// starts from a fresh uniform arrangement (stream_seed(seed, climb index));
/// the best strictly improving swap is taken, ties to the lowest (cell_a,
/// cell_b) in row-major order. Returns the first exact zero, or nothing once
/// `max_iters` neighbourhood scans are spent. With `require_non_magic`, magic
/// zeros are skipped and the search restarts.
inline SearchResult search_low_mode_zero(int n, std::uint64_t seed, std::uint64_t max_iters,
                                         bool require_non_magic = false) {
    if (n < 3) throw std::domain_error("search_low_mode_zero: order must be >= 3");
    const int cells = n * n;
    SearchResult res;
    while (res.steps < max_iters) {
        SplitMix64 rng(stream_seed(seed, res.restarts));
        ++res.restarts;
        std::vector<Value> e(static_cast<std::size_t>(cells));
        std::iota(e.begin(), e.end(), 1);
        shuffle(e, rng);
        LineState s(n, e);
        std::int64_t cur = energy_numerator(EnergyKind::low, s);
        while (true) {
            if (cur == 0) {
                auto a = Arrangement::validate(n, e);
                const bool magic = is_magic(a);
                if (!(require_non_magic && magic)) {
                    res.found = std::move(a);
                    res.magic = magic;
                    return res;
                }
                break;
            }
            if (res.steps >= max_iters) return res;
            ++res.steps;
            std::int64_t best = cur;
            int bp = -1, bq = -1;
            for (int p = 0; p < cells; ++p) {
                for (int q = p + 1; q < cells; ++q) {
                    const Value vp = e[static_cast<std::size_t>(p)], vq = e[static_cast<std::size_t>(q)];
                    s.apply_swap(p, vp, q, vq);
                    const std::int64_t after = energy_numerator(EnergyKind::low, s);
                    s.apply_swap(p, vq, q, vp);
                    if (after < best) {
                        best = after;
                        bp = p;
                        bq = q;
                    }
                }
            }
            if (bp < 0) break;  // stuck above zero
            s.apply_swap(bp, e[static_cast<std::size_t>(bp)], bq, e[static_cast<std::size_t>(bq)]);
            std::swap(e[static_cast<std::size_t>(bp)], e[static_cast<std::size_t>(bq)]);
            cur = best;
        }
    }
    return res;
}

}  // namespace gemlab
