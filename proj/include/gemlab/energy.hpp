#pragma once

// Covariance energies. With z centered and population normalization, the
// covariance of Z with the indicator of any line L is
//   Cov(1_L, Z) = (sum over L - M(n)) / n^2,
// and Cov(X, Z), Cov(Y, Z) are first moments of the column / row deviations.
// All energies are therefore exact: an integer numerator over 4n^4.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gemlab/arrangement.hpp"
#include "gemlab/rational.hpp"

namespace gemlab {

enum class EnergyKind : std::uint8_t {
    full,           // rows and columns 0..n-2 plus both diagonals
    low,            // Cov(X,Z), Cov(Y,Z) and both diagonal covariances
    full_alllines,  // every row and column plus both diagonals
    low_diagmean,   // low, with each diagonal term taken as the mean z on that diagonal (n * Cov)
};

inline constexpr std::array<EnergyKind, 4> kEnergyKinds = {EnergyKind::full, EnergyKind::low,
                                                           EnergyKind::full_alllines, EnergyKind::low_diagmean};

inline constexpr std::string_view to_string(EnergyKind k) {
    switch (k) {
        case EnergyKind::full: return "full";
        case EnergyKind::low: return "low";
        case EnergyKind::full_alllines: return "alllines";
        case EnergyKind::low_diagmean: return "diagmean";
    }
    return "?";
}

inline EnergyKind parse_energy_kind(std::string_view s) {
    for (EnergyKind k : kEnergyKinds) {
        if (s == to_string(k)) return k;
    }
    if (s == "full_alllines") return EnergyKind::full_alllines;
    if (s == "low_diagmean") return EnergyKind::low_diagmean;
    throw std::invalid_argument("unknown energy kind: " + std::string(s));
}

/// Line-sum deviations of an arrangement, kept in fixed storage so that the
/// hot loops (exhaustive scans, hill climbing) never allocate.
class LineState {
public:
    static constexpr int kMaxOrder = 32;

    LineState(int n, std::span<const Value> entries) : n_(n) {
        if (n < 1 || n > kMaxOrder) throw std::domain_error("LineState: order out of supported range");
        const std::int64_t m = magic_constant(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const std::int64_t v = entries[static_cast<std::size_t>(i * n + j)];
                row_[i] += v;
                col_[j] += v;
                if (i == j) diag_main_ += v;
                if (i + j == n - 1) diag_anti_ += v;
            }
        }
        for (int k = 0; k < n; ++k) {
            row_[k] -= m;
            col_[k] -= m;
        }
        diag_main_ -= m;
        diag_anti_ -= m;
    }
    explicit LineState(const Arrangement& a) : LineState(a.order(), a.entries()) {}

    int order() const { return n_; }
    std::int64_t row_dev(int k) const { return row_[k]; }
    std::int64_t col_dev(int k) const { return col_[k]; }
    std::int64_t diag_main_dev() const { return diag_main_; }
    std::int64_t diag_anti_dev() const { return diag_anti_; }

    /// 2n^2 Cov(X, Z) = sum_j (2j - (n-1)) * col_dev_j
    std::int64_t x_moment() const {
        std::int64_t s = 0;
        for (int j = 0; j < n_; ++j) s += (2 * j - (n_ - 1)) * col_[j];
        return s;
    }
    /// 2n^2 Cov(Y, Z) = sum_i ((n-1) - 2i) * row_dev_i
    std::int64_t y_moment() const {
        std::int64_t s = 0;
        for (int i = 0; i < n_; ++i) s += ((n_ - 1) - 2 * i) * row_[i];
        return s;
    }

    /// Updates the deviations for exchanging cell p (holding vp) with cell q
    /// (holding vq), cells given as row-major indices.
    void apply_swap(int p, Value vp, int q, Value vq) {
        const std::int64_t d = static_cast<std::int64_t>(vq) - vp;  // change at p; q changes by -d
        shift(p, d);
        shift(q, -d);
    }

    friend bool operator==(const LineState&, const LineState&) = default;

private:
    void shift(int cell, std::int64_t d) {
        const int i = cell / n_;
        const int j = cell % n_;
        row_[i] += d;
        col_[j] += d;
        if (i == j) diag_main_ += d;
        if (i + j == n_ - 1) diag_anti_ += d;
    }

    int n_;
    std::array<std::int64_t, kMaxOrder> row_{};
    std::array<std::int64_t, kMaxOrder> col_{};
    std::int64_t diag_main_ = 0;
    std::int64_t diag_anti_ = 0;
};

/// Common denominator of every energy of order n.
inline std::int64_t energy_denominator(int n) {
    const std::int64_t nn = static_cast<std::int64_t>(n) * n;
    return 4 * nn * nn;
}

/// Energy of `kind` times 4n^4; always a non-negative integer.
inline std::int64_t energy_numerator(EnergyKind kind, const LineState& s) {
    const int n = s.order();
    const std::int64_t dm = s.diag_main_dev();
    const std::int64_t da = s.diag_anti_dev();
    switch (kind) {
        case EnergyKind::full:
        case EnergyKind::full_alllines: {
            const int lines = kind == EnergyKind::full ? n - 1 : n;
            std::int64_t acc = dm * dm + da * da;
            for (int k = 0; k < lines; ++k) acc += s.row_dev(k) * s.row_dev(k) + s.col_dev(k) * s.col_dev(k);
            return 4 * acc;
        }
        case EnergyKind::low:
        case EnergyKind::low_diagmean: {
            const std::int64_t x = s.x_moment();
            const std::int64_t y = s.y_moment();
            const std::int64_t diag_weight =
                kind == EnergyKind::low ? 4 : 4 * static_cast<std::int64_t>(n) * n;
            return x * x + y * y + diag_weight * (dm * dm + da * da);
        }
    }
    return 0;
}

inline std::int64_t energy_numerator(EnergyKind kind, const Arrangement& a) {
    return energy_numerator(kind, LineState(a));
}

inline double energy_value(EnergyKind kind, const Arrangement& a) {
    return static_cast<double>(energy_numerator(kind, a)) / static_cast<double>(energy_denominator(a.order()));
}

enum class IndicatorKind : std::uint8_t { row, col, diag_main, diag_anti };

struct Indicator {
    IndicatorKind kind = IndicatorKind::row;
    int index = 0;  // used for row / col
};

/// Cov(indicator, Z), exactly (line deviation over n^2).
inline Rational indicator_covariance(const Arrangement& a, Indicator which) {
    const int n = a.order();
    const LineState s(a);
    const std::int64_t nn = static_cast<std::int64_t>(n) * n;
    auto check = [n](int k) {
        if (k < 0 || k >= n) throw std::domain_error("indicator_covariance: index out of range");
    };
    switch (which.kind) {
        case IndicatorKind::row: check(which.index); return {s.row_dev(which.index), nn};
        case IndicatorKind::col: check(which.index); return {s.col_dev(which.index), nn};
        case IndicatorKind::diag_main: return {s.diag_main_dev(), nn};
        case IndicatorKind::diag_anti: return {s.diag_anti_dev(), nn};
    }
    throw std::domain_error("indicator_covariance: unknown indicator");
}

struct EnergyBreakdown {
    int n = 0;
    std::vector<Rational> row_covs;
    std::vector<Rational> col_covs;
    Rational diag_main_cov;
    Rational diag_anti_cov;
    Rational cov_xz;
    Rational cov_yz;
    // exact numerators over 4n^4
    std::int64_t full_num = 0;
    std::int64_t low_num = 0;
    std::int64_t alllines_num = 0;
    std::int64_t diagmean_num = 0;
    double e_full = 0;
    double e_low = 0;
    double e_full_alllines = 0;
    double e_low_diagmean = 0;
    double phi = 0;  // Cov(X,Z)^2 + Cov(Y,Z)^2

    Rational exact(EnergyKind k) const {
        const std::int64_t d = energy_denominator(n);
        switch (k) {
            case EnergyKind::full: return {full_num, d};
            case EnergyKind::low: return {low_num, d};
            case EnergyKind::full_alllines: return {alllines_num, d};
            case EnergyKind::low_diagmean: return {diagmean_num, d};
        }
        return {};
    }
    double value(EnergyKind k) const { return exact(k).to_double(); }
};

inline EnergyBreakdown energy(const Arrangement& a) {
    const int n = a.order();
    const LineState s(a);
    const std::int64_t nn = static_cast<std::int64_t>(n) * n;
    const double denom = static_cast<double>(energy_denominator(n));
    EnergyBreakdown b;
    b.n = n;
    for (int k = 0; k < n; ++k) {
        b.row_covs.emplace_back(s.row_dev(k), nn);
        b.col_covs.emplace_back(s.col_dev(k), nn);
    }
    b.diag_main_cov = Rational(s.diag_main_dev(), nn);
    b.diag_anti_cov = Rational(s.diag_anti_dev(), nn);
    b.cov_xz = Rational(s.x_moment(), 2 * nn);
    b.cov_yz = Rational(s.y_moment(), 2 * nn);
    b.full_num = energy_numerator(EnergyKind::full, s);
    b.low_num = energy_numerator(EnergyKind::low, s);
    b.alllines_num = energy_numerator(EnergyKind::full_alllines, s);
    b.diagmean_num = energy_numerator(EnergyKind::low_diagmean, s);
    b.e_full = static_cast<double>(b.full_num) / denom;
    b.e_low = static_cast<double>(b.low_num) / denom;
    b.e_full_alllines = static_cast<double>(b.alllines_num) / denom;
    b.e_low_diagmean = static_cast<double>(b.diagmean_num) / denom;
    const double cx = b.cov_xz.to_double();
    const double cy = b.cov_yz.to_double();
    b.phi = cx * cx + cy * cy;
    return b;
}

/// Exact test that every covariance in the complete energy vanishes.
inline bool is_zero_full(const Arrangement& a) {
    const LineState s(a);
    if (s.diag_main_dev() != 0 || s.diag_anti_dev() != 0) return false;
    for (int k = 0; k + 1 < s.order(); ++k) {
        if (s.row_dev(k) != 0 || s.col_dev(k) != 0) return false;
    }
    return true;
}

struct SwapGap {
    Cell cell_a;
    Cell cell_b;
    std::int64_t delta_num = 0;  // exact gap times 4n^4
    double gap = 0;
};

struct PerturbationReport {
    EnergyKind kind = EnergyKind::full;
    double base_energy = 0;
    std::vector<SwapGap> gaps;  // all n^2(n^2-1)/2 swaps, (cell_a, cell_b) row-major ordered
    double min_gap = 0;
    double mean_gap = 0;
    double std_gap = 0;  // population
    bool all_positive = false;
};

inline PerturbationReport perturbation_gaps(const Arrangement& a, EnergyKind kind) {
    const int n = a.order();
    const int cells = n * n;
    const LineState base(a);
    const std::int64_t base_num = energy_numerator(kind, base);
    const double denom = static_cast<double>(energy_denominator(n));
    const auto e = a.entries();

    PerturbationReport rep;
    rep.kind = kind;
    rep.base_energy = static_cast<double>(base_num) / denom;
    rep.all_positive = true;
    rep.gaps.reserve(static_cast<std::size_t>(cells) * static_cast<std::size_t>(cells - 1) / 2);
    double sum = 0, sum_sq = 0;
    for (int p = 0; p < cells; ++p) {
        for (int q = p + 1; q < cells; ++q) {
            LineState s = base;
            s.apply_swap(p, e[static_cast<std::size_t>(p)], q, e[static_cast<std::size_t>(q)]);
            const std::int64_t delta = energy_numerator(kind, s) - base_num;
            const double gap = static_cast<double>(delta) / denom;
            rep.gaps.push_back({{p / n, p % n}, {q / n, q % n}, delta, gap});
            rep.all_positive = rep.all_positive && delta > 0;
            sum += gap;
            sum_sq += gap * gap;
        }
    }
    if (!rep.gaps.empty()) {
        const double count = static_cast<double>(rep.gaps.size());
        rep.min_gap = rep.gaps.front().gap;
        for (const auto& g : rep.gaps) rep.min_gap = std::min(rep.min_gap, g.gap);
        rep.mean_gap = sum / count;
        rep.std_gap = std::sqrt(std::max(0.0, sum_sq / count - rep.mean_gap * rep.mean_gap));
    } else {
        rep.all_positive = false;
    }
    return rep;
}

}  // namespace gemlab
