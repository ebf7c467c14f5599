#pragma once

// Desk-scale regeneration of the published summary tables, each emitted with
// the published value next to the computed one.

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gemlab/report.hpp"

namespace gemlab::tables {

using report::json;
using report::sig12;

/// Single-swap gap statistics over a population of squares. "min/mean/std of
/// per-square minimum" summarise each square's smallest gap; "pooled"
/// statistics run over every swap of every square.
struct GapStatistics {
    int n = 0;
    EnergyKind kind = EnergyKind::full;
    std::size_t squares = 0;
    std::size_t swaps = 0;
    double min_gap = 0;
    double mean_of_min = 0;
    double std_of_min = 0;
    double pooled_mean = 0;
    double pooled_std = 0;
    bool all_positive = true;
};

inline GapStatistics gap_statistics(std::span<const Arrangement> squares, EnergyKind kind) {
    GapStatistics g;
    g.kind = kind;
    g.squares = squares.size();
    if (squares.empty()) return g;
    g.n = squares.front().order();
    double s = 0, s2 = 0, ps = 0, ps2 = 0;
    g.min_gap = INFINITY;
    for (const auto& a : squares) {
        const auto rep = perturbation_gaps(a, kind);
        g.all_positive = g.all_positive && rep.all_positive;
        g.min_gap = std::min(g.min_gap, rep.min_gap);
        s += rep.min_gap;
        s2 += rep.min_gap * rep.min_gap;
        for (const auto& gap : rep.gaps) {
            ps += gap.gap;
            ps2 += gap.gap * gap.gap;
        }
        g.swaps += rep.gaps.size();
    }
    const double k = static_cast<double>(g.squares);
    g.mean_of_min = s / k;
    g.std_of_min = std::sqrt(std::max(0.0, s2 / k - g.mean_of_min * g.mean_of_min));
    g.pooled_mean = ps / static_cast<double>(g.swaps);
    g.pooled_std = std::sqrt(std::max(0.0, ps2 / static_cast<double>(g.swaps) - g.pooled_mean * g.pooled_mean));
    return g;
}

struct PublishedGaps {
    int n;
    double min_gap, mean_gap, std_gap;
};
inline constexpr PublishedGaps kTable1[] = {{3, 0.0988, 0.0988, 0.0000}, {4, 0.0039, 0.0127, 0.0096}};
inline constexpr double kTable1Tolerance = 1e-3;

inline bool reproduces(const GapStatistics& g, const PublishedGaps& p) {
    return std::abs(g.min_gap - p.min_gap) <= kTable1Tolerance && std::abs(g.mean_of_min - p.mean_gap) <= kTable1Tolerance &&
           std::abs(g.std_of_min - p.std_gap) <= kTable1Tolerance;
}

inline json gap_json(const GapStatistics& g) {
    return json{{"energy", std::string(to_string(g.kind))},
                {"squares", g.squares},
                {"swaps", g.swaps},
                {"min_gap", sig12(g.min_gap)},
                {"mean_of_min_gap", sig12(g.mean_of_min)},
                {"std_of_min_gap", sig12(g.std_of_min)},
                {"pooled_mean_gap", sig12(g.pooled_mean)},
                {"pooled_std_gap", sig12(g.pooled_std)},
                {"all_positive", g.all_positive}};
}

/// Class representatives (squares equal to their canonical form).
inline std::vector<Arrangement> representatives(int n, unsigned workers = 1) {
    std::vector<Arrangement> reps;
    enumerate_magic(n, [&reps](const Arrangement& a) { if (canonical_form(a) == a) reps.push_back(a); }, workers);
    return reps;
}

inline json table1(unsigned workers = 1) {
    json rows = json::array();
    json matches = json::array();
    for (const auto& pub : kTable1) {
        // every order-3 square, and one representative per class for order 4
        const auto squares = pub.n == 3 ? all_magic_squares(3, workers) : representatives(4, workers);
        json variants = json::array();
        for (EnergyKind k : kEnergyKinds) {
            const auto g = gap_statistics(squares, k);
            json row = gap_json(g);
            row["reproduces_published"] = reproduces(g, pub);
            if (reproduces(g, pub)) matches.push_back({{"n", pub.n}, {"energy", std::string(to_string(k))}});
            variants.push_back(row);
        }
        rows.push_back({{"n", pub.n},
                        {"published", {{"min_gap", pub.min_gap}, {"mean_gap", pub.mean_gap}, {"std_gap", pub.std_gap}}},
                        {"computed", variants}});
    }
    return json{{"table", 1},
                {"tolerance", kTable1Tolerance},
                {"rows", rows},
                {"reproducing_variants", matches},
                {"note",
                 "Published columns are read as min/mean/std of each square's minimum single-swap gap. Only the "
                 "diagmean variant (diagonal terms scaled by n) reproduces them; the literal complete energy gives a "
                 "smaller n=3 minimum gap of 2/81."}};
}

inline json table2(unsigned workers = 1) {
    struct Column {
        int n;
        Arrangement square;
        const char* method;
        int published_hull_vertices;
    };
    const Column cols[] = {{3, siamese(3), "Siamese", 8}, {4, doubly_even(4), "Doubly-even", 12}, {5, siamese(5), "Siamese", 16}};
    json out = json::array();
    for (const auto& c : cols) {
        const auto cloud = embed(c.square);
        const auto mom = moment_report(cloud);
        const auto hs = hull_summary(convex_hull(cloud));
        json col{{"n", c.n},
                 {"parity", c.n % 2 ? "odd" : "even"},
                 {"construction", c.method},
                 {"total_vertices", c.n * c.n},
                 {"hull_vertices", hs.vertex_count},
                 {"hull_vertices_published_typical", c.published_hull_vertices},
                 {"hull_volume", sig12(hs.volume)},
                 {"hull_fraction", sig12(hs.hull_fraction)},
                 {"magic_constant", magic_constant(c.n)},
                 {"cov_xz", mom.cov_xz().str()},
                 {"cov_yz", mom.cov_yz().str()}};
        if (c.n <= 4) {
            col["essentially_different"] = enumerate_magic(c.n, nullptr, workers).class_count;
        } else {
            col["essentially_different"] = "~3.4e7 (published, not computed)";
        }
        if (c.n == 3) {
            const auto scan = exhaustive_scan(EnergyKind::low, kDefaultBins, workers);
            bool all_magic = true;
            for (const auto& z : scan.zeros) all_magic = all_magic && is_magic(z);
            col["low_energy_sufficient"] = all_magic;
        } else {
            const auto hit = search_low_mode_zero(c.n, 1, 1'000'000, true);
            col["low_energy_sufficient"] = !hit.found.has_value();
            if (hit.found) col["low_energy_counterexample"] = report::cells(*hit.found);
        }
        out.push_back(col);
    }
    return json{{"table", 2}, {"columns", out}};
}

struct Table3Config {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    int bins = kDefaultBins;
};

inline json table3(const Table3Config& cfg) {
    struct Published {
        int n;
        double mean, std, mode, max, entropy;
    };
    constexpr Published pub[] = {{3, 4.44, 2.51, 3.12, 12.10, 5.03}, {4, 12.04, 8.18, 6.53, 74.64, 4.34}, {5, 26.00, 17.07, 15.12, 155.10, 4.37}};
    json rows = json::array();
    for (const auto& p : pub) {
        json computed = json::object();
        for (EnergyKind k : {EnergyKind::low_diagmean, EnergyKind::low}) {
            LandscapeStats st;
            std::string how;
            if (p.n == 3) {
                st = exhaustive_scan(k, cfg.bins, cfg.workers).stats;
                how = "exhaustive";
            } else {
                st = sample_landscape({p.n, cfg.samples, cfg.seed, cfg.workers, k, cfg.bins});
                how = "sampled";
            }
            json s = report::stats_json(st);
            s["method"] = how;
            computed[std::string(to_string(k))] = s;
        }
        rows.push_back({{"n", p.n},
                        {"published",
                         {{"mean", p.mean}, {"std", p.std}, {"mode", p.mode}, {"max", p.max}, {"entropy", p.entropy}}},
                        {"computed", computed}});
    }
    return json{{"table", 3},
                {"samples_per_sampled_order", cfg.samples},
                {"seed", cfg.seed},
                {"bins", cfg.bins},
                {"rows", rows},
                {"note",
                 "Published values match the diagmean normalization; the literal low-mode energy is shown alongside. "
                 "Sampled orders use far fewer samples than published."}};
}

inline json table4(unsigned workers = 1) {
    json rows = json::array();
    for (int n : {3, 4}) {
        const auto s = enumerate_magic(n, nullptr, workers);
        double arrangements = 1;
        for (int k = 2; k <= n * n; ++k) arrangements *= k;
        rows.push_back({{"n", n},
                        {"arrangements", sig12(arrangements)},
                        {"magic_squares", s.total_magic},
                        {"classes", s.class_count},
                        {"probability", sig12(static_cast<double>(s.total_magic) / arrangements)},
                        {"magic_constant", magic_constant(n)},
                        {"computed", true}});
    }
    rows.push_back({{"n", 5},
                    {"arrangements", 1.6e25},
                    {"magic_squares", 2.8e8},
                    {"classes", 3.4e7},
                    {"probability", 1.8e-17},
                    {"magic_constant", magic_constant(5)},
                    {"computed", false}});
    return json{{"table", 4},
                {"published", {{{"n", 3}, {"magic_squares", 8}, {"classes", 1}}, {{"n", 4}, {"magic_squares", 7040}, {"classes", 880}}}},
                {"rows", rows}};
}

}  // namespace gemlab::tables
