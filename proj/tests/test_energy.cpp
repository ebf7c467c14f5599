#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "fixtures.hpp"
#include "gemlab/construct.hpp"
#include "gemlab/energy.hpp"
#include "gemlab/random.hpp"

using namespace gemlab;

namespace {

// Energies recomputed from line sums with plain rationals: Cov(Z, row k) =
// (R_k - M)/n^2, Cov(X,Z) = sum_j x_j (C_j - M)/n^2.
Rational oracle_energy(const Arrangement& a, EnergyKind kind) {
    const int n = a.order();
    const auto ls = line_sums(a);
    const Rational n2(n * n);
    auto sq = [](Rational r) { return r * r; };
    const Rational dm = Rational(ls.diag_main_dev) / n2, da = Rational(ls.diag_anti_dev) / n2;
    Rational e(0);
    switch (kind) {
        case EnergyKind::full:
        case EnergyKind::full_alllines: {
            const int lines = kind == EnergyKind::full ? n - 1 : n;
            for (int k = 0; k < lines; ++k) e = e + sq(Rational(ls.row_dev[k]) / n2) + sq(Rational(ls.col_dev[k]) / n2);
            return e + sq(dm) + sq(da);
        }
        case EnergyKind::low:
        case EnergyKind::low_diagmean: {
            Rational cx(0), cy(0);
            for (int k = 0; k < n; ++k) {
                cx = cx + Rational(2 * k - (n - 1), 2) * Rational(ls.col_dev[k]) / n2;
                cy = cy + Rational((n - 1) - 2 * k, 2) * Rational(ls.row_dev[k]) / n2;
            }
            // diagmean scales each diagonal covariance by n
            const Rational s = kind == EnergyKind::low ? Rational(1) : Rational(n);
            return sq(cx) + sq(cy) + sq(dm * s) + sq(da * s);
        }
    }
    return e;
}

}  // namespace

TEST(Indicator, Fixtures) {
    for (int k = 0; k < 3; ++k) {
        EXPECT_TRUE(indicator_covariance(fixtures::lo_shu(), {IndicatorKind::row, k}).is_zero());
        EXPECT_TRUE(indicator_covariance(fixtures::lo_shu(), {IndicatorKind::col, k}).is_zero());
    }
    EXPECT_TRUE(indicator_covariance(fixtures::lo_shu(), {IndicatorKind::diag_main, 0}).is_zero());
    EXPECT_EQ(indicator_covariance(fixtures::balanced3(), {IndicatorKind::col, 0}), Rational(1, 9));
    EXPECT_EQ(indicator_covariance(fixtures::row_major3(), {IndicatorKind::row, 0}), Rational(-1));
    EXPECT_THROW(indicator_covariance(fixtures::lo_shu(), {IndicatorKind::row, 3}), std::domain_error);
}

TEST(Energy, LoShuZero) {
    const auto b = energy(fixtures::lo_shu());
    for (auto k : kEnergyKinds) EXPECT_TRUE(b.exact(k).is_zero());
    EXPECT_TRUE(is_zero_full(fixtures::lo_shu()));
    EXPECT_EQ(b.phi, 0.0);
}

TEST(Energy, LowModeBalancedFourByFour) {
    const auto a = fixtures::lowmode4();
    const auto b = energy(a);
    EXPECT_EQ(b.exact(EnergyKind::low), Rational(0));
    EXPECT_EQ(b.exact(EnergyKind::full), Rational(323, 256));
    EXPECT_NEAR(b.e_full, 1.2617, 1e-4);
    EXPECT_FALSE(is_zero_full(a));
    const auto ls = line_sums(a);
    EXPECT_EQ(ls.rows, (std::vector<std::int64_t>{28, 38, 44, 26}));
    EXPECT_EQ(ls.cols, (std::vector<std::int64_t>{37, 25, 43, 31}));
}

TEST(Energy, AggregateBalancedThreeByThree) {
    const auto b = energy(fixtures::balanced3());
    EXPECT_TRUE(b.cov_xz.is_zero());
    EXPECT_TRUE(b.cov_yz.is_zero());
    // diagonal devs -6 and +7: (36 + 49) / 81
    EXPECT_EQ(b.exact(EnergyKind::low), Rational(85, 81));
    EXPECT_EQ(b.exact(EnergyKind::low_diagmean), Rational(85, 9));
}

TEST(Energy, MatchesLineSumOracle) {
    SplitMix64 rng(7);
    for (int n = 3; n <= 6; ++n)
        for (int t = 0; t < 200; ++t) {
            const auto a = random_arrangement(n, rng);
            const auto b = energy(a);
            for (auto k : kEnergyKinds) {
                ASSERT_EQ(b.exact(k), oracle_energy(a, k)) << to_string(k);
                ASSERT_EQ(Rational(energy_numerator(k, a), energy_denominator(n)), b.exact(k));
            }
        }
}

TEST(Energy, CharacterizationExhaustiveOrder3) {
    std::vector<Value> v{1, 2, 3, 4, 5, 6, 7, 8, 9};
    std::size_t zeros = 0;
    do {
        const auto a = Arrangement::validate(3, v);
        const bool z = is_zero_full(a);
        ASSERT_EQ(z, is_magic(a));
        if (z) {
            ASSERT_EQ(energy_numerator(EnergyKind::low, a), 0);
        }
        zeros += z;
    } while (std::next_permutation(v.begin(), v.end()));
    EXPECT_EQ(zeros, 8u);
}

TEST(Energy, Order4MagicAndRandom) {
    for (const auto& a : all_magic_squares(4)) {
        ASSERT_TRUE(is_zero_full(a));
        ASSERT_EQ(energy(a).phi, 0.0);
    }
    SplitMix64 rng(11);
    for (int t = 0; t < 100000; ++t) {
        const auto a = random_arrangement(4, rng);
        ASSERT_EQ(is_zero_full(a), is_magic(a));
        if (is_zero_full(a)) {
            ASSERT_EQ(energy_numerator(EnergyKind::low, a), 0);
        }
    }
}

TEST(Energy, ParseKind) {
    EXPECT_EQ(parse_energy_kind("alllines"), EnergyKind::full_alllines);
    EXPECT_EQ(parse_energy_kind("full_alllines"), EnergyKind::full_alllines);
    EXPECT_EQ(parse_energy_kind("diagmean"), EnergyKind::low_diagmean);
    EXPECT_THROW(parse_energy_kind("medium"), std::invalid_argument);
}

TEST(LineState, IncrementalSwapMatchesRebuild) {
    SplitMix64 rng(3);
    auto a = random_arrangement(5, rng);
    LineState s(a);
    for (int t = 0; t < 500; ++t) {
        const int p = static_cast<int>(rng.below(25));
        int q = static_cast<int>(rng.below(24));
        if (q >= p) ++q;
        const Cell cp{p / 5, p % 5}, cq{q / 5, q % 5};
        s.apply_swap(p, a.at(cp), q, a.at(cq));
        a = swap(a, cp, cq);
        ASSERT_EQ(s, LineState(a));
    }
}

TEST(Perturbation, LoShuFull) {
    const auto r = perturbation_gaps(fixtures::lo_shu(), EnergyKind::full);
    EXPECT_EQ(r.gaps.size(), 36u);
    EXPECT_TRUE(r.all_positive);
    EXPECT_DOUBLE_EQ(r.min_gap, 2.0 / 81.0);
    for (const auto& g : r.gaps) {
        const auto after = swap(fixtures::lo_shu(), g.cell_a, g.cell_b);
        EXPECT_EQ(Rational(g.delta_num, energy_denominator(3)), energy(after).exact(EnergyKind::full));
    }
}

namespace {

std::vector<std::int64_t> spectrum(const Arrangement& a, EnergyKind kind) {
    std::vector<std::int64_t> d;
    for (const auto& g : perturbation_gaps(a, kind).gaps) d.push_back(g.delta_num);
    std::sort(d.begin(), d.end());
    return d;
}

}  // namespace

TEST(Perturbation, GapMultisetD4InvariantForSymmetricKinds) {
    for (auto kind : {EnergyKind::low, EnergyKind::full_alllines, EnergyKind::low_diagmean})
        for (const auto& base : {fixtures::lo_shu(), doubly_even(4), fixtures::lowmode4()}) {
            const auto ref = spectrum(base, kind);
            for (auto g : kD4Elements) EXPECT_EQ(spectrum(apply_d4(base, g), kind), ref) << to_string(kind);
        }
}

// The complete energy leaves out the last row and column, so only the
// transpose (which swaps those two lines) is guaranteed to preserve it.
TEST(Perturbation, FullGapMultisetOnlyTransposeInvariant) {
    const auto base = fixtures::lo_shu();
    const auto ref = spectrum(base, EnergyKind::full);
    EXPECT_EQ(spectrum(apply_d4(base, D4Element::flip_diag_main), EnergyKind::full), ref);
    EXPECT_NE(spectrum(apply_d4(base, D4Element::rot90), EnergyKind::full), ref);
    // the smallest gap still agrees across the Lo Shu orbit
    for (auto g : kD4Elements) EXPECT_EQ(spectrum(apply_d4(base, g), EnergyKind::full).front(), ref.front());
}

TEST(Perturbation, Order4RepresentativesIsolated) {
    std::size_t swaps = 0;
    for (const auto& a : all_magic_squares(4)) {
        if (canonical_form(a) != a) continue;
        const auto r = perturbation_gaps(a, EnergyKind::full);
        ASSERT_TRUE(r.all_positive);
        swaps += r.gaps.size();
    }
    EXPECT_EQ(swaps, 105600u);
}

TEST(Perturbation, NonMagicBaseReportsDelta) {
    const auto r = perturbation_gaps(fixtures::lowmode4(), EnergyKind::full);
    EXPECT_NEAR(r.base_energy, 323.0 / 256.0, 1e-12);
    EXPECT_FALSE(r.all_positive);
}
