#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "gemlab/arrangement.hpp"
#include "gemlab/construct.hpp"
#include "gemlab/io.hpp"

using namespace gemlab;
using fixtures::lo_shu;

TEST(MagicConstant, SmallOrders) {
    EXPECT_EQ(magic_constant(1), 1);
    EXPECT_EQ(magic_constant(3), 15);
    EXPECT_EQ(magic_constant(4), 34);
    EXPECT_EQ(magic_constant(5), 65);
    EXPECT_THROW(magic_constant(0), std::domain_error);
}

TEST(Validate, AcceptsLoShu) { EXPECT_EQ(lo_shu().at(1, 1), 5); }

TEST(Validate, RejectsDuplicate) {
    try {
        Arrangement::validate(3, {1, 2, 3, 4, 5, 6, 7, 8, 1});
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.failure(), ValidationFailure::duplicate);
    }
}

TEST(Validate, RejectsWrongLength) {
    try {
        Arrangement::validate(3, {1, 2, 3, 4, 5, 6, 7, 8});
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.failure(), ValidationFailure::wrong_length);
    }
}

TEST(Validate, RejectsOutOfRangeAndBadOrder) {
    try {
        Arrangement::validate(2, {1, 2, 3, 5});
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.failure(), ValidationFailure::out_of_range);
    }
    EXPECT_THROW(Arrangement::validate(0, {}), ValidationError);
}

TEST(Validate, EntrySumIdentity) {
    for (int n = 1; n <= 8; ++n) {
        const auto a = Arrangement::identity(n);
        const auto e = a.entries();
        const std::int64_t total = std::accumulate(e.begin(), e.end(), std::int64_t{0});
        EXPECT_EQ(total, std::int64_t{n} * n * (n * n + 1) / 2);
    }
}

TEST(LineSums, Fixtures) {
    const auto lo = line_sums(lo_shu());
    for (auto s : lo.rows) EXPECT_EQ(s, 15);
    for (auto s : lo.cols) EXPECT_EQ(s, 15);
    EXPECT_EQ(lo.diag_main, 15);
    EXPECT_EQ(lo.diag_anti, 15);

    const auto r3 = line_sums(fixtures::balanced3());
    EXPECT_EQ(r3.rows, (std::vector<std::int64_t>{13, 19, 13}));
    EXPECT_EQ(r3.cols, (std::vector<std::int64_t>{16, 13, 16}));

    EXPECT_EQ(line_sums(fixtures::row_major3()).rows, (std::vector<std::int64_t>{6, 15, 24}));
}

TEST(IsMagic, Fixtures) {
    EXPECT_TRUE(is_magic(lo_shu()));
    EXPECT_FALSE(is_magic(fixtures::balanced3()));
    EXPECT_FALSE(is_magic(fixtures::row_major3()));
    EXPECT_TRUE(is_magic(Arrangement::identity(1)));
}

TEST(D4, GroupTable) {
    for (auto g : kD4Elements) {
        EXPECT_EQ(d4_compose(g, D4Element::identity), g);
        EXPECT_EQ(d4_compose(D4Element::identity, g), g);
        EXPECT_EQ(d4_compose(g, d4_inverse(g)), D4Element::identity);
        for (auto h : kD4Elements) {
            // composition agrees with applying the cell maps in sequence
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    const Cell c{i, j};
                    EXPECT_EQ(d4_map_cell(d4_compose(g, h), 4, c), d4_map_cell(g, 4, d4_map_cell(h, 4, c)));
                }
            for (auto k : kD4Elements) EXPECT_EQ(d4_compose(d4_compose(g, h), k), d4_compose(g, d4_compose(h, k)));
        }
    }
    std::set<D4Element> rotations;
    auto r = D4Element::identity;
    for (int i = 0; i < 4; ++i) {
        rotations.insert(r);
        r = d4_compose(D4Element::rot90, r);
    }
    EXPECT_EQ(r, D4Element::identity);
    EXPECT_EQ(rotations.size(), 4u);
}

TEST(D4, ApplyPreservesMagic) {
    const auto a = apply_d4(lo_shu(), D4Element::rot90);
    EXPECT_TRUE(is_magic(a));
    EXPECT_NE(a, lo_shu());
    EXPECT_EQ(apply_d4(lo_shu(), D4Element::identity), lo_shu());
    auto b = lo_shu();
    for (int i = 0; i < 4; ++i) b = apply_d4(b, D4Element::rot90);
    EXPECT_EQ(b, lo_shu());
}

TEST(D4, ApplyMatchesComposition) {
    const auto a = Arrangement::identity(4);
    for (auto g : kD4Elements)
        for (auto h : kD4Elements) EXPECT_EQ(apply_d4(apply_d4(a, h), g), apply_d4(a, d4_compose(g, h)));
}

TEST(D4, RotationByHand) {
    // 1 2 3 / 4 5 6 / 7 8 9 rotated a quarter turn clockwise
    EXPECT_EQ(apply_d4(fixtures::row_major3(), D4Element::rot90), fixtures::grid(3, {7, 4, 1, 8, 5, 2, 9, 6, 3}));
}

TEST(D4, MagicInvariantExhaustiveOrder3) {
    std::vector<Value> v{1, 2, 3, 4, 5, 6, 7, 8, 9};
    std::size_t magic = 0;
    do {
        const auto a = Arrangement::validate(3, v);
        const bool m = is_magic(a);
        magic += m;
        if (v[0] <= 2) {  // subset keeps the test quick
            for (auto g : kD4Elements) ASSERT_EQ(is_magic(apply_d4(a, g)), m);
        }
    } while (std::next_permutation(v.begin(), v.end()));
    EXPECT_EQ(magic, 8u);
}

TEST(Orbit, LoShuHasEightMembers) {
    const auto orbit = d4_orbit(lo_shu());
    EXPECT_EQ(orbit.size(), 8u);
    for (const auto& m : orbit) {
        EXPECT_TRUE(is_magic(m));
        EXPECT_EQ(d4_orbit(m), orbit);
    }
    EXPECT_EQ(d4_orbit(Arrangement::identity(1)).size(), 1u);
}

TEST(Canonical, IdempotentAndShared) {
    const auto c = canonical_form(lo_shu());
    EXPECT_EQ(canonical_form(c), c);
    for (const auto& m : d4_orbit(lo_shu())) EXPECT_EQ(canonical_form(m), c);
    EXPECT_EQ(c, fixtures::grid(3, {2, 7, 6, 9, 5, 1, 4, 3, 8}));
}

TEST(Canonical, Order4Classes) {
    const auto all = all_magic_squares(4);
    std::set<Arrangement> classes;
    for (const auto& a : all) classes.insert(canonical_form(a));
    EXPECT_EQ(classes.size(), 880u);
}

TEST(Swap, InvolutionAndMagicDestroyed) {
    const auto a = lo_shu();
    for (int p = 0; p < 9; ++p)
        for (int q = p + 1; q < 9; ++q) {
            const Cell x{p / 3, p % 3}, y{q / 3, q % 3};
            const auto b = swap(a, x, y);
            EXPECT_FALSE(is_magic(b));
            EXPECT_EQ(b.at(x), a.at(y));
            EXPECT_EQ(swap(b, x, y), a);
            // still a permutation of 1..9
            EXPECT_NO_THROW(Arrangement::validate(3, std::vector<Value>(b.entries().begin(), b.entries().end())));
        }
    EXPECT_THROW(swap(a, {0, 0}, {0, 0}), std::domain_error);
    EXPECT_THROW(swap(a, {0, 0}, {3, 0}), std::domain_error);
}

TEST(Io, RoundTrip) {
    const auto text = to_text(fixtures::lowmode4());
    EXPECT_EQ(parse_arrangement(text), fixtures::lowmode4());
    std::istringstream in("# two squares\n3\n2 7 6\n9 5 1\n4 3 8\n\n" + text);
    const auto all = read_arrangements(in);
    ASSERT_EQ(all.size(), 2u);
    EXPECT_EQ(all[0], lo_shu());
    EXPECT_EQ(all[1], fixtures::lowmode4());
}

TEST(Io, RejectsMalformed) {
    EXPECT_THROW(parse_arrangement("3\n1 2 3\n4 5 6\n"), ParseError);
    EXPECT_THROW(parse_arrangement("3\n1 2 x\n4 5 6\n7 8 9\n"), ParseError);
    EXPECT_THROW(parse_arrangement("3\n1 2 3\n4 5 6\n7 8 8\n"), ValidationError);
    EXPECT_THROW(load_arrangements("/nonexistent/file.txt"), std::runtime_error);
}
