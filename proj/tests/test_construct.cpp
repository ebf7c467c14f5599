#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "gemlab/construct.hpp"

using namespace gemlab;

TEST(Siamese, SmallOrders) {
    EXPECT_EQ(siamese(1), fixtures::grid(1, {1}));
    EXPECT_EQ(siamese(3), fixtures::grid(3, {8, 1, 6, 3, 5, 7, 4, 9, 2}));
    EXPECT_EQ(canonical_form(siamese(3)), canonical_form(fixtures::lo_shu()));
    EXPECT_THROW(siamese(4), std::domain_error);
}

TEST(DoublyEven, ByHand) {
    // complement rule: cells on either diagonal of each 4x4 block keep i*n+j+1,
    // the others take n^2+1 minus it
    EXPECT_EQ(doubly_even(4), fixtures::grid(4, {16, 2, 3, 13, 5, 11, 10, 8, 9, 7, 6, 12, 4, 14, 15, 1}));
    EXPECT_THROW(doubly_even(5), std::domain_error);
    EXPECT_THROW(doubly_even(6), std::domain_error);
}

TEST(Constructors, MagicUpToTwelve) {
    for (int n = 1; n <= 12; n += 2) EXPECT_TRUE(is_magic(siamese(n))) << n;
    for (int n = 4; n <= 12; n += 4) EXPECT_TRUE(is_magic(doubly_even(n))) << n;
}

TEST(Enumerate, Order3MatchesBruteForce) {
    std::vector<Arrangement> brute;
    std::vector<Value> v{1, 2, 3, 4, 5, 6, 7, 8, 9};
    do {
        auto a = Arrangement::validate(3, v);
        if (is_magic(a)) brute.push_back(a);
    } while (std::next_permutation(v.begin(), v.end()));

    std::vector<Arrangement> found;
    const auto s = enumerate_magic(3, [&](const Arrangement& a) { found.push_back(a); });
    EXPECT_EQ(s.total_magic, 8u);
    EXPECT_EQ(s.class_count, 1u);
    EXPECT_EQ(found, brute);  // both in lexicographic order
}

TEST(Enumerate, Order4CountsAndClosure) {
    const auto s = enumerate_magic(4, [](const Arrangement& a) { ASSERT_TRUE(is_magic(a)); });
    EXPECT_EQ(s.total_magic, 7040u);
    EXPECT_EQ(s.class_count, 880u);

    const auto all = all_magic_squares(4);
    EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
    const std::set<Arrangement> set(all.begin(), all.end());
    EXPECT_EQ(set.size(), 7040u);
    for (const auto& a : all)
        for (auto g : kD4Elements) ASSERT_TRUE(set.count(apply_d4(a, g)));
}

TEST(Enumerate, WorkerCountDoesNotChangeOutput) { EXPECT_EQ(all_magic_squares(4, 3), all_magic_squares(4, 1)); }

TEST(Enumerate, RejectsOtherOrders) {
    EXPECT_THROW(enumerate_magic(5, [](const Arrangement&) {}), std::domain_error);
    EXPECT_THROW(enumerate_magic(2, [](const Arrangement&) {}), std::domain_error);
}
