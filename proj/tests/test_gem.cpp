#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "gemlab/construct.hpp"
#include "gemlab/gem.hpp"

using namespace gemlab;

namespace {

// E[X^k Z] by summing half-integer coordinates directly.
Rational direct_cross(const Arrangement& a, int k, bool use_x) {
    const int n = a.order();
    Rational sum(0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Rational x(2 * j - (n - 1), 2), y((n - 1) - 2 * i, 2);
            const Rational z(2 * a.at(i, j) - (n * n + 1), 2);
            Rational p(1);
            for (int e = 0; e < k; ++e) p = p * (use_x ? x : y);
            sum = sum + p * z;
        }
    return sum / Rational(n * n);
}

// Coefficients of det(t I - A) = t^3 - c2 t^2 + c1 t - c0.
std::array<double, 3> charpoly(const Mat3d& m) {
    const double c2 = m[0][0] + m[1][1] + m[2][2];
    const double c1 = m[0][0] * m[1][1] + m[0][0] * m[2][2] + m[1][1] * m[2][2] - m[0][1] * m[1][0] - m[0][2] * m[2][0] -
                      m[1][2] * m[2][1];
    const double c0 = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                      m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    return {c2, c1, c0};
}

}  // namespace

TEST(Embed, LoShuPoints) {
    const auto cloud = embed(fixtures::lo_shu());
    ASSERT_EQ(cloud.points.size(), 9u);
    // doubled coordinates: (-1, 1, -3) for the top-left cell holding 2
    EXPECT_EQ(cloud.points[0], (Point3i{-2, 2, -6}));
    EXPECT_EQ(cloud.points[4], (Point3i{0, 0, 0}));
}

TEST(Embed, CenteredForEveryOrder3Arrangement) {
    std::vector<Value> v{1, 2, 3, 4, 5, 6, 7, 8, 9};
    do {
        const auto cloud = embed(Arrangement::validate(3, v));
        std::int64_t sx = 0, sy = 0, sz = 0;
        for (const auto& p : cloud.points) sx += p.x, sy += p.y, sz += p.z;
        ASSERT_EQ(sx, 0);
        ASSERT_EQ(sy, 0);
        ASSERT_EQ(sz, 0);
    } while (std::next_permutation(v.begin(), v.end()));
}

TEST(Moments, Variances) {
    for (int n : {3, 4, 5, 7}) {
        for (const auto& a : {Arrangement::identity(n), n % 2 ? siamese(n) : doubly_even(4)}) {
            if (a.order() != n) continue;
            const auto m = moment_report(embed(a));
            EXPECT_EQ(m.var_z(), Rational(std::int64_t{n} * n * n * n - 1, 12));
            EXPECT_EQ(m.var_x(), Rational(n * n - 1, 12));
            EXPECT_EQ(m.var_y(), Rational(n * n - 1, 12));
            EXPECT_EQ(m.cov_xy(), Rational(0));
        }
    }
    const auto m = moment_report(embed(fixtures::lo_shu()));
    EXPECT_EQ(m.var_z(), Rational(20, 3));
    EXPECT_EQ(m.var_x(), Rational(2, 3));
}

TEST(Moments, MagicSquaresVanish) {
    for (const auto& a : {siamese(3), doubly_even(4), siamese(5), siamese(7), doubly_even(8)}) {
        const auto m = moment_report(embed(a));
        EXPECT_TRUE(m.cov_xz().is_zero());
        EXPECT_TRUE(m.cov_yz().is_zero());
        for (int k = 2; k <= 3; ++k) {
            EXPECT_TRUE(m.cross(Axis::x, k).is_zero()) << a.order() << " k=" << k;
            EXPECT_TRUE(m.cross(Axis::y, k).is_zero()) << a.order() << " k=" << k;
        }
    }
}

TEST(Moments, BalancedSquareSecondMoment) {
    const auto a = fixtures::balanced3();
    const auto m = moment_report(embed(a), 5);
    EXPECT_TRUE(m.cov_xz().is_zero());
    EXPECT_TRUE(m.cov_yz().is_zero());
    EXPECT_EQ(direct_cross(a, 2, true), Rational(2, 9));
    EXPECT_EQ(m.cross(Axis::x, 2), Rational(2, 9));
    for (int k = 1; k <= 5; ++k) {
        EXPECT_EQ(m.cross(Axis::x, k), direct_cross(a, k, true)) << k;
        EXPECT_EQ(m.cross(Axis::y, k), direct_cross(a, k, false)) << k;
    }
}

TEST(Moments, PowerBounds) {
    const auto cloud = embed(fixtures::lo_shu());
    EXPECT_THROW(moment_report(cloud, 0), std::domain_error);
    EXPECT_NO_THROW(moment_report(cloud, 10));
    EXPECT_THROW(moment_report(cloud, 11), std::domain_error);
    EXPECT_THROW(moment_report(cloud).cross(Axis::x, 4), std::out_of_range);
}

TEST(WeightedSums, Fixtures) {
    const auto w = weighted_vector_sums(embed(fixtures::row_major3()));
    EXPECT_EQ(w.w_x[0], Rational(6));
    EXPECT_EQ(w.w_y[2], Rational(-18));
    const auto lo = weighted_vector_sums(embed(fixtures::lo_shu()));
    EXPECT_TRUE(lo.w_x[2].is_zero());
    EXPECT_TRUE(lo.w_y[2].is_zero());
    EXPECT_EQ(lo.w_x[0], Rational(6));
}

TEST(Inertia, Fixtures) {
    const auto lo = inertia_tensor(embed(fixtures::lo_shu()));
    EXPECT_TRUE(lo.tensor[0][2].is_zero());
    EXPECT_TRUE(lo.tensor[1][2].is_zero());
    EXPECT_EQ(inertia_tensor(embed(fixtures::lowmode4())).tensor[2][2], Rational(40));
    EXPECT_EQ(inertia_tensor(embed(fixtures::row_major3())).tensor[2][2], Rational(12));
}

TEST(Inertia, PrincipalMomentsMatchCharacteristicPolynomial) {
    for (const auto& a : {fixtures::lo_shu(), fixtures::balanced3(), fixtures::row_major3(), fixtures::lowmode4(), siamese(5)}) {
        const auto t = inertia_tensor(embed(a));
        const auto [c2, c1, c0] = charpoly(to_double(t.tensor));
        const auto& l = t.principal_moments;
        // three values are the roots iff they reproduce every coefficient
        EXPECT_NEAR(l[0] + l[1] + l[2], c2, 1e-10 * std::abs(c2));
        EXPECT_NEAR(l[0] * l[1] + l[0] * l[2] + l[1] * l[2], c1, 1e-10 * std::abs(c1));
        EXPECT_NEAR(l[0] * l[1] * l[2], c0, 1e-10 * std::abs(c0));
        for (double x : l) EXPECT_NEAR(((x - c2) * x + c1) * x - c0, 0.0, 1e-10 * std::abs(c0));
        EXPECT_GE(l[0], l[1]);
        EXPECT_GE(l[1], l[2]);
    }
}

TEST(Inertia, PrincipalMomentsInvariantUnderD4) {
    const auto base = inertia_tensor(embed(fixtures::balanced3())).principal_moments;
    for (auto g : kD4Elements) {
        const auto p = inertia_tensor(embed(apply_d4(fixtures::balanced3(), g))).principal_moments;
        for (int k = 0; k < 3; ++k) EXPECT_NEAR(p[k], base[k], 1e-9);
    }
}

TEST(Eigen, DiagonalAndRepeated) {
    const auto e = symmetric_eigenvalues({{{3, 0, 0}, {0, 1, 0}, {0, 0, 2}}});
    EXPECT_DOUBLE_EQ(e[0], 3);
    EXPECT_DOUBLE_EQ(e[1], 2);
    EXPECT_DOUBLE_EQ(e[2], 1);
    const auto r = symmetric_eigenvalues({{{2, 1, 1}, {1, 2, 1}, {1, 1, 2}}});
    EXPECT_NEAR(r[0], 4, 1e-12);
    EXPECT_NEAR(r[1], 1, 1e-12);
    EXPECT_NEAR(r[2], 1, 1e-12);
}

TEST(Embed, D4ActsAsPlaneIsometry) {
    const auto a = fixtures::lowmode4();
    const auto base = embed(a);
    for (auto g : kD4Elements) {
        std::vector<Point3i> mapped;
        for (const auto& p : base.points) {
            const auto [x, y] = d4_map_plane(g, p.x, p.y);
            mapped.push_back({x, y, p.z});
        }
        auto image = embed(apply_d4(a, g)).points;
        std::sort(mapped.begin(), mapped.end());
        std::sort(image.begin(), image.end());
        EXPECT_EQ(mapped, image) << to_string(g);
    }
}
