#pragma once

// Magic Gem embedding. Cell (i, j) holding s maps to
//   x = j - (n-1)/2,  y = (n-1)/2 - i,  z = s - (n^2+1)/2.
// Those are half-integers for even n, so points are stored doubled; every
// first and second moment is then an integer over 4n^2.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gemlab/arrangement.hpp"
#include "gemlab/rational.hpp"

namespace gemlab {

struct Point3i {
    std::int64_t x = 0;
    std::int64_t y = 0;
    std::int64_t z = 0;
    friend constexpr auto operator<=>(const Point3i&, const Point3i&) = default;
};

struct GemPointCloud {
    int n = 0;
    std::vector<Point3i> points;  // doubled coordinates, row-major cell order
};

inline GemPointCloud embed(const Arrangement& a) {
    const int n = a.order();
    const std::int64_t shift_xy = n - 1;
    const std::int64_t shift_z = static_cast<std::int64_t>(n) * n + 1;
    GemPointCloud cloud{n, {}};
    cloud.points.reserve(a.size());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            cloud.points.push_back({2 * j - shift_xy, shift_xy - 2 * i, 2 * std::int64_t{a.at(i, j)} - shift_z});
        }
    }
    return cloud;
}

/// The plane isometry induced by g, acting on doubled (x, y).
inline constexpr std::pair<std::int64_t, std::int64_t> d4_map_plane(D4Element g, std::int64_t x, std::int64_t y) {
    switch (g) {
        case D4Element::identity: return {x, y};
        case D4Element::rot90: return {y, -x};
        case D4Element::rot180: return {-x, -y};
        case D4Element::rot270: return {-y, x};
        case D4Element::flip_h: return {-x, y};
        case D4Element::flip_v: return {x, -y};
        case D4Element::flip_diag_main: return {-y, -x};
        case D4Element::flip_diag_anti: return {y, x};
    }
    return {x, y};
}

using Mat3r = std::array<std::array<Rational, 3>, 3>;
using Mat3d = std::array<std::array<double, 3>, 3>;

inline Mat3d to_double(const Mat3r& m) {
    Mat3d out{};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) out[r][c] = m[r][c].to_double();
    return out;
}

enum class Axis : std::uint8_t { x = 0, y = 1, z = 2 };

struct MomentReport {
    Mat3r cov;      // population covariance, axes ordered x, y, z
    Mat3d cov_f{};  // floating mirror of cov
    // (axis, k) -> E[axis^k Z], axis in {x, y}
    std::map<std::pair<Axis, int>, Rational> cross_moments;

    Rational var_x() const { return cov[0][0]; }
    Rational var_y() const { return cov[1][1]; }
    Rational var_z() const { return cov[2][2]; }
    Rational cov_xy() const { return cov[0][1]; }
    Rational cov_xz() const { return cov[0][2]; }
    Rational cov_yz() const { return cov[1][2]; }
    Rational cross(Axis axis, int k) const { return cross_moments.at({axis, k}); }
};

namespace detail {
inline std::int64_t coord(const Point3i& p, int axis) { return axis == 0 ? p.x : axis == 1 ? p.y : p.z; }

inline std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}
}  // namespace detail

inline MomentReport moment_report(const GemPointCloud& cloud, int max_power = 3) {
    if (max_power < 1) throw std::domain_error("moment_report: max_power must be >= 1");
    if (max_power > 10) throw std::domain_error("moment_report: max_power above 10 overflows exact arithmetic");
    const std::int64_t nn = static_cast<std::int64_t>(cloud.n) * cloud.n;
    MomentReport rep;
    for (int r = 0; r < 3; ++r) {
        for (int c = r; c < 3; ++c) {
            std::int64_t s = 0;
            for (const auto& p : cloud.points) s += detail::coord(p, r) * detail::coord(p, c);
            rep.cov[r][c] = rep.cov[c][r] = Rational(s, 4 * nn);
        }
    }
    rep.cov_f = to_double(rep.cov);
    for (int axis = 0; axis < 2; ++axis) {
        for (int k = 1; k <= max_power; ++k) {
            std::int64_t s = 0;
            for (const auto& p : cloud.points) s += detail::ipow(detail::coord(p, axis), k) * p.z;
            // doubled coordinates contribute 2^k from the axis and 2 from z
            rep.cross_moments[{static_cast<Axis>(axis), k}] = Rational(s, detail::ipow(2, k + 1) * nn);
        }
    }
    return rep;
}

struct WeightedSums {
    std::array<Rational, 3> w_x;  // sum of x * v over cells
    std::array<Rational, 3> w_y;  // sum of y * v over cells
};

inline WeightedSums weighted_vector_sums(const GemPointCloud& cloud) {
    WeightedSums w;
    for (int axis = 0; axis < 3; ++axis) {
        std::int64_t sx = 0, sy = 0;
        for (const auto& p : cloud.points) {
            sx += p.x * detail::coord(p, axis);
            sy += p.y * detail::coord(p, axis);
        }
        w.w_x[static_cast<std::size_t>(axis)] = Rational(sx, 4);
        w.w_y[static_cast<std::size_t>(axis)] = Rational(sy, 4);
    }
    return w;
}

/// Eigenvalues of a symmetric 3x3 matrix in descending order, by the
/// trigonometric closed form. Near-equal roots collapse onto the mean.
inline std::array<double, 3> symmetric_eigenvalues(const Mat3d& a) {
    const double scale = std::max({std::abs(a[0][0]), std::abs(a[1][1]), std::abs(a[2][2]), std::abs(a[0][1]),
                                   std::abs(a[0][2]), std::abs(a[1][2]), 1e-300});
    const double off = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
    std::array<double, 3> e{};
    if (off <= 1e-24 * scale * scale) {
        e = {a[0][0], a[1][1], a[2][2]};
    } else {
        const double q = (a[0][0] + a[1][1] + a[2][2]) / 3.0;
        const double d0 = a[0][0] - q, d1 = a[1][1] - q, d2 = a[2][2] - q;
        const double p2 = d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * off;
        const double p = std::sqrt(p2 / 6.0);
        if (p <= 1e-12 * scale) {
            e = {q, q, q};
        } else {
            const double b00 = d0 / p, b11 = d1 / p, b22 = d2 / p;
            const double b01 = a[0][1] / p, b02 = a[0][2] / p, b12 = a[1][2] / p;
            const double det = b00 * (b11 * b22 - b12 * b12) - b01 * (b01 * b22 - b12 * b02) +
                               b02 * (b01 * b12 - b11 * b02);
            const double r = std::clamp(det / 2.0, -1.0, 1.0);
            const double phi = std::acos(r) / 3.0;
            const double e1 = q + 2.0 * p * std::cos(phi);
            const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
            e = {e1, 3.0 * q - e1 - e3, e3};
        }
    }
    std::sort(e.begin(), e.end(), std::greater<>());
    return e;
}

struct InertiaTensor {
    Mat3r tensor;  // unit masses
    std::array<double, 3> principal_moments{};  // descending
};

inline InertiaTensor inertia_tensor(const GemPointCloud& cloud) {
    std::array<std::array<std::int64_t, 3>, 3> second{};  // sum of doubled products
    for (const auto& p : cloud.points) {
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) second[r][c] += detail::coord(p, r) * detail::coord(p, c);
    }
    const std::int64_t norm2 = second[0][0] + second[1][1] + second[2][2];
    InertiaTensor it;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            const std::int64_t v = (r == c ? norm2 : 0) - second[r][c];
            it.tensor[r][c] = Rational(v, 4);
        }
    }
    it.principal_moments = symmetric_eigenvalues(to_double(it.tensor));
    return it;
}

/// Trace identity for unit masses: trace(I) = 2 * sum |p|^2.
inline Rational sum_squared_norms(const GemPointCloud& cloud) {
    std::int64_t s = 0;
    for (const auto& p : cloud.points) s += p.x * p.x + p.y * p.y + p.z * p.z;
    return Rational(s, 4);
}

}  // namespace gemlab
