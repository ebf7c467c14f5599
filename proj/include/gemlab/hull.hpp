#pragma once

// Incremental 3D convex hull over integer points. Every orientation test is
// an exact 64-bit determinant; floating point only enters volume and area.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "gemlab/gem.hpp"

namespace gemlab {

class DegenerateGeometryError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

namespace geom {

struct Vec3i {
    std::int64_t x, y, z;
};

inline Vec3i sub(const Point3i& a, const Point3i& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3i cross(const Vec3i& u, const Vec3i& v) {
    return {u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
}
inline std::int64_t dot(const Vec3i& u, const Vec3i& v) { return u.x * v.x + u.y * v.y + u.z * v.z; }
inline std::int64_t dot(const Vec3i& u, const Point3i& p) { return u.x * p.x + u.y * p.y + u.z * p.z; }

/// Positive when d lies on the side of plane (a, b, c) that the
/// right-handed normal (b-a) x (c-a) points to.
inline std::int64_t orient(const Point3i& a, const Point3i& b, const Point3i& c, const Point3i& d) {
    return dot(cross(sub(b, a), sub(c, a)), sub(d, a));
}

}  // namespace geom

struct ConvexHull {
    std::vector<Point3i> points;  // input cloud, integer coordinates
    double unit = 1.0;            // length of one integer step (0.5 for doubled gem coordinates)
    std::vector<std::array<int, 3>> facets;   // outward (counter-clockwise seen from outside)
    std::vector<std::vector<int>> merged_faces;  // facet indices sharing one supporting plane
    std::vector<std::vector<int>> face_corners;  // per merged face, its polygon corners
    std::vector<int> vertices;                   // extreme points, ascending index
};

namespace detail {

struct PlaneKey {
    std::int64_t nx, ny, nz, offset;
    friend auto operator<=>(const PlaneKey&, const PlaneKey&) = default;
};

inline PlaneKey plane_of(const std::vector<Point3i>& pts, const std::array<int, 3>& f) {
    geom::Vec3i nrm = geom::cross(geom::sub(pts[f[1]], pts[f[0]]), geom::sub(pts[f[2]], pts[f[0]]));
    const std::int64_t g = std::gcd(std::gcd(std::abs(nrm.x), std::abs(nrm.y)), std::abs(nrm.z));
    nrm = {nrm.x / g, nrm.y / g, nrm.z / g};
    return {nrm.x, nrm.y, nrm.z, geom::dot(nrm, pts[f[0]])};
}

// Strict corners of the convex polygon spanned by coplanar points.
inline std::vector<int> polygon_corners(const std::vector<Point3i>& pts, std::vector<int> ids, const PlaneKey& plane) {
    const std::int64_t ax = std::abs(plane.nx), ay = std::abs(plane.ny), az = std::abs(plane.nz);
    auto uv = [&](int id) -> std::pair<std::int64_t, std::int64_t> {
        const Point3i& p = pts[static_cast<std::size_t>(id)];
        if (az >= ax && az >= ay) return {p.x, p.y};
        if (ay >= ax) return {p.z, p.x};
        return {p.y, p.z};
    };
    std::sort(ids.begin(), ids.end(), [&](int a, int b) { return uv(a) < uv(b); });
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    auto turn = [&](int o, int a, int b) {
        const auto [ou, ov] = uv(o);
        const auto [au, av] = uv(a);
        const auto [bu, bv] = uv(b);
        return (au - ou) * (bv - ov) - (av - ov) * (bu - ou);
    };
    std::vector<int> h(2 * ids.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        while (k >= 2 && turn(h[k - 2], h[k - 1], ids[i]) <= 0) --k;
        h[k++] = ids[i];
    }
    for (std::size_t i = ids.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && turn(h[k - 2], h[k - 1], ids[i]) <= 0) --k;
        h[k++] = ids[i];
    }
    h.resize(k > 0 ? k - 1 : 0);
    return h;
}

}  // namespace detail

/// Hull of integer points; `unit` is the length of one integer step.
inline ConvexHull convex_hull(std::span<const Point3i> input, double unit = 1.0) {
    using geom::orient;
    ConvexHull hull;
    hull.points.assign(input.begin(), input.end());
    hull.unit = unit;
    const auto& p = hull.points;
    const int count = static_cast<int>(p.size());

    // Seed tetrahedron from the first points in index order that span 3D.
    int i1 = -1, i2 = -1, i3 = -1;
    for (int i = 1; i < count && i1 < 0; ++i)
        if (p[static_cast<std::size_t>(i)] != p[0]) i1 = i;
    for (int i = 1; i < count && i1 >= 0 && i2 < 0; ++i) {
        const auto c = geom::cross(geom::sub(p[static_cast<std::size_t>(i1)], p[0]), geom::sub(p[static_cast<std::size_t>(i)], p[0]));
        if (c.x != 0 || c.y != 0 || c.z != 0) i2 = i;
    }
    for (int i = 1; i < count && i2 >= 0 && i3 < 0; ++i)
        if (orient(p[0], p[static_cast<std::size_t>(i1)], p[static_cast<std::size_t>(i2)], p[static_cast<std::size_t>(i)]) != 0) i3 = i;
    if (i3 < 0) throw DegenerateGeometryError("convex_hull: points are coplanar or collinear");

    struct Face {
        std::array<int, 3> v;
        bool alive;
    };
    std::vector<Face> faces;
    std::map<std::pair<int, int>, int> edge_owner;  // directed edge -> face
    auto add_face = [&](int a, int b, int c) {
        const int id = static_cast<int>(faces.size());
        faces.push_back({{a, b, c}, true});
        edge_owner[{a, b}] = id;
        edge_owner[{b, c}] = id;
        edge_owner[{c, a}] = id;
    };
    auto kill_face = [&](int id) {
        auto& f = faces[static_cast<std::size_t>(id)];
        f.alive = false;
        for (int e = 0; e < 3; ++e) {
            auto it = edge_owner.find({f.v[e], f.v[(e + 1) % 3]});
            if (it != edge_owner.end() && it->second == id) edge_owner.erase(it);
        }
    };
    auto pt = [&](int i) -> const Point3i& { return p[static_cast<std::size_t>(i)]; };

    const std::array<int, 4> seed{0, i1, i2, i3};
    for (int skip = 0; skip < 4; ++skip) {
        std::array<int, 3> f{};
        int k = 0;
        for (int t = 0; t < 4; ++t)
            if (t != skip) f[k++] = seed[t];
        if (orient(pt(f[0]), pt(f[1]), pt(f[2]), pt(seed[skip])) > 0) std::swap(f[1], f[2]);
        add_face(f[0], f[1], f[2]);
    }

    for (int idx = 1; idx < count; ++idx) {
        if (idx == i1 || idx == i2 || idx == i3) continue;
        std::vector<int> visible;
        for (int fid = 0; fid < static_cast<int>(faces.size()); ++fid) {
            const auto& f = faces[static_cast<std::size_t>(fid)];
            if (f.alive && orient(pt(f.v[0]), pt(f.v[1]), pt(f.v[2]), pt(idx)) > 0) visible.push_back(fid);
        }
        if (visible.empty()) continue;  // inside or on the boundary
        std::vector<char> is_visible(faces.size(), 0);
        for (int fid : visible) is_visible[static_cast<std::size_t>(fid)] = 1;
        std::vector<std::pair<int, int>> horizon;
        for (int fid : visible) {
            const auto& f = faces[static_cast<std::size_t>(fid)];
            for (int e = 0; e < 3; ++e) {
                const int a = f.v[e], b = f.v[(e + 1) % 3];
                auto it = edge_owner.find({b, a});
                if (it == edge_owner.end() || !is_visible[static_cast<std::size_t>(it->second)]) horizon.emplace_back(a, b);
            }
        }
        for (int fid : visible) kill_face(fid);
        for (const auto& [a, b] : horizon) add_face(a, b, idx);
    }

    for (const auto& f : faces)
        if (f.alive) hull.facets.push_back(f.v);

    std::map<detail::PlaneKey, std::vector<int>> by_plane;
    for (int fid = 0; fid < static_cast<int>(hull.facets.size()); ++fid)
        by_plane[detail::plane_of(p, hull.facets[static_cast<std::size_t>(fid)])].push_back(fid);
    std::vector<char> corner(p.size(), 0);
    for (const auto& [plane, group] : by_plane) {
        std::vector<int> ids;
        for (int fid : group)
            for (int v : hull.facets[static_cast<std::size_t>(fid)]) ids.push_back(v);
        auto corners = detail::polygon_corners(p, ids, plane);
        for (int c : corners) corner[static_cast<std::size_t>(c)] = 1;
        hull.merged_faces.push_back(group);
        hull.face_corners.push_back(std::move(corners));
    }
    for (int i = 0; i < count; ++i)
        if (corner[static_cast<std::size_t>(i)]) hull.vertices.push_back(i);
    return hull;
}

inline ConvexHull convex_hull(const GemPointCloud& cloud) { return convex_hull(cloud.points, 0.5); }

/// Largest orient() of any input point against any facet; <= 0 means every
/// point is inside or on the hull.
inline std::int64_t max_facet_excess(const ConvexHull& h, const Point3i& q) {
    std::int64_t worst = std::numeric_limits<std::int64_t>::min();
    for (const auto& f : h.facets) {
        worst = std::max(worst, geom::orient(h.points[static_cast<std::size_t>(f[0])], h.points[static_cast<std::size_t>(f[1])],
                                             h.points[static_cast<std::size_t>(f[2])], q));
    }
    return worst;
}

inline bool strictly_interior(const ConvexHull& h, const Point3i& q) { return max_facet_excess(h, q) < 0; }

struct HullSummary {
    double volume = 0;
    double surface_area = 0;
    int vertex_count = 0;
    int edge_count = 0;
    int face_count = 0;  // merged faces
    double hull_fraction = 0;
};

/// Six times the volume in integer units, from origin-based tetrahedra.
inline std::int64_t volume_times6_exact(const ConvexHull& h) {
    std::int64_t s = 0;
    for (const auto& f : h.facets) {
        const auto& a = h.points[static_cast<std::size_t>(f[0])];
        const auto& b = h.points[static_cast<std::size_t>(f[1])];
        const auto& c = h.points[static_cast<std::size_t>(f[2])];
        s += geom::dot(geom::cross({b.x, b.y, b.z}, {c.x, c.y, c.z}), a);
    }
    return s;
}

/// Volume by the divergence theorem: (1/3) sum over facets of
/// (facet centroid . outward normal) * facet area.
inline double volume_divergence(const ConvexHull& h) {
    double s = 0;
    for (const auto& f : h.facets) {
        const auto& a = h.points[static_cast<std::size_t>(f[0])];
        const auto& b = h.points[static_cast<std::size_t>(f[1])];
        const auto& c = h.points[static_cast<std::size_t>(f[2])];
        const auto n2 = geom::cross(geom::sub(b, a), geom::sub(c, a));  // 2 * area * normal
        const double cx = (a.x + b.x + c.x) / 3.0, cy = (a.y + b.y + c.y) / 3.0, cz = (a.z + b.z + c.z) / 3.0;
        s += (cx * n2.x + cy * n2.y + cz * n2.z) / 6.0;
    }
    return s * h.unit * h.unit * h.unit;
}

inline HullSummary hull_summary(const ConvexHull& h) {
    HullSummary out;
    double cx = 0, cy = 0, cz = 0;
    for (int v : h.vertices) {
        cx += h.points[static_cast<std::size_t>(v)].x;
        cy += h.points[static_cast<std::size_t>(v)].y;
        cz += h.points[static_cast<std::size_t>(v)].z;
    }
    const double nv = static_cast<double>(h.vertices.size());
    cx /= nv;
    cy /= nv;
    cz /= nv;
    double vol = 0, area = 0;
    for (const auto& f : h.facets) {
        const auto& a = h.points[static_cast<std::size_t>(f[0])];
        const auto& b = h.points[static_cast<std::size_t>(f[1])];
        const auto& c = h.points[static_cast<std::size_t>(f[2])];
        const double ax = a.x - cx, ay = a.y - cy, az = a.z - cz;
        const double bx = b.x - cx, by = b.y - cy, bz = b.z - cz;
        const double qx = c.x - cx, qy = c.y - cy, qz = c.z - cz;
        vol += (ax * (by * qz - bz * qy) - ay * (bx * qz - bz * qx) + az * (bx * qy - by * qx)) / 6.0;
        const auto n2 = geom::cross(geom::sub(b, a), geom::sub(c, a));
        area += 0.5 * std::sqrt(static_cast<double>(n2.x * n2.x + n2.y * n2.y + n2.z * n2.z));
    }
    out.volume = vol * h.unit * h.unit * h.unit;
    out.surface_area = area * h.unit * h.unit;
    out.vertex_count = static_cast<int>(h.vertices.size());
    out.face_count = static_cast<int>(h.merged_faces.size());
    std::size_t corner_total = 0;
    for (const auto& c : h.face_corners) corner_total += c.size();
    out.edge_count = static_cast<int>(corner_total / 2);
    out.hull_fraction = static_cast<double>(out.vertex_count) / static_cast<double>(h.points.size());
    return out;
}

}  // namespace gemlab
