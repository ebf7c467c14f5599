#pragma once

// JSON / CSV renderings of the library's result types. Floating values are
// rounded to 12 significant digits before serialization so that summary
// records stay stable across platforms.

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>

#include "gemlab/gemlab.hpp"
#include "json.hpp"

namespace gemlab::report {

using json = nlohmann::ordered_json;

inline double sig12(double v) {
    if (!std::isfinite(v) || v == 0.0) return v == 0.0 ? 0.0 : v;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

/// Doubled integer coordinate as an exact decimal ("-3" -> "-1.5").
inline std::string half_string(std::int64_t doubled) {
    if (doubled % 2 == 0) return std::to_string(doubled / 2);
    const std::int64_t whole = doubled / 2;  // truncates toward zero
    std::string s = std::to_string(whole < 0 ? -whole : whole) + ".5";
    return doubled < 0 ? "-" + s : s;
}

inline json rational(const Rational& r) { return json{{"exact", r.str()}, {"value", sig12(r.to_double())}}; }

inline json cells(const Arrangement& a) {
    json rows = json::array();
    for (int i = 0; i < a.order(); ++i) {
        json row = json::array();
        for (int j = 0; j < a.order(); ++j) row.push_back(a.at(i, j));
        rows.push_back(row);
    }
    return rows;
}

inline json line_sums_json(const LineSums& s) {
    return json{{"rows", s.rows},     {"cols", s.cols},         {"diag_main", s.diag_main},
                {"diag_anti", s.diag_anti}, {"row_deviations", s.row_dev}, {"col_deviations", s.col_dev}};
}

inline json stats_json(const LandscapeStats& st) {
    return json{{"total", st.total},
                {"mean", sig12(st.mean)},
                {"std", sig12(st.std)},
                {"mode_bin_center", sig12(st.mode_bin_center)},
                {"max_observed", sig12(st.max_observed)},
                {"entropy", sig12(st.entropy)},
                {"zero_count", st.zero_count},
                {"zero_fraction", sig12(st.zero_fraction)},
                {"bins", st.histogram.bin_count},
                {"bin_width", sig12(st.histogram.width())}};
}

inline std::string histogram_csv(const EnergyHistogram& h) {
    std::ostringstream os;
    os << "bin_lo,bin_hi,count\n";
    char buf[80];
    for (int k = 0; k < h.bin_count; ++k) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,", h.bin_lo(k), h.bin_hi(k));
        os << buf << h.counts[static_cast<std::size_t>(k)] << '\n';
    }
    return os.str();
}

inline json energy_json(const EnergyBreakdown& b) {
    json rows = json::array(), cols = json::array();
    for (const auto& r : b.row_covs) rows.push_back(r.str());
    for (const auto& c : b.col_covs) cols.push_back(c.str());
    return json{{"row_covs", rows},
                {"col_covs", cols},
                {"diag_main_cov", b.diag_main_cov.str()},
                {"diag_anti_cov", b.diag_anti_cov.str()},
                {"cov_xz", b.cov_xz.str()},
                {"cov_yz", b.cov_yz.str()},
                {"e_full", rational(b.exact(EnergyKind::full))},
                {"e_low", rational(b.exact(EnergyKind::low))},
                {"e_full_alllines", rational(b.exact(EnergyKind::full_alllines))},
                {"e_low_diagmean", rational(b.exact(EnergyKind::low_diagmean))},
                {"phi", sig12(b.phi)}};
}

inline json perturbation_json(const PerturbationReport& r) {
    return json{{"energy", std::string(to_string(r.kind))},
                {"base_energy", sig12(r.base_energy)},
                {"swaps", r.gaps.size()},
                {"min_gap", sig12(r.min_gap)},
                {"mean_gap", sig12(r.mean_gap)},
                {"std_gap", sig12(r.std_gap)},
                {"all_positive", r.all_positive}};
}

inline std::string gaps_csv(const PerturbationReport& r) {
    std::ostringstream os;
    os << "cell_a,cell_b,gap\n";  // cells written row:col
    char buf[40];
    for (const auto& g : r.gaps) {
        std::snprintf(buf, sizeof buf, "%.12g", g.gap);
        os << g.cell_a.row << ':' << g.cell_a.col << ',' << g.cell_b.row << ':' << g.cell_b.col << ',' << buf << '\n';
    }
    return os.str();
}

inline json moments_json(const MomentReport& m) {
    static constexpr const char* kAxis[] = {"x", "y", "z"};
    json cov = json::object();
    for (int r = 0; r < 3; ++r)
        for (int c = r; c < 3; ++c) cov[std::string(kAxis[r]) + kAxis[c]] = rational(m.cov[r][c]);
    json cross = json::object();
    for (const auto& [key, v] : m.cross_moments)
        cross["E[" + std::string(kAxis[static_cast<int>(key.first)]) + "^" + std::to_string(key.second) + " Z]"] =
            rational(v);
    return json{{"covariance", cov}, {"cross_moments", cross}};
}

inline json embed_json(const GemPointCloud& cloud, int max_power = 3) {
    json pts = json::array();
    for (const auto& p : cloud.points) pts.push_back({half_string(p.x), half_string(p.y), half_string(p.z)});
    const auto it = inertia_tensor(cloud);
    json tensor = json::array();
    for (const auto& row : it.tensor) {
        json r = json::array();
        for (const auto& v : row) r.push_back(v.str());
        tensor.push_back(r);
    }
    const auto w = weighted_vector_sums(cloud);
    auto vec = [](const std::array<Rational, 3>& v) { return json{v[0].str(), v[1].str(), v[2].str()}; };
    return json{{"n", cloud.n},
                {"points", pts},
                {"moments", moments_json(moment_report(cloud, max_power))},
                {"weighted_sums", {{"w_x", vec(w.w_x)}, {"w_y", vec(w.w_y)}}},
                {"inertia",
                 {{"tensor", tensor},
                  {"principal_moments",
                   {sig12(it.principal_moments[0]), sig12(it.principal_moments[1]), sig12(it.principal_moments[2])}}}}};
}

inline json hull_json(const HullSummary& s) {
    return json{{"volume", sig12(s.volume)},         {"surface_area", sig12(s.surface_area)},
                {"vertex_count", s.vertex_count},     {"edge_count", s.edge_count},
                {"face_count", s.face_count},         {"hull_fraction", sig12(s.hull_fraction)}};
}

}  // namespace gemlab::report
