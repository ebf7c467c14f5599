// gemlab command-line front end.
//
// Exit codes: 0 success, 1 validation / domain / usage error, 2 search budget
// exhausted without a hit.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "gemlab/gemlab.hpp"
#include "gemlab/report.hpp"
#include "gemlab/tables.hpp"

namespace {

using gemlab::report::json;
using gemlab::report::sig12;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNotFound = 2;

struct Options {
    int n = 3;
    std::string in;
    std::string out;
    std::string method = "siamese";
    std::string energy;  // empty: per-command default
    std::string format = "json";
    std::string hist_out;
    std::string list_out;
    std::string gaps_csv;
    std::uint64_t seed = 0;
    std::uint64_t samples = 1'000'000;
    std::uint64_t max_iters = 1'000'000;
    unsigned workers = 1;
    int bins = gemlab::kDefaultBins;
    int max_power = 3;
    int which = 1;
    bool minima = false;
    bool balanced = false;
    bool dump_facets = false;
    bool non_magic = false;
    bool no_timing = false;
};

std::uint64_t default_seed() {
    if (const char* env = std::getenv("GEMLAB_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "warning: ignoring unparsable GEMLAB_SEED\n";
        }
    }
    return 0;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

std::string blocks(const std::vector<gemlab::Arrangement>& list) {
    std::ostringstream os;
    for (std::size_t k = 0; k < list.size(); ++k) {
        if (k) os << '\n';
        gemlab::write_arrangement(os, list[k]);
    }
    return os.str();
}

gemlab::Arrangement single_input(const Options& o) {
    auto all = gemlab::load_arrangements(o.in);
    if (all.empty()) throw gemlab::ParseError("no arrangement in " + o.in);
    return all.front();
}

class Runner {
public:
    Runner(std::string command, const Options& o) : command_(std::move(command)), o_(o), start_(std::chrono::steady_clock::now()) {}

    int emit(json config, json results) const {
        json rep{{"command", command_}, {"config", std::move(config)}, {"results", std::move(results)}, {"tool_version", gemlab::kVersion}};
        if (!o_.no_timing) {
            rep["elapsed"] = sig12(std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count());
        }
        write_text(o_.out, rep.dump(2) + "\n");
        return kExitOk;
    }

private:
    std::string command_;
    const Options& o_;
    std::chrono::steady_clock::time_point start_;
};

int cmd_construct(const Options& o) {
    gemlab::Arrangement a = o.method == "siamese" ? gemlab::siamese(o.n)
                            : o.method == "doubly-even" ? gemlab::doubly_even(o.n)
                                                        : throw std::invalid_argument("unknown method " + o.method);
    write_text(o.out, gemlab::to_text(a));
    return kExitOk;
}

int cmd_check(const Options& o) {
    json results = json::array();
    for (const auto& a : gemlab::load_arrangements(o.in)) {
        results.push_back({{"n", a.order()},
                           {"label", std::string(gemlab::to_string(gemlab::classify(a)))},
                           {"magic", gemlab::is_magic(a)},
                           {"magic_constant", gemlab::magic_constant(a.order())},
                           {"line_sums", gemlab::report::line_sums_json(gemlab::line_sums(a))}});
    }
    return Runner("check", o).emit({{"in", o.in}}, results);
}

int cmd_embed(const Options& o) {
    if (o.format != "json") throw std::invalid_argument("embed supports --format json only");
    const auto a = single_input(o);
    return Runner("embed", o).emit({{"in", o.in}, {"max_power", o.max_power}},
                                   gemlab::report::embed_json(gemlab::embed(a), o.max_power));
}

int cmd_hull(const Options& o) {
    const auto a = single_input(o);
    const auto h = gemlab::convex_hull(gemlab::embed(a));
    json results = gemlab::report::hull_json(gemlab::hull_summary(h));
    results["vertices"] = h.vertices;
    if (o.dump_facets) results["facets"] = h.facets;
    return Runner("hull", o).emit({{"in", o.in}, {"dump_facets", o.dump_facets}}, results);
}

int cmd_energy(const Options& o) {
    const auto kind = gemlab::parse_energy_kind(o.energy);
    json results = json::array();
    for (const auto& a : gemlab::load_arrangements(o.in)) {
        const auto b = gemlab::energy(a);
        json r = gemlab::report::energy_json(b);
        r["energy"] = gemlab::report::rational(b.exact(kind));
        r["is_zero_full"] = gemlab::is_zero_full(a);
        results.push_back(r);
    }
    return Runner("energy", o).emit({{"in", o.in}, {"energy", std::string(gemlab::to_string(kind))}}, results);
}

int cmd_perturb(const Options& o) {
    const auto kind = gemlab::parse_energy_kind(o.energy);
    const auto squares = gemlab::load_arrangements(o.in);
    if (o.format == "csv") {
        if (squares.size() != 1) throw std::invalid_argument("--format csv expects a single arrangement");
        write_text(o.out, gemlab::report::gaps_csv(gemlab::perturbation_gaps(squares.front(), kind)));
        return kExitOk;
    }
    json per = json::array();
    for (const auto& a : squares) per.push_back(gemlab::report::perturbation_json(gemlab::perturbation_gaps(a, kind)));
    if (!o.gaps_csv.empty()) write_text(o.gaps_csv, gemlab::report::gaps_csv(gemlab::perturbation_gaps(squares.front(), kind)));
    json results{{"per_square", per},
                 {"summary", gemlab::tables::gap_json(gemlab::tables::gap_statistics(squares, kind))}};
    return Runner("perturb", o).emit({{"in", o.in}, {"energy", std::string(gemlab::to_string(kind))}}, results);
}

int cmd_enumerate(const Options& o) {
    std::ostringstream body;
    bool first = true;
    const auto s = gemlab::enumerate_magic(
        o.n,
        [&](const gemlab::Arrangement& a) {
            if (!first) body << '\n';
            first = false;
            gemlab::write_arrangement(body, a);
        },
        o.workers);
    body << "\n# total_magic " << s.total_magic << "\n# class_count " << s.class_count << "\n# order " << s.order << "\n";
    json summary{{"order", s.order}, {"total_magic", s.total_magic}, {"class_count", s.class_count}};
    if (!o.no_timing) summary["elapsed_seconds"] = sig12(s.elapsed_seconds);
    if (o.out.empty()) {
        std::cout << body.str();
        return kExitOk;
    }
    write_text(o.out, body.str());
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

int cmd_scan(const Options& o) {
    const auto kind = gemlab::parse_energy_kind(o.energy);
    const auto scan = gemlab::exhaustive_scan(kind, o.bins, o.workers);
    json results{{"stats", gemlab::report::stats_json(scan.stats)}};
    json zeros = json::array();
    for (const auto& z : scan.zeros) zeros.push_back(gemlab::report::cells(z));
    results["zeros"] = zeros;
    std::vector<gemlab::Arrangement> listed = scan.zeros;
    if (o.minima) {
        const auto m = gemlab::count_local_minima(kind, o.workers);
        results["local_minima"] = {{"total", m.total_minima}, {"global", m.global_minima}, {"non_global", m.non_global}};
        listed = m.minima;
    }
    if (o.balanced) {
        const auto bal = gemlab::aggregate_balanced_order3();
        std::size_t magic = 0, cols_16_13_16 = 0;
        for (const auto& a : bal) {
            magic += gemlab::is_magic(a);
            const auto ls = gemlab::line_sums(a);
            cols_16_13_16 += ls.cols == std::vector<std::int64_t>{16, 13, 16};
        }
        results["aggregate_balanced"] = {{"total", bal.size()}, {"magic", magic}, {"col_sums_16_13_16", cols_16_13_16}};
        if (!o.minima) listed = bal;
    }
    if (!o.hist_out.empty()) write_text(o.hist_out, gemlab::report::histogram_csv(scan.stats.histogram));
    if (!o.list_out.empty()) write_text(o.list_out, blocks(listed));
    return Runner("scan", o).emit({{"n", 3},
                                   {"energy", std::string(gemlab::to_string(kind))},
                                   {"bins", o.bins},
                                   {"minima", o.minima},
                                   {"balanced", o.balanced}},
                                  results);
}

int cmd_minima(const Options& o) {
    const auto kind = gemlab::parse_energy_kind(o.energy);
    const auto m = gemlab::count_local_minima(kind, o.workers);
    if (!o.list_out.empty()) write_text(o.list_out, blocks(m.minima));
    return Runner("minima", o).emit({{"n", 3}, {"energy", std::string(gemlab::to_string(kind))}},
                                    {{"total", m.total_minima}, {"global", m.global_minima}, {"non_global", m.non_global}});
}

int cmd_sample(const Options& o) {
    gemlab::SamplingConfig cfg{o.n, o.samples, o.seed, o.workers, gemlab::parse_energy_kind(o.energy), o.bins};
    const auto st = gemlab::sample_landscape(cfg);
    if (!o.hist_out.empty()) write_text(o.hist_out, gemlab::report::histogram_csv(st.histogram));
    // workers are left out of the snapshot: results do not depend on them
    return Runner("sample", o).emit({{"n", cfg.n},
                                     {"samples", cfg.samples},
                                     {"seed", cfg.seed},
                                     {"energy", std::string(gemlab::to_string(cfg.energy_kind))},
                                     {"bins", cfg.bins}},
                                    gemlab::report::stats_json(st));
}

int cmd_search_zero(const Options& o) {
    const auto res = gemlab::search_low_mode_zero(o.n, o.seed, o.max_iters, o.non_magic);
    json results{{"found", res.found.has_value()}, {"steps", res.steps}, {"restarts", res.restarts}};
    if (res.found) {
        results["label"] = std::string(gemlab::to_string(gemlab::classify(*res.found)));
        results["arrangement"] = gemlab::report::cells(*res.found);
        if (!o.list_out.empty()) write_text(o.list_out, gemlab::to_text(*res.found));
    }
    Runner("search-zero", o).emit({{"n", o.n}, {"seed", o.seed}, {"max_iters", o.max_iters}, {"non_magic", o.non_magic}},
                                  results);
    if (!res.found) {
        std::cerr << "search-zero: budget of " << o.max_iters << " steps exhausted\n";
        return kExitNotFound;
    }
    return kExitOk;
}

int cmd_tables(const Options& o) {
    json results;
    switch (o.which) {
        case 1: results = gemlab::tables::table1(o.workers); break;
        case 2: results = gemlab::tables::table2(o.workers); break;
        case 3: results = gemlab::tables::table3({o.samples, o.seed, o.workers, o.bins}); break;
        case 4: results = gemlab::tables::table4(o.workers); break;
        default: throw std::invalid_argument("tables: --which must be 1, 2, 3 or 4");
    }
    return Runner("tables", o).emit({{"which", o.which}, {"samples", o.samples}, {"seed", o.seed}, {"bins", o.bins}}, results);
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    o.seed = default_seed();
    o.workers = std::max(1u, std::thread::hardware_concurrency());

    CLI::App app{"gemlab: magic squares as 3D point clouds, covariance energies and landscape statistics"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(gemlab::kVersion));

    auto add_in = [&](CLI::App* s) { s->add_option("--in", o.in, "Arrangement text file")->required()->check(CLI::ExistingFile); };
    auto add_out = [&](CLI::App* s) {
        s->add_option("--out", o.out, "Write the report here instead of standard output");
        s->add_flag("--no-timing", o.no_timing, "Omit elapsed time so reruns are byte-identical");
    };
    auto add_energy = [&](CLI::App* s, const std::string& def) {
        s->add_option("--energy,--kind", o.energy, "Energy: full|low|alllines|diagmean (default " + def + ")")
            ->check(CLI::IsMember({"full", "low", "alllines", "full_alllines", "diagmean", "low_diagmean"}));
    };
    auto add_workers = [&](CLI::App* s) { s->add_option("--workers", o.workers, "Worker threads")->capture_default_str(); };
    auto add_seed = [&](CLI::App* s) { s->add_option("--seed", o.seed, "64-bit seed (default from GEMLAB_SEED, else 0)")->capture_default_str(); };
    auto add_bins = [&](CLI::App* s) { s->add_option("--bins", o.bins, "Histogram bins")->check(CLI::PositiveNumber)->capture_default_str(); };

    auto* construct = app.add_subcommand("construct", "Build a magic square by a classical method");
    construct->add_option("--n", o.n, "Order")->required();
    construct->add_option("--method", o.method, "siamese|doubly-even")->check(CLI::IsMember({"siamese", "doubly-even"}))->capture_default_str();
    add_out(construct);

    auto* check = app.add_subcommand("check", "Classify arrangements and report line sums");
    add_in(check);
    add_out(check);

    auto* embed = app.add_subcommand("embed", "Gem point cloud, moments, weighted sums and inertia tensor");
    add_in(embed);
    add_out(embed);
    embed->add_option("--format", o.format, "json")->check(CLI::IsMember({"json"}))->capture_default_str();
    embed->add_option("--max-power", o.max_power, "Highest k for E[X^k Z], E[Y^k Z]")->check(CLI::Range(1, 10))->capture_default_str();

    auto* hull = app.add_subcommand("hull", "Convex hull summary of the gem");
    add_in(hull);
    add_out(hull);
    hull->add_flag("--dump-facets", o.dump_facets, "Include the triangle list");

    auto* energy = app.add_subcommand("energy", "Covariance breakdown and energies");
    add_in(energy);
    add_out(energy);
    add_energy(energy, "full");

    auto* perturb = app.add_subcommand("perturb", "Single-swap perturbation gaps");
    add_in(perturb);
    add_out(perturb);
    add_energy(perturb, "full");
    perturb->add_option("--format", o.format, "json|csv (csv prints cell_a,cell_b,gap)")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    perturb->add_option("--gaps-csv", o.gaps_csv, "Also write the gaps of the first square as CSV");

    auto* enumerate = app.add_subcommand("enumerate", "All magic squares of order 3 or 4");
    enumerate->add_option("--n", o.n, "Order (3 or 4)")->required();
    add_out(enumerate);
    add_workers(enumerate);

    auto* scan = app.add_subcommand("scan", "Exhaustive order-3 landscape");
    add_out(scan);
    add_energy(scan, "low");
    add_workers(scan);
    add_bins(scan);
    scan->add_flag("--minima", o.minima, "Also count local minima");
    scan->add_flag("--balanced", o.balanced, "Also count aggregate-balanced arrangements");
    scan->add_option("--hist-out", o.hist_out, "Histogram CSV (bin_lo,bin_hi,count)");
    scan->add_option("--list-out", o.list_out, "Zero / minima / balanced list in arrangement text format");

    auto* minima = app.add_subcommand("minima", "Order-3 local-minima census");
    add_out(minima);
    add_energy(minima, "full");
    add_workers(minima);
    minima->add_option("--list-out", o.list_out, "Minima in arrangement text format");

    auto* sample = app.add_subcommand("sample", "Reproducible random sampling of the landscape");
    sample->add_option("--n", o.n, "Order")->required();
    sample->add_option("--samples", o.samples, "Sample count")->check(CLI::PositiveNumber)->capture_default_str();
    add_seed(sample);
    add_workers(sample);
    add_energy(sample, "low");
    add_bins(sample);
    add_out(sample);
    sample->add_option("--hist-out", o.hist_out, "Histogram CSV (bin_lo,bin_hi,count)");

    auto* search = app.add_subcommand("search-zero", "Hill-climb to an exact low-mode zero");
    search->add_option("--n", o.n, "Order (>= 3)")->required();
    add_seed(search);
    search->add_option("--max-iters", o.max_iters, "Budget of neighbourhood scans")->capture_default_str();
    search->add_flag("--non-magic", o.non_magic, "Skip magic zeros");
    search->add_option("--list-out", o.list_out, "Write the hit in arrangement text format");
    add_out(search);

    auto* tables = app.add_subcommand("tables", "Regenerate a published summary table (1-4)");
    tables->add_option("--which", o.which, "Table number")->required()->check(CLI::Range(1, 4));
    tables->add_option("--samples", o.samples, "Samples per sampled order (table 3)")->capture_default_str();
    add_seed(tables);
    add_workers(tables);
    add_bins(tables);
    add_out(tables);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    auto energy_default = [&](const std::string& def) {
        if (o.energy.empty()) o.energy = def;
    };
    if (*energy || *perturb || *minima) energy_default("full");
    if (*scan || *sample) energy_default("low");

    try {
        if (*construct) return cmd_construct(o);
        if (*check) return cmd_check(o);
        if (*embed) return cmd_embed(o);
        if (*hull) return cmd_hull(o);
        if (*energy) return cmd_energy(o);
        if (*perturb) return cmd_perturb(o);
        if (*enumerate) return cmd_enumerate(o);
        if (*scan) return cmd_scan(o);
        if (*minima) return cmd_minima(o);
        if (*sample) return cmd_sample(o);
        if (*search) return cmd_search_zero(o);
        if (*tables) return cmd_tables(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
