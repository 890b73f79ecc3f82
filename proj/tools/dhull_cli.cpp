#include <dhull/baseline.hpp>
#include <dhull/bench.hpp>
#include <dhull/cfrac.hpp>
#include <dhull/hull.hpp>
#include <dhull/shape_io.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_bad_input = 2;

std::vector<long long> parse_radii(const std::string& text) {
    std::vector<long long> radii;
    std::stringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        if (token.empty()) continue;
        std::size_t pos = 0;
        const long long value = std::stoll(token, &pos);
        if (pos != token.size())
            throw std::invalid_argument("bad radius '" + token + "'");
        radii.push_back(value);
    }
    if (radii.empty()) throw std::invalid_argument("no radii given");
    return radii;
}

int run_convergents(const std::string& ratio_text) {
    const dhull::Rational ratio = dhull::parse_rational(ratio_text);
    for (const auto& conv : dhull::convergents(ratio)) {
        std::cout << conv.index << " " << conv.quotient << " "
                  << conv.point.dx << " " << conv.point.dy << "\n";
    }
    return exit_ok;
}

// A rational point inside the body to bootstrap the hull from: the disk's
// center, or the vertex average for a polygon.
dhull::RationalPoint interior_point(const dhull::BodyOracle& body) {
    if (const auto* disk = dynamic_cast<const dhull::DiskBody*>(&body))
        return dhull::RationalPoint{disk->center_x(), disk->center_y()};
    const auto* poly = dynamic_cast<const dhull::PolygonBody*>(&body);
    if (!poly) throw std::invalid_argument("unsupported body kind");
    dhull::Rational sx(0);
    dhull::Rational sy(0);
    for (std::size_t i = 0; i < poly->vertex_count(); ++i) {
        sx = sx + poly->vertex(i).x;
        sy = sy + poly->vertex(i).y;
    }
    const auto n = dhull::Rational(1, static_cast<dhull::Coord>(
                                          poly->vertex_count()));
    return dhull::RationalPoint{sx * n, sy * n};
}

void print_hull(const dhull::HullChain& chain, long long oracle_calls,
                bool empty, const std::string& format) {
    if (format == "csv") {
        std::cout << "x,y,edge_weight\n";
        for (std::size_t i = 0; i < chain.vertices.size(); ++i) {
            std::cout << chain.vertices[i].x << "," << chain.vertices[i].y
                      << ",";
            if (i < chain.edge_weights.size())
                std::cout << chain.edge_weights[i];
            std::cout << "\n";
        }
        std::cout << "# vertex_count=" << chain.vertices.size()
                  << " boundary_count=" << (empty ? 0 : chain.boundary_count)
                  << " oracle_calls=" << oracle_calls
                  << " max_iterations=" << chain.max_edge_iterations << "\n";
        return;
    }
    std::cout << "{\"vertices\":[";
    for (std::size_t i = 0; i < chain.vertices.size(); ++i) {
        if (i) std::cout << ",";
        std::cout << "[" << chain.vertices[i].x << ","
                  << chain.vertices[i].y << "]";
    }
    std::cout << "],\"edge_weights\":[";
    for (std::size_t i = 0; i < chain.edge_weights.size(); ++i) {
        if (i) std::cout << ",";
        std::cout << chain.edge_weights[i];
    }
    std::cout << "],\"boundary_count\":" << (empty ? 0 : chain.boundary_count)
              << ",\"vertex_count\":" << chain.vertices.size()
              << ",\"oracle_calls\":" << oracle_calls
              << ",\"max_iterations\":" << chain.max_edge_iterations << "}\n";
}

int run_hull(const std::string& shape_arg, const std::string& algorithm,
             const std::string& format) {
    const auto body = dhull::load_shape(shape_arg);
    dhull::CountingBody counted(*body);

    dhull::HullChain chain;
    bool empty = false;
    if (algorithm == "naive") {
        try {
            chain = dhull::naive_hull(counted);
        } catch (const std::runtime_error&) {
            empty = true;
        }
    } else {
        const auto vertex =
            dhull::find_hull_vertex_general(counted, interior_point(*body));
        if (vertex) {
            chain = dhull::discrete_hull(counted, *vertex);
        } else {
            empty = true;
        }
    }
    if (empty) chain = dhull::HullChain{};
    print_hull(chain, counted.total_calls(), empty, format);
    return exit_ok;
}

int run_bench(const std::string& radii_text, int trials, std::uint64_t seed,
              bool with_naive, const std::string& out_path) {
    const auto radii = parse_radii(radii_text);
    const auto stats =
        dhull::bench::run_trials(radii, trials, seed, with_naive);
    const std::string csv = dhull::bench::to_csv(stats);
    if (out_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(out_path);
        if (!out)
            throw std::invalid_argument("cannot write to '" + out_path + "'");
        out << csv;
        // summary table on stdout once the raw data is safely on disk
        for (const auto& row : dhull::bench::aggregate(stats)) {
            std::cout << "r=" << row.radius << " trials=" << row.trials
                      << " vertices[min/max/avg]=" << row.vertex_min << "/"
                      << row.vertex_max << "/" << row.vertex_avg
                      << " ratio[avg]=" << row.vertex_ratio_avg
                      << " boundary[avg]=" << row.boundary_avg
                      << " max_iter=" << row.max_iterations << "\n";
        }
    }
    return exit_ok;
}

int run_verify(const std::string& radii_text, int trials,
               std::uint64_t seed) {
    const auto radii = parse_radii(radii_text);
    const auto report = dhull::bench::verify_equivalence(radii, trials, seed);
    if (report.all_equal) {
        std::cout << "all equal (" << report.trials_run << " trials)\n";
        return exit_ok;
    }
    std::cout << "MISMATCH after " << report.trials_run
              << " trials: " << report.detail << "\n";
    return exit_failure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete hull of a convex body: exact lattice hulls, "
                 "benchmarks, and verification"};
    app.require_subcommand(1);

    std::string ratio_text;
    auto* conv = app.add_subcommand(
        "convergents", "continued-fraction convergents of a ratio a/b");
    conv->add_option("ratio", ratio_text, "ratio as a/b")->required();

    std::string shape_arg;
    std::string algorithm = "dch";
    std::string format = "json";
    auto* hull = app.add_subcommand(
        "hull", "hull of the lattice points inside a body");
    hull->add_option("--shape", shape_arg, "shape JSON (inline or file path)")
        ->required();
    hull->add_option("--algorithm", algorithm, "dch (default) or naive")
        ->check(CLI::IsMember({"dch", "naive"}));
    hull->add_option("--format", format, "json (default) or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    std::string radii_text;
    int trials = 100;
    std::uint64_t seed = 42;
    bool with_naive = false;
    std::string out_path;
    auto* bench = app.add_subcommand(
        "bench", "randomized disk trials, CSV output");
    bench->add_option("--radii", radii_text, "comma-separated radii")
        ->required();
    bench->add_option("--trials", trials, "trials per radius");
    bench->add_option("--seed", seed, "PRNG seed");
    bench->add_flag("--naive", with_naive, "also run the naive reference");
    bench->add_option("--out", out_path, "CSV output path (default stdout)");

    std::string v_radii_text;
    int v_trials = 50;
    std::uint64_t v_seed = 42;
    auto* verify = app.add_subcommand(
        "verify", "compare both algorithms on random and adversarial disks");
    verify->add_option("--radii", v_radii_text, "comma-separated radii")
        ->required();
    verify->add_option("--trials", v_trials, "trials per radius");
    verify->add_option("--seed", v_seed, "PRNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_bad_input;
    }

    try {
        if (conv->parsed()) return run_convergents(ratio_text);
        if (hull->parsed()) return run_hull(shape_arg, algorithm, format);
        if (bench->parsed())
            return run_bench(radii_text, trials, seed, with_naive, out_path);
        if (verify->parsed()) return run_verify(v_radii_text, v_trials, v_seed);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_bad_input;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_bad_input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_failure;
    }
    return exit_bad_input;
}
