#include <dhull/baseline.hpp>
#include <dhull/bench.hpp>
#include <dhull/hull.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace dhull::bench {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::string rational_text(Rational r) {
    std::ostringstream out;
    out << r.num;
    if (r.den != 1) out << "/" << r.den;
    return out.str();
}

std::string chain_text(const HullChain& chain, std::size_t cap = 12) {
    std::ostringstream out;
    out << chain.vertices.size() << " vertices, boundary "
        << chain.boundary_count << ", first [";
    for (std::size_t i = 0; i < std::min(cap, chain.vertices.size()); ++i) {
        if (i) out << " ";
        out << "(" << chain.vertices[i].x << "," << chain.vertices[i].y << ")";
    }
    if (chain.vertices.size() > cap) out << " ...";
    out << "]";
    return out.str();
}

bool same_chain(const HullChain& a, const HullChain& b) {
    return a.vertices == b.vertices && a.edge_weights == b.edge_weights &&
           a.boundary_count == b.boundary_count;
}

std::string trial_repro(long long radius, RationalPoint center,
                        int trial_index) {
    std::ostringstream out;
    out << "radius=" << radius << " center=(" << rational_text(center.x)
        << "," << rational_text(center.y) << ") trial=" << trial_index;
    return out.str();
}

double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

} // namespace

TrialStats run_trial(long long radius, RationalPoint center, int trial_index,
                     bool with_naive) {
    if (radius < 2) throw std::invalid_argument("radius must be at least 2");
    const DiskBody body =
        DiskBody::from_radius(center.x, center.y, Rational(radius));
    CountingBody counted(body);
    const LatticePoint seed{rational_floor(center.x), rational_floor(center.y)};

    const int reps = radius >= timing_repeat_threshold ? 3 : 1;

    TrialStats stats;
    stats.radius = radius;
    stats.trial = trial_index;

    HullChain chain;
    std::vector<double> times;
    for (int rep = 0; rep < reps; ++rep) {
        counted.reset();
        const auto t0 = std::chrono::steady_clock::now();
        chain = discrete_hull(counted, seed);
        times.push_back(seconds_since(t0));
    }
    std::sort(times.begin(), times.end());
    stats.wall_time_dch = times[times.size() / 2];
    stats.vertex_count = static_cast<long long>(chain.vertices.size());
    stats.boundary_count = chain.boundary_count;
    stats.max_iterations_per_edge = chain.max_edge_iterations;
    stats.oracle_calls = counted.total_calls();

    if (with_naive) {
        HullChain reference;
        std::vector<double> naive_times;
        for (int rep = 0; rep < reps; ++rep) {
            const auto t0 = std::chrono::steady_clock::now();
            reference = naive_hull(body);
            naive_times.push_back(seconds_since(t0));
        }
        std::sort(naive_times.begin(), naive_times.end());
        stats.wall_time_naive = naive_times[naive_times.size() / 2];

        const double diameter = body.approx_bbox().diameter();
        if (diameter <= static_cast<double>(naive_check_cutoff) &&
            !same_chain(chain, reference)) {
            throw std::runtime_error(
                "hull mismatch: " + trial_repro(radius, center, trial_index) +
                "; fast " + chain_text(chain) + "; reference " +
                chain_text(reference));
        }
    }
    return stats;
}

std::vector<TrialStats> run_trials(const std::vector<long long>& radii,
                                   int trials_per_radius, std::uint64_t seed,
                                   bool with_naive) {
    if (radii.empty()) throw std::invalid_argument("no radii given");
    for (const long long r : radii) {
        if (r < 2) throw std::invalid_argument("radius must be at least 2");
    }
    if (trials_per_radius < 1)
        throw std::invalid_argument("trials must be at least 1");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Coord> grid(0, center_denominator - 1);

    std::vector<TrialStats> stats;
    stats.reserve(radii.size() * static_cast<std::size_t>(trials_per_radius));
    for (const long long radius : radii) {
        for (int trial = 0; trial < trials_per_radius; ++trial) {
            const Rational cx(grid(rng), center_denominator);
            const Rational cy(grid(rng), center_denominator);
            stats.push_back(
                run_trial(radius, RationalPoint{cx, cy}, trial, with_naive));
        }
    }
    return stats;
}

std::vector<AggregateRow> aggregate(const std::vector<TrialStats>& stats) {
    std::map<long long, std::vector<const TrialStats*>> by_radius;
    for (const auto& s : stats) by_radius[s.radius].push_back(&s);

    std::vector<AggregateRow> rows;
    for (const auto& [radius, group] : by_radius) {
        AggregateRow row;
        row.radius = radius;
        row.trials = static_cast<int>(group.size());
        const double scale = std::pow(static_cast<double>(radius), 2.0 / 3.0);

        row.vertex_min = row.vertex_max = group.front()->vertex_count;
        row.boundary_min = row.boundary_max = group.front()->boundary_count;
        double vertex_sum = 0.0;
        double boundary_sum = 0.0;
        double time_sum = 0.0;
        double naive_sum = 0.0;
        int naive_count = 0;
        for (const TrialStats* s : group) {
            row.vertex_min = std::min(row.vertex_min, s->vertex_count);
            row.vertex_max = std::max(row.vertex_max, s->vertex_count);
            row.boundary_min = std::min(row.boundary_min, s->boundary_count);
            row.boundary_max = std::max(row.boundary_max, s->boundary_count);
            row.max_iterations =
                std::max(row.max_iterations, s->max_iterations_per_edge);
            vertex_sum += static_cast<double>(s->vertex_count);
            boundary_sum += static_cast<double>(s->boundary_count);
            time_sum += s->wall_time_dch;
            if (s->wall_time_naive) {
                naive_sum += *s->wall_time_naive;
                ++naive_count;
            }
        }
        const double n = static_cast<double>(group.size());
        row.vertex_avg = round3(vertex_sum / n);
        row.boundary_avg = round3(boundary_sum / n);
        row.vertex_ratio_min =
            round3(static_cast<double>(row.vertex_min) / scale);
        row.vertex_ratio_max =
            round3(static_cast<double>(row.vertex_max) / scale);
        row.vertex_ratio_avg = round3(vertex_sum / n / scale);
        row.boundary_ratio_min =
            round3(static_cast<double>(row.boundary_min) / scale);
        row.boundary_ratio_max =
            round3(static_cast<double>(row.boundary_max) / scale);
        row.boundary_ratio_avg = round3(boundary_sum / n / scale);
        row.time_dch_avg = time_sum / n;
        if (naive_count > 0) row.time_naive_avg = naive_sum / naive_count;
        rows.push_back(row);
    }
    return rows;
}

VerifyReport verify_equivalence(const std::vector<long long>& radii,
                                int trials_per_radius, std::uint64_t seed) {
    for (const long long r : radii) {
        if (r > 100000)
            throw std::invalid_argument(
                "verification radii must stay at or below 100000");
        if (r < 2) throw std::invalid_argument("radius must be at least 2");
    }
    if (radii.empty()) throw std::invalid_argument("no radii given");
    if (trials_per_radius < 1)
        throw std::invalid_argument("trials must be at least 1");

    // Tangency stress set: centers on lattice points and on half-integer
    // offsets put boundary lattice points and collinear edges in play.
    const std::vector<RationalPoint> adversarial = {
        RationalPoint{Rational(0), Rational(0)},
        RationalPoint{Rational(1, 2), Rational(0)},
        RationalPoint{Rational(0), Rational(1, 2)},
        RationalPoint{Rational(1, 2), Rational(1, 2)},
    };

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Coord> grid(0, center_denominator - 1);

    VerifyReport report;
    const auto check_one = [&](long long radius, RationalPoint center,
                               int trial) {
        if (!report.all_equal) return;
        const DiskBody body =
            DiskBody::from_radius(center.x, center.y, Rational(radius));
        const LatticePoint seed_point{rational_floor(center.x),
                                      rational_floor(center.y)};
        const HullChain fast = discrete_hull(body, seed_point);
        const HullChain reference = naive_hull(body);
        ++report.trials_run;
        if (!same_chain(fast, reference)) {
            report.all_equal = false;
            report.detail = trial_repro(radius, center, trial) + "; fast " +
                            chain_text(fast) + "; reference " +
                            chain_text(reference);
        }
    };

    for (const long long radius : radii) {
        for (int trial = 0; trial < trials_per_radius; ++trial) {
            const Rational cx(grid(rng), center_denominator);
            const Rational cy(grid(rng), center_denominator);
            check_one(radius, RationalPoint{cx, cy}, trial);
        }
        for (std::size_t i = 0; i < adversarial.size(); ++i)
            check_one(radius, adversarial[i], -static_cast<int>(i) - 1);
        if (!report.all_equal) break;
    }
    return report;
}

std::string to_csv(const std::vector<TrialStats>& stats) {
    std::ostringstream out;
    out << "radius,trial,vertices,boundary,max_iter,oracle_calls,t_dch_s,"
           "t_naive_s\n";
    out.setf(std::ios::fixed);
    out.precision(6);
    for (const auto& s : stats) {
        out << s.radius << "," << s.trial << "," << s.vertex_count << ","
            << s.boundary_count << "," << s.max_iterations_per_edge << ","
            << s.oracle_calls << "," << s.wall_time_dch << ",";
        if (s.wall_time_naive) out << *s.wall_time_naive;
        out << "\n";
    }
    return out.str();
}

} // namespace dhull::bench
