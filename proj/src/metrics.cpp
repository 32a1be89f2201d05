#include "foldnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <set>
#include <stdexcept>

#include "foldnet/errors.hpp"

namespace foldnet {

std::vector<double> trophic_levels(const ArchGraph& graph) {
    require_valid(graph);
    const auto in = graph.in_neighbors();
    std::vector<double> levels(graph.num_nodes(), 1.0);
    for (NodeId v = 0; v < graph.num_nodes(); ++v) {
        if (in[v].empty()) continue;
        double sum = 0.0;
        for (NodeId u : in[v]) sum += levels[u];
        levels[v] = 1.0 + sum / static_cast<double>(in[v].size());
    }
    return levels;
}

TrophicReport incoherence(const ArchGraph& graph) {
    TrophicReport report;
    report.levels = trophic_levels(graph);

    const auto& edges = graph.edges();
    report.distances.reserve(edges.size());
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const auto& [u, v] : edges) {
        const double x = report.levels[v] - report.levels[u];
        report.distances.push_back(x);
        sum += x;
        sum_sq += x * x;
    }
    const double m = static_cast<double>(edges.size());
    report.mean_distance = sum / m;
    // <x> = 1 identically, so the second moment minus one is the variance.
    report.q = std::sqrt(std::max(0.0, sum_sq / m - 1.0));
    return report;
}

PathSpectrum path_spectrum(const ArchGraph& graph) {
    require_valid(graph);
    const std::size_t n = graph.num_nodes();
    const auto in = graph.in_neighbors();

    // by_length[v][k] = number of source->v paths with k edges
    std::vector<std::vector<BigInt>> by_length(n);
    by_length[graph.source()] = {BigInt(1)};
    for (NodeId v = 1; v < n; ++v) {
        auto& row = by_length[v];
        for (NodeId u : in[v]) {
            const auto& prev = by_length[u];
            if (row.size() < prev.size() + 1) row.resize(prev.size() + 1);
            for (std::size_t k = 0; k < prev.size(); ++k) {
                if (!prev[k].is_zero()) row[k + 1] += prev[k];
            }
        }
    }

    PathSpectrum spectrum;
    const auto& last = by_length[graph.sink()];
    for (std::size_t k = 0; k < last.size(); ++k) {
        if (last[k].is_zero()) continue;
        spectrum.counts.emplace(k, last[k]);
        spectrum.total += last[k];
    }
    spectrum.cdf = cdf(spectrum);
    return spectrum;
}

std::vector<CdfPoint> cdf(const PathSpectrum& spectrum) {
    if (spectrum.counts.empty()) throw std::invalid_argument("cdf: empty spectrum");
    BigInt total = 0;
    for (const auto& [k, c] : spectrum.counts) total += c;

    std::vector<CdfPoint> out;
    out.reserve(spectrum.counts.size());
    BigInt running = 0;
    for (const auto& [k, c] : spectrum.counts) {
        running += c;
        out.push_back({k, Rational(running, total).convert_to<double>()});
    }
    return out;
}

Rational cdf_at(const PathSpectrum& spectrum, std::size_t length) {
    if (spectrum.counts.empty()) throw std::invalid_argument("cdf_at: empty spectrum");
    BigInt running = 0;
    BigInt total = 0;
    for (const auto& [k, c] : spectrum.counts) {
        total += c;
        if (k <= length) running += c;
    }
    return Rational(running, total);
}

const char* to_string(Dominance d) noexcept {
    switch (d) {
        case Dominance::Yes: return "YES";
        case Dominance::No: return "NO";
        case Dominance::Mixed: return "MIXED";
    }
    return "MIXED";
}

DominanceReport dominance_compare(const PathSpectrum& a, const PathSpectrum& b) {
    std::set<std::size_t> support;
    for (const auto& [k, c] : a.counts) support.insert(k);
    for (const auto& [k, c] : b.counts) support.insert(k);

    DominanceReport report;
    bool a_ge = true;
    bool b_ge = true;
    bool any_diff = false;
    for (std::size_t k : support) {
        const Rational fa = cdf_at(a, k);
        const Rational fb = cdf_at(b, k);
        if (fa < fb) a_ge = false;
        if (fb < fa) b_ge = false;
        if (fa != fb) any_diff = true;
        report.deltas.push_back({k, fa.convert_to<double>(), fb.convert_to<double>(),
                                 Rational(fa - fb).convert_to<double>()});
    }
    if (any_diff && a_ge) {
        report.dominates = Dominance::Yes;
    } else if (any_diff && b_ge) {
        report.dominates = Dominance::No;
    } else {
        report.dominates = Dominance::Mixed;
    }
    return report;
}

std::vector<std::size_t> receptive_diversity(const ArchGraph& graph) {
    require_valid(graph);
    const std::size_t n = graph.num_nodes();
    const auto in = graph.in_neighbors();

    std::vector<std::vector<bool>> lengths(n);
    lengths[graph.source()] = {true};
    for (NodeId v = 1; v < n; ++v) {
        auto& mine = lengths[v];
        for (NodeId u : in[v]) {
            const auto& prev = lengths[u];
            if (mine.size() < prev.size() + 1) mine.resize(prev.size() + 1, false);
            for (std::size_t k = 0; k < prev.size(); ++k) {
                if (prev[k]) mine[k + 1] = true;
            }
        }
    }

    std::vector<std::size_t> out(n);
    for (NodeId v = 0; v < n; ++v) {
        out[v] = static_cast<std::size_t>(std::count(lengths[v].begin(), lengths[v].end(), true));
    }
    return out;
}

std::vector<IncoherencePoint> incoherence_sweep(std::size_t num_layers,
                                                std::span<const std::size_t> fold_depths) {
    std::vector<std::future<double>> jobs;
    jobs.reserve(fold_depths.size());
    for (std::size_t t : fold_depths) {
        jobs.push_back(std::async(std::launch::async, [num_layers, t] {
            return incoherence(build_dag(build_schedule(num_layers, t))).q;
        }));
    }
    std::vector<IncoherencePoint> out;
    out.reserve(fold_depths.size());
    for (std::size_t i = 0; i < fold_depths.size(); ++i) {
        out.push_back({fold_depths[i], jobs[i].get()});
    }
    return out;
}

}  // namespace foldnet
