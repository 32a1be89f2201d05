#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "foldnet/arch_graph.hpp"

namespace foldnet {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Trophic coherence

struct TrophicReport {
    std::vector<double> levels;     // per node
    std::vector<double> distances;  // per edge, in graph.edges() order: s_v - s_u
    double mean_distance = 0.0;
    double q = 0.0;                 // sqrt(<x^2> - 1)
};

/// Trophic level of every node: 1 for nodes without inputs, otherwise one
/// plus the mean level of the in-neighbors. Edges always point forward, so a
/// single pass in index order is a forward substitution of the (lower
/// triangular) linear system.
///
/// Throws InvalidGraphError when the graph fails validate().
std::vector<double> trophic_levels(const ArchGraph& graph);

/// Levels, per-edge distances and the incoherence parameter q, using the
/// population second moment over all edges.
TrophicReport incoherence(const ArchGraph& graph);

// ---------------------------------------------------------------------------
// Path-length spectrum

struct CdfPoint {
    std::size_t length = 0;
    double fraction = 0.0;

    friend bool operator==(const CdfPoint&, const CdfPoint&) = default;
};

struct PathSpectrum {
    std::map<std::size_t, BigInt> counts;  // edges per path -> number of paths
    BigInt total = 0;
    std::vector<CdfPoint> cdf;

    std::size_t min_length() const { return counts.begin()->first; }
    std::size_t max_length() const { return counts.rbegin()->first; }
};

/// Exact number of source->sink paths for every length, by dynamic
/// programming over the topological order.
PathSpectrum path_spectrum(const ArchGraph& graph);

/// Cumulative fraction of paths with length <= k at each support point.
/// Accumulates in exact rationals; last entry is exactly 1.
/// Throws std::invalid_argument on an empty spectrum.
std::vector<CdfPoint> cdf(const PathSpectrum& spectrum);

/// Exact CDF value at an arbitrary length (step function).
Rational cdf_at(const PathSpectrum& spectrum, std::size_t length);

enum class Dominance { Yes, No, Mixed };

const char* to_string(Dominance d) noexcept;

struct DominanceDelta {
    std::size_t length = 0;
    double cdf_a = 0.0;
    double cdf_b = 0.0;
    double delta = 0.0;  // cdf_a - cdf_b
};

struct DominanceReport {
    Dominance dominates = Dominance::Mixed;
    std::vector<DominanceDelta> deltas;  // union of both supports, ascending
};

/// Yes when CDF_a >= CDF_b everywhere with at least one strict inequality,
/// No for the mirror case, Mixed otherwise (identical spectra included).
/// Comparisons are exact.
DominanceReport dominance_compare(const PathSpectrum& a, const PathSpectrum& b);

/// Number of distinct source->v path lengths for every node v. The source
/// itself counts its empty path, so it reports 1.
std::vector<std::size_t> receptive_diversity(const ArchGraph& graph);

// ---------------------------------------------------------------------------
// Sweeps

struct IncoherencePoint {
    std::size_t fold_depth = 0;
    double q = 0.0;
};

/// q of build_dag(build_schedule(num_layers, t)) for each t. Work is spread
/// over threads; the result is ordered like fold_depths.
std::vector<IncoherencePoint> incoherence_sweep(std::size_t num_layers,
                                                std::span<const std::size_t> fold_depths);

}  // namespace foldnet
