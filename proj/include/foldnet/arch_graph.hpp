#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "foldnet/fold_schedule.hpp"

namespace foldnet {

using NodeId = std::size_t;
using Edge = std::pair<NodeId, NodeId>;

/// Directed graph image of a residual architecture.
///
/// Node 0 is the source (the network input), nodes 1..L are the blocks and
/// node L+1 is the sink that consumes the final sum. An edge u->v means the
/// output of u is one additive term of the tensor v consumes.
///
/// Edges are kept as a sorted, duplicate-free list. add_edge() enforces u < v;
/// from_edges() accepts arbitrary pairs so that deserialized input can be
/// inspected with validate() before it is trusted.
class ArchGraph {
public:
    explicit ArchGraph(std::size_t num_nodes) : num_nodes_(num_nodes) {}

    /// Stores the given edges as-is (sorted, deduplicated), without checking
    /// orientation or range.
    static ArchGraph from_edges(std::size_t num_nodes, std::vector<Edge> edges);

    /// Adds u->v. Repeated edges are ignored. Throws std::invalid_argument
    /// unless u < v < num_nodes.
    void add_edge(NodeId u, NodeId v);

    std::size_t num_nodes() const noexcept { return num_nodes_; }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    bool has_edge(NodeId u, NodeId v) const;

    NodeId source() const noexcept { return 0; }
    NodeId sink() const noexcept { return num_nodes_ == 0 ? 0 : num_nodes_ - 1; }

    // Present only for graphs generated from a FoldSchedule.
    std::optional<std::size_t> fold_depth;
    std::optional<std::size_t> num_layers;

    /// in_neighbors()[v] lists every u with an edge u->v, ascending.
    std::vector<std::vector<NodeId>> in_neighbors() const;
    std::vector<std::vector<NodeId>> out_neighbors() const;

    /// Same node count and edge set; metadata is ignored.
    bool same_structure(const ArchGraph& other) const noexcept {
        return num_nodes_ == other.num_nodes_ && edges_ == other.edges_;
    }

    friend bool operator==(const ArchGraph&, const ArchGraph&) = default;

private:
    std::size_t num_nodes_ = 0;
    std::vector<Edge> edges_;
};

/// Producers whose outputs add up to x_l.
struct SummationSet {
    LayerIndex layer = 0;
    std::vector<NodeId> members;  // ascending
};

/// S(0) = {0}, S(l) = {l} u S(l - i(l)). Throws std::out_of_range when l > L.
SummationSet summation_set(const FoldSchedule& schedule, LayerIndex l);

/// Unrolls the schedule: block l reads every member of S(l-1), the sink reads
/// every member of S(L).
ArchGraph build_dag(const FoldSchedule& schedule);

/// Every forward pair (u, v), u < v. Throws std::invalid_argument for n < 2.
ArchGraph complete_dag(std::size_t num_nodes);

struct Violation {
    std::string rule;
    std::string detail;
};

namespace rule {
inline constexpr const char* kTooFewNodes = "graph has fewer than 2 nodes";
inline constexpr const char* kEndpointRange = "edge endpoint out of range";
inline constexpr const char* kTopologicalOrder = "edge violates topological order";
inline constexpr const char* kSourceInput = "source has incoming edges";
inline constexpr const char* kSinkOutput = "sink has outgoing edges";
inline constexpr const char* kOffPath = "node not on any source-sink path";
}  // namespace rule

/// Reports every broken structural invariant. Never throws for graph
/// content. A block node lacking an in- or out-edge is reported as
/// kOffPath, which subsumes the degree requirement.
std::vector<Violation> validate(const ArchGraph& graph);

/// Throws InvalidGraphError listing the violations, if any.
void require_valid(const ArchGraph& graph);

}  // namespace foldnet
