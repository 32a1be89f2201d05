#include "foldnet/arch_graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "foldnet/errors.hpp"

namespace foldnet {

ArchGraph ArchGraph::from_edges(std::size_t num_nodes, std::vector<Edge> edges) {
    ArchGraph g(num_nodes);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    g.edges_ = std::move(edges);
    return g;
}

void ArchGraph::add_edge(NodeId u, NodeId v) {
    if (u >= v) {
        throw std::invalid_argument("edge " + std::to_string(u) + "->" + std::to_string(v) +
                                    " is not forward");
    }
    if (v >= num_nodes_) {
        throw std::invalid_argument("edge " + std::to_string(u) + "->" + std::to_string(v) +
                                    " leaves the node range");
    }
    const Edge e{u, v};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it != edges_.end() && *it == e) return;
    edges_.insert(it, e);
}

bool ArchGraph::has_edge(NodeId u, NodeId v) const {
    return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
}

std::vector<std::vector<NodeId>> ArchGraph::in_neighbors() const {
    std::vector<std::vector<NodeId>> in(num_nodes_);
    for (const auto& [u, v] : edges_) {
        if (u < num_nodes_ && v < num_nodes_) in[v].push_back(u);
    }
    for (auto& list : in) std::sort(list.begin(), list.end());
    return in;
}

std::vector<std::vector<NodeId>> ArchGraph::out_neighbors() const {
    std::vector<std::vector<NodeId>> out(num_nodes_);
    for (const auto& [u, v] : edges_) {
        if (u < num_nodes_ && v < num_nodes_) out[u].push_back(v);
    }
    return out;
}

namespace {

// Summation sets for every layer 0..L, built bottom-up.
std::vector<std::vector<NodeId>> all_summation_sets(const FoldSchedule& schedule) {
    const std::size_t L = schedule.num_layers();
    std::vector<std::vector<NodeId>> sets(L + 1);
    sets[0] = {0};
    for (LayerIndex l = 1; l <= L; ++l) {
        const LayerIndex from = l - schedule.offset(l);
        sets[l] = sets[from];
        sets[l].push_back(l);  // every member of sets[from] is <= from < l
    }
    return sets;
}

std::vector<bool> reachable(std::size_t n, NodeId start,
                            const std::vector<std::vector<NodeId>>& adjacency) {
    std::vector<bool> seen(n, false);
    if (start >= n) return seen;
    std::vector<NodeId> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        for (NodeId v : adjacency[u]) {
            if (!seen[v]) {
                seen[v] = true;
                stack.push_back(v);
            }
        }
    }
    return seen;
}

std::string edge_text(const Edge& e) {
    return std::to_string(e.first) + "->" + std::to_string(e.second);
}

}  // namespace

SummationSet summation_set(const FoldSchedule& schedule, LayerIndex l) {
    if (l > schedule.num_layers()) {
        throw std::out_of_range("summation_set: layer " + std::to_string(l) + " outside 0.." +
                                std::to_string(schedule.num_layers()));
    }
    SummationSet out{l, {}};
    for (LayerIndex cur = l; cur != 0; cur -= schedule.offset(cur)) {
        out.members.push_back(cur);
    }
    out.members.push_back(0);
    std::reverse(out.members.begin(), out.members.end());
    return out;
}

ArchGraph build_dag(const FoldSchedule& schedule) {
    const std::size_t L = schedule.num_layers();
    const auto sets = all_summation_sets(schedule);

    ArchGraph g(L + 2);
    for (LayerIndex l = 1; l <= L; ++l) {
        for (NodeId u : sets[l - 1]) g.add_edge(u, l);
    }
    for (NodeId u : sets[L]) g.add_edge(u, L + 1);

    g.fold_depth = schedule.fold_depth();
    g.num_layers = L;
    return g;
}

ArchGraph complete_dag(std::size_t num_nodes) {
    if (num_nodes < 2) throw std::invalid_argument("complete_dag: need at least 2 nodes");
    std::vector<Edge> edges;
    edges.reserve(num_nodes * (num_nodes - 1) / 2);
    for (NodeId u = 0; u < num_nodes; ++u) {
        for (NodeId v = u + 1; v < num_nodes; ++v) edges.emplace_back(u, v);
    }
    return ArchGraph::from_edges(num_nodes, std::move(edges));
}

std::vector<Violation> validate(const ArchGraph& graph) {
    std::vector<Violation> out;
    const std::size_t n = graph.num_nodes();
    if (n < 2) {
        out.push_back({rule::kTooFewNodes, "nodes = " + std::to_string(n)});
        return out;
    }

    for (const Edge& e : graph.edges()) {
        if (e.first >= n || e.second >= n) {
            out.push_back({rule::kEndpointRange, edge_text(e)});
        } else if (e.first >= e.second) {
            out.push_back({rule::kTopologicalOrder, edge_text(e)});
        }
    }

    const auto in = graph.in_neighbors();
    const auto out_adj = graph.out_neighbors();
    if (!in[graph.source()].empty()) {
        out.push_back({rule::kSourceInput, "in-degree " + std::to_string(in[graph.source()].size())});
    }
    if (!out_adj[graph.sink()].empty()) {
        out.push_back({rule::kSinkOutput, "out-degree " + std::to_string(out_adj[graph.sink()].size())});
    }

    const auto from_source = reachable(n, graph.source(), out_adj);
    const auto to_sink = reachable(n, graph.sink(), in);
    for (NodeId v = 0; v < n; ++v) {
        if (!from_source[v] || !to_sink[v]) {
            out.push_back({rule::kOffPath, "node " + std::to_string(v)});
        }
    }
    return out;
}

void require_valid(const ArchGraph& graph) {
    const auto violations = validate(graph);
    if (violations.empty()) return;
    std::string msg = "invalid graph:";
    for (const auto& v : violations) msg += " [" + v.rule + ": " + v.detail + "]";
    throw InvalidGraphError(msg);
}

}  // namespace foldnet
