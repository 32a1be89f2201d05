#include "foldnet/io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "foldnet/errors.hpp"

namespace foldnet {

using Json = nlohmann::json;

std::string format_real(double value) { return fmt::format("{:.17g}", value); }

std::string graph_to_json(const ArchGraph& graph) {
    const std::size_t layers =
        graph.num_layers.value_or(graph.num_nodes() >= 2 ? graph.num_nodes() - 2 : 0);
    std::string out = "{\n";
    out += fmt::format("  \"format\": \"{}\",\n", kGraphFormat);
    out += fmt::format("  \"num_layers\": {},\n", layers);
    out += fmt::format("  \"fold_depth\": {},\n",
                       graph.fold_depth ? std::to_string(*graph.fold_depth) : std::string("null"));
    out += fmt::format("  \"nodes\": {},\n", graph.num_nodes());
    out += "  \"edges\": [";
    const auto& edges = graph.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        out += fmt::format("{}\n    [{}, {}]", i == 0 ? "" : ",", edges[i].first, edges[i].second);
    }
    out += edges.empty() ? "]\n" : "\n  ]\n";
    out += "}\n";
    return out;
}

namespace {

std::size_t count_field(const Json& doc, const char* key) {
    const std::string path = std::string("$.") + key;
    auto it = doc.find(key);
    if (it == doc.end()) throw ParseError(path, "missing field");
    if (!it->is_number_unsigned()) throw ParseError(path, "expected non-negative integer");
    return it->get<std::size_t>();
}

}  // namespace

ArchGraph graph_from_json(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError("$", e.what());
    }
    if (!doc.is_object()) throw ParseError("$", "expected object");

    auto fmt_it = doc.find("format");
    if (fmt_it == doc.end()) throw ParseError("$.format", "missing field");
    if (!fmt_it->is_string()) throw ParseError("$.format", "expected string");
    if (fmt_it->get<std::string>() != kGraphFormat) {
        throw VersionError("unsupported graph format '" + fmt_it->get<std::string>() + "'");
    }
    static const std::set<std::string> known{"format", "num_layers", "fold_depth", "nodes", "edges"};
    for (const auto& item : doc.items()) {
        if (!known.contains(item.key())) throw ParseError("$." + item.key(), "unknown field");
    }

    const std::size_t nodes = count_field(doc, "nodes");
    const std::size_t layers = count_field(doc, "num_layers");
    if (nodes < 2 || layers != nodes - 2) {
        throw ParseError("$.num_layers", "must equal nodes - 2");
    }

    std::optional<std::size_t> fold_depth;
    auto fd = doc.find("fold_depth");
    if (fd == doc.end()) throw ParseError("$.fold_depth", "missing field");
    if (!fd->is_null()) {
        if (!fd->is_number_unsigned() || fd->get<std::size_t>() < 1) {
            throw ParseError("$.fold_depth", "expected positive integer or null");
        }
        fold_depth = fd->get<std::size_t>();
    }

    auto edges_it = doc.find("edges");
    if (edges_it == doc.end()) throw ParseError("$.edges", "missing field");
    if (!edges_it->is_array()) throw ParseError("$.edges", "expected array");
    std::vector<Edge> edges;
    edges.reserve(edges_it->size());
    for (std::size_t i = 0; i < edges_it->size(); ++i) {
        const Json& e = (*edges_it)[i];
        const std::string path = "$.edges[" + std::to_string(i) + "]";
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned()) {
            throw ParseError(path, "expected [u, v] with non-negative integers");
        }
        edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }

    ArchGraph graph = ArchGraph::from_edges(nodes, std::move(edges));
    graph.num_layers = layers;
    graph.fold_depth = fold_depth;
    require_valid(graph);

    if (fold_depth) {
        const ArchGraph expected = build_dag(build_schedule(layers, *fold_depth));
        if (!expected.same_structure(graph)) {
            throw InvalidGraphError("edges do not match the fold schedule for fold_depth " +
                                    std::to_string(*fold_depth));
        }
    }
    return graph;
}

std::string metrics_to_json(const TrophicReport& trophic, const PathSpectrum& spectrum) {
    std::string out = "{\n";
    out += "  \"q\": " + format_real(trophic.q) + ",\n";
    out += "  \"mean_distance\": " + format_real(trophic.mean_distance) + ",\n";
    out += "  \"levels\": [";
    for (std::size_t i = 0; i < trophic.levels.size(); ++i) {
        out += (i == 0 ? "" : ", ") + format_real(trophic.levels[i]);
    }
    out += "],\n  \"spectrum\": {";
    bool first = true;
    for (const auto& [k, c] : spectrum.counts) {
        out += fmt::format("{}\n    \"{}\": \"{}\"", first ? "" : ",", k, c.str());
        first = false;
    }
    out += "\n  },\n  \"cdf\": [";
    for (std::size_t i = 0; i < spectrum.cdf.size(); ++i) {
        out += fmt::format("{}\n    [{}, {}]", i == 0 ? "" : ",", spectrum.cdf[i].length,
                           format_real(spectrum.cdf[i].fraction));
    }
    out += "\n  ]\n}\n";
    return out;
}

std::string cdf_to_csv(const PathSpectrum& spectrum) {
    std::string out = "length,count,cdf\n";
    const auto points = cdf(spectrum);
    auto it = spectrum.counts.begin();
    for (const auto& p : points) {
        out += fmt::format("{},{},{}\n", p.length, it->second.str(), format_real(p.fraction));
        ++it;
    }
    return out;
}

std::string dominance_to_json(const DominanceReport& report) {
    std::string out = fmt::format("{{\n  \"dominates\": \"{}\",\n  \"deltas\": [", to_string(report.dominates));
    for (std::size_t i = 0; i < report.deltas.size(); ++i) {
        const auto& d = report.deltas[i];
        out += fmt::format("{}\n    {{\"length\": {}, \"cdf_a\": {}, \"cdf_b\": {}, \"delta\": {}}}",
                           i == 0 ? "" : ",", d.length, format_real(d.cdf_a), format_real(d.cdf_b),
                           format_real(d.delta));
    }
    out += "\n  ]\n}\n";
    return out;
}

std::string dominance_to_text(const DominanceReport& report) {
    std::string out = fmt::format("dominates: {}\n", to_string(report.dominates));
    out += fmt::format("{:>6}  {:>24}  {:>24}  {:>24}\n", "length", "cdf_a", "cdf_b", "delta");
    for (const auto& d : report.deltas) {
        out += fmt::format("{:>6}  {:>24}  {:>24}  {:>24}\n", d.length, format_real(d.cdf_a),
                           format_real(d.cdf_b), format_real(d.delta));
    }
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) throw std::runtime_error("short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot rename " + tmp.string() + " to " + path.string() + ": " +
                                 ec.message());
    }
}

}  // namespace foldnet
