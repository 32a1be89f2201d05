#include "foldnet/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <map>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "foldnet/arch_graph.hpp"
#include "foldnet/errors.hpp"
#include "foldnet/io.hpp"
#include "foldnet/metrics.hpp"
#include "foldnet/plot.hpp"

namespace foldnet::cli {

namespace {

class InputFileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

ArchGraph load_graph(const std::filesystem::path& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const std::exception& e) {
        throw InputFileError(e.what());
    }
    return graph_from_json(text);
}

const std::map<std::string, OutputFormat> kFormatNames{
    {"json", OutputFormat::Json}, {"csv", OutputFormat::Csv}, {"svg", OutputFormat::Svg}, {"text", OutputFormat::Text}};

const std::map<std::string, BlockKind> kKindNames{{"bottleneck", BlockKind::Bottleneck},
                                                  {"xception", BlockKind::Xception}};

struct SizeFlags {
    std::optional<std::size_t> layers;
    std::optional<std::size_t> nodes;

    void attach(CLI::App* app) {
        auto* l = app->add_option("--layers", layers, "number of blocks L");
        auto* n = app->add_option("--nodes", nodes, "graph size n = L + 2");
        l->excludes(n);
    }

    std::optional<std::size_t> resolve() const {
        if (nodes) {
            if (*nodes < 3) throw UsageError("--nodes must be >= 3");
            return *nodes - 2;
        }
        if (layers && *layers < 1) throw UsageError("--layers must be >= 1");
        return layers;
    }
};

std::optional<std::uint64_t> seed_from_env() {
    const char* raw = std::getenv("FOLDNET_SEED");
    if (raw == nullptr || *raw == '\0') return std::nullopt;
    try {
        std::size_t used = 0;
        const unsigned long long value = std::stoull(raw, &used, 10);
        if (used != std::string(raw).size() || std::string(raw).front() == '-') throw std::invalid_argument(raw);
        return static_cast<std::uint64_t>(value);
    } catch (const std::exception&) {
        throw UsageError(std::string("FOLDNET_SEED is not a non-negative integer: ") + raw);
    }
}

void emit(const RunConfig& config, const std::string& contents, std::ostream& out) {
    if (config.output) {
        write_file_atomic(*config.output, contents);
    } else {
        out << contents;
    }
}

void warn_if_unfolded(std::size_t layers, std::size_t t, std::ostream& err) {
    if (t > layers) {
        err << "warning: fold depth " << t << " exceeds layer count " << layers
            << "; every offset is 1 (plain residual wiring)\n";
    }
}

// Graph named by --in, or generated from --t and the size flags.
ArchGraph graph_for(const RunConfig& config, std::ostream& err) {
    if (config.input) return load_graph(*config.input);
    if (!config.layers) throw UsageError("need --in, or --layers/--nodes");
    warn_if_unfolded(*config.layers, config.fold_depth, err);
    return build_dag(build_schedule(*config.layers, config.fold_depth));
}

// Generated graphs must always validate; anything else is a bug.
void check_generated(const ArchGraph& graph) {
    if (!validate(graph).empty()) throw std::logic_error("generated graph failed validation");
}

std::string model_label(std::size_t t) {
    return t == 1 ? std::string("ResNet (t=1)") : fmt::format("ResNetX (t={})", t);
}

int run_gen(const RunConfig& config, std::ostream& out, std::ostream& err) {
    if (!config.layers) throw UsageError("gen requires --layers or --nodes");
    warn_if_unfolded(*config.layers, config.fold_depth, err);
    const ArchGraph graph = build_dag(build_schedule(*config.layers, config.fold_depth));
    check_generated(graph);
    emit(config, graph_to_json(graph), out);
    return exit_code::kOk;
}

int run_analyze(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const ArchGraph graph = graph_for(config, err);
    const TrophicReport trophic = incoherence(graph);
    const PathSpectrum spectrum = path_spectrum(graph);
    if (config.format == OutputFormat::Text) {
        const auto diversity = receptive_diversity(graph);
        std::string text = fmt::format("nodes: {}\nedges: {}\nq: {}\nmean_distance: {}\npaths: {}\n",
                                       graph.num_nodes(), graph.num_edges(), format_real(trophic.q),
                                       format_real(trophic.mean_distance), spectrum.total.str());
        text += fmt::format("sink length diversity: {}\n", diversity[graph.sink()]);
        emit(config, text, out);
    } else if (config.format == OutputFormat::Json) {
        emit(config, metrics_to_json(trophic, spectrum), out);
    } else {
        throw UsageError("analyze supports --format json or text");
    }
    return exit_code::kOk;
}

int run_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const ArchGraph graph = graph_for(config, err);
    const PathSpectrum spectrum = path_spectrum(graph);
    switch (config.format) {
        case OutputFormat::Csv: emit(config, cdf_to_csv(spectrum), out); break;
        case OutputFormat::Svg: {
            const std::string label = graph.fold_depth ? model_label(*graph.fold_depth) : std::string("graph");
            emit(config, render_cdf_svg({{label, spectrum.cdf}}, fmt::format("Path length CDF (n={})", graph.num_nodes())),
                 out);
            break;
        }
        default: throw UsageError("spectrum supports --format csv or svg");
    }
    return exit_code::kOk;
}

int run_compare(const RunConfig& config, std::ostream& out) {
    if (!config.input || !config.input_b) throw UsageError("compare requires --a and --b");
    const ArchGraph a = load_graph(*config.input);
    const ArchGraph b = load_graph(*config.input_b);
    const DominanceReport report = dominance_compare(path_spectrum(a), path_spectrum(b));
    if (config.format == OutputFormat::Json) {
        emit(config, dominance_to_json(report), out);
    } else if (config.format == OutputFormat::Text) {
        emit(config, dominance_to_text(report), out);
    } else {
        throw UsageError("compare supports --format text or json");
    }
    return exit_code::kOk;
}

int run_archspec(const RunConfig& config, std::ostream& out) {
    ArchSpec spec;
    try {
        spec = build_arch_spec(config.blocks_per_stage, config.block_kind, config.fold_depth, config.num_classes);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    spec.seed = config.seed;
    emit(config, to_json(spec), out);
    return exit_code::kOk;
}

int run_table1(const RunConfig& config, std::ostream& out) {
    const std::size_t layers = config.layers.value_or(18);
    const std::vector<std::size_t> depths{1, 2, 3, 4};
    const auto sweep = incoherence_sweep(layers, depths);

    std::string text;
    switch (config.format) {
        case OutputFormat::Csv:
            text = "fold_depth,q,reference\n";
            for (std::size_t i = 0; i < sweep.size(); ++i) {
                text += fmt::format("{},{},{}\n", sweep[i].fold_depth, format_real(sweep[i].q), kReferenceQ[i]);
            }
            break;
        case OutputFormat::Json:
            text = fmt::format("{{\n  \"nodes\": {},\n  \"rows\": [", layers + 2);
            for (std::size_t i = 0; i < sweep.size(); ++i) {
                text += fmt::format("{}\n    {{\"fold_depth\": {}, \"q\": {}, \"reference\": {}}}", i == 0 ? "" : ",",
                                    sweep[i].fold_depth, format_real(sweep[i].q), kReferenceQ[i]);
            }
            text += "\n  ]\n}\n";
            break;
        case OutputFormat::Text:
            text = fmt::format("incoherence parameter q, n = {} nodes ({} blocks)\n", layers + 2, layers);
            text += fmt::format("{:<16} {:>10} {:>10} {:>10}\n", "model", "q", "reference", "diff");
            for (std::size_t i = 0; i < sweep.size(); ++i) {
                text += fmt::format("{:<16} {:>10.4f} {:>10.4f} {:>+10.4f}\n", model_label(sweep[i].fold_depth),
                                    sweep[i].q, kReferenceQ[i], sweep[i].q - kReferenceQ[i]);
            }
            break;
        default: throw UsageError("table1 supports --format text, csv or json");
    }
    emit(config, text, out);
    return exit_code::kOk;
}

int run_fig5(const RunConfig& config, std::ostream& out) {
    const std::size_t layers = config.layers.value_or(18);
    const std::filesystem::path dir = config.output.value_or(".");
    std::filesystem::create_directories(dir);

    std::vector<CdfSeries> series;
    for (std::size_t t = 1; t <= 4; ++t) {
        const ArchGraph graph = build_dag(build_schedule(layers, t));
        check_generated(graph);
        const PathSpectrum spectrum = path_spectrum(graph);
        const auto csv_path = dir / fmt::format("fig5_t{}.csv", t);
        write_file_atomic(csv_path, cdf_to_csv(spectrum));
        out << "wrote " << csv_path.string() << "\n";
        series.push_back({model_label(t), spectrum.cdf});
    }
    const auto svg_path = dir / "fig5.svg";
    write_file_atomic(svg_path, render_cdf_svg(series, fmt::format("Path length CDF, n = {}", layers + 2)));
    out << "wrote " << svg_path.string() << "\n";
    return exit_code::kOk;
}

}  // namespace

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out) {
    CLI::App app{"Fold-depth residual wiring: generation and graph analysis", "foldnet"};
    app.require_subcommand(1);

    RunConfig config;
    SizeFlags size;
    std::string format_name;
    std::string kind_name = "bottleneck";
    std::size_t t = 1;
    std::string in_path, a_path, b_path, out_path;

    auto add_t = [&](CLI::App* sub) { sub->add_option("--t", t, "fold depth t >= 1"); };
    auto add_out = [&](CLI::App* sub, const char* what) { sub->add_option("--out", out_path, what); };
    auto add_format = [&](CLI::App* sub, const char* dflt) {
        format_name = "";
        sub->add_option("--format", format_name, std::string("output format (default ") + dflt + ")");
    };

    auto* gen = app.add_subcommand("gen", "write the graph of a fold schedule as JSON");
    add_t(gen);
    size.attach(gen);
    add_out(gen, "graph JSON path (stdout if omitted)");

    auto* analyze = app.add_subcommand("analyze", "trophic coherence and path spectrum of a graph");
    analyze->add_option("--in", in_path, "graph JSON file");
    add_t(analyze);
    size.attach(analyze);
    add_format(analyze, "json");
    add_out(analyze, "output path (stdout if omitted)");

    auto* spectrum = app.add_subcommand("spectrum", "path-length CDF as CSV or SVG");
    spectrum->add_option("--in", in_path, "graph JSON file");
    add_t(spectrum);
    size.attach(spectrum);
    add_format(spectrum, "csv");
    add_out(spectrum, "output path (stdout if omitted)");

    auto* compare = app.add_subcommand("compare", "CDF dominance of graph A over graph B");
    compare->add_option("--a", a_path, "graph JSON file A")->required();
    compare->add_option("--b", b_path, "graph JSON file B")->required();
    add_format(compare, "text");
    add_out(compare, "report path (stdout if omitted)");

    auto* archspec = app.add_subcommand("archspec", "write a trainable architecture description");
    archspec->add_option("--blocks", config.blocks_per_stage, "blocks per stage");
    archspec->add_option("--kind", kind_name, "bottleneck or xception");
    add_t(archspec);
    archspec->add_option("--classes", config.num_classes, "10 or 100");
    add_out(archspec, "arch JSON path (stdout if omitted)");

    auto* table1 = app.add_subcommand("table1", "incoherence parameter for t = 1..4");
    size.attach(table1);
    add_format(table1, "text");
    add_out(table1, "output path (stdout if omitted)");

    auto* fig5 = app.add_subcommand("fig5", "path-length CDFs for t = 1..4 as CSV and SVG");
    size.attach(fig5);
    add_out(fig5, "output directory (default .)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    const std::map<CLI::App*, std::pair<Command, const char*>> commands{
        {gen, {Command::Gen, "json"}},          {analyze, {Command::Analyze, "json"}},
        {spectrum, {Command::Spectrum, "csv"}}, {compare, {Command::Compare, "text"}},
        {archspec, {Command::ArchSpec, "json"}}, {table1, {Command::Table1, "text"}},
        {fig5, {Command::Fig5, "csv"}}};
    for (const auto& [sub, info] : commands) {
        if (sub->parsed()) {
            config.command = info.first;
            if (format_name.empty()) format_name = info.second;
        }
    }

    auto fmt_it = kFormatNames.find(format_name);
    if (fmt_it == kFormatNames.end()) throw UsageError("unknown --format '" + format_name + "'");
    config.format = fmt_it->second;

    auto kind_it = kKindNames.find(kind_name);
    if (kind_it == kKindNames.end()) throw UsageError("unknown --kind '" + kind_name + "'");
    config.block_kind = kind_it->second;

    if (t < 1) throw UsageError("--t must be >= 1");
    config.fold_depth = t;
    config.layers = size.resolve();
    if (!in_path.empty()) config.input = in_path;
    if (!a_path.empty()) config.input = a_path;
    if (!b_path.empty()) config.input_b = b_path;
    if (!out_path.empty()) config.output = out_path;
    if (config.input && config.layers) throw UsageError("--in cannot be combined with --layers/--nodes");
    config.seed = seed_from_env();
    return config;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    switch (config.command) {
        case Command::Gen: return run_gen(config, out, err);
        case Command::Analyze: return run_analyze(config, out, err);
        case Command::Spectrum: return run_spectrum(config, out, err);
        case Command::Compare: return run_compare(config, out);
        case Command::ArchSpec: return run_archspec(config, out);
        case Command::Table1: return run_table1(config, out);
        case Command::Fig5: return run_fig5(config, out);
    }
    return exit_code::kInternal;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    try {
        const auto config = parse_args(argc, argv, out);
        if (!config) return exit_code::kOk;
        return run(*config, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::kInvalidArguments;
    } catch (const ParseError& e) {
        err << "error: invalid input: " << e.what() << "\n";
        return exit_code::kInvalidInput;
    } catch (const VersionError& e) {
        err << "error: invalid input: " << e.what() << "\n";
        return exit_code::kInvalidInput;
    } catch (const InvariantError& e) {
        err << "error: invalid input: " << e.what() << "\n";
        return exit_code::kInvalidInput;
    } catch (const InvalidGraphError& e) {
        err << "error: invalid input: " << e.what() << "\n";
        return exit_code::kInvalidInput;
    } catch (const std::logic_error& e) {
        err << "error: internal: " << e.what() << "\n";
        return exit_code::kInternal;
    } catch (const InputFileError& e) {
        err << "error: invalid input: " << e.what() << "\n";
        return exit_code::kInvalidInput;
    } catch (const std::exception& e) {
        // Output could not be written where --out pointed.
        err << "error: " << e.what() << "\n";
        return exit_code::kInvalidArguments;
    }
}

}  // namespace foldnet::cli
