#include "foldnet/arch_spec.hpp"

#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "foldnet/errors.hpp"

namespace foldnet {

using Json = nlohmann::ordered_json;

std::string_view to_string(BlockKind kind) noexcept {
    switch (kind) {
        case BlockKind::Bottleneck: return "bottleneck";
        case BlockKind::Xception: return "xception";
    }
    return "bottleneck";
}

std::optional<BlockKind> parse_block_kind(std::string_view text) noexcept {
    if (text == "bottleneck") return BlockKind::Bottleneck;
    if (text == "xception") return BlockKind::Xception;
    return std::nullopt;
}

ArchSpec build_arch_spec(std::size_t blocks_per_stage, BlockKind block_kind,
                         std::size_t fold_depth, std::size_t num_classes) {
    if (blocks_per_stage < 1) throw std::invalid_argument("blocks per stage must be >= 1");
    if (fold_depth < 1) throw std::invalid_argument("fold depth must be >= 1");
    if (num_classes != 10 && num_classes != 100) {
        throw std::invalid_argument("number of classes must be 10 or 100");
    }

    ArchSpec spec;
    spec.block_kind = block_kind;
    spec.fold_depth = fold_depth;
    spec.head.classes = num_classes;
    const FoldSchedule wiring = build_schedule(blocks_per_stage, fold_depth);
    for (std::size_t s = 0; s < kNumStages; ++s) {
        spec.stages.push_back({blocks_per_stage, kStageChannels, s != 0, wiring});
    }
    return spec;
}

std::vector<std::string> check_invariants(const ArchSpec& spec) {
    std::vector<std::string> out;
    if (spec.input != InputShape{}) out.push_back("input must be [32,32,3]");
    if (spec.stem != "conv-bn") out.push_back("stem must be conv-bn");
    if (spec.fold_depth < 1) out.push_back("fold_depth must be >= 1");
    if (spec.head.classes != 10 && spec.head.classes != 100) out.push_back("head.classes must be 10 or 100");
    if (spec.head.pool != "gap") out.push_back("head.pool must be gap");
    if (spec.stages.size() != kNumStages) {
        out.push_back("expected " + std::to_string(kNumStages) + " stages");
        return out;
    }
    for (std::size_t s = 0; s < spec.stages.size(); ++s) {
        const auto& stage = spec.stages[s];
        const std::string where = "stages[" + std::to_string(s) + "]";
        if (stage.blocks < 1) out.push_back(where + ".blocks must be >= 1");
        if (stage.blocks != spec.stages.front().blocks) out.push_back(where + ".blocks differs from stage 0");
        if (stage.channels != kStageChannels) out.push_back(where + ".channels must be 32");
        if (stage.downsample != (s != 0)) {
            out.push_back(where + (s == 0 ? ".downsample must be false" : ".downsample must be true"));
        }
        if (stage.blocks >= 1 && spec.fold_depth >= 1 &&
            stage.wiring != build_schedule(stage.blocks, spec.fold_depth)) {
            out.push_back(where + ".offsets do not match the fold schedule");
        }
    }
    return out;
}

std::string to_json(const ArchSpec& spec) {
    Json doc;
    doc["format"] = kArchFormat;
    doc["input"] = {spec.input.height, spec.input.width, spec.input.channels};
    doc["stem"] = spec.stem;
    Json stages = Json::array();
    for (const auto& stage : spec.stages) {
        Json s;
        s["blocks"] = stage.blocks;
        s["channels"] = stage.channels;
        s["downsample"] = stage.downsample;
        s["offsets"] = stage.wiring.offsets();
        stages.push_back(std::move(s));
    }
    doc["stages"] = std::move(stages);
    doc["block_kind"] = to_string(spec.block_kind);
    doc["fold_depth"] = spec.fold_depth;
    doc["head"] = {{"pool", spec.head.pool}, {"classes", spec.head.classes}};
    if (spec.seed) doc["seed"] = *spec.seed;
    return doc.dump(2) + "\n";
}

namespace {

void reject_unknown(const Json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    const std::set<std::string> known(allowed.begin(), allowed.end());
    for (const auto& item : obj.items()) {
        if (!known.contains(item.key())) throw ParseError(path + "." + item.key(), "unknown field");
    }
}

const Json& require(const Json& obj, const std::string& path, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(path + "." + key, "missing field");
    return *it;
}

const Json& require_object(const Json& value, const std::string& path) {
    if (!value.is_object()) throw ParseError(path, "expected object");
    return value;
}

std::size_t as_count(const Json& value, const std::string& path) {
    // Zero is structurally fine here; ranges are checked as invariants.
    if (!value.is_number_integer()) throw ParseError(path, "expected non-negative integer");
    if (value.is_number_unsigned()) return value.get<std::size_t>();
    const auto signed_value = value.get<std::int64_t>();
    if (signed_value < 0) throw ParseError(path, "expected non-negative integer");
    return static_cast<std::size_t>(signed_value);
}

std::string as_string(const Json& value, const std::string& path) {
    if (!value.is_string()) throw ParseError(path, "expected string");
    return value.get<std::string>();
}

bool as_bool(const Json& value, const std::string& path) {
    if (!value.is_boolean()) throw ParseError(path, "expected boolean");
    return value.get<bool>();
}

}  // namespace

ArchSpec arch_spec_from_json(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError("$", e.what());
    }
    const std::string root = "$";
    require_object(doc, root);

    const std::string format = as_string(require(doc, root, "format"), "$.format");
    if (format != kArchFormat) {
        throw VersionError("unsupported arch-spec format '" + format + "', expected '" +
                           std::string(kArchFormat) + "'");
    }
    reject_unknown(doc, root,
                   {"format", "input", "stem", "stages", "block_kind", "fold_depth", "head", "seed"});

    ArchSpec spec;

    const Json& input = require(doc, root, "input");
    if (!input.is_array() || input.size() != 3) throw ParseError("$.input", "expected [height, width, channels]");
    spec.input = {as_count(input[0], "$.input[0]"), as_count(input[1], "$.input[1]"),
                  as_count(input[2], "$.input[2]")};

    spec.stem = as_string(require(doc, root, "stem"), "$.stem");

    const std::string kind_text = as_string(require(doc, root, "block_kind"), "$.block_kind");
    const auto kind = parse_block_kind(kind_text);
    if (!kind) throw ParseError("$.block_kind", "unknown block kind '" + kind_text + "'");
    spec.block_kind = *kind;

    spec.fold_depth = as_count(require(doc, root, "fold_depth"), "$.fold_depth");

    const Json& head = require_object(require(doc, root, "head"), "$.head");
    reject_unknown(head, "$.head", {"pool", "classes"});
    spec.head.pool = as_string(require(head, "$.head", "pool"), "$.head.pool");
    spec.head.classes = as_count(require(head, "$.head", "classes"), "$.head.classes");

    if (auto it = doc.find("seed"); it != doc.end()) {
        if (!it->is_number_unsigned()) throw ParseError("$.seed", "expected non-negative integer");
        spec.seed = it->get<std::uint64_t>();
    }

    const Json& stages = require(doc, root, "stages");
    if (!stages.is_array()) throw ParseError("$.stages", "expected array");
    struct RawStage {
        std::size_t blocks, channels;
        bool downsample;
        std::vector<std::size_t> offsets;
    };
    std::vector<RawStage> raw;
    for (std::size_t s = 0; s < stages.size(); ++s) {
        const std::string path = "$.stages[" + std::to_string(s) + "]";
        const Json& stage = require_object(stages[s], path);
        reject_unknown(stage, path, {"blocks", "channels", "downsample", "offsets"});
        RawStage r{as_count(require(stage, path, "blocks"), path + ".blocks"),
                   as_count(require(stage, path, "channels"), path + ".channels"),
                   as_bool(require(stage, path, "downsample"), path + ".downsample"),
                   {}};
        const Json& offsets = require(stage, path, "offsets");
        if (!offsets.is_array()) throw ParseError(path + ".offsets", "expected array");
        for (std::size_t i = 0; i < offsets.size(); ++i) {
            r.offsets.push_back(as_count(offsets[i], path + ".offsets[" + std::to_string(i) + "]"));
        }
        raw.push_back(std::move(r));
    }

    if (spec.fold_depth < 1) throw InvariantError("fold_depth must be >= 1");
    for (std::size_t s = 0; s < raw.size(); ++s) {
        const auto& r = raw[s];
        const std::string where = "stages[" + std::to_string(s) + "]";
        if (r.blocks < 1) throw InvariantError(where + ".blocks must be >= 1");
        if (r.offsets.size() != r.blocks) {
            throw InvariantError(where + ".offsets has " + std::to_string(r.offsets.size()) +
                                 " entries for " + std::to_string(r.blocks) + " blocks");
        }
        FoldSchedule wiring = build_schedule(r.blocks, spec.fold_depth);
        if (wiring.offsets() != r.offsets) {
            throw InvariantError(where + ".offsets do not match the fold schedule for fold_depth " +
                                 std::to_string(spec.fold_depth));
        }
        spec.stages.push_back({r.blocks, r.channels, r.downsample, std::move(wiring)});
    }

    if (auto problems = check_invariants(spec); !problems.empty()) {
        std::string msg = problems.front();
        for (std::size_t i = 1; i < problems.size(); ++i) msg += "; " + problems[i];
        throw InvariantError(msg);
    }
    return spec;
}

}  // namespace foldnet
