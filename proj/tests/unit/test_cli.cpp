#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <initializer_list>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "foldnet/arch_spec.hpp"
#include "foldnet/cli.hpp"
#include "foldnet/io.hpp"

namespace fs = std::filesystem;
using foldnet::cli::main_entry;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::initializer_list<std::string> args) {
    std::vector<std::string> owned{"foldnet"};
    owned.insert(owned.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : owned) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / "foldnet_cli_test") {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const char* name) const { return (path / name).string(); }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("gen writes a graph with L + 2 nodes") {
    TempDir dir;
    const auto r = run_cli({"gen", "--t", "3", "--layers", "18", "--out", dir / "g.json"});
    REQUIRE(r.code == 0);
    const auto g = foldnet::graph_from_json(foldnet::read_file(dir / "g.json"));
    CHECK(g.num_nodes() == 20);
    CHECK(g.fold_depth == 3);

    const auto by_nodes = run_cli({"gen", "--t", "3", "--nodes", "20"});
    CHECK(by_nodes.code == 0);
    CHECK(by_nodes.out == foldnet::read_file(dir / "g.json"));
}

TEST_CASE("outputs are byte-identical across runs") {
    TempDir dir;
    for (const char* name : {"a.json", "b.json"}) {
        REQUIRE(run_cli({"analyze", "--t", "4", "--nodes", "20", "--out", dir / name}).code == 0);
    }
    CHECK(foldnet::read_file(dir / "a.json") == foldnet::read_file(dir / "b.json"));
    const auto csv1 = run_cli({"spectrum", "--t", "2", "--layers", "30"});
    const auto csv2 = run_cli({"spectrum", "--t", "2", "--layers", "30"});
    CHECK(csv1.out == csv2.out);
    CHECK(csv1.out.rfind("length,count,cdf\n", 0) == 0);
    const auto svg = run_cli({"spectrum", "--t", "2", "--layers", "30", "--format", "svg"});
    CHECK(svg.code == 0);
    CHECK(svg.out.rfind("<svg", 0) == 0);
}

TEST_CASE("analyze reads graph files") {
    TempDir dir;
    REQUIRE(run_cli({"gen", "--t", "2", "--layers", "4", "--out", dir / "g.json"}).code == 0);
    const auto r = run_cli({"analyze", "--in", dir / "g.json"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["spectrum"]["3"] == "3");
    const auto text = run_cli({"analyze", "--in", dir / "g.json", "--format", "text"});
    CHECK(text.out.find("paths: 8") != std::string::npos);
}

TEST_CASE("compare reports dominance between graph files") {
    TempDir dir;
    REQUIRE(run_cli({"gen", "--t", "2", "--nodes", "20", "--out", dir / "rx.json"}).code == 0);
    REQUIRE(run_cli({"gen", "--t", "1", "--nodes", "20", "--out", dir / "rn.json"}).code == 0);
    const auto r = run_cli({"compare", "--a", dir / "rx.json", "--b", dir / "rn.json", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    // ResNetX leads at short lengths; the single longest path is a larger
    // share of its smaller total, so it trails at length 18.
    CHECK(doc["dominates"] == "MIXED");
    CHECK(doc["deltas"][0]["delta"].get<double>() > 0.0);
    CHECK(doc["deltas"][17]["delta"].get<double>() < 0.0);

    const auto self = run_cli({"compare", "--a", dir / "rx.json", "--b", dir / "rx.json"});
    CHECK(self.out.rfind("dominates: MIXED", 0) == 0);
}

TEST_CASE("archspec honours FOLDNET_SEED") {
    TempDir dir;
    ::setenv("FOLDNET_SEED", "42", 1);
    const auto r = run_cli({"archspec", "--blocks", "24", "--kind", "xception", "--t", "3", "--out", dir / "a.json"});
    ::unsetenv("FOLDNET_SEED");
    REQUIRE(r.code == 0);
    const auto spec = foldnet::arch_spec_from_json(foldnet::read_file(dir / "a.json"));
    CHECK(spec == [] {
        auto s = foldnet::build_arch_spec(24, foldnet::BlockKind::Xception, 3, 10);
        s.seed = 42;
        return s;
    }());

    ::setenv("FOLDNET_SEED", "abc", 1);
    CHECK(run_cli({"archspec"}).code == 1);
    ::unsetenv("FOLDNET_SEED");
}

TEST_CASE("table1 and fig5") {
    const auto t1 = run_cli({"table1", "--nodes", "20"});
    REQUIRE(t1.code == 0);
    CHECK(t1.out.find("ResNet (t=1)") != std::string::npos);
    CHECK(t1.out.find("0.8523") != std::string::npos);
    const auto csv = run_cli({"table1", "--format", "csv"});
    CHECK(csv.out.rfind("fold_depth,q,reference\n1,0.85", 0) == 0);

    TempDir dir;
    const auto f = run_cli({"fig5", "--nodes", "20", "--out", dir.path.string()});
    REQUIRE(f.code == 0);
    for (const char* name : {"fig5_t1.csv", "fig5_t2.csv", "fig5_t3.csv", "fig5_t4.csv", "fig5.svg"}) {
        CHECK(fs::exists(dir.path / name));
    }
    CHECK(foldnet::read_file(dir / "fig5_t1.csv").find("\n19,1,1\n") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run_cli({}).code == 1);
    CHECK(run_cli({"bogus"}).code == 1);
    CHECK(run_cli({"gen", "--t", "0", "--layers", "4"}).code == 1);
    CHECK(run_cli({"gen", "--t", "2"}).code == 1);
    CHECK(run_cli({"gen", "--nodes", "2"}).code == 1);
    CHECK(run_cli({"gen", "--layers", "4", "--nodes", "6"}).code == 1);
    CHECK(run_cli({"analyze", "--t", "2", "--layers", "4", "--format", "svg"}).code == 1);
    CHECK(run_cli({"archspec", "--classes", "12"}).code == 1);
    CHECK(run_cli({"archspec", "--kind", "dense"}).code == 1);
    CHECK(run_cli({"gen", "--layers", "3", "--out", "/nonexistent-dir/g.json"}).code == 1);
    CHECK(run_cli({"--help"}).code == 0);

    TempDir dir;
    const auto missing = run_cli({"analyze", "--in", dir / "nope.json"});
    CHECK(missing.code == 2);
    CHECK_FALSE(missing.err.empty());

    foldnet::write_file_atomic(dir / "bad.json",
                               R"({"format":"foldnet-graph/1","num_layers":2,"fold_depth":null,"nodes":4,)"
                               R"("edges":[[0,1],[1,3],[0,3]]})");
    const auto bad = run_cli({"analyze", "--in", dir / "bad.json"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("node not on any source-sink path") != std::string::npos);
}

TEST_CASE("warns when the fold never starts") {
    const auto r = run_cli({"gen", "--t", "9", "--layers", "5"});
    CHECK(r.code == 0);
    CHECK(r.err.find("warning") != std::string::npos);
}

}  // TEST_SUITE
