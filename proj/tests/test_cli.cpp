#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "dmgx/io.hpp"
#include "helpers.hpp"

namespace fs = std::filesystem;

namespace {

const std::string cli = DMGX_CLI_PATH;

int run(const std::string& args) {
    int status = std::system((cli + " " + args).c_str());
    if (status == -1) return -1;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("dmgx_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("generate is byte-identical for a fixed seed") {
    TempDir tmp;
    std::string a = tmp.file("a.json"), b = tmp.file("b.json");
    REQUIRE(run("generate --n 5 --p-dir 0.3 --p-bi 0.2 --seed 7 --out " + a) == 0);
    REQUIRE(run("generate --n 5 --p-dir 0.3 --p-bi 0.2 --seed 7 --out " + b) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(!slurp(a).empty());

    std::string c = tmp.file("c.json");
    REQUIRE(run("generate --n 5 --p-dir 0.3 --p-bi 0.2 --seed 8 --out " + c) == 0);
    CHECK(slurp(a) != slurp(c));
}

TEST_CASE("discover then verify round trips") {
    TempDir tmp;
    std::string g = tmp.file("g.json"), r = tmp.file("r.json");
    REQUIRE(run("generate --n 6 --p-dir 0.3 --p-bi 0.25 --seed 11 --out " + g) == 0);
    for (std::string scenario : {"sigma", "d"}) {
        REQUIRE(run("discover --graph " + g + " --scenario " + scenario + " --cover exact --out " + r +
                    " 2>/dev/null") == 0);
        CHECK(run("verify --graph " + g + " --result " + r + " 2>/dev/null") == 0);
    }
}

TEST_CASE("verify flags a mismatching result with exit code 2") {
    TempDir tmp;
    std::string g1 = tmp.file("g1.json"), g2 = tmp.file("g2.json"), r = tmp.file("r.json");
    {
        std::ofstream(g1) << R"({"n": 2, "directed": [[0,1]], "bidirected": [[0,1]]})";
        std::ofstream(g2) << R"({"n": 2, "directed": [[0,1]], "bidirected": []})";
    }
    REQUIRE(run("discover --graph " + g1 + " --out " + r + " 2>/dev/null") == 0);
    CHECK(run("verify --graph " + g1 + " --result " + r + " 2>/dev/null") == 0);
    CHECK(run("verify --graph " + g2 + " --result " + r + " 2>/dev/null") == 2);
}

TEST_CASE("verify over a directory with workers") {
    TempDir tmp;
    for (int i = 0; i < 3; ++i) {
        std::string g = tmp.file("case" + std::to_string(i) + ".graph.json");
        std::string r = tmp.file("case" + std::to_string(i) + ".result.json");
        REQUIRE(run("generate --n 5 --p-dir 0.25 --p-bi 0.2 --seed " + std::to_string(20 + i) + " --out " + g) == 0);
        REQUIRE(run("discover --graph " + g + " --out " + r + " 2>/dev/null") == 0);
    }
    CHECK(run("verify --dir " + tmp.path.string() + " --jobs 3 2>/dev/null") == 0);

    // corrupt one result: mismatch surfaces as exit 2
    std::ofstream(tmp.file("case0.result.json"))
        << R"({"recovered": {"n": 5, "directed": [], "bidirected": []}})";
    CHECK(run("verify --dir " + tmp.path.string() + " --jobs 2 2>/dev/null") == 2);
}

TEST_CASE("bounded mode below the floor fails with exit 1") {
    TempDir tmp;
    std::string g = tmp.file("hard.json");
    std::ofstream(g) << dmgx::dmg_to_json(dmgx::dense_layered_dmg({{2}, {1}, {2}})).dump();
    CHECK(run("discover --graph " + g + " --mode bounded:2 2>/dev/null") == 1);
    CHECK(run("discover --graph " + g + " --mode bounded:6 --out " + tmp.file("r.json") + " 2>/dev/null") == 0);
}

TEST_CASE("export emits dot") {
    TempDir tmp;
    std::string g = tmp.file("g.json"), d = tmp.file("g.dot");
    std::ofstream(g) << R"({"n": 2, "directed": [[0,1]], "bidirected": [[0,1]]})";
    REQUIRE(run("export --graph " + g + " --format dot --out " + d) == 0);
    CHECK(slurp(d) ==
          "digraph g {\n"
          "  0;\n"
          "  1;\n"
          "  0 -> 1;\n"
          "  0 -> 1 [dir=both, style=dashed];\n"
          "}\n");
}

TEST_CASE("bounds prints the comparison table") {
    TempDir tmp;
    std::string g = tmp.file("g.json"), table = tmp.file("table.txt"), rep = tmp.file("rep.json");
    std::ofstream(g) << dmgx::dmg_to_json(tests::dag_six()).dump();
    REQUIRE(run("bounds --graph " + g + " --json " + rep + " > " + table) == 0);
    CHECK(slurp(table).find("stage") != std::string::npos);
    CHECK(!slurp(rep).empty());
}

TEST_CASE("validation failures exit with 1") {
    TempDir tmp;
    CHECK(run("generate 2>/dev/null") == 1);                               // missing --n
    CHECK(run("discover --graph /nonexistent.json 2>/dev/null") == 1);     // unreadable input
    CHECK(run("frobnicate 2>/dev/null") == 1);                             // unknown subcommand
    std::string g = tmp.file("g.json");
    std::ofstream(g) << R"({"n": 2, "directed": [[0,1]]})";
    CHECK(run("discover --graph " + g + " --mode sideways 2>/dev/null") == 1);
    CHECK(run("export --graph " + g + " --format gif 2>/dev/null") == 1);
}

TEST_CASE("discover accepts the seeded randomized cover") {
    TempDir tmp;
    std::string g = tmp.file("g.json"), r = tmp.file("r.json");
    REQUIRE(run("generate --n 6 --p-dir 0.3 --p-bi 0.2 --seed 4 --out " + g) == 0);
    REQUIRE(run("discover --graph " + g + " --cover random:3 --out " + r + " 2>/dev/null") == 0);
    dmgx::json j;
    std::ifstream(r) >> j;
    CHECK(j.contains("coverage_complete"));
    if (j["coverage_complete"].get<bool>()) CHECK(run("verify --graph " + g + " --result " + r + " 2>/dev/null") == 0);
}
