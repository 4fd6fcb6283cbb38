#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

// exit-code contract: 0 done, 1 requirement failed, 2 input error, 3 budget

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    std::string command = std::string(CONWAY_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    std::array<char, 4096> buffer;
    std::size_t n;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        output.append(buffer.data(), n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), output};
}

std::string fixture(const std::string& name) {
    return std::string(CONWAY_FIXTURE_DIR) + "/" + name;
}

} // namespace

TEST_CASE("analyze reports the one-team example") {
    RunResult r = run_cli("analyze " + fixture("p3.json") + " " + fixture("point.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("hom: proven-absent") != std::string::npos);
    CHECK(r.output.find("w-hom: exists") != std::string::npos);
}

TEST_CASE("analyze --require gives exit 1 on a proven absence") {
    RunResult r = run_cli("analyze --require hom " + fixture("p3.json") + " " +
                          fixture("point.json"));
    CHECK(r.exit_code == 1);
    RunResult ok = run_cli("analyze --require whom " + fixture("p3.json") + " " +
                           fixture("point.json"));
    CHECK(ok.exit_code == 0);
}

TEST_CASE("analyze --json emits a valid report") {
    RunResult r = run_cli("--json analyze " + fixture("p3.json") + " " + fixture("org3.json"));
    CHECK(r.exit_code == 0);
    auto parsed = nlohmann::json::parse(r.output);
    CHECK(parsed["kind"] == "doublet");
    CHECK(parsed["payload"]["hom"]["status"] == "exists");
}

TEST_CASE("topology prints the subgraph count") {
    RunResult r = run_cli("topology " + fixture("p3.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("6 connected subgraphs") != std::string::npos);
}

TEST_CASE("decompose prints the triplet") {
    RunResult r = run_cli("decompose " + fixture("p3.json") + " " + fixture("org3.json") +
                          " --map " + fixture("map_p3_org3.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("fibers") != std::string::npos);
    CHECK(r.output.find("B <- {v2,v3}") != std::string::npos);
}

TEST_CASE("decompose with a non-map file is an input error") {
    RunResult r = run_cli("decompose " + fixture("p3.json") + " " + fixture("org3.json") +
                          " --map " + fixture("notamap.json"));
    CHECK(r.exit_code == 2);
}

TEST_CASE("decompose at a level the map does not reach is an input error") {
    // v1 and v2 collapse onto A, so the map is a w-hom but not a hom
    RunResult r = run_cli("decompose " + fixture("p3.json") + " " + fixture("org3.json") +
                          " --map " + fixture("map_collapse.json") + " --level hom");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("NotMorphismAtLevel") != std::string::npos);
}

TEST_CASE("malformed documents are input errors") {
    RunResult r = run_cli("topology " + fixture("bad_endpoint.json"));
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("SchemaError") != std::string::npos);
    RunResult missing = run_cli("topology /nonexistent/file.json");
    CHECK(missing.exit_code == 2);
}

TEST_CASE("budget exhaustion is exit 3") {
    RunResult r = run_cli("--search-budget 1 analyze " + fixture("k3.json") + " " +
                          fixture("org3.json"));
    CHECK(r.exit_code == 3);
}

TEST_CASE("tasks ranks the correspondences") {
    RunResult r = run_cli("tasks " + fixture("p3.json") + " " + fixture("org3.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("task graph") != std::string::npos);
}

TEST_CASE("induced without a map searches for an injection") {
    RunResult r = run_cli("induced " + fixture("p3.json") + " " + fixture("k3.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("induced map:") != std::string::npos);
    CHECK(r.output.find("* -> *") != std::string::npos);
}

TEST_CASE("tasks --json reports ranked triplets") {
    RunResult r = run_cli("--json tasks " + fixture("p3.json") + " " + fixture("org3.json"));
    CHECK(r.exit_code == 0);
    auto parsed = nlohmann::json::parse(r.output);
    CHECK(parsed["kind"] == "tasks");
    CHECK(parsed["payload"]["status"] == "exists");
    CHECK(!parsed["payload"]["triplets"].empty());

    RunResult top = run_cli("--json tasks --level whom --top 1 " + fixture("p3.json") + " " +
                            fixture("org3.json"));
    auto top_parsed = nlohmann::json::parse(top.output);
    CHECK(top_parsed["payload"]["triplets"].size() == 1);
}

TEST_CASE("induced prints responsibility tables") {
    RunResult r = run_cli("induced " + fixture("p3.json") + " " + fixture("org3.json") +
                          " --map " + fixture("map_p3_org3.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("responsibility table") != std::string::npos);
    CHECK(r.output.find("modules {v2,v3}") != std::string::npos);
    CHECK(r.output.find("C -> *") != std::string::npos);
}

TEST_CASE("hierarchy checks the ladder from the embedded plans") {
    RunResult r = run_cli("hierarchy " + fixture("sys8.json") + " " + fixture("org8.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("all squares commute") != std::string::npos);
}

TEST_CASE("export is deterministic") {
    std::string args = "export " + fixture("p3.json");
    RunResult first = run_cli(args);
    RunResult second = run_cli(args);
    CHECK(first.exit_code == 0);
    CHECK(first.output == second.output);
    CHECK(first.output.find("graph") != std::string::npos);
    CHECK(first.output.find("\"v1\" -- \"v2\"") != std::string::npos);

    RunResult colored = run_cli("export " + fixture("p3.json") + " --fibers-organization " +
                                fixture("org3.json") + " --fibers-map " +
                                fixture("map_p3_org3.json"));
    CHECK(colored.exit_code == 0);
    CHECK(colored.output.find("fillcolor") != std::string::npos);

    RunResult machine = run_cli("--json export " + fixture("p3.json"));
    auto parsed = nlohmann::json::parse(machine.output);
    CHECK(parsed["kind"] == "dot");
    CHECK(parsed["payload"]["dot"].get<std::string>().find("graph") != std::string::npos);
}

TEST_CASE("usage errors are exit 2, help is exit 0") {
    CHECK(run_cli("no-such-command").exit_code == 2);
    CHECK(run_cli("analyze onlyone.json").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("environment variables override the default budgets") {
    std::string command = "CONWAY_SEARCH_BUDGET=1 " + std::string(CONWAY_CLI_PATH) +
                          " analyze " + fixture("k3.json") + " " + fixture("org3.json") +
                          " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buffer;
    while (fread(buffer.data(), 1, buffer.size(), pipe) > 0) {
    }
    int status = pclose(pipe);
    CHECK(WEXITSTATUS(status) == 3);
}
