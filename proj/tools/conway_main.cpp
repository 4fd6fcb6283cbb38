#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "conway/io.hpp"

namespace {

using namespace conway;

constexpr int kExitOk = 0;
constexpr int kExitRequirementFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitBudgetExceeded = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::parse_error, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct Output {
    bool json = false;
    std::string out_path;

    void emit(const std::string& text, const Json& report) const {
        std::string body = json ? report.dump(2) + "\n" : text;
        if (out_path.empty()) {
            std::cout << body;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) fail(ErrorCode::parse_error, "cannot write '" + path_or_dash() + "'");
            out << body;
        }
    }

    std::string path_or_dash() const { return out_path.empty() ? "-" : out_path; }
};

struct LoadedGraph {
    GraphDocument document;
    Graph graph;
};

LoadedGraph load_graph(const std::string& path) {
    GraphDocument doc = parse_graph_document(read_file(path));
    Graph g = graph_from_document(doc);
    return {std::move(doc), std::move(g)};
}

std::uint64_t env_u64(const char* name, std::uint64_t fallback) {
    const char* value = std::getenv(name);
    if (!value || !*value) return fallback;
    return std::strtoull(value, nullptr, 10);
}

bool statuses_hit_budget(const DoubletReport& report) {
    auto bad = [](SearchStatus s) { return s == SearchStatus::budget_exceeded; };
    return bad(report.hom.status) || bad(report.w_hom.status) ||
           bad(report.w_hom_nontrivial.status) || bad(report.topological) ||
           bad(report.nontrivial_continuous) || bad(report.continuous_injection);
}

int run(int argc, char** argv) {
    CLI::App app{"Conway correspondence analysis between system and organization graphs"};
    app.require_subcommand(1);

    AnalysisBudget budget;
    budget.search_nodes = env_u64("CONWAY_SEARCH_BUDGET", kDefaultSearchBudget);
    budget.subgraph_cap = env_u64("CONWAY_SUBGRAPH_CAP", kDefaultSubgraphCap);
    app.add_option("--search-budget", budget.search_nodes,
                   "node budget for backtracking searches");
    app.add_option("--subgraph-cap", budget.subgraph_cap,
                   "maximum number of connected subgraphs to enumerate");

    Output output;
    app.add_flag("--json", output.json, "emit the machine-readable report");
    app.add_option("-o,--out", output.out_path, "write the report to a file");

    std::string gs_path, go_path, g_path, map_path, level_name = "hom", require_name;

    auto* analyze = app.add_subcommand("analyze", "existence of correspondences at all levels");
    analyze->add_option("system", gs_path)->required();
    analyze->add_option("organization", go_path)->required();
    analyze->add_option("--require", require_name,
                        "exit 1 unless this level exists (hom|whom|top|nontrivial)");

    auto* decompose_cmd = app.add_subcommand("decompose", "factor a correspondence through a task graph");
    decompose_cmd->add_option("system", gs_path)->required();
    decompose_cmd->add_option("organization", go_path)->required();
    decompose_cmd->add_option("--map", map_path, "vertex map file")->required();
    decompose_cmd->add_option("--level", level_name, "hom|whom (default: strongest that fits)");

    auto* tasks_cmd = app.add_subcommand("tasks", "enumerate task graphs, simplest first");
    tasks_cmd->add_option("system", gs_path)->required();
    tasks_cmd->add_option("organization", go_path)->required();
    tasks_cmd->add_option("--level", level_name, "hom|whom|top");
    std::size_t top_n = 0;
    tasks_cmd->add_option("--top", top_n, "keep only the N simplest task graphs");

    auto* topology_cmd = app.add_subcommand("topology", "the collection of connected subgraphs");
    topology_cmd->add_option("graph", g_path)->required();

    auto* induced_cmd = app.add_subcommand("induced", "induced map and responsibility tables");
    induced_cmd->add_option("system", gs_path)->required();
    induced_cmd->add_option("organization", go_path)->required();
    induced_cmd->add_option("--map", map_path, "correspondence to decompose (w-hom)");

    auto* hierarchy_cmd = app.add_subcommand("hierarchy", "build and check the hierarchical ladder");
    hierarchy_cmd->add_option("system", gs_path)->required();
    hierarchy_cmd->add_option("organization", go_path)->required();
    hierarchy_cmd->add_option("--map", map_path, "rung at the finest level (searched when absent)");

    auto* export_cmd = app.add_subcommand("export", "DOT rendering, optionally fiber-colored");
    export_cmd->add_option("graph", g_path)->required();
    std::string fiber_org_path, fiber_map_path;
    export_cmd->add_option("--fibers-organization", fiber_org_path,
                           "organization file; colors vertices by task fiber");
    export_cmd->add_option("--fibers-map", fiber_map_path, "correspondence for the fibers");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    if (*analyze) {
        auto gs = load_graph(gs_path);
        auto go = load_graph(go_path);
        DoubletReport report = analyze_doublet(gs.graph, go.graph, budget);
        output.emit(doublet_report_text(report), doublet_report_json(report));
        if (statuses_hit_budget(report)) return kExitBudgetExceeded;
        if (!require_name.empty()) {
            SearchStatus status;
            if (require_name == "hom") status = report.hom.status;
            else if (require_name == "whom") status = report.w_hom.status;
            else if (require_name == "top") status = report.topological;
            else if (require_name == "nontrivial") status = report.nontrivial_continuous;
            else fail(ErrorCode::validation_error, "unknown --require level " + require_name);
            if (status == SearchStatus::absent) return kExitRequirementFailed;
        }
        return kExitOk;
    }

    if (*decompose_cmd) {
        auto gs = load_graph(gs_path);
        auto go = load_graph(go_path);
        GraphMap q = parse_map_document(read_file(map_path), gs.graph, go.graph);
        ConwayLevel level;
        if (decompose_cmd->count("--level")) {
            if (level_name == "hom") level = ConwayLevel::hom;
            else if (level_name == "whom") level = ConwayLevel::w_hom;
            else fail(ErrorCode::validation_error, "decompose level must be hom or whom");
        } else {
            MorphismClass cls = classify_map(q);
            if (cls.is_hom) level = ConwayLevel::hom;
            else if (cls.is_w_hom) level = ConwayLevel::w_hom;
            else fail(ErrorCode::validation_error, "the map is not a w-homomorphism");
        }
        ConwayTriplet triplet = decompose(q, level);
        output.emit(triplet_text(triplet), triplet_json(triplet));
        return kExitOk;
    }

    if (*tasks_cmd) {
        auto gs = load_graph(gs_path);
        auto go = load_graph(go_path);
        ConwayLevel level;
        if (level_name == "hom") level = ConwayLevel::hom;
        else if (level_name == "whom") level = ConwayLevel::w_hom;
        else if (level_name == "top") level = ConwayLevel::topological;
        else fail(ErrorCode::validation_error, "tasks level must be hom, whom or top");
        TaskEnumeration tasks = enumerate_task_graphs(gs.graph, go.graph, level, budget);
        if (top_n > 0 && tasks.triplets.size() > top_n) tasks.triplets.resize(top_n);
        output.emit(tasks_text(tasks), tasks_json(tasks));
        return tasks.complete ? kExitOk : kExitBudgetExceeded;
    }

    if (*topology_cmd) {
        auto g = load_graph(g_path);
        GraphTopologySpace space = graph_topology(g.graph, budget.subgraph_cap);
        output.emit(topology_report_text(space), topology_report_json(space));
        return kExitOk;
    }

    if (*induced_cmd) {
        auto gs = load_graph(gs_path);
        auto go = load_graph(go_path);
        if (!map_path.empty()) {
            GraphMap q = parse_map_document(read_file(map_path), gs.graph, go.graph);
            ConwayTriplet triplet = decompose(q, ConwayLevel::w_hom);
            CollectionMap ihat = lift_to_continuous(*triplet.i, nullptr, nullptr,
                                                    budget.subgraph_cap);
            TConwayMorphism fsharp = conway_fsharp(triplet.p, ihat);
            std::string text = induced_map_text(fsharp.istar) + fsharp_text(fsharp);
            output.emit(text, fsharp_json(fsharp));
            return kExitOk;
        }
        CollectionSearchResult injection =
            find_continuous_injection(make_space(gs.graph, budget.subgraph_cap),
                                      make_space(go.graph, budget.subgraph_cap),
                                      budget.search_nodes);
        if (injection.status != SearchStatus::found) {
            Json payload{{"status", search_status_name(injection.status)}};
            output.emit(std::string("continuous injection: ") +
                            search_status_name(injection.status) + "\n",
                        report_envelope("induced", std::move(payload)));
            return injection.status == SearchStatus::budget_exceeded ? kExitBudgetExceeded
                                                                     : kExitOk;
        }
        InducedMap induced = induce_fstar(*injection.witness);
        output.emit(induced_map_text(induced), induced_map_json(induced));
        return kExitOk;
    }

    if (*hierarchy_cmd) {
        auto gs = load_graph(gs_path);
        auto go = load_graph(go_path);
        if (gs.document.hierarchy.empty() || go.document.hierarchy.empty())
            fail(ErrorCode::validation_error,
                 "both documents need a hierarchy plan for the ladder");
        LadderDiagram ladder;
        ladder.system = build_hierarchy(gs.graph, hierarchy_plan(gs.document, gs.graph));
        ladder.organization = build_hierarchy(go.graph, hierarchy_plan(go.document, go.graph));
        if (ladder.system.levels.size() != ladder.organization.levels.size())
            fail(ErrorCode::length_mismatch, "the two plans have different depths");

        GraphMap rung0 = [&] {
            if (!map_path.empty())
                return parse_map_document(read_file(map_path), ladder.system.levels.front(),
                                          ladder.organization.levels.front());
            MorphismSearchResult hom = find_morphism(ladder.system.levels.front(),
                                                     ladder.organization.levels.front(),
                                                     {MorphismLevel::hom}, budget.search_nodes);
            if (hom.status == SearchStatus::found) return *hom.witness;
            MorphismSearchResult whom = find_morphism(ladder.system.levels.front(),
                                                      ladder.organization.levels.front(),
                                                      {MorphismLevel::w_hom}, budget.search_nodes);
            if (whom.status != SearchStatus::found)
                fail(ErrorCode::validation_error, "no rung found at the finest level");
            return *whom.witness;
        }();

        ladder.rungs.push_back(rung0);
        for (std::size_t i = 0; i + 1 < ladder.system.levels.size(); ++i) {
            // the square forces the next rung: blocks map to blocks
            const GraphMap& prev = ladder.rungs.back();
            std::vector<int> next(
                static_cast<std::size_t>(ladder.system.levels[i + 1].vertex_count()), 0);
            for (int v = 1; v <= ladder.system.levels[i].vertex_count(); ++v) {
                int coarse = ladder.system.steps[i].image_of(v);
                int expected = ladder.organization.steps[i].image_of(prev.image_of(v));
                int& slot = next[static_cast<std::size_t>(coarse - 1)];
                if (slot == 0) slot = expected;
                else if (slot != expected)
                    fail(ErrorCode::validation_error,
                         "the rung does not descend through level " + std::to_string(i + 1));
            }
            ladder.rungs.push_back(GraphMap{ladder.system.levels[i + 1],
                                            ladder.organization.levels[i + 1], std::move(next)});
        }
        for (const GraphMap& rung : ladder.rungs) {
            MorphismClass cls = classify_map(rung);
            if (cls.is_w_hom)
                ladder.triplets.emplace_back(
                    decompose(rung, cls.is_hom ? ConwayLevel::hom : ConwayLevel::w_hom));
            else
                ladder.triplets.emplace_back(std::nullopt);
        }
        LadderReport report = check_ladder(ladder, budget);
        output.emit(ladder_report_text(ladder, report), ladder_report_json(ladder, report));
        return kExitOk;
    }

    if (*export_cmd) {
        auto g = load_graph(g_path);
        DotAnnotations annotations;
        for (std::size_t i = 0; i < g.document.vertices.size(); ++i)
            annotations.labels[static_cast<int>(i) + 1] = g.document.vertices[i].label;
        if (!fiber_org_path.empty()) {
            if (fiber_map_path.empty())
                fail(ErrorCode::validation_error, "--fibers-organization needs --fibers-map");
            auto go = load_graph(fiber_org_path);
            GraphMap q = parse_map_document(read_file(fiber_map_path), g.graph, go.graph);
            ConwayTriplet triplet = decompose(q, ConwayLevel::w_hom);
            for (int v = 1; v <= g.graph.vertex_count(); ++v)
                annotations.fiber_class[v] = triplet.p.image_of(v);
        }
        std::string dot = export_dot(g.graph, annotations);
        output.emit(dot, report_envelope("dot", Json{{"dot", dot}}));
        return kExitOk;
    }

    return kExitInputError;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const conway::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == conway::ErrorCode::enumeration_budget_exceeded ? kExitBudgetExceeded
                                                                          : kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}
