#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "conway/analysis.hpp"

using namespace conway;

namespace {

Graph path3() { return build_graph({"v1", "v2", "v3"}, {{"v1", "v2"}, {"v1", "v3"}}); }
Graph edge2() { return build_graph({"A", "B"}, {{"A", "B"}}); }
Graph triangle() { return build_graph({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}, {"b", "c"}}); }
Graph point() { return build_graph({"v"}, {}); }
Graph cycle4() {
    return build_graph({"1", "2", "3", "4"}, {{"1", "2"}, {"2", "3"}, {"3", "4"}, {"4", "1"}});
}
Graph complete4() {
    return build_graph({"k1", "k2", "k3", "k4"},
                       {{"k1", "k2"}, {"k1", "k3"}, {"k1", "k4"},
                        {"k2", "k3"}, {"k2", "k4"}, {"k3", "k4"}});
}
Graph path4() {
    return build_graph({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}});
}

} // namespace

TEST_CASE("doublet against the one-point organization") {
    DoubletReport report = analyze_doublet(triangle(), point());
    CHECK(report.hom.status == SearchStatus::absent);
    CHECK(report.w_hom.status == SearchStatus::found);
    CHECK(report.topological == SearchStatus::found);
    CHECK(report.chain_consistent);
    // nothing non-trivial fits into a one-element collection
    CHECK(report.nontrivial_continuous == SearchStatus::absent);
    CHECK(report.more_complicated);
}

TEST_CASE("doublet against the subdivided system") {
    Graph gs = triangle();
    Graph go = subdivide_edge(gs, 1);
    DoubletReport report = analyze_doublet(gs, go);
    CHECK(report.hom.status == SearchStatus::absent);
    // constant maps keep the plain w-hom level alive; the non-trivial row is
    // the informative one
    CHECK(report.w_hom.status == SearchStatus::found);
    CHECK(report.continuous_injection == SearchStatus::found);
    CHECK(report.chain_consistent);
    CHECK(!report.more_complicated);
}

TEST_CASE("doublet of the path against the complete graph") {
    DoubletReport report = analyze_doublet(path3(), complete4());
    CHECK(report.hom.status == SearchStatus::found);
    CHECK(report.w_hom.status == SearchStatus::found);
    CHECK(report.chain_consistent);
}

TEST_CASE("decompose an injective correspondence") {
    GraphMap q{edge2(), triangle(), {1, 3}};
    ConwayTriplet triplet = decompose(q, ConwayLevel::hom);
    CHECK(triplet.task.vertex_count() == 2);
    CHECK(triplet.task.edge_count() == 1);
    // p is a bijection onto the task graph
    MorphismClass p_class = classify_map(triplet.p);
    CHECK(p_class.is_injective);
    CHECK(p_class.is_surjective);
    CHECK(p_class.is_fibered);
}

TEST_CASE("decompose the constant correspondence") {
    GraphMap q = constant_map(triangle(), path3(), 2);
    ConwayTriplet triplet = decompose(q, ConwayLevel::w_hom);
    CHECK(triplet.task.vertex_count() == 1);
    CHECK(triplet.task.edge_count() == 0);
    CHECK(classify_map(triplet.p).is_w_fibered);
    CHECK(classify_map(*triplet.i).is_hom);
}

TEST_CASE("decompose the path onto an edge") {
    Graph org = build_graph({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}});
    GraphMap q{path3(), org, {1, 2, 2}};
    ConwayTriplet triplet = decompose(q, ConwayLevel::hom);
    CHECK(triplet.task.vertex_count() == 2);
    CHECK(triplet.task.edge_count() == 1);
    auto fib = fibers(triplet.p);
    CHECK(fib.at(1) == std::vector<int>{1});
    CHECK(fib.at(2) == std::vector<int>{2, 3});
    // q = i . p pointwise
    GraphMap recomposed = compose(triplet.p, *triplet.i);
    CHECK(recomposed.assignment == q.assignment);
    CHECK(classify_map(triplet.p).is_fibered);
    CHECK(classify_map(*triplet.i).is_injective);
}

TEST_CASE("decompose rejects the wrong level") {
    GraphMap collapse = constant_map(edge2(), point(), 1);
    CHECK_THROWS_AS(decompose(collapse, ConwayLevel::hom), Error);
}

TEST_CASE("task enumeration reports both path colorings but folds the cycle's") {
    // the two correspondences of the path differ in which team gets the hub
    TaskEnumeration path_tasks = enumerate_task_graphs(path3(), edge2(), ConwayLevel::hom);
    CHECK(path_tasks.status == SearchStatus::found);
    CHECK(path_tasks.complete);
    REQUIRE(path_tasks.triplets.size() == 2);
    for (const auto& triplet : path_tasks.triplets) {
        CHECK(triplet.task.vertex_count() == 2);
        CHECK(triplet.task.edge_count() == 1);
    }
    auto f0 = fibers(path_tasks.triplets[0].p);
    auto f1 = fibers(path_tasks.triplets[1].p);
    CHECK(f0 != f1);

    // the 4-cycle's two 2-colorings are the same division up to rotation
    TaskEnumeration cycle_tasks = enumerate_task_graphs(cycle4(), edge2(), ConwayLevel::hom);
    CHECK(cycle_tasks.triplets.size() == 1);
}

TEST_CASE("the one-point organization admits exactly one task graph") {
    TaskEnumeration tasks = enumerate_task_graphs(triangle(), point(), ConwayLevel::w_hom);
    REQUIRE(tasks.triplets.size() == 1);
    CHECK(tasks.triplets[0].task.vertex_count() == 1);
    CHECK(tasks.triplets[0].task.edge_count() == 0);
}

TEST_CASE("ranking puts simpler task graphs first") {
    TaskEnumeration tasks = enumerate_task_graphs(path3(), complete4(), ConwayLevel::w_hom);
    REQUIRE(!tasks.triplets.empty());
    for (std::size_t k = 1; k < tasks.triplets.size(); ++k) {
        const auto& prev = tasks.triplets[k - 1];
        const auto& cur = tasks.triplets[k];
        CHECK(std::make_pair(prev.task_edge_count(), prev.task_vertex_count()) <=
              std::make_pair(cur.task_edge_count(), cur.task_vertex_count()));
    }
    // the constant correspondence gives the simplest task graph of all
    CHECK(tasks.triplets.front().task.vertex_count() == 1);
}

TEST_CASE("topological task graphs for the subdivided pair") {
    Graph gs = triangle();
    Graph go = subdivide_edge(gs, 1); // the 4-cycle
    CHECK(find_morphism(gs, go, {MorphismLevel::hom}).status == SearchStatus::absent);
    TaskEnumeration tasks = enumerate_task_graphs(gs, go, ConwayLevel::topological);
    REQUIRE(tasks.status == SearchStatus::found);
    // the point, the edge quotient and the full triangle all work
    CHECK(tasks.triplets.size() == 3);
    for (const auto& triplet : tasks.triplets) {
        REQUIRE(triplet.phat.has_value());
        REQUIRE(triplet.ihat.has_value());
        REQUIRE(triplet.qhat.has_value());
        CHECK(classify_map(triplet.p).is_w_fibered);
        CollectionMapClass ihat_class = classify_collection_map(*triplet.ihat);
        CHECK(ihat_class.continuous);
        CHECK(ihat_class.injective);
        CollectionMapClass phat_class = classify_collection_map(*triplet.phat);
        CHECK(phat_class.continuous);
        CHECK(phat_class.surjective);
        CHECK(classify_collection_map(*triplet.qhat).continuous);
        // q_hat really is the composite
        for (int x = 0; x < triplet.phat->source->size(); ++x)
            CHECK(triplet.qhat->image_of(x) == triplet.ihat->image_of(triplet.phat->image_of(x)));
    }
}

TEST_CASE("every hom triplet lifts to a w-hom and a topological one") {
    std::vector<std::pair<Graph, Graph>> pairs = {{path3(), edge2()},
                                                  {cycle4(), edge2()},
                                                  {path3(), complete4()}};
    for (const auto& [gs, go] : pairs) {
        TaskEnumeration tasks = enumerate_task_graphs(gs, go, ConwayLevel::hom);
        for (const auto& triplet : tasks.triplets) {
            ConwayTriplet weak = decompose(*triplet.q, ConwayLevel::w_hom);
            CHECK(classify_map(weak.p).is_w_fibered);
            // lifting both legs keeps their character on the collections
            CollectionMap phat = lift_to_continuous(triplet.p);
            CollectionMap ihat = lift_to_continuous(*triplet.i);
            CHECK(classify_collection_map(phat).continuous);
            CollectionMapClass ihat_class = classify_collection_map(ihat);
            CHECK(ihat_class.continuous);
            CHECK(ihat_class.injective);
        }
    }
}

TEST_CASE("fallback trims the triangle against the two-team organization") {
    // the whole triangle admits no hom to an edge; the largest piece that
    // does is a two-edge path, one edge short of the full system
    FallbackResult fallback = truncated_fallback(triangle(), edge2(), ConwayLevel::hom);
    CHECK(fallback.kept.vertices.size() == 3);
    CHECK(fallback.kept.edges.size() == 2);
    REQUIRE(fallback.witness.has_value());
    CHECK(classify_map(*fallback.witness).is_hom);
    CHECK(fallback.dropped_vertices.empty());
    CHECK(fallback.dropped_edges.size() == 1);
}

TEST_CASE("fallback keeps everything when the system already embeds") {
    FallbackResult fallback = truncated_fallback(path3(), complete4(), ConwayLevel::hom);
    CHECK(fallback.kept == whole_graph_subgraph(path3()));
    CHECK(fallback.dropped_vertices.empty());
    CHECK(fallback.dropped_edges.empty());
}

TEST_CASE("fallback bottoms out at a single vertex") {
    FallbackResult fallback = truncated_fallback(triangle(), point(), ConwayLevel::hom);
    CHECK(fallback.kept.vertices.size() == 1);
    CHECK(fallback.kept.edges.empty());
    REQUIRE(fallback.witness.has_value());
    CHECK(classify_map(*fallback.witness).is_hom);
}

TEST_CASE("fallback at the topological level") {
    FallbackResult fallback = truncated_fallback(complete4(), cycle4(), ConwayLevel::topological);
    REQUIRE(fallback.collection_witness.has_value());
    CollectionMapClass cls = classify_collection_map(*fallback.collection_witness);
    CHECK(cls.continuous);
    CHECK(cls.injective);
    CHECK(!fallback.kept.vertices.empty());
}

TEST_CASE("hierarchy from the trivial plan") {
    Graph g = path3();
    HierarchySequence seq =
        build_hierarchy(g, {{{1}, {2}, {3}}, {{1, 2, 3}}});
    REQUIRE(seq.levels.size() == 2);
    CHECK(seq.levels[0] == g);
    CHECK(seq.levels[1].vertex_count() == 1);
    REQUIRE(seq.steps.size() == 1);
    CHECK(classify_map(seq.steps[0]).is_w_fibered);
}

TEST_CASE("hierarchy of the 4-path contracts pairwise to the point") {
    Graph g = path4();
    HierarchySequence seq = build_hierarchy(
        g, {{{1}, {2}, {3}, {4}}, {{1, 2}, {3, 4}}, {{1, 2, 3, 4}}});
    REQUIRE(seq.levels.size() == 3);
    CHECK(seq.levels[1].vertex_count() == 2);
    CHECK(seq.levels[1].edge_count() == 1);
    CHECK(seq.levels[2].vertex_count() == 1);
    for (const GraphMap& step : seq.steps) {
        MorphismClass cls = classify_map(step);
        CHECK(cls.is_w_hom);
        CHECK(cls.is_surjective);
        CHECK(cls.is_w_fibered);
    }
    // composing the whole chain is the constant map, every prefix surjective
    GraphMap composite = seq.steps[0];
    MorphismClass prefix = classify_map(composite);
    CHECK((prefix.is_w_hom && prefix.is_surjective));
    composite = compose(composite, seq.steps[1]);
    prefix = classify_map(composite);
    CHECK((prefix.is_w_hom && prefix.is_surjective));
    CHECK(std::set<int>(composite.assignment.begin(), composite.assignment.end()).size() == 1);
}

TEST_CASE("invalid plans are rejected") {
    Graph g = path4();
    // disconnected block {a, c}
    CHECK_THROWS_AS(build_hierarchy(g, {{{1, 3}, {2}, {4}}, {{1, 2, 3, 4}}}), Error);
    // non-coarsening second level
    CHECK_THROWS_AS(
        build_hierarchy(g, {{{1, 2}, {3, 4}}, {{1}, {2, 3, 4}}, {{1, 2, 3, 4}}}), Error);
    // missing vertex
    CHECK_THROWS_AS(build_hierarchy(g, {{{1, 2}, {3}}, {{1, 2, 3, 4}}}), Error);
    // final partition not a single block
    CHECK_THROWS_AS(build_hierarchy(g, {{{1, 2}, {3, 4}}}), Error);
    try {
        build_hierarchy(g, {{{1, 3}, {2}, {4}}, {{1, 2, 3, 4}}});
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::invalid_partition);
    }
}

TEST_CASE("the identity ladder commutes and a perturbed rung is caught") {
    Graph sys = path4();
    Graph org = build_graph({"A", "B", "C", "D"}, {{"A", "B"}, {"B", "C"}, {"C", "D"}});
    std::vector<VertexPartition> plan = {
        {{1}, {2}, {3}, {4}}, {{1, 2}, {3, 4}}, {{1, 2, 3, 4}}};

    LadderDiagram ladder;
    ladder.system = build_hierarchy(sys, plan);
    ladder.organization = build_hierarchy(org, plan);
    ladder.rungs.push_back(GraphMap{ladder.system.levels[0], ladder.organization.levels[0],
                                    {1, 2, 3, 4}});
    ladder.rungs.push_back(GraphMap{ladder.system.levels[1], ladder.organization.levels[1],
                                    {1, 2}});
    ladder.rungs.push_back(GraphMap{ladder.system.levels[2], ladder.organization.levels[2], {1}});

    LadderReport report = check_ladder(ladder);
    CHECK(report.all_squares_commute);
    for (const auto& square : report.squares) CHECK(square.commutes);
    for (const auto& rung : report.rungs) CHECK(rung.is_w_hom);
    // the first coarse system level maps into the finer organization level;
    // the terminal point cannot do so non-trivially
    REQUIRE(report.diagonals.size() == 2);
    CHECK(report.diagonals[0].w_hom == SearchStatus::found);
    CHECK(report.diagonals[0].nontrivial_continuous == SearchStatus::found);
    CHECK(report.diagonals[1].w_hom == SearchStatus::absent);
    CHECK(report.diagonals[1].nontrivial_continuous == SearchStatus::absent);

    // perturb the middle rung
    ladder.rungs[1].assignment = {2, 1};
    LadderReport broken = check_ladder(ladder);
    CHECK(!broken.all_squares_commute);
    CHECK(!broken.squares[0].commutes);
    REQUIRE(broken.squares[0].witness_vertex.has_value());
    CHECK(*broken.squares[0].witness_vertex == 1); // vertex a maps two different ways
}

TEST_CASE("triangles verify the attached decompositions") {
    Graph sys = path4();
    Graph org = build_graph({"A", "B", "C", "D"}, {{"A", "B"}, {"B", "C"}, {"C", "D"}});
    std::vector<VertexPartition> plan = {{{1}, {2}, {3}, {4}}, {{1, 2, 3, 4}}};
    LadderDiagram ladder;
    ladder.system = build_hierarchy(sys, plan);
    ladder.organization = build_hierarchy(org, plan);
    ladder.rungs.push_back(GraphMap{ladder.system.levels[0], ladder.organization.levels[0],
                                    {1, 2, 3, 4}});
    ladder.rungs.push_back(GraphMap{ladder.system.levels[1], ladder.organization.levels[1], {1}});
    for (const GraphMap& rung : ladder.rungs)
        ladder.triplets.emplace_back(decompose(rung, ConwayLevel::hom));

    LadderReport report = check_ladder(ladder);
    REQUIRE(report.triangles.size() == 2);
    for (const auto& triangle : report.triangles) {
        REQUIRE(triangle.has_value());
        CHECK(triangle->holds);
    }

    // length mismatches are input errors
    ladder.rungs.pop_back();
    CHECK_THROWS_AS(check_ladder(ladder), Error);
}
