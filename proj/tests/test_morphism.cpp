#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "conway/morphism.hpp"

using namespace conway;

namespace {

Graph path3() { return build_graph({"v1", "v2", "v3"}, {{"v1", "v2"}, {"v1", "v3"}}); }
Graph edge2() { return build_graph({"A", "B"}, {{"A", "B"}}); }
Graph triangle() { return build_graph({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}, {"b", "c"}}); }
Graph cycle4() {
    return build_graph({"1", "2", "3", "4"}, {{"1", "2"}, {"2", "3"}, {"3", "4"}, {"4", "1"}});
}
Graph point() { return build_graph({"v"}, {}); }

// Oracle: walk all |V'|^|V| assignments with an odometer and classify each.
// Completely independent of the backtracking search.
template <typename Fn>
void all_assignments(const Graph& source, const Graph& target, Fn&& fn) {
    std::vector<int> a(static_cast<std::size_t>(source.vertex_count()), 1);
    while (true) {
        fn(a);
        int i = 0;
        while (i < source.vertex_count()) {
            if (a[static_cast<std::size_t>(i)] < target.vertex_count()) {
                ++a[static_cast<std::size_t>(i)];
                break;
            }
            a[static_cast<std::size_t>(i)] = 1;
            ++i;
        }
        if (i == source.vertex_count()) break;
    }
}

bool satisfies(const MorphismClass& cls, const MorphismConstraints& c,
               const std::vector<int>& assignment) {
    if (!(c.level == MorphismLevel::hom ? cls.is_hom : cls.is_w_hom)) return false;
    if (c.require_injective && !cls.is_injective) return false;
    if (c.require_surjective && !cls.is_surjective) return false;
    if (c.require_fibered && !(c.level == MorphismLevel::hom ? cls.is_fibered : cls.is_w_fibered))
        return false;
    if (c.exclude_constant && std::set<int>(assignment.begin(), assignment.end()).size() < 2)
        return false;
    return true;
}

// every connected graph on <= max_n vertices, one per isomorphism class
std::vector<Graph> small_connected_graphs(int max_n) {
    std::vector<Graph> out;
    std::set<std::string> seen;
    for (int n = 1; n <= max_n; ++n) {
        std::vector<std::pair<int, int>> all_pairs;
        for (int u = 1; u <= n; ++u)
            for (int v = u + 1; v <= n; ++v) all_pairs.emplace_back(u, v);
        for (int mask = 0; mask < (1 << all_pairs.size()); ++mask) {
            std::vector<std::string> names;
            for (int v = 1; v <= n; ++v) names.push_back("n" + std::to_string(v));
            std::vector<std::pair<std::string, std::string>> pairs;
            for (std::size_t k = 0; k < all_pairs.size(); ++k)
                if (mask & (1 << k))
                    pairs.emplace_back("n" + std::to_string(all_pairs[k].first),
                                       "n" + std::to_string(all_pairs[k].second));
            Graph g = build_graph(names, pairs);
            if (!g.is_connected()) continue;
            if (seen.insert(canonical_form(g)).second) out.push_back(std::move(g));
        }
    }
    return out;
}

} // namespace

TEST_CASE("identity classifies as everything") {
    for (const Graph& g : {path3(), triangle(), cycle4()}) {
        MorphismClass cls = classify_map(identity_map(g));
        CHECK(cls.is_hom);
        CHECK(cls.is_w_hom);
        CHECK(cls.is_injective);
        CHECK(cls.is_surjective);
        CHECK(cls.is_fibered);
        CHECK(cls.is_w_fibered);
    }
}

TEST_CASE("collapsing an edge is a w-hom but not a hom") {
    Graph e = build_graph({"a", "b"}, {{"a", "b"}});
    GraphMap collapse = constant_map(e, point(), 1);
    MorphismClass cls = classify_map(collapse);
    CHECK(!cls.is_hom);
    CHECK(cls.is_w_hom);
    CHECK(cls.is_surjective);
    CHECK(cls.is_w_fibered);
    CHECK(!cls.is_fibered);
}

TEST_CASE("the path onto an edge is a fibered surjective hom") {
    GraphMap q{path3(), edge2(), {1, 2, 2}};
    MorphismClass cls = classify_map(q);
    CHECK(cls.is_hom);
    CHECK(cls.is_surjective);
    CHECK(cls.is_fibered);
    CHECK(!cls.is_injective);
}

TEST_CASE("find_morphism 2-colors the 4-cycle") {
    auto result = find_morphism(cycle4(), edge2(), {MorphismLevel::hom});
    REQUIRE(result.status == SearchStatus::found);
    CHECK(classify_map(*result.witness).is_hom);
}

TEST_CASE("find_morphism proves the triangle has no hom to an edge") {
    auto result = find_morphism(triangle(), edge2(), {MorphismLevel::hom});
    CHECK(result.status == SearchStatus::absent);
}

TEST_CASE("every connected graph maps onto the point at the w-hom level") {
    for (const Graph& g : {path3(), triangle(), cycle4()}) {
        auto result = find_morphism(g, point(), {MorphismLevel::w_hom});
        REQUIRE(result.status == SearchStatus::found);
        CHECK(classify_map(*result.witness).is_w_hom);
    }
}

TEST_CASE("budget exhaustion is distinguished from proven absence") {
    auto result = find_morphism(cycle4(), cycle4(), {MorphismLevel::hom}, 2);
    CHECK(result.status == SearchStatus::budget_exceeded);
}

TEST_CASE("the first witness is deterministic") {
    for (int run = 0; run < 3; ++run) {
        auto first = find_morphism(cycle4(), triangle(), {MorphismLevel::hom});
        auto again = find_morphism(cycle4(), triangle(), {MorphismLevel::hom});
        REQUIRE(first.status == SearchStatus::found);
        CHECK(first.witness->assignment == again.witness->assignment);
        CHECK(first.nodes_explored == again.nodes_explored);
    }
}

TEST_CASE("pinned assignments are honored") {
    MorphismConstraints c{MorphismLevel::hom};
    c.pinned[1] = 2;
    auto result = find_morphism(path3(), edge2(), c);
    REQUIRE(result.status == SearchStatus::found);
    CHECK(result.witness->image_of(1) == 2);
}

TEST_CASE("composition matches and classifies") {
    GraphMap f{path3(), edge2(), {1, 2, 2}};
    GraphMap onto_point = constant_map(edge2(), point(), 1);
    GraphMap composed = compose(f, onto_point);
    CHECK(composed.assignment == std::vector<int>{1, 1, 1});
    CHECK(classify_map(composed).is_w_hom);

    GraphMap id = identity_map(path3());
    CHECK(compose(id, f).assignment == f.assignment);
    CHECK_THROWS_AS(compose(onto_point, f), Error);
}

TEST_CASE("fibers partition the source") {
    GraphMap q{path3(), edge2(), {1, 2, 2}};
    auto fib = fibers(q);
    CHECK(fib.at(1) == std::vector<int>{1});
    CHECK(fib.at(2) == std::vector<int>{2, 3});
    // no fiber of a hom contains an edge
    CHECK(!path3().edge_between(2, 3).has_value());

    auto id_fibers = fibers(identity_map(triangle()));
    for (const auto& [w, members] : id_fibers) CHECK(members.size() == 1);

    // w-hom collapse: the fiber contains an edge, so the map cannot be a hom
    GraphMap collapse = constant_map(build_graph({"a", "b"}, {{"a", "b"}}), point(), 1);
    auto cf = fibers(collapse);
    CHECK(cf.at(1).size() == 2);
    CHECK(!classify_map(collapse).is_hom);
}

TEST_CASE("search agrees with the brute-force oracle on all small pairs") {
    auto graphs = small_connected_graphs(4);
    for (const Graph& source : graphs) {
        for (const Graph& target : graphs) {
            for (int level = 0; level < 2; ++level)
                for (int inj = 0; inj < 2; ++inj)
                    for (int surj = 0; surj < 2; ++surj)
                        for (int fib = 0; fib < 2; ++fib) {
                            MorphismConstraints c;
                            c.level = level ? MorphismLevel::w_hom : MorphismLevel::hom;
                            c.require_injective = inj;
                            c.require_surjective = surj;
                            c.require_fibered = fib;
                            bool oracle_exists = false;
                            all_assignments(source, target, [&](const std::vector<int>& a) {
                                if (oracle_exists) return;
                                GraphMap f{source, target, a};
                                if (satisfies(classify_map(f), c, a)) oracle_exists = true;
                            });
                            auto result = find_morphism(source, target, c);
                            REQUIRE(result.status != SearchStatus::budget_exceeded);
                            CHECK((result.status == SearchStatus::found) == oracle_exists);
                            if (result.witness)
                                CHECK(satisfies(classify_map(*result.witness), c,
                                                result.witness->assignment));
                        }
        }
    }
}

TEST_CASE("classification implications hold on every small map") {
    auto graphs = small_connected_graphs(3);
    for (const Graph& source : graphs)
        for (const Graph& target : graphs)
            all_assignments(source, target, [&](const std::vector<int>& a) {
                MorphismClass cls = classify_map(GraphMap{source, target, a});
                if (cls.is_hom) CHECK(cls.is_w_hom);
                if (cls.is_w_hom && cls.is_injective) CHECK(cls.is_hom);
                if (cls.is_hom) {
                    auto fib = fibers(GraphMap{source, target, a});
                    for (const auto& [w, members] : fib)
                        for (std::size_t x = 0; x < members.size(); ++x)
                            for (std::size_t y = x + 1; y < members.size(); ++y)
                                CHECK(!source.edge_between(members[x], members[y]).has_value());
                }
            });
}

TEST_CASE("composition of found morphisms stays at the level") {
    auto graphs = small_connected_graphs(3);
    for (const Graph& a : graphs)
        for (const Graph& b : graphs)
            for (const Graph& c : graphs)
                for (MorphismLevel level : {MorphismLevel::hom, MorphismLevel::w_hom}) {
                    auto f = find_morphism(a, b, {level});
                    auto g = find_morphism(b, c, {level});
                    if (f.status != SearchStatus::found || g.status != SearchStatus::found)
                        continue;
                    MorphismClass cls = classify_map(compose(*f.witness, *g.witness));
                    CHECK((level == MorphismLevel::hom ? cls.is_hom : cls.is_w_hom));
                }
}
