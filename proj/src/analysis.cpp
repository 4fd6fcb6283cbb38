#include "conway/analysis.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace conway {

const char* conway_level_name(ConwayLevel level) {
    switch (level) {
        case ConwayLevel::hom: return "hom";
        case ConwayLevel::w_hom: return "w-hom";
        case ConwayLevel::topological: return "topological";
    }
    return "?";
}

DoubletReport analyze_doublet(const Graph& gs, const Graph& go, const AnalysisBudget& budget) {
    if (!gs.is_connected() || !go.is_connected())
        fail(ErrorCode::validation_error, "doublet analysis expects connected graphs");

    DoubletReport report;
    report.system = gs;
    report.organization = go;

    auto run = [&](MorphismConstraints constraints) {
        MorphismSearchResult r = find_morphism(gs, go, constraints, budget.search_nodes);
        return LevelFinding{r.status, std::move(r.witness), r.nodes_explored};
    };
    report.hom = run({MorphismLevel::hom});
    report.w_hom = run({MorphismLevel::w_hom});
    MorphismConstraints nontrivial{MorphismLevel::w_hom};
    nontrivial.exclude_constant = true;
    report.w_hom_nontrivial = run(nontrivial);

    try {
        SpacePtr source_space = make_space(gs, budget.subgraph_cap);
        SpacePtr target_space = make_space(go, budget.subgraph_cap);
        // A constant collection map is continuous for every pair, so the
        // plain topological level never fails.
        report.topological = SearchStatus::found;
        report.topological_witness =
            constant_collection_map(source_space, target_space, target_space->vertex_element(1));

        CollectionSearchResult nontrivial_cont =
            find_nontrivial_continuous(source_space, target_space, budget.search_nodes);
        report.nontrivial_continuous = nontrivial_cont.status;
        report.nontrivial_witness = std::move(nontrivial_cont.witness);

        CollectionSearchResult injection =
            find_continuous_injection(source_space, target_space, budget.search_nodes);
        report.continuous_injection = injection.status;
        report.injection_witness = std::move(injection.witness);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::enumeration_budget_exceeded) throw;
        report.topological = SearchStatus::budget_exceeded;
        report.nontrivial_continuous = SearchStatus::budget_exceeded;
        report.continuous_injection = SearchStatus::budget_exceeded;
    }

    auto exists = [](SearchStatus s) { return s == SearchStatus::found; };
    report.chain_consistent = (!exists(report.hom.status) || exists(report.w_hom.status)) &&
                              (!exists(report.w_hom.status) || exists(report.topological));
    report.more_complicated = report.nontrivial_continuous == SearchStatus::absent;
    return report;
}

ConwayTriplet decompose(const GraphMap& q, ConwayLevel level) {
    if (level == ConwayLevel::topological)
        fail(ErrorCode::not_morphism_at_level,
             "topological triplets are built from a task enumeration, not a vertex map");
    MorphismClass cls = classify_map(q);
    if (level == ConwayLevel::hom && !cls.is_hom)
        fail(ErrorCode::not_morphism_at_level, "map is not a homomorphism");
    if (level == ConwayLevel::w_hom && !cls.is_w_hom)
        fail(ErrorCode::not_morphism_at_level, "map is not a w-homomorphism");

    // Task vertices are the image vertices in target index order; task edges
    // the images of the non-collapsed source edges.
    std::set<int> image_vertices(q.assignment.begin(), q.assignment.end());
    std::vector<int> task_to_target(image_vertices.begin(), image_vertices.end());
    std::map<int, int> target_to_task;
    for (std::size_t t = 0; t < task_to_target.size(); ++t)
        target_to_task[task_to_target[t]] = static_cast<int>(t) + 1;

    std::set<std::pair<int, int>> task_edges;
    for (int e = 1; e <= q.source.edge_count(); ++e) {
        auto [u, v] = q.source.edge_ends(e);
        int a = q.image_of(u), b = q.image_of(v);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        task_edges.emplace(a, b);
    }
    std::vector<std::string> names;
    for (int tv : task_to_target) names.push_back(q.target.vertex_name(tv));
    std::vector<std::pair<std::string, std::string>> pairs;
    for (auto [a, b] : task_edges)
        pairs.emplace_back(q.target.vertex_name(a), q.target.vertex_name(b));

    ConwayTriplet triplet;
    triplet.level = level;
    triplet.system = q.source;
    triplet.organization = q.target;
    triplet.task = build_graph(names, pairs);

    std::vector<int> p_assignment;
    for (int img : q.assignment) p_assignment.push_back(target_to_task.at(img));
    triplet.p = GraphMap{q.source, triplet.task, std::move(p_assignment)};
    triplet.i = GraphMap{triplet.task, q.target, task_to_target};
    triplet.q = q;

    GraphMap recomposed = compose(triplet.p, *triplet.i);
    if (recomposed.assignment != q.assignment)
        fail(ErrorCode::validation_error, "decomposition failed to recompose");
    return triplet;
}

namespace {

// Orbit representative of an assignment under precomposition with system
// automorphisms; correspondences that differ only by a symmetry of the
// system describe the same division of work.
std::vector<int> orbit_key(const std::vector<int>& assignment,
                           const std::vector<std::vector<int>>& autos) {
    std::vector<int> best = assignment;
    std::vector<int> candidate(assignment.size());
    for (const auto& sigma : autos) {
        for (std::size_t v = 0; v < assignment.size(); ++v)
            candidate[v] = assignment[static_cast<std::size_t>(sigma[v] - 1)];
        if (candidate < best) best = candidate;
    }
    return best;
}

void rank_triplets(std::vector<ConwayTriplet>& triplets) {
    std::stable_sort(triplets.begin(), triplets.end(),
                     [](const ConwayTriplet& a, const ConwayTriplet& b) {
                         if (a.task_edge_count() != b.task_edge_count())
                             return a.task_edge_count() < b.task_edge_count();
                         if (a.task_vertex_count() != b.task_vertex_count())
                             return a.task_vertex_count() < b.task_vertex_count();
                         std::string ca = canonical_form(a.task), cb = canonical_form(b.task);
                         if (ca != cb) return ca < cb;
                         return a.p.assignment < b.p.assignment;
                     });
}

// All partitions of {1..n} as block-id vectors in restricted growth form.
void for_each_partition(int n, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> block(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int v, int max_block) {
        if (v == n) {
            fn(block);
            return;
        }
        for (int b = 0; b <= max_block; ++b) {
            block[static_cast<std::size_t>(v)] = b;
            rec(v + 1, std::max(max_block, b + 1));
        }
    };
    rec(0, 0);
}

std::vector<int> normalize_blocks(const std::vector<int>& block) {
    std::map<int, int> relabel;
    std::vector<int> out;
    out.reserve(block.size());
    for (int b : block) {
        auto [it, fresh] = relabel.emplace(b, static_cast<int>(relabel.size()));
        out.push_back(it->second);
    }
    return out;
}

// Quotient of g by a partition given as block ids per vertex. Quotient
// vertices are named by joining their members and ordered by smallest member.
GraphMap quotient_by_blocks(const Graph& g, const std::vector<int>& block) {
    int block_count = *std::max_element(block.begin(), block.end()) + 1;
    std::vector<std::vector<int>> members(static_cast<std::size_t>(block_count));
    for (int v = 1; v <= g.vertex_count(); ++v)
        members[static_cast<std::size_t>(block[static_cast<std::size_t>(v - 1)])].push_back(v);
    std::vector<int> order(static_cast<std::size_t>(block_count));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return members[static_cast<std::size_t>(a)].front() <
                                         members[static_cast<std::size_t>(b)].front(); });
    std::vector<int> position(static_cast<std::size_t>(block_count));
    std::vector<std::string> names;
    for (std::size_t slot = 0; slot < order.size(); ++slot) {
        position[static_cast<std::size_t>(order[slot])] = static_cast<int>(slot) + 1;
        std::string name;
        for (int v : members[static_cast<std::size_t>(order[slot])]) {
            if (!name.empty()) name += "+";
            name += g.vertex_name(v);
        }
        names.push_back(name);
    }
    std::set<std::pair<int, int>> quotient_edges;
    for (int e = 1; e <= g.edge_count(); ++e) {
        auto [u, v] = g.edge_ends(e);
        int a = position[static_cast<std::size_t>(block[static_cast<std::size_t>(u - 1)])];
        int b = position[static_cast<std::size_t>(block[static_cast<std::size_t>(v - 1)])];
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        quotient_edges.emplace(a, b);
    }
    std::vector<std::pair<std::string, std::string>> pairs;
    for (auto [a, b] : quotient_edges)
        pairs.emplace_back(names[static_cast<std::size_t>(a - 1)],
                           names[static_cast<std::size_t>(b - 1)]);
    Graph quotient = build_graph(names, pairs);
    std::vector<int> assignment;
    for (int v = 1; v <= g.vertex_count(); ++v)
        assignment.push_back(position[static_cast<std::size_t>(block[static_cast<std::size_t>(v - 1)])]);
    return GraphMap{g, quotient, std::move(assignment)};
}

std::vector<ConwayTriplet> topological_task_graphs(const Graph& gs, const Graph& go,
                                                   const AnalysisBudget& budget,
                                                   bool& complete) {
    std::vector<ConwayTriplet> triplets;
    SpacePtr gs_space = make_space(gs, budget.subgraph_cap);
    SpacePtr go_space = make_space(go, budget.subgraph_cap);
    auto autos = automorphisms(gs);
    std::set<std::vector<int>> seen;

    for_each_partition(gs.vertex_count(), [&](const std::vector<int>& block) {
        // orbit representative as a partition: relabel block ids before
        // comparing, otherwise equivalent partitions get distinct keys
        std::vector<int> key = normalize_blocks(block);
        std::vector<int> candidate(block.size());
        for (const auto& sigma : autos) {
            for (std::size_t v = 0; v < block.size(); ++v)
                candidate[v] = block[static_cast<std::size_t>(sigma[v] - 1)];
            std::vector<int> normalized = normalize_blocks(candidate);
            if (normalized < key) key = std::move(normalized);
        }
        if (!seen.insert(key).second) return;
        GraphMap p = quotient_by_blocks(gs, block);

        SpacePtr task_space;
        CollectionMap phat;
        try {
            task_space = make_space(p.target, budget.subgraph_cap);
            phat = lift_to_continuous(p, gs_space, task_space);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::enumeration_budget_exceeded) {
                complete = false;
                return;
            }
            throw;
        }
        // The lifted leg must cover the whole task collection; partitions
        // whose lift misses elements do not factor the correspondence.
        std::set<int> image(phat.assignment.begin(), phat.assignment.end());
        if (static_cast<int>(image.size()) != task_space->size()) return;

        CollectionSearchResult injection =
            find_continuous_injection(task_space, go_space, budget.search_nodes);
        if (injection.status == SearchStatus::budget_exceeded) complete = false;
        if (injection.status != SearchStatus::found) return;

        ConwayTriplet triplet;
        triplet.level = ConwayLevel::topological;
        triplet.system = gs;
        triplet.organization = go;
        triplet.task = p.target;
        triplet.p = p;
        triplet.qhat = compose_collection(phat, *injection.witness);
        triplet.phat = std::move(phat);
        triplet.ihat = std::move(injection.witness);
        triplets.push_back(std::move(triplet));
    });
    return triplets;
}

} // namespace

TaskEnumeration enumerate_task_graphs(const Graph& gs, const Graph& go, ConwayLevel level,
                                      const AnalysisBudget& budget) {
    TaskEnumeration result;
    if (level == ConwayLevel::topological) {
        result.triplets = topological_task_graphs(gs, go, budget, result.complete);
    } else {
        MorphismLevel mlevel =
            level == ConwayLevel::hom ? MorphismLevel::hom : MorphismLevel::w_hom;
        auto autos = automorphisms(gs);
        std::set<std::vector<int>> seen;
        result.complete = for_each_morphism(
            gs, go, mlevel,
            [&](const GraphMap& q) {
                if (!seen.insert(orbit_key(q.assignment, autos)).second) return;
                result.triplets.push_back(decompose(q, level));
            },
            budget.search_nodes);
    }
    rank_triplets(result.triplets);
    result.status = result.triplets.empty()
                        ? (result.complete ? SearchStatus::absent : SearchStatus::budget_exceeded)
                        : SearchStatus::found;
    return result;
}

FallbackResult truncated_fallback(const Graph& gs, const Graph& go, ConwayLevel level,
                                  const AnalysisBudget& budget) {
    std::vector<Subgraph> candidates = enumerate_connected_subgraphs(gs, budget.subgraph_cap);
    // largest first: vertex count, then edge count, then canonical order
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Subgraph& a, const Subgraph& b) {
                         if (a.vertices.size() != b.vertices.size())
                             return a.vertices.size() > b.vertices.size();
                         return a.edges.size() > b.edges.size();
                     });

    FallbackResult result;
    SpacePtr go_space;
    if (level == ConwayLevel::topological) go_space = make_space(go, budget.subgraph_cap);

    for (const Subgraph& candidate : candidates) {
        ExtractedGraph extracted = extract_subgraph(gs, candidate);
        if (level == ConwayLevel::topological) {
            CollectionSearchResult r = find_continuous_injection(
                make_space(extracted.graph, budget.subgraph_cap), go_space, budget.search_nodes);
            if (r.status == SearchStatus::budget_exceeded) result.exhaustive = false;
            if (r.status != SearchStatus::found) continue;
            result.collection_witness = std::move(r.witness);
        } else {
            MorphismConstraints constraints;
            constraints.level =
                level == ConwayLevel::hom ? MorphismLevel::hom : MorphismLevel::w_hom;
            MorphismSearchResult r =
                find_morphism(extracted.graph, go, constraints, budget.search_nodes);
            if (r.status == SearchStatus::budget_exceeded) result.exhaustive = false;
            if (r.status != SearchStatus::found) continue;
            result.witness = std::move(r.witness);
        }
        result.kept = candidate;
        result.truncated = std::move(extracted);
        for (int v = 1; v <= gs.vertex_count(); ++v)
            if (!std::binary_search(candidate.vertices.begin(), candidate.vertices.end(), v))
                result.dropped_vertices.push_back(v);
        for (int e = 1; e <= gs.edge_count(); ++e)
            if (!std::binary_search(candidate.edges.begin(), candidate.edges.end(), e))
                result.dropped_edges.push_back(e);
        return result;
    }
    fail(ErrorCode::validation_error, "fallback found no candidate, which cannot happen");
}

namespace {

void validate_partition(const Graph& g, const VertexPartition& partition) {
    std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
    for (const auto& blk : partition) {
        if (blk.empty()) fail(ErrorCode::invalid_partition, "empty block");
        for (int v : blk) {
            if (v < 1 || v > g.vertex_count())
                fail(ErrorCode::invalid_partition, "block references unknown vertex");
            if (seen[static_cast<std::size_t>(v)])
                fail(ErrorCode::invalid_partition, "vertex appears in two blocks");
            seen[static_cast<std::size_t>(v)] = 1;
        }
        Subgraph induced;
        induced.vertices = blk;
        std::sort(induced.vertices.begin(), induced.vertices.end());
        for (int e = 1; e <= g.edge_count(); ++e) {
            auto [u, v] = g.edge_ends(e);
            if (std::binary_search(induced.vertices.begin(), induced.vertices.end(), u) &&
                std::binary_search(induced.vertices.begin(), induced.vertices.end(), v))
                induced.edges.push_back(e);
        }
        if (!subgraph_is_connected(g, induced))
            fail(ErrorCode::invalid_partition, "block does not induce a connected subgraph");
    }
    for (int v = 1; v <= g.vertex_count(); ++v)
        if (!seen[static_cast<std::size_t>(v)])
            fail(ErrorCode::invalid_partition,
                 "vertex " + g.vertex_name(v) + " missing from the partition");
}

std::vector<int> blocks_of(const Graph& g, const VertexPartition& partition) {
    std::vector<int> block(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t b = 0; b < partition.size(); ++b)
        for (int v : partition[b]) block[static_cast<std::size_t>(v - 1)] = static_cast<int>(b);
    return block;
}

} // namespace

HierarchySequence build_hierarchy(const Graph& g, const std::vector<VertexPartition>& plan) {
    if (plan.empty()) fail(ErrorCode::invalid_partition, "empty contraction plan");
    HierarchySequence sequence;
    sequence.partitions = plan;

    std::vector<std::vector<int>> block_vectors;
    for (const auto& partition : plan) {
        validate_partition(g, partition);
        block_vectors.push_back(blocks_of(g, partition));
    }
    for (std::size_t i = 1; i < block_vectors.size(); ++i) {
        // coarsening: same block at level i-1 implies same block at level i
        std::map<int, int> image;
        for (std::size_t v = 0; v < block_vectors[i].size(); ++v) {
            int from = block_vectors[i - 1][v], to = block_vectors[i][v];
            auto [it, fresh] = image.emplace(from, to);
            if (!fresh && it->second != to)
                fail(ErrorCode::invalid_partition,
                     "level " + std::to_string(i) + " does not coarsen level " +
                         std::to_string(i - 1));
        }
    }
    if (plan.back().size() != 1)
        fail(ErrorCode::invalid_partition, "the final partition must be a single block");

    std::vector<GraphMap> quotients;
    for (const auto& block : block_vectors) quotients.push_back(quotient_by_blocks(g, block));
    for (const auto& q : quotients) sequence.levels.push_back(q.target);

    for (std::size_t i = 0; i + 1 < quotients.size(); ++i) {
        // step image: block of level i -> block of level i+1 containing it
        std::vector<int> step(static_cast<std::size_t>(sequence.levels[i].vertex_count()), 0);
        for (int v = 1; v <= g.vertex_count(); ++v)
            step[static_cast<std::size_t>(quotients[i].image_of(v) - 1)] =
                quotients[i + 1].image_of(v);
        GraphMap p{sequence.levels[i], sequence.levels[i + 1], std::move(step)};
        MorphismClass cls = classify_map(p);
        if (!cls.is_w_hom || !cls.is_surjective || !cls.is_w_fibered)
            fail(ErrorCode::invalid_partition, "quotient step is not a surjective w-fibered map");
        sequence.steps.push_back(std::move(p));
    }
    return sequence;
}

LadderReport check_ladder(const LadderDiagram& ladder, const AnalysisBudget& budget) {
    const auto& sys = ladder.system;
    const auto& org = ladder.organization;
    if (sys.levels.size() != org.levels.size())
        fail(ErrorCode::length_mismatch, "system and organization sequences differ in length");
    if (ladder.rungs.size() != sys.levels.size())
        fail(ErrorCode::length_mismatch, "one rung per level is required");
    if (!ladder.triplets.empty() && ladder.triplets.size() != ladder.rungs.size())
        fail(ErrorCode::length_mismatch, "triplets, when given, must match the rungs");
    for (std::size_t i = 0; i < ladder.rungs.size(); ++i)
        if (!(ladder.rungs[i].source == sys.levels[i]) ||
            !(ladder.rungs[i].target == org.levels[i]))
            fail(ErrorCode::length_mismatch,
                 "rung " + std::to_string(i) + " does not connect the level graphs");

    LadderReport report;
    report.all_squares_commute = true;
    for (std::size_t i = 0; i + 1 < sys.levels.size(); ++i) {
        SquareResult square;
        square.commutes = true;
        for (int v = 1; v <= sys.levels[i].vertex_count(); ++v) {
            int down_then_right = org.steps[i].image_of(ladder.rungs[i].image_of(v));
            int right_then_down = ladder.rungs[i + 1].image_of(sys.steps[i].image_of(v));
            if (down_then_right != right_then_down) {
                square.commutes = false;
                square.witness_vertex = v;
                break;
            }
        }
        report.all_squares_commute &= square.commutes;
        report.squares.push_back(square);
    }

    for (const GraphMap& rung : ladder.rungs) {
        MorphismClass cls = classify_map(rung);
        report.rungs.push_back(RungResult{cls.is_hom, cls.is_w_hom});
    }

    for (std::size_t i = 0; i < ladder.triplets.size(); ++i) {
        if (!ladder.triplets[i]) {
            report.triangles.emplace_back(std::nullopt);
            continue;
        }
        const ConwayTriplet& triplet = *ladder.triplets[i];
        TriangleResult triangle;
        triangle.holds = true;
        if (!triplet.i || !(triplet.system == sys.levels[i]) ||
            !(triplet.organization == org.levels[i])) {
            triangle.holds = false;
        } else {
            GraphMap recomposed = compose(triplet.p, *triplet.i);
            for (int v = 1; v <= sys.levels[i].vertex_count(); ++v)
                if (recomposed.image_of(v) != ladder.rungs[i].image_of(v)) {
                    triangle.holds = false;
                    triangle.witness_vertex = v;
                    break;
                }
        }
        report.triangles.emplace_back(triangle);
    }

    // Diagonals: a coarse system level against the finer organization level
    // below it. The graph-level question and the collection-level one are
    // reported side by side.
    for (std::size_t i = 0; i + 1 < sys.levels.size(); ++i) {
        DiagonalResult diagonal;
        MorphismConstraints constraints{MorphismLevel::w_hom};
        constraints.exclude_constant = true;
        diagonal.w_hom =
            find_morphism(sys.levels[i + 1], org.levels[i], constraints, budget.search_nodes)
                .status;
        try {
            diagonal.nontrivial_continuous =
                find_nontrivial_continuous(make_space(sys.levels[i + 1], budget.subgraph_cap),
                                           make_space(org.levels[i], budget.subgraph_cap),
                                           budget.search_nodes)
                    .status;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::enumeration_budget_exceeded) throw;
            diagonal.nontrivial_continuous = SearchStatus::budget_exceeded;
        }
        report.diagonals.push_back(diagonal);
    }
    return report;
}

} // namespace conway
