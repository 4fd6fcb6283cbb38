#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conway/induced.hpp"
#include "conway/morphism.hpp"
#include "conway/topology.hpp"

namespace conway {

enum class ConwayLevel { hom, w_hom, topological };

const char* conway_level_name(ConwayLevel level);

struct AnalysisBudget {
    std::uint64_t search_nodes = kDefaultSearchBudget;
    std::size_t subgraph_cap = kDefaultSubgraphCap;
};

// A correspondence system -> organization factored through a task graph.
// At the graph levels p and i are vertex maps with q = i . p; at the
// topological level the factorization lives on the collections, with p still
// a plain surjective w-homomorphism underneath the lifted leg.
struct ConwayTriplet {
    ConwayLevel level = ConwayLevel::hom;
    Graph system;
    Graph organization;
    Graph task;
    GraphMap p;                        // system -> task, surjective
    std::optional<GraphMap> i;         // task -> organization (graph levels)
    std::optional<GraphMap> q;         // composed correspondence (graph levels)
    std::optional<CollectionMap> phat; // lifted p (topological level)
    std::optional<CollectionMap> ihat; // collection injection (topological level)
    std::optional<CollectionMap> qhat; // ihat . phat

    int task_edge_count() const { return task.edge_count(); }
    int task_vertex_count() const { return task.vertex_count(); }
};

struct LevelFinding {
    SearchStatus status = SearchStatus::absent;
    std::optional<GraphMap> witness;
    std::uint64_t nodes_explored = 0;
};

// Existence of correspondences at the three levels. A w-homomorphism and a
// continuous collection map always exist (any constant map qualifies), so
// both carry companion searches that exclude single-element images; the
// "more complicated" verdict is stated under that reading and the report
// keeps the caveat explicit.
struct DoubletReport {
    Graph system;
    Graph organization;

    LevelFinding hom;
    LevelFinding w_hom;
    LevelFinding w_hom_nontrivial;

    SearchStatus topological = SearchStatus::found;
    std::optional<CollectionMap> topological_witness; // constant map
    SearchStatus nontrivial_continuous = SearchStatus::absent;
    std::optional<CollectionMap> nontrivial_witness;
    SearchStatus continuous_injection = SearchStatus::absent;
    std::optional<CollectionMap> injection_witness;

    bool chain_consistent = false; // hom => w-hom => continuous
    // True when no continuous map with a larger-than-one-element image was
    // found; meaningless without the caveat, which rendering carries along.
    bool more_complicated = false;
};

DoubletReport analyze_doublet(const Graph& gs, const Graph& go,
                              const AnalysisBudget& budget = {});

// Canonical decomposition of a correspondence through its image: the task
// graph keeps the image vertices and the images of non-collapsed edges, p is
// the corestriction and i the inclusion.
ConwayTriplet decompose(const GraphMap& q, ConwayLevel level);

struct TaskEnumeration {
    SearchStatus status = SearchStatus::absent; // found when at least one triplet exists
    bool complete = true;                       // false when a budget cut the walk short
    std::vector<ConwayTriplet> triplets;        // ranked, simplest task graph first
};

// All correspondences at the level, deduplicated by precomposition with
// system automorphisms, decomposed and ranked by task complexity (edge
// count, then vertex count, then canonical form). At the topological level
// candidates are the quotients of the system by vertex partitions whose lift
// stays surjective and whose collection injects into the organization's.
TaskEnumeration enumerate_task_graphs(const Graph& gs, const Graph& go, ConwayLevel level,
                                      const AnalysisBudget& budget = {});

struct FallbackResult {
    Subgraph kept;                  // within gs
    ExtractedGraph truncated;       // kept, as a standalone graph
    std::optional<GraphMap> witness;           // graph levels
    std::optional<CollectionMap> collection_witness; // topological level
    std::vector<int> dropped_vertices;
    std::vector<int> dropped_edges;
    bool exhaustive = true; // false when some larger candidate hit the budget
};

// Largest connected subgraph of gs with a correspondence to go at the level.
// Total: the single-vertex subgraph always works.
FallbackResult truncated_fallback(const Graph& gs, const Graph& go, ConwayLevel level,
                                  const AnalysisBudget& budget = {});

using VertexPartition = std::vector<std::vector<int>>;

struct HierarchySequence {
    std::vector<Graph> levels;           // quotients, one per plan entry
    std::vector<GraphMap> steps;         // surjective w-fibered w-homs between levels
    std::vector<VertexPartition> partitions;
};

// Quotients of g along a coarsening plan. Every block must induce a
// connected subgraph (so each step is a w-homomorphism between connected
// simple graphs); the final partition must be the single block.
HierarchySequence build_hierarchy(const Graph& g, const std::vector<VertexPartition>& plan);

struct LadderDiagram {
    HierarchySequence system;
    HierarchySequence organization;
    std::vector<GraphMap> rungs; // rungs[i]: system level i -> organization level i
    std::vector<std::optional<ConwayTriplet>> triplets; // optional, per level
};

struct SquareResult {
    bool commutes = false;
    std::optional<int> witness_vertex; // source vertex whose square fails
};

struct RungResult {
    bool is_hom = false;
    bool is_w_hom = false;
};

struct DiagonalResult {
    SearchStatus w_hom = SearchStatus::absent;            // system level i+1 -> org level i
    SearchStatus nontrivial_continuous = SearchStatus::absent;
};

struct TriangleResult {
    bool holds = false;
    std::optional<int> witness_vertex;
};

struct LadderReport {
    std::vector<SquareResult> squares;
    std::vector<RungResult> rungs;
    std::vector<std::optional<TriangleResult>> triangles;
    std::vector<DiagonalResult> diagonals;
    bool all_squares_commute = false;
};

LadderReport check_ladder(const LadderDiagram& ladder, const AnalysisBudget& budget = {});

} // namespace conway
