#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "conway/graph.hpp"

namespace conway {

inline constexpr std::uint64_t kDefaultSearchBudget = 10'000'000;

enum class MorphismLevel { hom, w_hom };

// A total vertex assignment between two graphs; assignment[v-1] is the image
// of source vertex v, as a target vertex index.
struct GraphMap {
    Graph source;
    Graph target;
    std::vector<int> assignment;

    int image_of(int v) const { return assignment[static_cast<std::size_t>(v - 1)]; }
};

GraphMap identity_map(const Graph& g);
GraphMap constant_map(const Graph& source, const Graph& target, int target_vertex);

// Every edge must land on an edge (hom) or be allowed to collapse onto a
// single vertex (w-hom). The fibered flags compare the edge image with the
// full target edge set; for the w-variant, collapsed edges are discarded
// before the comparison, mirroring the loop projection.
struct MorphismClass {
    bool is_hom = false;
    bool is_w_hom = false;
    bool is_injective = false;
    bool is_surjective = false;
    bool is_fibered = false;
    bool is_w_fibered = false;

    bool at_level(MorphismLevel level) const {
        return level == MorphismLevel::hom ? is_hom : is_w_hom;
    }
};

MorphismClass classify_map(const GraphMap& f);

struct MorphismConstraints {
    MorphismLevel level = MorphismLevel::hom;
    bool require_injective = false;
    bool require_surjective = false;
    bool require_fibered = false;
    bool exclude_constant = false; // reject maps whose image is a single vertex
    std::map<int, int> pinned;     // source vertex -> target vertex
};

enum class SearchStatus { found, absent, budget_exceeded };

const char* search_status_name(SearchStatus status);

struct MorphismSearchResult {
    SearchStatus status = SearchStatus::absent;
    std::optional<GraphMap> witness;
    std::uint64_t nodes_explored = 0;
};

// Complete backtracking search. Source vertices are assigned in descending
// degree (index as tie-break), candidate targets in index order, so the first
// witness is deterministic. `absent` means the whole space was exhausted,
// never that the budget ran out.
MorphismSearchResult find_morphism(const Graph& source, const Graph& target,
                                   const MorphismConstraints& constraints,
                                   std::uint64_t budget = kDefaultSearchBudget);

// Visits every morphism at the given level, in the same deterministic order
// the search uses. Returns false if the node budget ran out mid-way.
bool for_each_morphism(const Graph& source, const Graph& target, MorphismLevel level,
                       const std::function<void(const GraphMap&)>& visit,
                       std::uint64_t budget = kDefaultSearchBudget);

GraphMap compose(const GraphMap& f, const GraphMap& g);

// Partition of the source vertex set by image; every target vertex is a key,
// uncovered ones map to the empty set.
std::map<int, std::vector<int>> fibers(const GraphMap& q);

} // namespace conway
