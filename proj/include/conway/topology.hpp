#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "conway/graph.hpp"
#include "conway/morphism.hpp"
#include "conway/poset.hpp"

namespace conway {

// The collection of connected subgraphs of a connected graph, ordered by
// containment, together with the topology that order induces. Element
// indices (0-based) follow the canonical enumeration order.
class GraphTopologySpace {
public:
    GraphTopologySpace(Graph graph, std::size_t cap = kDefaultSubgraphCap);

    const Graph& graph() const { return graph_; }
    const std::vector<Subgraph>& collection() const { return collection_; }
    int size() const { return static_cast<int>(collection_.size()); }
    const Subgraph& element(int i) const { return collection_[static_cast<std::size_t>(i)]; }

    const FinitePoset& poset() const { return topology_.poset(); }
    const PosetTopology& topology() const { return topology_; }

    std::optional<int> element_index(const Subgraph& sub) const;
    int vertex_element(int v) const;       // index of ({v}, {})
    int edge_element(int e) const;         // index of the single-edge subgraph of e
    int whole_graph_element() const;

private:
    Graph graph_;
    std::vector<Subgraph> collection_;
    PosetTopology topology_;
};

using SpacePtr = std::shared_ptr<const GraphTopologySpace>;

GraphTopologySpace graph_topology(const Graph& g, std::size_t cap = kDefaultSubgraphCap);
SpacePtr make_space(const Graph& g, std::size_t cap = kDefaultSubgraphCap);

// Rebuilds (V, E) from the structure of the collection: minimal elements are
// the vertices, height-one elements the edges. Throws malformed_collection
// when the collection does not have that shape.
Graph recover_graph(const GraphTopologySpace& space);

enum class Provenance { lifted_from_hom, lifted_from_w_hom, free };

struct CollectionMap {
    SpacePtr source;
    SpacePtr target;
    std::vector<int> assignment; // 0-based element indices into target
    Provenance provenance = Provenance::free;

    int image_of(int element) const { return assignment[static_cast<std::size_t>(element)]; }
    PosetMap as_poset_map() const { return PosetMap{assignment}; }
};

struct CollectionMapClass {
    bool continuous = false;
    bool injective = false;
    bool surjective = false;
    bool embedding = false;
    bool homeomorphic = false;
};

CollectionMapClass classify_collection_map(const CollectionMap& m);

// The lift of a w-homomorphism: a subgraph maps to its image, with collapsed
// edges projected away. Monotone by construction, hence continuous.
CollectionMap lift_to_continuous(const GraphMap& f, SpacePtr source_space = nullptr,
                                 SpacePtr target_space = nullptr,
                                 std::size_t cap = kDefaultSubgraphCap);

CollectionMap constant_collection_map(SpacePtr source, SpacePtr target, int target_element);
CollectionMap compose_collection(const CollectionMap& f, const CollectionMap& g);

struct CollectionSearchResult {
    SearchStatus status = SearchStatus::absent;
    std::optional<CollectionMap> witness;
    std::uint64_t nodes_explored = 0;
};

// Complete search for a monotone injection between the collection posets.
CollectionSearchResult find_continuous_injection(SpacePtr source, SpacePtr target,
                                                 std::uint64_t budget = kDefaultSearchBudget);

// Complete search for a monotone map whose image is not a single element.
CollectionSearchResult find_nontrivial_continuous(SpacePtr source, SpacePtr target,
                                                  std::uint64_t budget = kDefaultSearchBudget);

// A connected graph containing disjoint copies of g and h, joined by a single
// bridge edge between their first vertices. Both collections then inject
// continuously.
Graph common_supergraph(const Graph& g, const Graph& h);

} // namespace conway
