#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "conway/errors.hpp"

namespace conway {

inline constexpr std::size_t kDefaultSubgraphCap = 100'000;

// Finite simple graph. Vertices are indexed 1..n and edges 1..m; the index
// order is the order of declaration and is part of the value (it drives
// every canonical ordering downstream).
class Graph {
public:
    Graph() = default;

    int vertex_count() const { return static_cast<int>(names_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const std::string& vertex_name(int v) const { return names_[static_cast<std::size_t>(v - 1)]; }
    // Endpoints are returned with the smaller index first.
    std::pair<int, int> edge_ends(int e) const { return edges_[static_cast<std::size_t>(e - 1)]; }

    std::optional<int> vertex_index(std::string_view name) const;
    std::optional<int> edge_between(int u, int v) const;
    const std::vector<int>& neighbors(int v) const { return adjacency_[static_cast<std::size_t>(v - 1)]; }
    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

    bool is_connected() const;

    bool operator==(const Graph& other) const {
        return names_ == other.names_ && edges_ == other.edges_;
    }

private:
    friend Graph build_graph(const std::vector<std::string>& vertex_names,
                             const std::vector<std::pair<std::string, std::string>>& edge_pairs);

    std::vector<std::string> names_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adjacency_;
};

// Validating constructor. Rejects duplicate names, loops, duplicate edges and
// references to undeclared vertices. The empty vertex list is rejected too;
// the single-vertex edgeless graph is the smallest value this library admits.
Graph build_graph(const std::vector<std::string>& vertex_names,
                  const std::vector<std::pair<std::string, std::string>>& edge_pairs);

// A subgraph is stored as sorted vertex/edge index subsets of a parent graph.
// The parent is passed explicitly to the operations that need it.
struct Subgraph {
    std::vector<int> vertices; // ascending vertex indices
    std::vector<int> edges;    // ascending edge indices

    bool contains(const Subgraph& other) const;

    bool operator==(const Subgraph& other) const {
        return vertices == other.vertices && edges == other.edges;
    }
    // Canonical order: vertex subset first, edge subset as tie-break.
    bool operator<(const Subgraph& other) const {
        if (vertices != other.vertices) return vertices < other.vertices;
        return edges < other.edges;
    }
};

bool subgraph_is_wellformed(const Graph& g, const Subgraph& sub);
bool subgraph_is_connected(const Graph& g, const Subgraph& sub);
Subgraph whole_graph_subgraph(const Graph& g);
std::string subgraph_label(const Graph& g, const Subgraph& sub);

// Every connected subgraph of a connected graph, each exactly once, in the
// canonical order. Throws enumeration_budget_exceeded when the count passes
// `cap`; the count is exponential in general, so the cap is part of the
// contract rather than an afterthought.
std::vector<Subgraph> enumerate_connected_subgraphs(const Graph& g,
                                                    std::size_t cap = kDefaultSubgraphCap);

// A subgraph rendered as a standalone Graph, with maps back to the parent's
// vertex/edge indices (new index i corresponds to vertex_ids[i-1]).
struct ExtractedGraph {
    Graph graph;
    std::vector<int> vertex_ids;
    std::vector<int> edge_ids;
};

ExtractedGraph extract_subgraph(const Graph& g, const Subgraph& sub);

// The base graph together with one loop per vertex. Loops get edge indices
// m+1..m+n, loop m+v belonging to vertex v. project_edge realizes the
// projection that sends each loop to its vertex and fixes everything else.
struct LoopedGraph {
    Graph base;

    int loop_count() const { return base.vertex_count(); }
    int augmented_edge_count() const { return base.edge_count() + base.vertex_count(); }
    bool is_loop(int e) const { return e > base.edge_count(); }

    // Returns (vertex, 0) for a loop and (0, edge) for a base edge.
    std::pair<int, int> project_edge(int e) const;
};

LoopedGraph loop_augment(const Graph& g);

// Replaces edge e=(u,w) by u-x-w for a fresh vertex x. Vertex count grows by
// one and edge count by one; remaining edges keep their relative order.
Graph subdivide_edge(const Graph& g, int e);

// Brute-force canonical form for desk-scale graphs (permutation search with
// degree-class pruning). The string is equal for two graphs iff they are
// isomorphic.
std::string canonical_form(const Graph& g);
bool are_isomorphic(const Graph& a, const Graph& b);

// All automorphisms as 1-based image vectors, identity first.
std::vector<std::vector<int>> automorphisms(const Graph& g);

} // namespace conway
