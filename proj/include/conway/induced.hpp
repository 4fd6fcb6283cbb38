#pragma once

#include <string>
#include <vector>

#include "conway/topology.hpp"

namespace conway {

// An element of a pointed graph: a vertex, an edge, or the base point that
// absorbs everything without a preimage.
struct PointedElement {
    enum class Kind { vertex, edge, star };
    Kind kind = Kind::star;
    int index = 0;

    static PointedElement vertex(int v) { return {Kind::vertex, v}; }
    static PointedElement edge(int e) { return {Kind::edge, e}; }
    static PointedElement star() { return {Kind::star, 0}; }

    bool is_star() const { return kind == Kind::star; }
    bool operator==(const PointedElement& other) const {
        return kind == other.kind && (kind == Kind::star || index == other.index);
    }
};

std::string pointed_element_label(const Graph& g, const PointedElement& el);

// The backward map induced by a continuous injection of collections: it sends
// each vertex and edge of the injection's target graph to a vertex, an edge,
// or the base point of its source graph.
struct InducedMap {
    Graph source; // the graph whose elements are mapped (the injection's target)
    Graph target; // the graph receiving them (the injection's source)
    std::vector<PointedElement> vertex_images; // per source vertex
    std::vector<PointedElement> edge_images;   // per source edge

    const PointedElement& of_vertex(int v) const {
        return vertex_images[static_cast<std::size_t>(v - 1)];
    }
    const PointedElement& of_edge(int e) const {
        return edge_images[static_cast<std::size_t>(e - 1)];
    }
};

// Builds the induced map of a continuous injection f. Assignment runs in
// three passes: elements of vertex-subgraph images map back to that vertex;
// then, edge by edge in ascending index, fresh vertices in the edge-subgraph
// image map to the smaller endpoint and fresh edges to the edge itself;
// whatever is left maps to the base point. Pass one claims its elements for
// good; pass two may revise its own vertex picks on later edges but an edge
// keeps its first assignment.
InducedMap induce_fstar(const CollectionMap& f);

// Which system elements an organization element is answerable for: a set of
// system vertices, a set of system edges, or none.
struct ResponsibilityEntry {
    enum class Kind { system_vertices, system_edges, unassigned } kind = Kind::unassigned;
    std::vector<int> ids;
};

struct TConwayMorphism {
    Graph system;
    Graph task;
    Graph organization;
    InducedMap istar; // organization elements -> task elements
    std::vector<ResponsibilityEntry> vertex_responsibility; // per organization vertex
    std::vector<ResponsibilityEntry> edge_responsibility;   // per organization edge
};

// Composes the induced map of the injection with the fibers of p.
TConwayMorphism conway_fsharp(const GraphMap& p, const CollectionMap& ihat);

} // namespace conway
