#include "conway/induced.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace conway {

std::string pointed_element_label(const Graph& g, const PointedElement& el) {
    switch (el.kind) {
        case PointedElement::Kind::vertex: return g.vertex_name(el.index);
        case PointedElement::Kind::edge: return "e" + std::to_string(el.index);
        case PointedElement::Kind::star: return "*";
    }
    return "?";
}

InducedMap induce_fstar(const CollectionMap& f) {
    CollectionMapClass cls = classify_collection_map(f);
    if (!cls.continuous || !cls.injective)
        fail(ErrorCode::not_continuous_injection,
             "induced maps are defined for continuous injections only");

    const Graph& g = f.source->graph();        // G
    const Graph& g_prime = f.target->graph();  // G'

    InducedMap induced;
    induced.source = g_prime;
    induced.target = g;
    induced.vertex_images.assign(static_cast<std::size_t>(g_prime.vertex_count()),
                                 PointedElement::star());
    induced.edge_images.assign(static_cast<std::size_t>(g_prime.edge_count()),
                               PointedElement::star());

    std::vector<char> vertex_claimed(static_cast<std::size_t>(g_prime.vertex_count()) + 1, 0);
    std::vector<char> edge_claimed(static_cast<std::size_t>(g_prime.edge_count()) + 1, 0);

    // Pass 1: images of the vertex subgraphs. Everything in such an image,
    // edges included, maps back to the vertex, and stays claimed.
    for (int v = 1; v <= g.vertex_count(); ++v) {
        const Subgraph& image = f.target->element(f.image_of(f.source->vertex_element(v)));
        for (int w : image.vertices) {
            induced.vertex_images[static_cast<std::size_t>(w - 1)] = PointedElement::vertex(v);
            vertex_claimed[static_cast<std::size_t>(w)] = 1;
        }
        for (int e : image.edges) {
            induced.edge_images[static_cast<std::size_t>(e - 1)] = PointedElement::vertex(v);
            edge_claimed[static_cast<std::size_t>(e)] = 1;
        }
    }

    // Pass 2: images of the single-edge subgraphs, in ascending edge index.
    // A vertex not claimed in pass 1 takes the smaller endpoint of the
    // current edge, later edges overriding earlier ones. An edge not claimed
    // in pass 1 and not seen in an earlier edge image takes the edge.
    std::set<int> edges_seen;
    for (int e = 1; e <= g.edge_count(); ++e) {
        auto [u, v] = g.edge_ends(e);
        int anchor = std::min(u, v);
        const Subgraph& image = f.target->element(f.image_of(f.source->edge_element(e)));
        for (int w : image.vertices)
            if (!vertex_claimed[static_cast<std::size_t>(w)])
                induced.vertex_images[static_cast<std::size_t>(w - 1)] =
                    PointedElement::vertex(anchor);
        for (int ep : image.edges)
            if (!edge_claimed[static_cast<std::size_t>(ep)] && !edges_seen.count(ep))
                induced.edge_images[static_cast<std::size_t>(ep - 1)] = PointedElement::edge(e);
        for (int ep : image.edges) edges_seen.insert(ep);
    }

    // Pass 3 is implicit: images were initialized to the base point.
    return induced;
}

namespace {

ResponsibilityEntry responsibility_of(const PointedElement& task_element, const GraphMap& p,
                                      const std::map<int, std::vector<int>>& p_fibers) {
    ResponsibilityEntry entry;
    switch (task_element.kind) {
        case PointedElement::Kind::star:
            entry.kind = ResponsibilityEntry::Kind::unassigned;
            break;
        case PointedElement::Kind::vertex:
            entry.kind = ResponsibilityEntry::Kind::system_vertices;
            entry.ids = p_fibers.at(task_element.index);
            break;
        case PointedElement::Kind::edge: {
            entry.kind = ResponsibilityEntry::Kind::system_edges;
            auto ends = p.target.edge_ends(task_element.index);
            for (int e = 1; e <= p.source.edge_count(); ++e) {
                auto [u, v] = p.source.edge_ends(e);
                int a = p.image_of(u), b = p.image_of(v);
                if (a > b) std::swap(a, b);
                if (std::make_pair(a, b) == ends) entry.ids.push_back(e);
            }
            break;
        }
    }
    return entry;
}

} // namespace

TConwayMorphism conway_fsharp(const GraphMap& p, const CollectionMap& ihat) {
    MorphismClass p_class = classify_map(p);
    if (!p_class.is_w_hom || !p_class.is_surjective)
        fail(ErrorCode::not_morphism_at_level, "p must be a surjective w-homomorphism");
    if (!(ihat.source->graph() == p.target))
        fail(ErrorCode::composition_mismatch,
             "the injection must start at the collection of p's target");

    TConwayMorphism result;
    result.system = p.source;
    result.task = p.target;
    result.organization = ihat.target->graph();
    result.istar = induce_fstar(ihat);

    auto p_fibers = fibers(p);
    for (int v = 1; v <= result.organization.vertex_count(); ++v)
        result.vertex_responsibility.push_back(
            responsibility_of(result.istar.of_vertex(v), p, p_fibers));
    for (int e = 1; e <= result.organization.edge_count(); ++e)
        result.edge_responsibility.push_back(
            responsibility_of(result.istar.of_edge(e), p, p_fibers));
    return result;
}

} // namespace conway
