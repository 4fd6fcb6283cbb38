#include "conway/topology.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace conway {

GraphTopologySpace::GraphTopologySpace(Graph graph, std::size_t cap)
    : graph_(std::move(graph)),
      collection_(enumerate_connected_subgraphs(graph_, cap)),
      topology_([this] {
          const std::size_t n = collection_.size();
          std::vector<Bits> rows(n, Bits(n));
          for (std::size_t b = 0; b < n; ++b)
              for (std::size_t a = 0; a < n; ++a)
                  if (collection_[b].contains(collection_[a])) rows[b].set(a);
          std::vector<std::string> names;
          names.reserve(n);
          for (const auto& sub : collection_) names.push_back(subgraph_label(graph_, sub));
          return PosetTopology(FinitePoset::from_rows(std::move(names), std::move(rows)));
      }()) {}

std::optional<int> GraphTopologySpace::element_index(const Subgraph& sub) const {
    auto it = std::lower_bound(collection_.begin(), collection_.end(), sub);
    if (it != collection_.end() && *it == sub)
        return static_cast<int>(it - collection_.begin());
    return std::nullopt;
}

int GraphTopologySpace::vertex_element(int v) const {
    auto idx = element_index(Subgraph{{v}, {}});
    if (!idx) fail(ErrorCode::malformed_collection, "missing vertex element " + std::to_string(v));
    return *idx;
}

int GraphTopologySpace::edge_element(int e) const {
    auto [u, v] = graph_.edge_ends(e);
    auto idx = element_index(Subgraph{{u, v}, {e}});
    if (!idx) fail(ErrorCode::malformed_collection, "missing edge element " + std::to_string(e));
    return *idx;
}

int GraphTopologySpace::whole_graph_element() const {
    auto idx = element_index(whole_graph_subgraph(graph_));
    if (!idx) fail(ErrorCode::malformed_collection, "missing whole-graph element");
    return *idx;
}

GraphTopologySpace graph_topology(const Graph& g, std::size_t cap) {
    return GraphTopologySpace(g, cap);
}

SpacePtr make_space(const Graph& g, std::size_t cap) {
    return std::make_shared<const GraphTopologySpace>(g, cap);
}

Graph recover_graph(const GraphTopologySpace& space) {
    const FinitePoset& poset = space.poset();
    const int n = space.size();

    std::map<int, int> vertex_of_element; // minimal element -> vertex id
    std::vector<int> vertex_ids;
    for (int x = 0; x < n; ++x) {
        if (!poset.is_minimal(x)) continue;
        const Subgraph& sub = space.element(x);
        if (sub.vertices.size() != 1 || !sub.edges.empty())
            fail(ErrorCode::malformed_collection,
                 "minimal element is not a single-vertex subgraph: " +
                     subgraph_label(space.graph(), sub));
        vertex_of_element[x] = sub.vertices.front();
        vertex_ids.push_back(sub.vertices.front());
    }
    std::sort(vertex_ids.begin(), vertex_ids.end());
    for (std::size_t i = 0; i < vertex_ids.size(); ++i)
        if (vertex_ids[i] != static_cast<int>(i) + 1)
            fail(ErrorCode::malformed_collection, "vertex indices are not dense");

    // Height-one elements: everything strictly below is minimal.
    std::map<int, std::pair<int, int>> edge_ends_by_id;
    for (int x = 0; x < n; ++x) {
        if (poset.is_minimal(x)) continue;
        std::vector<int> below;
        for (int y = 0; y < n; ++y)
            if (y != x && poset.leq(y, x)) below.push_back(y);
        bool all_minimal = std::all_of(below.begin(), below.end(),
                                       [&](int y) { return poset.is_minimal(y); });
        if (!all_minimal) continue;
        const Subgraph& sub = space.element(x);
        if (below.size() != 2 || sub.edges.size() != 1)
            fail(ErrorCode::malformed_collection,
                 "height-one element is not a single-edge subgraph: " +
                     subgraph_label(space.graph(), sub));
        int a = vertex_of_element.at(below[0]);
        int b = vertex_of_element.at(below[1]);
        if (a > b) std::swap(a, b);
        edge_ends_by_id[sub.edges.front()] = {a, b};
    }

    std::vector<std::string> names;
    for (int v : vertex_ids) names.push_back(space.graph().vertex_name(v));
    std::vector<std::pair<std::string, std::string>> pairs;
    int expected = 1;
    for (const auto& [e, ends] : edge_ends_by_id) {
        if (e != expected++)
            fail(ErrorCode::malformed_collection, "edge indices are not dense");
        pairs.emplace_back(names[static_cast<std::size_t>(ends.first - 1)],
                           names[static_cast<std::size_t>(ends.second - 1)]);
    }
    return build_graph(names, pairs);
}

CollectionMapClass classify_collection_map(const CollectionMap& m) {
    if (!m.source || !m.target)
        fail(ErrorCode::validation_error, "collection map without spaces");
    if (static_cast<int>(m.assignment.size()) != m.source->size())
        fail(ErrorCode::validation_error, "collection map is not total");
    const FinitePoset& src = m.source->poset();
    const FinitePoset& dst = m.target->poset();
    PosetMap f = m.as_poset_map();
    CollectionMapClass cls;
    cls.continuous = is_continuous(src, dst, f).continuous;
    cls.injective = is_injective(f);
    std::set<int> image(m.assignment.begin(), m.assignment.end());
    cls.surjective = static_cast<int>(image.size()) == dst.size();
    cls.embedding = is_embedding(src, dst, f);
    cls.homeomorphic = is_homeomorphism(src, dst, f);
    return cls;
}

CollectionMap lift_to_continuous(const GraphMap& f, SpacePtr source_space, SpacePtr target_space,
                                 std::size_t cap) {
    MorphismClass cls = classify_map(f);
    if (!cls.is_w_hom)
        fail(ErrorCode::not_w_homomorphism, "only w-homomorphisms lift to collection maps");

    if (!source_space) source_space = make_space(f.source, cap);
    if (!target_space) target_space = make_space(f.target, cap);
    if (!(source_space->graph() == f.source) || !(target_space->graph() == f.target))
        fail(ErrorCode::composition_mismatch, "spaces do not match the map's graphs");

    CollectionMap lifted;
    lifted.source = source_space;
    lifted.target = target_space;
    lifted.provenance = cls.is_hom ? Provenance::lifted_from_hom : Provenance::lifted_from_w_hom;
    lifted.assignment.reserve(static_cast<std::size_t>(source_space->size()));

    for (int idx = 0; idx < source_space->size(); ++idx) {
        const Subgraph& h = source_space->element(idx);
        std::set<int> image_vertices;
        std::set<int> image_edges;
        for (int v : h.vertices) image_vertices.insert(f.image_of(v));
        for (int e : h.edges) {
            auto [u, v] = f.source.edge_ends(e);
            int a = f.image_of(u), b = f.image_of(v);
            if (a == b) continue; // collapsed edge projects onto its vertex
            auto te = f.target.edge_between(a, b);
            if (!te)
                fail(ErrorCode::not_w_homomorphism, "edge image missing in target");
            image_edges.insert(*te);
        }
        Subgraph image{{image_vertices.begin(), image_vertices.end()},
                       {image_edges.begin(), image_edges.end()}};
        auto target_idx = target_space->element_index(image);
        if (!target_idx)
            fail(ErrorCode::malformed_collection,
                 "image subgraph missing from target collection: " +
                     subgraph_label(f.target, image));
        lifted.assignment.push_back(*target_idx);
    }
    return lifted;
}

CollectionMap constant_collection_map(SpacePtr source, SpacePtr target, int target_element) {
    if (target_element < 0 || target_element >= target->size())
        fail(ErrorCode::unknown_element, "constant image element out of range");
    CollectionMap m;
    m.source = std::move(source);
    m.target = std::move(target);
    m.assignment.assign(static_cast<std::size_t>(m.source->size()), target_element);
    return m;
}

CollectionMap compose_collection(const CollectionMap& f, const CollectionMap& g) {
    if (!f.target || !g.source || !(f.target->graph() == g.source->graph()))
        fail(ErrorCode::composition_mismatch, "inner target differs from outer source");
    CollectionMap composed;
    composed.source = f.source;
    composed.target = g.target;
    composed.assignment.reserve(f.assignment.size());
    for (int img : f.assignment) composed.assignment.push_back(g.image_of(img));
    return composed;
}

namespace {

CollectionSearchResult wrap_poset_search(SpacePtr source, SpacePtr target,
                                         const PosetMapQuery& query) {
    PosetMapSearchResult found = find_poset_map(source->poset(), target->poset(), query);
    CollectionSearchResult result;
    result.status = found.status;
    result.nodes_explored = found.nodes_explored;
    if (found.witness) {
        CollectionMap m;
        m.source = std::move(source);
        m.target = std::move(target);
        m.assignment = std::move(found.witness->assignment);
        result.witness = std::move(m);
    }
    return result;
}

} // namespace

CollectionSearchResult find_continuous_injection(SpacePtr source, SpacePtr target,
                                                 std::uint64_t budget) {
    PosetMapQuery query;
    query.mode = PosetMapMode::injective;
    query.budget = budget;
    return wrap_poset_search(std::move(source), std::move(target), query);
}

CollectionSearchResult find_nontrivial_continuous(SpacePtr source, SpacePtr target,
                                                  std::uint64_t budget) {
    PosetMapQuery query;
    query.mode = PosetMapMode::any;
    query.exclude_constant = true;
    query.budget = budget;
    return wrap_poset_search(std::move(source), std::move(target), query);
}

Graph common_supergraph(const Graph& g, const Graph& h) {
    if (!g.is_connected() || !h.is_connected())
        fail(ErrorCode::validation_error, "common supergraph expects connected inputs");

    std::vector<std::string> names;
    for (int v = 1; v <= g.vertex_count(); ++v) names.push_back(g.vertex_name(v));
    std::vector<std::string> h_names;
    for (int v = 1; v <= h.vertex_count(); ++v) {
        std::string candidate = h.vertex_name(v);
        while (std::find(names.begin(), names.end(), candidate) != names.end() ||
               std::find(h_names.begin(), h_names.end(), candidate) != h_names.end())
            candidate += "'";
        h_names.push_back(candidate);
    }
    names.insert(names.end(), h_names.begin(), h_names.end());

    std::vector<std::pair<std::string, std::string>> pairs;
    for (int e = 1; e <= g.edge_count(); ++e) {
        auto [u, v] = g.edge_ends(e);
        pairs.emplace_back(g.vertex_name(u), g.vertex_name(v));
    }
    for (int e = 1; e <= h.edge_count(); ++e) {
        auto [u, v] = h.edge_ends(e);
        pairs.emplace_back(h_names[static_cast<std::size_t>(u - 1)],
                           h_names[static_cast<std::size_t>(v - 1)]);
    }
    pairs.emplace_back(g.vertex_name(1), h_names.front());
    return build_graph(names, pairs);
}

} // namespace conway
