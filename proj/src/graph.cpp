#include "conway/graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace conway {

std::optional<int> Graph::vertex_index(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i + 1);
    return std::nullopt;
}

std::optional<int> Graph::edge_between(int u, int v) const {
    if (u > v) std::swap(u, v);
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (edges_[i] == std::make_pair(u, v)) return static_cast<int>(i + 1);
    return std::nullopt;
}

bool Graph::is_connected() const {
    const int n = vertex_count();
    if (n == 0) return false;
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> stack{1};
    seen[1] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : neighbors(v)) {
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == n;
}

Graph build_graph(const std::vector<std::string>& vertex_names,
                  const std::vector<std::pair<std::string, std::string>>& edge_pairs) {
    if (vertex_names.empty())
        fail(ErrorCode::empty_graph, "a graph needs at least one vertex");

    Graph g;
    g.names_ = vertex_names;
    for (std::size_t i = 0; i < vertex_names.size(); ++i)
        for (std::size_t j = i + 1; j < vertex_names.size(); ++j)
            if (vertex_names[i] == vertex_names[j])
                fail(ErrorCode::duplicate_vertex, "vertex '" + vertex_names[i] + "' declared twice");

    g.adjacency_.assign(vertex_names.size(), {});
    for (const auto& [a, b] : edge_pairs) {
        auto u = g.vertex_index(a);
        auto v = g.vertex_index(b);
        if (!u) fail(ErrorCode::unknown_endpoint, "edge endpoint '" + a + "' is not a declared vertex");
        if (!v) fail(ErrorCode::unknown_endpoint, "edge endpoint '" + b + "' is not a declared vertex");
        if (*u == *v) fail(ErrorCode::loop_edge, "loop at vertex '" + a + "'");
        int lo = std::min(*u, *v), hi = std::max(*u, *v);
        if (std::find(g.edges_.begin(), g.edges_.end(), std::make_pair(lo, hi)) != g.edges_.end())
            fail(ErrorCode::duplicate_edge, "edge (" + a + ", " + b + ") declared twice");
        g.edges_.emplace_back(lo, hi);
        g.adjacency_[static_cast<std::size_t>(lo - 1)].push_back(hi);
        g.adjacency_[static_cast<std::size_t>(hi - 1)].push_back(lo);
    }
    for (auto& adj : g.adjacency_) std::sort(adj.begin(), adj.end());
    return g;
}

bool Subgraph::contains(const Subgraph& other) const {
    return std::includes(vertices.begin(), vertices.end(), other.vertices.begin(), other.vertices.end()) &&
           std::includes(edges.begin(), edges.end(), other.edges.begin(), other.edges.end());
}

bool subgraph_is_wellformed(const Graph& g, const Subgraph& sub) {
    if (sub.vertices.empty()) return false;
    for (int v : sub.vertices)
        if (v < 1 || v > g.vertex_count()) return false;
    for (int e : sub.edges) {
        if (e < 1 || e > g.edge_count()) return false;
        auto [u, v] = g.edge_ends(e);
        if (!std::binary_search(sub.vertices.begin(), sub.vertices.end(), u)) return false;
        if (!std::binary_search(sub.vertices.begin(), sub.vertices.end(), v)) return false;
    }
    return true;
}

bool subgraph_is_connected(const Graph& g, const Subgraph& sub) {
    if (sub.vertices.empty()) return false;
    if (sub.vertices.size() == 1) return true;
    std::map<int, std::vector<int>> adj;
    for (int v : sub.vertices) adj[v];
    for (int e : sub.edges) {
        auto [u, v] = g.edge_ends(e);
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::set<int> seen{sub.vertices.front()};
    std::vector<int> stack{sub.vertices.front()};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (seen.insert(w).second) stack.push_back(w);
    }
    return seen.size() == sub.vertices.size();
}

Subgraph whole_graph_subgraph(const Graph& g) {
    Subgraph s;
    s.vertices.resize(static_cast<std::size_t>(g.vertex_count()));
    std::iota(s.vertices.begin(), s.vertices.end(), 1);
    s.edges.resize(static_cast<std::size_t>(g.edge_count()));
    std::iota(s.edges.begin(), s.edges.end(), 1);
    return s;
}

std::string subgraph_label(const Graph& g, const Subgraph& sub) {
    std::ostringstream out;
    out << "({";
    for (std::size_t i = 0; i < sub.vertices.size(); ++i)
        out << (i ? "," : "") << g.vertex_name(sub.vertices[i]);
    out << "},{";
    for (std::size_t i = 0; i < sub.edges.size(); ++i)
        out << (i ? "," : "") << "e" << sub.edges[i];
    out << "})";
    return out.str();
}

namespace {

// Connected vertex sets are grown from each seed vertex using only vertices
// with a larger index, so each set is produced exactly once (at its minimum).
void grow_vertex_sets(const Graph& g, std::vector<int>& current, std::set<int>& forbidden,
                      const std::function<void(const std::vector<int>&)>& emit) {
    emit(current);
    std::vector<int> frontier;
    for (int v : current)
        for (int w : g.neighbors(v))
            if (w > current.front() && !forbidden.count(w) &&
                !std::count(current.begin(), current.end(), w))
                if (!std::count(frontier.begin(), frontier.end(), w)) frontier.push_back(w);
    std::sort(frontier.begin(), frontier.end());
    std::vector<int> banned_here;
    for (int w : frontier) {
        current.push_back(w);
        grow_vertex_sets(g, current, forbidden, emit);
        current.pop_back();
        forbidden.insert(w);
        banned_here.push_back(w);
    }
    for (int w : banned_here) forbidden.erase(w);
}

bool edges_connect(const std::vector<int>& vertices, const std::vector<std::pair<int, int>>& ends) {
    // union-find over the vertex subset
    std::map<int, int> parent;
    for (int v : vertices) parent[v] = v;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    int components = static_cast<int>(vertices.size());
    for (auto [u, v] : ends) {
        int ru = find(u), rv = find(v);
        if (ru != rv) {
            parent[ru] = rv;
            --components;
        }
    }
    return components == 1;
}

// All subsets F of `pool` such that (vertices, F) is connected and spans
// `vertices`. Prunes a branch as soon as the undecided edges can no longer
// reconnect what the decided ones left apart.
void grow_spanning_sets(const std::vector<int>& vertices,
                        const std::vector<int>& pool,
                        const std::vector<std::pair<int, int>>& pool_ends,
                        std::size_t next, std::vector<int>& chosen,
                        std::vector<std::pair<int, int>>& chosen_ends,
                        const std::function<void(const std::vector<int>&)>& emit) {
    std::vector<std::pair<int, int>> reachable = chosen_ends;
    for (std::size_t i = next; i < pool.size(); ++i) reachable.push_back(pool_ends[i]);
    if (!edges_connect(vertices, reachable)) return;
    if (next == pool.size()) {
        if (edges_connect(vertices, chosen_ends)) emit(chosen);
        return;
    }
    chosen.push_back(pool[next]);
    chosen_ends.push_back(pool_ends[next]);
    grow_spanning_sets(vertices, pool, pool_ends, next + 1, chosen, chosen_ends, emit);
    chosen.pop_back();
    chosen_ends.pop_back();
    grow_spanning_sets(vertices, pool, pool_ends, next + 1, chosen, chosen_ends, emit);
}

} // namespace

std::vector<Subgraph> enumerate_connected_subgraphs(const Graph& g, std::size_t cap) {
    if (!g.is_connected())
        fail(ErrorCode::validation_error, "subgraph enumeration expects a connected graph");

    std::vector<Subgraph> out;
    auto push = [&](Subgraph s) {
        if (out.size() >= cap)
            fail(ErrorCode::enumeration_budget_exceeded,
                 "more than " + std::to_string(cap) + " connected subgraphs");
        out.push_back(std::move(s));
    };

    auto handle_vertex_set = [&](const std::vector<int>& vs) {
        std::vector<int> sorted_vs = vs;
        std::sort(sorted_vs.begin(), sorted_vs.end());
        if (sorted_vs.size() == 1) {
            push(Subgraph{sorted_vs, {}});
            return;
        }
        std::vector<int> pool;
        std::vector<std::pair<int, int>> pool_ends;
        for (int e = 1; e <= g.edge_count(); ++e) {
            auto [u, v] = g.edge_ends(e);
            if (std::binary_search(sorted_vs.begin(), sorted_vs.end(), u) &&
                std::binary_search(sorted_vs.begin(), sorted_vs.end(), v)) {
                pool.push_back(e);
                pool_ends.emplace_back(u, v);
            }
        }
        std::vector<int> chosen;
        std::vector<std::pair<int, int>> chosen_ends;
        grow_spanning_sets(sorted_vs, pool, pool_ends, 0, chosen, chosen_ends,
                           [&](const std::vector<int>& es) { push(Subgraph{sorted_vs, es}); });
    };

    for (int seed = 1; seed <= g.vertex_count(); ++seed) {
        std::vector<int> current{seed};
        std::set<int> forbidden;
        grow_vertex_sets(g, current, forbidden, handle_vertex_set);
    }
    std::sort(out.begin(), out.end());
    return out;
}

ExtractedGraph extract_subgraph(const Graph& g, const Subgraph& sub) {
    if (!subgraph_is_wellformed(g, sub))
        fail(ErrorCode::validation_error, "subgraph is not well formed in its parent");
    ExtractedGraph result;
    std::vector<std::string> names;
    for (int v : sub.vertices) {
        names.push_back(g.vertex_name(v));
        result.vertex_ids.push_back(v);
    }
    std::vector<std::pair<std::string, std::string>> pairs;
    for (int e : sub.edges) {
        auto [u, v] = g.edge_ends(e);
        pairs.emplace_back(g.vertex_name(u), g.vertex_name(v));
        result.edge_ids.push_back(e);
    }
    result.graph = build_graph(names, pairs);
    return result;
}

std::pair<int, int> LoopedGraph::project_edge(int e) const {
    if (e < 1 || e > augmented_edge_count())
        fail(ErrorCode::unknown_edge, "edge " + std::to_string(e) + " is not in the augmented graph");
    if (is_loop(e)) return {e - base.edge_count(), 0};
    return {0, e};
}

LoopedGraph loop_augment(const Graph& g) { return LoopedGraph{g}; }

Graph subdivide_edge(const Graph& g, int e) {
    if (e < 1 || e > g.edge_count())
        fail(ErrorCode::unknown_edge, "edge " + std::to_string(e) + " does not exist");
    auto [u, w] = g.edge_ends(e);

    std::string fresh;
    for (int k = 1;; ++k) {
        fresh = "x" + std::to_string(k);
        if (!g.vertex_index(fresh)) break;
    }
    std::vector<std::string> names;
    for (int v = 1; v <= g.vertex_count(); ++v) names.push_back(g.vertex_name(v));
    names.push_back(fresh);

    std::vector<std::pair<std::string, std::string>> pairs;
    for (int k = 1; k <= g.edge_count(); ++k) {
        if (k == e) continue;
        auto [a, b] = g.edge_ends(k);
        pairs.emplace_back(g.vertex_name(a), g.vertex_name(b));
    }
    pairs.emplace_back(g.vertex_name(u), fresh);
    pairs.emplace_back(fresh, g.vertex_name(w));
    return build_graph(names, pairs);
}

namespace {

std::string adjacency_signature(const Graph& g, const std::vector<int>& perm) {
    // perm[i] = new position (0-based) of vertex i+1
    std::vector<std::pair<int, int>> relabeled;
    for (int e = 1; e <= g.edge_count(); ++e) {
        auto [u, v] = g.edge_ends(e);
        int a = perm[static_cast<std::size_t>(u - 1)];
        int b = perm[static_cast<std::size_t>(v - 1)];
        if (a > b) std::swap(a, b);
        relabeled.emplace_back(a, b);
    }
    std::sort(relabeled.begin(), relabeled.end());
    std::ostringstream out;
    out << g.vertex_count() << ";";
    for (auto [a, b] : relabeled) out << a << "-" << b << ",";
    return out.str();
}

} // namespace

std::string canonical_form(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    do {
        std::string sig = adjacency_signature(g, perm);
        if (best.empty() || sig < best) best = sig;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

bool are_isomorphic(const Graph& a, const Graph& b) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    std::vector<int> da, db;
    for (int v = 1; v <= a.vertex_count(); ++v) da.push_back(a.degree(v));
    for (int v = 1; v <= b.vertex_count(); ++v) db.push_back(b.degree(v));
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) return false;
    return canonical_form(a) == canonical_form(b);
}

std::vector<std::vector<int>> automorphisms(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<std::vector<int>> result;
    std::vector<int> image(static_cast<std::size_t>(n), 0);
    std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
    std::function<void(int)> rec = [&](int v) {
        if (v > n) {
            result.push_back(image);
            return;
        }
        for (int w = 1; w <= n; ++w) {
            if (used[static_cast<std::size_t>(w)] || g.degree(w) != g.degree(v)) continue;
            bool ok = true;
            for (int u = 1; u < v && ok; ++u) {
                bool adj_src = g.edge_between(u, v).has_value();
                bool adj_img = g.edge_between(image[static_cast<std::size_t>(u - 1)], w).has_value();
                if (adj_src != adj_img) ok = false;
            }
            if (!ok) continue;
            image[static_cast<std::size_t>(v - 1)] = w;
            used[static_cast<std::size_t>(w)] = 1;
            rec(v + 1);
            used[static_cast<std::size_t>(w)] = 0;
        }
    };
    rec(1);
    std::sort(result.begin(), result.end());
    return result;
}

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::duplicate_vertex: return "DuplicateVertex";
        case ErrorCode::loop_edge: return "LoopEdge";
        case ErrorCode::duplicate_edge: return "DuplicateEdge";
        case ErrorCode::unknown_endpoint: return "UnknownEndpoint";
        case ErrorCode::unknown_vertex: return "UnknownVertex";
        case ErrorCode::unknown_edge: return "UnknownEdge";
        case ErrorCode::empty_graph: return "EmptyGraph";
        case ErrorCode::enumeration_budget_exceeded: return "EnumerationBudgetExceeded";
        case ErrorCode::composition_mismatch: return "CompositionMismatch";
        case ErrorCode::invalid_poset: return "InvalidPoset";
        case ErrorCode::unknown_element: return "UnknownElement";
        case ErrorCode::not_w_homomorphism: return "NotWHomomorphism";
        case ErrorCode::malformed_collection: return "MalformedCollection";
        case ErrorCode::not_continuous_injection: return "NotContinuousInjection";
        case ErrorCode::not_morphism_at_level: return "NotMorphismAtLevel";
        case ErrorCode::invalid_partition: return "InvalidPartition";
        case ErrorCode::length_mismatch: return "LengthMismatch";
        case ErrorCode::parse_error: return "ParseError";
        case ErrorCode::schema_error: return "SchemaError";
        case ErrorCode::validation_error: return "ValidationError";
    }
    return "Error";
}

} // namespace conway
