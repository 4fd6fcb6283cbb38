#include "conway/morphism.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace conway {

GraphMap identity_map(const Graph& g) {
    std::vector<int> assignment(static_cast<std::size_t>(g.vertex_count()));
    std::iota(assignment.begin(), assignment.end(), 1);
    return GraphMap{g, g, std::move(assignment)};
}

GraphMap constant_map(const Graph& source, const Graph& target, int target_vertex) {
    if (target_vertex < 1 || target_vertex > target.vertex_count())
        fail(ErrorCode::unknown_vertex, "constant image " + std::to_string(target_vertex));
    return GraphMap{source, target,
                    std::vector<int>(static_cast<std::size_t>(source.vertex_count()), target_vertex)};
}

namespace {

void check_totality(const GraphMap& f) {
    if (static_cast<int>(f.assignment.size()) != f.source.vertex_count())
        fail(ErrorCode::validation_error, "assignment does not cover the source vertex set");
    for (int img : f.assignment)
        if (img < 1 || img > f.target.vertex_count())
            fail(ErrorCode::unknown_vertex, "image " + std::to_string(img) + " is not a target vertex");
}

} // namespace

MorphismClass classify_map(const GraphMap& f) {
    check_totality(f);
    MorphismClass c;
    c.is_hom = true;
    c.is_w_hom = true;

    std::set<std::pair<int, int>> edge_image;       // images of non-collapsed edges
    for (int e = 1; e <= f.source.edge_count(); ++e) {
        auto [u, v] = f.source.edge_ends(e);
        int a = f.image_of(u), b = f.image_of(v);
        if (a == b) {
            c.is_hom = false;
            continue;
        }
        if (a > b) std::swap(a, b);
        if (!f.target.edge_between(a, b)) {
            c.is_hom = false;
            c.is_w_hom = false;
        } else {
            edge_image.emplace(a, b);
        }
    }

    std::set<int> image(f.assignment.begin(), f.assignment.end());
    c.is_injective = static_cast<int>(image.size()) == f.source.vertex_count();
    c.is_surjective = static_cast<int>(image.size()) == f.target.vertex_count();

    std::set<std::pair<int, int>> target_edges;
    for (int e = 1; e <= f.target.edge_count(); ++e) target_edges.insert(f.target.edge_ends(e));

    c.is_fibered = c.is_hom && c.is_surjective && edge_image == target_edges;
    c.is_w_fibered = c.is_w_hom && c.is_surjective && edge_image == target_edges;
    return c;
}

namespace {

struct SearchState {
    const Graph& source;
    const Graph& target;
    const MorphismConstraints& constraints;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    std::vector<int> assignment;      // 0 = unassigned
    std::vector<int> use_count;       // per target vertex
    std::vector<int> order;           // source vertices, descending degree
    bool out_of_budget = false;

    // visit returns true to stop (first witness) or false to keep enumerating
    std::function<bool(const std::vector<int>&)> visit;

    bool consistent(int v, int w) const {
        if (constraints.require_injective && use_count[static_cast<std::size_t>(w - 1)] > 0)
            return false;
        for (int n : source.neighbors(v)) {
            int img = assignment[static_cast<std::size_t>(n - 1)];
            if (img == 0) continue;
            if (img == w) {
                if (constraints.level == MorphismLevel::hom) return false;
                continue;
            }
            if (!target.edge_between(img, w)) return false;
        }
        return true;
    }

    bool surjectivity_feasible(std::size_t depth) const {
        if (!constraints.require_surjective) return true;
        int uncovered = 0;
        for (int cnt : use_count)
            if (cnt == 0) ++uncovered;
        return uncovered <= static_cast<int>(order.size() - depth);
    }

    // returns true when the caller asked to stop
    bool expand(std::size_t depth) {
        if (++nodes > budget) {
            out_of_budget = true;
            return true;
        }
        if (depth == order.size()) {
            if (constraints.require_surjective)
                for (int cnt : use_count)
                    if (cnt == 0) return false;
            return visit(assignment);
        }
        if (!surjectivity_feasible(depth)) return false;
        int v = order[depth];
        auto pinned = constraints.pinned.find(v);
        for (int w = 1; w <= target.vertex_count(); ++w) {
            if (pinned != constraints.pinned.end() && pinned->second != w) continue;
            if (!consistent(v, w)) continue;
            assignment[static_cast<std::size_t>(v - 1)] = w;
            ++use_count[static_cast<std::size_t>(w - 1)];
            bool stop = expand(depth + 1);
            --use_count[static_cast<std::size_t>(w - 1)];
            assignment[static_cast<std::size_t>(v - 1)] = 0;
            if (stop) return true;
        }
        return false;
    }
};

std::vector<int> search_order(const Graph& g) {
    std::vector<int> order(static_cast<std::size_t>(g.vertex_count()));
    std::iota(order.begin(), order.end(), 1);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return g.degree(a) > g.degree(b); });
    return order;
}

void validate_pins(const Graph& source, const Graph& target, const MorphismConstraints& c) {
    for (auto [v, w] : c.pinned) {
        if (v < 1 || v > source.vertex_count())
            fail(ErrorCode::unknown_vertex, "pinned source vertex " + std::to_string(v));
        if (w < 1 || w > target.vertex_count())
            fail(ErrorCode::unknown_vertex, "pinned target vertex " + std::to_string(w));
    }
}

} // namespace

MorphismSearchResult find_morphism(const Graph& source, const Graph& target,
                                   const MorphismConstraints& constraints,
                                   std::uint64_t budget) {
    validate_pins(source, target, constraints);
    MorphismSearchResult result;
    SearchState state{source, target, constraints, budget};
    state.assignment.assign(static_cast<std::size_t>(source.vertex_count()), 0);
    state.use_count.assign(static_cast<std::size_t>(target.vertex_count()), 0);
    state.order = search_order(source);
    state.visit = [&](const std::vector<int>& assignment) {
        if (constraints.exclude_constant) {
            std::set<int> image(assignment.begin(), assignment.end());
            if (image.size() < 2) return false;
        }
        GraphMap candidate{source, target, assignment};
        if (constraints.require_fibered) {
            MorphismClass cls = classify_map(candidate);
            bool ok = constraints.level == MorphismLevel::hom ? cls.is_fibered : cls.is_w_fibered;
            if (!ok) return false;
        }
        result.witness = std::move(candidate);
        return true;
    };
    state.expand(0);
    result.nodes_explored = state.nodes;
    if (state.out_of_budget && !result.witness) {
        result.status = SearchStatus::budget_exceeded;
    } else if (result.witness) {
        result.status = SearchStatus::found;
    } else {
        result.status = SearchStatus::absent;
    }
    return result;
}

bool for_each_morphism(const Graph& source, const Graph& target, MorphismLevel level,
                       const std::function<void(const GraphMap&)>& visit,
                       std::uint64_t budget) {
    MorphismConstraints constraints;
    constraints.level = level;
    SearchState state{source, target, constraints, budget};
    state.assignment.assign(static_cast<std::size_t>(source.vertex_count()), 0);
    state.use_count.assign(static_cast<std::size_t>(target.vertex_count()), 0);
    state.order = search_order(source);
    state.visit = [&](const std::vector<int>& assignment) {
        visit(GraphMap{source, target, assignment});
        return false;
    };
    state.expand(0);
    return !state.out_of_budget;
}

GraphMap compose(const GraphMap& f, const GraphMap& g) {
    if (!(f.target == g.source))
        fail(ErrorCode::composition_mismatch, "inner target differs from outer source");
    std::vector<int> assignment;
    assignment.reserve(f.assignment.size());
    for (int img : f.assignment) assignment.push_back(g.image_of(img));
    return GraphMap{f.source, g.target, std::move(assignment)};
}

std::map<int, std::vector<int>> fibers(const GraphMap& q) {
    check_totality(q);
    std::map<int, std::vector<int>> result;
    for (int w = 1; w <= q.target.vertex_count(); ++w) result[w];
    for (int v = 1; v <= q.source.vertex_count(); ++v)
        result[q.image_of(v)].push_back(v);
    return result;
}

const char* search_status_name(SearchStatus status) {
    switch (status) {
        case SearchStatus::found: return "exists";
        case SearchStatus::absent: return "proven-absent";
        case SearchStatus::budget_exceeded: return "budget-exceeded";
    }
    return "?";
}

} // namespace conway
