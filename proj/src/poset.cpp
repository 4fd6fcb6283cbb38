#include "conway/poset.hpp"

#include <algorithm>
#include <set>

namespace conway {

FinitePoset::FinitePoset(std::vector<std::string> names,
                         const std::vector<std::pair<int, int>>& leq_pairs)
    : names_(std::move(names)) {
    const std::size_t n = names_.size();
    down_.assign(n, Bits(n));
    for (std::size_t x = 0; x < n; ++x) down_[x].set(x);
    for (auto [a, b] : leq_pairs) {
        if (a < 0 || b < 0 || a >= static_cast<int>(n) || b >= static_cast<int>(n))
            fail(ErrorCode::unknown_element, "relation references element out of range");
        down_[static_cast<std::size_t>(b)].set(static_cast<std::size_t>(a));
    }
    // transitive closure
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t a = 0; a < n; ++a)
                if (a != b && down_[b].test(a) && !down_[a].is_subset_of(down_[b])) {
                    down_[b] |= down_[a];
                    changed = true;
                }
    }
    validate();
}

FinitePoset FinitePoset::from_rows(std::vector<std::string> names, std::vector<Bits> down_rows) {
    FinitePoset p;
    p.names_ = std::move(names);
    p.down_ = std::move(down_rows);
    p.validate();
    return p;
}

void FinitePoset::validate() const {
    const int n = size();
    for (int x = 0; x < n; ++x)
        if (!leq(x, x)) fail(ErrorCode::invalid_poset, "relation is not reflexive");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a != b && leq(a, b) && leq(b, a))
                fail(ErrorCode::invalid_poset, "relation is not antisymmetric");
            if (leq(a, b) && !down_set(a).is_subset_of(down_set(b)))
                fail(ErrorCode::invalid_poset, "relation is not transitive");
        }
}

Bits FinitePoset::up_set(int x) const {
    Bits up(static_cast<std::size_t>(size()));
    for (int y = 0; y < size(); ++y)
        if (leq(x, y)) up.set(static_cast<std::size_t>(y));
    return up;
}

bool FinitePoset::covers(int y, int x) const {
    if (x == y || !leq(x, y)) return false;
    for (int z = 0; z < size(); ++z)
        if (z != x && z != y && leq(x, z) && leq(z, y)) return false;
    return true;
}

bool PosetTopology::is_open(const Bits& subset) const {
    for (int x = 0; x < size(); ++x)
        if (subset.test(static_cast<std::size_t>(x)) &&
            !poset_.down_set(x).is_subset_of(subset))
            return false;
    return true;
}

bool PosetTopology::is_closed(const Bits& subset) const {
    Bits complement(subset.size());
    for (std::size_t x = 0; x < subset.size(); ++x)
        if (!subset.test(x)) complement.set(x);
    return is_open(complement);
}

Bits PosetTopology::minimal_open_neighborhood(int p) const {
    if (p < 0 || p >= size())
        fail(ErrorCode::unknown_element, "element " + std::to_string(p) + " out of range");
    return poset_.down_set(p);
}

Bits PosetTopology::closure(const Bits& subset) const {
    Bits result(static_cast<std::size_t>(size()));
    for (int x = 0; x < size(); ++x)
        if (subset.test(static_cast<std::size_t>(x))) result |= poset_.up_set(x);
    return result;
}

std::vector<Bits> PosetTopology::materialize_opens(int max_elements) const {
    const int n = size();
    if (n > max_elements)
        fail(ErrorCode::enumeration_budget_exceeded,
             "refusing to materialize the topology of " + std::to_string(n) + " elements");
    std::vector<Bits> opens;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
        Bits subset(static_cast<std::size_t>(n));
        for (int x = 0; x < n; ++x)
            if ((mask >> x) & 1) subset.set(static_cast<std::size_t>(x));
        if (is_open(subset)) opens.push_back(std::move(subset));
    }
    return opens;
}

FinitePoset PosetTopology::relation_from_topology() const {
    const std::size_t n = static_cast<std::size_t>(size());
    std::vector<Bits> rows(n, Bits(n));
    for (int b = 0; b < size(); ++b)
        for (int a = 0; a < size(); ++a)
            if (minimal_open_neighborhood(a).is_subset_of(minimal_open_neighborhood(b)))
                rows[static_cast<std::size_t>(b)].set(static_cast<std::size_t>(a));
    std::vector<std::string> names;
    for (int x = 0; x < size(); ++x) names.push_back(poset_.name(x));
    return FinitePoset::from_rows(std::move(names), std::move(rows));
}

PairCase classify_pair(const PosetTopology& t, int p, int q) {
    if (p < 0 || q < 0 || p >= t.size() || q >= t.size())
        fail(ErrorCode::unknown_element, "pair out of range");
    Bits meet = t.minimal_open_neighborhood(p);
    meet &= t.minimal_open_neighborhood(q);
    bool p_in = meet.test(static_cast<std::size_t>(p));
    bool q_in = meet.test(static_cast<std::size_t>(q));
    if (p_in && q_in) return PairCase::equal;
    if (p_in) return PairCase::below;
    if (q_in) return PairCase::above;
    return PairCase::incomparable;
}

namespace {

void check_poset_map(const FinitePoset& source, const FinitePoset& target, const PosetMap& f) {
    if (static_cast<int>(f.assignment.size()) != source.size())
        fail(ErrorCode::validation_error, "map does not cover the source poset");
    for (int img : f.assignment)
        if (img < 0 || img >= target.size())
            fail(ErrorCode::unknown_element, "image element out of range");
}

} // namespace

ContinuityVerdict is_continuous(const FinitePoset& source, const FinitePoset& target,
                                const PosetMap& f) {
    check_poset_map(source, target, f);
    for (int p = 0; p < source.size(); ++p)
        for (int q = 0; q < source.size(); ++q)
            if (source.leq(p, q) &&
                !target.leq(f.assignment[static_cast<std::size_t>(p)],
                            f.assignment[static_cast<std::size_t>(q)]))
                return ContinuityVerdict{false, std::make_pair(p, q)};
    return ContinuityVerdict{true, std::nullopt};
}

bool is_continuous_by_preimages(const FinitePoset& source, const FinitePoset& target,
                                const PosetMap& f) {
    check_poset_map(source, target, f);
    PosetTopology source_topology(source);
    for (int x = 0; x < target.size(); ++x) {
        const Bits& open = target.down_set(x);
        Bits preimage(static_cast<std::size_t>(source.size()));
        for (int p = 0; p < source.size(); ++p)
            if (open.test(static_cast<std::size_t>(f.assignment[static_cast<std::size_t>(p)])))
                preimage.set(static_cast<std::size_t>(p));
        if (!source_topology.is_open(preimage)) return false;
    }
    return true;
}

bool is_injective(const PosetMap& f) {
    std::set<int> image(f.assignment.begin(), f.assignment.end());
    return image.size() == f.assignment.size();
}

bool is_embedding(const FinitePoset& source, const FinitePoset& target, const PosetMap& f) {
    check_poset_map(source, target, f);
    if (!is_injective(f)) return false;
    if (!is_continuous(source, target, f).continuous) return false;
    for (int p = 0; p < source.size(); ++p)
        for (int q = 0; q < source.size(); ++q)
            if (target.leq(f.assignment[static_cast<std::size_t>(p)],
                           f.assignment[static_cast<std::size_t>(q)]) &&
                !source.leq(p, q))
                return false;
    return true;
}

bool is_homeomorphism(const FinitePoset& source, const FinitePoset& target, const PosetMap& f) {
    check_poset_map(source, target, f);
    if (source.size() != target.size() || !is_injective(f)) return false;
    if (!is_continuous(source, target, f).continuous) return false;
    std::vector<int> inverse(static_cast<std::size_t>(target.size()));
    for (int p = 0; p < source.size(); ++p)
        inverse[static_cast<std::size_t>(f.assignment[static_cast<std::size_t>(p)])] = p;
    return is_continuous(target, source, PosetMap{inverse}).continuous;
}

namespace {

struct PosetSearch {
    const FinitePoset& source;
    const FinitePoset& target;
    const PosetMapQuery& query;
    std::vector<int> assignment;
    std::vector<int> use_count;
    std::uint64_t nodes = 0;
    bool out_of_budget = false;
    std::optional<PosetMap> witness;

    bool consistent(int p, int w) const {
        bool needs_injection = query.mode == PosetMapMode::injective ||
                               query.mode == PosetMapMode::embedding ||
                               query.mode == PosetMapMode::homeomorphism;
        if (needs_injection && use_count[static_cast<std::size_t>(w)] > 0) return false;
        bool reflect = query.mode == PosetMapMode::embedding ||
                       query.mode == PosetMapMode::homeomorphism;
        for (int q = 0; q < p; ++q) {
            int img = assignment[static_cast<std::size_t>(q)];
            if (source.leq(q, p) && !target.leq(img, w)) return false;
            if (source.leq(p, q) && !target.leq(w, img)) return false;
            if (reflect) {
                if (target.leq(img, w) && !source.leq(q, p)) return false;
                if (target.leq(w, img) && !source.leq(p, q)) return false;
            }
        }
        return true;
    }

    bool feasible(int depth) const {
        if (query.mode == PosetMapMode::surjective || query.mode == PosetMapMode::homeomorphism) {
            int uncovered = 0;
            for (int cnt : use_count)
                if (cnt == 0) ++uncovered;
            if (uncovered > source.size() - depth) return false;
        }
        return true;
    }

    bool expand(int depth) {
        if (++nodes > query.budget) {
            out_of_budget = true;
            return true;
        }
        if (depth == source.size()) {
            if (query.mode == PosetMapMode::surjective || query.mode == PosetMapMode::homeomorphism)
                for (int cnt : use_count)
                    if (cnt == 0) return false;
            if (query.exclude_constant) {
                std::set<int> image(assignment.begin(), assignment.end());
                if (image.size() < 2) return false;
            }
            witness = PosetMap{assignment};
            return true;
        }
        if (!feasible(depth)) return false;
        for (int w = 0; w < target.size(); ++w) {
            if (!consistent(depth, w)) continue;
            assignment[static_cast<std::size_t>(depth)] = w;
            ++use_count[static_cast<std::size_t>(w)];
            bool stop = expand(depth + 1);
            --use_count[static_cast<std::size_t>(w)];
            if (stop) return true;
        }
        return false;
    }
};

} // namespace

PosetMapSearchResult find_poset_map(const FinitePoset& source, const FinitePoset& target,
                                    const PosetMapQuery& query) {
    PosetMapSearchResult result;
    bool needs_injection = query.mode == PosetMapMode::injective ||
                           query.mode == PosetMapMode::embedding ||
                           query.mode == PosetMapMode::homeomorphism;
    if (needs_injection && source.size() > target.size()) return result; // absent by cardinality
    if ((query.mode == PosetMapMode::surjective || query.mode == PosetMapMode::homeomorphism) &&
        source.size() < target.size())
        return result;

    PosetSearch search{source, target, query};
    search.assignment.assign(static_cast<std::size_t>(source.size()), 0);
    search.use_count.assign(static_cast<std::size_t>(target.size()), 0);
    search.expand(0);
    result.nodes_explored = search.nodes;
    if (search.witness) {
        result.status = SearchStatus::found;
        result.witness = std::move(search.witness);
    } else if (search.out_of_budget) {
        result.status = SearchStatus::budget_exceeded;
    } else {
        result.status = SearchStatus::absent;
    }
    return result;
}

} // namespace conway
