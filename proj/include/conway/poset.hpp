#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conway/bits.hpp"
#include "conway/errors.hpp"
#include "conway/morphism.hpp"

namespace conway {

// Finite poset over elements 0..n-1. The relation is kept as one bitset row
// per element: down_set(x) = { y | y <= x }.
class FinitePoset {
public:
    FinitePoset() = default;
    FinitePoset(std::vector<std::string> names, const std::vector<std::pair<int, int>>& leq_pairs);

    static FinitePoset from_rows(std::vector<std::string> names, std::vector<Bits> down_rows);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int x) const { return names_[static_cast<std::size_t>(x)]; }

    bool leq(int a, int b) const { return down_[static_cast<std::size_t>(b)].test(static_cast<std::size_t>(a)); }
    const Bits& down_set(int x) const { return down_[static_cast<std::size_t>(x)]; }
    Bits up_set(int x) const;

    bool is_minimal(int x) const { return down_[static_cast<std::size_t>(x)].count() == 1; }

    // y covers x: x < y with nothing strictly between
    bool covers(int y, int x) const;

private:
    void validate() const;

    std::vector<std::string> names_;
    std::vector<Bits> down_;
};

// The topology whose open sets are exactly the down-closed subsets; the
// down-sets U_x form its basis and are the minimal open neighborhoods.
class PosetTopology {
public:
    explicit PosetTopology(FinitePoset poset) : poset_(std::move(poset)) {}

    const FinitePoset& poset() const { return poset_; }
    int size() const { return poset_.size(); }

    const Bits& basis_open(int x) const { return poset_.down_set(x); }
    bool is_open(const Bits& subset) const;
    bool is_closed(const Bits& subset) const;

    Bits minimal_open_neighborhood(int p) const;
    Bits closure(const Bits& subset) const;

    // Verification mode: every open set as an explicit list. Refused above
    // `max_elements` elements since the count is worst-case 2^n.
    std::vector<Bits> materialize_opens(int max_elements = 20) const;

    // Rebuilds the order from minimal-open-neighborhood containment.
    FinitePoset relation_from_topology() const;

private:
    FinitePoset poset_;
};

// The four mutually exclusive relations a pair of elements can be in,
// decided from memberships in the intersection of their minimal open
// neighborhoods.
enum class PairCase { equal = 1, below = 2, above = 3, incomparable = 4 };

PairCase classify_pair(const PosetTopology& t, int p, int q);

struct PosetMap {
    std::vector<int> assignment; // assignment[x] = image of x, 0-based
};

struct ContinuityVerdict {
    bool continuous = false;
    std::optional<std::pair<int, int>> violation; // p <= q whose images are unordered
};

// Continuity decided through monotonicity.
ContinuityVerdict is_continuous(const FinitePoset& source, const FinitePoset& target,
                                const PosetMap& f);

// Independent route: preimage of every basis open must be open.
bool is_continuous_by_preimages(const FinitePoset& source, const FinitePoset& target,
                                const PosetMap& f);

bool is_injective(const PosetMap& f);

// Injective, monotone and order-reflecting; the inverse on the image is then
// continuous.
bool is_embedding(const FinitePoset& source, const FinitePoset& target, const PosetMap& f);

bool is_homeomorphism(const FinitePoset& source, const FinitePoset& target, const PosetMap& f);

enum class PosetMapMode { any, injective, surjective, embedding, homeomorphism };

struct PosetMapQuery {
    PosetMapMode mode = PosetMapMode::any;
    // When set, maps whose image is a single element are not accepted.
    bool exclude_constant = false;
    std::uint64_t budget = kDefaultSearchBudget;
};

struct PosetMapSearchResult {
    SearchStatus status = SearchStatus::absent;
    std::optional<PosetMap> witness;
    std::uint64_t nodes_explored = 0;
};

// Complete backtracking search for a monotone map of the requested kind.
// Elements are assigned in input order, candidates tried in input order.
PosetMapSearchResult find_poset_map(const FinitePoset& source, const FinitePoset& target,
                                    const PosetMapQuery& query);

} // namespace conway
