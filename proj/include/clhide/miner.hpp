// Cross-level high-utility itemset miner: depth-first extension over a fixed
// item order (ancestors before descendants), eclat-style tid-list
// intersections and GWU pruning. Complete and sound by construction: emits
// exactly the supported ancestor-free itemsets with utility >= minutil.
#pragma once

#include <cstdint>
#include <map>

#include "clhide/core.hpp"

namespace clhide {

struct MiningStats {
    std::uint64_t candidates = 0;  // search nodes evaluated
    std::uint64_t pruned = 0;      // subtrees cut by the GWU bound
};

struct MiningResult {
    std::map<Itemset, Utility> itemsets;  // canonical (lexicographic) order
    Utility minutil = 0;
    MiningStats stats;

    bool contains(const Itemset& p) const { return itemsets.count(p) != 0; }
    Utility total_utility() const {
        Utility sum = 0;
        for (const auto& [p, u] : itemsets) sum += u;
        return sum;
    }
};

MiningResult mine_clhuis(const Database& db, Utility minutil);

// Generalized-weighted utility: sum of TU over the transactions containing p.
// Anti-monotone upper bound on the utility of p and of all its extensions.
Utility gwu(const Database& db, const Itemset& p);

}  // namespace clhide
