#include "clhide/miner.hpp"

#include <numeric>

namespace clhide {

namespace {

struct TidUtil {
    std::int32_t txn;  // index into db.transactions()
    Utility util;      // u(P, T) restricted to the current prefix
};

using List = std::vector<TidUtil>;

struct Search {
    const Database& db;
    const Taxonomy& tax;
    Utility minutil;
    std::vector<List> item_lists;  // per item: transactions containing it + u(g,T)
    std::vector<Utility> tu;       // per transaction index
    MiningResult result;
    std::vector<ItemId> members;

    explicit Search(const Database& db_, Utility minutil_)
        : db(db_), tax(db_.taxonomy()), minutil(minutil_) {
        const std::size_t n = tax.item_count();
        item_lists.resize(n);
        tu.reserve(db.size());
        for (std::int32_t ti = 0; ti < static_cast<std::int32_t>(db.size()); ++ti) {
            const Transaction& t = db.transaction(ti);
            tu.push_back(t.tu());
            for (const Entry& e : t.entries()) {
                Utility u = e.quantity * db.profit(e.item);
                item_lists[e.item].push_back({ti, u});
                // A generalized item occurs wherever any of its leaves does;
                // accumulate the leaf utility into every ancestor's list.
                for (ItemId a : tax.ancestors(e.item)) {
                    List& list = item_lists[a];
                    if (!list.empty() && list.back().txn == ti)
                        list.back().util += u;
                    else
                        list.push_back({ti, u});
                }
            }
        }
    }

    static Utility utility_of(const List& list) {
        Utility sum = 0;
        for (const TidUtil& x : list) sum += x.util;
        return sum;
    }
    Utility gwu_of(const List& list) const {
        Utility sum = 0;
        for (const TidUtil& x : list) sum += tu[x.txn];
        return sum;
    }

    // Merge join; the joined utility is the prefix utility plus the item's.
    static List intersect(const List& prefix, const List& item) {
        List out;
        auto a = prefix.begin();
        auto b = item.begin();
        while (a != prefix.end() && b != item.end()) {
            if (a->txn < b->txn)
                ++a;
            else if (b->txn < a->txn)
                ++b;
            else {
                out.push_back({a->txn, a->util + b->util});
                ++a;
                ++b;
            }
        }
        return out;
    }

    void expand(const List* prefix_list, const std::vector<ItemId>& candidates) {
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            ItemId x = candidates[i];
            ++result.stats.candidates;
            List list = prefix_list ? intersect(*prefix_list, item_lists[x]) : item_lists[x];
            if (list.empty()) continue;
            if (gwu_of(list) < minutil) {
                ++result.stats.pruned;
                continue;
            }
            members.push_back(x);
            if (Utility u = utility_of(list); u >= minutil) {
                std::vector<ItemId> sorted = members;  // members follow the DFS order
                std::sort(sorted.begin(), sorted.end());
                result.itemsets.emplace(Itemset::unchecked(std::move(sorted)), u);
            }
            std::vector<ItemId> next;
            for (std::size_t j = i + 1; j < candidates.size(); ++j)
                if (!tax.related(x, candidates[j])) next.push_back(candidates[j]);
            if (!next.empty()) expand(&list, next);
            members.pop_back();
        }
    }
};

}  // namespace

MiningResult mine_clhuis(const Database& db, Utility minutil) {
    if (minutil < 0) throw Error("minutil must be non-negative");
    Search search(db, minutil);
    search.result.minutil = minutil;

    // Fixed extension order: by level then id, so every ancestor precedes
    // its descendants and each valid itemset is generated exactly once.
    std::vector<ItemId> order(db.taxonomy().item_count());
    std::iota(order.begin(), order.end(), 0);
    const Taxonomy& tax = db.taxonomy();
    std::sort(order.begin(), order.end(), [&](ItemId a, ItemId b) {
        return std::pair(tax.level(a), a) < std::pair(tax.level(b), b);
    });

    search.expand(nullptr, order);
    return std::move(search.result);
}

Utility gwu(const Database& db, const Itemset& p) {
    if (p.empty()) throw Error("gwu of the empty itemset is undefined");
    Utility sum = 0;
    for (const Transaction& t : db.transactions())
        if (itemset_contains(db.taxonomy(), t, p)) sum += t.tu();
    return sum;
}

}  // namespace clhide
