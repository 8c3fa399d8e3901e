#include "clhide/core.hpp"

#include <functional>

namespace clhide {

Taxonomy::Taxonomy(std::vector<ItemId> parent) : parent_(std::move(parent)) {
    const std::size_t n = parent_.size();
    children_.assign(n, {});
    for (ItemId v = 0; v < n; ++v) {
        ItemId p = parent_[v];
        if (p == kRoot) {
            roots_.push_back(v);
        } else if (p >= n) {
            throw Error("taxonomy parent id out of range");
        } else if (p == v) {
            throw Error("item is its own parent");
        } else {
            children_[p].push_back(v);
        }
    }

    // Iterative DFS from the virtual root: levels, Euler intervals, cycle check.
    level_.assign(n, 0);
    tin_.assign(n, 0);
    tout_.assign(n, 0);
    std::uint32_t clock = 0;
    std::size_t visited = 0;
    std::vector<std::pair<ItemId, std::size_t>> stack;  // (node, next child index)
    for (ItemId r : roots_) {
        level_[r] = 1;
        tin_[r] = ++clock;
        ++visited;
        stack.emplace_back(r, 0);
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            if (next < children_[v].size()) {
                ItemId c = children_[v][next++];
                level_[c] = level_[v] + 1;
                tin_[c] = ++clock;
                ++visited;
                stack.emplace_back(c, 0);
            } else {
                tout_[v] = clock;
                stack.pop_back();
            }
        }
    }
    if (visited != n) throw Error("taxonomy contains a cycle");

    // Leaf, descendant and ancestor sets (sorted by id).
    leaves_.assign(n, {});
    desc_.assign(n, {});
    anc_.assign(n, {});
    std::function<void(ItemId)> fill = [&](ItemId v) {
        if (children_[v].empty()) {
            leaves_[v].push_back(v);
            return;
        }
        for (ItemId c : children_[v]) {
            fill(c);
            leaves_[v].insert(leaves_[v].end(), leaves_[c].begin(), leaves_[c].end());
            desc_[v].push_back(c);
            desc_[v].insert(desc_[v].end(), desc_[c].begin(), desc_[c].end());
        }
        std::sort(leaves_[v].begin(), leaves_[v].end());
        std::sort(desc_[v].begin(), desc_[v].end());
    };
    for (ItemId r : roots_) fill(r);
    for (ItemId v = 0; v < n; ++v) {
        ItemId p = parent_[v];
        while (p != kRoot) {
            anc_[v].push_back(p);
            p = parent_[p];
        }
    }
}

void Database::append_transaction(Tid tid, std::vector<Entry> entries) {
    if (!txns_.empty() && tid <= txns_.back().tid())
        throw Error("transaction tids must be strictly increasing");
    Utility tu = 0;
    ItemId prev = kRoot;
    for (const Entry& e : entries) {
        if (!taxonomy_->valid_item(e.item) || !taxonomy_->is_leaf(e.item))
            throw Error("transaction item is not a leaf of the taxonomy");
        if (prev != kRoot && e.item <= prev) throw Error("transaction entries not sorted/unique");
        if (e.quantity <= 0) throw Error("non-positive quantity");
        prev = e.item;
        tu += e.quantity * profit_[e.item];
    }
    txns_.emplace_back(tid, std::move(entries), tu);
}

Quantity Database::remove_entry(std::size_t txn_index, ItemId leaf) {
    Transaction& t = txns_.at(txn_index);
    auto it = t.find(leaf);
    if (it == t.entries_.cend()) throw Error("remove_entry: item not present");
    Quantity q = it->quantity;
    t.tu_ -= q * profit_[leaf];
    t.entries_.erase(t.entries_.begin() + (it - t.entries_.cbegin()));
    return q;
}

void Database::reduce_entry(std::size_t txn_index, ItemId leaf, Quantity diu) {
    Transaction& t = txns_.at(txn_index);
    auto it = t.find(leaf);
    if (it == t.entries_.cend()) throw Error("reduce_entry: item not present");
    if (diu <= 0 || diu >= it->quantity)
        throw Error("reduce_entry: delta must leave a positive quantity");
    auto mut = t.entries_.begin() + (it - t.entries_.cbegin());
    mut->quantity -= diu;
    t.tu_ -= diu * profit_[leaf];
}

Utility Database::total_utility() const {
    Utility sum = 0;
    for (const Transaction& t : txns_) sum += t.tu();
    return sum;
}

Itemset Itemset::checked(std::vector<ItemId> members, const Taxonomy& tax) {
    std::sort(members.begin(), members.end());
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (!tax.valid_item(members[i])) throw Error("itemset member is not a taxonomy item");
        if (i > 0 && members[i] == members[i - 1]) throw Error("duplicate itemset member");
    }
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
            if (tax.related(members[i], members[j]))
                throw Error("itemset members are in an ancestor-descendant relation");
    Itemset p;
    p.members_ = std::move(members);
    return p;
}

Utility gen_item_utility(const Database& db, ItemId g, const Transaction& t) {
    const Taxonomy& tax = db.taxonomy();
    if (tax.is_leaf(g)) return t.quantity_of(g) * db.profit(g);
    Utility sum = 0;
    for (const Entry& e : t.entries())
        if (tax.is_ancestor_of(g, e.item)) sum += e.quantity * db.profit(e.item);
    return sum;
}

bool itemset_contains(const Taxonomy& tax, const Transaction& t, const Itemset& p) {
    for (ItemId g : p.members()) {
        if (tax.is_leaf(g)) {
            if (!t.contains_leaf(g)) return false;
        } else {
            bool any = false;
            for (const Entry& e : t.entries())
                if (tax.is_ancestor_of(g, e.item)) {
                    any = true;
                    break;
                }
            if (!any) return false;
        }
    }
    return true;
}

Utility itemset_utility_in(const Database& db, const Itemset& p, const Transaction& t) {
    if (!itemset_contains(db.taxonomy(), t, p)) return 0;
    Utility sum = 0;
    for (ItemId g : p.members()) sum += gen_item_utility(db, g, t);
    return sum;
}

Utility itemset_utility(const Database& db, const Itemset& p) {
    Utility sum = 0;
    for (const Transaction& t : db.transactions()) sum += itemset_utility_in(db, p, t);
    return sum;
}

}  // namespace clhide
