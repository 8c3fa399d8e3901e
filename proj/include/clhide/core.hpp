// Core domain model: item taxonomy, quantitative transaction database and
// generalized itemsets, plus the utility arithmetic everything else builds on.
// All utility math is exact 64-bit integer; no floating point.
#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace clhide {

using ItemId = std::uint32_t;
using Tid = std::int32_t;  // 1-based transaction identifier
using Quantity = std::int64_t;
using Utility = std::int64_t;

// Sentinel parent id meaning "child of the virtual root".
inline constexpr ItemId kRoot = static_cast<ItemId>(-1);

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Tree (forest under a virtual root) over all items. Leaves are the items
// that may appear in transactions; internal nodes are generalized items.
// Immutable once built; leaf/descendant/ancestor sets are precomputed.
class Taxonomy {
  public:
    // parent[i] = parent item of i, or kRoot for top-level items.
    explicit Taxonomy(std::vector<ItemId> parent);

    std::size_t item_count() const { return parent_.size(); }
    bool valid_item(ItemId v) const { return v < parent_.size(); }

    bool is_leaf(ItemId v) const { return children_[check(v)].empty(); }
    bool is_generalized(ItemId v) const { return !is_leaf(v); }

    std::optional<ItemId> parent(ItemId v) const {
        ItemId p = parent_[check(v)];
        return p == kRoot ? std::nullopt : std::optional<ItemId>(p);
    }
    const std::vector<ItemId>& children(ItemId v) const { return children_[check(v)]; }
    const std::vector<ItemId>& root_children() const { return roots_; }

    // Edge count from the virtual root; >= 1 for every real item.
    int level(ItemId v) const { return level_[check(v)]; }

    // Leaf(g): leaf descendants of g; a leaf is its own leaf set.
    const std::vector<ItemId>& leaves(ItemId v) const { return leaves_[check(v)]; }
    // Desc(g): proper descendants, empty for leaves.
    const std::vector<ItemId>& descendants(ItemId v) const { return desc_[check(v)]; }
    // Proper ancestors, nearest first, excluding the virtual root.
    const std::vector<ItemId>& ancestors(ItemId v) const { return anc_[check(v)]; }

    // True iff a is a proper ancestor of d.
    bool is_ancestor_of(ItemId a, ItemId d) const {
        check(a);
        check(d);
        return a != d && tin_[a] <= tin_[d] && tout_[d] <= tout_[a];
    }
    // True iff a == b or one is an ancestor of the other.
    bool related(ItemId a, ItemId b) const {
        return a == b || is_ancestor_of(a, b) || is_ancestor_of(b, a);
    }

  private:
    ItemId check(ItemId v) const {
        if (v >= parent_.size()) throw Error("unknown item id " + std::to_string(v));
        return v;
    }

    std::vector<ItemId> parent_;
    std::vector<std::vector<ItemId>> children_;
    std::vector<ItemId> roots_;
    std::vector<int> level_;
    std::vector<std::uint32_t> tin_, tout_;  // Euler intervals for subtree tests
    std::vector<std::vector<ItemId>> leaves_, desc_, anc_;
};

struct Entry {
    ItemId item;
    Quantity quantity;  // strictly positive
};

// One transaction: sorted (item, quantity) entries plus a cached transaction
// utility kept in sync by the Database edit operations.
class Transaction {
  public:
    Transaction() = default;
    Transaction(Tid tid, std::vector<Entry> entries, Utility tu)
        : tid_(tid), entries_(std::move(entries)), tu_(tu) {}

    Tid tid() const { return tid_; }
    const std::vector<Entry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    Utility tu() const { return tu_; }

    Quantity quantity_of(ItemId v) const {
        auto it = find(v);
        return it == entries_.end() ? 0 : it->quantity;
    }
    bool contains_leaf(ItemId v) const { return find(v) != entries_.end(); }

  private:
    friend class Database;
    std::vector<Entry>::const_iterator find(ItemId v) const {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                                   [](const Entry& e, ItemId id) { return e.item < id; });
        return (it != entries_.end() && it->item == v) ? it : entries_.end();
    }

    Tid tid_ = 0;
    std::vector<Entry> entries_;
    Utility tu_ = 0;
};

// Quantitative database: ordered transactions, per-leaf unit profits and a
// shared taxonomy. Copies share the (immutable) taxonomy.
class Database {
  public:
    Database() = default;
    Database(std::shared_ptr<const Taxonomy> taxonomy, std::vector<Utility> profit)
        : taxonomy_(std::move(taxonomy)), profit_(std::move(profit)) {}

    const Taxonomy& taxonomy() const { return *taxonomy_; }
    std::shared_ptr<const Taxonomy> taxonomy_ptr() const { return taxonomy_; }

    Utility profit(ItemId leaf) const { return profit_[leaf]; }
    const std::vector<Utility>& profits() const { return profit_; }

    const std::vector<Transaction>& transactions() const { return txns_; }
    std::size_t size() const { return txns_.size(); }
    const Transaction& transaction(std::size_t i) const { return txns_[i]; }

    // Entries must be sorted by item id, duplicate-free, quantities > 0.
    void append_transaction(Tid tid, std::vector<Entry> entries);

    // Deletes the leaf from the transaction; returns the removed quantity.
    Quantity remove_entry(std::size_t txn_index, ItemId leaf);
    // Lowers the quantity by diu; the entry must keep a positive quantity.
    void reduce_entry(std::size_t txn_index, ItemId leaf, Quantity diu);

    Utility total_utility() const;  // sum of transaction utilities

  private:
    std::shared_ptr<const Taxonomy> taxonomy_;
    std::vector<Utility> profit_;  // indexed by ItemId; 0 for generalized items
    std::vector<Transaction> txns_;
};

// Sorted member ids with no ancestor-descendant pair between members.
class Itemset {
  public:
    Itemset() = default;

    // Validates the invariant: sorted, duplicate-free, ancestor-free.
    static Itemset checked(std::vector<ItemId> members, const Taxonomy& tax);
    // Caller guarantees the invariant (e.g. the miner's extension rule).
    static Itemset unchecked(std::vector<ItemId> sorted_members) {
        Itemset p;
        p.members_ = std::move(sorted_members);
        return p;
    }

    const std::vector<ItemId>& members() const { return members_; }
    bool empty() const { return members_.empty(); }
    std::size_t size() const { return members_.size(); }
    bool has_member(ItemId v) const {
        return std::binary_search(members_.begin(), members_.end(), v);
    }

    friend bool operator==(const Itemset& a, const Itemset& b) = default;
    friend std::strong_ordering operator<=>(const Itemset& a, const Itemset& b) {
        return a.members_ <=> b.members_;  // canonical (lexicographic) order
    }

  private:
    std::vector<ItemId> members_;
};

// u(g, T): q*p for a leaf, sum over present leaves for a generalized item;
// 0 when absent.
Utility gen_item_utility(const Database& db, ItemId g, const Transaction& t);

// True iff every member of p occurs in t (a generalized member occurs when
// any of its leaves does). The empty itemset is contained everywhere.
bool itemset_contains(const Taxonomy& tax, const Transaction& t, const Itemset& p);

// u(P, T): sum of member utilities when contained, else 0.
Utility itemset_utility_in(const Database& db, const Itemset& p, const Transaction& t);

// u(P): sum of u(P, T) over the supporting transactions.
Utility itemset_utility(const Database& db, const Itemset& p);

inline Utility transaction_utility(const Transaction& t) { return t.tu(); }

}  // namespace clhide
