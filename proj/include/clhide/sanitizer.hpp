// Hiding engine: pushes every sensitive itemset's utility below minutil by
// deleting or reducing leaf entries of a chosen victim item, walking the
// sensitive transactions in weight order. Three victim-selection strategies
// share one engine. Edits never increase any utility, so no new high-utility
// itemset can appear in the sanitized database.
#pragma once

#include <functional>
#include <map>
#include <set>
#include <vector>

#include "clhide/core.hpp"
#include "clhide/gidic.hpp"

namespace clhide {

enum class Strategy {
    MinRF,     // victim: member with minimum RGISU; leaves ascending by RGISU
    MaxRF,     // victim: member with maximum RGISU; leaves descending by RGISU
    BestNSCF,  // victim: best NSC/SC trade-off; leaves ascending by RGISU
};

const char* strategy_name(Strategy s);
Strategy strategy_from_name(const std::string& name);
inline bool ascending_leaf_order(Strategy s) { return s != Strategy::MaxRF; }

struct Edit {
    enum Kind { Delete, Reduce };
    Tid tid;
    ItemId item;   // always a leaf
    Kind kind;
    Quantity delta;  // removed quantity (full quantity for deletes)
};

struct EditLog {
    std::vector<Edit> edits;
    std::set<Tid> modified;  // backs TMR; a tid counts once
};

struct HidingTask {
    Itemset itemset;  // one sensitive itemset
    ItemId victim;
};

ItemId select_victim(const Itemset& s, const GIDic& dic, Strategy strategy);

// Victims chosen per strategy, tasks sorted by victim RGISU descending
// (stable, so equal keys keep the input order).
std::vector<HidingTask> order_tasks(const std::vector<Itemset>& sclhuis, const GIDic& dic,
                                    Strategy strategy);

// Bound to one mutable database copy. Maintains the live residual utility of
// every sensitive itemset across tasks, so cross-itemset side effects of
// earlier edits are already reflected when a later task starts.
class HidingEngine {
  public:
    // Called after every edit; tests use it to recheck the live utilities
    // against a from-scratch recomputation.
    using ConsistencyHook = std::function<void(const Database&, const std::map<Itemset, Utility>&)>;

    HidingEngine(Database& db, Utility minutil, std::vector<Itemset> sclhuis, const GIDic& dic,
                 Strategy strategy);

    // Runs one task to completion; returns the number of edits applied.
    // A task whose live residual is already below minutil applies none.
    std::size_t hide_one(const HidingTask& task);

    const std::map<Itemset, Utility>& live_utilities() const { return live_; }
    const EditLog& log() const { return log_; }
    EditLog take_log() { return std::move(log_); }
    void set_consistency_hook(ConsistencyHook hook) { hook_ = std::move(hook); }

  private:
    void apply_delete(std::size_t txn_index, ItemId leaf);
    void apply_reduce(std::size_t txn_index, ItemId leaf, Quantity diu);
    // Utility each sensitive itemset loses when `removed` utility of `leaf`
    // leaves the transaction; full_removal marks a delete.
    void propagate(const Transaction& t, ItemId leaf, Utility removed, bool full_removal);

    Database& db_;
    Utility minutil_;
    std::vector<Itemset> sclhuis_;
    const GIDic& dic_;
    Strategy strategy_;
    std::map<Itemset, Utility> live_;
    std::vector<std::size_t> txn_index_;  // st_order position -> transaction index
    EditLog log_;
    ConsistencyHook hook_;
};

struct SanitizeOutcome {
    Database sanitized;
    EditLog log;
    GIDic gidic;
    std::vector<std::pair<Itemset, Utility>> residuals;  // per sensitive itemset, in D'
};

// Validates the inputs (sensitive itemsets must be high-utility members of
// clhuis; minutil >= 1 when there is anything to hide), then hides every
// sensitive itemset on a private copy of the database.
SanitizeOutcome sanitize(const Database& db, Utility minutil, const std::vector<Itemset>& sclhuis,
                         const std::vector<Itemset>& clhuis, Strategy strategy,
                         HidingEngine::ConsistencyHook hook = {});

}  // namespace clhide
