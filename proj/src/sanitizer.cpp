#include "clhide/sanitizer.hpp"

#include <unordered_map>

namespace clhide {

const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::MinRF: return "min-rf";
        case Strategy::MaxRF: return "max-rf";
        case Strategy::BestNSCF: return "best-nscf";
    }
    return "?";
}

Strategy strategy_from_name(const std::string& name) {
    if (name == "min-rf") return Strategy::MinRF;
    if (name == "max-rf") return Strategy::MaxRF;
    if (name == "best-nscf") return Strategy::BestNSCF;
    throw Error("unknown strategy '" + name + "'");
}

ItemId select_victim(const Itemset& s, const GIDic& dic, Strategy strategy) {
    if (s.empty()) throw Error("cannot select a victim from an empty itemset");
    const std::vector<ItemId>& m = s.members();

    if (strategy == Strategy::MinRF || strategy == Strategy::MaxRF) {
        ItemId best = m[0];
        for (ItemId v : m) {
            Utility r = dic.entry(v).rgisu, rb = dic.entry(best).rgisu;
            if (strategy == Strategy::MinRF ? r < rb : r > rb) best = v;
        }
        return best;
    }

    // Best-NSCF: prefer an item attaining both the minimum NSC and the
    // maximum SC; next, minimum NSC and minimum RGISU; finally the item
    // minimizing (NSC, RGISU, id).
    std::int64_t min_nsc = dic.entry(m[0]).nsc, max_sc = dic.entry(m[0]).sc;
    Utility min_rgisu = dic.entry(m[0]).rgisu;
    for (ItemId v : m) {
        min_nsc = std::min(min_nsc, dic.entry(v).nsc);
        max_sc = std::max(max_sc, dic.entry(v).sc);
        min_rgisu = std::min(min_rgisu, dic.entry(v).rgisu);
    }
    for (ItemId v : m)
        if (dic.entry(v).nsc == min_nsc && dic.entry(v).sc == max_sc) return v;
    for (ItemId v : m)
        if (dic.entry(v).nsc == min_nsc && dic.entry(v).rgisu == min_rgisu) return v;
    ItemId best = m[0];
    for (ItemId v : m) {
        auto key = [&](ItemId x) {
            return std::tuple(dic.entry(x).nsc, dic.entry(x).rgisu, x);
        };
        if (key(v) < key(best)) best = v;
    }
    return best;
}

std::vector<HidingTask> order_tasks(const std::vector<Itemset>& sclhuis, const GIDic& dic,
                                    Strategy strategy) {
    std::vector<HidingTask> tasks;
    tasks.reserve(sclhuis.size());
    for (const Itemset& s : sclhuis) tasks.push_back({s, select_victim(s, dic, strategy)});
    std::stable_sort(tasks.begin(), tasks.end(), [&](const HidingTask& a, const HidingTask& b) {
        return dic.entry(a.victim).rgisu > dic.entry(b.victim).rgisu;
    });
    return tasks;
}

HidingEngine::HidingEngine(Database& db, Utility minutil, std::vector<Itemset> sclhuis,
                           const GIDic& dic, Strategy strategy)
    : db_(db), minutil_(minutil), sclhuis_(std::move(sclhuis)), dic_(dic), strategy_(strategy) {
    for (const Itemset& s : sclhuis_)
        if (!live_.emplace(s, itemset_utility(db_, s)).second)
            throw Error("duplicate sensitive itemset");  // would double-count updates
    std::unordered_map<Tid, std::size_t> by_tid;
    for (std::size_t i = 0; i < db_.size(); ++i) by_tid.emplace(db_.transaction(i).tid(), i);
    for (Tid tid : dic_.st_order()) txn_index_.push_back(by_tid.at(tid));
}

void HidingEngine::propagate(const Transaction& t, ItemId leaf, Utility removed,
                             bool full_removal) {
    const Taxonomy& tax = db_.taxonomy();
    for (const Itemset& s : sclhuis_) {
        ItemId member = kRoot;
        for (ItemId d : s.members())
            if (d == leaf || tax.is_ancestor_of(d, leaf)) {
                member = d;  // at most one: members are ancestor-free
                break;
            }
        if (member == kRoot) continue;
        if (!itemset_contains(tax, t, s)) continue;
        // When the leaf was the member's sole remaining contribution, the
        // whole itemset leaves this transaction.
        Utility delta = (full_removal && gen_item_utility(db_, member, t) == removed)
                            ? itemset_utility_in(db_, s, t)
                            : removed;
        live_[s] -= delta;
    }
}

void HidingEngine::apply_delete(std::size_t txn_index, ItemId leaf) {
    const Transaction& t = db_.transaction(txn_index);
    propagate(t, leaf, t.quantity_of(leaf) * db_.profit(leaf), true);
    Quantity q = db_.remove_entry(txn_index, leaf);
    log_.edits.push_back({t.tid(), leaf, Edit::Delete, q});
    log_.modified.insert(t.tid());
    if (hook_) hook_(db_, live_);
}

void HidingEngine::apply_reduce(std::size_t txn_index, ItemId leaf, Quantity diu) {
    const Transaction& t = db_.transaction(txn_index);
    propagate(t, leaf, diu * db_.profit(leaf), false);
    db_.reduce_entry(txn_index, leaf, diu);
    log_.edits.push_back({t.tid(), leaf, Edit::Reduce, diu});
    log_.modified.insert(t.tid());
    if (hook_) hook_(db_, live_);
}

std::size_t HidingEngine::hide_one(const HidingTask& task) {
    const Taxonomy& tax = db_.taxonomy();
    const Itemset& s = task.itemset;
    auto diff = [&] { return live_.at(s) - minutil_ + 1; };
    if (diff() <= 0) return 0;  // already hidden by earlier propagation

    // The victim's leaf items, ordered by RGISU per strategy, ties by id.
    std::vector<ItemId> leaves = tax.leaves(task.victim);
    const bool asc = ascending_leaf_order(strategy_);
    std::sort(leaves.begin(), leaves.end(), [&](ItemId a, ItemId b) {
        Utility ra = dic_.entry(a).rgisu, rb = dic_.entry(b).rgisu;
        if (ra != rb) return asc ? ra < rb : ra > rb;
        return a < b;
    });

    const std::size_t before = log_.edits.size();
    for (std::size_t pos = 0; pos < txn_index_.size() && diff() > 0; ++pos) {
        std::size_t ti = txn_index_[pos];
        // Containment is re-evaluated against the mutated transaction.
        if (!itemset_contains(tax, db_.transaction(ti), s)) continue;
        for (ItemId li : leaves) {
            if (diff() <= 0) break;
            Quantity q = db_.transaction(ti).quantity_of(li);
            if (q == 0) continue;
            Utility u_li = q * db_.profit(li);
            if (diff() >= u_li) {
                apply_delete(ti, li);
            } else {
                Quantity diu = (diff() + db_.profit(li) - 1) / db_.profit(li);
                if (diu == q)
                    apply_delete(ti, li);  // a reduction to zero is a deletion
                else
                    apply_reduce(ti, li, diu);
            }
        }
    }
    return log_.edits.size() - before;
}

SanitizeOutcome sanitize(const Database& db, Utility minutil, const std::vector<Itemset>& sclhuis,
                         const std::vector<Itemset>& clhuis, Strategy strategy,
                         HidingEngine::ConsistencyHook hook) {
    std::set<Itemset> all(clhuis.begin(), clhuis.end());
    std::set<Itemset> seen;
    for (const Itemset& s : sclhuis) {
        if (!all.count(s)) throw Error("sensitive itemset is not among the mined itemsets");
        if (!seen.insert(s).second) throw Error("duplicate sensitive itemset");
        if (itemset_utility(db, s) < minutil)
            throw Error("sensitive itemset is below minutil in the original database");
    }
    if (!sclhuis.empty() && minutil < 1)
        throw Error("hiding requires minutil >= 1: utilities cannot drop below 0");

    std::vector<Itemset> nsclhuis;
    for (const Itemset& p : clhuis)
        if (!seen.count(p)) nsclhuis.push_back(p);

    SanitizeOutcome out;
    out.sanitized = db;
    out.gidic = build_gidic(out.sanitized, sclhuis, nsclhuis);

    HidingEngine engine(out.sanitized, minutil, sclhuis, out.gidic, strategy);
    if (hook) engine.set_consistency_hook(std::move(hook));
    for (const HidingTask& task : order_tasks(sclhuis, out.gidic, strategy)) engine.hide_one(task);

    out.log = engine.take_log();
    for (const Itemset& s : sclhuis)
        out.residuals.emplace_back(s, itemset_utility(out.sanitized, s));
    return out;
}

}  // namespace clhide
