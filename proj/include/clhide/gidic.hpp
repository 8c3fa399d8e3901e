// GI-dic: per-item sensitive/non-sensitive counts, RGISU (utility restricted
// to sensitive transactions) and sensitive tid lists, plus per-transaction
// SC/NSC/Wt. Transaction counts are computed by intersecting the per-item tid
// lists, never by rescanning the database.
#pragma once

#include <boost/rational.hpp>
#include <string>
#include <unordered_map>
#include <vector>

#include "clhide/core.hpp"
#include "clhide/io.hpp"

namespace clhide {

using Rational = boost::rational<std::int64_t>;

struct GIDicEntry {
    std::int64_t sc = 0;      // SCLHUIs containing the item, an ancestor or a descendant
    std::int64_t nsc = 0;     // same over NSCLHUIs
    Utility rgisu = 0;        // utility summed over sensitive transactions only
    std::vector<Tid> st_tids; // sensitive transactions containing the item, ascending
};

struct TransactionMetrics {
    std::int64_t sc = 0;   // SCLHUIs contained in the transaction
    std::int64_t nsc = 0;  // NSCLHUIs contained in the transaction
    Rational wt{0};        // sc / (nsc + 1)
};

class GIDic {
  public:
    const GIDicEntry& entry(ItemId v) const { return entries_.at(v); }
    std::size_t item_count() const { return entries_.size(); }

    // Metrics exist exactly for the sensitive transactions.
    bool is_sensitive(Tid tid) const { return txn_.count(tid) != 0; }
    const TransactionMetrics& transaction(Tid tid) const { return txn_.at(tid); }

    // Sensitive tids by Wt descending, ties by ascending tid.
    const std::vector<Tid>& st_order() const { return st_order_; }

    // Tabular debug dump: item, SC, NSC, RGISU, tids; then tid, SC, NSC, Wt.
    std::string dump(const NameMap& names) const;

  private:
    friend GIDic build_gidic(const Database&, const std::vector<Itemset>&,
                             const std::vector<Itemset>&);
    std::vector<GIDicEntry> entries_;
    std::unordered_map<Tid, TransactionMetrics> txn_;
    std::vector<Tid> st_order_;
};

// Tids of the transactions containing at least one sensitive itemset, ascending.
std::vector<Tid> sensitive_transactions(const Database& db, const std::vector<Itemset>& sclhuis);

// Sensitive transactions containing the itemset, found by intersecting its
// members' tid lists instead of rescanning the database.
std::vector<Tid> itemset_sensitive_tids(const GIDic& dic, const Itemset& p);

// The sensitive and non-sensitive sets must be disjoint.
GIDic build_gidic(const Database& db, const std::vector<Itemset>& sclhuis,
                  const std::vector<Itemset>& nsclhuis);

}  // namespace clhide
