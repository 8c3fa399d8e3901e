#include "clhide/gidic.hpp"

#include <set>
#include <sstream>

namespace clhide {

std::vector<Tid> itemset_sensitive_tids(const GIDic& dic, const Itemset& p) {
    if (p.empty()) return {};
    std::vector<Tid> acc = dic.entry(p.members()[0]).st_tids;
    for (std::size_t i = 1; i < p.size() && !acc.empty(); ++i) {
        const std::vector<Tid>& other = dic.entry(p.members()[i]).st_tids;
        std::vector<Tid> next;
        next.reserve(std::min(acc.size(), other.size()));
        std::set_intersection(acc.begin(), acc.end(), other.begin(), other.end(),
                              std::back_inserter(next));
        acc = std::move(next);
    }
    return acc;
}

namespace {

// {g} with all ancestors and descendants, deduplicated, so an itemset whose
// members share relatives still bumps each relative's count once.
void closure_counts(const Taxonomy& tax, const Itemset& p, std::vector<std::int64_t>& counts) {
    std::set<ItemId> affected;
    for (ItemId g : p.members()) {
        affected.insert(g);
        const auto& anc = tax.ancestors(g);
        affected.insert(anc.begin(), anc.end());
        const auto& desc = tax.descendants(g);
        affected.insert(desc.begin(), desc.end());
    }
    for (ItemId v : affected) ++counts[v];
}

}  // namespace

std::vector<Tid> sensitive_transactions(const Database& db, const std::vector<Itemset>& sclhuis) {
    std::vector<Tid> out;
    for (const Transaction& t : db.transactions())
        for (const Itemset& s : sclhuis)
            if (itemset_contains(db.taxonomy(), t, s)) {
                out.push_back(t.tid());
                break;
            }
    return out;
}

GIDic build_gidic(const Database& db, const std::vector<Itemset>& sclhuis,
                  const std::vector<Itemset>& nsclhuis) {
    {
        std::set<Itemset> s(sclhuis.begin(), sclhuis.end());
        for (const Itemset& ns : nsclhuis)
            if (s.count(ns))
                throw Error("sensitive and non-sensitive itemset sets overlap");
    }

    const Taxonomy& tax = db.taxonomy();
    GIDic dic;
    dic.entries_.resize(tax.item_count());

    // One database pass: RGISU and st_tids for every item present in a
    // sensitive transaction (leaf utilities roll up to every ancestor).
    for (const Transaction& t : db.transactions()) {
        bool sensitive = false;
        for (const Itemset& s : sclhuis)
            if (itemset_contains(tax, t, s)) {
                sensitive = true;
                break;
            }
        if (!sensitive) continue;
        dic.txn_.emplace(t.tid(), TransactionMetrics{});
        for (const Entry& e : t.entries()) {
            Utility u = e.quantity * db.profit(e.item);
            ItemId g = e.item;
            for (;;) {
                GIDicEntry& entry = dic.entries_[g];
                if (entry.st_tids.empty() || entry.st_tids.back() != t.tid())
                    entry.st_tids.push_back(t.tid());
                entry.rgisu += u;
                auto p = tax.parent(g);
                if (!p) break;
                g = *p;
            }
        }
    }

    std::vector<std::int64_t> sc(tax.item_count(), 0), nsc(tax.item_count(), 0);
    for (const Itemset& s : sclhuis) {
        closure_counts(tax, s, sc);
        for (Tid tid : itemset_sensitive_tids(dic, s)) ++dic.txn_.at(tid).sc;
    }
    for (const Itemset& ns : nsclhuis) {
        closure_counts(tax, ns, nsc);
        for (Tid tid : itemset_sensitive_tids(dic, ns)) ++dic.txn_.at(tid).nsc;
    }
    for (ItemId v = 0; v < tax.item_count(); ++v) {
        dic.entries_[v].sc = sc[v];
        dic.entries_[v].nsc = nsc[v];
    }

    for (auto& [tid, m] : dic.txn_) {
        m.wt = Rational(m.sc, m.nsc + 1);
        dic.st_order_.push_back(tid);
    }
    std::sort(dic.st_order_.begin(), dic.st_order_.end(), [&](Tid a, Tid b) {
        const Rational &wa = dic.txn_.at(a).wt, &wb = dic.txn_.at(b).wt;
        if (wa != wb) return wa > wb;
        return a < b;
    });
    return dic;
}

std::string GIDic::dump(const NameMap& names) const {
    std::ostringstream out;
    out << "item\tSC\tNSC\tRGISU\ttransactions\n";
    for (ItemId v = 0; v < entries_.size(); ++v) {
        const GIDicEntry& e = entries_[v];
        out << names.name(v) << '\t' << e.sc << '\t' << e.nsc << '\t' << e.rgisu << '\t';
        for (std::size_t i = 0; i < e.st_tids.size(); ++i) {
            if (i) out << ' ';
            out << e.st_tids[i];
        }
        out << '\n';
    }
    out << "\ntid\tSC\tNSC\tWt\n";
    for (Tid tid : st_order_) {
        const TransactionMetrics& m = txn_.at(tid);
        // Wt printed to two decimals for reading; the stored value is exact.
        double w = boost::rational_cast<double>(m.wt);
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2f", w);
        out << tid << '\t' << m.sc << '\t' << m.nsc << '\t' << buf << '\n';
    }
    return out.str();
}

}  // namespace clhide
