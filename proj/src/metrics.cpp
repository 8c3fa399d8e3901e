#include "clhide/metrics.hpp"

namespace clhide {

Ratio hiding_failure(const std::vector<Itemset>& sclhuis, const MiningResult& after) {
    if (sclhuis.empty()) return {0, 0};
    std::int64_t unhidden = 0;
    for (const Itemset& s : sclhuis)
        if (after.contains(s)) ++unhidden;
    return {unhidden, static_cast<std::int64_t>(sclhuis.size())};
}

Ratio missing_cost(const std::vector<Itemset>& nsclhuis, const MiningResult& after) {
    if (nsclhuis.empty()) return {0, 0};
    std::int64_t lost = 0;
    for (const Itemset& p : nsclhuis)
        if (!after.contains(p)) ++lost;
    return {lost, static_cast<std::int64_t>(nsclhuis.size())};
}

Ratio artificial_cost(const MiningResult& before, const MiningResult& after) {
    if (after.itemsets.empty()) return {0, 0};
    std::int64_t spurious = 0;
    for (const auto& [p, u] : after.itemsets)
        if (!before.contains(p)) ++spurious;
    return {spurious, static_cast<std::int64_t>(after.itemsets.size())};
}

Ratio itemset_utility_similarity(const MiningResult& before, const MiningResult& after) {
    Utility den = before.total_utility();
    if (den == 0) throw Error("IUS undefined: no itemsets mined from the original database");
    return {after.total_utility(), den};
}

Ratio database_utility_similarity(const Database& original, const Database& sanitized) {
    Utility den = original.total_utility();
    if (den == 0) throw Error("DUS undefined: original database has no utility");
    return {sanitized.total_utility(), den};
}

Ratio transaction_modification_ratio(const EditLog& log, const Database& original) {
    if (original.size() == 0) throw Error("TMR undefined: original database is empty");
    return {static_cast<std::int64_t>(log.modified.size()),
            static_cast<std::int64_t>(original.size())};
}

SanitizationReport evaluate_run(const std::vector<Itemset>& sclhuis, const MiningResult& before,
                                const MiningResult& after, const Database& original,
                                const Database& sanitized, const EditLog& log) {
    std::set<Itemset> sensitive(sclhuis.begin(), sclhuis.end());
    std::vector<Itemset> nsclhuis;
    for (const auto& [p, u] : before.itemsets)
        if (!sensitive.count(p)) nsclhuis.push_back(p);

    SanitizationReport r;
    r.hf = hiding_failure(sclhuis, after);
    r.mc = missing_cost(nsclhuis, after);
    r.ac = artificial_cost(before, after);
    r.ius = itemset_utility_similarity(before, after);
    r.dus = database_utility_similarity(original, sanitized);
    r.tmr = transaction_modification_ratio(log, original);
    return r;
}

}  // namespace clhide
