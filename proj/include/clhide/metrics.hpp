// Side-effect metrics of a sanitization run: hiding failure, missing cost,
// artificial cost, itemset/database utility similarity and the transaction
// modification ratio. All ratios are exact rationals with their backing
// counts; decimals appear only when a report is rendered.
#pragma once

#include <map>
#include <vector>

#include "clhide/gidic.hpp"
#include "clhide/miner.hpp"
#include "clhide/sanitizer.hpp"

namespace clhide {

// A ratio kept as raw counts. num == den == 0 encodes the defined-empty
// corners (no sensitive itemsets, nothing re-mined) and evaluates to 0.
struct Ratio {
    std::int64_t num = 0;
    std::int64_t den = 0;
    Rational value() const { return den == 0 ? Rational(0) : Rational(num, den); }
    double to_double() const { return boost::rational_cast<double>(value()); }
};

struct SanitizationReport {
    Ratio hf, mc, ac, ius, dus, tmr;
};

// |SCLHUIs ∩ CLHUIs'| / |SCLHUIs|; 0 when there are no sensitive itemsets.
Ratio hiding_failure(const std::vector<Itemset>& sclhuis, const MiningResult& after);

// |NSCLHUIs − CLHUIs'| / |NSCLHUIs|; 0 when there are no non-sensitive ones.
// Membership compares itemsets only; utilities may differ.
Ratio missing_cost(const std::vector<Itemset>& nsclhuis, const MiningResult& after);

// |CLHUIs' − CLHUIs| / |CLHUIs'|; 0 when nothing is mined afterwards.
Ratio artificial_cost(const MiningResult& before, const MiningResult& after);

// IUS = Σ u(P, D') over CLHUIs' / Σ u(P, D) over CLHUIs,
// DUS = Σ TU(D') / Σ TU(D), TMR = |modified tids| / |D|.
// Throws when a denominator is zero (empty database / no original CLHUIs).
Ratio itemset_utility_similarity(const MiningResult& before, const MiningResult& after);
Ratio database_utility_similarity(const Database& original, const Database& sanitized);
Ratio transaction_modification_ratio(const EditLog& log, const Database& original);

SanitizationReport evaluate_run(const std::vector<Itemset>& sclhuis, const MiningResult& before,
                                const MiningResult& after, const Database& original,
                                const Database& sanitized, const EditLog& log);

}  // namespace clhide
