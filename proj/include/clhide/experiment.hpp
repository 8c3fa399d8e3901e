// Experiment orchestration: seeded random selection of sensitive itemsets,
// sweep runs over minutil x strategy x seed with CSV output, and the
// machine-readable report written after a sanitization run.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "clhide/metrics.hpp"

namespace clhide {

// Uniform draw of k itemsets without replacement from the mined set in
// canonical order, so the choice only depends on (result set, k, seed) and
// never on miner traversal order. Uses a fixed generator (mt19937_64 with
// rejection sampling) to stay reproducible across platforms.
std::vector<Itemset> select_random_sensitive(const MiningResult& mined, std::size_t k,
                                             std::uint64_t seed);

struct ReportDocument {
    SanitizationReport metrics;
    Utility minutil = 0;
    Strategy strategy = Strategy::MinRF;
    std::size_t sensitive_count = 0;
    std::optional<std::uint64_t> sensitive_seed;  // absent for file-based sets
    std::vector<std::pair<std::string, Utility>> residuals;  // itemset name -> u(S, D')
    std::int64_t runtime_ms = 0;
};

// Flat JSON: one key per metric (hf, mc, ac, ius, dus, tmr, runtime_ms),
// config echo and per-itemset residual utilities.
void write_report(std::ostream& out, const ReportDocument& doc);

struct ExperimentConfig {
    std::string dataset_name;
    std::vector<Utility> minutils;
    std::vector<Strategy> strategies;
    std::vector<std::uint64_t> seeds;       // used with random selection
    std::size_t random_k = 0;               // 0 means file-based sensitive set
    std::vector<Itemset> fixed_sensitive;   // used when random_k == 0
};

// One CSV row per (strategy x minutil x seed), in configuration order.
// A failing sub-run becomes an error row and the sweep continues.
// Identical configurations produce identical CSV except runtime_ms.
std::string run_experiment(const DatasetBundle& data, const ExperimentConfig& config);

inline const char* experiment_csv_header() {
    return "dataset,strategy,minutil,sensitive_count,seed,hf,mc,ac,ius,dus,tmr,runtime_ms,error";
}

}  // namespace clhide
