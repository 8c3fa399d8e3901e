#include "clhide/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <ostream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

namespace clhide {

namespace {

// Unbiased bounded draw; uniform_int_distribution is not pinned down by the
// standard, so roll our own rejection loop on the pinned mt19937_64 stream.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

std::string fmt_ratio(const Ratio& r) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", r.to_double());
    return buf;
}

}  // namespace

std::vector<Itemset> select_random_sensitive(const MiningResult& mined, std::size_t k,
                                             std::uint64_t seed) {
    std::vector<Itemset> pool;
    pool.reserve(mined.itemsets.size());
    for (const auto& [p, u] : mined.itemsets) pool.push_back(p);  // canonical order
    if (k > pool.size())
        throw Error("cannot select " + std::to_string(k) + " sensitive itemsets from " +
                    std::to_string(pool.size()) + " mined ones");
    std::mt19937_64 rng(seed);
    std::vector<Itemset> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + bounded(rng, pool.size() - i);
        std::swap(pool[i], pool[j]);
        out.push_back(pool[i]);
    }
    return out;
}

void write_report(std::ostream& out, const ReportDocument& doc) {
    nlohmann::ordered_json j;
    const SanitizationReport& m = doc.metrics;
    j["hf"] = m.hf.to_double();
    j["mc"] = m.mc.to_double();
    j["ac"] = m.ac.to_double();
    j["ius"] = m.ius.to_double();
    j["dus"] = m.dus.to_double();
    j["tmr"] = m.tmr.to_double();
    j["runtime_ms"] = doc.runtime_ms;
    j["minutil"] = doc.minutil;
    j["strategy"] = strategy_name(doc.strategy);
    j["sensitive_count"] = doc.sensitive_count;
    if (doc.sensitive_seed)
        j["sensitive_seed"] = *doc.sensitive_seed;
    else
        j["sensitive_seed"] = nullptr;
    auto frac = [](const Ratio& r) { return std::to_string(r.num) + "/" + std::to_string(r.den); };
    j["hf_exact"] = frac(m.hf);
    j["mc_exact"] = frac(m.mc);
    j["ac_exact"] = frac(m.ac);
    j["ius_exact"] = frac(m.ius);
    j["dus_exact"] = frac(m.dus);
    j["tmr_exact"] = frac(m.tmr);
    nlohmann::ordered_json residuals = nlohmann::ordered_json::object();
    for (const auto& [name, u] : doc.residuals) residuals[name] = u;
    j["residual_utilities"] = std::move(residuals);
    out << j.dump(2) << '\n';
}

std::string run_experiment(const DatasetBundle& data, const ExperimentConfig& config) {
    if (config.minutils.empty() || config.strategies.empty())
        throw Error("experiment sweep lists must be nonempty");
    std::vector<std::uint64_t> seeds = config.seeds;
    if (config.random_k == 0 || seeds.empty()) seeds = {0};  // file-based: one pass

    std::ostringstream csv;
    csv << experiment_csv_header() << '\n';
    for (Strategy strategy : config.strategies) {
        for (Utility minutil : config.minutils) {
            MiningResult mined;
            std::optional<std::string> mine_error;
            try {
                mined = mine_clhuis(data.database, minutil);
            } catch (const std::exception& e) {
                mine_error = e.what();
            }
            for (std::uint64_t seed : seeds) {
                csv << config.dataset_name << ',' << strategy_name(strategy) << ',' << minutil
                    << ',';
                try {
                    if (mine_error) throw Error(*mine_error);
                    std::vector<Itemset> sensitive =
                        config.random_k > 0
                            ? select_random_sensitive(mined, config.random_k, seed)
                            : config.fixed_sensitive;
                    std::vector<Itemset> clhuis;
                    for (const auto& [p, u] : mined.itemsets) clhuis.push_back(p);

                    auto t0 = std::chrono::steady_clock::now();
                    SanitizeOutcome run =
                        sanitize(data.database, minutil, sensitive, clhuis, strategy);
                    auto t1 = std::chrono::steady_clock::now();
                    auto ms =
                        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();

                    MiningResult after = mine_clhuis(run.sanitized, minutil);
                    SanitizationReport r = evaluate_run(sensitive, mined, after, data.database,
                                                        run.sanitized, run.log);
                    csv << sensitive.size() << ',';
                    if (config.random_k > 0)
                        csv << seed;
                    csv << ',' << fmt_ratio(r.hf) << ',' << fmt_ratio(r.mc) << ','
                        << fmt_ratio(r.ac) << ',' << fmt_ratio(r.ius) << ',' << fmt_ratio(r.dus)
                        << ',' << fmt_ratio(r.tmr) << ',' << ms << ",\n";
                } catch (const std::exception& e) {
                    std::string msg = e.what();
                    for (char& c : msg)
                        if (c == ',' || c == '\n') c = ';';
                    csv << ',';
                    if (config.random_k > 0) csv << seed;
                    csv << ",,,,,,,," << msg << '\n';
                }
            }
        }
    }
    return csv.str();
}

}  // namespace clhide
