#include "clhide/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "clhide/experiment.hpp"

namespace clhide {

namespace {

namespace fs = std::filesystem;

struct DatasetArgs {
    std::string transactions;
    std::string taxonomy;
    std::string profits;
    std::string format = "utility";

    void attach(CLI::App* cmd) {
        cmd->add_option("--transactions", transactions, "transaction database file")
            ->required()
            ->check(CLI::ExistingFile);
        cmd->add_option("--taxonomy", taxonomy, "taxonomy file (child,parent lines)")
            ->check(CLI::ExistingFile);
        cmd->add_option("--profits", profits, "unit profit table (item,profit lines)")
            ->check(CLI::ExistingFile);
        cmd->add_option("--format", format, "transaction file format")
            ->check(CLI::IsMember({"utility", "quantity"}));
    }

    DatasetBundle load(const std::string& override_transactions = "") const {
        const std::string& txn_path =
            override_transactions.empty() ? transactions : override_transactions;
        std::ifstream txn(txn_path);
        if (!txn) throw Error("cannot open " + txn_path);
        std::optional<std::ifstream> tax, prof;
        if (!taxonomy.empty()) {
            tax.emplace(taxonomy);
            if (!*tax) throw Error("cannot open " + taxonomy);
        }
        if (!profits.empty()) {
            prof.emplace(profits);
            if (!*prof) throw Error("cannot open " + profits);
        }
        TransactionFormat fmt =
            format == "utility" ? TransactionFormat::Utility : TransactionFormat::Quantity;
        try {
            return load_dataset(txn, fmt, tax ? &*tax : nullptr, prof ? &*prof : nullptr);
        } catch (const ParseError& e) {
            // Attribute the failing line to its file.
            std::string file = txn_path;
            if (e.source == "taxonomy") file = taxonomy;
            if (e.source == "profits") file = profits;
            throw Error(file + ": line " + std::to_string(e.line) + ": " + e.message);
        }
    }
};

std::vector<std::pair<Itemset, Utility>> load_itemsets_file(const std::string& path,
                                                            const DatasetBundle& data) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    try {
        return parse_itemsets(in, data.names, *data.taxonomy);
    } catch (const ParseError& e) {
        throw Error(path + ": line " + std::to_string(e.line) + ": " + e.message);
    }
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    return out;
}

std::vector<Strategy> parse_strategies(const std::string& arg) {
    if (arg == "all") return {Strategy::MinRF, Strategy::MaxRF, Strategy::BestNSCF};
    return {strategy_from_name(arg)};
}

const char* kind_name(Edit::Kind k) { return k == Edit::Delete ? "delete" : "reduce"; }

void write_edits(std::ostream& out, const EditLog& log, const NameMap& names) {
    for (const Edit& e : log.edits)
        out << e.tid << ' ' << names.name(e.item) << ' ' << kind_name(e.kind) << ' ' << e.delta
            << '\n';
}

// Re-expresses a parsed database in the target bundle's id space (matching
// items by name), sharing the target's taxonomy and profit table.
Database rebase(const Database& src, const NameMap& src_names, const DatasetBundle& target) {
    Database out(target.taxonomy, target.database.profits());
    for (const Transaction& t : src.transactions()) {
        std::vector<Entry> entries;
        for (const Entry& e : t.entries()) {
            auto id = target.names.find(src_names.name(e.item));
            if (!id)
                throw Error("sanitized database contains item '" + src_names.name(e.item) +
                            "' unknown to the original");
            entries.push_back({*id, e.quantity});
        }
        std::sort(entries.begin(), entries.end(),
                  [](const Entry& a, const Entry& b) { return a.item < b.item; });
        out.append_transaction(t.tid(), std::move(entries));
    }
    return out;
}

// Transactions of the sanitized file are an ordered subsequence of the
// original's (emptied ones are dropped on output), so a greedy in-order
// match recovers which originals were modified or removed. Repeated
// identical transactions make the attribution ambiguous, so this is an
// estimate; the edit log written by `sanitize` carries the exact count.
std::int64_t modified_count_by_diff(const Database& original, const Database& sanitized) {
    std::int64_t modified = 0;
    std::size_t j = 0;
    auto shrunk_copy = [](const Transaction& a, const Transaction& b) {
        // b derivable from a by deletions/reductions only
        for (const Entry& e : b.entries()) {
            Quantity qa = a.quantity_of(e.item);
            if (qa < e.quantity) return false;
        }
        return true;
    };
    for (const Transaction& orig : original.transactions()) {
        if (j < sanitized.size() && shrunk_copy(orig, sanitized.transaction(j))) {
            const Transaction& got = sanitized.transaction(j);
            bool identical = got.entries().size() == orig.entries().size() &&
                             std::equal(got.entries().begin(), got.entries().end(),
                                        orig.entries().begin(), [](const Entry& x, const Entry& y) {
                                            return x.item == y.item && x.quantity == y.quantity;
                                        });
            if (!identical) ++modified;
            ++j;
        } else {
            ++modified;  // emptied and dropped from the output
        }
    }
    return modified;
}

struct SensitiveArgs {
    std::string file;
    std::size_t random_k = 0;
    std::vector<std::uint64_t> seeds{0};

    void attach(CLI::App* cmd) {
        cmd->add_option("--sensitive-file", file, "sensitive itemsets file")
            ->check(CLI::ExistingFile);
        cmd->add_option("--sensitive-random", random_k,
                        "number of sensitive itemsets drawn at random from the mined set");
        cmd->add_option("--seed", seeds, "selection seed(s)")->delimiter(',');
    }

    std::vector<Itemset> pick(const DatasetBundle& data, const MiningResult& mined,
                              std::uint64_t seed) const {
        if (!file.empty() && random_k > 0)
            throw Error("--sensitive-file and --sensitive-random are mutually exclusive");
        if (!file.empty()) {
            std::vector<Itemset> out;
            for (auto& [p, u] : load_itemsets_file(file, data)) out.push_back(p);
            return out;
        }
        if (random_k > 0) return select_random_sensitive(mined, random_k, seed);
        throw Error("one of --sensitive-file or --sensitive-random is required");
    }
};

int cmd_mine(const DatasetArgs& dataset, Utility minutil, const std::string& out_dir) {
    DatasetBundle data = dataset.load();
    auto t0 = std::chrono::steady_clock::now();
    MiningResult mined = mine_clhuis(data.database, minutil);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    fs::create_directories(out_dir);
    auto out = open_out(fs::path(out_dir) / "clhuis.txt");
    write_itemsets(out, mined.itemsets, data.names);
    std::cout << mined.itemsets.size() << " itemsets with utility >= " << minutil << " ("
              << ms << " ms, " << mined.stats.candidates << " candidates, " << mined.stats.pruned
              << " pruned)\n";
    return 0;
}

int cmd_sanitize(const DatasetArgs& dataset, Utility minutil, const SensitiveArgs& sensitive,
                 const std::string& strategy_arg, const std::string& out_dir) {
    DatasetBundle data = dataset.load();
    MiningResult mined = mine_clhuis(data.database, minutil);
    std::vector<Itemset> clhuis;
    for (const auto& [p, u] : mined.itemsets) clhuis.push_back(p);
    std::uint64_t seed = sensitive.seeds.empty() ? 0 : sensitive.seeds.front();
    std::vector<Itemset> sclhuis = sensitive.pick(data, mined, seed);

    fs::create_directories(out_dir);
    TransactionFormat fmt = dataset.format == "utility" ? TransactionFormat::Utility
                                                        : TransactionFormat::Quantity;
    bool first_strategy = true;
    for (Strategy strategy : parse_strategies(strategy_arg)) {
        auto t0 = std::chrono::steady_clock::now();
        SanitizeOutcome run = sanitize(data.database, minutil, sclhuis, clhuis, strategy);
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();

        MiningResult after = mine_clhuis(run.sanitized, minutil);
        SanitizationReport metrics =
            evaluate_run(sclhuis, mined, after, data.database, run.sanitized, run.log);

        const std::string tag = strategy_name(strategy);
        auto db_out = open_out(fs::path(out_dir) / ("sanitized_" + tag + ".txt"));
        write_transactions(db_out, run.sanitized, fmt, data.names);
        auto edits_out = open_out(fs::path(out_dir) / ("edits_" + tag + ".txt"));
        write_edits(edits_out, run.log, data.names);
        if (first_strategy) {
            auto gidic_out = open_out(fs::path(out_dir) / "gidic.txt");
            gidic_out << run.gidic.dump(data.names);
            first_strategy = false;
        }

        ReportDocument doc;
        doc.metrics = metrics;
        doc.minutil = minutil;
        doc.strategy = strategy;
        doc.sensitive_count = sclhuis.size();
        if (sensitive.random_k > 0) doc.sensitive_seed = seed;
        for (const auto& [s, residual] : run.residuals) {
            std::string name;
            for (ItemId v : s.members()) {
                if (!name.empty()) name += ' ';
                name += data.names.name(v);
            }
            doc.residuals.emplace_back(name, residual);
        }
        doc.runtime_ms = ms;
        auto report_out = open_out(fs::path(out_dir) / ("report_" + tag + ".json"));
        write_report(report_out, doc);

        std::cout << tag << ": " << run.log.edits.size() << " edits, "
                  << run.log.modified.size() << " transactions touched, hf="
                  << metrics.hf.to_double() << ", mc=" << metrics.mc.to_double() << " (" << ms
                  << " ms)\n";
    }
    return 0;
}

int cmd_evaluate(const DatasetArgs& dataset, const std::string& sanitized_path, Utility minutil,
                 const SensitiveArgs& sensitive, const std::string& out_dir) {
    DatasetBundle data = dataset.load();
    DatasetBundle after_raw = dataset.load(sanitized_path);
    Database sanitized_db = rebase(after_raw.database, after_raw.names, data);
    MiningResult before = mine_clhuis(data.database, minutil);
    MiningResult after = mine_clhuis(sanitized_db, minutil);
    std::vector<Itemset> sclhuis = sensitive.pick(data, before, 0);

    SanitizationReport r;
    std::vector<Itemset> nsclhuis;
    {
        std::set<Itemset> s(sclhuis.begin(), sclhuis.end());
        for (const auto& [p, u] : before.itemsets)
            if (!s.count(p)) nsclhuis.push_back(p);
    }
    r.hf = hiding_failure(sclhuis, after);
    r.mc = missing_cost(nsclhuis, after);
    r.ac = artificial_cost(before, after);
    r.ius = itemset_utility_similarity(before, after);
    r.dus = database_utility_similarity(data.database, sanitized_db);
    r.tmr = {modified_count_by_diff(data.database, sanitized_db),
             static_cast<std::int64_t>(data.database.size())};

    ReportDocument doc;
    doc.metrics = r;
    doc.minutil = minutil;
    doc.sensitive_count = sclhuis.size();
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        auto out = open_out(fs::path(out_dir) / "report.json");
        write_report(out, doc);
    }
    write_report(std::cout, doc);
    return 0;
}

int cmd_experiment(const DatasetArgs& dataset, const std::vector<Utility>& minutils,
                   const SensitiveArgs& sensitive, const std::string& strategy_arg,
                   const std::string& out_dir) {
    DatasetBundle data = dataset.load();
    ExperimentConfig config;
    config.dataset_name = fs::path(dataset.transactions).stem().string();
    config.minutils = minutils;
    config.strategies = parse_strategies(strategy_arg);
    config.seeds = sensitive.seeds;
    config.random_k = sensitive.random_k;
    if (sensitive.random_k == 0) {
        if (sensitive.file.empty())
            throw Error("one of --sensitive-file or --sensitive-random is required");
        for (auto& [p, u] : load_itemsets_file(sensitive.file, data))
            config.fixed_sensitive.push_back(p);
    }
    std::string csv = run_experiment(data, config);
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        auto out = open_out(fs::path(out_dir) / "experiment.csv");
        out << csv;
    }
    std::cout << csv;
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"cross-level high-utility itemset mining and sanitization"};
    app.require_subcommand(1);

    DatasetArgs dataset;
    SensitiveArgs sensitive;
    Utility minutil = 0;
    std::vector<Utility> minutils;
    std::string strategy = "min-rf";
    std::string out_dir;
    std::string sanitized_path;

    CLI::App* mine = app.add_subcommand("mine", "enumerate all high-utility itemsets");
    dataset.attach(mine);
    mine->add_option("--minutil", minutil, "minimum utility threshold")->required();
    mine->add_option("--out", out_dir, "output directory")->required();

    CLI::App* san = app.add_subcommand("sanitize", "hide sensitive itemsets");
    dataset.attach(san);
    sensitive.attach(san);
    san->add_option("--minutil", minutil, "minimum utility threshold")->required();
    san->add_option("--strategy", strategy, "victim selection strategy")
        ->check(CLI::IsMember({"min-rf", "max-rf", "best-nscf", "all"}));
    san->add_option("--out", out_dir, "output directory")->required();

    CLI::App* eval = app.add_subcommand("evaluate", "compare an original and a sanitized database");
    dataset.attach(eval);
    sensitive.attach(eval);
    eval->add_option("--sanitized", sanitized_path, "sanitized transaction file")
        ->required()
        ->check(CLI::ExistingFile);
    eval->add_option("--minutil", minutil, "minimum utility threshold")->required();
    eval->add_option("--out", out_dir, "output directory");

    CLI::App* exp = app.add_subcommand("experiment", "sweep minutil x strategy x seed");
    dataset.attach(exp);
    sensitive.attach(exp);
    exp->add_option("--minutil", minutils, "minimum utility threshold sweep")
        ->required()
        ->delimiter(',');
    exp->add_option("--strategy", strategy, "victim selection strategy or 'all'")
        ->check(CLI::IsMember({"min-rf", "max-rf", "best-nscf", "all"}));
    exp->add_option("--out", out_dir, "output directory");

    try {
        app.parse(argc, argv);
        if (mine->parsed()) return cmd_mine(dataset, minutil, out_dir);
        if (san->parsed()) return cmd_sanitize(dataset, minutil, sensitive, strategy, out_dir);
        if (eval->parsed())
            return cmd_evaluate(dataset, sanitized_path, minutil, sensitive, out_dir);
        if (exp->parsed()) return cmd_experiment(dataset, minutils, sensitive, strategy, out_dir);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace clhide
