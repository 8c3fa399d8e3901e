#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "clhide/metrics.hpp"
#include "support/fixtures.hpp"
#include "support/random_instance.hpp"

using namespace clhide;
using testsupport::golden_dataset;
using testsupport::golden_sensitive;
using testsupport::id_of;
using testsupport::set_of;

namespace {

MiningResult result_of(std::initializer_list<std::pair<Itemset, Utility>> sets) {
    MiningResult r;
    for (auto& [p, u] : sets) r.itemsets.emplace(p, u);
    return r;
}

}  // namespace

TEST_CASE("hiding failure") {
    auto data = golden_dataset();
    auto sensitive = golden_sensitive(data);

    CHECK(hiding_failure(sensitive, MiningResult{}).value() == Rational(0));
    CHECK(hiding_failure({}, MiningResult{}).value() == Rational(0));  // empty convention

    MiningResult after = result_of({{set_of(data, {"e", "d"}), 40}});
    Ratio hf = hiding_failure(sensitive, after);
    CHECK(hf.num == 1);
    CHECK(hf.den == 3);
    CHECK(hf.value() == Rational(1, 3));
}

TEST_CASE("missing cost counts lost non-sensitive itemsets") {
    auto data = golden_dataset();
    std::vector<Itemset> nsclhuis{set_of(data, {"X"}), set_of(data, {"Z"}),
                                  set_of(data, {"X", "Z"}), set_of(data, {"X", "e"}),
                                  set_of(data, {"Z", "a"})};
    MiningResult all = result_of({{set_of(data, {"X"}), 1},
                                  {set_of(data, {"Z"}), 1},
                                  {set_of(data, {"X", "Z"}), 1},
                                  {set_of(data, {"X", "e"}), 1},
                                  {set_of(data, {"Z", "a"}), 1}});
    CHECK(missing_cost(nsclhuis, all).value() == Rational(0));
    CHECK(missing_cost({}, all).value() == Rational(0));

    MiningResult after = result_of({{set_of(data, {"X"}), 9},
                                    {set_of(data, {"Z"}), 9},
                                    {set_of(data, {"X", "Z"}), 9}});
    Ratio mc = missing_cost(nsclhuis, after);
    CHECK(mc.num == 2);
    CHECK(mc.den == 5);
    // membership is by itemset, not by (itemset, utility)
    CHECK(mc.value() == Rational(2, 5));
}

TEST_CASE("artificial cost") {
    auto data = golden_dataset();
    Itemset a = set_of(data, {"X"}), b = set_of(data, {"Z"});
    CHECK(artificial_cost(result_of({{a, 1}}), result_of({{a, 1}})).value() == Rational(0));
    CHECK(artificial_cost(result_of({{a, 1}}), MiningResult{}).value() == Rational(0));
    Ratio ac = artificial_cost(result_of({{a, 1}}), result_of({{a, 1}, {b, 2}}));
    CHECK(ac.value() == Rational(1, 2));
}

TEST_CASE("similarity metrics on the identity run") {
    auto data = golden_dataset();
    MiningResult mined = mine_clhuis(data.database, 50);
    EditLog no_edits;
    CHECK(itemset_utility_similarity(mined, mined).value() == Rational(1));
    CHECK(database_utility_similarity(data.database, data.database).value() == Rational(1));
    CHECK(transaction_modification_ratio(no_edits, data.database).value() == Rational(0));
}

TEST_CASE("database utility similarity after one deletion") {
    auto data = golden_dataset();
    Database edited = data.database;
    edited.remove_entry(0, id_of(data, "d"));  // u(d, T1) = 3 out of 137 total
    Ratio dus = database_utility_similarity(data.database, edited);
    CHECK(dus.num == 134);
    CHECK(dus.den == 137);
}

TEST_CASE("undefined metrics raise errors") {
    auto data = golden_dataset();
    Database empty(data.taxonomy, std::vector<Utility>(data.taxonomy->item_count(), 1));
    CHECK_THROWS_AS(database_utility_similarity(empty, empty), Error);
    CHECK_THROWS_AS(transaction_modification_ratio(EditLog{}, empty), Error);
    CHECK_THROWS_AS(itemset_utility_similarity(MiningResult{}, MiningResult{}), Error);
}

TEST_CASE("full report of the min-RGISU run on the worked example") {
    auto data = golden_dataset();
    MiningResult mined = mine_clhuis(data.database, 50);
    std::vector<Itemset> clhuis;
    for (const auto& [p, u] : mined.itemsets) clhuis.push_back(p);
    auto sensitive = golden_sensitive(data);

    auto outcome = sanitize(data.database, 50, sensitive, clhuis, Strategy::MinRF);
    MiningResult after = mine_clhuis(outcome.sanitized, 50);
    SanitizationReport r =
        evaluate_run(sensitive, mined, after, data.database, outcome.sanitized, outcome.log);

    CHECK(r.hf.value() == Rational(0));
    CHECK(r.ac.value() == Rational(0));
    // Six non-sensitive itemsets; {X,e}, {Z,a} and {X,d,e} drop below 50.
    CHECK(r.mc.num == 3);
    CHECK(r.mc.den == 6);
    // Post-run itemsets {X}:56 {Z}:60 {X,Z}:64 against the original 578 total.
    CHECK(r.ius.num == 180);
    CHECK(r.ius.den == 578);
    // Both edits hit T2: utilities 9 (d) and 10 (a) leave the database.
    CHECK(r.dus.num == 118);
    CHECK(r.dus.den == 137);
    CHECK(r.tmr.value() == Rational(1, 8));
}

TEST_CASE("deletion-only runs always keep AC at zero and DUS/IUS at most one") {
    for (std::uint64_t seed = 6000; seed < 6015; ++seed) {
        auto inst = testsupport::make_random_instance(seed);
        const Database& db = inst.bundle.database;
        MiningResult base = mine_clhuis(db, 1);
        if (base.itemsets.empty()) continue;
        auto it = base.itemsets.begin();
        std::advance(it, seed % base.itemsets.size());
        Utility minutil = std::max<Utility>(1, it->second);
        MiningResult mined = mine_clhuis(db, minutil);
        if (mined.itemsets.empty()) continue;
        std::vector<Itemset> clhuis;
        for (const auto& [p, u] : mined.itemsets) clhuis.push_back(p);
        std::vector<Itemset> sensitive{clhuis[(seed / 3) % clhuis.size()]};

        for (Strategy s : {Strategy::MinRF, Strategy::MaxRF, Strategy::BestNSCF}) {
            auto outcome = sanitize(db, minutil, sensitive, clhuis, s);
            MiningResult after = mine_clhuis(outcome.sanitized, minutil);
            SanitizationReport r =
                evaluate_run(sensitive, mined, after, db, outcome.sanitized, outcome.log);
            CHECK(r.ac.value() == Rational(0));
            CHECK(r.hf.value() == Rational(0));
            CHECK(r.dus.value() <= Rational(1));
            CHECK(r.ius.value() <= Rational(1));
            CHECK(r.tmr.value() <= Rational(1));
        }
    }
}
