#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "clhide/miner.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"
#include "support/random_instance.hpp"

using namespace clhide;
using testsupport::golden_dataset;
using testsupport::set_of;

TEST_CASE("worked example at minutil 50") {
    auto data = golden_dataset();
    MiningResult mined = mine_clhuis(data.database, 50);

    // The reference list plus {X,d,e}: T2 contributes 10+9+2 and T3
    // contributes 22+3+6, so its utility is 52 >= 50.
    std::map<Itemset, Utility> expected;
    for (auto& [p, u] : testsupport::golden_table_clhuis(data)) expected.emplace(p, u);
    expected.emplace(set_of(data, {"X", "d", "e"}), 52);

    CHECK(mined.itemsets == expected);
    CHECK(mined.stats.candidates > 0);
}

TEST_CASE("worked example at minutil 55 matches the reference list exactly") {
    auto data = golden_dataset();
    MiningResult mined = mine_clhuis(data.database, 55);
    std::map<Itemset, Utility> expected;
    for (auto& [p, u] : testsupport::golden_table_clhuis(data)) expected.emplace(p, u);
    CHECK(mined.itemsets == expected);
}

TEST_CASE("minutil 0 yields every supported itemset") {
    auto data = golden_dataset();
    MiningResult mined = mine_clhuis(data.database, 0);
    CHECK(mined.itemsets == testsupport::oracle_mine(data.database, 0));
    CHECK(mined.itemsets.count(set_of(data, {"f"})) == 1);
    CHECK(mined.itemsets.count(set_of(data, {"X", "Z", "f"})) == 0);  // empty support
}

TEST_CASE("gwu sums TU over supporting transactions") {
    auto data = golden_dataset();
    // {X} is in T1,T2,T3,T5,T7,T8: 9+21+31+9+13+15.
    CHECK(gwu(data.database, set_of(data, {"X"})) == 98);
    CHECK(gwu(data.database, set_of(data, {"f"})) == 21);  // T6 only
    for (auto& [p, u] : testsupport::golden_table_clhuis(data))
        CHECK(gwu(data.database, p) >= u);  // the bound dominates the utility
    CHECK_THROWS_AS(gwu(data.database, Itemset{}), Error);
}

TEST_CASE("gwu of a prefix bounds the utility of every extension") {
    for (std::uint64_t seed = 300; seed < 310; ++seed) {
        auto inst = testsupport::make_random_instance(seed, 10);
        const Database& db = inst.bundle.database;
        const Taxonomy& tax = db.taxonomy();
        auto rank = [&](ItemId v) { return std::pair(tax.level(v), v); };
        for (auto& [q, uq] : testsupport::oracle_mine(db, 0)) {
            std::vector<ItemId> sorted = q.members();
            std::sort(sorted.begin(), sorted.end(),
                      [&](ItemId a, ItemId b) { return rank(a) < rank(b); });
            std::vector<ItemId> prefix;
            for (ItemId v : sorted) {
                prefix.push_back(v);
                std::vector<ItemId> m = prefix;
                std::sort(m.begin(), m.end());
                CHECK(gwu(db, Itemset::unchecked(m)) >= uq);
            }
        }
    }
}

TEST_CASE("miner equals the exhaustive oracle on random instances") {
    for (std::uint64_t seed = 1000; seed < 1100; ++seed) {
        auto inst = testsupport::make_random_instance(seed, 10);
        const Database& db = inst.bundle.database;
        Utility total = db.total_utility();
        Utility minutil = total == 0 ? 0 : static_cast<Utility>(seed * 37 % (total + 2));
        CAPTURE(seed);
        CAPTURE(minutil);
        CHECK(mine_clhuis(db, minutil).itemsets == testsupport::oracle_mine(db, minutil));
    }
}

TEST_CASE("every mined itemset satisfies the structural invariant") {
    for (std::uint64_t seed = 2000; seed < 2010; ++seed) {
        auto inst = testsupport::make_random_instance(seed, 10);
        MiningResult mined = mine_clhuis(inst.bundle.database, 5);
        for (const auto& [p, u] : mined.itemsets) {
            CHECK_NOTHROW(Itemset::checked(p.members(), inst.bundle.database.taxonomy()));
            CHECK(u >= 5);
        }
    }
}

TEST_CASE("a threshold above every utility mines nothing") {
    auto data = golden_dataset();
    MiningResult mined = mine_clhuis(data.database, 1000);
    CHECK(mined.itemsets.empty());
}

TEST_CASE("negative minutil is rejected") {
    auto data = golden_dataset();
    CHECK_THROWS_AS(mine_clhuis(data.database, -1), Error);
}
