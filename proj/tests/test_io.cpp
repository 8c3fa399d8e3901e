#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "clhide/io.hpp"
#include "clhide/miner.hpp"
#include "support/fixtures.hpp"
#include "support/random_instance.hpp"

using namespace clhide;
using testsupport::golden_dataset;
using testsupport::id_of;
using testsupport::set_of;

namespace {

DatasetBundle load_utility(const std::string& text) {
    std::istringstream in(text);
    return load_dataset(in, TransactionFormat::Utility, nullptr, nullptr);
}

std::size_t line_count(const std::string& s) {
    std::size_t n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

}  // namespace

TEST_CASE("utility format line becomes quantities with unit profits") {
    auto data = load_utility("a b d:9:5 1 3\n");
    const Database& db = data.database;
    REQUIRE(db.size() == 1);
    const Transaction& t = db.transaction(0);
    CHECK(t.tid() == 1);
    CHECK(t.tu() == 9);
    CHECK(t.quantity_of(id_of(data, "a")) == 5);
    CHECK(t.quantity_of(id_of(data, "b")) == 1);
    CHECK(t.quantity_of(id_of(data, "d")) == 3);
    CHECK(db.profit(id_of(data, "a")) == 1);
}

TEST_CASE("empty stream parses to an empty database") {
    auto data = load_utility("");
    CHECK(data.database.size() == 0);
}

TEST_CASE("transaction parse errors") {
    CHECK_THROWS_AS(load_utility("a a:10:5 5\n"), ParseError);      // duplicate item
    CHECK_THROWS_AS(load_utility("a b:10:5 4\n"), ParseError);      // declared TU mismatch
    CHECK_THROWS_AS(load_utility("a b:9:9\n"), ParseError);         // count mismatch
    CHECK_THROWS_AS(load_utility("a b:5:6 -1\n"), ParseError);      // non-positive utility
    CHECK_THROWS_AS(load_utility("a b:5 5\n"), ParseError);         // missing TU field
    CHECK_THROWS_AS(load_utility("a b:x:2 3\n"), ParseError);       // non-numeric
    try {
        load_utility("a:1:1\nb b:4:2 2\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.source == "transactions");
    }
}

TEST_CASE("taxonomy parsing builds the worked example") {
    auto data = golden_dataset();
    const Taxonomy& tax = *data.taxonomy;
    CHECK(tax.item_count() == 9);
    CHECK(tax.is_generalized(id_of(data, "X")));
    CHECK(tax.is_leaf(id_of(data, "f")));
    CHECK(!tax.parent(id_of(data, "f")));  // unlisted item lands under the root
    CHECK(tax.parent(id_of(data, "a")) == id_of(data, "Y"));
    CHECK(tax.parent(id_of(data, "Y")) == id_of(data, "X"));
}

TEST_CASE("missing or empty taxonomy yields a flat forest") {
    std::istringstream txn("a b:7:3 4\n");
    auto data = load_dataset(txn, TransactionFormat::Utility, nullptr, nullptr);
    CHECK(data.taxonomy->item_count() == 2);
    for (ItemId v : {id_of(data, "a"), id_of(data, "b")}) {
        CHECK(data.taxonomy->is_leaf(v));
        CHECK(data.taxonomy->level(v) == 1);
    }
    std::istringstream txn2("a b:7:3 4\n"), empty_tax("");
    auto data2 = load_dataset(txn2, TransactionFormat::Utility, &empty_tax, nullptr);
    CHECK(data2.taxonomy->root_children().size() == 2);
}

TEST_CASE("taxonomy input errors") {
    auto parse_tax = [](const std::string& tax_text) {
        std::istringstream txn("a:1:1\n");
        std::istringstream tax(tax_text);
        return load_dataset(txn, TransactionFormat::Utility, &tax, nullptr);
    };
    CHECK_THROWS_AS(parse_tax("X,Y\nY,X\n"), Error);     // cycle
    CHECK_THROWS_AS(parse_tax("a,X\na,Y\n"), ParseError);  // two parents
    CHECK_THROWS_AS(parse_tax("a,a\n"), ParseError);        // self parent
    CHECK_THROWS_AS(parse_tax("a,X,Y\n"), ParseError);      // malformed line
}

TEST_CASE("quantity format needs profits covering the database") {
    std::istringstream txn("a b:1 2\n");
    std::istringstream prof("a,5\n");
    CHECK_THROWS_WITH_AS(load_dataset(txn, TransactionFormat::Quantity, nullptr, &prof),
                         doctest::Contains("no unit profit"), Error);
    std::istringstream txn2("a:1\n");
    CHECK_THROWS_AS(load_dataset(txn2, TransactionFormat::Quantity, nullptr, nullptr), Error);
}

TEST_CASE("transactions may not contain generalized items") {
    std::istringstream txn("a X:3:1 2\n");
    std::istringstream tax("a,X\n");
    CHECK_THROWS_AS(load_dataset(txn, TransactionFormat::Utility, &tax, nullptr), Error);
}

TEST_CASE("itemset file parsing") {
    auto data = golden_dataset();
    {
        std::istringstream in("X d #UTIL: 62\n");
        auto sets = parse_itemsets(in, data.names, *data.taxonomy);
        REQUIRE(sets.size() == 1);
        CHECK(sets[0].first == set_of(data, {"X", "d"}));
        CHECK(sets[0].second == 62);
    }
    {
        std::istringstream in("X a #UTIL: 1\n");  // a is a descendant of X
        CHECK_THROWS_AS(parse_itemsets(in, data.names, *data.taxonomy), ParseError);
    }
    {
        std::istringstream in("X q #UTIL: 1\n");
        CHECK_THROWS_AS(parse_itemsets(in, data.names, *data.taxonomy), ParseError);
    }
    {
        std::istringstream in("");
        CHECK(parse_itemsets(in, data.names, *data.taxonomy).empty());
    }
}

TEST_CASE("write omits emptied transactions and recomputes TU") {
    auto data = golden_dataset();
    {
        std::ostringstream out;
        write_transactions(out, data.database, TransactionFormat::Quantity, data.names);
        CHECK(line_count(out.str()) == 8);
    }
    Database edited = data.database;
    for (ItemId v : {id_of(data, "a"), id_of(data, "b"), id_of(data, "d")})
        edited.remove_entry(0, v);  // empty out T1
    edited.reduce_entry(5, id_of(data, "d"), 2);  // q(d, T6): 5 -> 3
    {
        std::ostringstream out;
        write_transactions(out, edited, TransactionFormat::Quantity, data.names);
        std::string text = out.str();
        CHECK(line_count(text) == 7);
        CHECK(text.find("d e f:3 2 2") != std::string::npos);
    }
    {
        std::ostringstream out;
        write_transactions(out, edited, TransactionFormat::Utility, data.names);
        CHECK(out.str().find("d e f:15:9 4 2") != std::string::npos);  // TU recomputed
    }
}

TEST_CASE("parse-write-parse is semantically idempotent") {
    for (std::uint64_t seed = 100; seed < 125; ++seed) {
        auto inst = testsupport::make_random_instance(seed);
        const Database& db = inst.bundle.database;

        std::ostringstream txn_out, tax_out, prof_out;
        write_transactions(txn_out, db, TransactionFormat::Quantity, inst.bundle.names);
        write_taxonomy(tax_out, db.taxonomy(), inst.bundle.names);
        write_profits(prof_out, db, inst.bundle.names);

        std::istringstream txn_in(txn_out.str()), tax_in(tax_out.str()),
            prof_in(prof_out.str());
        auto again = load_dataset(txn_in, TransactionFormat::Quantity, &tax_in, &prof_in);

        REQUIRE(again.database.size() == db.size());
        for (std::size_t i = 0; i < db.size(); ++i) {
            const Transaction& a = db.transaction(i);
            const Transaction& b = again.database.transaction(i);
            CHECK(a.tu() == b.tu());
            REQUIRE(a.entries().size() == b.entries().size());
            for (const Entry& e : a.entries()) {
                ItemId mapped = *again.names.find(inst.bundle.names.name(e.item));
                CHECK(b.quantity_of(mapped) == e.quantity);
            }
        }
    }
}

TEST_CASE("both formats of the same data agree on every itemset utility") {
    auto data = golden_dataset();
    std::istringstream txt(testsupport::slurp(testsupport::data_path("golden_utility.txt")));
    std::istringstream tax(testsupport::slurp(testsupport::data_path("golden_taxonomy.txt")));
    auto util_data = load_dataset(txt, TransactionFormat::Utility, &tax, nullptr);

    auto mined_q = mine_clhuis(data.database, 1);
    auto mined_u = mine_clhuis(util_data.database, 1);
    REQUIRE(mined_q.itemsets.size() == mined_u.itemsets.size());
    for (const auto& [p, u] : mined_q.itemsets) {
        // remap ids by name: the two files may intern in different orders
        std::vector<ItemId> members;
        for (ItemId v : p.members()) members.push_back(*util_data.names.find(data.names.name(v)));
        Itemset q = Itemset::checked(std::move(members), *util_data.taxonomy);
        auto it = mined_u.itemsets.find(q);
        REQUIRE(it != mined_u.itemsets.end());
        CHECK(it->second == u);
    }
}
