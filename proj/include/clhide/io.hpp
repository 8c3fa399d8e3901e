// Readers and writers for the on-disk formats: transaction databases
// (SPMF utility format or quantity format plus a profit table), taxonomies
// (child,parent lines), itemset lists (`a b #UTIL: 42`) and result reports.
#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "clhide/core.hpp"

namespace clhide {

struct ParseError : Error {
    ParseError(std::string src, std::size_t line_no, const std::string& msg)
        : Error(src + " line " + std::to_string(line_no) + ": " + msg),
          source(std::move(src)),
          line(line_no),
          message(msg) {}
    std::string source;  // which input stream: transactions/taxonomy/profits/itemsets
    std::size_t line;
    std::string message;  // without the source/line prefix
};

// Bidirectional item-name <-> dense id map. Ids are assigned in first-seen
// order (taxonomy file, then transactions, then profits), so identical
// inputs always yield identical ids.
class NameMap {
  public:
    ItemId intern(const std::string& name);
    std::optional<ItemId> find(const std::string& name) const;
    const std::string& name(ItemId id) const { return names_.at(id); }
    std::size_t size() const { return names_.size(); }

  private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, ItemId> ids_;
};

enum class TransactionFormat {
    Utility,   // `i1 i2 .. ik:TU:u1 u2 .. uk`, unit profits fixed at 1
    Quantity,  // `i1 i2 .. ik:q1 q2 .. qk`, profits from a separate table
};

struct DatasetBundle {
    Database database;
    std::shared_ptr<const Taxonomy> taxonomy;
    NameMap names;
};

// Assembles a database from its component streams. The taxonomy and profit
// streams may be null: items missing from the taxonomy become leaves under
// the virtual root; profits are required (and only allowed) in quantity
// format. Transactions are numbered by line, starting at 1.
DatasetBundle load_dataset(std::istream& transactions, TransactionFormat format,
                           std::istream* taxonomy, std::istream* profits);

// `i1 i2 .. ik #UTIL: u` per line; the itemset invariant is enforced.
std::vector<std::pair<Itemset, Utility>> parse_itemsets(std::istream& in, const NameMap& names,
                                                        const Taxonomy& tax);

// Transactions emptied by sanitization are omitted; TU fields are recomputed.
void write_transactions(std::ostream& out, const Database& db, TransactionFormat format,
                        const NameMap& names);
void write_taxonomy(std::ostream& out, const Taxonomy& tax, const NameMap& names);
void write_profits(std::ostream& out, const Database& db, const NameMap& names);
void write_itemsets(std::ostream& out, const std::map<Itemset, Utility>& itemsets,
                    const NameMap& names);

}  // namespace clhide
