#include "clhide/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace clhide {

namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::int64_t parse_int(const std::string& tok, const char* src, std::size_t line_no) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(src, line_no, "expected an integer, got '" + tok + "'");
    return value;
}

bool skippable(const std::string& line) {
    auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string::npos || line[pos] == '#' || line[pos] == '@';
}

std::string strip_cr(std::string line) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    return line;
}

struct RawTransaction {
    std::vector<std::string> items;
    std::vector<Quantity> quantities;
};

std::vector<RawTransaction> parse_transaction_lines(std::istream& in, TransactionFormat format) {
    std::vector<RawTransaction> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (skippable(line)) continue;

        std::vector<std::string> fields;
        std::size_t start = 0;
        for (std::size_t pos; (pos = line.find(':', start)) != std::string::npos; start = pos + 1)
            fields.push_back(line.substr(start, pos - start));
        fields.push_back(line.substr(start));

        const std::size_t expected = format == TransactionFormat::Utility ? 3 : 2;
        if (fields.size() != expected)
            throw ParseError("transactions", line_no,
                             "expected " + std::to_string(expected - 1) +
                                 " ':' separator(s) in transaction line");

        RawTransaction t;
        t.items = split_ws(fields[0]);
        if (t.items.empty()) throw ParseError("transactions", line_no, "transaction has no items");
        for (std::size_t i = 0; i < t.items.size(); ++i)
            for (std::size_t j = i + 1; j < t.items.size(); ++j)
                if (t.items[i] == t.items[j])
                    throw ParseError("transactions", line_no,
                                     "duplicate item '" + t.items[i] + "' in transaction");

        const std::string& value_field = fields.back();
        for (const std::string& tok : split_ws(value_field)) {
            Quantity q = parse_int(tok, "transactions", line_no);
            if (q <= 0)
                throw ParseError("transactions", line_no, "non-positive quantity/utility " + tok);
            t.quantities.push_back(q);
        }
        if (t.quantities.size() != t.items.size())
            throw ParseError("transactions", line_no, "item count does not match value count");

        if (format == TransactionFormat::Utility) {
            Utility declared = parse_int(fields[1], "transactions", line_no);
            Utility sum = 0;
            for (Quantity q : t.quantities) sum += q;
            if (declared != sum)
                throw ParseError("transactions", line_no,
                                 "declared TU " + std::to_string(declared) +
                                     " does not equal utility sum " + std::to_string(sum));
        }
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace

ItemId NameMap::intern(const std::string& name) {
    auto it = ids_.find(name);
    if (it != ids_.end()) return it->second;
    ItemId id = static_cast<ItemId>(names_.size());
    names_.push_back(name);
    ids_.emplace(name, id);
    return id;
}

std::optional<ItemId> NameMap::find(const std::string& name) const {
    auto it = ids_.find(name);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

DatasetBundle load_dataset(std::istream& transactions, TransactionFormat format,
                           std::istream* taxonomy, std::istream* profits) {
    NameMap names;
    std::vector<std::pair<ItemId, ItemId>> links;  // (child, parent)

    if (taxonomy) {
        std::string line;
        std::size_t line_no = 0;
        std::unordered_map<ItemId, std::size_t> child_seen;
        while (std::getline(*taxonomy, line)) {
            ++line_no;
            line = strip_cr(line);
            if (skippable(line)) continue;
            auto comma = line.find(',');
            if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
                throw ParseError("taxonomy", line_no, "expected 'child,parent'");
            std::string child = line.substr(0, comma);
            std::string par = line.substr(comma + 1);
            if (child.empty() || par.empty())
                throw ParseError("taxonomy", line_no, "empty item name");
            if (child == par)
                throw ParseError("taxonomy", line_no, "item '" + child + "' is its own parent");
            ItemId c = names.intern(child);
            ItemId p = names.intern(par);
            if (auto it = child_seen.find(c); it != child_seen.end())
                throw ParseError("taxonomy", line_no,
                                 "item '" + child + "' already has a parent (line " +
                                     std::to_string(it->second) + ")");
            child_seen.emplace(c, line_no);
            links.emplace_back(c, p);
        }
    }

    auto raw = parse_transaction_lines(transactions, format);
    for (const RawTransaction& t : raw)
        for (const std::string& item : t.items) names.intern(item);

    std::vector<std::pair<ItemId, Utility>> profit_entries;
    if (format == TransactionFormat::Quantity) {
        if (!profits) throw Error("quantity format requires a profit table");
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(*profits, line)) {
            ++line_no;
            line = strip_cr(line);
            if (skippable(line)) continue;
            auto comma = line.find(',');
            if (comma == std::string::npos)
                throw ParseError("profits", line_no, "expected 'item,profit'");
            std::string item = line.substr(0, comma);
            Utility p = parse_int(line.substr(comma + 1), "profits", line_no);
            if (p <= 0) throw ParseError("profits", line_no, "unit profit must be positive");
            profit_entries.emplace_back(names.intern(item), p);
        }
    } else if (profits) {
        throw Error("utility format carries its own utilities; no profit table expected");
    }

    std::vector<ItemId> parent(names.size(), kRoot);
    for (auto [c, p] : links) parent[c] = p;
    auto tax = std::make_shared<const Taxonomy>(std::move(parent));  // throws on cycles

    std::vector<Utility> profit(names.size(), 0);
    if (format == TransactionFormat::Utility) {
        for (ItemId v = 0; v < names.size(); ++v)
            if (tax->is_leaf(v)) profit[v] = 1;
    } else {
        for (auto [v, p] : profit_entries) {
            if (tax->is_generalized(v))
                throw Error("profit given for generalized item '" + names.name(v) + "'");
            profit[v] = p;
        }
    }

    Database db(tax, std::move(profit));
    Tid tid = 0;
    for (const RawTransaction& t : raw) {
        ++tid;
        std::vector<Entry> entries;
        for (std::size_t i = 0; i < t.items.size(); ++i) {
            ItemId v = *names.find(t.items[i]);
            if (tax->is_generalized(v))
                throw Error("transaction " + std::to_string(tid) + " contains generalized item '" +
                            t.items[i] + "'");
            if (format == TransactionFormat::Quantity && db.profit(v) == 0)
                throw Error("no unit profit for item '" + t.items[i] + "'");
            entries.push_back({v, t.quantities[i]});
        }
        std::sort(entries.begin(), entries.end(),
                  [](const Entry& a, const Entry& b) { return a.item < b.item; });
        db.append_transaction(tid, std::move(entries));
    }

    return DatasetBundle{std::move(db), tax, std::move(names)};
}

std::vector<std::pair<Itemset, Utility>> parse_itemsets(std::istream& in, const NameMap& names,
                                                        const Taxonomy& tax) {
    std::vector<std::pair<Itemset, Utility>> out;
    std::string line;
    std::size_t line_no = 0;
    const std::string marker = "#UTIL:";
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (skippable(line)) continue;
        auto pos = line.find(marker);
        if (pos == std::string::npos)
            throw ParseError("itemsets", line_no, "missing '#UTIL:' marker");
        auto items = split_ws(line.substr(0, pos));
        auto tail = split_ws(line.substr(pos + marker.size()));
        if (items.empty()) throw ParseError("itemsets", line_no, "itemset line has no items");
        if (tail.size() != 1)
            throw ParseError("itemsets", line_no, "expected a single utility value");
        Utility u = parse_int(tail[0], "itemsets", line_no);
        std::vector<ItemId> members;
        for (const std::string& name : items) {
            auto id = names.find(name);
            if (!id) throw ParseError("itemsets", line_no, "unknown item '" + name + "'");
            members.push_back(*id);
        }
        try {
            out.emplace_back(Itemset::checked(std::move(members), tax), u);
        } catch (const Error& e) {
            throw ParseError("itemsets", line_no, e.what());
        }
    }
    return out;
}

void write_transactions(std::ostream& out, const Database& db, TransactionFormat format,
                        const NameMap& names) {
    for (const Transaction& t : db.transactions()) {
        if (t.empty()) continue;  // emptied by sanitization
        std::string items, values;
        Utility tu = 0;
        for (const Entry& e : t.entries()) {
            if (!items.empty()) {
                items += ' ';
                values += ' ';
            }
            items += names.name(e.item);
            if (format == TransactionFormat::Utility) {
                Utility u = e.quantity * db.profit(e.item);
                tu += u;
                values += std::to_string(u);
            } else {
                values += std::to_string(e.quantity);
            }
        }
        out << items << ':';
        if (format == TransactionFormat::Utility) out << tu << ':';
        out << values << '\n';
    }
}

void write_taxonomy(std::ostream& out, const Taxonomy& tax, const NameMap& names) {
    for (ItemId v = 0; v < tax.item_count(); ++v)
        if (auto p = tax.parent(v)) out << names.name(v) << ',' << names.name(*p) << '\n';
}

void write_profits(std::ostream& out, const Database& db, const NameMap& names) {
    for (ItemId v = 0; v < db.profits().size(); ++v)
        if (db.taxonomy().is_leaf(v) && db.profit(v) > 0)
            out << names.name(v) << ',' << db.profit(v) << '\n';
}

void write_itemsets(std::ostream& out, const std::map<Itemset, Utility>& itemsets,
                    const NameMap& names) {
    for (const auto& [p, u] : itemsets) {
        std::string row;
        for (ItemId v : p.members()) {
            if (!row.empty()) row += ' ';
            row += names.name(v);
        }
        out << row << " #UTIL: " << u << '\n';
    }
}

}  // namespace clhide
