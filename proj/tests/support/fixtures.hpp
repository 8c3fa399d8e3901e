// Shared helpers for unit and acceptance tests: golden-example loading,
// itemset construction by name, and small conveniences.
#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "clhide/io.hpp"

namespace testsupport {

inline std::string data_path(const std::string& file) {
    return std::string(CLHIDE_TEST_DATA_DIR) + "/" + file;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// The worked example: eight transactions over leaves a..f with generalized
// items X (over a,b,c via Y), Y (a,b), Z (d,e); f sits directly under the root.
inline clhide::DatasetBundle golden_dataset() {
    std::ifstream txn(data_path("golden_quantity.txt"));
    std::ifstream tax(data_path("golden_taxonomy.txt"));
    std::ifstream prof(data_path("golden_profits.txt"));
    return clhide::load_dataset(txn, clhide::TransactionFormat::Quantity, &tax, &prof);
}

inline clhide::ItemId id_of(const clhide::DatasetBundle& data, const std::string& name) {
    auto id = data.names.find(name);
    if (!id) throw std::runtime_error("no item named " + name);
    return *id;
}

inline clhide::Itemset set_of(const clhide::DatasetBundle& data,
                              std::initializer_list<const char*> names) {
    std::vector<clhide::ItemId> members;
    for (const char* n : names) members.push_back(id_of(data, n));
    return clhide::Itemset::checked(std::move(members), *data.taxonomy);
}

inline std::vector<clhide::Itemset> golden_sensitive(const clhide::DatasetBundle& data) {
    std::ifstream in(data_path("golden_sensitive.txt"));
    std::vector<clhide::Itemset> out;
    for (auto& [p, u] : clhide::parse_itemsets(in, data.names, *data.taxonomy)) out.push_back(p);
    return out;
}

// Reference itemset list of the golden example: every high-utility itemset
// of size one or two at threshold 50 (equivalently, all of them at 55).
inline std::vector<std::pair<clhide::Itemset, clhide::Utility>> golden_table_clhuis(
    const clhide::DatasetBundle& data) {
    std::ifstream in(data_path("golden_clhuis_table.txt"));
    return clhide::parse_itemsets(in, data.names, *data.taxonomy);
}

}  // namespace testsupport
