#include "nal/symbols.hpp"

#include <mutex>
#include <unordered_map>

namespace nal {
namespace symbols {

namespace {

struct Table {
    std::mutex mu;
    std::vector<std::string> names;
    std::unordered_map<std::string, int> ids;
    int fresh_counter = 0;
    Table() {
        names.push_back("t");
        ids["t"] = 0;
    }
};

Table& table() {
    static Table t;
    return t;
}

} // namespace

int intern(const std::string& name) {
    Table& t = table();
    std::lock_guard<std::mutex> lock(t.mu);
    auto it = t.ids.find(name);
    if (it != t.ids.end()) return it->second;
    int id = static_cast<int>(t.names.size());
    t.names.push_back(name);
    t.ids[name] = id;
    return id;
}

const std::string& name(int id) {
    Table& t = table();
    std::lock_guard<std::mutex> lock(t.mu);
    return t.names.at(static_cast<size_t>(id));
}

bool lookup(const std::string& name, int* id) {
    Table& t = table();
    std::lock_guard<std::mutex> lock(t.mu);
    auto it = t.ids.find(name);
    if (it == t.ids.end()) return false;
    *id = it->second;
    return true;
}

int fresh(const std::string& hint) {
    Table& t = table();
    std::lock_guard<std::mutex> lock(t.mu);
    std::string nm = "#" + hint + std::to_string(t.fresh_counter++);
    int id = static_cast<int>(t.names.size());
    t.names.push_back(nm);
    t.ids[nm] = id;
    return id;
}

} // namespace symbols
} // namespace nal
