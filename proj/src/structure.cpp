#include "eqra/structure.hpp"

#include <cctype>

#include "eqra/errors.hpp"

namespace eqra {

bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

void Structure::add(const std::string& symbol, BinRel r) {
    if (!is_identifier(symbol)) throw Error("invalid relation symbol '" + symbol + "'");
    if (r.size() != size()) throw SizeMismatch(size(), r.size());
    relations_.insert_or_assign(symbol, std::move(r));
}

const BinRel& Structure::at(const std::string& symbol) const {
    auto it = relations_.find(symbol);
    if (it == relations_.end()) throw UnknownSymbol(symbol);
    return it->second;
}

}  // namespace eqra
