#pragma once

#include <map>
#include <string>

#include "eqra/relation.hpp"

namespace eqra {

// A finite set with named binary relations.
class Structure {
public:
    explicit Structure(BaseSize n) : n_(n) {}

    BaseSize base() const { return n_; }
    std::size_t size() const { return n_.value(); }

    // Throws SizeMismatch if r lives on another base set.
    void add(const std::string& symbol, BinRel r);
    const BinRel& at(const std::string& symbol) const;  // UnknownSymbol
    bool has(const std::string& symbol) const { return relations_.count(symbol) != 0; }
    const std::map<std::string, BinRel>& relations() const { return relations_; }

private:
    BaseSize n_;
    std::map<std::string, BinRel> relations_;
};

bool is_identifier(const std::string& s);

}  // namespace eqra
