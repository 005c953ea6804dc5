#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "eqra/algebra.hpp"
#include "eqra/closure.hpp"
#include "eqra/eqlattice.hpp"
#include "eqra/relation.hpp"
#include "eqra/structure.hpp"

namespace eqra {

// Text: first line n, then either "a b" pair lines or n matrix rows of
// 0/1 (written "0110" or "0 1 1 0"). JSON: {"n": int, "pairs": [[a,b],...]}.
// Throws FormatError with line/column.
BinRel parse_relation(const std::string& text);
BinRel read_relation(std::istream& in);
// Path "-" reads standard input.
BinRel load_relation(const std::string& path);

std::string format_relation(const BinRel& r);  // pair-list text form
nlohmann::ordered_json relation_json(const BinRel& r);
BinRel relation_from_json(const nlohmann::ordered_json& j);

// {"n": int, "relations": {"NAME": [[a,b],...] | {"pairs": ...}, ...}}
Structure structure_from_json(const nlohmann::ordered_json& j);
Structure load_structure(const std::string& path);

// {"n": int, "ops": [{"name": str, "arity": k, "table": nested array}]}
FinAlgebra algebra_from_json(const nlohmann::ordered_json& j);
FinAlgebra load_algebra(const std::string& path);

nlohmann::ordered_json atom_structure_json(const AtomStructure& s);
std::string atom_structure_text(const AtomStructure& s);
nlohmann::ordered_json lattice_json(const EqLattice& l, const MnShape& shape);

std::string read_file(const std::string& path);

}  // namespace eqra
