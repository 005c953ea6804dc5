#pragma once

#include <random>
#include <string>
#include <vector>

#include "eqra/formula.hpp"
#include "eqra/pp.hpp"
#include "eqra/ra_term.hpp"
#include "eqra/relation.hpp"
#include "eqra/structure.hpp"

namespace eqra {

using Rng = std::mt19937_64;

BinRel random_relation(BaseSize n, double density, Rng& rng);
// Structure with the given symbols, random base size in [1, max_n].
Structure random_structure(const std::vector<std::string>& symbols, std::size_t max_n, Rng& rng);
RaTerm random_ra_term(const std::vector<std::string>& symbols, std::size_t depth, Rng& rng);
Formula random_formula(const std::vector<std::string>& vars, const std::vector<std::string>& symbols,
                       std::size_t depth, Rng& rng);
// Constraints over `vars` (which must contain x and y); may use equality.
PpQuery random_pp_query(const std::vector<std::string>& vars, const std::vector<std::string>& symbols,
                        std::size_t max_constraints, Rng& rng);

}  // namespace eqra
