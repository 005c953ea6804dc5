#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eqra/formula.hpp"
#include "eqra/relation.hpp"
#include "eqra/structure.hpp"

namespace eqra {

// One atomic constraint symbol(left, right). The symbol "=" is equality.
struct PpConstraint {
    std::string left, right, symbol;
    friend bool operator==(const PpConstraint&, const PpConstraint&) = default;
    friend auto operator<=>(const PpConstraint&, const PpConstraint&) = default;
};

using PpQuery = std::vector<PpConstraint>;

inline constexpr const char* kEqualitySymbol = "=";

// {(a,b) : the network with x:=a, y:=b has a solution}. Backtracking with
// smallest-domain-first variable choice.
BinRel pp_evaluate(const PpQuery& query, const Structure& s, const std::string& x,
                   const std::string& y);

// exists <others>. c1 & c2 & ... ; the empty query becomes a tautology in x.
Formula pp_to_formula(const PpQuery& query, const std::string& x, const std::string& y);
std::string to_string(const PpQuery& query);

struct PpBudget {
    std::size_t max_vars = 4;
    std::size_t max_constraints = 6;
};

struct PpSearchResult {
    // Variables are v0 (= x), v1 (= y), v2, ...
    std::optional<PpQuery> query;
    PpBudget budget;
    std::uint64_t networks_examined = 0;
    double estimate = 0;
    bool large_estimate_warning = false;
};

inline constexpr double kPpWarnEstimate = 1e7;
inline constexpr double kPpHardCap = 1e9;

// Exhaustive search over canonical constraint networks within the budget,
// ordered by variable count, then constraint count, then lexicographically.
// An empty `symbols` list means every relation of the structure.
PpSearchResult pp_search(const Structure& s, const BinRel& target, PpBudget budget,
                         std::vector<std::string> symbols = {});

}  // namespace eqra
