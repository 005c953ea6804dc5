#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eqra/certificate.hpp"
#include "eqra/relation.hpp"

namespace eqra {

// Operation table of arity 0..3; table index = sum of arg_i * n^(k-1-i).
struct Operation {
    std::string name;
    std::size_t arity = 0;
    std::vector<Element> table;

    Element apply(std::span<const Element> args, std::size_t n) const;
};

class FinAlgebra {
public:
    static constexpr std::size_t kMaxArity = 3;

    // Validates arities, table sizes and ranges.
    FinAlgebra(BaseSize n, std::vector<Operation> ops);

    BaseSize base() const { return n_; }
    std::size_t size() const { return n_.value(); }
    const std::vector<Operation>& operations() const { return ops_; }

private:
    BaseSize n_;
    std::vector<Operation> ops_;
};

// Related argument tuples whose images are unrelated.
struct Incompatibility {
    std::size_t operation = 0;
    std::vector<Element> left, right;
    Pair image;
};

std::optional<Incompatibility> find_incompatibility(const BinRel& r, const FinAlgebra& a);
bool is_compatible(const BinRel& r, const FinAlgebra& a);

inline constexpr std::size_t kMaxCongruenceBase = 10;

// All congruences, by enumerating every partition of the base set.
std::vector<BinRel> congruences(const FinAlgebra& a);

// Certifies that no equivalence outside the generated lattice is pp-definable
// from it: generators are compatible and they are exactly Con(A).
Certificate ppf_eq_certificate(std::span<const BinRel> generators, const FinAlgebra& a);

}  // namespace eqra
