#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "eqra/closure.hpp"
#include "eqra/relation.hpp"

namespace eqra {

// Unions of atoms that are equivalence relations, in canonical order.
// A union is an equivalence iff its atom set contains the identity atoms,
// is closed under the converse map and under the composition table; the
// result is re-checked bitwise.
std::vector<BinRel> extract_equivalences(const AtomStructure& s,
                                         std::size_t atom_budget = kDefaultAtomBudget);

// Finite lattice of equivalence relations ordered by inclusion.
struct EqLattice {
    std::vector<BinRel> elements;            // canonical order
    std::vector<std::vector<bool>> order;    // order[i][j]: elements[i] ⊆ elements[j]
    std::size_t bottom = 0;
    std::size_t top = 0;

    std::size_t size() const { return elements.size(); }
    std::size_t meet(std::size_t i, std::size_t j) const;
    std::size_t join(std::size_t i, std::size_t j) const;
    // Covering pairs (lower, upper).
    std::vector<std::pair<std::size_t, std::size_t>> hasse() const;
    std::size_t index_of(const BinRel& r) const;  // size() when absent
};

// Meet is intersection and join the transitive closure of the union; both
// must stay inside the set.
EqLattice build_lattice(std::span<const BinRel> eqs);

// m when the lattice is M_m: bottom, top and m >= 1 pairwise incomparable
// middle elements with every pairwise meet bottom and join top.
struct MnShape {
    std::optional<std::size_t> m;
    std::vector<std::size_t> atom_indices;
    bool is_mn() const { return m.has_value(); }
};

MnShape mn_shape(const EqLattice& l);

bool lattices_equal(std::span<const BinRel> a, std::span<const BinRel> b);

}  // namespace eqra
