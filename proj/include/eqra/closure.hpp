#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eqra/ra_term.hpp"
#include "eqra/relation.hpp"

namespace eqra {

// Set of atom indices as a bit mask; bit i is atom i.
using AtomSet = std::uint64_t;
inline constexpr std::size_t kMaxAtoms = 64;
inline constexpr std::size_t kDefaultAtomBudget = 24;

inline bool has_atom(AtomSet s, std::size_t i) { return (s >> i) & 1u; }
inline AtomSet atom_bit(std::size_t i) { return AtomSet{1} << i; }
std::vector<std::size_t> atom_indices(AtomSet s);

// The relation algebra generated by a set of relations, as the partition of
// the pair space into its atoms. Atoms are numbered by their smallest pair in
// row-major order.
struct AtomStructure {
    std::size_t n = 0;
    std::vector<std::uint32_t> atom_of;          // n*n, row-major pair -> atom
    std::vector<BinRel> atoms;
    std::vector<std::vector<AtomSet>> comp_table;  // atoms covering atoms[i];atoms[j]
    std::vector<std::size_t> converse_map;
    AtomSet identity_atoms = 0;
    std::vector<BinRel> generators;
    // RA terms over the generator names, one per atom; only filled when
    // requested in ClosureOptions.
    std::vector<RaTerm> atom_terms;

    std::size_t atom_count() const { return atoms.size(); }
    AtomSet all_atoms() const;
    BinRel union_of(AtomSet set) const;
};

// Boolean atoms of the field of sets generated by the generators and 1'.
struct BooleanAtoms {
    std::size_t n = 0;
    std::vector<std::uint32_t> atom_of;
    std::vector<BinRel> atoms;
    AtomSet identity_atoms = 0;
    std::vector<BinRel> generators;

    std::size_t atom_count() const { return atoms.size(); }
};

struct ClosureOptions {
    std::size_t atom_budget = kDefaultAtomBudget;
    bool track_terms = false;
    // Symbols for the generators in atom terms; defaults to g0, g1, ...
    std::vector<std::string> generator_names;
};

AtomStructure ra_closure(std::span<const BinRel> generators, const ClosureOptions& options = {});
BooleanAtoms ba_closure(std::span<const BinRel> generators, const ClosureOptions& options = {});

// Atom set whose union is r, or nullopt when r is outside the closure.
std::optional<AtomSet> decompose(const AtomStructure& s, const BinRel& r);

const std::vector<AtomSet>& atom_composition_row(const AtomStructure& s, std::size_t i);

// Builds a structure from an arbitrary partition (atom_of values must be
// 0..k-1 and numbered by first pair). comp_table lists every atom meeting
// the composition; no closure is enforced. Used to test invariants.
AtomStructure structure_from_partition(std::span<const BinRel> generators,
                                       std::vector<std::uint32_t> atom_of);

// Human-readable list of violated AtomStructure invariants; empty when valid.
std::vector<std::string> invariant_violations(const AtomStructure& s);

// Membership view of the closed family: a relation belongs iff it is a
// union of atoms.
class ClosedFamily {
public:
    explicit ClosedFamily(AtomStructure structure) : s_(std::move(structure)) {}
    const AtomStructure& structure() const { return s_; }
    bool contains(const BinRel& r) const { return decompose(s_, r).has_value(); }
    BinRel member(AtomSet set) const { return s_.union_of(set); }
    double size() const;  // 2^atoms

private:
    AtomStructure s_;
};

}  // namespace eqra
