#include "eqra/eqlattice.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "eqra/errors.hpp"

namespace eqra {

namespace {

AtomSet equivalence_closure(const AtomStructure& s, AtomSet set) {
    set |= s.identity_atoms;
    for (;;) {
        AtomSet next = set;
        for (std::size_t i : atom_indices(set)) {
            next |= atom_bit(s.converse_map[i]);
            for (std::size_t j : atom_indices(set)) next |= s.comp_table[i][j];
        }
        if (next == set) return set;
        set = next;
    }
}

void canonicalize(std::vector<BinRel>& rels) {
    std::sort(rels.begin(), rels.end());
    rels.erase(std::unique(rels.begin(), rels.end()), rels.end());
}

}  // namespace

std::vector<BinRel> extract_equivalences(const AtomStructure& s, std::size_t atom_budget) {
    if (s.atom_count() > std::min(atom_budget, kMaxAtoms))
        throw AtomBudgetExceeded(s.atom_count(), atom_budget);
    // Closed atom sets form a closure system; every member is reachable from
    // the least one by adding one atom at a time.
    std::set<AtomSet> seen;
    std::vector<AtomSet> frontier{equivalence_closure(s, 0)};
    seen.insert(frontier.front());
    while (!frontier.empty()) {
        AtomSet current = frontier.back();
        frontier.pop_back();
        for (std::size_t i = 0; i < s.atom_count(); ++i) {
            if (has_atom(current, i)) continue;
            AtomSet next = equivalence_closure(s, current | atom_bit(i));
            if (seen.insert(next).second) frontier.push_back(next);
        }
    }
    std::vector<BinRel> out;
    for (AtomSet set : seen) {
        BinRel r = s.union_of(set);
        if (!is_equivalence(r))
            throw std::logic_error("closed atom set is not an equivalence relation");
        out.push_back(std::move(r));
    }
    canonicalize(out);
    return out;
}

std::size_t EqLattice::index_of(const BinRel& r) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), r);
    if (it != elements.end() && *it == r) return static_cast<std::size_t>(it - elements.begin());
    return elements.size();
}

std::size_t EqLattice::meet(std::size_t i, std::size_t j) const {
    return index_of(intersect(elements.at(i), elements.at(j)));
}

std::size_t EqLattice::join(std::size_t i, std::size_t j) const {
    return index_of(transitive_closure(unite(elements.at(i), elements.at(j))));
}

std::vector<std::pair<std::size_t, std::size_t>> EqLattice::hasse() const {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j) {
            if (i == j || !order[i][j]) continue;
            bool covers = true;
            for (std::size_t k = 0; k < size() && covers; ++k)
                if (k != i && k != j && order[i][k] && order[k][j]) covers = false;
            if (covers) edges.emplace_back(i, j);
        }
    return edges;
}

EqLattice build_lattice(std::span<const BinRel> eqs) {
    if (eqs.empty()) throw Error("lattice needs at least one element");
    for (std::size_t i = 0; i < eqs.size(); ++i) {
        require_same_size(eqs.front(), eqs[i]);
        if (!is_equivalence(eqs[i])) throw NotAnEquivalence(i);
    }
    EqLattice l;
    l.elements.assign(eqs.begin(), eqs.end());
    canonicalize(l.elements);
    const std::size_t k = l.size();
    l.order.assign(k, std::vector<bool>(k, false));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) l.order[i][j] = l.elements[i].subset_of(l.elements[j]);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            if (l.meet(i, j) == k) throw NotMeetClosed(i, j);
            if (l.join(i, j) == k) throw NotJoinClosed(i, j);
        }
    for (std::size_t i = 0; i < k; ++i) {
        bool below_all = true, above_all = true;
        for (std::size_t j = 0; j < k; ++j) {
            below_all = below_all && l.order[i][j];
            above_all = above_all && l.order[j][i];
        }
        if (below_all) l.bottom = i;
        if (above_all) l.top = i;
    }
    return l;
}

MnShape mn_shape(const EqLattice& l) {
    MnShape shape;
    if (l.size() < 3) return shape;
    std::vector<std::size_t> middle;
    for (std::size_t i = 0; i < l.size(); ++i)
        if (i != l.bottom && i != l.top) middle.push_back(i);
    for (std::size_t a = 0; a < middle.size(); ++a)
        for (std::size_t b = a + 1; b < middle.size(); ++b) {
            std::size_t i = middle[a], j = middle[b];
            if (l.order[i][j] || l.order[j][i]) return shape;
            if (l.meet(i, j) != l.bottom || l.join(i, j) != l.top) return shape;
        }
    shape.m = middle.size();
    shape.atom_indices = std::move(middle);
    return shape;
}

bool lattices_equal(std::span<const BinRel> a, std::span<const BinRel> b) {
    for (const auto& r : a)
        for (const auto& s : b) require_same_size(r, s);
    std::vector<BinRel> x(a.begin(), a.end()), y(b.begin(), b.end());
    canonicalize(x);
    canonicalize(y);
    return x == y;
}

}  // namespace eqra
