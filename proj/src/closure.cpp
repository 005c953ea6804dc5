#include "eqra/closure.hpp"

#include <bit>
#include <cmath>
#include <map>

#include "eqra/errors.hpp"

namespace eqra {

std::vector<std::size_t> atom_indices(AtomSet s) {
    std::vector<std::size_t> out;
    for (; s; s &= s - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(s)));
    return out;
}

AtomSet AtomStructure::all_atoms() const {
    return atoms.size() == 64 ? ~AtomSet{0} : atom_bit(atoms.size()) - 1;
}

BinRel AtomStructure::union_of(AtomSet set) const {
    BinRel r{BaseSize(n)};
    for (std::size_t i : atom_indices(set)) r = unite(r, atoms.at(i));
    return r;
}

double ClosedFamily::size() const { return std::ldexp(1.0, static_cast<int>(s_.atom_count())); }

namespace {

using Key = std::vector<std::uint32_t>;

void check_generators(std::span<const BinRel> generators, const ClosureOptions& options) {
    if (generators.empty()) throw Error("closure needs at least one generator");
    for (const auto& g : generators) require_same_size(generators.front(), g);
    if (options.atom_budget == 0 || options.atom_budget > kMaxAtoms)
        throw Error("atom budget must lie in [1, " + std::to_string(kMaxAtoms) + "]");
    if (options.track_terms && !options.generator_names.empty() &&
        options.generator_names.size() != generators.size())
        throw Error("one generator name per generator is required");
}

// Partition refinement over the n*n pair space.
class Refiner {
public:
    Refiner(std::span<const BinRel> generators, const ClosureOptions& options)
        : gens_(generators), options_(options), n_(generators.front().size()), color_(n_ * n_, 0) {}

    void initial() {
        std::vector<RaTerm> gen_terms;
        if (options_.track_terms) {
            for (std::size_t g = 0; g < gens_.size(); ++g)
                gen_terms.push_back(RaTerm::name(options_.generator_names.empty()
                                                     ? "g" + std::to_string(g)
                                                     : options_.generator_names[g]));
        }
        auto key = [&](std::size_t p) {
            Element a = static_cast<Element>(p / n_), b = static_cast<Element>(p % n_);
            Key k;
            for (const auto& g : gens_) k.push_back(g.contains(a, b));
            k.push_back(a == b);
            return k;
        };
        auto term = [&](std::size_t p) {
            Element a = static_cast<Element>(p / n_), b = static_cast<Element>(p % n_);
            RaTerm t = a == b ? RaTerm::identity() : RaTerm::complement(RaTerm::identity());
            for (std::size_t g = 0; g < gens_.size(); ++g)
                t = RaTerm::meet(std::move(t), gens_[g].contains(a, b)
                                                   ? gen_terms[g]
                                                   : RaTerm::complement(gen_terms[g]));
            return t;
        };
        blocks_ = 1;
        relabel(key, term);
    }

    void refine() {
        for (;;) {
            const std::size_t before = blocks_;
            for (;;) {
                const std::size_t b = blocks_;
                split_converse();
                if (blocks_ == b) break;
            }
            split_composition();
            if (blocks_ == before) break;
        }
    }

    std::size_t blocks() const { return blocks_; }
    std::vector<std::uint32_t> take_colors() { return std::move(color_); }
    std::vector<RaTerm> take_terms() { return std::move(terms_); }

private:
    std::size_t transpose(std::size_t p) const { return (p % n_) * n_ + p / n_; }

    std::vector<BinRel> block_relations() const {
        std::vector<BinRel> rels(blocks_, BinRel(BaseSize(n_)));
        for (std::size_t p = 0; p < color_.size(); ++p)
            rels[color_[p]].insert(static_cast<Element>(p / n_), static_cast<Element>(p % n_));
        return rels;
    }

    void split_converse() {
        auto key = [&](std::size_t p) { return Key{color_[p], color_[transpose(p)]}; };
        auto term = [&](std::size_t p) {
            return RaTerm::meet(terms_[color_[p]], RaTerm::converse(terms_[color_[transpose(p)]]));
        };
        relabel(key, term);
    }

    void split_composition() {
        const auto rels = block_relations();
        std::vector<BinRel> comps;
        comps.reserve(blocks_ * blocks_);
        for (std::size_t i = 0; i < blocks_; ++i)
            for (std::size_t j = 0; j < blocks_; ++j) comps.push_back(compose(rels[i], rels[j]));

        // (i,j) splits block c when the composition meets c without covering it.
        std::vector<std::vector<std::size_t>> splitters(blocks_);
        for (std::size_t c = 0; c < blocks_; ++c)
            for (std::size_t q = 0; q < comps.size(); ++q)
                if (comps[q].intersects(rels[c]) && !rels[c].subset_of(comps[q]))
                    splitters[c].push_back(q);

        auto key = [&](std::size_t p) {
            Element a = static_cast<Element>(p / n_), b = static_cast<Element>(p % n_);
            Key k{color_[p]};
            for (std::size_t q : splitters[color_[p]]) k.push_back(comps[q].contains(a, b));
            return k;
        };
        auto term = [&](std::size_t p) {
            Element a = static_cast<Element>(p / n_), b = static_cast<Element>(p % n_);
            RaTerm t = terms_[color_[p]];
            for (std::size_t q : splitters[color_[p]]) {
                RaTerm c = RaTerm::compose(terms_[q / blocks_], terms_[q % blocks_]);
                t = RaTerm::meet(std::move(t), comps[q].contains(a, b) ? c : RaTerm::complement(c));
            }
            return t;
        };
        relabel(key, term);
    }

    template <typename KeyFn, typename TermFn>
    void relabel(KeyFn key, TermFn term) {
        std::map<Key, std::uint32_t> ids;
        std::vector<std::uint32_t> next(color_.size());
        std::vector<std::size_t> first_pair;
        for (std::size_t p = 0; p < color_.size(); ++p) {
            auto [it, fresh] = ids.emplace(key(p), static_cast<std::uint32_t>(ids.size()));
            if (fresh) first_pair.push_back(p);
            next[p] = it->second;
        }
        if (ids.size() > options_.atom_budget) throw AtomBudgetExceeded(ids.size(), options_.atom_budget);

        if (options_.track_terms) {
            std::vector<std::size_t> pieces(blocks_, 0);
            for (std::size_t p : first_pair) ++pieces[color_[p]];
            std::vector<RaTerm> next_terms;
            for (std::size_t p : first_pair) {
                const bool unsplit = !terms_.empty() && pieces[color_[p]] == 1;
                next_terms.push_back(unsplit ? terms_[color_[p]] : term(p));
            }
            terms_ = std::move(next_terms);
        }
        color_ = std::move(next);
        blocks_ = ids.size();
    }

    std::span<const BinRel> gens_;
    const ClosureOptions& options_;
    std::size_t n_;
    std::vector<std::uint32_t> color_;
    std::size_t blocks_ = 0;
    std::vector<RaTerm> terms_;
};

}  // namespace

AtomStructure structure_from_partition(std::span<const BinRel> generators,
                                       std::vector<std::uint32_t> atom_of) {
    if (generators.empty()) throw Error("closure needs at least one generator");
    const std::size_t n = generators.front().size();
    if (atom_of.size() != n * n) throw Error("partition does not cover the pair space");
    std::size_t k = 0;
    for (auto c : atom_of) k = std::max<std::size_t>(k, c + 1);
    if (k > kMaxAtoms) throw AtomBudgetExceeded(k, kMaxAtoms);

    AtomStructure s;
    s.n = n;
    s.generators.assign(generators.begin(), generators.end());
    s.atoms.assign(k, BinRel(BaseSize(n)));
    for (std::size_t p = 0; p < atom_of.size(); ++p) {
        Element a = static_cast<Element>(p / n), b = static_cast<Element>(p % n);
        s.atoms[atom_of[p]].insert(a, b);
        if (a == b) s.identity_atoms |= atom_bit(atom_of[p]);
    }
    s.atom_of = std::move(atom_of);
    for (const auto& atom : s.atoms) {
        auto [a, b] = atom.pairs().front();
        s.converse_map.push_back(s.atom_of[b * n + a]);
    }
    s.comp_table.assign(k, std::vector<AtomSet>(k, 0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            BinRel c = compose(s.atoms[i], s.atoms[j]);
            AtomSet cover = 0;
            for (auto [a, b] : c.pairs()) cover |= atom_bit(s.atom_of[a * n + b]);
            s.comp_table[i][j] = cover;
        }
    return s;
}

AtomStructure ra_closure(std::span<const BinRel> generators, const ClosureOptions& options) {
    check_generators(generators, options);
    Refiner refiner(generators, options);
    refiner.initial();
    refiner.refine();
    AtomStructure s = structure_from_partition(generators, refiner.take_colors());
    if (options.track_terms) s.atom_terms = refiner.take_terms();
    return s;
}

BooleanAtoms ba_closure(std::span<const BinRel> generators, const ClosureOptions& options) {
    check_generators(generators, options);
    Refiner refiner(generators, options);
    refiner.initial();
    BooleanAtoms out;
    out.n = generators.front().size();
    out.generators.assign(generators.begin(), generators.end());
    out.atom_of = refiner.take_colors();
    out.atoms.assign(refiner.blocks(), BinRel(BaseSize(out.n)));
    for (std::size_t p = 0; p < out.atom_of.size(); ++p) {
        Element a = static_cast<Element>(p / out.n), b = static_cast<Element>(p % out.n);
        out.atoms[out.atom_of[p]].insert(a, b);
        if (a == b) out.identity_atoms |= atom_bit(out.atom_of[p]);
    }
    return out;
}

std::optional<AtomSet> decompose(const AtomStructure& s, const BinRel& r) {
    if (r.size() != s.n) throw SizeMismatch(s.n, r.size());
    AtomSet set = 0;
    for (std::size_t i = 0; i < s.atoms.size(); ++i) {
        if (s.atoms[i].subset_of(r))
            set |= atom_bit(i);
        else if (s.atoms[i].intersects(r))
            return std::nullopt;
    }
    return set;
}

const std::vector<AtomSet>& atom_composition_row(const AtomStructure& s, std::size_t i) {
    if (i >= s.comp_table.size())
        throw std::out_of_range("atom index " + std::to_string(i) + " out of range");
    return s.comp_table[i];
}

std::vector<std::string> invariant_violations(const AtomStructure& s) {
    std::vector<std::string> out;
    const BaseSize base(s.n);
    BinRel covered(base);
    for (std::size_t i = 0; i < s.atoms.size(); ++i) {
        if (s.atoms[i].empty()) out.push_back("atom " + std::to_string(i) + " is empty");
        if (covered.intersects(s.atoms[i]))
            out.push_back("atom " + std::to_string(i) + " overlaps an earlier atom");
        covered = unite(covered, s.atoms[i]);
    }
    if (covered != universal(base)) out.push_back("atoms do not cover the pair space");
    for (std::size_t g = 0; g < s.generators.size(); ++g)
        if (!decompose(s, s.generators[g]))
            out.push_back("generator " + std::to_string(g) + " is not a union of atoms");
    if (s.union_of(s.identity_atoms) != identity(base))
        out.push_back("identity is not the union of the identity atoms");
    for (std::size_t i = 0; i < s.atoms.size(); ++i) {
        std::size_t c = s.converse_map.at(i);
        if (converse(s.atoms[i]) != s.atoms.at(c))
            out.push_back("converse of atom " + std::to_string(i) + " is not an atom");
        else if (s.converse_map.at(c) != i)
            out.push_back("converse map is not an involution at " + std::to_string(i));
    }
    for (std::size_t i = 0; i < s.atoms.size(); ++i)
        for (std::size_t j = 0; j < s.atoms.size(); ++j)
            if (compose(s.atoms[i], s.atoms[j]) != s.union_of(s.comp_table[i][j]))
                out.push_back("composition of atoms " + std::to_string(i) + "," +
                              std::to_string(j) + " is not a union of atoms");
    return out;
}

}  // namespace eqra
