#include <doctest.h>

#include <algorithm>
#include <map>

#include "eqra/closure.hpp"
#include "eqra/constructions.hpp"
#include "eqra/eqlattice.hpp"
#include "eqra/errors.hpp"
#include "eqra/formula.hpp"
#include "eqra/random.hpp"
#include "oracle.hpp"

using namespace eqra;

namespace {

// Renumbers a pair -> block map so blocks are ordered by first pair.
std::vector<std::uint32_t> renumber(const std::vector<std::uint32_t>& atom_of) {
    std::map<std::uint32_t, std::uint32_t> ids;
    std::vector<std::uint32_t> out(atom_of.size());
    for (std::size_t i = 0; i < atom_of.size(); ++i) {
        auto [it, fresh] = ids.try_emplace(atom_of[i], static_cast<std::uint32_t>(ids.size()));
        out[i] = it->second;
    }
    return out;
}

Structure named(const std::vector<BinRel>& gens) {
    Structure s(gens.front().base());
    for (std::size_t i = 0; i < gens.size(); ++i) s.add("g" + std::to_string(i), gens[i]);
    return s;
}

}  // namespace

TEST_CASE("closure of the empty generator set") {
    std::vector<BinRel> gens{BinRel{BaseSize(3)}};
    auto s = ra_closure(gens);
    CHECK(s.atom_count() == 2);
    CHECK(s.union_of(s.identity_atoms) == identity(BaseSize(3)));
    auto one = ra_closure(std::vector<BinRel>{BinRel{BaseSize(1)}});
    CHECK(one.atom_count() == 1);
}

TEST_CASE("known atom counts") {
    auto ex = two_by_two_example();
    std::vector<BinRel> L{ex.eta0, ex.eta1};
    CHECK(ra_closure(L).atom_count() == 4);

    auto m = make_M(5, 1);
    auto s = ra_closure(m);
    CHECK(s.atom_count() == 5);
    std::size_t largest = 0;
    for (const auto& a : s.atoms) largest = std::max(largest, a.count());
    CHECK(largest == 300);

    auto f = zp2_family(5);
    CHECK(ra_closure(std::vector<BinRel>{f.alpha_k(1)}).atom_count() == 3);
}

TEST_CASE("closure agrees with saturation oracle on tiny bases") {
    Rng rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        BaseSize n(1 + rng() % 3);
        std::vector<BinRel> gens;
        for (std::size_t k = 0, g = 1 + rng() % 2; k < g; ++k) gens.push_back(random_relation(n, 0.4, rng));
        auto s = ra_closure(gens, {64});
        auto family = oracle::ra_closure(n.value(), gens);
        REQUIRE(s.atom_count() < 20);
        CHECK(family.size() == (std::size_t{1} << s.atom_count()));
        for (AtomSet set = 0; set < (AtomSet{1} << s.atom_count()); ++set)
            CHECK(family.count(s.union_of(set)) == 1);
        CHECK(invariant_violations(s).empty());
    }
}

TEST_CASE("closure structure invariants") {
    Rng rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        BaseSize n(2 + rng() % 6);
        std::vector<BinRel> gens{random_relation(n, 0.3, rng), random_relation(n, 0.5, rng)};
        auto s = ra_closure(gens, {64});
        CHECK(invariant_violations(s).empty());
        for (std::size_t i = 0; i < s.atom_count(); ++i) {
            CHECK(converse(s.atoms[i]) == s.atoms[s.converse_map[i]]);
            for (std::size_t j = 0; j < s.atom_count(); ++j) {
                CHECK(s.union_of(s.comp_table[i][j]) == compose(s.atoms[i], s.atoms[j]));
            }
            CHECK(decompose(s, s.atoms[i]) == atom_bit(i));
        }
        for (const auto& g : gens) CHECK(decompose(s, g).has_value());
    }
}

TEST_CASE("merging two atoms breaks closure") {
    Rng rng(8);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        BaseSize n(2 + rng() % 5);
        std::vector<BinRel> gens{random_relation(n, 0.4, rng)};
        auto s = ra_closure(gens, {64});
        if (s.atom_count() < 3) continue;
        for (std::size_t a = 0; a + 1 < s.atom_count(); ++a) {
            std::vector<std::uint32_t> merged = s.atom_of;
            for (auto& v : merged)
                if (v == a + 1) v = static_cast<std::uint32_t>(a);
            auto coarse = structure_from_partition(gens, renumber(merged));
            CHECK_FALSE(invariant_violations(coarse).empty());
            ++checked;
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("atom budget") {
    auto m = make_M(7, 4);
    CHECK_THROWS_AS(ra_closure(m, {5}), AtomBudgetExceeded);
    CHECK(ra_closure(m, {8}).atom_count() == 8);
}

TEST_CASE("decompose rejects non-members") {
    auto f = zp2_family(5);
    auto s = ra_closure(make_M(5, 1));
    CHECK_FALSE(decompose(s, f.alpha_k(4)).has_value());
    CHECK(decompose(s, f.alpha_k(1)).has_value());
    CHECK_THROWS_AS(decompose(s, identity(BaseSize(3))), SizeMismatch);
    CHECK_THROWS_AS(atom_composition_row(s, 99), std::out_of_range);
}

TEST_CASE("boolean closure") {
    auto ex = two_by_two_example();
    std::vector<BinRel> gens{ex.eta0, ex.eta1};
    CHECK(ba_closure(gens).atom_count() == 4);
    auto m = make_M(5, 2);
    CHECK(ba_closure(m).atom_count() == ra_closure(m).atom_count());
    // A single non-symmetric edge: the Boolean closure misses the converse.
    std::vector<Pair> edge{{0, 1}};
    std::vector<BinRel> g{BinRel::from_pairs(BaseSize(3), edge)};
    CHECK(ba_closure(g).atom_count() < ra_closure(g).atom_count());
}

TEST_CASE("atom terms denote their atoms") {
    Rng rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        BaseSize n(2 + rng() % 3);
        std::vector<BinRel> gens{random_relation(n, 0.3, rng), random_relation(n, 0.4, rng)};
        ClosureOptions opt;
        opt.atom_budget = 64;
        opt.track_terms = true;
        auto s = ra_closure(gens, opt);
        auto st = named(gens);
        REQUIRE(s.atom_terms.size() == s.atom_count());
        for (std::size_t i = 0; i < s.atom_count(); ++i) {
            CHECK(evaluate_ra_term(s.atom_terms[i], st) == s.atoms[i]);
            if (tree_size(s.atom_terms[i], 5000) < 5000)
                CHECK(evaluate_binary(ra_term_to_fo3(s.atom_terms[i]), st, "v0", "v1") == s.atoms[i]);
        }
    }
}

TEST_CASE("equivalence extraction matches brute force") {
    Rng rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        BaseSize n(1 + rng() % 4);
        std::vector<BinRel> gens{random_relation(n, 0.4, rng)};
        if (trial % 2) gens.push_back(transitive_closure(random_relation(n, 0.3, rng) | identity(n)));
        auto s = ra_closure(gens, {64});
        std::vector<BinRel> expected;
        for (const auto& e : oracle::all_equivalences(n.value()))
            if (decompose(s, e)) expected.push_back(e);
        auto got = extract_equivalences(s, 64);
        CHECK(lattices_equal(got, expected));
        CHECK(std::is_sorted(got.begin(), got.end()));
        auto l = build_lattice(got);
        CHECK(l.elements[l.bottom] == identity(n));
        CHECK(l.elements[l.top] == universal(n));
    }
}

TEST_CASE("lattice operations") {
    auto ex = two_by_two_example();
    auto l = build_lattice(ex.L);
    CHECK(l.size() == 4);
    auto i0 = l.index_of(ex.eta0), i1 = l.index_of(ex.eta1);
    CHECK(l.meet(i0, i1) == l.bottom);
    CHECK(l.join(i0, i1) == l.top);
    CHECK(l.hasse().size() == 4);
    CHECK(l.index_of(ex.gamma) == l.size());
    auto shape = mn_shape(l);
    REQUIRE(shape.is_mn());
    CHECK(*shape.m == 2);

    std::vector<BinRel> bad{identity(BaseSize(4)), universal(BaseSize(4)), ex.eta0, ex.eta1, ex.gamma,
                            BinRel{BaseSize(4)}};
    CHECK_THROWS_AS(build_lattice(bad), NotAnEquivalence);
    std::vector<BinRel> no_meet{universal(BaseSize(4)), ex.eta0, ex.eta1};
    CHECK_THROWS_AS(build_lattice(no_meet), NotMeetClosed);
    std::vector<BinRel> no_join{identity(BaseSize(4)), ex.eta0, ex.eta1};
    CHECK_THROWS_AS(build_lattice(no_join), NotJoinClosed);
}

TEST_CASE("M_n recognition") {
    BaseSize n(4);
    std::vector<BinRel> chain{identity(n), universal(n)};
    auto two = build_lattice(chain);
    CHECK_FALSE(mn_shape(two).is_mn());
    auto all = build_lattice(oracle::all_equivalences(4));
    CHECK_FALSE(mn_shape(all).is_mn());
    auto ex = two_by_two_example();
    std::vector<BinRel> m3 = ex.L;
    m3.push_back(ex.gamma);
    CHECK(*mn_shape(build_lattice(m3)).m == 3);
}

TEST_CASE("M_n shape is invariant under relabelling") {
    auto m = make_M(5, 2);
    std::vector<Element> perm(25);
    for (Element i = 0; i < 25; ++i) perm[i] = (i * 7 + 3) % 25;
    std::vector<BinRel> moved;
    for (const auto& r : m) {
        BinRel q{BaseSize(25)};
        for (auto [a, b] : r.pairs()) q.insert(perm[a], perm[b]);
        moved.push_back(q);
    }
    auto a = mn_shape(build_lattice(extract_equivalences(ra_closure(m))));
    auto b = mn_shape(build_lattice(extract_equivalences(ra_closure(moved))));
    REQUIRE(a.is_mn());
    CHECK(a.m == b.m);
    CHECK(*a.m == 4);
}
