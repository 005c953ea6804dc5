// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "eqra/algebra.hpp"
#include "eqra/closure.hpp"
#include "eqra/constructions.hpp"
#include "eqra/eqlattice.hpp"
#include "eqra/formula.hpp"
#include "eqra/pp.hpp"
#include "eqra/verify.hpp"

using namespace eqra;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream why;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            if (ok) why << what;
            else why << "; " << what;
            ok = false;
        }
    }
};

bool check_passed(const Certificate& c, const std::string& name) {
    bool seen = false;
    for (const auto& check : c.checks()) {
        if (check.name != name) continue;
        seen = true;
        if (check.status != CheckStatus::Pass) return false;
    }
    return seen;
}

bool check_present(const Certificate& c, const std::string& name) {
    for (const auto& check : c.checks())
        if (check.name == name) return true;
    return false;
}

std::string tag(long p, long n) { return "p=" + std::to_string(p) + ",n=" + std::to_string(n); }

void distinct_kernels_compose(Outcome& o) {
    for (long p : {5L, 7L}) {
        auto k = zp2_family(p).kernels();
        auto u = universal(k.front().base());
        for (std::size_t i = 0; i < k.size(); ++i)
            for (std::size_t j = 0; j < k.size(); ++j)
                if (i != j) o.require(compose(k[i], k[j]) == u, "p=" + std::to_string(p) + " pair not universal");
        auto cert = verify_lemma(p);
        o.require(cert.passed(), "certificate failed at p=" + std::to_string(p));
    }
    auto cert = verify_lemma(5);
    for (const char* w : {"witness-eta0-eta1", "witness-case1", "witness-case2"})
        o.require(check_passed(cert, w), std::string(w) + " at p=5");
}

void closure_of_M(Outcome& o) {
    for (auto [p, n] : lemma1_cases()) {
        auto m = make_M(p, n);
        auto s = ra_closure(m);
        o.require(s.atom_count() == static_cast<std::size_t>(n + 4), tag(p, n) + " atom count");
        o.require(ba_closure(m).atom_count() == s.atom_count(), tag(p, n) + " BA atoms differ");
        o.require(lattices_equal(extract_equivalences(s), m), tag(p, n) + " Eq(RA(M)) != M");
    }
}

void atom_identities(Outcome& o) {
    for (auto [p, n] : lemma1_cases()) {
        auto cert = verify_lemma1(p, n);
        for (const char* name : {"atom-square", "atom-distinct", "beta-identity", "derived-atoms"})
            o.require(check_passed(cert, name), tag(p, n) + " " + name);
        o.require(check_present(cert, "beta-rows"), tag(p, n) + " beta rows not emitted");
    }
}

void two_by_two(Outcome& o) {
    auto ex = two_by_two_example();
    std::vector<BinRel> gens{ex.eta0, ex.eta1};
    auto eqs = extract_equivalences(ra_closure(gens));
    std::vector<BinRel> expected = ex.L;
    expected.push_back(ex.gamma);
    o.require(lattices_equal(eqs, expected), "Eq(RA(L)) != L + gamma");
    o.require(!lattices_equal(eqs, ex.L), "Eq(RA(L)) equals L");
    auto shape = mn_shape(build_lattice(eqs));
    o.require(shape.m == std::optional<std::size_t>(3), "shape is not M_3");

    auto formulas = worked_formulas();
    auto s = two_by_two_structure();
    o.require(evaluate_binary(formulas.gamma_fo2, s, "x", "y") == ex.gamma, "formula does not give gamma");
    o.require(fragment_report(formulas.gamma_fo2).variable_count == 2, "formula uses more than 2 variables");

    o.require(ppf_eq_certificate(ex.L, ex.algebra).passed(), "pp certificate failed");
    o.require(lattices_equal(congruences(ex.algebra), ex.L), "Con(2^2) != L");

    auto search = pp_search(s, ex.gamma, {4, 6}, {"E0", "E1"});
    o.require(!search.query.has_value(), "pp search found a definition of gamma");
}

void pp_side(Outcome& o) {
    for (long p : {5L, 7L}) {
        auto f = zp2_family(p);
        auto formulas = worked_formulas();
        o.require(pp_evaluate(formulas.alpha_pp, zp2_structure(p), "a", "b") == f.alpha_k(p - 1),
                  "pp query misses alpha_{p-1} at p=" + std::to_string(p));
        for (long n : {1L, 2L}) {
            if (!lemma_hypothesis_holds(p, n)) continue;
            auto s = ra_closure(make_M(p, n));
            o.require(!decompose(s, f.alpha_k(p - 1)).has_value(),
                      "alpha_{p-1} inside RA(M) at " + tag(p, n));
        }
    }
}

void representations(Outcome& o) {
    for (long m = 1; m <= 8; ++m) {
        auto start = std::chrono::steady_clock::now();
        auto rc = represent_mn(m);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        o.require(rc.passed(), "m=" + std::to_string(m) + " certificate failed");
        o.require(rc.shape == std::optional<std::size_t>(m), "m=" + std::to_string(m) + " wrong shape");
        if (m == 8) o.require(secs < 60, "m=8 took " + std::to_string(secs) + " s");
    }
}

void con_shape(Outcome& o) {
    for (long p : {5L, 7L}) {
        auto f = zp2_family(p);
        std::vector<BinRel> rels{identity(f.base()), universal(f.base())};
        for (const auto& k : f.kernels()) rels.push_back(k);
        auto l = build_lattice(rels);
        auto shape = mn_shape(l);
        o.require(shape.m == std::optional<std::size_t>(p + 1), "p=" + std::to_string(p) + " not M_{p+1}");
        for (std::size_t i = 0; i < f.kernels().size(); ++i)
            for (std::size_t j = i + 1; j < f.kernels().size(); ++j) {
                o.require((f.kernels()[i] & f.kernels()[j]) == identity(f.base()), "meet is not 1'");
                o.require(transitive_closure(f.kernels()[i] | f.kernels()[j]) == universal(f.base()),
                          "join is not 1");
            }
    }
}

void logic_properties(Outcome& o) {
    auto cert = verify_properties(RunConfig{}.seed, {200, 200, 500, 0});
    for (const char* name : {"ra-vs-fo3", "pp-vs-fo", "parser-roundtrip"}) o.require(check_passed(cert, name), name);
}

void closure_properties(Outcome& o) {
    auto cert = verify_properties(RunConfig{}.seed, {0, 0, 0, 100});
    for (const char* name : {"closure-membership", "closure-eq-lattice"}) o.require(check_passed(cert, name), name);
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        double limit_s;
        std::function<void(Outcome&)> run;
    };
    const std::vector<Criterion> criteria{
        {1, "distinct kernels compose to the universal relation", 2, distinct_kernels_compose},
        {2, "Eq(RA(M)) = M with n+4 atoms, BA atoms = RA atoms", 10, closure_of_M},
        {3, "atom composition identities and beta atom", 10, atom_identities},
        {4, "2^2 example: Eq(RA(L)) = M_3, Eq(PPF(L)) = L, no small pp definition of gamma", 5, two_by_two},
        {5, "pp definition of alpha_{p-1} lies outside RA(M)", 10, pp_side},
        {6, "M_m represented for m = 1..8", 60, representations},
        {7, "kernels of Z_p^2 form M_{p+1}", 10, con_shape},
        {8, "logic engine properties", 60, logic_properties},
        {9, "closure engine properties", 60, closure_properties},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        auto start = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        o.require(secs < c.limit_s, "exceeded " + std::to_string(c.limit_s) + " s");
        std::cout << (o.ok ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << " ("
                  << static_cast<long>(secs * 1000) << " ms)";
        if (!o.ok) std::cout << "  -- " << o.why.str();
        std::cout << "\n";
        failed += !o.ok;
    }
    std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - failed << "/" << criteria.size() << "\n";
    return failed ? 1 : 0;
}
