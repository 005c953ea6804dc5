#include <doctest.h>

#include "eqra/closure.hpp"
#include "eqra/constructions.hpp"
#include "eqra/eqlattice.hpp"
#include "eqra/errors.hpp"
#include "eqra/verify.hpp"

using namespace eqra;

TEST_CASE("encoding") {
    for (long p : {2L, 5L, 7L})
        for (Element e = 0; e < p * p; ++e) CHECK(encode(decode(e, p), p) == e);
    CHECK(encode({2, 3}, 5) == 13);
    CHECK(mod(-1, 5) == 4);
    CHECK(inverse_mod(3, 7) == 5);
    CHECK(is_prime(11));
    CHECK_FALSE(is_prime(9));
    CHECK_FALSE(is_prime(1));
}

TEST_CASE("kernel family") {
    auto f = zp2_family(5);
    CHECK(f.base().value() == 25);
    CHECK(f.kernels().size() == 6);
    CHECK(f.kernel_names().front() == "eta0");
    for (const auto& k : f.kernels()) {
        CHECK(is_equivalence(k));
        CHECK(equivalence_classes(k).size() == 5);
    }
    CHECK(f.eta0.contains(encode({1, 0}, 5), encode({1, 4}, 5)));
    CHECK(f.alpha_k(2).contains(encode({1, 2}, 5), encode({2, 4}, 5)));
    CHECK_THROWS_AS(zp2_family(6), NotPrime);
    CHECK_THROWS_AS(zp2_family(13), TooLarge);
}

TEST_CASE("witnesses land in the right classes") {
    const long p = 5;
    auto f = zp2_family(p);
    for (long k = 1; k < p; ++k)
        for (Element a = 0; a < 25; ++a)
            for (Element b = 0; b < 25; ++b) {
                auto u = decode(a, p), v = decode(b, p);
                for (int eta = 0; eta < 2; ++eta) {
                    auto y = encode(case1_witness(p, k, u, v, eta), p);
                    CHECK((eta ? f.eta1 : f.eta0).contains(a, y));
                    CHECK(f.alpha_k(k).contains(y, b));
                }
            }
    for (long i = 1; i < p; ++i)
        for (long j = 1; j < p; ++j) {
            if (i == j) continue;
            for (Element a = 0; a < 25; a += 3)
                for (Element b = 0; b < 25; b += 2) {
                    auto y = encode(case2_witness(p, i, j, decode(a, p), decode(b, p)), p);
                    CHECK(f.alpha_k(i).contains(a, y));
                    CHECK(f.alpha_k(j).contains(y, b));
                }
        }
}

TEST_CASE("make_M bounds") {
    CHECK(make_M(5, 1).size() == 5);
    CHECK(make_M(7, 4).size() == 8);
    CHECK_THROWS_AS(make_M(5, 3), NOutOfRange);
    CHECK_THROWS_AS(make_M(5, 0), NOutOfRange);
    CHECK(make_M(5, 3, true).size() == 7);
    CHECK(lemma_hypothesis_holds(7, 4));
    CHECK_FALSE(lemma_hypothesis_holds(7, 5));
}

TEST_CASE("closure of M is M on the equivalence side") {
    for (auto [p, n] : lemma1_cases()) {
        auto m = make_M(p, n);
        auto s = ra_closure(m);
        CHECK(s.atom_count() == static_cast<std::size_t>(n + 4));
        CHECK(ba_closure(m).atom_count() == s.atom_count());
        CHECK(lattices_equal(extract_equivalences(s), m));
    }
}

TEST_CASE("two by two example") {
    auto ex = two_by_two_example();
    CHECK(is_equivalence(ex.gamma));
    CHECK(equivalence_classes(ex.gamma) == std::vector<std::vector<Element>>{{0, 3}, {1, 2}});
    auto s = two_by_two_structure();
    auto formulas = worked_formulas();
    CHECK(evaluate_binary(formulas.gamma_fo2, s, "x", "y") == ex.gamma);
    CHECK(fragment_report(formulas.gamma_fo2).variable_count == 2);
}

TEST_CASE("pp definition of the last alpha") {
    for (long p : {5L, 7L}) {
        auto s = zp2_structure(p);
        auto f = zp2_family(p);
        auto formulas = worked_formulas();
        CHECK(pp_evaluate(formulas.alpha_pp, s, "a", "b") == f.alpha_k(p - 1));
        CHECK(evaluate_binary(formulas.alpha_pp_formula, s, "a", "b") == f.alpha_k(p - 1));
    }
}

TEST_CASE("module congruences on Z_2^2") {
    auto con = congruences(zp2_module(2));
    auto f = zp2_family(2);
    std::vector<BinRel> expected{identity(f.base()), f.eta0, f.eta1, f.alpha_k(1), universal(f.base())};
    CHECK(lattices_equal(con, expected));
}

TEST_CASE("representations of M_m") {
    CHECK(prime_for_m(3) == 5);
    CHECK(prime_for_m(6) == 7);
    CHECK(prime_for_m(8) == 11);
    for (long m = 1; m <= 6; ++m) {
        auto rc = represent_mn(m);
        CHECK(rc.passed());
        REQUIRE(rc.shape.has_value());
        CHECK(*rc.shape == static_cast<std::size_t>(m));
    }
    CHECK_THROWS_AS(represent_mn(0), MOutOfRange);
    CHECK_THROWS_AS(represent_mn(kMaxRepresentedM + 1), MOutOfRange);
}

TEST_CASE("verification certificates") {
    CHECK(verify_lemma(5).passed());
    CHECK(verify_lemma1(5, 2).passed());
    CHECK_THROWS_AS(verify_lemma1(5, 3), NOutOfRange);
    RunConfig unsafe;
    unsafe.unsafe = true;
    auto outside = verify_lemma1(5, 3, unsafe);
    CHECK(outside.passed());
    CHECK(outside.count(CheckStatus::Info) > 0);
    CHECK(verify_example_2x2().passed());
    CHECK(verify_pp_side(5).passed());
    CHECK(verify_con_shape(5).passed());
    CHECK(verify_properties(1, {20, 20, 50, 10}).passed());
}

TEST_CASE("certificate bookkeeping") {
    Certificate c("demo");
    c.expect("a", true);
    c.expect("b", false, "bad", nlohmann::ordered_json{{"k", 1}});
    CHECK_FALSE(c.passed());
    CHECK(c.count(CheckStatus::Fail) == 1);
    auto j = c.to_json();
    CHECK(j["schema"] == 1);
    CHECK_FALSE(j.contains("elapsed_ms"));
    CHECK(c.to_json(true).contains("elapsed_ms"));
    CHECK(j["checks"][1]["witness"]["k"] == 1);
    c.downgrade_failures("why");
    CHECK(c.passed());
    Certificate outer("all");
    outer.merge(c, "inner");
    CHECK(outer.checks().front().name == "inner/a");
}
