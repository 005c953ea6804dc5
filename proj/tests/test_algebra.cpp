#include <doctest.h>

#include "eqra/algebra.hpp"
#include "eqra/constructions.hpp"
#include "eqra/eqlattice.hpp"
#include "eqra/errors.hpp"
#include "oracle.hpp"

using namespace eqra;

namespace {

FinAlgebra cyclic(std::size_t n) {
    std::vector<Element> succ(n);
    for (Element i = 0; i < n; ++i) succ[i] = (i + 1) % n;
    return FinAlgebra(BaseSize(n), {{"s", 1, succ}});
}

}  // namespace

TEST_CASE("operation tables are validated") {
    CHECK_THROWS_AS(FinAlgebra(BaseSize(2), {{"f", 1, {0}}}), Error);
    CHECK_THROWS_AS(FinAlgebra(BaseSize(2), {{"f", 1, {0, 2}}}), Error);
    CHECK_THROWS_AS(FinAlgebra(BaseSize(2), {{"f", 4, std::vector<Element>(16, 0)}}), Error);
    FinAlgebra a(BaseSize(2), {{"c", 0, {1}}, {"t", 3, {0, 0, 0, 1, 0, 1, 1, 1}}});
    std::vector<Element> args{1, 1, 0};
    CHECK(a.operations()[1].apply(args, 2) == 1);
}

TEST_CASE("set without operations has every equivalence as congruence") {
    for (std::size_t n = 1; n <= 5; ++n) {
        FinAlgebra a(BaseSize(n), {});
        auto con = congruences(a);
        CHECK(lattices_equal(con, oracle::all_equivalences(n)));
    }
    CHECK(congruences(FinAlgebra(BaseSize(4), {})).size() == 15);
}

TEST_CASE("congruences of a cycle are the divisor partitions") {
    // Z_6 with successor: congruences correspond to the divisors 1, 2, 3, 6.
    auto con = congruences(cyclic(6));
    CHECK(con.size() == 4);
    for (const auto& c : con) CHECK(is_compatible(c, cyclic(6)));
}

TEST_CASE("congruences agree with brute-force compatibility") {
    auto a = two_by_two_example().algebra;
    std::size_t count = 0;
    for (const auto& e : oracle::all_equivalences(4)) count += is_compatible(e, a);
    CHECK(congruences(a).size() == count);
    CHECK(count == 4);
    CHECK(lattices_equal(congruences(a), two_by_two_example().L));
}

TEST_CASE("incompatibility witness") {
    auto ex = two_by_two_example();
    auto w = find_incompatibility(ex.gamma, ex.algebra);
    REQUIRE(w.has_value());
    const auto& op = ex.algebra.operations()[w->operation];
    for (std::size_t i = 0; i < op.arity; ++i) CHECK(ex.gamma.contains(w->left[i], w->right[i]));
    CHECK(op.apply(w->left, 4) == w->image.first);
    CHECK(op.apply(w->right, 4) == w->image.second);
    CHECK_FALSE(ex.gamma.contains(w->image.first, w->image.second));
    CHECK_FALSE(find_incompatibility(ex.eta0, ex.algebra).has_value());
}

TEST_CASE("congruence base limit") {
    CHECK_THROWS_AS(congruences(FinAlgebra(BaseSize(kMaxCongruenceBase + 1), {})), BaseTooLarge);
}

TEST_CASE("pp-closure certificate") {
    auto ex = two_by_two_example();
    auto cert = ppf_eq_certificate(ex.L, ex.algebra);
    CHECK(cert.passed());
    CHECK(cert.count(CheckStatus::Info) >= 1);

    std::vector<BinRel> with_gamma = ex.L;
    with_gamma.push_back(ex.gamma);
    CHECK_THROWS_AS(ppf_eq_certificate(with_gamma, ex.algebra), GeneratorNotCompatible);

    std::vector<BinRel> partial{ex.L[0], ex.L[1], ex.L[3]};
    CHECK_FALSE(ppf_eq_certificate(partial, ex.algebra).passed());
}
