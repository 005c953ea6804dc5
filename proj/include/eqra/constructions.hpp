#pragma once

#include <optional>
#include <vector>

#include "eqra/algebra.hpp"
#include "eqra/certificate.hpp"
#include "eqra/closure.hpp"
#include "eqra/formula.hpp"
#include "eqra/pp.hpp"
#include "eqra/relation.hpp"
#include "eqra/structure.hpp"

namespace eqra {

// Points of Z_p^2 are encoded as x0 * p + x1.
struct ZPoint {
    long x0 = 0, x1 = 0;
    friend bool operator==(ZPoint, ZPoint) = default;
};

Element encode(ZPoint pt, long p);
ZPoint decode(Element e, long p);

bool is_prime(long p);
long mod(long a, long p);
long inverse_mod(long a, long p);

inline constexpr long kMaxPrime = 11;

// Kernels on Z_p^2: eta0 (x0 = y0), eta1 (x1 = y1) and
// alpha_k (k*x0 - x1 = k*y0 - y1) for k = 1..p-1.
struct Zp2Family {
    long p = 0;
    BinRel eta0, eta1;
    std::vector<BinRel> alpha;  // alpha[k-1] is alpha_k

    const BinRel& alpha_k(long k) const { return alpha.at(static_cast<std::size_t>(k - 1)); }
    // eta0, eta1, alpha_1, ..., alpha_{p-1}
    std::vector<BinRel> kernels() const;
    std::vector<std::string> kernel_names() const;
    BaseSize base() const { return eta0.base(); }
};

Zp2Family zp2_family(long p);

// {1, 1', eta0, eta1, alpha_1..alpha_n}; requires p >= 5 prime and
// 1 <= n < p - 2 unless `unsafe`.
std::vector<BinRel> make_M(long p, long n, bool unsafe = false);
bool lemma_hypothesis_holds(long p, long n);

// The four-element example 2^2: elements i = 2*bit0 + bit1.
struct TwoByTwo {
    std::vector<BinRel> L;  // 1', eta0, eta1, 1
    BinRel eta0, eta1, gamma;
    FinAlgebra algebra;     // binary meet and join
};

TwoByTwo two_by_two_example();

// y with u eta_{eta} y and y alpha_k v (eta in {0,1}).
ZPoint case1_witness(long p, long k, ZPoint u, ZPoint v, int eta = 0);
// y with u alpha_i y and y alpha_j v, i != j.
ZPoint case2_witness(long p, long i, long j, ZPoint u, ZPoint v);

struct WorkedFormulas {
    Formula gamma_fo2;   // free x, y; symbols E0, E1
    PpQuery alpha_pp;    // free a, b; symbols E0, E1, A1
    Formula alpha_pp_formula;
};

WorkedFormulas worked_formulas();

// Structure over Z_p^2 with E0, E1 and A1..A{p-1}.
Structure zp2_structure(long p);
// Structure over 2^2 with E0, E1.
Structure two_by_two_structure();

// (Z_p^2, +) with the unary maps x -> c*x, for congruence cross-checks.
FinAlgebra zp2_module(long p);

struct RepresentationCertificate {
    long m = 0;
    std::optional<long> p;       // prime used, when the base is Z_p^2
    long n = 0;                  // number of alpha generators
    std::string base_tag;        // "2x2" or "Z_p^2"
    std::vector<BinRel> generators;
    std::size_t atom_count = 0;
    std::vector<BinRel> equivalences;
    std::optional<std::size_t> shape;
    Certificate certificate;

    bool passed() const { return certificate.passed(); }
};

inline constexpr long kMaxRepresentedM = 9;

// Smallest prime p >= 5 with m - 2 < p - 2.
long prime_for_m(long m);

// Representation of M_m as Eq(RA(generators)) with the full pipeline
// closure -> equivalences -> lattice -> shape. Throws MOutOfRange.
RepresentationCertificate represent_mn(long m, std::optional<long> prime = std::nullopt,
                                       std::size_t atom_budget = kDefaultAtomBudget);

}  // namespace eqra
