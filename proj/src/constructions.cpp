#include "eqra/constructions.hpp"

#include "eqra/eqlattice.hpp"
#include "eqra/errors.hpp"

namespace eqra {

Element encode(ZPoint pt, long p) { return static_cast<Element>(mod(pt.x0, p) * p + mod(pt.x1, p)); }

ZPoint decode(Element e, long p) { return {static_cast<long>(e) / p, static_cast<long>(e) % p}; }

bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

long mod(long a, long p) { return ((a % p) + p) % p; }

long inverse_mod(long a, long p) {
    a = mod(a, p);
    if (a == 0) throw Error("0 has no inverse");
    // Fermat: a^(p-2)
    long result = 1, base = a, e = p - 2;
    while (e > 0) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return result;
}

std::vector<BinRel> Zp2Family::kernels() const {
    std::vector<BinRel> out{eta0, eta1};
    out.insert(out.end(), alpha.begin(), alpha.end());
    return out;
}

std::vector<std::string> Zp2Family::kernel_names() const {
    std::vector<std::string> out{"eta0", "eta1"};
    for (long k = 1; k < p; ++k) out.push_back("alpha" + std::to_string(k));
    return out;
}

namespace {

template <typename Key>
BinRel kernel(long p, Key key) {
    const BaseSize base(static_cast<std::size_t>(p * p));
    BinRel r(base);
    for (Element a = 0; a < base.value(); ++a)
        for (Element b = 0; b < base.value(); ++b)
            if (key(decode(a, p)) == key(decode(b, p))) r.insert(a, b);
    return r;
}

}  // namespace

Zp2Family zp2_family(long p) {
    if (!is_prime(p)) throw NotPrime(p);
    if (p > kMaxPrime) throw TooLarge("p = " + std::to_string(p) + " exceeds " + std::to_string(kMaxPrime));
    Zp2Family f{p, kernel(p, [](ZPoint x) { return x.x0; }),
                kernel(p, [](ZPoint x) { return x.x1; }), {}};
    for (long k = 1; k < p; ++k)
        f.alpha.push_back(kernel(p, [k, p](ZPoint x) { return mod(k * x.x0 - x.x1, p); }));
    return f;
}

bool lemma_hypothesis_holds(long p, long n) { return is_prime(p) && p >= 5 && 1 <= n && n < p - 2; }

std::vector<BinRel> make_M(long p, long n, bool unsafe) {
    if (!is_prime(p)) throw NotPrime(p);
    if (!unsafe && (p < 5 || n < 1 || n >= p - 2)) throw NOutOfRange(p, n);
    if (n < 0 || n > p - 1) throw NOutOfRange(p, n);
    auto f = zp2_family(p);
    std::vector<BinRel> out{universal(f.base()), identity(f.base()), f.eta0, f.eta1};
    for (long k = 1; k <= n; ++k) out.push_back(f.alpha_k(k));
    return out;
}

TwoByTwo two_by_two_example() {
    auto f = zp2_family(2);
    const BaseSize base(4);
    BinRel gamma = unite(identity(base), complement(unite(f.eta0, f.eta1)));
    std::vector<Element> meet(16), join(16);
    for (Element a = 0; a < 4; ++a)
        for (Element b = 0; b < 4; ++b) {
            meet[a * 4 + b] = a & b;
            join[a * 4 + b] = a | b;
        }
    FinAlgebra algebra(base, {{"meet", 2, meet}, {"join", 2, join}});
    return TwoByTwo{{identity(base), f.eta0, f.eta1, universal(base)}, f.eta0, f.eta1, gamma,
                    std::move(algebra)};
}

ZPoint case1_witness(long p, long k, ZPoint u, ZPoint v, int eta) {
    if (eta == 0) return {mod(u.x0, p), mod(k * u.x0 + v.x1 - k * v.x0, p)};
    // eta1: keep x1 = u1 and solve k*y0 - u1 = k*v0 - v1 for y0.
    return {mod(inverse_mod(k, p) * (k * v.x0 - v.x1 + u.x1), p), mod(u.x1, p)};
}

ZPoint case2_witness(long p, long i, long j, ZPoint u, ZPoint v) {
    long y0 = mod(inverse_mod(j - i, p) * (u.x1 - i * u.x0 + j * v.x0 - v.x1), p);
    long y1 = mod(j * (y0 - v.x0) + v.x1, p);
    return {y0, y1};
}

WorkedFormulas worked_formulas() {
    PpQuery pp{{"a", "c", "E0"}, {"c", "b", "E1"}, {"a", "d", "E1"}, {"d", "b", "E0"}, {"c", "d", "A1"}};
    return {parse_formula("(x = y) | !(E0(x,y) | E1(x,y))"), pp,
            parse_formula("exists c. exists d. E0(a,c) & E1(c,b) & E1(a,d) & E0(d,b) & A1(c,d)")};
}

Structure zp2_structure(long p) {
    auto f = zp2_family(p);
    Structure s(f.base());
    s.add("E0", f.eta0);
    s.add("E1", f.eta1);
    for (long k = 1; k < p; ++k) s.add("A" + std::to_string(k), f.alpha_k(k));
    return s;
}

Structure two_by_two_structure() {
    auto ex = two_by_two_example();
    Structure s(BaseSize(4));
    s.add("E0", ex.eta0);
    s.add("E1", ex.eta1);
    return s;
}

FinAlgebra zp2_module(long p) {
    if (!is_prime(p)) throw NotPrime(p);
    const auto n = static_cast<std::size_t>(p * p);
    std::vector<Operation> ops;
    Operation plus{"+", 2, std::vector<Element>(n * n)};
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) {
            auto x = decode(a, p), y = decode(b, p);
            plus.table[a * n + b] = encode({x.x0 + y.x0, x.x1 + y.x1}, p);
        }
    ops.push_back(std::move(plus));
    for (long c = 0; c < p; ++c) {
        Operation scale{"mul" + std::to_string(c), 1, std::vector<Element>(n)};
        for (Element a = 0; a < n; ++a) {
            auto x = decode(a, p);
            scale.table[a] = encode({c * x.x0, c * x.x1}, p);
        }
        ops.push_back(std::move(scale));
    }
    return FinAlgebra(BaseSize(n), std::move(ops));
}

long prime_for_m(long m) {
    const long n = m - 2;
    for (long p = 5;; ++p)
        if (is_prime(p) && n < p - 2) return p;
}

RepresentationCertificate represent_mn(long m, std::optional<long> prime, std::size_t atom_budget) {
    if (m < 1 || m > kMaxRepresentedM) throw MOutOfRange(m);
    RepresentationCertificate rc;
    rc.m = m;
    rc.certificate = Certificate("represent-mn");
    auto& cert = rc.certificate;
    cert.set_input("m", m);

    if (m <= 2) {
        // M_1 on the 2x2 grid. M_2 needs p >= 3: on the 2x2 grid the complement
        // of eta0 + eta1 adds a third middle element.
        long p = prime.value_or(m == 1 ? 2 : 3);
        if (!is_prime(p)) throw NotPrime(p);
        if (m == 2 && p < 3) throw Error("M_2 needs p >= 3 (on Z_2^2 the lattice closes to M_3)");
        auto f = zp2_family(p);
        rc.p = p;
        rc.base_tag = "Z_" + std::to_string(p) + "^2";
        rc.generators = {universal(f.base()), identity(f.base()), f.eta0};
        if (m == 2) rc.generators.push_back(f.eta1);
    } else {
        rc.n = m - 2;
        long p = prime.value_or(prime_for_m(m));
        if (!is_prime(p)) throw NotPrime(p);
        if (p > kMaxPrime) throw TooLarge("p = " + std::to_string(p) + " exceeds " + std::to_string(kMaxPrime));
        rc.p = p;
        rc.base_tag = "Z_" + std::to_string(p) + "^2";
        rc.generators = make_M(p, rc.n);
    }
    cert.set_input("p", *rc.p);
    cert.set_input("n", rc.n);
    cert.set_input("base", rc.base_tag);

    ClosureOptions options;
    options.atom_budget = atom_budget;
    auto s = ra_closure(rc.generators, options);
    rc.atom_count = s.atom_count();
    if (m >= 3)
        cert.expect("atom-count", rc.atom_count == static_cast<std::size_t>(rc.n + 4),
                    std::to_string(rc.atom_count) + " atoms, expected " + std::to_string(rc.n + 4));
    else
        cert.add("atom-count", CheckStatus::Info, std::to_string(rc.atom_count) + " atoms");

    rc.equivalences = extract_equivalences(s, atom_budget);
    const bool same = lattices_equal(rc.equivalences, rc.generators);
    cert.expect("eq-equals-generators", same,
                "Eq(RA(M)) has " + std::to_string(rc.equivalences.size()) + " elements, M has " +
                    std::to_string(rc.generators.size()));

    auto lattice = build_lattice(rc.equivalences);
    auto shape = mn_shape(lattice);
    rc.shape = shape.m;
    cert.expect("shape", shape.m == static_cast<std::size_t>(m),
                shape.m ? "M_" + std::to_string(*shape.m) : std::string("not of the form M_m"));
    return rc;
}

}  // namespace eqra
