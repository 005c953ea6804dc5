#include "eqra/algebra.hpp"

#include <algorithm>

#include "eqra/eqlattice.hpp"
#include "eqra/errors.hpp"

namespace eqra {

Element Operation::apply(std::span<const Element> args, std::size_t n) const {
    std::size_t idx = 0;
    for (Element x : args) idx = idx * n + x;
    return table[idx];
}

FinAlgebra::FinAlgebra(BaseSize n, std::vector<Operation> ops) : n_(n), ops_(std::move(ops)) {
    for (const auto& op : ops_) {
        if (op.arity > kMaxArity)
            throw Error("operation '" + op.name + "' has arity above " + std::to_string(kMaxArity));
        std::size_t cells = 1;
        for (std::size_t i = 0; i < op.arity; ++i) cells *= n.value();
        if (op.table.size() != cells)
            throw Error("operation '" + op.name + "' table has " + std::to_string(op.table.size()) +
                        " entries, expected " + std::to_string(cells));
        for (Element v : op.table)
            if (v >= n.value()) throw Error("operation '" + op.name + "' value out of range");
    }
}

std::optional<Incompatibility> find_incompatibility(const BinRel& r, const FinAlgebra& a) {
    if (r.size() != a.size()) throw SizeMismatch(r.size(), a.size());
    const auto pairs = r.pairs();
    const std::size_t n = a.size();
    for (std::size_t o = 0; o < a.operations().size(); ++o) {
        const auto& op = a.operations()[o];
        std::vector<Element> left(op.arity), right(op.arity);
        std::vector<std::size_t> pick(op.arity, 0);
        if (op.arity > 0 && pairs.empty()) continue;
        for (;;) {
            for (std::size_t i = 0; i < op.arity; ++i) std::tie(left[i], right[i]) = pairs[pick[i]];
            Element fl = op.apply(left, n), fr = op.apply(right, n);
            if (!r.contains(fl, fr)) return Incompatibility{o, left, right, {fl, fr}};
            std::size_t i = 0;
            for (; i < op.arity; ++i) {
                if (++pick[i] < pairs.size()) break;
                pick[i] = 0;
            }
            if (i == op.arity) break;
        }
    }
    return std::nullopt;
}

bool is_compatible(const BinRel& r, const FinAlgebra& a) { return !find_incompatibility(r, a); }

std::vector<BinRel> congruences(const FinAlgebra& a) {
    const std::size_t n = a.size();
    if (n > kMaxCongruenceBase) throw BaseTooLarge(n, kMaxCongruenceBase);
    std::vector<BinRel> out;
    // Restricted growth strings: block[0] = 0, block[i] <= 1 + max(block[0..i-1]).
    std::vector<std::size_t> block(n, 0), prefix_max(n, 0);
    for (;;) {
        BinRel e(a.base());
        for (Element x = 0; x < n; ++x)
            for (Element y = 0; y < n; ++y)
                if (block[x] == block[y]) e.insert(x, y);
        if (is_compatible(e, a)) out.push_back(std::move(e));

        std::size_t i = n;
        while (i-- > 1) {
            if (block[i] <= prefix_max[i - 1]) break;
        }
        if (i == 0 || i == static_cast<std::size_t>(-1)) break;
        ++block[i];
        prefix_max[i] = std::max(prefix_max[i - 1], block[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
            block[j] = 0;
            prefix_max[j] = prefix_max[i];
        }
    }
    build_lattice(out);  // congruence sets are always meet/join closed
    std::sort(out.begin(), out.end());
    return out;
}

Certificate ppf_eq_certificate(std::span<const BinRel> generators, const FinAlgebra& a) {
    Certificate cert("ppf-cert");
    cert.set_input("algebra_size", a.size());
    cert.set_input("generator_count", generators.size());
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (!is_equivalence(generators[i]) || !is_compatible(generators[i], a))
            throw GeneratorNotCompatible(i);
    }
    cert.add("generators-compatible", CheckStatus::Pass,
             std::to_string(generators.size()) + " generators are congruences");

    const auto con = congruences(a);
    const bool equal = lattices_equal(con, generators);
    nlohmann::ordered_json extra = nlohmann::ordered_json::array();
    if (!equal) {
        for (const auto& c : con)
            if (std::find(generators.begin(), generators.end(), c) == generators.end())
                extra.push_back(equivalence_classes(c));
    }
    cert.expect("con-equals-generators", equal,
                "Con(A) has " + std::to_string(con.size()) + " elements, generator set has " +
                    std::to_string(generators.size()),
                nlohmann::ordered_json{{"congruences_not_generated", extra}});
    cert.expect("no-extra-pp-equivalence", equal,
                equal ? "pp definitions preserve compatibility, so every pp-definable "
                        "equivalence is a congruence, hence a generator"
                      : "cannot conclude: Con(A) differs from the generator set");
    cert.add("assumption", CheckStatus::Info,
             "pp-definable relations from Con(A) are subuniverses of powers of A "
             "(polymorphism/invariant correspondence); only this inclusion is certified");
    return cert;
}

}  // namespace eqra
