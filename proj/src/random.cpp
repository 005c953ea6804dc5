#include "eqra/random.hpp"

namespace eqra {

namespace {

std::size_t pick(std::size_t n, Rng& rng) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

template <typename T>
const T& choose(const std::vector<T>& v, Rng& rng) {
    return v[pick(v.size(), rng)];
}

}  // namespace

BinRel random_relation(BaseSize n, double density, Rng& rng) {
    std::bernoulli_distribution coin(density);
    BinRel r(n);
    for (Element a = 0; a < n.value(); ++a)
        for (Element b = 0; b < n.value(); ++b)
            if (coin(rng)) r.insert(a, b);
    return r;
}

Structure random_structure(const std::vector<std::string>& symbols, std::size_t max_n, Rng& rng) {
    BaseSize n(1 + pick(max_n, rng));
    Structure s(n);
    std::uniform_real_distribution<double> density(0.1, 0.7);
    for (const auto& sym : symbols) s.add(sym, random_relation(n, density(rng), rng));
    return s;
}

RaTerm random_ra_term(const std::vector<std::string>& symbols, std::size_t depth, Rng& rng) {
    if (depth == 0 || pick(4, rng) == 0)
        return pick(5, rng) == 0 ? RaTerm::identity() : RaTerm::name(choose(symbols, rng));
    switch (pick(4, rng)) {
        case 0:
            return RaTerm::unite(random_ra_term(symbols, depth - 1, rng),
                                 random_ra_term(symbols, depth - 1, rng));
        case 1: return RaTerm::complement(random_ra_term(symbols, depth - 1, rng));
        case 2:
            return RaTerm::compose(random_ra_term(symbols, depth - 1, rng),
                                   random_ra_term(symbols, depth - 1, rng));
        default: return RaTerm::converse(random_ra_term(symbols, depth - 1, rng));
    }
}

Formula random_formula(const std::vector<std::string>& vars, const std::vector<std::string>& symbols,
                       std::size_t depth, Rng& rng) {
    if (depth == 0 || pick(4, rng) == 0) {
        if (pick(3, rng) == 0) return Formula::equals(choose(vars, rng), choose(vars, rng));
        return Formula::atom(choose(symbols, rng), choose(vars, rng), choose(vars, rng));
    }
    auto several = [&] {
        std::vector<Formula> parts;
        for (std::size_t i = 0, k = 2 + pick(2, rng); i < k; ++i)
            parts.push_back(random_formula(vars, symbols, depth - 1, rng));
        return parts;
    };
    switch (pick(5, rng)) {
        case 0: return Formula::conj(several());
        case 1: return Formula::disj(several());
        case 2: return Formula::negate(random_formula(vars, symbols, depth - 1, rng));
        case 3: return Formula::exists(choose(vars, rng), random_formula(vars, symbols, depth - 1, rng));
        default: return Formula::forall(choose(vars, rng), random_formula(vars, symbols, depth - 1, rng));
    }
}

PpQuery random_pp_query(const std::vector<std::string>& vars, const std::vector<std::string>& symbols,
                        std::size_t max_constraints, Rng& rng) {
    PpQuery q;
    for (std::size_t i = 0, k = 1 + pick(max_constraints, rng); i < k; ++i) {
        std::string sym = pick(6, rng) == 0 ? kEqualitySymbol : choose(symbols, rng);
        q.push_back({choose(vars, rng), choose(vars, rng), sym});
    }
    return q;
}

}  // namespace eqra
