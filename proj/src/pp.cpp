#include "eqra/pp.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

#include "eqra/errors.hpp"

namespace eqra {

namespace {

using Word = BinRel::Word;

struct BoundConstraint {
    std::size_t u, v;
    const BinRel* forward;   // rows: u -> allowed v
    const BinRel* backward;  // rows: v -> allowed u
};

class PpSolver {
public:
    PpSolver(const PpQuery& query, const Structure& s, const std::string& x, const std::string& y)
        : n_(s.size()), wpr_((s.size() + 63) / 64), eq_(identity(s.base())) {
        auto index_of = [&](const std::string& v) {
            auto it = std::find(vars_.begin(), vars_.end(), v);
            if (it != vars_.end()) return static_cast<std::size_t>(it - vars_.begin());
            vars_.push_back(v);
            return vars_.size() - 1;
        };
        x_ = index_of(x);
        y_ = index_of(y);
        for (const auto& c : query) {
            if (c.symbol != kEqualitySymbol) s.at(c.symbol);  // UnknownSymbol
        }
        // Converse copies must outlive the bound constraints.
        for (const auto& c : query) {
            if (c.symbol == kEqualitySymbol || conv_.count(c.symbol)) continue;
            conv_.emplace(c.symbol, converse(s.at(c.symbol)));
        }
        for (const auto& c : query) {
            const bool eq = c.symbol == kEqualitySymbol;
            constraints_.push_back({index_of(c.left), index_of(c.right),
                                    eq ? &eq_ : &s.at(c.symbol),
                                    eq ? &eq_ : &conv_.at(c.symbol)});
        }
        value_.assign(vars_.size(), 0);
        assigned_.assign(vars_.size(), false);
    }

    BinRel solve(BaseSize base) {
        BinRel out(base);
        for (Element a = 0; a < n_; ++a) {
            for (Element b = 0; b < n_; ++b) {
                if (x_ == y_ && a != b) continue;
                std::fill(assigned_.begin(), assigned_.end(), false);
                assigned_[x_] = assigned_[y_] = true;
                value_[x_] = a;
                value_[y_] = b;
                if (consistent_fixed() && search()) out.insert(a, b);
            }
        }
        return out;
    }

private:
    bool consistent_fixed() const {
        for (const auto& c : constraints_) {
            if (assigned_[c.u] && assigned_[c.v] && !c.forward->contains(value_[c.u], value_[c.v]))
                return false;
        }
        return true;
    }

    std::vector<Word> domain(std::size_t var) const {
        std::vector<Word> d(wpr_, ~Word{0});
        if (n_ % 64) d.back() = (Word{1} << (n_ % 64)) - 1;
        for (const auto& c : constraints_) {
            if (c.u == var && c.v == var) {
                for (Element a = 0; a < n_; ++a)
                    if (!c.forward->contains(a, a)) d[a >> 6] &= ~(Word{1} << (a & 63));
            } else if (c.v == var && assigned_[c.u]) {
                auto row = c.forward->row(value_[c.u]);
                for (std::size_t w = 0; w < wpr_; ++w) d[w] &= row[w];
            } else if (c.u == var && assigned_[c.v]) {
                auto row = c.backward->row(value_[c.v]);
                for (std::size_t w = 0; w < wpr_; ++w) d[w] &= row[w];
            }
        }
        return d;
    }

    bool search() {
        std::size_t best = vars_.size();
        std::size_t best_size = SIZE_MAX;
        std::vector<Word> best_domain;
        for (std::size_t v = 0; v < vars_.size(); ++v) {
            if (assigned_[v]) continue;
            auto d = domain(v);
            std::size_t size = 0;
            for (Word w : d) size += static_cast<std::size_t>(std::popcount(w));
            if (size == 0) return false;
            if (size < best_size) {
                best = v;
                best_size = size;
                best_domain = std::move(d);
            }
        }
        if (best == vars_.size()) return true;
        assigned_[best] = true;
        for (std::size_t w = 0; w < wpr_; ++w) {
            for (Word bits = best_domain[w]; bits; bits &= bits - 1) {
                value_[best] = static_cast<Element>(w * 64 + std::countr_zero(bits));
                if (search()) {
                    assigned_[best] = false;
                    return true;
                }
            }
        }
        assigned_[best] = false;
        return false;
    }

    std::size_t n_, wpr_;
    BinRel eq_;
    std::map<std::string, BinRel> conv_;
    std::vector<std::string> vars_;
    std::vector<BoundConstraint> constraints_;
    std::size_t x_ = 0, y_ = 0;
    std::vector<Element> value_;
    std::vector<bool> assigned_;
};

}  // namespace

BinRel pp_evaluate(const PpQuery& query, const Structure& s, const std::string& x,
                   const std::string& y) {
    return PpSolver(query, s, x, y).solve(s.base());
}

Formula pp_to_formula(const PpQuery& query, const std::string& x, const std::string& y) {
    if (query.empty()) return Formula::disj({Formula::equals(x, x), Formula::negate(Formula::equals(x, x))});
    std::vector<Formula> atoms;
    std::vector<std::string> others;
    auto note = [&](const std::string& v) {
        if (v != x && v != y && std::find(others.begin(), others.end(), v) == others.end())
            others.push_back(v);
    };
    for (const auto& c : query) {
        note(c.left);
        note(c.right);
        atoms.push_back(c.symbol == kEqualitySymbol ? Formula::equals(c.left, c.right)
                                                    : Formula::atom(c.symbol, c.left, c.right));
    }
    Formula f = Formula::conj(std::move(atoms));
    for (auto it = others.rbegin(); it != others.rend(); ++it) f = Formula::exists(*it, std::move(f));
    return f;
}

std::string to_string(const PpQuery& query) {
    std::string out;
    for (const auto& c : query) {
        if (!out.empty()) out += " & ";
        out += c.symbol == kEqualitySymbol ? c.left + " = " + c.right
                                           : c.symbol + "(" + c.left + "," + c.right + ")";
    }
    return out.empty() ? "true" : out;
}

// ---------------------------------------------------------------------------
// Search

namespace {

struct Triple {
    std::size_t u, v, sym;
    friend auto operator<=>(const Triple&, const Triple&) = default;
};

double binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    double r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

bool range_any(const std::vector<Word>& words, std::size_t lo, std::size_t hi) {
    while (lo < hi) {
        std::size_t w = lo >> 6;
        std::size_t off = lo & 63;
        std::size_t take = std::min<std::size_t>(64 - off, hi - lo);
        Word mask = take == 64 ? ~Word{0} : ((Word{1} << take) - 1) << off;
        if (words[w] & mask) return true;
        lo += take;
    }
    return false;
}

class NetworkSearch {
public:
    NetworkSearch(const Structure& s, const BinRel& target, std::vector<std::string> symbols,
                  std::size_t m)
        : s_(s), target_(target), symbols_(std::move(symbols)), m_(m), n_(s.size()) {
        for (std::size_t u = 0; u < m_; ++u)
            for (std::size_t v = 0; v < m_; ++v)
                for (std::size_t k = 0; k < symbols_.size(); ++k) {
                    const BinRel& r = s_.at(symbols_[k]);
                    if (u == v && is_reflexive(r)) continue;
                    if (u > v && is_symmetric(r)) continue;
                    triples_.push_back({u, v, k});
                }
        std::sort(triples_.begin(), triples_.end());
        symmetric_.resize(symbols_.size());
        for (std::size_t k = 0; k < symbols_.size(); ++k) symmetric_[k] = is_symmetric(s_.at(symbols_[k]));

        std::vector<std::size_t> aux(m_ - 2);
        std::iota(aux.begin(), aux.end(), 2);
        do perms_.push_back(aux);
        while (std::next_permutation(aux.begin(), aux.end()));

        block_ = 1;
        for (std::size_t i = 2; i < m_; ++i) block_ *= n_;
        const double cells = static_cast<double>(block_) * static_cast<double>(n_ * n_);
        dense_ = cells * static_cast<double>(triples_.size()) <= double(std::uint64_t{1} << 30);
        if (dense_) build_masks();
    }

    std::size_t triple_count() const { return triples_.size(); }

    std::optional<PpQuery> run(std::size_t constraints, std::uint64_t& examined) {
        examined_ = &examined;
        chosen_.clear();
        if (dense_) {
            std::vector<Word> all(words_, ~Word{0});
            return dfs_dense(0, constraints, all);
        }
        return dfs_sparse(0, constraints);
    }

private:
    void build_masks() {
        const std::size_t cells = block_ * n_ * n_;
        words_ = (cells + 63) / 64;
        masks_.assign(triples_.size(), std::vector<Word>(words_, 0));
        std::vector<Element> digit(m_, 0);  // digit[0]=v0 ... most significant first
        for (std::size_t idx = 0; idx < cells; ++idx) {
            std::size_t rest = idx;
            for (std::size_t i = m_; i-- > 0;) {
                digit[i] = static_cast<Element>(rest % n_);
                rest /= n_;
            }
            for (std::size_t t = 0; t < triples_.size(); ++t) {
                const auto& tr = triples_[t];
                if (s_.at(symbols_[tr.sym]).contains(digit[tr.u], digit[tr.v]))
                    masks_[t][idx >> 6] |= Word{1} << (idx & 63);
            }
        }
        // Cells past the end stay zero in every mask, so no trailing cleanup.
    }

    BinRel project(const std::vector<Word>& sat) const {
        BinRel out(s_.base());
        for (Element a = 0; a < n_; ++a)
            for (Element b = 0; b < n_; ++b) {
                std::size_t q = a * n_ + b;
                if (range_any(sat, q * block_, (q + 1) * block_)) out.insert(a, b);
            }
        return out;
    }

    PpQuery as_query(const std::vector<std::size_t>& chosen) const {
        PpQuery q;
        for (std::size_t t : chosen) {
            const auto& tr = triples_[t];
            q.push_back({"v" + std::to_string(tr.u), "v" + std::to_string(tr.v), symbols_[tr.sym]});
        }
        return q;
    }

    bool complete_and_canonical() const {
        std::vector<bool> used(m_, false);
        for (std::size_t t : chosen_) used[triples_[t].u] = used[triples_[t].v] = true;
        for (std::size_t i = 2; i < m_; ++i)
            if (!used[i]) return false;
        std::vector<Triple> mine;
        for (std::size_t t : chosen_) mine.push_back(triples_[t]);
        for (const auto& perm : perms_) {
            std::vector<Triple> image;
            for (auto tr : mine) {
                auto map = [&](std::size_t v) { return v < 2 ? v : perm[v - 2]; };
                Triple t{map(tr.u), map(tr.v), tr.sym};
                if (symmetric_[t.sym] && t.u > t.v) std::swap(t.u, t.v);
                image.push_back(t);
            }
            std::sort(image.begin(), image.end());
            if (image < mine) return false;
        }
        return true;
    }

    std::optional<PpQuery> dfs_dense(std::size_t start, std::size_t remaining,
                                     const std::vector<Word>& sat) {
        if (!chosen_.empty()) {
            BinRel result = project(sat);
            if (!target_.subset_of(result)) return std::nullopt;
            if (remaining == 0) {
                if (!complete_and_canonical()) return std::nullopt;
                ++*examined_;
                if (result == target_) return as_query(chosen_);
                return std::nullopt;
            }
        }
        for (std::size_t t = start; t < triples_.size(); ++t) {
            std::vector<Word> next(words_);
            for (std::size_t w = 0; w < words_; ++w) next[w] = sat[w] & masks_[t][w];
            chosen_.push_back(t);
            auto found = dfs_dense(t + 1, remaining - 1, next);
            chosen_.pop_back();
            if (found) return found;
        }
        return std::nullopt;
    }

    std::optional<PpQuery> dfs_sparse(std::size_t start, std::size_t remaining) {
        if (!chosen_.empty()) {
            BinRel result = pp_evaluate(as_query(chosen_), s_, "v0", "v1");
            if (!target_.subset_of(result)) return std::nullopt;
            if (remaining == 0) {
                if (!complete_and_canonical()) return std::nullopt;
                ++*examined_;
                if (result == target_) return as_query(chosen_);
                return std::nullopt;
            }
        }
        for (std::size_t t = start; t < triples_.size(); ++t) {
            chosen_.push_back(t);
            auto found = dfs_sparse(t + 1, remaining - 1);
            chosen_.pop_back();
            if (found) return found;
        }
        return std::nullopt;
    }

    const Structure& s_;
    const BinRel& target_;
    std::vector<std::string> symbols_;
    std::size_t m_, n_;
    std::vector<Triple> triples_;
    std::vector<bool> symmetric_;
    std::vector<std::vector<std::size_t>> perms_;
    std::size_t block_ = 1;
    bool dense_ = false;
    std::size_t words_ = 0;
    std::vector<std::vector<Word>> masks_;
    std::vector<std::size_t> chosen_;
    std::uint64_t* examined_ = nullptr;
};

}  // namespace

PpSearchResult pp_search(const Structure& s, const BinRel& target, PpBudget budget,
                         std::vector<std::string> symbols) {
    require_same_size(target, universal(s.base()));
    if (budget.max_vars < 2 || budget.max_constraints < 1)
        throw Error("pp search needs at least 2 variables and 1 constraint");
    if (symbols.empty())
        for (const auto& [name, rel] : s.relations()) symbols.push_back(name);
    for (const auto& sym : symbols) s.at(sym);
    std::sort(symbols.begin(), symbols.end());
    symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());

    PpSearchResult result;
    result.budget = budget;
    // Upper bound before reflexive/symmetric reductions.
    for (std::size_t m = 2; m <= budget.max_vars; ++m)
        for (std::size_t c = 1; c <= budget.max_constraints; ++c)
            result.estimate += binomial(m * m * symbols.size(), c);
    result.large_estimate_warning = result.estimate > kPpWarnEstimate;
    if (result.estimate > kPpHardCap) throw BudgetTooLarge(result.estimate);

    for (std::size_t m = 2; m <= budget.max_vars; ++m) {
        NetworkSearch search(s, target, symbols, m);
        for (std::size_t c = 1; c <= budget.max_constraints; ++c) {
            if (auto q = search.run(c, result.networks_examined)) {
                if (pp_evaluate(*q, s, "v0", "v1") != target)
                    throw std::logic_error("pp search candidate failed re-evaluation");
                result.query = std::move(q);
                return result;
            }
        }
    }
    return result;
}

}  // namespace eqra
