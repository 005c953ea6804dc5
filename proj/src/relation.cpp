#include "eqra/relation.hpp"

#include <algorithm>
#include <bit>

#include "eqra/errors.hpp"

namespace eqra {

BaseSize::BaseSize(std::size_t n) : n_(n) {
    if (n < 1 || n > kMax) throw InvalidBaseSize(n);
}

BinRel::BinRel(BaseSize n)
    : n_(n.value()), wpr_((n.value() + 63) / 64), bits_(n_ * wpr_, 0) {}

BinRel BinRel::from_pairs(BaseSize n, std::span<const Pair> pairs) {
    BinRel r(n);
    for (auto [a, b] : pairs) {
        if (a >= r.n_ || b >= r.n_) throw Error("pair element out of range");
        r.insert(a, b);
    }
    return r;
}

std::size_t BinRel::count() const {
    std::size_t c = 0;
    for (Word w : bits_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

bool BinRel::empty() const {
    return std::all_of(bits_.begin(), bits_.end(), [](Word w) { return w == 0; });
}

bool BinRel::subset_of(const BinRel& other) const {
    require_same_size(*this, other);
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i] & ~other.bits_[i]) return false;
    return true;
}

bool BinRel::intersects(const BinRel& other) const {
    require_same_size(*this, other);
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i] & other.bits_[i]) return true;
    return false;
}

std::vector<Pair> BinRel::pairs() const {
    std::vector<Pair> out;
    for (Element a = 0; a < n_; ++a) {
        auto r = row(a);
        for (std::size_t w = 0; w < wpr_; ++w) {
            for (Word bits = r[w]; bits; bits &= bits - 1)
                out.emplace_back(a, static_cast<Element>(w * 64 + std::countr_zero(bits)));
        }
    }
    return out;
}

std::strong_ordering operator<=>(const BinRel& lhs, const BinRel& rhs) {
    if (auto c = lhs.n_ <=> rhs.n_; c != 0) return c;
    auto lp = lhs.pairs();
    auto rp = rhs.pairs();
    return std::lexicographical_compare_three_way(lp.begin(), lp.end(), rp.begin(), rp.end());
}

void require_same_size(const BinRel& r, const BinRel& s) {
    if (r.size() != s.size()) throw SizeMismatch(r.size(), s.size());
}

BinRel identity(BaseSize n) {
    BinRel r(n);
    for (Element a = 0; a < n.value(); ++a) r.insert(a, a);
    return r;
}

BinRel universal(BaseSize n) { return complement(BinRel(n)); }

namespace {

template <typename Op>
BinRel pointwise(const BinRel& r, const BinRel& s, Op op) {
    require_same_size(r, s);
    BinRel out(r.base());
    for (Element a = 0; a < r.size(); ++a) {
        auto x = r.row(a), y = s.row(a);
        auto z = out.row(a);
        for (std::size_t w = 0; w < z.size(); ++w) z[w] = op(x[w], y[w]);
    }
    return out;
}

}  // namespace

BinRel unite(const BinRel& r, const BinRel& s) {
    return pointwise(r, s, [](auto x, auto y) { return x | y; });
}

BinRel intersect(const BinRel& r, const BinRel& s) {
    return pointwise(r, s, [](auto x, auto y) { return x & y; });
}

BinRel difference(const BinRel& r, const BinRel& s) {
    return pointwise(r, s, [](auto x, auto y) { return x & ~y; });
}

BinRel complement(const BinRel& r) {
    BinRel out(r.base());
    const std::size_t tail = r.n_ % 64;
    const BinRel::Word last_mask = tail == 0 ? ~BinRel::Word{0} : (BinRel::Word{1} << tail) - 1;
    for (std::size_t i = 0; i < r.bits_.size(); ++i) {
        out.bits_[i] = ~r.bits_[i];
        if ((i + 1) % r.wpr_ == 0) out.bits_[i] &= last_mask;
    }
    return out;
}

BinRel compose(const BinRel& r, const BinRel& s) {
    require_same_size(r, s);
    BinRel out(r.base());
    const std::size_t wpr = r.words_per_row();
    for (Element a = 0; a < r.size(); ++a) {
        auto src = r.row(a);
        auto dst = out.row(a);
        for (std::size_t w = 0; w < wpr; ++w) {
            for (BinRel::Word bits = src[w]; bits; bits &= bits - 1) {
                auto c = static_cast<Element>(w * 64 + std::countr_zero(bits));
                auto srow = s.row(c);
                for (std::size_t k = 0; k < wpr; ++k) dst[k] |= srow[k];
            }
        }
    }
    return out;
}

BinRel converse(const BinRel& r) {
    BinRel out(r.base());
    for (auto [a, b] : r.pairs()) out.insert(b, a);
    return out;
}

BinRel transitive_closure(const BinRel& r) {
    // Warshall over packed rows: after step k, paths through {0..k} are closed.
    BinRel out = r;
    const std::size_t n = r.size();
    for (Element k = 0; k < n; ++k) {
        std::vector<BinRel::Word> krow(out.row(k).begin(), out.row(k).end());
        for (Element a = 0; a < n; ++a) {
            if (!out.contains(a, k)) continue;
            auto dst = out.row(a);
            for (std::size_t w = 0; w < krow.size(); ++w) dst[w] |= krow[w];
        }
    }
    return out;
}

bool is_reflexive(const BinRel& r) {
    for (Element a = 0; a < r.size(); ++a)
        if (!r.contains(a, a)) return false;
    return true;
}

bool is_symmetric(const BinRel& r) { return converse(r) == r; }

bool is_transitive(const BinRel& r) { return compose(r, r).subset_of(r); }

bool is_equivalence(const BinRel& r) {
    return is_reflexive(r) && is_symmetric(r) && is_transitive(r);
}

std::optional<std::array<Element, 3>> transitivity_violation(const BinRel& r) {
    const std::size_t n = r.size();
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) {
            if (!r.contains(a, b)) continue;
            for (Element c = 0; c < n; ++c)
                if (r.contains(b, c) && !r.contains(a, c)) return std::array{a, b, c};
        }
    return std::nullopt;
}

std::vector<std::vector<Element>> equivalence_classes(const BinRel& e) {
    std::vector<std::vector<Element>> classes;
    std::vector<bool> seen(e.size(), false);
    for (Element a = 0; a < e.size(); ++a) {
        if (seen[a]) continue;
        auto& cls = classes.emplace_back();
        for (Element b = a; b < e.size(); ++b) {
            if (e.contains(a, b) && !seen[b]) {
                seen[b] = true;
                cls.push_back(b);
            }
        }
    }
    return classes;
}

}  // namespace eqra
