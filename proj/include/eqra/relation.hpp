#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace eqra {

using Element = std::uint32_t;
using Pair = std::pair<Element, Element>;

// Number of elements of the base set; elements are 0..n-1.
class BaseSize {
public:
    static constexpr std::size_t kMax = 4096;

    explicit BaseSize(std::size_t n);
    std::size_t value() const { return n_; }
    friend bool operator==(BaseSize, BaseSize) = default;

private:
    std::size_t n_;
};

// A binary relation on {0..n-1}, stored as an n x n bit matrix with 64-bit
// packed rows. Bits past column n-1 in each row are always zero.
class BinRel {
public:
    using Word = std::uint64_t;

    explicit BinRel(BaseSize n);
    static BinRel from_pairs(BaseSize n, std::span<const Pair> pairs);

    std::size_t size() const { return n_; }
    BaseSize base() const { return BaseSize(n_); }
    std::size_t words_per_row() const { return wpr_; }

    bool contains(Element a, Element b) const {
        return (bits_[a * wpr_ + (b >> 6)] >> (b & 63)) & 1u;
    }
    void insert(Element a, Element b) { bits_[a * wpr_ + (b >> 6)] |= Word{1} << (b & 63); }
    void erase(Element a, Element b) { bits_[a * wpr_ + (b >> 6)] &= ~(Word{1} << (b & 63)); }

    std::span<const Word> row(Element a) const { return {bits_.data() + a * wpr_, wpr_}; }
    std::span<Word> row(Element a) { return {bits_.data() + a * wpr_, wpr_}; }
    std::span<const Word> words() const { return bits_; }

    std::size_t count() const;
    bool empty() const;
    bool subset_of(const BinRel& other) const;
    bool intersects(const BinRel& other) const;
    std::vector<Pair> pairs() const;

    friend bool operator==(const BinRel&, const BinRel&) = default;
    // Canonical order: base size, then lexicographic order of the sorted pair lists.
    friend std::strong_ordering operator<=>(const BinRel& lhs, const BinRel& rhs);

private:
    friend BinRel complement(const BinRel&);

    std::size_t n_;
    std::size_t wpr_;
    std::vector<Word> bits_;
};

BinRel identity(BaseSize n);
BinRel universal(BaseSize n);

BinRel unite(const BinRel& r, const BinRel& s);
BinRel intersect(const BinRel& r, const BinRel& s);
BinRel complement(const BinRel& r);
BinRel difference(const BinRel& r, const BinRel& s);

inline BinRel operator|(const BinRel& r, const BinRel& s) { return unite(r, s); }
inline BinRel operator&(const BinRel& r, const BinRel& s) { return intersect(r, s); }
inline BinRel operator~(const BinRel& r) { return complement(r); }

// (a,b) in result iff some c has (a,c) in r and (c,b) in s.
BinRel compose(const BinRel& r, const BinRel& s);
BinRel converse(const BinRel& r);
BinRel transitive_closure(const BinRel& r);

bool is_reflexive(const BinRel& r);
bool is_symmetric(const BinRel& r);
bool is_transitive(const BinRel& r);
bool is_equivalence(const BinRel& r);

// A triple (a,b,c) with aRb, bRc but not aRc, if one exists.
std::optional<std::array<Element, 3>> transitivity_violation(const BinRel& r);

// Classes of an equivalence, each sorted, ordered by smallest member.
std::vector<std::vector<Element>> equivalence_classes(const BinRel& e);

void require_same_size(const BinRel& r, const BinRel& s);

}  // namespace eqra
