#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "eqra/relation.hpp"
#include "eqra/structure.hpp"

namespace eqra {

// Relation-algebra term. Nodes are immutable and shared, so terms built by
// the closure engine form a DAG rather than a tree.
class RaTerm {
public:
    enum class Kind { Name, Identity, Union, Complement, Compose, Converse };

    static RaTerm name(std::string symbol);
    static RaTerm identity();
    static RaTerm unite(RaTerm lhs, RaTerm rhs);
    static RaTerm complement(RaTerm t);
    static RaTerm compose(RaTerm lhs, RaTerm rhs);
    static RaTerm converse(RaTerm t);
    // ~(~lhs + ~rhs)
    static RaTerm meet(RaTerm lhs, RaTerm rhs);

    Kind kind() const { return node_->kind; }
    const std::string& symbol() const { return node_->symbol; }
    // Operand of a unary node, or left operand of a binary one.
    const RaTerm& lhs() const { return *node_->lhs; }
    const RaTerm& rhs() const { return *node_->rhs; }
    const void* id() const { return node_.get(); }

    friend bool operator==(const RaTerm& a, const RaTerm& b);

private:
    struct Node {
        Kind kind;
        std::string symbol;
        std::unique_ptr<RaTerm> lhs, rhs;
    };
    explicit RaTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

// Concrete syntax: ';' compose, '+' union, '~' complement, postfix '^'
// converse, 'id' identity. Precedence ~,^ > ; > +, binary operators
// associate to the left.
RaTerm parse_ra_term(std::string_view text);
std::string to_string(const RaTerm& t);

// Number of nodes of the tree obtained by unfolding shared subterms,
// saturating at `cap`.
std::uint64_t tree_size(const RaTerm& t, std::uint64_t cap = UINT64_MAX);

BinRel evaluate_ra_term(const RaTerm& t, const Structure& s);

}  // namespace eqra
