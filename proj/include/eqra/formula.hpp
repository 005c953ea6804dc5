#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "eqra/ra_term.hpp"
#include "eqra/relation.hpp"
#include "eqra/structure.hpp"

namespace eqra {

// First-order formula over binary relation symbols. And/Or are n-ary.
class Formula {
public:
    enum class Kind { Atom, Equals, And, Or, Not, Exists, ForAll };

    static Formula atom(std::string symbol, std::string x, std::string y);
    static Formula equals(std::string x, std::string y);
    static Formula conj(std::vector<Formula> parts);
    static Formula disj(std::vector<Formula> parts);
    static Formula negate(Formula f);
    static Formula exists(std::string var, Formula body);
    static Formula forall(std::string var, Formula body);

    Kind kind() const { return kind_; }
    const std::string& symbol() const { return symbol_; }
    // Atom/Equals arguments; the quantified variable is first_var().
    const std::string& first_var() const { return var1_; }
    const std::string& second_var() const { return var2_; }
    const std::vector<Formula>& children() const { return children_; }
    const Formula& body() const { return children_.front(); }

    friend bool operator==(const Formula&, const Formula&) = default;

private:
    Formula(Kind kind, std::string symbol, std::string v1, std::string v2,
            std::vector<Formula> children)
        : kind_(kind), symbol_(std::move(symbol)), var1_(std::move(v1)), var2_(std::move(v2)),
          children_(std::move(children)) {}

    Kind kind_;
    std::string symbol_;
    std::string var1_, var2_;
    std::vector<Formula> children_;
};

struct FragmentReport {
    std::size_t variable_count = 0;
    bool is_pp = false;
    bool is_fo3 = false;
};

Formula parse_formula(std::string_view text);
std::string to_string(const Formula& f);

std::set<std::string> free_variables(const Formula& f);
// Every variable name occurring anywhere, bound or free.
std::set<std::string> variables(const Formula& f);
FragmentReport fragment_report(const Formula& f);

// {(a,b) : s |= f[x:=a, y:=b]}. Subformulas are evaluated bottom-up into
// tables over their free variables.
BinRel evaluate_binary(const Formula& f, const Structure& s, const std::string& x,
                       const std::string& y);

// Three-variable translation with free variables v0 (source) and v1 (target).
Formula ra_term_to_fo3(const RaTerm& t);

}  // namespace eqra
