#include "eqra/formula.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "eqra/errors.hpp"

namespace eqra {

Formula Formula::atom(std::string symbol, std::string x, std::string y) {
    return Formula(Kind::Atom, std::move(symbol), std::move(x), std::move(y), {});
}

Formula Formula::equals(std::string x, std::string y) {
    return Formula(Kind::Equals, {}, std::move(x), std::move(y), {});
}

Formula Formula::conj(std::vector<Formula> parts) {
    if (parts.empty()) throw Error("empty conjunction");
    if (parts.size() == 1) return std::move(parts.front());
    return Formula(Kind::And, {}, {}, {}, std::move(parts));
}

Formula Formula::disj(std::vector<Formula> parts) {
    if (parts.empty()) throw Error("empty disjunction");
    if (parts.size() == 1) return std::move(parts.front());
    return Formula(Kind::Or, {}, {}, {}, std::move(parts));
}

Formula Formula::negate(Formula f) { return Formula(Kind::Not, {}, {}, {}, {std::move(f)}); }

Formula Formula::exists(std::string var, Formula body) {
    return Formula(Kind::Exists, {}, std::move(var), {}, {std::move(body)});
}

Formula Formula::forall(std::string var, Formula body) {
    return Formula(Kind::ForAll, {}, std::move(var), {}, {std::move(body)});
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class FormulaParser {
public:
    explicit FormulaParser(std::string_view text) : text_(text) {}

    Formula parse() {
        Formula f = formula();
        skip_space();
        if (pos_ != text_.size()) fail("end of input");
        return f;
    }

private:
    Formula formula() {
        skip_space();
        std::size_t save = pos_;
        std::string word = peek_word();
        if (word == "exists" || word == "forall") {
            pos_ += word.size();
            std::string var = identifier();
            expect('.');
            Formula body = formula();
            return word == "exists" ? Formula::exists(var, std::move(body))
                                    : Formula::forall(var, std::move(body));
        }
        pos_ = save;
        std::vector<Formula> parts{conj()};
        while (accept('|')) parts.push_back(conj());
        return Formula::disj(std::move(parts));
    }

    Formula conj() {
        std::vector<Formula> parts{lit()};
        while (accept('&')) parts.push_back(lit());
        return Formula::conj(std::move(parts));
    }

    Formula lit() {
        if (accept('!')) return Formula::negate(lit());
        if (accept('(')) {
            Formula f = formula();
            expect(')');
            return f;
        }
        std::string name = identifier();
        if (accept('(')) {
            std::string x = identifier();
            expect(',');
            std::string y = identifier();
            expect(')');
            return Formula::atom(std::move(name), std::move(x), std::move(y));
        }
        if (accept('=')) return Formula::equals(std::move(name), identifier());
        fail("'(' or '='");
    }

    std::string peek_word() {
        std::size_t end = pos_;
        while (end < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
            ++end;
        return std::string(text_.substr(pos_, end - pos_));
    }

    std::string identifier() {
        skip_space();
        std::string word = peek_word();
        if (!is_identifier(word) || word == "exists" || word == "forall") fail("identifier");
        pos_ += word.size();
        return word;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("'") + c + "'");
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& expected) {
        skip_space();
        std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'"
                                                : std::string("end of input");
        throw ParseError(pos_, expected, found);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

bool is_literal(const Formula& f) {
    return f.kind() == Formula::Kind::Atom || f.kind() == Formula::Kind::Equals ||
           f.kind() == Formula::Kind::Not;
}

std::string print_lit(const Formula& f) {
    return is_literal(f) ? to_string(f) : "(" + to_string(f) + ")";
}

std::string join(const std::vector<Formula>& parts, const std::string& sep, auto print) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += print(parts[i]);
    }
    return out;
}

}  // namespace

Formula parse_formula(std::string_view text) { return FormulaParser(text).parse(); }

std::string to_string(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
        case K::Atom: return f.symbol() + "(" + f.first_var() + "," + f.second_var() + ")";
        case K::Equals: return f.first_var() + " = " + f.second_var();
        case K::Not: return "!" + print_lit(f.body());
        case K::And: return join(f.children(), " & ", print_lit);
        case K::Or:
            return join(f.children(), " | ", [](const Formula& c) {
                return c.kind() == K::And ? to_string(c) : print_lit(c);
            });
        case K::Exists: return "exists " + f.first_var() + ". " + to_string(f.body());
        case K::ForAll: return "forall " + f.first_var() + ". " + to_string(f.body());
    }
    return {};
}

// ---------------------------------------------------------------------------
// Syntactic queries

std::set<std::string> free_variables(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
        case K::Atom:
        case K::Equals: return {f.first_var(), f.second_var()};
        case K::Exists:
        case K::ForAll: {
            auto vars = free_variables(f.body());
            vars.erase(f.first_var());
            return vars;
        }
        default: {
            std::set<std::string> vars;
            for (const auto& c : f.children()) vars.merge(free_variables(c));
            return vars;
        }
    }
}

std::set<std::string> variables(const Formula& f) {
    std::set<std::string> vars;
    if (!f.first_var().empty()) vars.insert(f.first_var());
    if (!f.second_var().empty()) vars.insert(f.second_var());
    for (const auto& c : f.children()) vars.merge(variables(c));
    return vars;
}

namespace {

bool pp_shaped(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
        case K::Atom:
        case K::Equals: return true;
        case K::And:
        case K::Exists:
            return std::all_of(f.children().begin(), f.children().end(), pp_shaped);
        default: return false;
    }
}

}  // namespace

FragmentReport fragment_report(const Formula& f) {
    FragmentReport r;
    r.variable_count = variables(f).size();
    r.is_pp = pp_shaped(f);
    r.is_fo3 = r.variable_count <= 3;
    return r;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

// Satisfying assignments of a subformula over its sorted free variables.
// Assignment index = sum of value(vars[i]) * n^i.
struct Table {
    std::vector<std::string> vars;
    std::vector<std::uint8_t> bits;
};

constexpr std::uint64_t kMaxTableCells = std::uint64_t{1} << 27;

class Evaluator {
public:
    Evaluator(const Structure& s) : s_(s), n_(s.size()) {}

    Table eval(const Formula& f) {
        std::string key = to_string(f);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        Table t = compute(f);
        cache_.emplace(std::move(key), t);
        return t;
    }

    Table extend(const Table& t, const std::vector<std::string>& target) const {
        Table out = blank(target);
        std::vector<std::size_t> pos;
        for (const auto& v : t.vars)
            pos.push_back(static_cast<std::size_t>(
                std::find(target.begin(), target.end(), v) - target.begin()));
        std::vector<std::uint64_t> stride(t.vars.size());
        for (std::size_t i = 0; i < stride.size(); ++i) stride[i] = power(i);
        std::vector<std::size_t> digits(target.size(), 0);
        for (std::size_t idx = 0; idx < out.bits.size(); ++idx) {
            std::uint64_t src = 0;
            for (std::size_t i = 0; i < pos.size(); ++i) src += digits[pos[i]] * stride[i];
            out.bits[idx] = t.bits[src];
            increment(digits);
        }
        return out;
    }

private:
    Table blank(std::vector<std::string> vars, std::uint8_t fill = 0) const {
        std::uint64_t cells = 1;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            cells *= n_;
            if (cells > kMaxTableCells)
                throw TooLarge("formula evaluation table exceeds " +
                               std::to_string(kMaxTableCells) + " cells");
        }
        return Table{std::move(vars), std::vector<std::uint8_t>(cells, fill)};
    }

    std::uint64_t power(std::size_t k) const {
        std::uint64_t r = 1;
        while (k--) r *= n_;
        return r;
    }

    void increment(std::vector<std::size_t>& digits) const {
        for (auto& d : digits) {
            if (++d < n_) return;
            d = 0;
        }
    }

    Table compute(const Formula& f) {
        using K = Formula::Kind;
        switch (f.kind()) {
            case K::Atom: {
                const BinRel& r = s_.at(f.symbol());
                const auto& x = f.first_var();
                const auto& y = f.second_var();
                if (x == y) {
                    Table t = blank({x});
                    for (Element a = 0; a < n_; ++a) t.bits[a] = r.contains(a, a);
                    return t;
                }
                Table t = blank(x < y ? std::vector{x, y} : std::vector{y, x});
                for (Element a = 0; a < n_; ++a)
                    for (Element b = 0; b < n_; ++b) {
                        // x is the low digit iff x < y
                        std::size_t idx = x < y ? a + b * n_ : b + a * n_;
                        t.bits[idx] = r.contains(a, b);
                    }
                return t;
            }
            case K::Equals: {
                const auto& x = f.first_var();
                const auto& y = f.second_var();
                if (x == y) return blank({x}, 1);
                Table t = blank(x < y ? std::vector{x, y} : std::vector{y, x});
                for (Element a = 0; a < n_; ++a) t.bits[a + a * n_] = 1;
                return t;
            }
            case K::Not: {
                Table t = eval(f.body());
                for (auto& b : t.bits) b = !b;
                return t;
            }
            case K::And:
            case K::Or: {
                std::set<std::string> all;
                std::vector<Table> parts;
                for (const auto& c : f.children()) {
                    parts.push_back(eval(c));
                    all.insert(parts.back().vars.begin(), parts.back().vars.end());
                }
                std::vector<std::string> vars(all.begin(), all.end());
                const bool is_and = f.kind() == K::And;
                Table out = blank(vars, is_and ? 1 : 0);
                for (const auto& p : parts) {
                    Table e = extend(p, vars);
                    for (std::size_t i = 0; i < out.bits.size(); ++i)
                        out.bits[i] = is_and ? (out.bits[i] & e.bits[i]) : (out.bits[i] | e.bits[i]);
                }
                return out;
            }
            case K::Exists:
            case K::ForAll: {
                Table t = eval(f.body());
                auto it = std::find(t.vars.begin(), t.vars.end(), f.first_var());
                if (it == t.vars.end()) return t;
                const auto pos = static_cast<std::size_t>(it - t.vars.begin());
                std::vector<std::string> vars = t.vars;
                vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(pos));
                const bool is_exists = f.kind() == K::Exists;
                Table out = blank(vars, is_exists ? 0 : 1);
                const std::uint64_t stride = power(pos);
                for (std::size_t idx = 0; idx < t.bits.size(); ++idx) {
                    std::size_t target = idx % stride + (idx / (stride * n_)) * stride;
                    if (is_exists)
                        out.bits[target] |= t.bits[idx];
                    else
                        out.bits[target] &= t.bits[idx];
                }
                return out;
            }
        }
        throw Error("bad formula");
    }

    const Structure& s_;
    std::size_t n_;
    std::map<std::string, Table> cache_;
};

}  // namespace

BinRel evaluate_binary(const Formula& f, const Structure& s, const std::string& x,
                       const std::string& y) {
    if (x == y) throw Error("output variables must be distinct");
    for (const auto& v : free_variables(f))
        if (v != x && v != y) throw FreeVariableOutsideXY(v);
    Evaluator ev(s);
    Table t = ev.extend(ev.eval(f), x < y ? std::vector{x, y} : std::vector{y, x});
    const std::size_t n = s.size();
    BinRel out(s.base());
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) {
            std::size_t idx = x < y ? a + b * n : b + a * n;
            if (t.bits[idx]) out.insert(a, b);
        }
    return out;
}

// ---------------------------------------------------------------------------
// RA term -> three-variable formula

namespace {

const std::string kPool[3] = {"v0", "v1", "v2"};

Formula translate(const RaTerm& t, int from, int to) {
    const int spare = 3 - from - to;
    switch (t.kind()) {
        case RaTerm::Kind::Name: return Formula::atom(t.symbol(), kPool[from], kPool[to]);
        case RaTerm::Kind::Identity: return Formula::equals(kPool[from], kPool[to]);
        case RaTerm::Kind::Union:
            return Formula::disj({translate(t.lhs(), from, to), translate(t.rhs(), from, to)});
        case RaTerm::Kind::Complement: return Formula::negate(translate(t.lhs(), from, to));
        case RaTerm::Kind::Converse: return translate(t.lhs(), to, from);
        case RaTerm::Kind::Compose:
            // The spare variable is rebound; each side reuses the other free name.
            return Formula::exists(kPool[spare], Formula::conj({translate(t.lhs(), from, spare),
                                                                translate(t.rhs(), spare, to)}));
    }
    throw Error("bad term");
}

}  // namespace

Formula ra_term_to_fo3(const RaTerm& t) { return translate(t, 0, 1); }

}  // namespace eqra
