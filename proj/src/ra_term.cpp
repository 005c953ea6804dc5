#include "eqra/ra_term.hpp"

#include <cctype>
#include <unordered_map>

#include "eqra/errors.hpp"

namespace eqra {

RaTerm RaTerm::name(std::string symbol) {
    return RaTerm(std::make_shared<const Node>(Node{Kind::Name, std::move(symbol), nullptr, nullptr}));
}

RaTerm RaTerm::identity() {
    return RaTerm(std::make_shared<const Node>(Node{Kind::Identity, {}, nullptr, nullptr}));
}

RaTerm RaTerm::unite(RaTerm lhs, RaTerm rhs) {
    return RaTerm(std::make_shared<const Node>(Node{Kind::Union, {},
                                                    std::make_unique<RaTerm>(std::move(lhs)),
                                                    std::make_unique<RaTerm>(std::move(rhs))}));
}

RaTerm RaTerm::complement(RaTerm t) {
    return RaTerm(std::make_shared<const Node>(
        Node{Kind::Complement, {}, std::make_unique<RaTerm>(std::move(t)), nullptr}));
}

RaTerm RaTerm::compose(RaTerm lhs, RaTerm rhs) {
    return RaTerm(std::make_shared<const Node>(Node{Kind::Compose, {},
                                                    std::make_unique<RaTerm>(std::move(lhs)),
                                                    std::make_unique<RaTerm>(std::move(rhs))}));
}

RaTerm RaTerm::converse(RaTerm t) {
    return RaTerm(std::make_shared<const Node>(
        Node{Kind::Converse, {}, std::make_unique<RaTerm>(std::move(t)), nullptr}));
}

RaTerm RaTerm::meet(RaTerm lhs, RaTerm rhs) {
    return complement(unite(complement(std::move(lhs)), complement(std::move(rhs))));
}

bool operator==(const RaTerm& a, const RaTerm& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case RaTerm::Kind::Name: return a.symbol() == b.symbol();
        case RaTerm::Kind::Identity: return true;
        case RaTerm::Kind::Complement:
        case RaTerm::Kind::Converse: return a.lhs() == b.lhs();
        case RaTerm::Kind::Union:
        case RaTerm::Kind::Compose: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
    return false;
}

namespace {

class TermParser {
public:
    explicit TermParser(std::string_view text) : text_(text) {}

    RaTerm parse() {
        RaTerm t = sum();
        skip_space();
        if (pos_ != text_.size()) fail("end of input");
        return t;
    }

private:
    RaTerm sum() {
        RaTerm t = seq();
        while (accept('+')) t = RaTerm::unite(std::move(t), seq());
        return t;
    }

    RaTerm seq() {
        RaTerm t = unary();
        while (accept(';')) t = RaTerm::compose(std::move(t), unary());
        return t;
    }

    RaTerm unary() {
        if (accept('~')) return RaTerm::complement(unary());
        RaTerm t = primary();
        while (accept('^')) t = RaTerm::converse(std::move(t));
        return t;
    }

    RaTerm primary() {
        if (accept('(')) {
            RaTerm t = sum();
            if (!accept(')')) fail("')'");
            return t;
        }
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string word(text_.substr(start, pos_ - start));
        if (word.empty() || !is_identifier(word)) {
            pos_ = start;
            fail("identifier, 'id' or '('");
        }
        if (word == "id") return RaTerm::identity();
        return RaTerm::name(std::move(word));
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& expected) {
        std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'"
                                                : std::string("end of input");
        throw ParseError(pos_, expected, found);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

// Binding strength used by the printer: 0 '+', 1 ';', 2 unary, 3 atoms.
int strength(const RaTerm& t) {
    switch (t.kind()) {
        case RaTerm::Kind::Union: return 0;
        case RaTerm::Kind::Compose: return 1;
        case RaTerm::Kind::Complement:
        case RaTerm::Kind::Converse: return 2;
        default: return 3;
    }
}

std::string wrap(const RaTerm& t, int min_strength) {
    std::string s = to_string(t);
    return strength(t) < min_strength ? "(" + s + ")" : s;
}

}  // namespace

RaTerm parse_ra_term(std::string_view text) { return TermParser(text).parse(); }

std::string to_string(const RaTerm& t) {
    switch (t.kind()) {
        case RaTerm::Kind::Name: return t.symbol();
        case RaTerm::Kind::Identity: return "id";
        case RaTerm::Kind::Union: return wrap(t.lhs(), 0) + " + " + wrap(t.rhs(), 1);
        case RaTerm::Kind::Compose: return wrap(t.lhs(), 1) + " ; " + wrap(t.rhs(), 2);
        case RaTerm::Kind::Complement: return "~" + wrap(t.lhs(), 2);
        case RaTerm::Kind::Converse:
            // '^' binds tighter than '~', so a complemented operand needs parentheses.
            return wrap(t.lhs(), 3) + "^";
    }
    return {};
}

std::uint64_t tree_size(const RaTerm& t, std::uint64_t cap) {
    std::unordered_map<const void*, std::uint64_t> memo;
    auto go = [&](auto& self, const RaTerm& u) -> std::uint64_t {
        if (auto it = memo.find(u.id()); it != memo.end()) return it->second;
        std::uint64_t size = 1;
        switch (u.kind()) {
            case RaTerm::Kind::Name:
            case RaTerm::Kind::Identity: break;
            case RaTerm::Kind::Complement:
            case RaTerm::Kind::Converse: size += self(self, u.lhs()); break;
            case RaTerm::Kind::Union:
            case RaTerm::Kind::Compose: size += self(self, u.lhs()) + self(self, u.rhs()); break;
        }
        size = std::min(size, cap);
        memo.emplace(u.id(), size);
        return size;
    };
    return go(go, t);
}

BinRel evaluate_ra_term(const RaTerm& t, const Structure& s) {
    std::unordered_map<const void*, BinRel> memo;
    auto go = [&](auto& self, const RaTerm& u) -> BinRel {
        if (auto it = memo.find(u.id()); it != memo.end()) return it->second;
        BinRel r = [&] {
            switch (u.kind()) {
                case RaTerm::Kind::Name: return s.at(u.symbol());
                case RaTerm::Kind::Identity: return eqra::identity(s.base());
                case RaTerm::Kind::Union: return unite(self(self, u.lhs()), self(self, u.rhs()));
                case RaTerm::Kind::Complement: return eqra::complement(self(self, u.lhs()));
                case RaTerm::Kind::Compose:
                    return eqra::compose(self(self, u.lhs()), self(self, u.rhs()));
                case RaTerm::Kind::Converse: return eqra::converse(self(self, u.lhs()));
            }
            throw Error("bad term");
        }();
        memo.emplace(u.id(), r);
        return r;
    };
    return go(go, t);
}

}  // namespace eqra
