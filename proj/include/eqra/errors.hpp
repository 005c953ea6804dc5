#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eqra {

// Base of every error the library throws on bad input or exhausted guards.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SizeMismatch : public Error {
public:
    SizeMismatch(std::size_t lhs, std::size_t rhs)
        : Error("base size mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs)),
          lhs(lhs), rhs(rhs) {}
    std::size_t lhs, rhs;
};

class InvalidBaseSize : public Error {
public:
    explicit InvalidBaseSize(std::size_t n)
        : Error("base size out of range [1, 4096]: " + std::to_string(n)), n(n) {}
    std::size_t n;
};

class AtomBudgetExceeded : public Error {
public:
    AtomBudgetExceeded(std::size_t reached, std::size_t budget)
        : Error("atom budget " + std::to_string(budget) + " exceeded (reached " +
                std::to_string(reached) + " atoms)"),
          reached(reached), budget(budget) {}
    std::size_t reached, budget;
};

class ParseError : public Error {
public:
    ParseError(std::size_t position, std::string expected, std::string found)
        : Error("parse error at " + std::to_string(position) + ": expected " + expected +
                ", found " + found),
          position(position), expected(std::move(expected)), found(std::move(found)) {}
    std::size_t position;
    std::string expected, found;
};

class FormatError : public Error {
public:
    FormatError(std::size_t line, std::size_t column, const std::string& message)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                message),
          line(line), column(column) {}
    std::size_t line, column;
};

class UnknownSymbol : public Error {
public:
    explicit UnknownSymbol(const std::string& symbol)
        : Error("unknown relation symbol '" + symbol + "'"), symbol(symbol) {}
    std::string symbol;
};

class FreeVariableOutsideXY : public Error {
public:
    explicit FreeVariableOutsideXY(const std::string& var)
        : Error("free variable '" + var + "' is not one of the output variables"), var(var) {}
    std::string var;
};

class NotAnEquivalence : public Error {
public:
    explicit NotAnEquivalence(std::size_t index)
        : Error("element " + std::to_string(index) + " is not an equivalence relation"),
          index(index) {}
    std::size_t index;
};

class NotMeetClosed : public Error {
public:
    NotMeetClosed(std::size_t i, std::size_t j)
        : Error("meet of elements " + std::to_string(i) + " and " + std::to_string(j) +
                " is missing"),
          i(i), j(j) {}
    std::size_t i, j;
};

class NotJoinClosed : public Error {
public:
    NotJoinClosed(std::size_t i, std::size_t j)
        : Error("join of elements " + std::to_string(i) + " and " + std::to_string(j) +
                " is missing"),
          i(i), j(j) {}
    std::size_t i, j;
};

class BudgetTooLarge : public Error {
public:
    explicit BudgetTooLarge(double estimate)
        : Error("pp search space too large (estimated " + std::to_string(estimate) +
                " networks)"),
          estimate(estimate) {}
    double estimate;
};

class BaseTooLarge : public Error {
public:
    BaseTooLarge(std::size_t n, std::size_t limit)
        : Error("base size " + std::to_string(n) + " exceeds limit " + std::to_string(limit)),
          n(n), limit(limit) {}
    std::size_t n, limit;
};

class GeneratorNotCompatible : public Error {
public:
    explicit GeneratorNotCompatible(std::size_t index)
        : Error("generator " + std::to_string(index) + " is not compatible with the algebra"),
          index(index) {}
    std::size_t index;
};

class NotPrime : public Error {
public:
    explicit NotPrime(long p) : Error(std::to_string(p) + " is not prime"), p(p) {}
    long p;
};

class TooLarge : public Error {
public:
    explicit TooLarge(const std::string& what) : Error(what) {}
};

class NOutOfRange : public Error {
public:
    NOutOfRange(long p, long n)
        : Error("n = " + std::to_string(n) + " must satisfy 1 <= n < p - 2 = " +
                std::to_string(p - 2)),
          p(p), n(n) {}
    long p, n;
};

class MOutOfRange : public Error {
public:
    explicit MOutOfRange(long m)
        : Error("m = " + std::to_string(m) + " outside supported range [1, 9]"), m(m) {}
    long m;
};

}  // namespace eqra
