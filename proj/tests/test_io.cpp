#include <doctest.h>

#include <sstream>

#include "eqra/errors.hpp"
#include "eqra/io.hpp"

using namespace eqra;
using json = nlohmann::ordered_json;

TEST_CASE("pair list text") {
    auto r = parse_relation("3\n0 1\n# comment\n2 2\n");
    CHECK(r.size() == 3);
    CHECK(r.pairs() == std::vector<Pair>{{0, 1}, {2, 2}});
    CHECK(parse_relation(format_relation(r)) == r);
}

TEST_CASE("matrix text") {
    auto a = parse_relation("3\n010\n000\n001\n");
    auto b = parse_relation("3\n0 1 0\n0 0 0\n0 0 1\n");
    CHECK(a == b);
    CHECK(a.pairs() == std::vector<Pair>{{0, 1}, {2, 2}});
    auto two = parse_relation("2\n01\n10\n");
    CHECK(two.pairs() == std::vector<Pair>{{0, 1}, {1, 0}});
    auto pairs2 = parse_relation("2\n0 1\n");
    CHECK(pairs2.pairs() == std::vector<Pair>{{0, 1}});
}

TEST_CASE("json relations") {
    auto r = parse_relation(R"({"n": 4, "pairs": [[0, 3], [3, 0]]})");
    CHECK(r.count() == 2);
    CHECK(relation_from_json(relation_json(r)) == r);
    CHECK(relation_json(r).dump() == R"({"n":4,"pairs":[[0,3],[3,0]]})");
}

TEST_CASE("format errors carry positions") {
    try {
        parse_relation("3\n0 1\n0 7\n");
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(e.line == 3);
    }
    CHECK_THROWS_AS(parse_relation(""), FormatError);
    CHECK_THROWS_AS(parse_relation("x\n"), FormatError);
    CHECK_THROWS_AS(parse_relation("3\n010\n000\n"), FormatError);
    CHECK_THROWS_AS(parse_relation("3\n0 1 2\n"), FormatError);
    CHECK_THROWS_AS(parse_relation(R"({"n": 2, "pairs": [[0, 2]]})"), Error);
    CHECK_THROWS_AS(parse_relation(R"({"n": 2)"), FormatError);
}

TEST_CASE("structures and algebras from json") {
    auto s = structure_from_json(json::parse(R"({"n": 3, "relations": {"R": [[0, 1]], "S": {"pairs": [[2, 2]]}}})"));
    CHECK(s.at("R").contains(0, 1));
    CHECK(s.at("S").contains(2, 2));
    CHECK_THROWS_AS(structure_from_json(json::parse(R"({"n": 3, "relations": {"1R": []}})")), Error);

    auto a = algebra_from_json(json::parse(
        R"({"n": 2, "ops": [{"name": "neg", "arity": 1, "table": [1, 0]},
                            {"name": "and", "arity": 2, "table": [[0, 0], [0, 1]]}]})"));
    CHECK(a.operations().size() == 2);
    std::vector<Element> args{1, 1};
    CHECK(a.operations()[1].apply(args, 2) == 1);
    CHECK_THROWS_AS(algebra_from_json(json::parse(R"({"n": 2, "ops": [{"name": "f", "arity": 2, "table": [0, 1]}]})")),
                    Error);
}

TEST_CASE("missing files") {
    CHECK_THROWS_AS(load_relation("/nonexistent/relation.txt"), Error);
}
