#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "eqra/cli.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = eqra::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch() {
    auto dir = fs::temp_directory_path() / "eqra_cli_test";
    fs::create_directories(dir);
    return dir;
}

std::string write(const std::string& name, const std::string& text) {
    auto path = scratch() / name;
    std::ofstream(path) << text;
    return path.string();
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"no-such-command"}).code == 2);
    CHECK(run({"verify-lemma"}).code == 2);
    CHECK(run({"verify-lemma", "--p", "6"}).code == 2);
    CHECK(run({"verify-lemma1", "--p", "5", "--n", "3"}).code == 2);
    CHECK(run({"represent-mn", "10"}).code == 2);
    CHECK(run({"closure", "/nonexistent/file"}).code == 2);
    auto r = run({"closure", write("bad.txt", "3\n0 9\n")});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 2") != std::string::npos);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("verification commands") {
    CHECK(run({"verify-lemma", "--p", "5"}).code == 0);
    CHECK(run({"verify-lemma1", "--p", "7", "--n", "3"}).code == 0);
    CHECK(run({"verify-lemma1", "--p", "5", "--n", "3", "--unsafe"}).code == 0);
    CHECK(run({"example-2x2"}).code == 0);
    CHECK(run({"represent-mn", "4", "--json"}).code == 0);
}

TEST_CASE("json output is byte-stable") {
    auto a = run({"example-2x2", "--json"});
    auto b = run({"example-2x2", "--json"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    auto j = json::parse(a.out);
    CHECK(j["schema"] == 1);
    CHECK(j["overall"] == "pass");
    CHECK_FALSE(j.contains("elapsed_ms"));
    auto t = json::parse(run({"example-2x2", "--json", "--timing"}).out);
    CHECK(t.contains("elapsed_ms"));
}

TEST_CASE("quiet keeps the exit code") {
    auto r = run({"verify-lemma", "--p", "5", "--quiet"});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
}

TEST_CASE("closure and lattice commands") {
    auto e0 = write("e0.txt", "4\n0 0\n0 1\n1 0\n1 1\n2 2\n2 3\n3 2\n3 3\n");
    auto e1 = write("e1.txt", "4\n0 0\n0 2\n2 0\n2 2\n1 1\n1 3\n3 1\n3 3\n");
    auto c = run({"closure", e0, e1, "--json"});
    CHECK(c.code == 0);
    CHECK(json::parse(c.out)["atom_count"] == 4);
    auto l = run({"eq-lattice", e0, e1, "--json"});
    CHECK(l.code == 0);
    auto lj = json::parse(l.out);
    CHECK(lj["elements"].size() == 5);
    CHECK(lj["shape"]["mn"] == 3);
    CHECK(run({"closure", e0, e1, "--atom-budget", "2"}).code == 2);
}

TEST_CASE("evaluation commands") {
    auto f = run({"eval-formula", "--builtin", "2x2", "--formula", "(x = y) | !(E0(x,y) | E1(x,y))", "--json"});
    CHECK(f.code == 0);
    auto fj = json::parse(f.out);
    CHECK(fj["pairs"].size() == 8);
    CHECK(fj["fragment"]["variable_count"] == 2);
    auto t = run({"eval-term", "--builtin", "2x2", "--term", "E0;E1"});
    CHECK(t.code == 0);
    CHECK(t.out.rfind("4\n", 0) == 0);
    CHECK(run({"eval-term", "--builtin", "2x2", "--term", "E0;"}).code == 2);
    CHECK(run({"eval-term", "--builtin", "2x2", "--term", "Q"}).code == 2);
    CHECK(run({"eval-formula", "--builtin", "2x2", "--formula", "E0(x,w)"}).code == 2);
}

TEST_CASE("zp2 emission and pp search") {
    auto dir = (scratch() / "zp2").string();
    auto z = run({"zp2", "--p", "5", "--emit-dir", dir});
    CHECK(z.code == 0);
    CHECK(fs::exists(fs::path(dir) / "alpha4.rel"));
    auto s = run({"pp-search", "--builtin", "zp2:5", "--target", (fs::path(dir) / "alpha4.rel").string(),
                  "--symbols", "E0,E1,A1", "--max-vars", "4", "--max-constraints", "5", "--json"});
    CHECK(s.code == 0);
    CHECK(json::parse(s.out)["found"] == true);
}

TEST_CASE("algebra commands") {
    auto alg = write("lattice.json",
                     R"({"n": 4, "ops": [{"name": "meet", "arity": 2, "table": [[0,0,0,0],[0,1,0,1],[0,0,2,2],[0,1,2,3]]},
                                         {"name": "join", "arity": 2, "table": [[0,1,2,3],[1,1,3,3],[2,3,2,3],[3,3,3,3]]}]})");
    auto con = run({"con", alg, "--json"});
    CHECK(con.code == 0);
    CHECK(json::parse(con.out)["congruences"].size() == 4);
    auto id = write("id.txt", "4\n0 0\n1 1\n2 2\n3 3\n");
    CHECK(run({"ppf-cert", alg, id}).code == 1);
}
