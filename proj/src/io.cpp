#include "eqra/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "eqra/errors.hpp"

namespace eqra {

using json = nlohmann::ordered_json;

namespace {

struct Token {
    std::string text;
    std::size_t column;
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size()) break;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

std::size_t parse_index(const Token& t, std::size_t line, std::size_t limit) {
    std::size_t value = 0;
    if (t.text.empty()) throw FormatError(line, t.column, "expected a number");
    for (char c : t.text) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw FormatError(line, t.column, "expected a number, found '" + t.text + "'");
        value = value * 10 + static_cast<std::size_t>(c - '0');
        if (value > 1'000'000) throw FormatError(line, t.column, "number too large");
    }
    if (value >= limit)
        throw FormatError(line, t.column, t.text + " is out of range (limit " + std::to_string(limit) + ")");
    return value;
}

bool is_bits(const std::string& s) { return s.find_first_not_of("01") == std::string::npos; }

}  // namespace

BinRel parse_relation(const std::string& text) {
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::parse_error& e) {
            throw FormatError(1, e.byte, e.what());
        }
        return relation_from_json(j);
    }

    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    std::optional<BaseSize> n;
    std::vector<std::pair<std::size_t, std::vector<Token>>> rows;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        if (!n) {
            if (tokens.size() != 1) throw FormatError(lineno, tokens[1].column, "expected only the base size");
            try {
                n = BaseSize(parse_index(tokens[0], lineno, BaseSize::kMax + 1));
            } catch (const InvalidBaseSize&) {
                throw FormatError(lineno, 1, "base size must lie in [1, 4096]");
            }
            continue;
        }
        rows.emplace_back(lineno, std::move(tokens));
    }
    if (!n) throw FormatError(lineno == 0 ? 1 : lineno, 1, "missing base size");
    const std::size_t size = n->value();

    auto is_matrix_row = [&](const std::vector<Token>& t) {
        if (t.size() == 1 && t[0].text.size() == size && is_bits(t[0].text)) return true;
        if (size != 2 && t.size() == size)
            return std::all_of(t.begin(), t.end(), [](const Token& x) { return x.text == "0" || x.text == "1"; });
        return false;
    };
    const bool matrix = !rows.empty() && is_matrix_row(rows.front().second) &&
                        !(size == 1 && rows.front().second.size() == 2);

    BinRel r(*n);
    if (matrix) {
        if (rows.size() != size)
            throw FormatError(rows.size() < size ? lineno : rows[size].first, 1,
                              "matrix needs exactly " + std::to_string(size) + " rows");
        for (std::size_t a = 0; a < size; ++a) {
            const auto& [ln, tokens] = rows[a];
            if (!is_matrix_row(tokens)) throw FormatError(ln, tokens[0].column, "malformed matrix row");
            for (std::size_t b = 0; b < size; ++b) {
                char bit = tokens.size() == 1 ? tokens[0].text[b] : tokens[b].text[0];
                if (bit == '1') r.insert(static_cast<Element>(a), static_cast<Element>(b));
            }
        }
        return r;
    }
    for (const auto& [ln, tokens] : rows) {
        if (tokens.size() != 2)
            throw FormatError(ln, tokens.size() > 2 ? tokens[2].column : tokens[0].column,
                              "expected a pair 'a b'");
        auto a = parse_index(tokens[0], ln, size);
        auto b = parse_index(tokens[1], ln, size);
        r.insert(static_cast<Element>(a), static_cast<Element>(b));
    }
    return r;
}

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

BinRel read_relation(std::istream& in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_relation(ss.str());
}

BinRel load_relation(const std::string& path) {
    try {
        return parse_relation(read_file(path));
    } catch (const FormatError& e) {
        throw FormatError(e.line, e.column, path + ": " + e.what());
    }
}

std::string format_relation(const BinRel& r) {
    std::ostringstream out;
    out << r.size() << "\n";
    for (auto [a, b] : r.pairs()) out << a << " " << b << "\n";
    return out.str();
}

json relation_json(const BinRel& r) {
    json pairs = json::array();
    for (auto [a, b] : r.pairs()) pairs.push_back(json::array({a, b}));
    return json{{"n", r.size()}, {"pairs", pairs}};
}

namespace {

BinRel pairs_from_json(BaseSize n, const json& pairs) {
    if (!pairs.is_array()) throw FormatError(1, 1, "'pairs' must be an array");
    BinRel r(n);
    for (const auto& p : pairs) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number_unsigned() || !p[1].is_number_unsigned())
            throw FormatError(1, 1, "each pair must be [a, b] with non-negative integers");
        auto a = p[0].get<std::size_t>(), b = p[1].get<std::size_t>();
        if (a >= n.value() || b >= n.value()) throw FormatError(1, 1, "pair element out of range");
        r.insert(static_cast<Element>(a), static_cast<Element>(b));
    }
    return r;
}

BaseSize base_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_unsigned())
        throw FormatError(1, 1, "missing non-negative integer field 'n'");
    auto n = j["n"].get<std::size_t>();
    if (n < 1 || n > BaseSize::kMax) throw FormatError(1, 1, "base size must lie in [1, 4096]");
    return BaseSize(n);
}

}  // namespace

BinRel relation_from_json(const json& j) {
    BaseSize n = base_from_json(j);
    if (!j.contains("pairs")) throw FormatError(1, 1, "missing field 'pairs'");
    return pairs_from_json(n, j["pairs"]);
}

Structure structure_from_json(const json& j) {
    BaseSize n = base_from_json(j);
    if (!j.contains("relations") || !j["relations"].is_object())
        throw FormatError(1, 1, "missing object field 'relations'");
    Structure s(n);
    for (const auto& [name, value] : j["relations"].items()) {
        const json& pairs = value.is_object() ? value.at("pairs") : value;
        s.add(name, pairs_from_json(n, pairs));
    }
    return s;
}

Structure load_structure(const std::string& path) {
    try {
        return structure_from_json(json::parse(read_file(path)));
    } catch (const json::exception& e) {
        throw FormatError(1, 1, path + ": " + e.what());
    }
}

FinAlgebra algebra_from_json(const json& j) {
    BaseSize n = base_from_json(j);
    if (!j.contains("ops") || !j["ops"].is_array()) throw FormatError(1, 1, "missing array field 'ops'");
    std::vector<Operation> ops;
    for (const auto& o : j["ops"]) {
        Operation op;
        op.name = o.value("name", "op" + std::to_string(ops.size()));
        if (!o.contains("arity") || !o["arity"].is_number_unsigned())
            throw FormatError(1, 1, "operation '" + op.name + "' needs a non-negative 'arity'");
        op.arity = o["arity"].get<std::size_t>();
        if (op.arity > FinAlgebra::kMaxArity) throw FormatError(1, 1, "arity above 3 in '" + op.name + "'");
        auto flatten = [&](auto& self, const json& t, std::size_t depth) -> void {
            if (depth == 0) {
                if (!t.is_number_unsigned()) throw FormatError(1, 1, "table entries must be elements");
                op.table.push_back(t.get<Element>());
                return;
            }
            if (!t.is_array() || t.size() != n.value())
                throw FormatError(1, 1, "table of '" + op.name + "' must nest arrays of length n");
            for (const auto& x : t) self(self, x, depth - 1);
        };
        flatten(flatten, o.at("table"), op.arity);
        ops.push_back(std::move(op));
    }
    return FinAlgebra(n, std::move(ops));
}

FinAlgebra load_algebra(const std::string& path) {
    try {
        return algebra_from_json(json::parse(read_file(path)));
    } catch (const json::exception& e) {
        throw FormatError(1, 1, path + ": " + e.what());
    }
}

json atom_structure_json(const AtomStructure& s) {
    json j;
    j["n"] = s.n;
    j["atom_count"] = s.atom_count();
    json sizes = json::array();
    for (const auto& a : s.atoms) sizes.push_back(a.count());
    j["atom_sizes"] = sizes;
    j["identity_atoms"] = atom_indices(s.identity_atoms);
    j["converse_map"] = s.converse_map;
    json table = json::array();
    for (const auto& row : s.comp_table) {
        json r = json::array();
        for (AtomSet cell : row) r.push_back(atom_indices(cell));
        table.push_back(r);
    }
    j["comp_table"] = table;
    return j;
}

std::string atom_structure_text(const AtomStructure& s) {
    std::ostringstream out;
    out << "atoms: " << s.atom_count() << "\n";
    for (std::size_t i = 0; i < s.atom_count(); ++i) {
        out << "  atom " << i << ": " << s.atoms[i].count() << " pairs";
        if (has_atom(s.identity_atoms, i)) out << " (identity)";
        out << ", converse " << s.converse_map[i] << "\n";
    }
    out << "composition table:\n";
    for (std::size_t i = 0; i < s.atom_count(); ++i) {
        out << "  " << i << ":";
        for (AtomSet cell : s.comp_table[i]) {
            out << " {";
            bool first = true;
            for (auto k : atom_indices(cell)) {
                out << (first ? "" : ",") << k;
                first = false;
            }
            out << "}";
        }
        out << "\n";
    }
    return out.str();
}

json lattice_json(const EqLattice& l, const MnShape& shape) {
    json elements = json::array();
    for (const auto& e : l.elements) elements.push_back(equivalence_classes(e));
    json hasse = json::array();
    for (auto [lo, hi] : l.hasse()) hasse.push_back(json::array({lo, hi}));
    json sh;
    if (shape.m)
        sh = json{{"mn", *shape.m}, {"atoms", shape.atom_indices}};
    else
        sh = "NotMn";
    return json{{"elements", elements}, {"bottom", l.bottom}, {"top", l.top}, {"hasse", hasse},
                {"shape", sh}};
}

}  // namespace eqra
