#include "eqra/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "eqra/algebra.hpp"
#include "eqra/closure.hpp"
#include "eqra/constructions.hpp"
#include "eqra/eqlattice.hpp"
#include "eqra/errors.hpp"
#include "eqra/formula.hpp"
#include "eqra/io.hpp"
#include "eqra/pp.hpp"
#include "eqra/verify.hpp"

namespace eqra::cli {

using json = nlohmann::ordered_json;

namespace {

struct StructureArgs {
    std::string structure_file;
    std::vector<std::string> rels;  // NAME=PATH
    std::string builtin;            // 2x2 | zp2:P

    void attach(CLI::App* cmd) {
        cmd->add_option("--structure", structure_file, "structure JSON file");
        cmd->add_option("--rel", rels, "named relation NAME=PATH (repeatable)");
        cmd->add_option("--builtin", builtin, "built-in structure: 2x2 or zp2:P");
    }

    Structure load() const {
        std::optional<Structure> s;
        if (!structure_file.empty()) s = load_structure(structure_file);
        if (!builtin.empty()) {
            if (s) throw Error("use either --structure or --builtin");
            if (builtin == "2x2")
                s = two_by_two_structure();
            else if (builtin.rfind("zp2:", 0) == 0)
                s = zp2_structure(std::stol(builtin.substr(4)));
            else
                throw Error("unknown builtin '" + builtin + "'");
        }
        for (const auto& spec : rels) {
            auto eq = spec.find('=');
            if (eq == std::string::npos) throw Error("--rel expects NAME=PATH");
            BinRel r = load_relation(spec.substr(eq + 1));
            if (!s) s.emplace(r.base());
            s->add(spec.substr(0, eq), std::move(r));
        }
        if (!s) throw Error("no structure given (use --structure, --rel or --builtin)");
        return *s;
    }
};

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string part; std::getline(ss, part, ',');)
        if (!part.empty()) out.push_back(part);
    return out;
}

std::vector<BinRel> load_relations(const std::vector<std::string>& files) {
    std::vector<BinRel> out;
    for (const auto& f : files) out.push_back(load_relation(f));
    return out;
}

class Runner {
public:
    Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    int run(const std::vector<std::string>& args) {
        CLI::App app{"Relation-algebra closures and equivalence lattices of finite relations", "eqra"};
        app.require_subcommand(1);
        app.fallthrough();
        app.add_flag("--json", config_.json, "emit JSON");
        app.add_flag("--quiet", config_.quiet, "suppress output, keep the exit code");
        app.add_flag("--timing", config_.timing, "include elapsed_ms in certificates");
        app.add_option("--atom-budget", config_.atom_budget, "maximum number of atoms (<= 64)");

        if (const char* env = std::getenv("EQRA_ATOM_BUDGET")) {
            try {
                config_.atom_budget = std::stoul(env);
            } catch (const std::exception&) {
                err_ << "error: EQRA_ATOM_BUDGET must be a positive integer\n";
                return kExitUsage;
            }
        }

        std::vector<std::string> files;
        std::string algebra_file, formula_text, free_vars = "x,y", term_text, target_file, symbols,
                                                emit_dir;
        long p = 0, n = 0, m = 0;
        std::optional<long> prime;
        StructureArgs sargs;
        int exit_code = kExitOk;

        auto* closure = app.add_subcommand("closure", "atom structure of RA(relations)");
        closure->add_option("files", files, "relation files")->required();
        closure->callback([&] { exit_code = cmd_closure(load_relations(files)); });

        auto* eq = app.add_subcommand("eq-lattice", "equivalence lattice of RA(relations)");
        eq->add_option("files", files, "relation files")->required();
        eq->callback([&] { exit_code = cmd_eq_lattice(load_relations(files)); });

        auto* con = app.add_subcommand("con", "congruence lattice of a finite algebra");
        con->add_option("algebra", algebra_file, "algebra JSON file")->required();
        con->callback([&] { exit_code = cmd_con(load_algebra(algebra_file)); });

        auto* ppf = app.add_subcommand("ppf-cert", "certify Eq(PPF(L)) = L for a congruence lattice");
        ppf->add_option("algebra", algebra_file, "algebra JSON file")->required();
        ppf->add_option("rels", files, "generating congruences")->required();
        ppf->callback([&] {
            exit_code = emit(ppf_eq_certificate(load_relations(files), load_algebra(algebra_file)));
        });

        auto* evf = app.add_subcommand("eval-formula", "evaluate a formula as a binary relation");
        sargs.attach(evf);
        evf->add_option("--formula", formula_text, "formula text")->required();
        evf->add_option("--free", free_vars, "output variables x,y");
        evf->callback([&] { exit_code = cmd_eval_formula(sargs.load(), formula_text, free_vars); });

        auto* evt = app.add_subcommand("eval-term", "evaluate a relation-algebra term");
        sargs.attach(evt);
        evt->add_option("--term", term_text, "term text")->required();
        evt->callback([&] { exit_code = cmd_eval_term(sargs.load(), term_text); });

        auto* pps = app.add_subcommand("pp-search", "bounded search for a pp definition");
        sargs.attach(pps);
        pps->add_option("--target", target_file, "target relation file")->required();
        pps->add_option("--max-vars", config_.pp_budget.max_vars, "variable budget");
        pps->add_option("--max-constraints", config_.pp_budget.max_constraints, "constraint budget");
        pps->add_option("--symbols", symbols, "comma-separated symbols to use");
        pps->callback([&] {
            exit_code = cmd_pp_search(sargs.load(), load_relation(target_file), split_commas(symbols));
        });

        auto* zp2 = app.add_subcommand("zp2", "kernel relations on Z_p^2");
        zp2->add_option("--p", p, "prime")->required();
        zp2->add_option("--emit-dir", emit_dir, "write one relation file per kernel");
        zp2->callback([&] { exit_code = cmd_zp2(p, emit_dir); });

        auto* rep = app.add_subcommand("represent-mn", "represent M_m as Eq(RA(M))");
        rep->add_option("m", m, "number of middle elements")->required();
        rep->add_option("--prime", prime, "prime override");
        rep->callback([&] { exit_code = cmd_represent(m, prime); });

        auto* vl = app.add_subcommand("verify-lemma", "distinct kernels compose to the universal relation");
        vl->add_option("--p", p, "prime")->required();
        vl->callback([&] { exit_code = emit(verify_lemma(p)); });

        auto* vl1 = app.add_subcommand("verify-lemma1", "verify Eq(RA(M)) = M");
        vl1->add_option("--p", p, "prime")->required();
        vl1->add_option("--n", n, "number of alpha generators")->required();
        vl1->add_flag("--unsafe", config_.unsafe, "allow n outside 1 <= n < p-2");
        vl1->callback([&] { exit_code = emit(verify_lemma1(p, n, config_)); });

        auto* ex = app.add_subcommand("example-2x2", "the four-element example");
        ex->callback([&] { exit_code = emit(verify_example_2x2(config_)); });

        auto* all = app.add_subcommand("verify-all", "run every reproduction check");
        all->add_flag("--unsafe", config_.unsafe, "also run n = p-2 (informational)");
        all->add_option("--jobs", config_.jobs, "worker threads")->check(CLI::PositiveNumber);
        all->add_option("--seed", config_.seed, "seed for the property checks");
        all->callback([&] { exit_code = emit(verify_all(config_)); });

        std::vector<std::string> argv_store{"eqra"};
        argv_store.insert(argv_store.end(), args.begin(), args.end());
        std::vector<char*> argv;
        for (auto& a : argv_store) argv.push_back(a.data());

        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::ParseError& e) {
            if (e.get_exit_code() == 0) {
                out_ << app.help();
                return kExitOk;
            }
            err_ << "error: " << e.what() << "\n" << app.help();
            return kExitUsage;
        } catch (const Error& e) {
            err_ << "error: " << e.what() << "\n";
            return kExitUsage;
        } catch (const std::invalid_argument& e) {
            err_ << "error: " << e.what() << "\n";
            return kExitUsage;
        } catch (const std::out_of_range& e) {
            err_ << "error: " << e.what() << "\n";
            return kExitUsage;
        }
        return exit_code;
    }

private:
    std::ostream& stdout_() {
        static std::ostream null_stream(nullptr);
        return config_.quiet ? null_stream : out_;
    }

    void check_budget() const {
        if (config_.atom_budget == 0 || config_.atom_budget > kMaxAtoms)
            throw Error("atom budget must lie in [1, 64]");
    }

    int emit(Certificate cert) {
        cert.set_elapsed_ms(
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count());
        if (config_.json)
            stdout_() << cert.to_json(config_.timing).dump(2) << "\n";
        else
            stdout_() << cert.to_text();
        if (config_.timing && !config_.json)
            stdout_() << "elapsed: " << cert.elapsed_ms() << " ms\n";
        return cert.passed() ? kExitOk : kExitFailed;
    }

    int cmd_closure(const std::vector<BinRel>& gens) {
        check_budget();
        ClosureOptions options;
        options.atom_budget = config_.atom_budget;
        auto s = ra_closure(gens, options);
        if (config_.json)
            stdout_() << atom_structure_json(s).dump(2) << "\n";
        else
            stdout_() << atom_structure_text(s);
        return kExitOk;
    }

    int cmd_eq_lattice(const std::vector<BinRel>& gens) {
        check_budget();
        ClosureOptions options;
        options.atom_budget = config_.atom_budget;
        auto s = ra_closure(gens, options);
        auto lattice = build_lattice(extract_equivalences(s, config_.atom_budget));
        auto shape = mn_shape(lattice);
        if (config_.json) {
            stdout_() << lattice_json(lattice, shape).dump(2) << "\n";
            return kExitOk;
        }
        auto& o = stdout_();
        o << "elements: " << lattice.size() << "\n";
        for (std::size_t i = 0; i < lattice.size(); ++i)
            o << "  " << i << ": " << json(equivalence_classes(lattice.elements[i])).dump() << "\n";
        o << "hasse:";
        for (auto [lo, hi] : lattice.hasse()) o << " " << lo << "<" << hi;
        o << "\nshape: " << (shape.m ? "M_" + std::to_string(*shape.m) : std::string("NotMn")) << "\n";
        return kExitOk;
    }

    int cmd_con(const FinAlgebra& a) {
        auto con = congruences(a);
        if (config_.json) {
            json classes = json::array();
            for (const auto& c : con) classes.push_back(equivalence_classes(c));
            stdout_() << json{{"n", a.size()}, {"congruences", classes}}.dump(2) << "\n";
            return kExitOk;
        }
        stdout_() << con.size() << " congruences\n";
        for (const auto& c : con) stdout_() << "  " << json(equivalence_classes(c)).dump() << "\n";
        return kExitOk;
    }

    int cmd_eval_formula(const Structure& s, const std::string& text, const std::string& free) {
        auto vars = split_commas(free);
        if (vars.size() != 2) throw Error("--free expects two variables, e.g. x,y");
        auto f = parse_formula(text);
        auto r = evaluate_binary(f, s, vars[0], vars[1]);
        auto report = fragment_report(f);
        if (config_.json) {
            json j = relation_json(r);
            j["fragment"] = {{"variable_count", report.variable_count}, {"is_pp", report.is_pp},
                             {"is_fo3", report.is_fo3}};
            stdout_() << j.dump(2) << "\n";
        } else {
            stdout_() << format_relation(r);
        }
        return kExitOk;
    }

    int cmd_eval_term(const Structure& s, const std::string& text) {
        auto r = evaluate_ra_term(parse_ra_term(text), s);
        stdout_() << (config_.json ? relation_json(r).dump(2) + "\n" : format_relation(r));
        return kExitOk;
    }

    int cmd_pp_search(const Structure& s, const BinRel& target, const std::vector<std::string>& symbols) {
        auto result = pp_search(s, target, config_.pp_budget, symbols);
        if (result.large_estimate_warning)
            err_ << "warning: search space estimate " << result.estimate << " exceeds "
                 << kPpWarnEstimate << "\n";
        if (config_.json) {
            json j{{"found", result.query.has_value()},
                   {"budget", json::array({result.budget.max_vars, result.budget.max_constraints})},
                   {"networks_examined", result.networks_examined}};
            if (result.query) {
                json q = json::array();
                for (const auto& c : *result.query) q.push_back(json::array({c.left, c.right, c.symbol}));
                j["query"] = q;
            }
            stdout_() << j.dump(2) << "\n";
        } else if (result.query) {
            stdout_() << "found: " << to_string(*result.query) << "  (x = v0, y = v1)\n";
        } else {
            stdout_() << "NotFoundWithinBudget (" << result.budget.max_vars << " variables, "
                      << result.budget.max_constraints << " constraints, " << result.networks_examined
                      << " networks examined)\n";
        }
        return kExitOk;
    }

    int cmd_zp2(long p, const std::string& dir) {
        auto f = zp2_family(p);
        auto kernels = f.kernels();
        auto names = f.kernel_names();
        if (!dir.empty()) {
            std::filesystem::create_directories(dir);
            for (std::size_t i = 0; i < kernels.size(); ++i) {
                std::ofstream file(std::filesystem::path(dir) / (names[i] + ".rel"));
                if (!file) throw Error("cannot write into '" + dir + "'");
                file << format_relation(kernels[i]);
            }
        }
        if (config_.json) {
            json j{{"p", p}, {"n", f.base().value()}, {"encoding", "x0 * p + x1"}};
            for (std::size_t i = 0; i < kernels.size(); ++i) j["relations"][names[i]] = relation_json(kernels[i]);
            stdout_() << j.dump(2) << "\n";
        } else {
            stdout_() << "Z_" << p << "^2: " << f.base().value() << " points, encoding x0 * p + x1\n";
            for (std::size_t i = 0; i < kernels.size(); ++i)
                stdout_() << "  " << names[i] << ": " << kernels[i].count() << " pairs\n";
            if (!dir.empty()) stdout_() << "wrote " << kernels.size() << " files to " << dir << "\n";
        }
        return kExitOk;
    }

    int cmd_represent(long m, std::optional<long> prime) {
        check_budget();
        auto rc = represent_mn(m, prime, config_.atom_budget);
        Certificate cert = rc.certificate;
        cert.set_input("atom_count", rc.atom_count);
        json eqs = json::array();
        for (const auto& e : rc.equivalences) eqs.push_back(equivalence_classes(e).size());
        cert.set_input("equivalence_class_counts", eqs);
        cert.set_input("shape", rc.shape ? json("M_" + std::to_string(*rc.shape)) : json("NotMn"));
        return emit(cert);
    }

    std::ostream& out_;
    std::ostream& err_;
    RunConfig config_;
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    return Runner(out, err).run(args);
}

}  // namespace eqra::cli
