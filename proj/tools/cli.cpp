#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "teamltl/classical.hpp"
#include "teamltl/errors.hpp"
#include "teamltl/hyper.hpp"
#include "teamltl/modelcheck.hpp"
#include "teamltl/reductions.hpp"
#include "teamltl/teamcheck.hpp"

namespace teamltl::cli {

namespace fs = std::filesystem;

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream o(path, std::ios::binary);
    if (!o || !(o << text)) throw InputError("cannot write '" + path.string() + "'");
}

// A formula argument names a file when one exists, otherwise it is the formula itself.
std::string formula_text(const std::string& arg) {
    std::error_code ec;
    if (fs::is_regular_file(arg, ec)) return read_file(arg);
    return arg;
}

struct Budget {
    std::uint64_t max_lcm = kDefaultMaxLcm;
    std::size_t max_team = 12;
    std::uint64_t max_grid = 10'000'000;
    unsigned jobs = 1;
};

void add_budget(CLI::App& app, Budget& b) {
    app.add_option("--max-lcm", b.max_lcm, "Cap on the lcm of loop lengths")->capture_default_str();
    app.add_option("--max-team", b.max_team, "Cap on team size for unrestricted splits")->capture_default_str();
    app.add_option("--max-grid", b.max_grid, "Cap on asynchronous shift-vector grids")->capture_default_str();
    app.add_option("--jobs", b.jobs, "Worker threads across input files")->check(CLI::PositiveNumber);
}

const std::map<std::string, Semantics> kSemantics{{"sync", Semantics::Sync}, {"async", Semantics::Async}};

void add_semantics(CLI::App& app, Semantics& s) {
    app.add_option("--semantics", s, "sync or async")
        ->required()
        ->transform(CLI::CheckedTransformer(kSemantics, CLI::ignore_case));
}

// Parses reversed-vector style; returns -1 when the command should run.
int parse(CLI::App& app, std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kHolds;
    } catch (const CLI::ParseError& e) {
        out << "ERROR " << e.what() << "\n";
        err << app.help();
        return kInputError;
    }
    return -1;
}

// One verdict line per failure class.
template <class Body>
int guarded(std::ostream& out, Body&& body) {
    try {
        return body();
    } catch (const BoundExceeded& e) {
        out << "ERROR budget exceeded: " << e.what() << "\n";
        return kBudget;
    } catch (const UnsupportedFragment& e) {
        out << "UNSUPPORTED " << e.what() << "\n";
        return kUnsupported;
    } catch (const NotForallFragment& e) {
        out << "UNSUPPORTED " << e.what() << "\n";
        return kUnsupported;
    } catch (const Error& e) {
        out << "ERROR " << e.what() << "\n";
        return kInputError;
    } catch (const InputError& e) {
        out << "ERROR " << e.what() << "\n";
        return kInputError;
    }
}

int verdict(std::ostream& out, bool holds) {
    out << (holds ? "HOLDS" : "FAILS") << "\n";
    return holds ? kHolds : kFails;
}

}  // namespace

// ============================================================================
// check-path
// ============================================================================

int cmd_check_path(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Check a finite team of ultimately periodic traces", "check-path"};
    Semantics semantics = Semantics::Sync;
    std::string formula_arg, engine = "flat", split = "auto";
    std::vector<std::string> teams;
    Budget budget;
    add_semantics(app, semantics);
    app.add_option("--formula", formula_arg, "Formula file or inline formula")->required();
    app.add_option("--team", teams, "Team file (repeatable)")->required();
    app.add_option("--async-engine", engine, "flat or general")->check(CLI::IsMember({"flat", "general"}));
    app.add_option("--split-mode", split, "auto, disjoint or covers")
        ->check(CLI::IsMember({"auto", "disjoint", "covers"}));
    add_budget(app, budget);
    if (int rc = parse(app, args, out, err); rc >= 0) return rc;

    Formula f;
    if (int rc = guarded(out, [&] {
            f = parse_formula(formula_text(formula_arg));
            return -1;
        });
        rc >= 0)
        return rc;

    CheckOptions opts;
    opts.max_lcm = budget.max_lcm;
    opts.max_team = budget.max_team;
    opts.max_grid = budget.max_grid;
    if (split == "disjoint") opts.split_mode = SplitMode::DisjointOnly;
    if (split == "covers") opts.split_mode = SplitMode::AllCovers;

    auto run_one = [&](const std::string& path, std::ostream& o) {
        return guarded(o, [&] {
            TeamEncoding team = parse_team(read_file(path));
            bool holds = semantics == Semantics::Sync ? check_sync(team, f, opts)
                         : engine == "general"        ? check_async_general(team, f, opts)
                                                      : check_async(team, f, opts);
            return verdict(o, holds);
        });
    };
    if (teams.size() == 1) return run_one(teams[0], out);

    std::vector<std::string> lines(teams.size());
    std::vector<int> codes(teams.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < teams.size();) {
            std::ostringstream o;
            codes[i] = run_one(teams[i], o);
            lines[i] = o.str();
        }
    };
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < std::min<std::size_t>(budget.jobs, teams.size()); ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    int worst = kHolds;
    for (std::size_t i = 0; i < teams.size(); ++i) {
        std::string line = lines[i];
        if (!line.empty() && line.back() == '\n') line.pop_back();
        auto sp = line.find(' ');
        out << line.substr(0, sp) << " " << teams[i] << (sp == std::string::npos ? "" : line.substr(sp)) << "\n";
        worst = std::max(worst, codes[i]);
    }
    return worst;
}

// ============================================================================
// check-model
// ============================================================================

int cmd_check_model(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Check the trace team of a Kripke structure", "check-model"};
    Semantics semantics = Semantics::Sync;
    std::string formula_arg, kripke_path, engine = "materialized";
    std::size_t max_worlds = kDefaultMaxWorlds;
    Budget budget;
    add_semantics(app, semantics);
    app.add_option("--formula", formula_arg, "Formula file or inline formula")->required();
    app.add_option("--kripke", kripke_path, "Kripke structure file")->required();
    app.add_option("--engine", engine, "materialized or onthefly")
        ->check(CLI::IsMember({"materialized", "onthefly"}));
    app.add_option("--max-worlds", max_worlds, "Cap on worlds for the materialized engine")->capture_default_str();
    add_budget(app, budget);
    if (int rc = parse(app, args, out, err); rc >= 0) return rc;

    return guarded(out, [&] {
        Formula f = parse_formula(formula_text(formula_arg));
        KripkeStructure k = parse_kripke(read_file(kripke_path));
        if (semantics == Semantics::Sync) {
            bool holds = engine == "onthefly" ? tmc_sync_splitfree_onthefly(k, f) : tmc_sync_splitfree(k, f, max_worlds);
            return verdict(out, holds);
        }
        McResult r = tmc_async(k, f);
        int rc = verdict(out, r.holds);
        if (r.counterexample) out << "counterexample " << serialize_trace(r.counterexample->encoding()) << "\n";
        return rc;
    });
}

// ============================================================================
// sat
// ============================================================================

int cmd_sat(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Team satisfiability with a single-trace witness", "sat"};
    Semantics semantics = Semantics::Sync;
    std::string formula_arg;
    Budget budget;
    add_semantics(app, semantics);
    app.add_option("--formula", formula_arg, "Formula file or inline formula")->required();
    add_budget(app, budget);
    if (int rc = parse(app, args, out, err); rc >= 0) return rc;

    return guarded(out, [&] {
        Formula f = parse_formula(formula_text(formula_arg));
        auto w = tsat(f, semantics);
        if (!w) {
            out << "UNSAT\n";
            return static_cast<int>(kFails);
        }
        out << "SAT\n" << serialize_trace(*w) << "\n";
        return static_cast<int>(kHolds);
    });
}

// ============================================================================
// reduce
// ============================================================================

int cmd_reduce(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Emit reduction instances", "reduce"};
    std::string kind, input, outdir;
    app.add_option("kind", kind, "qbf-sync, qbf-async-dep, plsat-mc or plval-mc-dep")
        ->required()
        ->check(CLI::IsMember({"qbf-sync", "qbf-async-dep", "plsat-mc", "plval-mc-dep"}));
    app.add_option("--input", input, "QBF file, or formula file/inline formula for the pl* kinds")->required();
    app.add_option("--out", outdir, "Existing output directory")->required();
    if (int rc = parse(app, args, out, err); rc >= 0) return rc;

    return guarded(out, [&] {
        std::error_code ec;
        if (!fs::is_directory(outdir, ec)) throw InputError("output directory '" + outdir + "' does not exist");
        fs::path dir(outdir);
        std::vector<fs::path> written;
        Formula f;
        if (kind == "qbf-sync" || kind == "qbf-async-dep") {
            QBFInstance q = parse_qbf(read_file(input));
            TeamReduction r = kind == "qbf-sync" ? reduce_qbf_sync(q) : reduce_qbf_async_dep(q);
            write_file(dir / "team.txt", serialize_team(r.team));
            written.push_back(dir / "team.txt");
            f = r.formula;
        } else {
            Formula phi = parse_formula(formula_text(input));
            ModelReduction r = kind == "plsat-mc" ? reduce_plneg_sat_to_tmc(phi) : reduce_pldep_val_to_tmc(phi);
            write_file(dir / "model.kripke", serialize_kripke(r.structure));
            written.push_back(dir / "model.kripke");
            f = r.formula;
        }
        write_file(dir / "formula.ltl", render_formula(f) + "\n");
        written.push_back(dir / "formula.ltl");
        for (const auto& p : written) out << "WROTE " << p.string() << "\n";
        return static_cast<int>(kHolds);
    });
}

// ============================================================================
// hyper
// ============================================================================

int cmd_hyper(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"HyperLTL checking and translations", "hyper"};
    app.require_subcommand(1);
    std::string team_path, formula_arg;
    std::size_t max_quantifiers = kDefaultMaxQuantifiers;
    auto* check = app.add_subcommand("check", "Check a sentence on a team");
    check->add_option("--team", team_path, "Team file")->required();
    check->add_option("--formula", formula_arg, "Sentence file or inline sentence")->required();
    check->add_option("--max-quantifiers", max_quantifiers, "Cap on the quantifier prefix")->capture_default_str();
    auto* to = app.add_subcommand("to-hyper", "Team LTL formula to a single-universal sentence");
    to->add_option("--formula", formula_arg, "Formula file or inline formula")->required();
    auto* from = app.add_subcommand("from-hyper", "Single-universal sentence to a team LTL formula");
    from->add_option("--formula", formula_arg, "Sentence file or inline sentence")->required();
    if (int rc = parse(app, args, out, err); rc >= 0) return rc;

    return guarded(out, [&] {
        if (check->parsed()) {
            TeamEncoding team = parse_team(read_file(team_path));
            return verdict(out, check_hyper(team, parse_hyper(formula_text(formula_arg)), max_quantifiers));
        }
        if (to->parsed()) {
            out << render_hyper(ltl_to_forall_hyper(parse_formula(formula_text(formula_arg)))) << "\n";
            return static_cast<int>(kHolds);
        }
        out << render_formula(forall_hyper_to_ltl(parse_hyper(formula_text(formula_arg)))) << "\n";
        return static_cast<int>(kHolds);
    });
}

// ============================================================================
// Dispatch
// ============================================================================

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    static const char* usage =
        "usage: teamltl <command> [options]\n"
        "commands:\n"
        "  check-path   check a team file against a formula\n"
        "  check-model  check the trace team of a Kripke structure\n"
        "  sat          satisfiability with a witness trace\n"
        "  reduce       emit reduction instances\n"
        "  hyper        HyperLTL check, to-hyper, from-hyper\n"
        "run 'teamltl <command> --help' for options\n";
    if (args.empty()) {
        out << "ERROR missing command\n";
        err << usage;
        return kInputError;
    }
    const std::string& cmd = args[0];
    std::vector<std::string> rest(args.begin() + 1, args.end());
    if (cmd == "check-path") return cmd_check_path(rest, out, err);
    if (cmd == "check-model") return cmd_check_model(rest, out, err);
    if (cmd == "sat") return cmd_sat(rest, out, err);
    if (cmd == "reduce") return cmd_reduce(rest, out, err);
    if (cmd == "hyper") return cmd_hyper(rest, out, err);
    if (cmd == "-h" || cmd == "--help") {
        out << usage;
        return kHolds;
    }
    out << "ERROR unknown command '" << cmd << "'\n";
    err << usage;
    return kInputError;
}

}  // namespace teamltl::cli
