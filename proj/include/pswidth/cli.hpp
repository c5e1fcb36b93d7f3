#pragma once

// Command-line front end. Kept separate from the umbrella header because it
// pulls in CLI11.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pswidth/pswidth.hpp"

namespace psw::cli {

enum ExitCode : int {
    ok = 0,
    usage = 1,
    parse_failure = 2,
    invalid_structure = 3,
    limit_refused = 4,
    internal_failure = 5,
};

/// Formulas above this many elements get a warning before MIM search.
inline constexpr std::size_t mim_warning_elements = 48;

struct RunConfig {
    std::string input;
    std::string decomp_file;
    std::string order_file;
    std::string auto_strategy;
    bool all_vars = false;
    bool verbose = false;
    std::size_t limit = 10;
};

/// Unreadable input file; reported with the parse-error exit code.
class IoError : public Error {
  public:
    using Error::Error;
};

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Formula load_formula(const std::string& path) {
    try {
        return parse_dimacs(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(e.line(), path + ": " + e.what());
    }
}

inline std::vector<Element> load_ordering(const std::string& path) {
    try {
        return parse_ordering(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(e.line(), path + ": " + e.what());
    }
}

/// Resolves the single decomposition source of a run. No source means
/// `--auto greedy-ps`.
inline BranchDecomposition resolve_decomposition(const Formula& f, const RunConfig& cfg) {
    const int sources = int(!cfg.decomp_file.empty()) + int(!cfg.order_file.empty()) + int(!cfg.auto_strategy.empty());
    if (sources > 1) throw CLI::ValidationError("give at most one of --decomp, --order, --auto");
    if (!cfg.decomp_file.empty()) {
        const std::string text = read_file(cfg.decomp_file);
        try {
            return parse_decomposition(text, f);
        } catch (const ParseError& e) {
            throw ParseError(e.line(), cfg.decomp_file + ": " + e.what());
        }
    }
    if (!cfg.order_file.empty()) {
        const auto order = load_ordering(cfg.order_file);
        return linear_decomposition(f, order);
    }
    const std::string name = cfg.auto_strategy.empty() ? "greedy-ps" : cfg.auto_strategy;
    const auto strategy = parse_strategy(name);
    if (!strategy) throw CLI::ValidationError("--auto", "unknown strategy '" + name + "' (file-order, greedy-ps)");
    return auto_decomposition(f, *strategy);
}

inline void add_decomposition_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--decomp", cfg.decomp_file, "Branch decomposition file");
    cmd->add_option("--order", cfg.order_file, "Leaf ordering file (v<i>/c<j> tokens)");
    cmd->add_option("--auto", cfg.auto_strategy, "Build a linear decomposition: file-order or greedy-ps (default)");
}

} // namespace detail

/// Runs one invocation; `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact #SAT and weighted MaxSAT over branch decompositions of bounded ps-width", "pswidth"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* count = app.add_subcommand("count", "Print the exact number of satisfying assignments");
    count->add_option("FILE", cfg.input, "CNF or WCNF file")->required();
    detail::add_decomposition_options(count, cfg);
    count->add_flag("--all-vars", cfg.all_vars, "Count over all declared variables, not just occurring ones");

    auto* maxsat = app.add_subcommand("maxsat", "Print the maximum satisfiable weight and a witness");
    maxsat->add_option("FILE", cfg.input, "CNF or WCNF file")->required();
    detail::add_decomposition_options(maxsat, cfg);

    auto* psw_cmd = app.add_subcommand("psw", "Print the ps-width of a decomposition");
    psw_cmd->add_option("FILE", cfg.input, "CNF or WCNF file")->required();
    detail::add_decomposition_options(psw_cmd, cfg);
    psw_cmd->add_flag("--verbose", cfg.verbose, "Also print node, |PS(F_v)|, |PS(F_v-bar)| per node");

    auto* order = app.add_subcommand("order", "Interval orderings");
    order->require_subcommand(1);
    std::string ordering_file;
    auto* verify = order->add_subcommand("verify", "Check an ordering; prints VALID or the violating triple");
    verify->add_option("FILE", cfg.input, "CNF or WCNF file")->required();
    verify->add_option("ORD", ordering_file, "Ordering file")->required();
    auto* find = order->add_subcommand("find", "Exhaustive search; prints an ordering or NONE");
    find->add_option("FILE", cfg.input, "CNF or WCNF file")->required();
    find->add_option("--limit", cfg.limit, "Refuse formulas with more elements than this")->capture_default_str();

    auto* mim = app.add_subcommand("mim", "Print per-node maximum induced matchings of I(F_v) and I(F_v-bar)");
    mim->add_option("FILE", cfg.input, "CNF or WCNF file")->required();
    detail::add_decomposition_options(mim, cfg);

    auto* decomp = app.add_subcommand("decomp", "Print the decomposition a run would use");
    decomp->add_option("FILE", cfg.input, "CNF or WCNF file")->required();
    detail::add_decomposition_options(decomp, cfg);

    std::vector<const char*> argv{"pswidth"};
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }

    try {
        const Formula f = detail::load_formula(cfg.input);

        if (count->parsed()) {
            const auto d = detail::resolve_decomposition(f, cfg);
            out << count_models(f, d, SolveOptions{cfg.all_vars}).count.get_str() << '\n';
        } else if (maxsat->parsed()) {
            const auto d = detail::resolve_decomposition(f, cfg);
            const auto r = solve_maxsat(f, d);
            out << "o " << r.weight.get_str() << '\n' << 'v';
            for (std::uint32_t v = 1; v <= f.declared_vars(); ++v)
                out << ' ' << (r.witness.defined(v) && r.witness.value(v) ? "" : "-") << v;
            out << '\n';
        } else if (psw_cmd->parsed()) {
            const auto d = detail::resolve_decomposition(f, cfg);
            const auto report = ps_width(f, d);
            out << report.width << '\n';
            if (cfg.verbose)
                for (const auto& n : report.nodes) out << n.node << '\t' << n.inside << '\t' << n.outside << '\n';
        } else if (verify->parsed()) {
            const auto ord = detail::load_ordering(ordering_file);
            if (auto bad = verify_interval_ordering(f, ord)) {
                out << "INVALID " << Element::variable(bad->variable).token() << ' '
                    << Element::clause(bad->clause).token() << ' ' << bad->witness.token() << '\n';
                return invalid_structure;
            }
            out << "VALID\n";
        } else if (find->parsed()) {
            if (auto ord = find_interval_ordering(f, cfg.limit)) out << emit_ordering(*ord) << '\n';
            else out << "NONE\n";
        } else if (mim->parsed()) {
            const auto d = detail::resolve_decomposition(f, cfg);
            if (f.clause_count() + f.occurring_vars().count() > mim_warning_elements)
                err << "warning: exact induced-matching search on " << f.clause_count() + f.occurring_vars().count()
                    << " elements may be slow\n";
            const auto report = mim_of_decomposition(f, d);
            for (const auto& n : report.nodes) out << n.node << '\t' << n.inside << '\t' << n.outside << '\n';
            out << "max\t" << report.maximum << '\n';
        } else if (decomp->parsed()) {
            out << emit_decomposition(detail::resolve_decomposition(f, cfg));
        }
        return ok;
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return parse_failure;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return parse_failure;
    } catch (const ValidationError& e) {
        err << "invalid: " << e.what() << '\n';
        return invalid_structure;
    } catch (const LimitError& e) {
        err << "refused: " << e.what() << '\n';
        return limit_refused;
    } catch (const Error& e) {
        err << "internal error: " << e.what() << '\n';
        return internal_failure;
    }
}

} // namespace psw::cli
