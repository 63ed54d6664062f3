#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "setlift.hpp"

namespace setlift::cli {

/// Exit codes: 0 positive, 1 negative, 2 usage or input error, 3 budget.
inline constexpr int kExitPass = 0, kExitFail = 1, kExitUsage = 2, kExitBudget = 3;

namespace demo_fixtures {

inline const char* toy_family =
    "elements 4\n"
    "set 2\n"
    "set 4\n"
    "set 2 4\n"
    "set 3 4\n"
    "set 1 2 4\n"
    "set 1 4\n";

inline const char* natural4 = "order 1 2 3 4\n";
inline const char* natural3 = "order 1 2 3\n";
inline const char* natural6 = "order 1 2 3 4 5 6\n";

inline std::string powerset_family(int n, const std::vector<std::vector<int>>& removed = {}) {
    SetFamily fam((Universe(n)));
    for (int mask = 1; mask < (1 << n); ++mask) {
        Mask m(n);
        for (int e = 0; e < n; ++e)
            if ((mask >> e) & 1) m.set(e);
        bool skip = false;
        for (const auto& rm : removed) {
            Mask r(n);
            for (int e : rm) r.set(e - 1);
            if (m == r) skip = true;
        }
        if (!skip) fam.add(m);
    }
    return serialize_family(fam);
}

/// Fishburn's extension on the toy family, natural order.
inline std::string toy_fishburn_relation() {
    SetFamily fam = parse_family(toy_family);
    return serialize_relation(fishburn(fam, LinearOrder::natural(4)));
}

/// The explicit linear order of the two-axiom example on
/// 𝒫({1,2,3}) ∖ {∅,{3}}: {1} < {1,2} < {1,3} < {1,2,3} < {2} < {2,3}.
inline const char* strict_ind_minus_family =
    "elements 3\n"
    "set 1\n"
    "set 2\n"
    "set 1 2\n"
    "set 1 3\n"
    "set 2 3\n"
    "set 1 2 3\n";

inline std::string strict_ind_minus_relation() {
    SetFamily fam = parse_family(strict_ind_minus_family);
    std::vector<std::vector<int>> chain = {{1}, {1, 2}, {1, 3}, {1, 2, 3}, {2}, {2, 3}};
    std::vector<int> position(fam.size());
    for (size_t p = 0; p < chain.size(); ++p) {
        Mask m(3);
        for (int e : chain[p]) m.set(e - 1);
        position[fam.index_of(m)] = int(p);
    }
    int m = fam.size();
    std::vector<Cell> cells(size_t(m) * (m - 1) / 2);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            cells[PrefRelation::pair_index(m, i, j)] = position[i] < position[j] ? Cell::LT : Cell::GT;
    return serialize_relation(PrefRelation::make(RelKind::LINEAR, m, std::move(cells)));
}

}  // namespace demo_fixtures

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

inline AxiomSet parse_axiom_flags(const std::string& flags) {
    AxiomSet set;
    std::string cur;
    auto apply = [&](const std::string& f) {
        for (int i = 0; i < kAxiomCount; ++i)
            if (f == axiom_flag(AxiomId(i))) {
                set.add(AxiomId(i));
                return;
            }
        throw std::runtime_error("unknown axiom flag '" + f + "' (use d,sd,setd,maxd,e,i,si,ri,rsi,wi)");
    };
    for (char c : flags) {
        if (c == ',') {
            if (!cur.empty()) apply(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) apply(cur);
    if (set.empty()) throw std::runtime_error("axiom list must be nonempty");
    return set;
}

inline Target parse_target(const std::string& t) {
    if (t == "lo") return Target::LINEAR;
    if (t == "wo") return Target::WEAK;
    if (t == "po") return Target::PARTIAL;
    throw std::runtime_error("unknown target '" + t + "' (use lo, wo or po)");
}

inline Budget make_budget(double seconds_flag, long long node_flag) {
    Budget b;
    if (const char* env = std::getenv("SETLIFT_NODE_LIMIT")) b.node_limit = std::atoll(env);
    if (node_flag > 0) b.node_limit = node_flag;
    if (seconds_flag > 0) b.wall_seconds = seconds_flag;
    return b;
}

inline std::string stats_line(const SolveStats& s) {
    std::ostringstream ss;
    ss << "# nodes " << s.nodes << " propagations " << s.propagations << "\n";
    ss << "# time " << s.seconds << "s\n";
    return ss.str();
}

}  // namespace detail

/// check: violations against a fixed relation.
inline int run_check(const std::string& family_text, const std::string& order_text, const std::string& rel_text,
                     const AxiomSet& axioms, bool first_only, std::string& out) {
    SetFamily fam = parse_family(family_text);
    LinearOrder order = parse_order(order_text, fam.ground_size());
    PrefRelation rel = parse_relation(rel_text, fam.size());
    out += "# check axioms=" + axioms.to_string() + (first_only ? " first" : "") + "\n";
    std::vector<Violation> all;
    axioms.for_each([&](AxiomId a) {
        auto v = check(a, fam, order, rel);
        all.insert(all.end(), v.begin(), v.end());
    });
    if (all.empty()) {
        out += "result PASS\n";
        return kExitPass;
    }
    out += "result FAIL\n";
    size_t limit = first_only ? 1 : all.size();
    for (size_t i = 0; i < limit; ++i) out += render_violation(all[i], fam) + "\n";
    if (first_only && all.size() > 1)
        out += "# " + std::to_string(all.size() - 1) + " further violations suppressed\n";
    return kExitFail;
}

/// lift: construct a canonical order and print its relation block.
inline int run_lift(const std::string& family_text, const std::string& order_text, const std::string& method,
                    std::string& out) {
    SetFamily fam = parse_family(family_text);
    LinearOrder order = parse_order(order_text, fam.ground_size());
    PrefRelation rel;
    if (method == "mm")
        rel = mm_order(fam, order);
    else if (method == "pmm")
        rel = pmm_preorder(fam, order);
    else if (method == "fishburn")
        rel = fishburn(fam, order);
    else if (method == "gardenfors")
        rel = gardenfors(fam, order);
    else if (method == "leximax")
        rel = lex_order(fam, order, LexVariant::LEXIMAX);
    else if (method == "leximin")
        rel = lex_order(fam, order, LexVariant::LEXIMIN);
    else
        throw std::runtime_error("unknown method '" + method + "'");
    out += "# lift method=" + method + "\n";
    out += "result OK\n";
    out += "# kind " + std::string(kind_name(rel.kind())) + "\n";
    if (rel.kind() == RelKind::RAW) out += "# strict part not transitive on this family\n";
    out += serialize_relation(rel);
    return kExitPass;
}

/// close: minimal partial order for dominance + strict independence.
inline int run_close(const std::string& family_text, const std::string& order_text, bool with_extension,
                     std::string& out) {
    SetFamily fam = parse_family(family_text);
    LinearOrder order = parse_order(order_text, fam.ground_size());
    out += std::string("# close") + (with_extension ? " extension" : "") + "\n";
    ClosureResult res = minimal_di_s_partial_order(fam, order, with_extension);
    if (res.feasible) {
        out += "result FEASIBLE\n";
        out += serialize_relation(*res.relation);
        return kExitPass;
    }
    out += "result INFEASIBLE\n";
    out += res.trace->render();
    return kExitFail;
}

inline int run_decide(const std::string& family_text, const std::string& order_text, const AxiomSet& axioms,
                      Target target, const Budget& budget, std::string& out) {
    SetFamily fam = parse_family(family_text);
    LinearOrder order = parse_order(order_text, fam.ground_size());
    out += "# decide axioms=" + axioms.to_string() + " target=" + target_name(target) + "\n";
    SolveResult res = decide_orderable(fam, order, axioms, target, budget);
    out += detail::stats_line(res.stats);
    switch (res.status) {
        case SolveStatus::SAT:
            out += "result SAT\n";
            out += serialize_relation(*res.witness);
            return kExitPass;
        case SolveStatus::UNSAT:
            out += "result UNSAT\n";
            if (res.trace) out += res.trace->render();
            return kExitFail;
        case SolveStatus::BUDGET: out += "result BUDGET\n"; return kExitBudget;
    }
    return kExitUsage;
}

inline int run_quant(bool strong, const std::string& family_text, const AxiomSet& axioms, Target target,
                     const Budget& budget, const QuantOptions& opts, std::string& out) {
    SetFamily fam = parse_family(family_text);
    out += std::string("# ") + (strong ? "strong" : "weak") + " axioms=" + axioms.to_string() +
           " target=" + target_name(target) + "\n";
    QuantResult res = strong ? decide_strong(fam, axioms, target, budget, opts)
                             : decide_weak(fam, axioms, target, budget, opts);
    out += detail::stats_line(res.stats);
    switch (res.status) {
        case QuantStatus::HOLDS:
            out += "result HOLDS\n";
            if (!strong && res.witness_order) {
                out += serialize_order(*res.witness_order);
                out += serialize_relation(*res.witness_relation);
            }
            return kExitPass;
        case QuantStatus::FAILS:
            out += "result FAILS\n";
            if (strong && res.counterexample_order) out += serialize_order(*res.counterexample_order);
            return kExitFail;
        case QuantStatus::BUDGET:
            out += "result BUDGET\n";
            out += "# " + res.progress + "\n";
            return kExitBudget;
    }
    return kExitUsage;
}

inline int run_reduce(const std::string& kind, const std::string& in_path, const std::string& out_base,
                      std::string& out) {
    std::string text = detail::read_file(in_path);
    ReductionArtifact art;
    if (kind == "cnf")
        art = cnf_to_family(parse_dimacs(text));
    else if (kind == "btw")
        art = betweenness_to_family(parse_betweenness(text));
    else
        throw std::runtime_error("unknown reduction '" + kind + "' (use cnf or btw)");
    out += "# reduce " + kind + "\n";
    detail::write_file(out_base + ".fam", serialize_family(art.family));
    out += "result OK\n";
    out += "# wrote " + out_base + ".fam (" + std::to_string(art.family.size()) + " sets over " +
           std::to_string(art.family.ground_size()) + " elements)\n";
    if (art.base_order) {
        detail::write_file(out_base + ".ord", serialize_order(*art.base_order));
        out += "# wrote " + out_base + ".ord\n";
    }
    detail::write_file(out_base + ".manifest", art.manifest.serialize());
    out += "# wrote " + out_base + ".manifest\n";
    return kExitPass;
}

/// Entry point: argv without the program name. The report goes to `out`.
inline int run(const std::vector<std::string>& argv, std::string& out) {
    CLI::App app{"setlift — lifting linear orders to preference orders on set families"};
    app.require_subcommand(1);

    std::string family_path, order_path, relation_path, method, axiom_flags, target_str = "wo";
    std::string in_path, out_base, demo_name;
    bool first_only = false, with_extension = false;
    double budget_seconds = 0;
    long long node_limit = 0;
    int jobs = 1;

    auto add_family = [&](CLI::App* cmd) { cmd->add_option("--family", family_path, "family file")->required(); };
    auto add_order = [&](CLI::App* cmd) { cmd->add_option("--order", order_path, "base order file")->required(); };
    auto add_budget = [&](CLI::App* cmd) {
        cmd->add_option("--budget-seconds", budget_seconds, "wall clock budget");
        cmd->add_option("--node-limit", node_limit, "search node budget");
    };

    CLI::App* c_check = app.add_subcommand("check", "check axioms against a relation");
    add_family(c_check);
    add_order(c_check);
    c_check->add_option("--relation", relation_path)->required();
    c_check->add_option("--axioms", axiom_flags)->required();
    c_check->add_flag("--first", first_only, "print only the first violation");

    CLI::App* c_lift = app.add_subcommand("lift", "construct a canonical lifted order");
    add_family(c_lift);
    add_order(c_lift);
    c_lift->add_option("--method", method, "mm|pmm|fishburn|gardenfors|leximax|leximin")->required();

    CLI::App* c_close = app.add_subcommand("close", "minimal partial order for dominance + strict independence");
    add_family(c_close);
    add_order(c_close);
    c_close->add_flag("--extension", with_extension, "also require the extension rule");

    CLI::App* c_decide = app.add_subcommand("decide", "≤-orderability for a fixed base order");
    add_family(c_decide);
    add_order(c_decide);
    c_decide->add_option("--axioms", axiom_flags)->required();
    c_decide->add_option("--target", target_str, "lo|wo|po");
    add_budget(c_decide);

    CLI::App* c_strong = app.add_subcommand("strong", "orderability for every base order");
    add_family(c_strong);
    c_strong->add_option("--axioms", axiom_flags)->required();
    c_strong->add_option("--target", target_str, "lo|wo|po");
    c_strong->add_option("--jobs", jobs, "parallel workers");
    add_budget(c_strong);

    CLI::App* c_weak = app.add_subcommand("weak", "orderability for some base order");
    add_family(c_weak);
    c_weak->add_option("--axioms", axiom_flags)->required();
    c_weak->add_option("--target", target_str, "lo|wo|po");
    c_weak->add_option("--jobs", jobs, "parallel workers");
    add_budget(c_weak);

    CLI::App* c_reduce = app.add_subcommand("reduce", "generate hardness-reduction instances");
    CLI::App* c_reduce_cnf = c_reduce->add_subcommand("cnf", "CNF to ≤-orderability");
    c_reduce_cnf->add_option("--in", in_path)->required();
    c_reduce_cnf->add_option("--out", out_base)->required();
    CLI::App* c_reduce_btw = c_reduce->add_subcommand("btw", "betweenness to weak orderability");
    c_reduce_btw->add_option("--in", in_path)->required();
    c_reduce_btw->add_option("--out", out_base)->required();

    CLI::App* c_demo = app.add_subcommand("demo", "reproduce a named result");
    c_demo->add_option("name", demo_name, "kannai-peleg|barbera-pattanaik|setminus|toy|strict-ind-minus")
        ->required();

    try {
        std::vector<const char*> cargs;
        cargs.push_back("setlift");
        for (const auto& a : argv) cargs.push_back(a.c_str());
        app.parse(int(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream ss;
        if (e.get_exit_code() == 0) {
            // --help and friends
            ss << app.help();
            out += ss.str();
            return kExitPass;
        }
        out += std::string("error: ") + e.what() + "\n";
        return kExitUsage;
    }

    try {
        if (*c_check)
            return run_check(detail::read_file(family_path), detail::read_file(order_path),
                             detail::read_file(relation_path), detail::parse_axiom_flags(axiom_flags), first_only,
                             out);
        if (*c_lift) return run_lift(detail::read_file(family_path), detail::read_file(order_path), method, out);
        if (*c_close)
            return run_close(detail::read_file(family_path), detail::read_file(order_path), with_extension, out);
        if (*c_decide)
            return run_decide(detail::read_file(family_path), detail::read_file(order_path),
                              detail::parse_axiom_flags(axiom_flags), detail::parse_target(target_str),
                              detail::make_budget(budget_seconds, node_limit), out);
        if (*c_strong || *c_weak) {
            QuantOptions opts;
            opts.jobs = jobs;
            return run_quant(bool(*c_strong), detail::read_file(family_path), detail::parse_axiom_flags(axiom_flags),
                             detail::parse_target(target_str), detail::make_budget(budget_seconds, node_limit), opts,
                             out);
        }
        if (*c_reduce) {
            if (*c_reduce_cnf) return run_reduce("cnf", in_path, out_base, out);
            if (*c_reduce_btw) return run_reduce("btw", in_path, out_base, out);
            out += "error: reduce needs a cnf or btw subcommand\n";
            return kExitUsage;
        }
        if (*c_demo) {
            using namespace demo_fixtures;
            Budget b = detail::make_budget(budget_seconds, node_limit);
            if (demo_name == "kannai-peleg")
                return run_decide(powerset_family(6), natural6, {AxiomId::DOM, AxiomId::IND}, Target::WEAK, b, out);
            if (demo_name == "barbera-pattanaik")
                return run_decide(powerset_family(3), natural3, {AxiomId::DOM, AxiomId::STRICT_IND}, Target::PARTIAL,
                                  b, out);
            if (demo_name == "setminus")
                return run_decide(powerset_family(6, {{1, 2}}), natural6,
                                  {AxiomId::DOM, AxiomId::IND, AxiomId::EXT}, Target::WEAK, b, out);
            if (demo_name == "toy")
                return run_check(toy_family, natural4, toy_fishburn_relation(), {AxiomId::DOM}, false, out);
            if (demo_name == "strict-ind-minus")
                return run_check(strict_ind_minus_family, natural3, strict_ind_minus_relation(),
                                 {AxiomId::DOM, AxiomId::STRICT_IND}, false, out);
            out += "error: unknown demo '" + demo_name + "'\n";
            return kExitUsage;
        }
    } catch (const ParseError& e) {
        out += std::string("error: ") + e.what() + "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        out += std::string("error: ") + e.what() + "\n";
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        out += std::string("error: ") + e.what() + "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace setlift::cli
