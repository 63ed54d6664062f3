#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"
#include "formats.hpp"

namespace setlift {

/// A 3-CNF: every clause holds exactly three signed, pairwise-distinct
/// variables (1-based; negative literal = negated variable).
struct CnfInstance {
    int n_vars = 0;
    std::vector<std::array<int, 3>> clauses;

    void validate() const {
        if (n_vars < 3) throw std::invalid_argument("cnf needs at least 3 variables");
        for (const auto& c : clauses) {
            std::array<int, 3> vars{};
            for (int k = 0; k < 3; ++k) {
                int v = std::abs(c[k]);
                if (v < 1 || v > n_vars) throw std::invalid_argument("cnf literal out of range");
                vars[k] = v;
            }
            if (vars[0] == vars[1] || vars[0] == vars[2] || vars[1] == vars[2])
                throw std::invalid_argument("clause with repeated variable");
        }
    }
};

/// DIMACS CNF: optional `c` comment lines, a `p cnf <vars> <clauses>`
/// header, then zero-terminated clauses of signed integers.
inline CnfInstance parse_dimacs(const std::string& text) {
    CnfInstance cnf;
    bool have_header = false;
    int expected_clauses = -1;
    std::vector<int> current;
    detail::for_each_line(text, [&](int no, const std::string& raw) {
        if (!raw.empty() && raw[0] == 'c') return;
        auto toks = detail::tokenize(raw);
        if (toks.empty()) return;
        if (toks[0] == "p") {
            if (have_header) throw ParseError(no, "duplicate problem line");
            if (toks.size() != 4 || toks[1] != "cnf") throw ParseError(no, "expected: p cnf <vars> <clauses>");
            cnf.n_vars = detail::parse_int(toks[2], no, "variable count");
            expected_clauses = detail::parse_int(toks[3], no, "clause count");
            have_header = true;
            return;
        }
        if (!have_header) throw ParseError(no, "clause before problem line");
        for (const auto& t : toks) {
            int lit = detail::parse_int(t, no, "literal");
            if (lit == 0) {
                if (current.size() != 3) throw ParseError(no, "clauses must hold exactly 3 literals");
                cnf.clauses.push_back({current[0], current[1], current[2]});
                current.clear();
            } else {
                current.push_back(lit);
            }
        }
    });
    if (!have_header) throw ParseError(1, "missing problem line");
    if (!current.empty()) throw ParseError(1, "unterminated clause");
    if (expected_clauses >= 0 && int(cnf.clauses.size()) != expected_clauses)
        throw ParseError(1, "clause count does not match header");
    try {
        cnf.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(1, e.what());
    }
    return cnf;
}

/// Betweenness instance over points 1..n: triples (a,b,c) asking for b to
/// lie between a and c.
struct BetweennessInstance {
    int n_points = 0;
    std::vector<std::array<int, 3>> triples;

    void validate() const {
        if (n_points < 1) throw std::invalid_argument("betweenness needs at least one point");
        for (const auto& t : triples) {
            for (int v : t)
                if (v < 1 || v > n_points) throw std::invalid_argument("triple entry out of range");
            if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2])
                throw std::invalid_argument("triple entries must be distinct");
        }
    }
};

/// Betweenness file: `p btw <n> <k>` then k lines `a b c`.
inline BetweennessInstance parse_betweenness(const std::string& text) {
    BetweennessInstance inst;
    bool have_header = false;
    int expected = -1;
    detail::for_each_line(text, [&](int no, const std::string& raw) {
        if (!raw.empty() && raw[0] == 'c') return;
        auto toks = detail::tokenize(raw);
        if (toks.empty()) return;
        if (toks[0] == "p") {
            if (have_header) throw ParseError(no, "duplicate problem line");
            if (toks.size() != 4 || toks[1] != "btw") throw ParseError(no, "expected: p btw <n> <k>");
            inst.n_points = detail::parse_int(toks[2], no, "point count");
            expected = detail::parse_int(toks[3], no, "triple count");
            have_header = true;
            return;
        }
        if (!have_header) throw ParseError(no, "triple before problem line");
        if (toks.size() != 3) throw ParseError(no, "expected: <a> <b> <c>");
        inst.triples.push_back({detail::parse_int(toks[0], no, "point"), detail::parse_int(toks[1], no, "point"),
                                detail::parse_int(toks[2], no, "point")});
    });
    if (!have_header) throw ParseError(1, "missing problem line");
    if (expected >= 0 && int(inst.triples.size()) != expected)
        throw ParseError(1, "triple count does not match header");
    try {
        inst.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(1, e.what());
    }
    return inst;
}

/// Exhaustive betweenness check, capped at 8 points.
inline bool betweenness_oracle(const BetweennessInstance& inst) {
    inst.validate();
    if (inst.n_points > 8) throw std::invalid_argument("betweenness oracle capped at 8 points");
    std::vector<int> perm(inst.n_points);
    for (int i = 0; i < inst.n_points; ++i) perm[i] = i;
    std::vector<int> pos(inst.n_points);
    do {
        for (int i = 0; i < inst.n_points; ++i) pos[perm[i]] = i;
        bool ok = true;
        for (const auto& t : inst.triples) {
            int a = pos[t[0] - 1], b = pos[t[1] - 1], c = pos[t[2] - 1];
            if (!((a < b && b < c) || (a > b && b > c))) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

/// Name → element / name → family-index map plus the enforced-preference
/// ledger of a generated instance.
struct Manifest {
    std::vector<std::string> header;
    std::vector<std::pair<std::string, int>> elements;
    std::vector<std::pair<std::string, int>> sets;
    struct Enforce {
        std::string src, dst, chain;
        int src_idx, dst_idx;
    };
    std::vector<Enforce> enforced;

    std::string serialize() const {
        std::string out;
        for (const auto& h : header) out += "# " + h + "\n";
        for (const auto& [name, e] : elements) out += "name " + name + " = element " + std::to_string(e + 1) + "\n";
        for (const auto& [name, s] : sets) out += "set " + name + " = family-index " + std::to_string(s + 1) + "\n";
        for (const auto& e : enforced) out += "enforce " + e.src + " < " + e.dst + " via " + e.chain + "\n";
        return out;
    }
};

struct ReductionArtifact {
    SetFamily family;
    std::optional<LinearOrder> base_order;  // present for the CNF reduction
    Manifest manifest;
};

/// Gadget A(x,y,z): the six nonempty subsets of {x,y,z} other than the
/// singleton {x}. Infeasible for dominance + strict independence exactly
/// when x lies between y and z in the base order.
inline std::vector<Mask> gadget_a(int x, int y, int z, int universe_n) {
    if (x == y || x == z || y == z) throw std::invalid_argument("gadget A needs distinct elements");
    auto mk = [&](std::initializer_list<int> es) {
        Mask m(universe_n);
        for (int e : es) m.set(e);
        return m;
    };
    return {mk({y}), mk({z}), mk({x, y}), mk({x, z}), mk({y, z}), mk({x, y, z})};
}

/// Gadget B(x,x',y,y'): nine sets that (together with the A fragments the
/// reduction always pairs them with) forbid {x,x'} and {y,y'} from forming
/// separated blocks.
inline std::vector<Mask> gadget_b(int x, int xp, int y, int yp, int universe_n) {
    if (x == xp || x == y || x == yp || xp == y || xp == yp || y == yp)
        throw std::invalid_argument("gadget B needs distinct elements");
    auto mk = [&](std::initializer_list<int> es) {
        Mask m(universe_n);
        for (int e : es) m.set(e);
        return m;
    };
    return {mk({x, y, yp}), mk({xp, y, yp}),    mk({x, xp}), mk({x, xp, y}), mk({x, xp, yp}),
            mk({x, xp, y, yp}), mk({y}), mk({yp}), mk({y, yp})};
}

/// Betweenness → weak-orderability instance: universe v_1..v_n plus a
/// (y, y', z, z') block per triple; family is the de-duplicated union of the
/// ten gadget fragments per triple.
inline ReductionArtifact betweenness_to_family(const BetweennessInstance& inst) {
    inst.validate();
    int t_count = int(inst.triples.size());
    int n = inst.n_points + 4 * t_count;
    ReductionArtifact art;
    art.family = SetFamily(Universe(n));
    Manifest& man = art.manifest;
    man.header.push_back("reduction: betweenness");
    man.header.push_back("points " + std::to_string(inst.n_points) + ", triples " + std::to_string(t_count));

    for (int i = 0; i < inst.n_points; ++i) man.elements.push_back({"v" + std::to_string(i + 1), i});
    for (int t = 0; t < t_count; ++t) {
        int base = inst.n_points + 4 * t;
        std::string ts = std::to_string(t + 1);
        man.elements.push_back({"y[" + ts + "]", base});
        man.elements.push_back({"yp[" + ts + "]", base + 1});
        man.elements.push_back({"z[" + ts + "]", base + 2});
        man.elements.push_back({"zp[" + ts + "]", base + 3});
    }

    for (int t = 0; t < t_count; ++t) {
        int vi = inst.triples[t][0] - 1, vj = inst.triples[t][1] - 1, vk = inst.triples[t][2] - 1;
        int y = inst.n_points + 4 * t, yp = y + 1, z = y + 2, zp = y + 3;
        std::string ts = std::to_string(t + 1);
        struct Fragment {
            std::string tag;
            std::vector<Mask> sets;
        };
        std::vector<Fragment> fragments;
        fragments.push_back({"A(vi,y,yp)", gadget_a(vi, y, yp, n)});
        fragments.push_back({"A(vj,y,yp)", gadget_a(vj, y, yp, n)});
        fragments.push_back({"A(vi,z,zp)", gadget_a(vi, z, zp, n)});
        fragments.push_back({"A(vj,z,zp)", gadget_a(vj, z, zp, n)});
        fragments.push_back({"A(vk,z,zp)", gadget_a(vk, z, zp, n)});
        fragments.push_back({"A(vi,y,z)", gadget_a(vi, y, z, n)});
        fragments.push_back({"A(vk,y,z)", gadget_a(vk, y, z, n)});
        fragments.push_back({"B(vi,vj,y,yp)", gadget_b(vi, vj, y, yp, n)});
        fragments.push_back({"B(vi,vk,z,zp)", gadget_b(vi, vk, z, zp, n)});
        fragments.push_back({"B(vj,vk,z,zp)", gadget_b(vj, vk, z, zp, n)});
        for (const auto& frag : fragments)
            for (size_t s = 0; s < frag.sets.size(); ++s) {
                int idx = art.family.add_dedup(frag.sets[s]);
                man.sets.push_back({frag.tag + "[" + ts + "]." + std::to_string(s + 1), idx});
            }
    }
    return art;
}

namespace detail_cnf {

/// Element layout of the CNF reduction, pinned to the critical linear order
/// so the emitted base order is the identity permutation.
struct Layout {
    int vars, clauses;
    int n;  // 4*vars + 12*clauses + 2

    explicit Layout(const CnfInstance& cnf) : vars(cnf.n_vars), clauses(int(cnf.clauses.size())) {
        n = 4 * vars + 12 * clauses + 2;
    }

    // i: clause 1..m, a: slot 1..3, j: variable 1..n_vars, k: copy 1..2
    int min_elem(int i, int a) const { return (i - 1) * 3 + (a - 1); }
    int xminus(int j, int k) const { return 3 * clauses + (j - 1) * 2 + (k - 1); }
    int v1() const { return 3 * clauses + 2 * vars; }
    int v2() const { return v1() + 1; }
    int z_elem(int i, int a) const { return v2() + 1 + (i - 1) * 3 + (a - 1); }
    int y_elem(int i, int a) const { return v2() + 1 + 3 * clauses + (i - 1) * 3 + (a - 1); }
    int xplus(int j, int k) const { return v2() + 1 + 6 * clauses + (j - 1) * 2 + (k - 1); }
    int max_elem(int i, int a) const { return v2() + 1 + 6 * clauses + 2 * vars + (i - 1) * 3 + (a - 1); }

    Mask y_block() const {
        // Y = {x | v1 ≤ x ≤ y[m,3]} — contiguous in this layout
        Mask m(n);
        for (int e = v1(); e <= y_elem(clauses, 3); ++e) m.set(e);
        return m;
    }
};

}  // namespace detail_cnf

/// CNF → ≤-orderability instance: Class 1 variable sets, Class 2 local
/// instantiations per clause, Class 3 enforcement chains, and the critical
/// linear order as the base order.
inline ReductionArtifact cnf_to_family(const CnfInstance& cnf) {
    cnf.validate();
    detail_cnf::Layout L(cnf);
    ReductionArtifact art;
    art.family = SetFamily(Universe(L.n));
    SetFamily& fam = art.family;
    Manifest& man = art.manifest;
    man.header.push_back("reduction: cnf");
    man.header.push_back("vars " + std::to_string(L.vars) + ", clauses " + std::to_string(L.clauses));
    man.header.push_back("elements = 4*vars + 12*clauses + 2 = " + std::to_string(L.n));
    man.header.push_back("Y = elements " + std::to_string(L.v1() + 1) + ".." + std::to_string(L.y_elem(L.clauses, 3) + 1));

    auto num2 = [](int a, int b) { return "[" + std::to_string(a) + "," + std::to_string(b) + "]"; };

    for (int i = 1; i <= L.clauses; ++i)
        for (int a = 1; a <= 3; ++a) man.elements.push_back({"min" + num2(i, a), L.min_elem(i, a)});
    for (int j = 1; j <= L.vars; ++j)
        for (int k = 1; k <= 2; ++k) man.elements.push_back({"xminus" + num2(j, k), L.xminus(j, k)});
    man.elements.push_back({"v1", L.v1()});
    man.elements.push_back({"v2", L.v2()});
    for (int i = 1; i <= L.clauses; ++i)
        for (int a = 1; a <= 3; ++a) man.elements.push_back({"z" + num2(i, a), L.z_elem(i, a)});
    for (int i = 1; i <= L.clauses; ++i)
        for (int a = 1; a <= 3; ++a) man.elements.push_back({"y" + num2(i, a), L.y_elem(i, a)});
    for (int j = 1; j <= L.vars; ++j)
        for (int k = 1; k <= 2; ++k) man.elements.push_back({"xplus" + num2(j, k), L.xplus(j, k)});
    for (int i = 1; i <= L.clauses; ++i)
        for (int a = 1; a <= 3; ++a) man.elements.push_back({"max" + num2(i, a), L.max_elem(i, a)});

    Mask Y = L.y_block();

    // Class 1
    std::vector<int> xt(L.vars + 1), xf(L.vars + 1);
    for (int j = 1; j <= L.vars; ++j) {
        Mask t = Y;
        t.set(L.xminus(j, 1));
        t.set(L.xplus(j, 1));
        Mask f = Y;
        f.set(L.xminus(j, 2));
        f.set(L.xplus(j, 2));
        xt[j] = fam.add_dedup(t);
        xf[j] = fam.add_dedup(f);
        man.sets.push_back({"Cl1.Xt[" + std::to_string(j) + "]", xt[j]});
        man.sets.push_back({"Cl1.Xf[" + std::to_string(j) + "]", xf[j]});
    }

    // Class 2: local instantiations X^t_j ∖ {y[i,a]}, X^f_j ∖ {y[i,a]}
    auto cl2_name = [&](bool truth, int j, int i, int a) {
        return std::string("Cl2.X") + (truth ? "t" : "f") + "[" + std::to_string(j) + "]-y" + num2(i, a);
    };
    std::vector<std::array<std::array<int, 2>, 3>> cl2(L.clauses + 1);  // [i][a-1][t/f]
    for (int i = 1; i <= L.clauses; ++i)
        for (int a = 1; a <= 3; ++a) {
            int j = std::abs(cnf.clauses[i - 1][a - 1]);
            Mask st = fam.set(xt[j]).without(L.y_elem(i, a));
            Mask sf = fam.set(xf[j]).without(L.y_elem(i, a));
            cl2[i][a - 1][0] = fam.add_dedup(st);
            cl2[i][a - 1][1] = fam.add_dedup(sf);
            man.sets.push_back({cl2_name(true, j, i, a), cl2[i][a - 1][0]});
            man.sets.push_back({cl2_name(false, j, i, a), cl2[i][a - 1][1]});
        }

    // Class 3: per clause i and slot a, enforce SRC(a) ≺ TGT(a mod 3 + 1)
    // where SRC is the slot's false-representative and TGT the next slot's
    // true-representative (switched for negative literals).
    for (int i = 1; i <= L.clauses; ++i) {
        for (int a = 1; a <= 3; ++a) {
            int a2 = a % 3 + 1;
            int lit_a = cnf.clauses[i - 1][a - 1];
            int lit_a2 = cnf.clauses[i - 1][a2 - 1];
            int j_src = std::abs(lit_a), j_dst = std::abs(lit_a2);
            bool src_is_f = lit_a > 0;   // positive literal: source is X^f
            bool dst_is_t = lit_a2 > 0;  // positive literal: target is X^t
            int src = cl2[i][a - 1][src_is_f ? 1 : 0];
            int dst = cl2[i][a2 - 1][dst_is_t ? 0 : 1];

            int z = L.z_elem(i, a), mx = L.max_elem(i, a), mn = L.min_elem(i, a);
            std::string ia = num2(i, a);
            Mask mz(L.n);
            mz.set(z);
            man.sets.push_back({"Cl3.z" + ia, fam.add_dedup(mz)});
            man.sets.push_back({"Cl3.zmax" + ia, fam.add_dedup(mz.with(mx))});
            man.sets.push_back({"Cl3.src+max" + ia, fam.add_dedup(fam.set(src).with(mx))});
            // descending chain: drop the least element until {max} remains
            Mask chain = fam.set(src).without(z).with(mx);
            int step = 1;
            while (true) {
                man.sets.push_back({"Cl3.A" + ia + "." + std::to_string(step++), fam.add_dedup(chain)});
                if (chain.count() == 1) break;
                chain.reset(min_of(chain, LinearOrder::natural(L.n)));
            }
            man.sets.push_back({"Cl3.zmin" + ia, fam.add_dedup(mz.with(mn))});
            man.sets.push_back({"Cl3.dst+min" + ia, fam.add_dedup(fam.set(dst).with(mn))});
            // ascending chain: drop the greatest element until {min} remains
            chain = fam.set(dst).without(z).with(mn);
            step = 1;
            while (true) {
                man.sets.push_back({"Cl3.B" + ia + "." + std::to_string(step++), fam.add_dedup(chain)});
                if (chain.count() == 1) break;
                chain.reset(max_of(chain, LinearOrder::natural(L.n)));
            }

            Manifest::Enforce enf;
            enf.src = cl2_name(!src_is_f, j_src, i, a);
            enf.dst = cl2_name(dst_is_t, j_dst, i, a2);
            enf.chain = "chain" + ia;
            enf.src_idx = src;
            enf.dst_idx = dst;
            man.enforced.push_back(std::move(enf));
        }
    }

    art.base_order = LinearOrder::natural(L.n);
    return art;
}

}  // namespace setlift
