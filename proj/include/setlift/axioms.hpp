#pragma once

#include <string>
#include <vector>

#include "core.hpp"
#include "formats.hpp"

namespace setlift {

/// One failed instantiation of an axiom schema. `a`, `b` play the roles the
/// schema calls A and B; `x` is the added element (-1 when the schema has
/// none). The demanded preference is lhs ≺ rhs (strict) or lhs ⪯ rhs.
struct Violation {
    AxiomId axiom;
    int a = -1;
    int b = -1;
    int x = -1;
    int lhs = -1;
    int rhs = -1;
    Cell have = Cell::INC;
    bool need_strict = true;
    std::string premise;
};

/// `VIOLATION <axiom> A=<set> B=<set> x=<elem> have=<cell> need=<cell>`
inline std::string render_violation(const Violation& v, const SetFamily& fam) {
    std::string s = "VIOLATION ";
    s += axiom_flag(v.axiom);
    s += " A=" + set_to_string(fam.set(v.a));
    s += " B=" + set_to_string(fam.set(v.b));
    s += " x=";
    s += v.x < 0 ? "-" : std::to_string(v.x + 1);
    s += " have=";
    s += cell_glyph(v.have);
    s += " need=";
    s += v.need_strict ? "<" : "<=";
    return s;
}

namespace detail {

/// A strict conclusion fails unless the cell is LT; a weak conclusion
/// additionally tolerates EQ. An unestablished premise never violates.
inline bool conclusion_violated(Cell c, bool strict) {
    return strict ? c != Cell::LT : (c == Cell::GT || c == Cell::INC);
}

struct CheckSink {
    const SetFamily& fam;
    const PrefRelation& rel;
    std::vector<Violation> out;

    void demand(AxiomId ax, int a, int b, int x, int lhs, int rhs, bool strict, std::string premise) {
        Cell c = rel.cell(lhs, rhs);
        if (conclusion_violated(c, strict))
            out.push_back(Violation{ax, a, b, x, lhs, rhs, c, strict, std::move(premise)});
    }
};

inline std::string pref_str(const SetFamily& fam, int a, int b) {
    return set_to_string(fam.set(a)) + " < " + set_to_string(fam.set(b));
}

}  // namespace detail

/// Runs one axiom checker; the empty list means the axiom holds. Candidate
/// instantiations are enumerated deterministically (family order, then the
/// added element).
inline std::vector<Violation> check(AxiomId axiom, const SetFamily& fam, const LinearOrder& order,
                                    const PrefRelation& rel) {
    if (rel.size() != fam.size()) throw std::invalid_argument("relation size does not match family");
    if (order.size() != fam.ground_size()) throw std::invalid_argument("order size does not match universe");

    const int m = fam.size();
    const int n = fam.ground_size();
    detail::CheckSink sink{fam, rel, {}};

    auto above_all = [&](int x, const Mask& s) {
        bool ok = true;
        s.for_each([&](int e) { ok = ok && order.less(e, x); });
        return ok;
    };
    auto below_all = [&](int x, const Mask& s) {
        bool ok = true;
        s.for_each([&](int e) { ok = ok && order.less(x, e); });
        return ok;
    };

    switch (axiom) {
        case AxiomId::DOM:
            for (int i = 0; i < m; ++i)
                for (int x = 0; x < n; ++x) {
                    int j = fam.lift(i, x);
                    if (j < 0) continue;
                    if (above_all(x, fam.set(i)))
                        sink.demand(axiom, i, j, x, i, j, true, "");
                    else if (below_all(x, fam.set(i)))
                        sink.demand(axiom, i, j, x, j, i, true, "");
                }
            break;

        case AxiomId::SIMPLE_DOM:
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) {
                    if (x == y || !order.less(x, y)) continue;
                    Mask sx(n), sy(n), sxy(n);
                    sx.set(x);
                    sy.set(y);
                    sxy.set(x);
                    sxy.set(y);
                    int ix = fam.index_of(sx), iy = fam.index_of(sy), ixy = fam.index_of(sxy);
                    if (ix < 0 || iy < 0 || ixy < 0) continue;
                    sink.demand(axiom, ix, ixy, y, ix, ixy, true, "");
                    sink.demand(axiom, ixy, iy, x, ixy, iy, true, "");
                }
            break;

        case AxiomId::SET_DOM:
            // The added block is any set of elements, not necessarily a
            // family member; the instantiations are exactly the strict
            // subset pairs of the family.
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    if (i == j) continue;
                    if (!fam.set(i).subset_of(fam.set(j))) continue;
                    Mask block = fam.set(j) - fam.set(i);
                    bool up = true, down = true;
                    block.for_each([&](int x) {
                        up = up && above_all(x, fam.set(i));
                        down = down && below_all(x, fam.set(i));
                    });
                    if (up)
                        sink.demand(axiom, i, j, -1, i, j, true, "");
                    else if (down)
                        sink.demand(axiom, i, j, -1, j, i, true, "");
                }
            break;

        case AxiomId::MAX_DOM:
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    if (i == j) continue;
                    int maxi = max_of(fam.set(i), order), maxj = max_of(fam.set(j), order);
                    int mini = min_of(fam.set(i), order), minj = min_of(fam.set(j), order);
                    bool max_le = maxi == maxj || order.less(maxi, maxj);
                    bool min_le = mini == minj || order.less(mini, minj);
                    bool schema1 = max_le && mini != minj && order.less(mini, minj);
                    bool schema2 = min_le && maxi != maxj && order.less(maxi, maxj);
                    if (schema1 || schema2) sink.demand(axiom, i, j, -1, i, j, true, "");
                }
            break;

        case AxiomId::EXT:
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) {
                    if (x == y || !order.less(x, y)) continue;
                    Mask sx(n), sy(n);
                    sx.set(x);
                    sy.set(y);
                    int ix = fam.index_of(sx), iy = fam.index_of(sy);
                    if (ix < 0 || iy < 0) continue;
                    sink.demand(axiom, ix, iy, -1, ix, iy, true, "");
                }
            break;

        case AxiomId::IND:
        case AxiomId::STRICT_IND:
        case AxiomId::WEAK_IND:
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) {
                    if (a == b || rel.cell(a, b) != Cell::LT) continue;
                    for (int x = 0; x < n; ++x) {
                        if (fam.set(a).test(x) || fam.set(b).test(x)) continue;
                        int ax = fam.lift(a, x), bx = fam.lift(b, x);
                        if (ax < 0 || bx < 0) continue;
                        bool strict = axiom == AxiomId::STRICT_IND;
                        if (axiom == AxiomId::WEAK_IND) {
                            // A ≺ B forbids only B∪{x} ≺ A∪{x}.
                            if (rel.cell(bx, ax) == Cell::LT)
                                sink.out.push_back(Violation{axiom, a, b, x, ax, bx, rel.cell(ax, bx), false,
                                                             detail::pref_str(fam, a, b)});
                        } else {
                            sink.demand(axiom, a, b, x, ax, bx, strict, detail::pref_str(fam, a, b));
                        }
                    }
                }
            break;

        case AxiomId::REV_IND:
        case AxiomId::REV_STRICT_IND:
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) {
                    if (a == b) continue;
                    for (int x = 0; x < n; ++x) {
                        if (fam.set(a).test(x) || fam.set(b).test(x)) continue;
                        int ax = fam.lift(a, x), bx = fam.lift(b, x);
                        if (ax < 0 || bx < 0) continue;
                        if (rel.cell(ax, bx) != Cell::LT) continue;
                        bool strict = axiom == AxiomId::REV_STRICT_IND;
                        sink.demand(axiom, a, b, x, a, b, strict, detail::pref_str(fam, ax, bx));
                    }
                }
            break;
    }
    return sink.out;
}

inline bool satisfies(AxiomId axiom, const SetFamily& fam, const LinearOrder& order, const PrefRelation& rel) {
    return check(axiom, fam, order, rel).empty();
}

/// True iff every flagged axiom checks clean.
inline bool satisfies_all(const AxiomSet& axioms, const SetFamily& fam, const LinearOrder& order,
                          const PrefRelation& rel) {
    if (axioms.empty()) throw std::invalid_argument("axiom set must be nonempty");
    bool ok = true;
    axioms.for_each([&](AxiomId a) { ok = ok && satisfies(a, fam, order, rel); });
    return ok;
}

}  // namespace setlift
