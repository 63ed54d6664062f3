// Test-side oracles: brute-force enumeration over all lifted orders of a
// kind, plus seeded random generators. Everything here decides by exhaustive
// checking through the axiom checkers, independently of the solver's
// propagation and search path.
#pragma once

#include <optional>
#include <random>

#include <setlift/setlift.hpp>

namespace oracle {

using namespace setlift;

inline Mask mask_of(int n, std::initializer_list<int> elems_1based) {
    Mask m(n);
    for (int e : elems_1based) m.set(e - 1);
    return m;
}

inline SetFamily family_of(int n, const std::vector<std::vector<int>>& sets_1based) {
    SetFamily fam((Universe(n)));
    for (const auto& s : sets_1based) {
        Mask m(n);
        for (int e : s) m.set(e - 1);
        fam.add(m);
    }
    return fam;
}

/// Full powerset family minus the empty set and the listed exclusions.
inline SetFamily powerset_family(int n, const std::vector<std::vector<int>>& excluded = {}) {
    SetFamily fam((Universe(n)));
    for (int bits = 1; bits < (1 << n); ++bits) {
        Mask m(n);
        for (int e = 0; e < n; ++e)
            if ((bits >> e) & 1) m.set(e);
        bool skip = false;
        for (const auto& ex : excluded) {
            Mask x(n);
            for (int e : ex) x.set(e - 1);
            if (m == x) skip = true;
        }
        if (!skip) fam.add(m);
    }
    return fam;
}

inline PrefRelation relation_from_levels(const std::vector<int>& lv) {
    int m = int(lv.size());
    std::vector<Cell> cells(size_t(m) * (m - 1) / 2);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            cells[PrefRelation::pair_index(m, i, j)] =
                lv[i] < lv[j] ? Cell::LT : lv[i] > lv[j] ? Cell::GT : Cell::EQ;
    bool any_eq = false;
    for (Cell c : cells) any_eq |= c == Cell::EQ;
    return PrefRelation::make(any_eq ? RelKind::WEAK : RelKind::LINEAR, m, std::move(cells));
}

/// Visits every weak order on m items (as level vectors surjective onto an
/// initial segment); 541 orders for m = 5. Stops early when f returns true.
template <class F>
bool for_each_weak_order(int m, F&& f) {
    std::vector<int> lv(m, 0);
    for (;;) {
        int max_lv = 0;
        std::vector<bool> used(m, false);
        for (int v : lv) {
            used[v] = true;
            max_lv = std::max(max_lv, v);
        }
        bool surjective = true;
        for (int v = 0; v <= max_lv; ++v) surjective = surjective && used[v];
        if (surjective && f(relation_from_levels(lv))) return true;
        int k = m - 1;
        while (k >= 0 && lv[k] == m - 1) lv[k--] = 0;
        if (k < 0) return false;
        ++lv[k];
    }
}

/// Visits every linear order on m items. Stops early when f returns true.
template <class F>
bool for_each_linear_order(int m, F&& f) {
    std::vector<int> pos(m);
    for (int i = 0; i < m; ++i) pos[i] = i;
    do {
        if (f(relation_from_levels(pos))) return true;
    } while (std::next_permutation(pos.begin(), pos.end()));
    return false;
}

/// Brute-force ≤-orderability: the first lifted order of the requested kind
/// passing every checker, if any.
inline std::optional<PrefRelation> brute_force_orderable(const SetFamily& fam, const LinearOrder& order,
                                                         const AxiomSet& axioms, Target target) {
    std::optional<PrefRelation> found;
    auto probe = [&](const PrefRelation& rel) {
        if (satisfies_all(axioms, fam, order, rel)) {
            found = rel;
            return true;
        }
        return false;
    };
    if (target == Target::LINEAR)
        for_each_linear_order(fam.size(), probe);
    else
        for_each_weak_order(fam.size(), probe);
    return found;
}

inline LinearOrder random_order(std::mt19937& rng, int n) {
    std::vector<int> asc(n);
    for (int i = 0; i < n; ++i) asc[i] = i;
    std::shuffle(asc.begin(), asc.end(), rng);
    return LinearOrder::from_ascending(std::move(asc));
}

inline SetFamily random_family(std::mt19937& rng, int n, int max_sets) {
    int limit = (1 << n) - 1;
    int m = 1 + int(rng() % uint32_t(std::min(max_sets, limit)));
    std::vector<int> all(limit);
    for (int b = 1; b <= limit; ++b) all[b - 1] = b;
    std::shuffle(all.begin(), all.end(), rng);
    SetFamily fam((Universe(n)));
    for (int k = 0; k < m; ++k) {
        Mask mm(n);
        for (int e = 0; e < n; ++e)
            if ((all[k] >> e) & 1) mm.set(e);
        fam.add(mm);
    }
    return fam;
}

/// Random relation of the requested kind (valid by construction).
inline PrefRelation random_relation(std::mt19937& rng, int m, RelKind kind) {
    if (kind == RelKind::LINEAR || kind == RelKind::WEAK) {
        std::vector<int> lv(m);
        if (kind == RelKind::LINEAR) {
            for (int i = 0; i < m; ++i) lv[i] = i;
            std::shuffle(lv.begin(), lv.end(), rng);
        } else {
            int levels = 1 + int(rng() % uint32_t(std::max(1, m)));
            for (int i = 0; i < m; ++i) lv[i] = int(rng() % uint32_t(levels));
        }
        PrefRelation rel = relation_from_levels(lv);
        if (rel.kind() != kind) {
            // force the declared kind (a weak order may come out linear)
            return PrefRelation::make(kind, m, rel.cells());
        }
        return rel;
    }
    // random strict partial order: keep random edges of a random linear
    // order, then close transitively
    std::vector<int> pos(m);
    for (int i = 0; i < m; ++i) pos[i] = i;
    std::shuffle(pos.begin(), pos.end(), rng);
    std::vector<std::vector<bool>> lt(m, std::vector<bool>(m, false));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (pos[i] < pos[j] && rng() % 2) lt[i][j] = true;
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (lt[i][k] && lt[k][j]) lt[i][j] = true;
    if (kind == RelKind::PARTIAL) {
        std::vector<Cell> cells(size_t(m) * (m - 1) / 2);
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                cells[PrefRelation::pair_index(m, i, j)] =
                    lt[i][j] ? Cell::LT : lt[j][i] ? Cell::GT : Cell::INC;
        return PrefRelation::make(RelKind::PARTIAL, m, std::move(cells));
    }
    // preorder: group items, order the groups partially
    int groups = 1 + int(rng() % uint32_t(m));
    std::vector<int> grp(m);
    for (int i = 0; i < m; ++i) grp[i] = int(rng() % uint32_t(groups));
    std::vector<Cell> cells(size_t(m) * (m - 1) / 2);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            Cell c;
            if (grp[i] == grp[j])
                c = Cell::EQ;
            else if (lt[grp[i]][grp[j]])
                c = Cell::LT;
            else if (lt[grp[j]][grp[i]])
                c = Cell::GT;
            else
                c = Cell::INC;
            cells[PrefRelation::pair_index(m, i, j)] = c;
        }
    return PrefRelation::make(RelKind::PREORDER, m, std::move(cells));
}

}  // namespace oracle
