#pragma once

#include "core.hpp"

namespace setlift {

/// Maxmin order: A ⪯ B iff max(A) < max(B), or max(A) = max(B) and
/// min(A) ≤ min(B). A weak order; satisfies dominance on every family.
inline PrefRelation mm_order(const SetFamily& fam, const LinearOrder& order) {
    int m = fam.size();
    std::vector<Cell> cells(size_t(m) * (m - 1) / 2);
    auto key = [&](int i) {
        return std::pair<int, int>(order.rank(max_of(fam.set(i), order)), order.rank(min_of(fam.set(i), order)));
    };
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            auto ki = key(i), kj = key(j);
            Cell c = ki == kj ? Cell::EQ : (ki < kj ? Cell::LT : Cell::GT);
            cells[PrefRelation::pair_index(m, i, j)] = c;
        }
    return PrefRelation::make(RelKind::WEAK, m, std::move(cells));
}

/// Pointwise maxmin preorder: A ⪯ B iff max(A) ≤ max(B) and min(A) ≤ min(B).
/// Satisfies dominance, independence and the extension rule on every family.
inline PrefRelation pmm_preorder(const SetFamily& fam, const LinearOrder& order) {
    int m = fam.size();
    std::vector<Cell> cells(size_t(m) * (m - 1) / 2);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            int maxi = order.rank(max_of(fam.set(i), order)), maxj = order.rank(max_of(fam.set(j), order));
            int mini = order.rank(min_of(fam.set(i), order)), minj = order.rank(min_of(fam.set(j), order));
            bool fwd = maxi <= maxj && mini <= minj;
            bool bwd = maxj <= maxi && minj <= mini;
            Cell c = fwd ? (bwd ? Cell::EQ : Cell::LT) : (bwd ? Cell::GT : Cell::INC);
            cells[PrefRelation::pair_index(m, i, j)] = c;
        }
    return PrefRelation::make(RelKind::PREORDER, m, std::move(cells));
}

namespace detail {

/// Builds the raw pairwise relation from a one-way ⪯ test; PARTIAL when the
/// strict part happens to be transitive, RAW otherwise.
template <class Leq>
PrefRelation raw_extension(const SetFamily& fam, Leq&& leq) {
    int m = fam.size();
    std::vector<Cell> cells(size_t(m) * (m - 1) / 2);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            bool fwd = leq(i, j), bwd = leq(j, i);
            Cell c = fwd ? (bwd ? Cell::EQ : Cell::LT) : (bwd ? Cell::GT : Cell::INC);
            cells[PrefRelation::pair_index(m, i, j)] = c;
        }
    bool has_eq = false;
    for (Cell c : cells) has_eq |= c == Cell::EQ;
    if (!has_eq) {
        try {
            return PrefRelation::make(RelKind::PARTIAL, m, cells);
        } catch (const std::invalid_argument&) {
            // intransitive on this family; report the raw cells
        }
    }
    return PrefRelation::make(RelKind::RAW, m, std::move(cells));
}

}  // namespace detail

/// Fishburn extension: A ⪯_f B iff every element of A∖B is below all of
/// A∩B, all of A∩B is below B∖A, and A∖B is below B∖A.
inline PrefRelation fishburn(const SetFamily& fam, const LinearOrder& order) {
    auto leq = [&](int i, int j) {
        const Mask &A = fam.set(i), &B = fam.set(j);
        Mask only_a = A - B, both = A & B, only_b = B - A;
        bool ok = true;
        only_a.for_each([&](int x) {
            both.for_each([&](int y) { ok = ok && order.less(x, y); });
            only_b.for_each([&](int z) { ok = ok && order.less(x, z); });
        });
        both.for_each([&](int y) { only_b.for_each([&](int z) { ok = ok && order.less(y, z); }); });
        return ok;
    };
    return detail::raw_extension(fam, leq);
}

/// Gärdenfors extension; a superset of Fishburn's.
inline PrefRelation gardenfors(const SetFamily& fam, const LinearOrder& order) {
    auto leq = [&](int i, int j) {
        const Mask &A = fam.set(i), &B = fam.set(j);
        if (A == B) return true;
        bool ok = true;
        if (A.subset_of(B)) {
            Mask rest = B - A;
            A.for_each([&](int x) { rest.for_each([&](int y) { ok = ok && order.less(x, y); }); });
        } else if (B.subset_of(A)) {
            Mask rest = A - B;
            rest.for_each([&](int x) { B.for_each([&](int y) { ok = ok && order.less(x, y); }); });
        } else {
            Mask only_a = A - B, only_b = B - A;
            only_a.for_each([&](int x) { only_b.for_each([&](int y) { ok = ok && order.less(x, y); }); });
        }
        return ok;
    };
    return detail::raw_extension(fam, leq);
}

enum class LexVariant { LEXIMAX, LEXIMIN };

/// Lexicographic order on sets: LEXIMAX prefers the set avoiding the largest
/// element of the symmetric difference, LEXIMIN the set holding the smallest.
/// A linear order; satisfies strict independence on every family.
inline PrefRelation lex_order(const SetFamily& fam, const LinearOrder& order, LexVariant variant) {
    int m = fam.size();
    std::vector<Cell> cells(size_t(m) * (m - 1) / 2);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            Mask diff = fam.set(i) ^ fam.set(j);
            bool lt;
            if (variant == LexVariant::LEXIMAX)
                lt = fam.set(j).test(max_of(diff, order));
            else
                lt = fam.set(i).test(min_of(diff, order));
            cells[PrefRelation::pair_index(m, i, j)] = lt ? Cell::LT : Cell::GT;
        }
    return PrefRelation::make(RelKind::LINEAR, m, std::move(cells));
}

}  // namespace setlift
