#pragma once

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "axioms.hpp"
#include "core.hpp"

namespace setlift {

enum class Target : uint8_t { LINEAR, WEAK, PARTIAL };

inline const char* target_name(Target t) {
    switch (t) {
        case Target::LINEAR: return "lo";
        case Target::WEAK: return "wo";
        case Target::PARTIAL: return "po";
    }
    return "?";
}

/// Three-valued comparison of ground elements.
enum class Ord : uint8_t { LESS, GREATER, UNKNOWN };

/// A base order built least-preferred-first. Every unplaced element sits
/// above all placed ones; unplaced elements are mutually unordered. A
/// complete prefix is an ordinary linear order.
class OrderPrefix {
public:
    explicit OrderPrefix(int n) : pos_(n, -1) {}

    static OrderPrefix full(const LinearOrder& o) {
        OrderPrefix p(o.size());
        for (int e : o.ascending()) p.place(e);
        return p;
    }

    int ground_size() const { return int(pos_.size()); }
    int placed() const { return int(seq_.size()); }
    bool complete() const { return placed() == ground_size(); }
    bool is_placed(int e) const { return pos_[e] >= 0; }
    int front() const { return seq_.front(); }

    void place(int e) {
        pos_[e] = placed();
        seq_.push_back(e);
    }
    void unplace() {
        pos_[seq_.back()] = -1;
        seq_.pop_back();
    }

    Ord cmp(int a, int b) const {
        if (a == b) return Ord::UNKNOWN;
        if (pos_[a] >= 0 && pos_[b] >= 0) return pos_[a] < pos_[b] ? Ord::LESS : Ord::GREATER;
        if (pos_[a] >= 0) return Ord::LESS;
        if (pos_[b] >= 0) return Ord::GREATER;
        return Ord::UNKNOWN;
    }
    bool certainly_less(int a, int b) const { return cmp(a, b) == Ord::LESS; }

    LinearOrder to_order() const { return LinearOrder::from_ascending(seq_); }

private:
    std::vector<int> pos_;
    std::vector<int> seq_;
};

/// Per-pair independence instantiations of one family: pair {i,j} lifts to
/// pair {i∪x, j∪x} whenever both unions are members and x is outside both.
struct PairGraph {
    struct Edge {
        int q;      // other pair index
        bool flip;  // orientation of q relative to this pair
        int16_t x;  // the added element
    };

    int m = 0;
    size_t pair_count = 0;
    std::vector<std::vector<Edge>> up, down;
    std::vector<int> degree;
    std::vector<int32_t> row, col;  // pair index -> (i, j) with i < j

    static size_t pidx(int m, int a, int b) {
        return a < b ? PrefRelation::pair_index(m, a, b) : PrefRelation::pair_index(m, b, a);
    }

    explicit PairGraph(const SetFamily& fam) : m(fam.size()) {
        pair_count = size_t(m) * (m - 1) / 2;
        up.resize(pair_count);
        down.resize(pair_count);
        degree.assign(pair_count, 0);
        row.resize(pair_count);
        col.resize(pair_count);
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                row[pidx(m, i, j)] = i;
                col[pidx(m, i, j)] = j;
            }
        int n = fam.ground_size();
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                size_t p = pidx(m, i, j);
                for (int x = 0; x < n; ++x) {
                    if (fam.set(i).test(x) || fam.set(j).test(x)) continue;
                    int k = fam.lift(i, x), l = fam.lift(j, x);
                    if (k < 0 || l < 0) continue;
                    size_t q = pidx(m, k, l);
                    bool qflip = k > l;
                    up[p].push_back({int(q), qflip, int16_t(x)});
                    down[q].push_back({int(p), qflip, int16_t(x)});
                }
            }
        for (size_t p = 0; p < pair_count; ++p) degree[p] = int(up[p].size() + down[p].size());
    }
};

namespace rules {
inline constexpr uint8_t SEED_DOM = 0, SEED_SIMPLE_DOM = 1, SEED_SET_DOM = 2, SEED_MAX_DOM = 3, SEED_EXT = 4,
                         ASSUME = 5, TRANS = 6, EQ_MERGE = 7, SI_FWD = 8, IND_FWD = 9, SI_REV = 10, IND_REV = 11,
                         SI_CONTRA = 12, RSI_CONTRA = 13;

inline const char* name(uint8_t r) {
    switch (r) {
        case SEED_DOM: return "dominance";
        case SEED_SIMPLE_DOM: return "simple dominance";
        case SEED_SET_DOM: return "set dominance";
        case SEED_MAX_DOM: return "maximal dominance";
        case SEED_EXT: return "extension";
        case ASSUME: return "assumption";
        case TRANS: return "transitivity";
        case EQ_MERGE: return "indifference merge";
        case SI_FWD: return "strict independence";
        case IND_FWD: return "independence";
        case SI_REV: return "reverse strict independence";
        case IND_REV: return "reverse independence";
        case SI_CONTRA: return "strict independence (contrapositive)";
        case RSI_CONTRA: return "reverse strict independence (contrapositive)";
    }
    return "?";
}
}  // namespace rules

struct Reason {
    uint8_t rule = rules::ASSUME;
    int p1 = -1;  // supporting pair indices, -1 when inapplicable
    int p2 = -1;
    int16_t x = -1;  // added element for independence rules
};

/// One derivation step for contradiction rendering.
struct TraceStep {
    int pair;
    Reason reason;
    std::string text;
};

struct ContradictionTrace {
    int conflict_pair = -1;
    bool truncated = false;
    std::vector<TraceStep> steps;

    std::string render() const {
        std::string out;
        if (truncated) out += "... (trace truncated, showing final steps)\n";
        for (const auto& s : steps) {
            out += s.text;
            out += '\n';
        }
        return out;
    }
};

inline constexpr int kTraceCap = 10000;

namespace bits {
inline constexpr uint8_t LT = 1, GT = 2, EQ = 4;

inline uint8_t orient(uint8_t b, bool flipped) {
    if (!flipped) return b;
    uint8_t r = b & EQ;
    if (b & LT) r |= GT;
    if (b & GT) r |= LT;
    return r;
}

inline uint8_t of_cell(Cell c) {
    switch (c) {
        case Cell::LT: return LT;
        case Cell::GT: return GT;
        case Cell::EQ: return EQ;
        case Cell::INC: return 0;
    }
    return 0;
}
}  // namespace bits

/// Seed assertions forced directly by the dominance-family axioms and the
/// extension rule, evaluated against possibly partial base-order knowledge.
/// Only preferences that hold in every completion are emitted.
struct SeedFact {
    int a, b;  // demanded a ≺ b, family indices
    uint8_t rule;
    int16_t x;
};

inline void collect_seeds(const SetFamily& fam, const OrderPrefix& ord, const AxiomSet& axioms,
                          std::vector<SeedFact>& out) {
    const int m = fam.size();
    const int n = fam.ground_size();

    auto above_all = [&](int x, const Mask& s) {
        bool ok = true;
        s.for_each([&](int e) { ok = ok && ord.certainly_less(e, x); });
        return ok;
    };
    auto below_all = [&](int x, const Mask& s) {
        bool ok = true;
        s.for_each([&](int e) { ok = ok && ord.certainly_less(x, e); });
        return ok;
    };

    if (axioms.has(AxiomId::DOM)) {
        for (int i = 0; i < m; ++i)
            for (int x = 0; x < n; ++x) {
                int j = fam.lift(i, x);
                if (j < 0) continue;
                if (above_all(x, fam.set(i)))
                    out.push_back({i, j, rules::SEED_DOM, int16_t(x)});
                else if (below_all(x, fam.set(i)))
                    out.push_back({j, i, rules::SEED_DOM, int16_t(x)});
            }
    }
    if (axioms.has(AxiomId::SIMPLE_DOM)) {
        for (int x = 0; x < n; ++x) {
            Mask sx(n);
            sx.set(x);
            int ix = fam.index_of(sx);
            if (ix < 0) continue;
            for (int y = 0; y < n; ++y) {
                if (y == x || !ord.certainly_less(x, y)) continue;
                Mask sy(n), sxy(n);
                sy.set(y);
                sxy.set(x);
                sxy.set(y);
                int iy = fam.index_of(sy), ixy = fam.index_of(sxy);
                if (iy < 0 || ixy < 0) continue;
                out.push_back({ix, ixy, rules::SEED_SIMPLE_DOM, int16_t(y)});
                out.push_back({ixy, iy, rules::SEED_SIMPLE_DOM, int16_t(x)});
            }
        }
    }
    if (axioms.has(AxiomId::SET_DOM)) {
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                if (i == j || !fam.set(i).subset_of(fam.set(j))) continue;
                Mask block = fam.set(j) - fam.set(i);
                bool up = true, down = true;
                block.for_each([&](int x) {
                    up = up && above_all(x, fam.set(i));
                    down = down && below_all(x, fam.set(i));
                });
                if (up)
                    out.push_back({i, j, rules::SEED_SET_DOM, -1});
                else if (down)
                    out.push_back({j, i, rules::SEED_SET_DOM, -1});
            }
    }
    if (axioms.has(AxiomId::MAX_DOM)) {
        // ∃-witness certainty; exact once the order is complete.
        auto max_le = [&](const Mask& A, const Mask& B, bool strict) {
            bool found = false;
            B.for_each([&](int b) {
                if (found) return;
                bool ok = true;
                A.for_each([&](int a) {
                    if (a == b)
                        ok = ok && !strict;
                    else
                        ok = ok && ord.certainly_less(a, b);
                });
                found = ok;
            });
            return found;
        };
        auto min_le = [&](const Mask& A, const Mask& B, bool strict) {
            bool found = false;
            A.for_each([&](int a) {
                if (found) return;
                bool ok = true;
                B.for_each([&](int b) {
                    if (a == b)
                        ok = ok && !strict;
                    else
                        ok = ok && ord.certainly_less(a, b);
                });
                found = ok;
            });
            return found;
        };
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                if (i == j) continue;
                const Mask &A = fam.set(i), &B = fam.set(j);
                if ((max_le(A, B, false) && min_le(A, B, true)) || (max_le(A, B, true) && min_le(A, B, false)))
                    out.push_back({i, j, rules::SEED_MAX_DOM, -1});
            }
    }
    if (axioms.has(AxiomId::EXT)) {
        for (int x = 0; x < n; ++x) {
            Mask sx(n);
            sx.set(x);
            int ix = fam.index_of(sx);
            if (ix < 0) continue;
            for (int y = 0; y < n; ++y) {
                if (y == x || !ord.certainly_less(x, y)) continue;
                Mask sy(n);
                sy.set(y);
                int iy = fam.index_of(sy);
                if (iy < 0) continue;
                out.push_back({ix, iy, rules::SEED_EXT, -1});
            }
        }
    }
}

/// Per-pair candidate domains over {LT, GT, EQ} plus the propagation rules
/// for LINEAR and WEAK targets. Removal is the only state change; the trail
/// allows chronological rollback for search.
class SearchState {
public:
    SearchState(const SetFamily& fam, const PairGraph& graph, Target target, const AxiomSet& axioms)
        : fam_(&fam), g_(&graph), target_(target), axioms_(axioms) {
        if (target == Target::PARTIAL) throw std::invalid_argument("SearchState handles LINEAR and WEAK targets");
        m_ = fam.size();
        uint8_t full = bits::LT | bits::GT | (target == Target::WEAK ? bits::EQ : 0);
        dom_.assign(g_->pair_count, full);
        pending_.assign(g_->pair_count, 0);

        bool i = axioms.has(AxiomId::IND), si = axioms.has(AxiomId::STRICT_IND), ri = axioms.has(AxiomId::REV_IND),
             rsi = axioms.has(AxiomId::REV_STRICT_IND), wi = axioms.has(AxiomId::WEAK_IND);
        bool any_ind = i || si || ri || rsi || wi;
        if (target == Target::LINEAR) {
            // all five independence forms coincide on linear orders
            strict_fwd_ = strict_rev_ = any_ind;
            weak_fwd_ = weak_rev_ = false;
        } else {
            strict_fwd_ = si;
            strict_rev_ = rsi;
            weak_fwd_ = weak_rev_ = any_ind;
        }
    }

    int family_size() const { return m_; }
    Target target() const { return target_; }
    const AxiomSet& axioms() const { return axioms_; }
    const SetFamily& family() const { return *fam_; }
    const PairGraph& graph() const { return *g_; }

    bool failed() const { return conflict_ >= 0; }
    int conflict_pair() const { return conflict_; }
    long long removals() const { return removals_; }

    uint8_t domain(size_t p) const { return dom_[p]; }
    uint8_t domain(int a, int b) const { return bits::orient(dom_[PairGraph::pidx(m_, a, b)], a > b); }
    bool resolved(size_t p) const { return __builtin_popcount(dom_[p]) == 1; }
    bool all_resolved() const {
        for (size_t p = 0; p < dom_.size(); ++p)
            if (!resolved(p)) return false;
        return true;
    }

    /// Narrows the oriented pair (a,b) to exactly `c`.
    bool assume(int a, int b, Cell c, Reason r = Reason{rules::ASSUME, -1, -1, -1}) {
        size_t p = PairGraph::pidx(m_, a, b);
        uint8_t keep = bits::orient(bits::of_cell(c), a > b);
        return remove_bits(p, uint8_t(dom_[p] & ~keep), r) && propagate();
    }

    /// Applies seed facts (without propagating).
    bool apply_seeds(const std::vector<SeedFact>& seeds) {
        for (const SeedFact& s : seeds) {
            size_t p = PairGraph::pidx(m_, s.a, s.b);
            uint8_t keep = bits::orient(bits::LT, s.a > s.b);
            if (!remove_bits(p, uint8_t(dom_[p] & ~keep), Reason{s.rule, -1, -1, s.x})) return false;
        }
        return true;
    }

    /// Runs the rule set to its least fixpoint. Returns false on contradiction.
    bool propagate() {
        if (failed()) return false;
        while (!queue_.empty()) {
            size_t p = queue_.front();
            queue_.pop_front();
            uint8_t rb = pending_[p];
            pending_[p] = 0;
            if (!process(p, rb)) {
                for (size_t q : queue_) pending_[q] = 0;
                queue_.clear();
                return false;
            }
        }
        return true;
    }

    size_t mark() const { return trail_.size(); }

    void rollback(size_t mark) {
        while (trail_.size() > mark) {
            const TrailEntry& e = trail_.back();
            dom_[e.pair] |= e.removed;
            trail_.pop_back();
        }
        for (size_t q : queue_) pending_[q] = 0;
        queue_.clear();
        conflict_ = -1;
    }

    /// Builds the relation once every pair is resolved.
    PrefRelation extract(RelKind kind) const {
        std::vector<Cell> cells(dom_.size());
        for (size_t p = 0; p < dom_.size(); ++p) {
            switch (dom_[p]) {
                case bits::LT: cells[p] = Cell::LT; break;
                case bits::GT: cells[p] = Cell::GT; break;
                case bits::EQ: cells[p] = Cell::EQ; break;
                default: throw std::logic_error("extract on unresolved state");
            }
        }
        return PrefRelation::make(kind, m_, std::move(cells));
    }

    ContradictionTrace build_trace() const;

private:
    struct TrailEntry {
        int pair;
        uint8_t removed;
        Reason reason;
    };

    bool remove_bits(size_t p, uint8_t rem, Reason r) {
        rem &= dom_[p];
        if (!rem) return true;
        trail_.push_back({int(p), rem, r});
        dom_[p] &= ~rem;
        ++removals_;
        if (dom_[p] == 0) {
            conflict_ = int(p);
            return false;
        }
        if (!pending_[p]) queue_.push_back(p);
        pending_[p] |= rem;
        return true;
    }

    bool remove_view(int a, int b, uint8_t view_bits, Reason r) {
        return remove_bits(PairGraph::pidx(m_, a, b), bits::orient(view_bits, a > b), r);
    }
    bool remove_stored(size_t p, bool flipped, uint8_t view_bits, Reason r) {
        return remove_bits(p, bits::orient(view_bits, flipped), r);
    }
    uint8_t view(int a, int b) const { return bits::orient(dom_[PairGraph::pidx(m_, a, b)], a > b); }
    bool lt_def(int a, int b) const { return view(a, b) == bits::LT; }
    bool leq_def(int a, int b) const { return (view(a, b) & bits::GT) == 0; }

    /// a⪯b has become certain: compose through every intermediate.
    bool compose_leq(int a, int b, int p) {
        bool strict = lt_def(a, b);
        for (int c = 0; c < m_; ++c) {
            if (c == a || c == b) continue;
            int pbc = int(PairGraph::pidx(m_, b, c));
            int pca = int(PairGraph::pidx(m_, c, a));
            Reason r1{rules::TRANS, p, pbc, -1};
            Reason r2{rules::TRANS, pca, p, -1};
            if (lt_def(b, c) || (strict && leq_def(b, c))) {
                if (!remove_view(a, c, uint8_t(bits::GT | bits::EQ), r1)) return false;
            } else if (leq_def(b, c)) {
                if (!remove_view(a, c, bits::GT, r1)) return false;
            }
            if (lt_def(c, a) || (strict && leq_def(c, a))) {
                if (!remove_view(c, b, uint8_t(bits::GT | bits::EQ), r2)) return false;
            } else if (leq_def(c, a)) {
                if (!remove_view(c, b, bits::GT, r2)) return false;
            }
        }
        return true;
    }

    bool process(size_t p, uint8_t rb_stored) {
        int i = g_->row[p], j = g_->col[p];
        for (int side = 0; side < 2; ++side) {
            bool flipped = side == 1;
            int a = flipped ? j : i, b = flipped ? i : j;
            uint8_t rb = bits::orient(rb_stored, flipped);
            uint8_t d = bits::orient(dom_[p], flipped);

            if (rb & bits::LT) {
                // a ≺ b ruled out: contrapositives of the strict rules
                if (strict_fwd_)
                    for (const auto& e : g_->down[p])
                        if (!remove_stored(size_t(e.q), flipped ^ e.flip, bits::LT,
                                         Reason{rules::SI_CONTRA, int(p), -1, e.x}))
                            return false;
                if (strict_rev_)
                    for (const auto& e : g_->up[p])
                        if (!remove_stored(size_t(e.q), flipped ^ e.flip, bits::LT,
                                         Reason{rules::RSI_CONTRA, int(p), -1, e.x}))
                            return false;
            }
            if (rb & bits::GT) {
                if (!compose_leq(a, b, int(p))) return false;
            }
            if (d == bits::LT) {
                // established strict fact a ≺ b
                if (!(rb & bits::GT) && !compose_leq(a, b, int(p))) return false;
                if (strict_fwd_ || weak_fwd_)
                    for (const auto& e : g_->up[p]) {
                        bool vflip = flipped ^ e.flip;
                        if (strict_fwd_) {
                            if (!remove_stored(size_t(e.q), vflip, uint8_t(bits::GT | bits::EQ),
                                             Reason{rules::SI_FWD, int(p), -1, e.x}))
                                return false;
                        } else if (!remove_stored(size_t(e.q), vflip, bits::GT, Reason{rules::IND_FWD, int(p), -1, e.x}))
                            return false;
                    }
                if (strict_rev_ || weak_rev_)
                    for (const auto& e : g_->down[p]) {
                        bool vflip = flipped ^ e.flip;
                        if (strict_rev_) {
                            if (!remove_stored(size_t(e.q), vflip, uint8_t(bits::GT | bits::EQ),
                                             Reason{rules::SI_REV, int(p), -1, e.x}))
                                return false;
                        } else if (!remove_stored(size_t(e.q), vflip, bits::GT, Reason{rules::IND_REV, int(p), -1, e.x}))
                            return false;
                    }
            }
            if (d == bits::EQ && !flipped) {
                // indifference: merge the two rows
                for (int c = 0; c < m_; ++c) {
                    if (c == i || c == j) continue;
                    uint8_t va = view(i, c), vb = view(j, c);
                    Reason r{rules::EQ_MERGE, int(p), -1, -1};
                    if (!remove_view(i, c, uint8_t(va & ~vb), r)) return false;
                    if (!remove_view(j, c, uint8_t(vb & ~va), r)) return false;
                }
            }
        }
        return true;
    }

    const SetFamily* fam_;
    const PairGraph* g_;
    Target target_;
    AxiomSet axioms_;
    int m_ = 0;
    bool strict_fwd_ = false, weak_fwd_ = false, strict_rev_ = false, weak_rev_ = false;

    std::vector<uint8_t> dom_;
    std::vector<uint8_t> pending_;
    std::deque<size_t> queue_;
    std::vector<TrailEntry> trail_;
    int conflict_ = -1;
    long long removals_ = 0;
};

/// Seeds a fresh state for a complete base order.
inline SearchState make_seeded_state(const SetFamily& fam, const PairGraph& g, const LinearOrder& order,
                                     const AxiomSet& axioms, Target target) {
    SearchState st(fam, g, target, axioms);
    std::vector<SeedFact> seeds;
    collect_seeds(fam, OrderPrefix::full(order), axioms, seeds);
    st.apply_seeds(seeds);
    return st;
}

namespace detail {

inline std::string pair_text(const SetFamily& fam, const PairGraph& g, int p, uint8_t dom) {
    int i = g.row[p], j = g.col[p];
    std::string rel;
    switch (dom) {
        case bits::LT: rel = " < "; break;
        case bits::GT: rel = " > "; break;
        case bits::EQ: rel = " ~ "; break;
        case 0: rel = " >< "; break;
        default: rel = " vs "; break;
    }
    return set_to_string(fam.set(i)) + rel + set_to_string(fam.set(j));
}

}  // namespace detail

inline ContradictionTrace SearchState::build_trace() const {
    ContradictionTrace t;
    t.conflict_pair = conflict_;
    if (conflict_ < 0) return t;
    // Collect the entries supporting the conflict by walking reasons backward.
    std::vector<bool> relevant(dom_.size(), false);
    relevant[conflict_] = true;
    std::vector<const TrailEntry*> picked;
    for (auto it = trail_.rbegin(); it != trail_.rend(); ++it) {
        if (!relevant[it->pair]) continue;
        picked.push_back(&*it);
        if (it->reason.p1 >= 0) relevant[it->reason.p1] = true;
        if (it->reason.p2 >= 0) relevant[it->reason.p2] = true;
        if (int(picked.size()) > kTraceCap) {
            t.truncated = true;
            break;
        }
    }
    for (auto it = picked.rbegin(); it != picked.rend(); ++it) {
        const TrailEntry& e = **it;
        TraceStep s;
        s.pair = e.pair;
        s.reason = e.reason;
        s.text = std::string(rules::name(e.reason.rule));
        if (e.reason.x >= 0) s.text += " (x=" + std::to_string(e.reason.x + 1) + ")";
        s.text += ": " + detail::pair_text(*fam_, *g_, e.pair, dom_[e.pair]);
        t.steps.push_back(std::move(s));
    }
    if (t.truncated && int(t.steps.size()) > 64) t.steps.erase(t.steps.begin(), t.steps.end() - 64);
    return t;
}

/// Forward-only closure for the PARTIAL target: the minimal transitive
/// relation containing the axiom seeds and closed under strict independence.
class PartialClosure {
public:
    PartialClosure(const SetFamily& fam, const PairGraph& g, bool strict_ind)
        : fam_(&fam), g_(&g), strict_ind_(strict_ind), m_(fam.size()) {
        facts_.assign(g.pair_count, 0);
    }

    bool failed() const { return conflict_ >= 0; }
    int conflict_pair() const { return conflict_; }

    bool assert_lt(int a, int b, Reason r) {
        size_t p = PairGraph::pidx(m_, a, b);
        uint8_t v = a < b ? bits::LT : bits::GT;
        if (facts_[p] == v) return true;
        if (facts_[p] != 0) {
            trail_.push_back({int(p), v, r});
            conflict_ = int(p);
            return false;
        }
        facts_[p] = v;
        trail_.push_back({int(p), v, r});
        queue_.push_back(p);
        return true;
    }

    bool run(const std::vector<SeedFact>& seeds) {
        for (const SeedFact& s : seeds)
            if (!assert_lt(s.a, s.b, Reason{s.rule, -1, -1, s.x})) return false;
        while (!queue_.empty()) {
            size_t p = queue_.front();
            queue_.pop_front();
            if (!process(p)) return false;
        }
        return true;
    }

    bool lt(int a, int b) const {
        size_t p = PairGraph::pidx(m_, a, b);
        return facts_[p] == (a < b ? bits::LT : bits::GT);
    }

    PrefRelation extract() const {
        std::vector<Cell> cells(facts_.size());
        for (size_t p = 0; p < facts_.size(); ++p)
            cells[p] = facts_[p] == bits::LT ? Cell::LT : facts_[p] == bits::GT ? Cell::GT : Cell::INC;
        return PrefRelation::make(RelKind::PARTIAL, m_, std::move(cells));
    }

    ContradictionTrace build_trace() const {
        ContradictionTrace t;
        t.conflict_pair = conflict_;
        std::vector<bool> relevant(facts_.size(), false);
        if (conflict_ >= 0) relevant[conflict_] = true;
        std::vector<const Entry*> picked;
        for (auto it = trail_.rbegin(); it != trail_.rend(); ++it) {
            if (!relevant[it->pair]) continue;
            picked.push_back(&*it);
            if (it->reason.p1 >= 0) relevant[it->reason.p1] = true;
            if (it->reason.p2 >= 0) relevant[it->reason.p2] = true;
            if (int(picked.size()) > kTraceCap) {
                t.truncated = true;
                break;
            }
        }
        for (auto it = picked.rbegin(); it != picked.rend(); ++it) {
            const Entry& e = **it;
            TraceStep s;
            s.pair = e.pair;
            s.reason = e.reason;
            s.text = std::string(rules::name(e.reason.rule));
            if (e.reason.x >= 0) s.text += " (x=" + std::to_string(e.reason.x + 1) + ")";
            s.text += ": " + detail::pair_text(*fam_, *g_, e.pair, e.pair == conflict_ ? 0 : e.value);
            t.steps.push_back(std::move(s));
        }
        if (t.truncated && int(t.steps.size()) > 64) t.steps.erase(t.steps.begin(), t.steps.end() - 64);
        return t;
    }

private:
    struct Entry {
        int pair;
        uint8_t value;
        Reason reason;
    };

    bool process(size_t p) {
        int i = g_->row[p], j = g_->col[p];
        bool is_lt = facts_[p] == bits::LT;
        int a = is_lt ? i : j, b = is_lt ? j : i;  // fact a ≺ b
        for (int c = 0; c < m_; ++c) {
            if (c == a || c == b) continue;
            int pbc = int(PairGraph::pidx(m_, b, c));
            int pca = int(PairGraph::pidx(m_, c, a));
            if (lt(b, c) && !assert_lt(a, c, Reason{rules::TRANS, int(p), pbc, -1})) return false;
            if (lt(c, a) && !assert_lt(c, b, Reason{rules::TRANS, pca, int(p), -1})) return false;
        }
        if (strict_ind_) {
            bool stored_lt = facts_[p] == bits::LT;
            for (const auto& e : g_->up[p]) {
                int qi = g_->row[e.q], qj = g_->col[e.q];
                bool q_lt = stored_lt != e.flip;
                int qa = q_lt ? qi : qj, qb = q_lt ? qj : qi;
                if (!assert_lt(qa, qb, Reason{rules::SI_FWD, int(p), -1, e.x})) return false;
            }
        }
        return true;
    }

    const SetFamily* fam_;
    const PairGraph* g_;
    bool strict_ind_;
    int m_;
    std::vector<uint8_t> facts_;
    std::deque<size_t> queue_;
    std::vector<Entry> trail_;
    int conflict_ = -1;
};

struct ClosureResult {
    bool feasible = false;
    std::optional<PrefRelation> relation;
    std::optional<ContradictionTrace> trace;
};

/// Axiom sets the PARTIAL-target closure supports.
inline bool partial_closure_supports(const AxiomSet& axioms) {
    AxiomSet allowed{AxiomId::DOM,     AxiomId::SIMPLE_DOM, AxiomId::SET_DOM,
                     AxiomId::MAX_DOM, AxiomId::EXT,        AxiomId::STRICT_IND};
    return axioms.subset_of(allowed);
}

inline ClosureResult partial_closure(const SetFamily& fam, const LinearOrder& order, const AxiomSet& axioms,
                                     const PairGraph* shared_graph = nullptr) {
    if (axioms.empty()) throw std::invalid_argument("axiom set must be nonempty");
    if (axioms.has(AxiomId::IND))
        throw std::invalid_argument(
            "partial-target decision with plain independence is trivial: the pointwise maxmin preorder "
            "(lift --method pmm) always satisfies dominance, independence and the extension rule");
    if (!partial_closure_supports(axioms))
        throw std::invalid_argument("partial-target closure supports only d, sd, setd, maxd, e, si");

    std::optional<PairGraph> own;
    if (!shared_graph) own.emplace(fam);
    const PairGraph& g = shared_graph ? *shared_graph : *own;

    PartialClosure pc(fam, g, axioms.has(AxiomId::STRICT_IND));
    std::vector<SeedFact> seeds;
    collect_seeds(fam, OrderPrefix::full(order), axioms, seeds);
    ClosureResult res;
    if (pc.run(seeds)) {
        res.feasible = true;
        res.relation = pc.extract();
    } else {
        res.feasible = false;
        res.trace = pc.build_trace();
    }
    return res;
}

/// Minimal partial order whose strict part satisfies dominance and strict
/// independence (plus the extension rule when flagged), or a contradiction
/// trace when none exists.
inline ClosureResult minimal_di_s_partial_order(const SetFamily& fam, const LinearOrder& order,
                                                bool with_extension = false,
                                                const PairGraph* shared_graph = nullptr) {
    AxiomSet ax{AxiomId::DOM, AxiomId::STRICT_IND};
    if (with_extension) ax.add(AxiomId::EXT);
    return partial_closure(fam, order, ax, shared_graph);
}

}  // namespace setlift
