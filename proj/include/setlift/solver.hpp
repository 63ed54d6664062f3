#pragma once

#include <atomic>
#include <chrono>
#include <optional>
#include <thread>

#include "closure.hpp"

namespace setlift {

struct Budget {
    long long node_limit = 10'000'000;
    double wall_seconds = 300.0;
};

enum class SolveStatus : uint8_t { SAT, UNSAT, BUDGET };
enum class QuantStatus : uint8_t { HOLDS, FAILS, BUDGET };

struct SolveStats {
    long long nodes = 0;
    long long propagations = 0;
    double seconds = 0;
};

struct SolveResult {
    SolveStatus status = SolveStatus::UNSAT;
    std::optional<PrefRelation> witness;
    std::optional<ContradictionTrace> trace;
    SolveStats stats;
};

struct QuantResult {
    QuantStatus status = QuantStatus::FAILS;
    std::optional<LinearOrder> counterexample_order;  // strong, FAILS
    std::optional<LinearOrder> witness_order;         // weak, HOLDS
    std::optional<PrefRelation> witness_relation;     // weak, HOLDS
    SolveStats stats;
    std::string progress;
};

namespace detail {

/// Shared, thread-safe budget accounting.
class BudgetClock {
public:
    explicit BudgetClock(const Budget& b)
        : node_limit_(b.node_limit), wall_(b.wall_seconds), start_(std::chrono::steady_clock::now()) {}

    bool charge(long long k = 1) {
        long long v = nodes_.fetch_add(k, std::memory_order_relaxed) + k;
        if (v > node_limit_) return false;
        if ((v & 1023) == 0 && elapsed() > wall_) return false;
        return !cancelled_.load(std::memory_order_relaxed);
    }
    bool exhausted() const {
        return nodes_.load(std::memory_order_relaxed) > node_limit_ || elapsed() > wall_;
    }
    void cancel() { cancelled_.store(true, std::memory_order_relaxed); }
    bool cancelled() const { return cancelled_.load(std::memory_order_relaxed); }

    long long nodes() const { return nodes_.load(std::memory_order_relaxed); }
    void add_props(long long k) { props_.fetch_add(k, std::memory_order_relaxed); }
    long long props() const { return props_.load(std::memory_order_relaxed); }
    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }
    Budget remaining() const {
        Budget b;
        b.node_limit = std::max(0LL, node_limit_ - nodes());
        b.wall_seconds = std::max(0.0, wall_ - elapsed());
        return b;
    }

private:
    long long node_limit_;
    double wall_;
    std::chrono::steady_clock::time_point start_;
    std::atomic<long long> nodes_{0};
    std::atomic<long long> props_{0};
    std::atomic<bool> cancelled_{false};
};

/// Unresolved pair with the smallest domain; ties prefer pairs touched by
/// more independence instantiations, then the lowest index.
inline int pick_branch_pair(const SearchState& st) {
    const PairGraph& g = st.graph();
    int best = -1, best_size = 4, best_deg = -1;
    for (size_t p = 0; p < g.pair_count; ++p) {
        uint8_t d = st.domain(p);
        int sz = __builtin_popcount(d);
        if (sz < 2) continue;
        if (sz < best_size || (sz == best_size && g.degree[p] > best_deg)) {
            best = int(p);
            best_size = sz;
            best_deg = g.degree[p];
        }
    }
    return best;
}

inline SolveStatus search(SearchState& st, BudgetClock& clk, std::optional<PrefRelation>& witness,
                          const SetFamily& fam, const LinearOrder& order) {
    int p = pick_branch_pair(st);
    if (p < 0) {
        // fully resolved: verify before reporting
        RelKind kind = st.target() == Target::LINEAR ? RelKind::LINEAR : RelKind::WEAK;
        try {
            PrefRelation rel = st.extract(kind);
            if (satisfies_all(st.axioms(), fam, order, rel)) {
                witness = std::move(rel);
                return SolveStatus::SAT;
            }
        } catch (const std::invalid_argument&) {
        }
        return SolveStatus::UNSAT;
    }
    int a = st.graph().row[p], b = st.graph().col[p];
    for (Cell v : {Cell::LT, Cell::GT, Cell::EQ}) {
        if (!(st.domain(p) & bits::of_cell(v))) continue;
        if (!clk.charge()) return SolveStatus::BUDGET;
        size_t m = st.mark();
        if (st.assume(a, b, v)) {
            SolveStatus r = search(st, clk, witness, fam, order);
            if (r != SolveStatus::UNSAT) return r;
        }
        st.rollback(m);
    }
    return SolveStatus::UNSAT;
}

}  // namespace detail

/// Exact ≤-orderability decision: propagation plus backtracking for LINEAR
/// and WEAK targets, the polynomial closure for PARTIAL.
inline SolveResult decide_orderable(const SetFamily& fam, const LinearOrder& order, const AxiomSet& axioms,
                                    Target target, const Budget& budget = Budget{},
                                    const PairGraph* shared_graph = nullptr) {
    if (axioms.empty()) throw std::invalid_argument("axiom set must be nonempty");
    SolveResult res;
    auto t0 = std::chrono::steady_clock::now();
    auto finish = [&](SolveResult r) {
        r.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return r;
    };

    if (target == Target::PARTIAL) {
        ClosureResult c = partial_closure(fam, order, axioms, shared_graph);
        if (c.feasible) {
            if (!satisfies_all(axioms, fam, order, *c.relation))
                throw std::logic_error("closure produced an unverifiable witness");
            res.status = SolveStatus::SAT;
            res.witness = std::move(c.relation);
        } else {
            res.status = SolveStatus::UNSAT;
            res.trace = std::move(c.trace);
        }
        return finish(res);
    }

    std::optional<PairGraph> own;
    if (!shared_graph) own.emplace(fam);
    const PairGraph& g = shared_graph ? *shared_graph : *own;

    detail::BudgetClock clk(budget);
    SearchState st = make_seeded_state(fam, g, order, axioms, target);
    if (!st.propagate()) {
        res.status = SolveStatus::UNSAT;
        res.trace = st.build_trace();
        res.stats.propagations = st.removals();
        return finish(res);
    }
    res.status = detail::search(st, clk, res.witness, fam, order);
    res.stats.nodes = clk.nodes();
    res.stats.propagations = st.removals();
    return finish(res);
}

struct QuantOptions {
    int jobs = 1;
    bool allow_reverse_skip = true;  // tests disable to cross-check the skip
};

namespace detail {

/// DFS over base orders built least-first. A prefix already determines every
/// pair of placed elements and places them below all unplaced ones, so any
/// axiom consequence derivable from that partial knowledge prunes the whole
/// subtree when it contradicts.
class QuantSearch {
public:
    enum class Mode { STRONG, WEAK };

    QuantSearch(const SetFamily& fam, const PairGraph& g, const AxiomSet& axioms, Target target, Mode mode,
                BudgetClock& clk, bool reverse_skip)
        : fam_(fam),
          g_(g),
          axioms_(axioms),
          target_(target),
          mode_(mode),
          clk_(clk),
          prefix_(fam.ground_size()),
          skip_(reverse_skip && symmetric_axioms(axioms)) {}

    static bool symmetric_axioms(const AxiomSet& a) {
        // Lem:inverse covers dominance, extension, independence, strict independence
        AxiomSet sym{AxiomId::DOM, AxiomId::EXT, AxiomId::IND, AxiomId::STRICT_IND};
        return a.subset_of(sym);
    }

    QuantResult run(int first_element = -1) {
        QuantResult out;
        if (target_ != Target::PARTIAL) state_.emplace(fam_, g_, target_, axioms_);
        Outcome o;
        if (first_element < 0) {
            o = descend();
        } else {
            o = place_and_descend(first_element);
        }
        switch (o) {
            case Outcome::FOUND:
                if (mode_ == Mode::STRONG) {
                    out.status = QuantStatus::FAILS;
                    out.counterexample_order = found_order_;
                } else {
                    out.status = QuantStatus::HOLDS;
                    out.witness_order = found_order_;
                    out.witness_relation = found_relation_;
                }
                break;
            case Outcome::EXHAUSTED:
                out.status = mode_ == Mode::STRONG ? QuantStatus::HOLDS : QuantStatus::FAILS;
                break;
            case Outcome::BUDGET: out.status = QuantStatus::BUDGET; break;
        }
        out.progress = std::to_string(leaves_) + " orders decided, " + std::to_string(prunes_) +
                       " subtrees pruned by propagation";
        if (state_) clk_.add_props(state_->removals());
        return out;
    }

private:
    enum class Outcome { FOUND, EXHAUSTED, BUDGET };

    Outcome descend() {
        if (prefix_.complete()) return leaf();
        int n = prefix_.ground_size();
        for (int e = 0; e < n; ++e) {
            if (prefix_.is_placed(e)) continue;
            Outcome o = place_and_descend(e);
            if (o != Outcome::EXHAUSTED) return o;
        }
        return Outcome::EXHAUSTED;
    }

    Outcome place_and_descend(int e) {
        if (!clk_.charge()) return Outcome::BUDGET;
        int n = prefix_.ground_size();
        if (skip_ && n > 1) {
            // prune subtrees without any canonical completion (first < last)
            int front = prefix_.placed() == 0 ? e : prefix_.front();
            int last_possible;
            if (prefix_.placed() == n - 1) {
                last_possible = e;
            } else {
                last_possible = -1;
                for (int u = n - 1; u >= 0; --u)
                    if (u != e && !prefix_.is_placed(u)) {
                        last_possible = u;
                        break;
                    }
            }
            if (front > last_possible) return Outcome::EXHAUSTED;
        }
        prefix_.place(e);
        bool contradiction = false;
        size_t mark = 0;
        if (target_ == Target::PARTIAL) {
            contradiction = !partial_feasible_prefix();
        } else {
            mark = state_->mark();
            seeds_.clear();
            collect_seeds(fam_, prefix_, axioms_, seeds_);
            contradiction = !(state_->apply_seeds(seeds_) && state_->propagate());
        }
        Outcome o = Outcome::EXHAUSTED;
        if (contradiction) {
            ++prunes_;
            o = pruned_subtree();
        } else {
            o = descend();
        }
        if (target_ != Target::PARTIAL) state_->rollback(mark);
        prefix_.unplace();
        return o;
    }

    /// Every completion of the prefix is infeasible. For STRONG mode the
    /// lex-least canonical completion is the counterexample.
    Outcome pruned_subtree() {
        if (mode_ == Mode::WEAK) return Outcome::EXHAUSTED;
        // lex-least completion: the prefix followed by the rest ascending
        OrderPrefix copy = prefix_;
        for (int e = 0; e < prefix_.ground_size(); ++e)
            if (!prefix_.is_placed(e)) copy.place(e);
        LinearOrder cand = copy.to_order();
        std::vector<int> const& asc = cand.ascending();
        if (skip_ && asc.size() > 1 && !(asc.front() < asc.back())) return Outcome::EXHAUSTED;
        // honest double check of the pruning step
        SolveResult v = decide_orderable(fam_, cand, axioms_, target_, clk_.remaining(), &g_);
        clk_.add_props(v.stats.propagations);
        if (!clk_.charge(v.stats.nodes + 1)) return Outcome::BUDGET;
        if (v.status == SolveStatus::BUDGET) return Outcome::BUDGET;
        if (v.status != SolveStatus::UNSAT) throw std::logic_error("prefix pruning disagrees with full solve");
        found_order_ = cand;
        return Outcome::FOUND;
    }

    Outcome leaf() {
        LinearOrder order = prefix_.to_order();
        if (skip_ && order.size() > 1 && !(order.at(0) < order.at(order.size() - 1)))
            return Outcome::EXHAUSTED;  // reverse already covered
        ++leaves_;
        if (target_ == Target::PARTIAL) {
            if (!clk_.charge()) return Outcome::BUDGET;
            ClosureResult c = partial_closure(fam_, order, axioms_, &g_);
            bool sat = c.feasible;
            if (sat && mode_ == Mode::WEAK) {
                if (!satisfies_all(axioms_, fam_, order, *c.relation))
                    throw std::logic_error("closure produced an unverifiable witness");
                found_order_ = order;
                found_relation_ = c.relation;
                return Outcome::FOUND;
            }
            if (!sat && mode_ == Mode::STRONG) {
                found_order_ = order;
                return Outcome::FOUND;
            }
            return Outcome::EXHAUSTED;
        }
        std::optional<PrefRelation> witness;
        SolveStatus s = search(*state_, clk_, witness, fam_, order);
        if (s == SolveStatus::BUDGET) return Outcome::BUDGET;
        if (s == SolveStatus::SAT && mode_ == Mode::WEAK) {
            found_order_ = order;
            found_relation_ = std::move(witness);
            return Outcome::FOUND;
        }
        if (s == SolveStatus::UNSAT && mode_ == Mode::STRONG) {
            found_order_ = order;
            return Outcome::FOUND;
        }
        return Outcome::EXHAUSTED;
    }

    /// Forward closure on seeds derivable from the prefix (PARTIAL target).
    bool partial_feasible_prefix() {
        PartialClosure pc(fam_, g_, axioms_.has(AxiomId::STRICT_IND));
        seeds_.clear();
        collect_seeds(fam_, prefix_, axioms_, seeds_);
        return pc.run(seeds_);
    }

    const SetFamily& fam_;
    const PairGraph& g_;
    AxiomSet axioms_;
    Target target_;
    Mode mode_;
    BudgetClock& clk_;
    OrderPrefix prefix_;
    bool skip_;
    std::optional<SearchState> state_;
    std::vector<SeedFact> seeds_;
    std::optional<LinearOrder> found_order_;
    std::optional<PrefRelation> found_relation_;
    long long leaves_ = 0, prunes_ = 0;
};

inline QuantResult quantified(const SetFamily& fam, const AxiomSet& axioms, Target target, const Budget& budget,
                              QuantSearch::Mode mode, const QuantOptions& opts) {
    if (axioms.empty()) throw std::invalid_argument("axiom set must be nonempty");
    if (target == Target::PARTIAL) {
        if (axioms.has(AxiomId::IND))
            throw std::invalid_argument(
                "partial-target decision with plain independence is trivial: the pointwise maxmin preorder "
                "(lift --method pmm) always satisfies dominance, independence and the extension rule");
        if (!partial_closure_supports(axioms))
            throw std::invalid_argument("partial-target closure supports only d, sd, setd, maxd, e, si");
    }

    PairGraph g(fam);
    BudgetClock clk(budget);
    auto t0 = std::chrono::steady_clock::now();
    int n = fam.ground_size();

    QuantResult out;
    int jobs = std::max(1, opts.jobs);
    if (jobs <= 1 || n <= 1) {
        QuantSearch qs(fam, g, axioms, target, mode, clk, opts.allow_reverse_skip);
        out = qs.run();
    } else {
        // fan out over the first placed element; lowest subtree index wins
        std::vector<std::optional<QuantResult>> results(n);
        std::atomic<int> next{0};
        std::atomic<int> best{n};
        auto worker = [&]() {
            for (;;) {
                int e = next.fetch_add(1);
                if (e >= n) return;
                if (e > best.load(std::memory_order_relaxed)) {
                    QuantResult skip_res;
                    skip_res.status = mode == QuantSearch::Mode::STRONG ? QuantStatus::HOLDS : QuantStatus::FAILS;
                    results[e] = std::move(skip_res);
                    continue;
                }
                QuantSearch qs(fam, g, axioms, target, mode, clk, opts.allow_reverse_skip);
                QuantResult r = qs.run(e);
                bool found = (mode == QuantSearch::Mode::STRONG && r.status == QuantStatus::FAILS) ||
                             (mode == QuantSearch::Mode::WEAK && r.status == QuantStatus::HOLDS);
                if (found) {
                    int cur = best.load();
                    while (e < cur && !best.compare_exchange_weak(cur, e)) {
                    }
                }
                results[e] = std::move(r);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < std::min(jobs, n); ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        // deterministic fold in subtree order
        out.status = mode == QuantSearch::Mode::STRONG ? QuantStatus::HOLDS : QuantStatus::FAILS;
        for (int e = 0; e < n; ++e) {
            const QuantResult& r = *results[e];
            if (r.status == QuantStatus::BUDGET) {
                out = r;
                break;
            }
            bool found = (mode == QuantSearch::Mode::STRONG && r.status == QuantStatus::FAILS) ||
                         (mode == QuantSearch::Mode::WEAK && r.status == QuantStatus::HOLDS);
            if (found) {
                out = r;
                break;
            }
        }
    }
    out.stats.nodes = clk.nodes();
    out.stats.propagations = clk.props();
    out.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

}  // namespace detail

/// Strong orderability: every base order admits a lifted order of the given
/// kind. FAILS reports the first counterexample order in lexicographic
/// sequence (orders whose reverse was already covered are skipped whenever
/// the axiom set is closed under inversion).
inline QuantResult decide_strong(const SetFamily& fam, const AxiomSet& axioms, Target target,
                                 const Budget& budget = Budget{}, const QuantOptions& opts = QuantOptions{}) {
    return detail::quantified(fam, axioms, target, budget, detail::QuantSearch::Mode::STRONG, opts);
}

/// Weak orderability: some base order admits a lifted order. HOLDS returns
/// the first witness (order, relation) pair, both verified.
inline QuantResult decide_weak(const SetFamily& fam, const AxiomSet& axioms, Target target,
                               const Budget& budget = Budget{}, const QuantOptions& opts = QuantOptions{}) {
    return detail::quantified(fam, axioms, target, budget, detail::QuantSearch::Mode::WEAK, opts);
}

}  // namespace setlift
