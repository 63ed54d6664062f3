#include <doctest.h>

#include "oracle.hpp"

using namespace setlift;
using oracle::family_of;
using oracle::mask_of;
using oracle::powerset_family;

namespace {
const std::vector<std::vector<int>> kToySets = {{2}, {4}, {2, 4}, {3, 4}, {1, 2, 4}, {1, 4}};
}

TEST_CASE("partial target: Barbera–Pattanaik UNSAT on the 3-element powerset") {
    SetFamily fam = powerset_family(3);
    SolveResult res = decide_orderable(fam, LinearOrder::natural(3), {AxiomId::DOM, AxiomId::STRICT_IND},
                                       Target::PARTIAL);
    CHECK(res.status == SolveStatus::UNSAT);
    CHECK(res.trace.has_value());
}

TEST_CASE("toy family admits a linear order under all four main axioms") {
    SetFamily fam = family_of(4, kToySets);
    LinearOrder nat = LinearOrder::natural(4);
    AxiomSet ax{AxiomId::DOM, AxiomId::STRICT_IND, AxiomId::IND, AxiomId::EXT};
    SolveResult res = decide_orderable(fam, nat, ax, Target::LINEAR);
    REQUIRE(res.status == SolveStatus::SAT);
    CHECK(satisfies_all(ax, fam, nat, *res.witness));
}

TEST_CASE("two-element tightness: the forced chain {1} < {1,2} < {2}") {
    SetFamily fam = powerset_family(2);
    AxiomSet ax{AxiomId::DOM, AxiomId::STRICT_IND, AxiomId::EXT};
    SolveResult res = decide_orderable(fam, LinearOrder::natural(2), ax, Target::LINEAR);
    REQUIRE(res.status == SolveStatus::SAT);
    int i1 = fam.index_of(mask_of(2, {1})), i12 = fam.index_of(mask_of(2, {1, 2})), i2 = fam.index_of(mask_of(2, {2}));
    CHECK(res.witness->cell(i1, i12) == Cell::LT);
    CHECK(res.witness->cell(i12, i2) == Cell::LT);
    CHECK(satisfies_all(ax, fam, LinearOrder::natural(2), *res.witness));
}

TEST_CASE("powerset of 3 minus {3}: SAT under the natural order, UNSAT under 1<3<2") {
    SetFamily fam = powerset_family(3, {{3}});
    AxiomSet ax{AxiomId::DOM, AxiomId::STRICT_IND};
    SolveResult nat = decide_orderable(fam, LinearOrder::natural(3), ax, Target::LINEAR);
    CHECK(nat.status == SolveStatus::SAT);
    SolveResult prime = decide_orderable(fam, parse_order("order 1 3 2\n"), ax, Target::LINEAR);
    CHECK(prime.status == SolveStatus::UNSAT);
}

TEST_CASE("oracle equivalence on sampled small instances") {
    std::mt19937 rng(71);
    std::vector<AxiomSet> axiom_sets = {
        {AxiomId::DOM},
        {AxiomId::IND},
        {AxiomId::STRICT_IND},
        {AxiomId::EXT},
        {AxiomId::DOM, AxiomId::IND},
        {AxiomId::DOM, AxiomId::STRICT_IND},
        {AxiomId::DOM, AxiomId::EXT},
        {AxiomId::IND, AxiomId::EXT},
        {AxiomId::STRICT_IND, AxiomId::EXT},
        {AxiomId::DOM, AxiomId::IND, AxiomId::EXT},
        {AxiomId::DOM, AxiomId::STRICT_IND, AxiomId::EXT},
        {AxiomId::DOM, AxiomId::IND, AxiomId::STRICT_IND, AxiomId::EXT},
    };
    int samples = 0, disagreements = 0;
    while (samples < 1000) {
        int n = 2 + int(rng() % 3);  // n ≤ 4
        SetFamily fam = oracle::random_family(rng, n, 5);
        LinearOrder ord = oracle::random_order(rng, n);
        const AxiomSet& ax = axiom_sets[samples % axiom_sets.size()];
        Target target = samples % 2 ? Target::LINEAR : Target::WEAK;
        ++samples;

        SolveResult got = decide_orderable(fam, ord, ax, target);
        REQUIRE(got.status != SolveStatus::BUDGET);
        auto expect = oracle::brute_force_orderable(fam, ord, ax, target);
        if ((got.status == SolveStatus::SAT) != expect.has_value()) ++disagreements;
        if (got.status == SolveStatus::SAT) {
            CHECK(satisfies_all(ax, fam, ord, *got.witness));
            if (target == Target::LINEAR) CHECK(got.witness->kind() == RelKind::LINEAR);
        }
    }
    CHECK(samples == 1000);
    CHECK(disagreements == 0);
}

TEST_CASE("monotone hardness: adding axioms never turns UNSAT into SAT") {
    std::mt19937 rng(73);
    int unsat_seen = 0;
    for (int it = 0; it < 200; ++it) {
        SetFamily full = powerset_family(3);
        std::vector<int> sel;
        for (int i = 0; i < full.size(); ++i)
            if (rng() % 8 != 0) sel.push_back(i);
        if (sel.empty()) continue;
        SetFamily fam = subfamily(full, sel);
        LinearOrder ord = oracle::random_order(rng, 3);
        Target target = it % 2 ? Target::LINEAR : Target::WEAK;
        AxiomSet base{AxiomId::DOM, AxiomId::STRICT_IND};
        SolveResult r1 = decide_orderable(fam, ord, base, target);
        if (r1.status != SolveStatus::UNSAT) continue;
        ++unsat_seen;
        AxiomSet more{AxiomId::DOM, AxiomId::STRICT_IND, AxiomId::EXT, AxiomId::IND};
        CHECK(decide_orderable(fam, ord, more, target).status == SolveStatus::UNSAT);
    }
    CHECK(unsat_seen > 5);
}

TEST_CASE("budget exhaustion reports BUDGET, never UNSAT") {
    SetFamily fam = powerset_family(4);
    Budget tiny;
    tiny.node_limit = 3;
    SolveResult res = decide_orderable(fam, LinearOrder::natural(4), {AxiomId::DOM, AxiomId::IND}, Target::WEAK,
                                       tiny);
    CHECK(res.status == SolveStatus::BUDGET);
}

TEST_CASE("decide_strong on powerset-of-3 minus {3}: strict independence fails at 1<3<2") {
    SetFamily fam = powerset_family(3, {{3}});
    QuantResult res = decide_strong(fam, {AxiomId::DOM, AxiomId::STRICT_IND}, Target::WEAK);
    REQUIRE(res.status == QuantStatus::FAILS);
    REQUIRE(res.counterexample_order.has_value());
    CHECK(res.counterexample_order->ascending() == std::vector<int>{0, 2, 1});
    // the counterexample really is UNSAT
    CHECK(decide_orderable(fam, *res.counterexample_order, {AxiomId::DOM, AxiomId::STRICT_IND}, Target::WEAK)
              .status == SolveStatus::UNSAT);
}

TEST_CASE("decide_strong with dominance, independence and extension HOLDS on the same family") {
    SetFamily fam = powerset_family(3, {{3}});
    QuantResult res = decide_strong(fam, {AxiomId::DOM, AxiomId::IND, AxiomId::EXT}, Target::WEAK);
    CHECK(res.status == QuantStatus::HOLDS);
}

TEST_CASE("decide_strong on the two-element powerset HOLDS for linear targets") {
    SetFamily fam = powerset_family(2);
    QuantResult res = decide_strong(fam, {AxiomId::DOM, AxiomId::STRICT_IND, AxiomId::EXT}, Target::LINEAR);
    CHECK(res.status == QuantStatus::HOLDS);
}

TEST_CASE("decide_weak on gadget A holds with the forbidden element at an extreme") {
    SetFamily fam((Universe(3)));
    for (const Mask& s : gadget_a(0, 1, 2, 3)) fam.add(s);
    QuantResult res = decide_weak(fam, {AxiomId::DOM, AxiomId::STRICT_IND}, Target::WEAK);
    REQUIRE(res.status == QuantStatus::HOLDS);
    REQUIRE(res.witness_order.has_value());
    // element 1 (index 0) must not sit in the middle
    CHECK(res.witness_order->rank(0) != 1);
    CHECK(satisfies_all({AxiomId::DOM, AxiomId::STRICT_IND}, fam, *res.witness_order, *res.witness_relation));
    // brute force agreement over all 6 base orders
    bool any = false;
    std::vector<int> perm = {0, 1, 2};
    do {
        LinearOrder ord = LinearOrder::from_ascending(std::vector<int>(perm));
        any = any ||
              oracle::brute_force_orderable(fam, ord, {AxiomId::DOM, AxiomId::STRICT_IND}, Target::WEAK).has_value();
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(any);
}

TEST_CASE("decide_weak FAILS for partial targets on the full 3-powerset") {
    SetFamily fam = powerset_family(3);
    QuantResult res = decide_weak(fam, {AxiomId::DOM, AxiomId::STRICT_IND}, Target::PARTIAL);
    CHECK(res.status == QuantStatus::FAILS);
}

TEST_CASE("decide_weak finds the natural order for the toy family") {
    SetFamily fam = family_of(4, kToySets);
    QuantResult res = decide_weak(fam, {AxiomId::DOM, AxiomId::STRICT_IND, AxiomId::EXT}, Target::LINEAR);
    REQUIRE(res.status == QuantStatus::HOLDS);
    CHECK(res.witness_order->ascending() == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("quantified modes agree with plain enumeration over all base orders") {
    // reference route: explicit lexicographic enumeration with the reverse
    // skip, one fresh full solve per order
    std::mt19937 rng(101);
    for (int it = 0; it < 60; ++it) {
        int n = 2 + int(rng() % 2);  // 2 or 6 orders
        SetFamily fam = oracle::random_family(rng, n, 6);
        AxiomSet ax = it % 2 ? AxiomSet{AxiomId::DOM, AxiomId::STRICT_IND}
                             : AxiomSet{AxiomId::DOM, AxiomId::IND, AxiomId::EXT};
        Target t = it % 3 == 0 ? Target::LINEAR : Target::WEAK;

        std::optional<LinearOrder> first_unsat, first_sat;
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        do {
            if (n > 1 && !(perm.front() < perm.back())) continue;  // reverse already covered
            LinearOrder ord = LinearOrder::from_ascending(std::vector<int>(perm));
            SolveStatus s = decide_orderable(fam, ord, ax, t).status;
            if (s == SolveStatus::UNSAT && !first_unsat) first_unsat = ord;
            if (s == SolveStatus::SAT && !first_sat) first_sat = ord;
        } while (std::next_permutation(perm.begin(), perm.end()));

        QuantResult strong = decide_strong(fam, ax, t);
        CHECK((strong.status == QuantStatus::FAILS) == first_unsat.has_value());
        if (first_unsat && strong.counterexample_order)
            CHECK(strong.counterexample_order->ascending() == first_unsat->ascending());

        QuantResult weak = decide_weak(fam, ax, t);
        CHECK((weak.status == QuantStatus::HOLDS) == first_sat.has_value());
        if (first_sat && weak.witness_order)
            CHECK(weak.witness_order->ascending() == first_sat->ascending());
    }
}

TEST_CASE("reverse-skip soundness: identical verdicts with the skip disabled") {
    std::mt19937 rng(79);
    QuantOptions with_skip, without_skip;
    without_skip.allow_reverse_skip = false;
    for (int it = 0; it < 200; ++it) {
        int n = 2 + int(rng() % 3);
        SetFamily fam = oracle::random_family(rng, n, 6);
        AxiomSet ax = it % 2 ? AxiomSet{AxiomId::DOM, AxiomId::STRICT_IND}
                             : AxiomSet{AxiomId::DOM, AxiomId::IND, AxiomId::EXT};
        Target t = it % 3 == 0 ? Target::LINEAR : Target::WEAK;
        QuantResult a = decide_strong(fam, ax, t, Budget{}, with_skip);
        QuantResult b = decide_strong(fam, ax, t, Budget{}, without_skip);
        CHECK(a.status == b.status);
        QuantResult c = decide_weak(fam, ax, t, Budget{}, with_skip);
        QuantResult d = decide_weak(fam, ax, t, Budget{}, without_skip);
        CHECK(c.status == d.status);
    }
}

TEST_CASE("quantified modes agree under parallel fan-out") {
    std::mt19937 rng(83);
    QuantOptions par;
    par.jobs = 2;
    for (int it = 0; it < 40; ++it) {
        int n = 2 + int(rng() % 3);
        SetFamily fam = oracle::random_family(rng, n, 6);
        AxiomSet ax{AxiomId::DOM, AxiomId::STRICT_IND};
        QuantResult seq = decide_strong(fam, ax, Target::WEAK);
        QuantResult fan = decide_strong(fam, ax, Target::WEAK, Budget{}, par);
        CHECK(seq.status == fan.status);
        if (seq.counterexample_order && fan.counterexample_order)
            CHECK(seq.counterexample_order->ascending() == fan.counterexample_order->ascending());
    }
}

TEST_CASE("quantified budget reports progress") {
    SetFamily fam = powerset_family(4);
    Budget tiny;
    tiny.node_limit = 2;
    QuantResult res = decide_strong(fam, {AxiomId::DOM, AxiomId::IND}, Target::WEAK, tiny);
    CHECK(res.status == QuantStatus::BUDGET);
    CHECK(!res.progress.empty());
}

TEST_CASE("rejects empty axiom sets and unsupported partial-target sets") {
    SetFamily fam = powerset_family(2);
    CHECK_THROWS_AS(decide_orderable(fam, LinearOrder::natural(2), AxiomSet{}, Target::WEAK),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        decide_orderable(fam, LinearOrder::natural(2), {AxiomId::REV_IND}, Target::PARTIAL),
        std::invalid_argument);
}

TEST_CASE("oracle equivalence holds on medium families too") {
    // exactly 7 sets over 4 or 5 elements: 47293 weak orders per brute force
    std::mt19937 rng(89);
    for (int it = 0; it < 40; ++it) {
        int n = 4 + int(rng() % 2);
        std::vector<int> all((1 << n) - 1);
        for (size_t b = 0; b < all.size(); ++b) all[b] = int(b) + 1;
        std::shuffle(all.begin(), all.end(), rng);
        SetFamily fam((Universe(n)));
        for (int k = 0; k < 7; ++k) {
            Mask m(n);
            for (int e = 0; e < n; ++e)
                if ((all[k] >> e) & 1) m.set(e);
            fam.add(m);
        }
        LinearOrder ord = oracle::random_order(rng, n);
        AxiomSet ax = it % 2 ? AxiomSet{AxiomId::DOM, AxiomId::STRICT_IND}
                             : AxiomSet{AxiomId::DOM, AxiomId::IND, AxiomId::EXT};
        SolveResult got = decide_orderable(fam, ord, ax, Target::WEAK);
        REQUIRE(got.status != SolveStatus::BUDGET);
        auto expect = oracle::brute_force_orderable(fam, ord, ax, Target::WEAK);
        CHECK((got.status == SolveStatus::SAT) == expect.has_value());
    }
}

TEST_CASE("weak target, four elements: dominance + independence is satisfiable") {
    SetFamily fam = powerset_family(4);
    SolveResult res = decide_orderable(fam, LinearOrder::natural(4), {AxiomId::DOM, AxiomId::IND}, Target::WEAK);
    REQUIRE(res.status == SolveStatus::SAT);
    CHECK(satisfies_all({AxiomId::DOM, AxiomId::IND}, fam, LinearOrder::natural(4), *res.witness));
}
