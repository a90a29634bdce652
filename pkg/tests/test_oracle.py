import random

import pytest

from magnetite import ActionSpec, attractor_equal, classify, is_pure, zero_monoid
from magnetite.oracle import (
    attractor_classes_bruteforce,
    enumerate_submonoids,
    exact_degree,
    exactness_threshold,
    frobenius_bound,
    truncated_ideal,
    verify_theorem,
)

from helpers import Z1, Z2, ZxZ2, ints, mon, num, random_monoid

NAT = num(1)
S_NAT = ActionSpec.self_action(NAT)


def brute_frobenius(values):
    reach = {0}
    last = -1
    for x in range(1, 500):
        if any(x - v in reach for v in values):
            reach.add(x)
        else:
            last = x
    return last


class TestFrobenius:
    @pytest.mark.parametrize("values", [[2, 3], [3, 5], [3, 5, 7], [4, 6, 9], [5, 7]])
    def test_bound_is_safe(self, values):
        assert frobenius_bound(values) >= brute_frobenius(values)

    def test_two_three(self):
        assert frobenius_bound([2, 3]) == 1

    def test_gcd_scaling(self):
        # multiples of 2 missing from <4, 6> top out at 2
        assert frobenius_bound([4, 6]) >= 2

    def test_threshold(self):
        assert exactness_threshold(num(2, 3)) >= 4
        assert exact_degree(num(2, 3)) * 2 >= exactness_threshold(num(2, 3))


class TestEnumerate:
    def test_naturals_degree_three(self):
        subs = enumerate_submonoids(NAT, 3)
        assert sorted(tuple(ints(S.gens)) for S in subs) == sorted([(), (1,), (2,), (3,), (2, 3)])

    def test_integers_degree_one(self):
        assert len(enumerate_submonoids(num(1, -1), 1)) == 4

    def test_zero_monoid(self):
        subs = enumerate_submonoids(zero_monoid(Z1), 3)
        assert len(subs) == 1 and subs[0].gens == ()

    def test_all_inside(self):
        M = mon(ZxZ2, [0, 1], [2, 0], [3, 1])
        for S in enumerate_submonoids(M, 1):
            assert S.is_submonoid_of(M)


class TestBruteforcePartition:
    def test_two_three_joins_zero(self):
        part = attractor_classes_bruteforce(S_NAT, [zero_monoid(Z1), num(2, 3), NAT], 6)
        assert sorted(map(sorted, part.classes)) == [[0, 1], [2]]
        assert part.exact

    def test_naturals_listed_candidates(self):
        cands = [zero_monoid(Z1), num(2), num(3), num(2, 3), NAT]
        part = attractor_classes_bruteforce(S_NAT, cands, 8)
        assert sorted(map(sorted, part.classes)) == [[0, 1, 2, 3], [4]]

    def test_zxn_both_unit_ideal(self):
        L = mon(Z2, [1, 0], [-1, 0], [0, 1])
        part = attractor_classes_bruteforce(ActionSpec.self_action(L), [mon(Z2, [0, 1]), zero_monoid(Z2)], 4)
        assert part.classes == [[0, 1]]

    def test_target_alone(self):
        L = num(3, 5)
        part = attractor_classes_bruteforce(ActionSpec.self_action(L), [L], 5)
        assert part.classes == [[0]] and part.ideals == [[]]

    def test_ideals_reported(self):
        part = attractor_classes_bruteforce(S_NAT, [NAT, zero_monoid(Z1)], 4)
        assert sorted([v[0] for v in I] for I in part.ideals) == [[], [1, 2, 3, 4]]

    def test_truncated_ideal(self):
        assert [v[0] for v in truncated_ideal(ActionSpec.self_action(num(2, 3)), num(3), 4)] == [2, 4, 5, 6, 7, 8]


class TestVerifyTheorem:
    def test_naturals(self):
        rep = verify_theorem(S_NAT, 6)
        assert rep.matched and rep.exact
        assert len(set(rep.labels)) == 2

    def test_even_numbers(self):
        rep = verify_theorem(ActionSpec.self_action(num(2)), 8)
        assert rep.matched and rep.exact

    def test_two_three(self):
        rep = verify_theorem(ActionSpec.self_action(num(2, 3)), 8, candidate_degree=3)
        assert rep.matched and rep.exact
        assert len(set(rep.labels)) == 4

    def test_three_rays(self):
        rep = verify_theorem(ActionSpec.self_action(mon(Z2, [1, -1], [1, 0], [1, 1])), 6)
        assert rep.matched
        assert not rep.exact and "truncation" in rep.note

    def test_torsion_example(self):
        rep = verify_theorem(ActionSpec.self_action(mon(ZxZ2, [0, 1], [2, 0], [3, 1])), 3)
        assert rep.matched and rep.predicted_count == 5

    def test_zxn(self):
        rep = verify_theorem(ActionSpec.self_action(mon(Z2, [1, 0], [-1, 0], [0, 1])), 3)
        assert rep.matched

    @pytest.mark.parametrize("d", [2, 3, 5])
    def test_naturals_acting_on_multiples(self, d):
        rep = verify_theorem(ActionSpec(NAT, num(d)), 4 * d, candidate_degree=d)
        assert rep.matched and rep.exact
        got = sorted(tuple(ints(m.gens)) for m in rep.class_minima)
        assert got == [(), (d,)]

    def test_seed_does_not_change_verdict(self):
        spec = ActionSpec.self_action(num(3, 5))
        reps = [verify_theorem(spec, exact_degree(num(3, 5)), candidate_degree=2, seed=s) for s in (None, 1, 2, 3)]
        assert {r.verdict for r in reps} == {"match"}
        assert len({len(set(r.labels)) for r in reps}) == 1


def small_cases(n, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        M = random_monoid(rng, max_rank=2, max_gens=3)
        out.append(M)
    return out


@pytest.mark.parametrize("M", small_cases(20, 5))
def test_random_verdicts(M):
    rep = verify_theorem(ActionSpec.self_action(M), 2)
    assert rep.matched, rep.witness


@pytest.mark.parametrize("M", small_cases(15, 6))
def test_minima_are_pure_and_classify_finds_them(M):
    spec = ActionSpec.self_action(M)
    if any(sum(M.unit_relation(u)) > 4 for u in M.unit_generators()):
        pytest.skip("unit relations longer than the truncation window")
    rep = verify_theorem(spec, 2)
    for c, low in enumerate(rep.class_minima):
        assert low is not None
        assert is_pure(spec, low)
    for N, c in zip(rep.candidates, rep.labels):
        assert classify(spec, N).same_submonoid(rep.class_minima[c])


@pytest.mark.parametrize("values", [(1,), (2, 3), (3, 5), (2, 5, 7), (4, 6)])
def test_engine_agrees_on_pairs(values):
    L = num(*values)
    spec = ActionSpec.self_action(L)
    D = exact_degree(L)
    rep = verify_theorem(spec, D, candidate_degree=2)
    assert rep.exact
    for i, N in enumerate(rep.candidates):
        for j, N2 in enumerate(rep.candidates):
            assert attractor_equal(spec, N, N2) == (rep.labels[i] == rep.labels[j])
