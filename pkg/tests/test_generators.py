import random
from itertools import combinations

import pytest

from magnetite import NotInMonoidError, NotSharpError, is_minimal_generating, minimal_generators, normalize
from magnetite.monoid import FgMonoid

from helpers import Z1, Z2, ints, mon, num, random_monoid, vecs


def test_naturals():
    assert ints(minimal_generators(num(1))) == [1]


def test_two_three():
    assert ints(minimal_generators(num(2, 3))) == [2, 3]


def test_three_rays_all_three():
    M = mon(Z2, [1, -1], [1, 0], [1, 1])
    assert vecs(minimal_generators(M)) == [(1, -1), (1, 0), (1, 1)]


def test_redundant_presentation():
    # 4 = 2+2 and 5 = 2+3
    assert ints(minimal_generators(num(2, 3, 4, 5))) == [2, 3]
    assert ints(minimal_generators(num(5, 4, 3, 2))) == [2, 3]


def test_output_sorted_by_grade():
    E = minimal_generators(num(7, 3, 5))
    assert [e.free[0] for e in E] == [3, 5, 7]


def test_zero_monoid():
    assert minimal_generators(FgMonoid(Z1, ())) == ()


def test_refuses_units():
    with pytest.raises(NotSharpError):
        minimal_generators(num(1, -1))


@pytest.mark.parametrize("k", [3, 4, 5, 8])
def test_odd_slope_family_is_minimal(k):
    M = mon(Z2, *[[j, 2 * j - 1] for j in range(1, k + 1)])
    assert len(minimal_generators(M)) == k


def brute_irreducibles(values, bound=60):
    """Gens of a numerical monoid not expressible from the others (checked by DP)."""
    out = []
    for g in values:
        others = [h for h in values if h != g]
        reach = {0}
        for x in range(1, g + 1):
            if any(x - h in reach for h in others):
                reach.add(x)
        if g not in reach:
            out.append(g)
    return sorted(set(out))


@pytest.mark.parametrize("seed", range(30))
def test_numerical_against_dp(seed):
    rng = random.Random(seed)
    values = sorted({rng.randint(1, 20) for _ in range(rng.randint(1, 6))})
    assert ints(minimal_generators(num(*values))) == brute_irreducibles(values)


def sharp_samples(n):
    rng = random.Random(7)
    out = []
    while len(out) < n:
        M = random_monoid(rng)
        out.append(M.sharp_quotient().image)
    return out


@pytest.mark.parametrize("M", sharp_samples(25))
def test_order_independent(M):
    rng = random.Random(1)
    base = set(minimal_generators(M))
    for _ in range(20):
        gens = list(M.gens)
        rng.shuffle(gens)
        assert set(minimal_generators(normalize(gens, ambient=M.ambient))) == base


@pytest.mark.parametrize("M", sharp_samples(25))
def test_regenerates_and_no_proper_subset_suffices(M):
    E = list(minimal_generators(M))
    span = normalize(E, ambient=M.ambient)
    assert all(span.contains(g) for g in M.gens)
    assert is_minimal_generating(M, E)
    # every proper subset B' of B misses some element of B
    for r in range(len(E) + 1):
        for B in combinations(E, r):
            for r2 in range(len(B)):
                for Bp in combinations(B, r2):
                    sub = normalize(Bp, ambient=M.ambient)
                    assert any(not sub.contains(b) for b in B if b not in Bp)


class TestIsMinimalGenerating:
    def test_naturals(self):
        assert is_minimal_generating(num(1), [Z1.element([1])])

    def test_integers_removal_minimal(self):
        assert is_minimal_generating(num(1, -1), [Z1.element([1]), Z1.element([-1])])

    def test_does_not_generate(self):
        assert not is_minimal_generating(num(2, 3), [Z1.element([2])])

    def test_redundant(self):
        assert not is_minimal_generating(num(2, 3), [Z1.element(v) for v in ([2], [3], [5])])

    def test_outside(self):
        with pytest.raises(NotInMonoidError):
            is_minimal_generating(num(2, 3), [Z1.element([1])])
