"""Brute-force cross-check of the pure-magnet classification.

Nothing here calls the engine's membership or ideal code.  Monoids are
explored by plain breadth-first closure inside finite windows, attractor
ideals are computed straight from their definition (``t + s`` with ``s``
outside the magnet) and candidate magnets are grouped by equal truncated
ideals.  The results are therefore only sound up to the truncation bound;
for submonoids of N with a large enough bound the comparison is exact and
the report says so.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .ambient import GroupElement
from .errors import ResourceLimitError
from .magnets import ActionSpec, pure_magnets
from .monoid import FgMonoid, current_limits

Vec = tuple[int, ...]


def _is_positive_1d(gens: Iterable[GroupElement]) -> bool:
    gens = list(gens)
    return all(g.group.rank == 1 and not g.group.torsion and g.free[0] > 0 for g in gens)


def is_numerical(M: FgMonoid) -> bool:
    return bool(M.gens) and M.ambient.rank == 1 and not M.ambient.torsion and _is_positive_1d(M.gens)


def frobenius_bound(values: Sequence[int]) -> int:
    """Upper bound for the largest multiple of gcd(values) missing from the monoid they generate."""
    if not values:
        return 0
    g = 0
    for v in values:
        g = gcd(g, v)
    red = sorted(v // g for v in values)
    if red[0] == 1:
        return 0
    pair_bounds = [a * b - a - b for a, b in combinations(red, 2) if gcd(a, b) == 1]
    f = max(pair_bounds) if pair_bounds else (red[0] - 1) * (red[-1] - 1) - 1
    return g * max(f, 0)


def exactness_threshold(L: FgMonoid) -> int:
    vals = [g.free[0] for g in L.gens]
    return (max(vals) if vals else 0) + frobenius_bound(vals)


def exact_degree(L: FgMonoid) -> int:
    """Smallest truncation bound for which the numerical comparison is exact."""
    vals = [g.free[0] for g in L.gens]
    if not vals:
        return 0
    low = min(vals)
    return -(-exactness_threshold(L) // low)


def _closure(group, gens: Sequence[Vec], depth: int, top: int | None = None) -> set[Vec]:
    """Sums of at most ``depth`` of ``gens``; with ``top``, values above it are pruned (positive 1-D only)."""
    mods = group.torsion
    r = group.rank
    zero = (0,) * group.dim
    seen = {zero}
    frontier = [zero]
    cap = current_limits().ball_cap
    for _ in range(depth):
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(a + b for a, b in zip(x[:r], g[:r])) + tuple(
                    (a + b) % d for a, b, d in zip(x[r:], g[r:], mods)
                )
                if top is not None and y[0] > top:
                    continue
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if len(seen) > cap:
            raise ResourceLimitError(f"oracle closure exceeds cap {cap}")
        if not nxt:
            break
        frontier = nxt
    return seen


@dataclass
class _Members:
    """Brute-force membership of a monoid, restricted to a finite test set."""

    exact: bool
    elements: set[Vec]

    @classmethod
    def build(cls, M: FgMonoid, test: Iterable[Vec], depth: int) -> _Members:
        test = list(test)
        vecs = [g.vector for g in M.gens]
        G = M.ambient
        if G.rank == 1 and not G.torsion and _is_positive_1d(M.gens) and all(t[0] >= 0 for t in test):
            top = max((t[0] for t in test), default=0)
            # generators are >= 1, so a word for x has at most x letters
            return cls(True, _closure(M.ambient, vecs, top, top=top))
        return cls(False, _closure(M.ambient, vecs, depth))

    def __contains__(self, v: Vec) -> bool:
        return v in self.elements


@dataclass
class Window:
    """Finite part of the target monoid on which ideals are compared."""

    bound: int
    elements: list[Vec]
    exact: bool
    # multiples[i]: bitmask of j with elements[j] - elements[i] in the target
    multiples: list[int] = field(repr=False)

    @classmethod
    def build(cls, L: FgMonoid, D: int) -> Window:
        G = L.ambient
        if is_numerical(L):
            top = D * min(g.free[0] for g in L.gens)
            lmembers = _closure(G, [g.vector for g in L.gens], top, top=top)
            elements = sorted(lmembers)
            exact = top >= exactness_threshold(L)
        else:
            elements = sorted(_closure(G, [g.vector for g in L.gens], D))
            lmembers = _closure(G, [g.vector for g in L.gens], 2 * D)
            exact = not L.gens
        r = G.rank
        mods = G.torsion
        multiples = []
        for s in elements:
            mask = 0
            for j, m in enumerate(elements):
                diff = tuple(a - b for a, b in zip(m[:r], s[:r])) + tuple(
                    (a - b) % d for a, b, d in zip(m[r:], s[r:], mods)
                )
                if diff in lmembers:
                    mask |= 1 << j
            multiples.append(mask)
        return cls(D, elements, exact, multiples)

    def ideal_mask(self, members: _Members) -> int:
        mask = 0
        for i, s in enumerate(self.elements):
            if s not in members:
                mask |= self.multiples[i]
        return mask

    def decode(self, mask: int) -> list[Vec]:
        return [v for j, v in enumerate(self.elements) if mask >> j & 1]


def truncated_ideal(spec: ActionSpec, N: FgMonoid, D: int) -> list[Vec]:
    """Brute-force ``J_N`` inside the oracle window of bound ``D``."""
    win = Window.build(spec.target, D)
    return win.decode(win.ideal_mask(_Members.build(N, win.elements, 2 * D)))


def _signature_window(M: FgMonoid, D: int, extra: Iterable[Vec] = ()) -> list[Vec]:
    return sorted(_closure(M.ambient, [g.vector for g in M.gens], 2 * D) | set(extra))


def _signature(N: FgMonoid, window: Sequence[Vec], depth: int) -> frozenset[Vec]:
    members = _Members.build(N, window, depth)
    return frozenset(v for v in window if v in members)


def _enumerate(M: FgMonoid, D: int, window: Sequence[Vec], cap: int | None, depth: int | None = None):
    G = M.ambient
    pool = sorted(_closure(G, [g.vector for g in M.gens], D) - {(0,) * G.dim})
    depth = 2 * D if depth is None else depth
    found: dict[frozenset, FgMonoid] = {}
    cap = cap if cap is not None else current_limits().ball_cap

    start = _signature(FgMonoid(G, ()), window, depth)
    found[start] = FgMonoid(G, ())
    queue = deque([start])
    # every monoid generated by a subset of the pool is reached by adding
    # pool elements one at a time, so closing the found set under that
    # step is complete
    while queue:
        sig = queue.popleft()
        base = found[sig]
        for v in pool:
            if v in sig:
                continue
            nxt = FgMonoid(G, base.gens + (G.element(v),))
            nsig = _signature(nxt, window, depth)
            if nsig in found:
                continue
            found[nsig] = nxt
            if len(found) > cap:
                raise ResourceLimitError(f"more than {cap} candidate submonoids")
            queue.append(nsig)
    return found


def enumerate_submonoids(M: FgMonoid, D: int, cap: int | None = None) -> list[FgMonoid]:
    """Distinct submonoids generated by subsets of ``ball(M, D)``.

    Two subsets are identified when they have the same members in
    ``ball(M, 2D)``.
    """
    window = _signature_window(M, D)
    return list(_enumerate(M, D, window, cap).values())


@dataclass
class Partition:
    bound: int
    exact: bool
    classes: list[list[int]]
    ideals: list[list[Vec]]
    note: str = "sound only up to the truncation bound"


def attractor_classes_bruteforce(spec: ActionSpec, candidates: Sequence[FgMonoid], D: int) -> Partition:
    """Group candidates by equality of their truncated attractor ideals."""
    win = Window.build(spec.target, D)
    groups: dict[int, list[int]] = {}
    exact = win.exact
    for idx, N in enumerate(candidates):
        members = _Members.build(N, win.elements, 2 * D)
        exact = exact and members.exact
        groups.setdefault(win.ideal_mask(members), []).append(idx)
    masks = list(groups)
    return Partition(D, exact, [groups[m] for m in masks], [win.decode(m) for m in masks])


@dataclass
class OracleReport:
    bound: int
    candidate_degree: int
    exact: bool
    candidates: list[FgMonoid]
    labels: list[int]
    class_minima: list[FgMonoid | None]
    predicted: list[FgMonoid]
    predicted_count: int
    verdict: str
    witness: str | None = None
    note: str = "sound only up to the truncation bound"

    @property
    def matched(self) -> bool:
        return self.verdict == "match"


def verify_theorem(
    spec: ActionSpec,
    D: int,
    candidate_degree: int = 1,
    cap: int | None = None,
    seed: int | None = None,
) -> OracleReport:
    """Compare the predicted pure magnets with a brute-force partition of small magnets.

    Candidates are the submonoids generated by subsets of
    ``ball(acting, candidate_degree)`` plus the predicted pure magnets.
    ``seed`` shuffles the order in which candidates are processed; the
    verdict must not depend on it.
    """
    M = spec.acting
    G = M.ambient
    report = pure_magnets(spec)
    predicted = [pm.monoid for pm in report.magnets()]
    extra = {g.vector for P in predicted for g in P.gens}
    window = _signature_window(M, candidate_degree, extra)
    depth = 2 * max(candidate_degree, D)
    found = _enumerate(M, candidate_degree, window, cap, depth)
    candidates = list(found.values())
    sigs = list(found)
    predicted_idx = []
    for P in predicted:
        s = _signature(P, window, depth)
        if s in found:
            predicted_idx.append(sigs.index(s))
        else:
            found[s] = P
            sigs.append(s)
            candidates.append(P)
            predicted_idx.append(len(candidates) - 1)
    if seed is not None:
        perm = list(range(len(candidates)))
        random.Random(seed).shuffle(perm)
        where = {old: new for new, old in enumerate(perm)}
        candidates = [candidates[i] for i in perm]
        sigs = [sigs[i] for i in perm]
        predicted_idx = [where[i] for i in predicted_idx]

    part = attractor_classes_bruteforce(spec, candidates, D)
    labels = [0] * len(candidates)
    for c, members in enumerate(part.classes):
        for i in members:
            labels[i] = c

    def contained(i: int, j: int) -> bool:
        return all(g.vector in sigs[j] for g in candidates[i].gens)

    minima: list[FgMonoid | None] = []
    for members in part.classes:
        low = [i for i in members if all(contained(i, j) for j in members)]
        minima.append(candidates[low[0]] if low else None)

    witness = None
    pred_classes = [labels[i] for i in predicted_idx]
    for P, i, c in zip(predicted, predicted_idx, pred_classes):
        bad = next((j for j in part.classes[c] if not contained(i, j)), None)
        if bad is not None:
            witness = f"predicted {P!r} is not below class member {candidates[bad]!r}"
            break
    if witness is None and len(set(pred_classes)) != len(pred_classes):
        witness = "two predicted pure magnets share an attractor class"
    if witness is None:
        lonely = next((c for c in range(len(part.classes)) if c not in pred_classes), None)
        if lonely is not None:
            witness = f"class of {candidates[part.classes[lonely][0]]!r} has no predicted representative"
    if witness is None and len(part.classes) != report.cardinality:
        witness = f"{len(part.classes)} classes but {report.cardinality} predicted"

    return OracleReport(
        bound=D,
        candidate_degree=candidate_degree,
        exact=part.exact,
        candidates=candidates,
        labels=labels,
        class_minima=minima,
        predicted=predicted,
        predicted_count=report.cardinality,
        verdict="match" if witness is None else "mismatch",
        witness=witness,
        note="conclusive: the bound is past the exactness threshold" if part.exact else OracleReport.note,
    )
