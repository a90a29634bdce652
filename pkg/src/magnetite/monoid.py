"""Finitely generated submonoids of an ambient group.

A monoid is given by a generator list inside some
:class:`~magnetite.ambient.AmbientGroup`.  Being a submonoid of a group it
is automatically cancellative.  The main operations are

* the face of units ``M*`` (decided by exact rational feasibility),
* the sharp quotient ``f: M -> M/M*``,
* a positive grading of a sharp monoid,
* exact membership with a recomputable certificate,
* word-length balls.

Membership reduces to the sharp quotient, where a positive grading bounds
the number of generators in any expression of the target.
"""

from __future__ import annotations

import contextlib
import contextvars
import os
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Iterable, Sequence

from .ambient import AmbientGroup, GroupElement, QuotientMap, quotient_by_subgroup, solve_in_subgroup
from .errors import (
    DimensionError,
    InvariantViolation,
    NotSharpError,
    ResourceLimitError,
)
from .feasibility import nonnegative_solution, solve_with_lower_bounds


@dataclass(frozen=True)
class Limits:
    ball_cap: int = 200_000
    coefficient_cap: int = 10**6
    # listing pure magnets stops above 2**enumeration_bits subsets
    enumeration_bits: int = 16


_limits: contextvars.ContextVar[Limits | None] = contextvars.ContextVar("magnetite_limits", default=None)


def current_limits() -> Limits:
    lim = _limits.get()
    if lim is not None:
        return lim
    env = os.environ.get("MAGNETITE_BALL_CAP")
    if env:
        return Limits(ball_cap=int(env))
    return Limits()


@contextlib.contextmanager
def limits(**overrides):
    """Temporarily override resource caps, e.g. ``with limits(ball_cap=10): ...``."""
    token = _limits.set(replace(current_limits(), **overrides))
    try:
        yield
    finally:
        _limits.reset(token)


@dataclass(frozen=True)
class FgMonoid:
    """The submonoid of ``ambient`` generated by ``gens``.

    Build instances with :func:`normalize`; the constructor only checks
    that the list is already normalized (no zero, no repeats).
    """

    ambient: AmbientGroup
    gens: tuple[GroupElement, ...] = ()
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        seen = set()
        for g in self.gens:
            if g.group != self.ambient:
                raise DimensionError(f"generator {g} is not in {self.ambient}")
            if g.is_zero() or g in seen:
                raise ValueError("generator list is not normalized; use normalize()")
            seen.add(g)

    @classmethod
    def from_vectors(cls, ambient: AmbientGroup, vectors: Iterable[Sequence[int]], name=None) -> FgMonoid:
        return normalize([ambient.element(v) for v in vectors], ambient=ambient, name=name)

    def __repr__(self):
        label = f"{self.name}=" if self.name else ""
        return f"{label}[{', '.join(map(str, self.gens))}> in {self.ambient}"

    # -- units -------------------------------------------------------------

    @cached_property
    def _unit_data(self) -> dict[int, tuple[int, ...]]:
        """Map each unit generator index to a zero-sum relation through it.

        A generator g_j is a unit iff some rational c >= 0 with c_j >= 1
        kills the free parts: clearing denominators gives an integer
        combination whose value is pure torsion, and multiplying by its
        order gives sum(c_i g_i) = 0 with c_j >= 1, i.e. -g_j is in M.
        """
        gens = self.gens
        k = len(gens)
        rank = self.ambient.rank
        units: dict[int, tuple[int, ...]] = {}
        A = [[g.free[r] for g in gens] for r in range(rank)]
        for j in range(k):
            if j in units:
                continue
            if not any(gens[j].free):
                rel = [0] * k
                rel[j] = _order(gens[j])
                units[j] = tuple(rel)
                continue
            lower = [0] * k
            lower[j] = 1
            sol = solve_with_lower_bounds(A, [0] * rank, lower)
            if sol is None:
                continue
            den = lcm(*(x.denominator for x in sol))
            c = [int(x * den) for x in sol]
            c = [ci * _order(_combine(self.ambient, gens, c)) for ci in c]
            rel = tuple(c)
            if not _combine(self.ambient, gens, rel).is_zero():
                raise InvariantViolation("unit relation does not vanish")
            for i, ci in enumerate(rel):
                if ci and i not in units:
                    units[i] = rel
        return dict(sorted(units.items()))

    def unit_generators(self) -> tuple[GroupElement, ...]:
        """Generators lying in the face of units M*."""
        return tuple(self.gens[j] for j in self._unit_data)

    def unit_relation(self, g: GroupElement) -> tuple[int, ...]:
        """Nonnegative coefficients summing to zero with a positive entry at ``g``."""
        return self._unit_data[self.gens.index(g)]

    def units_subgroup(self) -> FgMonoid:
        """M* presented as a monoid: unit generators together with their negatives."""
        us = self.unit_generators()
        return normalize(list(us) + [-u for u in us], ambient=self.ambient)

    def is_sharp(self) -> bool:
        return not self._unit_data

    @cached_property
    def _sharp_quotient(self) -> SharpQuotient:
        units = self.unit_generators()
        f = quotient_by_subgroup(self.ambient, units)
        image_gens: list[GroupElement] = []
        source_index: list[int] = []
        seen = {}
        for i, g in enumerate(self.gens):
            if i in self._unit_data:
                continue
            h = f(g)
            if h.is_zero():
                raise InvariantViolation(f"non-unit generator {g} maps to zero")
            if h not in seen:
                seen[h] = len(image_gens)
                image_gens.append(h)
                source_index.append(i)
        image = FgMonoid(f.target, tuple(image_gens))
        return SharpQuotient(self, f, self.units_subgroup(), image, tuple(source_index))

    def sharp_quotient(self) -> SharpQuotient:
        return self._sharp_quotient

    # -- membership --------------------------------------------------------

    def certificate(self, z: GroupElement) -> MembershipCertificate | None:
        """A certificate that ``z`` lies in the monoid, or None if it does not."""
        if z.group != self.ambient:
            raise DimensionError(f"{z} is not in {self.ambient}")
        sq = self.sharp_quotient()
        zbar = sq.map(z)
        cbar = graded_search(sq.image.gens, sq.grading, zbar)
        if cbar is None:
            return None
        k = len(self.gens)
        coeffs = [0] * k
        for idx, c in zip(sq.source_index, cbar):
            coeffs[idx] += c
        residual = z - _combine(self.ambient, self.gens, coeffs)
        unit_coeffs = [0] * k
        if not residual.is_zero():
            unit_idx = list(self._unit_data)
            x = solve_in_subgroup([self.gens[j] for j in unit_idx], residual)
            if x is None:
                raise InvariantViolation("residual of a lift is not in the unit group")
            for j, xj in zip(unit_idx, x):
                if xj >= 0:
                    unit_coeffs[j] += xj
                else:
                    # -g_j = (rel - e_j) . gens with rel >= 0
                    rel = self._unit_data[j]
                    for i in range(k):
                        unit_coeffs[i] += -xj * (rel[i] - (i == j))
        cert = MembershipCertificate(tuple(coeffs), residual, tuple(unit_coeffs))
        if not cert.verify(self, z):
            raise InvariantViolation(f"membership certificate for {z} does not recompute")
        return cert

    def contains(self, z: GroupElement) -> bool:
        return self.certificate(z) is not None

    def __contains__(self, z: GroupElement) -> bool:
        return self.contains(z)

    def is_submonoid_of(self, other: FgMonoid) -> bool:
        if other.ambient != self.ambient:
            raise DimensionError(f"{self.ambient} vs {other.ambient}")
        return all(other.contains(g) for g in self.gens)

    def same_submonoid(self, other: FgMonoid) -> bool:
        """Equality as subsets of the ambient group (presentations may differ)."""
        return self.is_submonoid_of(other) and other.is_submonoid_of(self)

    def ball(self, D: int) -> set[GroupElement]:
        return ball(self, D)


@dataclass(frozen=True)
class MembershipCertificate:
    """Witness ``z = sum(coefficients . gens) + unit_adjustment``.

    ``unit_coefficients`` writes the adjustment itself as a nonnegative
    combination of the generators, so the total is a plain expression of
    ``z`` in the generators.
    """

    coefficients: tuple[int, ...]
    unit_adjustment: GroupElement
    unit_coefficients: tuple[int, ...]

    def total(self) -> tuple[int, ...]:
        return tuple(a + b for a, b in zip(self.coefficients, self.unit_coefficients))

    def verify(self, M: FgMonoid, z: GroupElement) -> bool:
        if any(c < 0 for c in self.coefficients + self.unit_coefficients):
            return False
        main = _combine(M.ambient, M.gens, self.coefficients)
        adj = _combine(M.ambient, M.gens, self.unit_coefficients)
        return main + self.unit_adjustment == z and adj == self.unit_adjustment


@dataclass(frozen=True)
class Grading:
    """Rational linear functional on the free coordinates."""

    weights: tuple[Fraction, ...]

    def __call__(self, x: GroupElement) -> Fraction:
        return sum((w * a for w, a in zip(self.weights, x.free)), Fraction(0))

    def integral(self) -> tuple[tuple[int, ...], int]:
        """Integer weights ``w`` and ``den`` with ``w . x == den * phi(x)``."""
        den = lcm(1, *(w.denominator for w in self.weights))
        return tuple(int(w * den) for w in self.weights), den


@dataclass(frozen=True)
class SharpQuotient:
    """The projection ``f: M -> M/M*`` and its image monoid.

    ``source_index[i]`` is the index in ``source.gens`` of a generator
    whose image is ``image.gens[i]``; these serve as canonical lifts.
    """

    source: FgMonoid = field(repr=False)
    map: QuotientMap = field(repr=False)
    units: FgMonoid
    image: FgMonoid
    source_index: tuple[int, ...]

    @cached_property
    def grading(self) -> Grading:
        return positive_grading(self.image)

    def lift_of(self, image_gen: GroupElement) -> GroupElement:
        """The source generator chosen as lift of an image generator."""
        return self.source.gens[self.source_index[self.image.gens.index(image_gen)]]


def normalize(gens: Iterable[GroupElement], ambient: AmbientGroup | None = None, name=None) -> FgMonoid:
    """Drop zeros and repeats, keep first-occurrence order."""
    gens = list(gens)
    if ambient is None:
        if not gens:
            raise ValueError("ambient group is needed for an empty generator list")
        ambient = gens[0].group
    out: list[GroupElement] = []
    seen = set()
    for g in gens:
        if g.group != ambient:
            raise DimensionError(f"generator {g} lives in {g.group}, expected {ambient}")
        if g.is_zero() or g in seen:
            continue
        seen.add(g)
        out.append(g)
    return FgMonoid(ambient, tuple(out), name=name)


def zero_monoid(ambient: AmbientGroup) -> FgMonoid:
    return FgMonoid(ambient, ())


def unit_generators(M: FgMonoid) -> tuple[GroupElement, ...]:
    return M.unit_generators()


def units_subgroup(M: FgMonoid) -> FgMonoid:
    return M.units_subgroup()


def is_sharp(M: FgMonoid) -> bool:
    return M.is_sharp()


def sharp_quotient(M: FgMonoid) -> SharpQuotient:
    return M.sharp_quotient()


def contains(M: FgMonoid, z: GroupElement) -> bool:
    return M.contains(z)


def positive_grading(M: FgMonoid) -> Grading:
    """A rational functional with value >= 1 on every generator of a sharp monoid."""
    if not M.is_sharp():
        raise NotSharpError(f"{M} has units {M.unit_generators()}")
    r = M.ambient.rank
    if not M.gens:
        return Grading(tuple(Fraction(0) for _ in range(r)))
    k = len(M.gens)
    # phi = p - q, g.phi - s_g = 1, all of p, q, s >= 0
    A = []
    for i, g in enumerate(M.gens):
        row = list(g.free) + [-a for a in g.free] + [-(j == i) for j in range(k)]
        A.append(row)
    sol = nonnegative_solution(A, [1] * k)
    if sol is None:
        raise InvariantViolation(f"sharp monoid {M} admits no positive grading")
    phi = Grading(tuple(sol[i] - sol[r + i] for i in range(r)))
    if any(phi(g) < 1 for g in M.gens):
        raise InvariantViolation("grading LP returned a bad functional")
    return phi


def graded_search(gens: Sequence[GroupElement], phi: Grading, target: GroupElement) -> list[int] | None:
    """Nonnegative coefficients expressing ``target`` in ``gens``, or None.

    ``gens`` must generate a sharp monoid graded by ``phi`` (phi >= 1 on
    every generator), so any expression of ``target`` uses at most
    ``phi(target)`` generators and every partial remainder keeps a grade in
    ``[0, phi(target)]``.  Depth-first search over remainders, memoizing
    dead ones.
    """
    k = len(gens)
    if target.is_zero():
        return [0] * k
    if not gens:
        return None
    lim = current_limits()
    w, den = phi.integral()
    G = target.group
    r = G.rank
    mods = G.torsion
    vecs = [g.vector for g in gens]
    levels = [sum(a * b for a, b in zip(w, v[:r])) for v in vecs]
    low = min(levels)
    start = target.vector
    top = sum(a * b for a, b in zip(w, start[:r]))
    if top < low:
        return None
    if top // low > lim.coefficient_cap:
        raise ResourceLimitError(
            f"membership search needs up to {top // low} generators (cap {lim.coefficient_cap})"
        )
    zero = (0,) * len(start)
    parent: dict[tuple, tuple | None] = {start: None}
    stack = [(start, top)]
    while stack:
        cur, lv = stack.pop()
        for i, v in enumerate(vecs):
            nl = lv - levels[i]
            if nl < 0:
                continue
            nxt = tuple(a - b for a, b in zip(cur[:r], v[:r])) + tuple(
                (a - b) % d for a, b, d in zip(cur[r:], v[r:], mods)
            )
            if nxt == zero:
                coeffs = [0] * k
                coeffs[i] += 1
                node = cur
                while parent[node] is not None:
                    node, j = parent[node]
                    coeffs[j] += 1
                return coeffs
            if nl < low or nxt in parent:
                continue
            parent[nxt] = (cur, i)
            if len(parent) > lim.ball_cap:
                raise ResourceLimitError(f"membership search exceeded {lim.ball_cap} states")
            stack.append((nxt, nl))
    return None


def ball(M: FgMonoid, D: int) -> set[GroupElement]:
    """Elements that are sums of at most ``D`` generators."""
    if D < 0:
        raise ValueError("ball radius must be nonnegative")
    lim = current_limits()
    G = M.ambient
    frontier = {G.zero()}
    seen = set(frontier)
    for _ in range(D):
        nxt = set()
        for x in frontier:
            for g in M.gens:
                y = x + g
                if y not in seen:
                    seen.add(y)
                    nxt.add(y)
        if len(seen) > lim.ball_cap:
            raise ResourceLimitError(f"ball of radius {D} exceeds cap {lim.ball_cap}")
        if not nxt:
            break
        frontier = nxt
    return seen


def _combine(G: AmbientGroup, gens: Sequence[GroupElement], coeffs: Sequence[int]) -> GroupElement:
    out = G.zero()
    for c, g in zip(coeffs, gens):
        if c:
            out = out + c * g
    return out


def _order(x: GroupElement) -> int:
    """Order of a torsion element (its free part must vanish)."""
    if any(x.free):
        raise ValueError(f"{x} has infinite order")
    o = 1
    for t, d in zip(x.tors, x.group.torsion):
        o = lcm(o, d // gcd(t, d))
    return o
