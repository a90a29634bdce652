"""Attractors and pure magnets of a monoid acting on a submonoid.

The acting monoid ``M`` and the target ``L`` (with ``L`` inside ``M``) are
finitely generated submonoids of one ambient group; a magnet is any
finitely generated submonoid ``N`` of that group.  The attractor of ``N``
is cut out by the monomial ideal spanned by ``L \\ (N n L)``, so only the
monoid ideal

    J_N = { t + s : t in L, s in L, s not in N }

matters.  If ``s = sum c_i g_i`` avoids ``N`` then some generator ``g_i``
with ``c_i > 0`` avoids ``N``, hence ``J_N`` is generated by the
generators of ``L`` outside ``N``.  That makes ideal membership a finite
number of monoid-membership tests.

Classification follows the reduction through the sharp quotient
``f: L -> L/L*``: a magnet missing a unit of ``L`` has empty attractor
(the class of the zero magnet); otherwise its class is determined by which
irreducible generators of ``L/L*`` it contains.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .ambient import GroupElement
from .errors import DimensionError, NotInMonoidError, ResourceLimitError
from .generators import minimal_generators
from .monoid import FgMonoid, SharpQuotient, ball, current_limits, normalize, zero_monoid


@dataclass(frozen=True)
class ActionSpec:
    """``acting`` acting on ``A(target)``; ``target`` must lie in ``acting``."""

    acting: FgMonoid
    target: FgMonoid

    def __post_init__(self):
        if self.acting.ambient != self.target.ambient:
            raise DimensionError(f"{self.acting.ambient} vs {self.target.ambient}")
        for g in self.target.gens:
            if not self.acting.contains(g):
                raise NotInMonoidError(f"target generator {g} is not in the acting monoid")

    @classmethod
    def self_action(cls, M: FgMonoid) -> ActionSpec:
        return cls(M, M)

    @property
    def self_action_flag(self) -> bool:
        return self.acting == self.target

    @property
    def ambient(self):
        return self.acting.ambient


@dataclass(frozen=True)
class MonoidIdealView:
    """The monoid ideal ``J_N`` of ``carrier`` with its elements in ``ball(carrier, bound)``."""

    spec: ActionSpec = field(repr=False)
    magnet: FgMonoid
    bound: int
    elements: frozenset[GroupElement]

    @property
    def carrier(self) -> FgMonoid:
        return self.spec.target

    def __contains__(self, m: GroupElement) -> bool:
        return ideal_membership(self.spec, self.magnet, m)

    def sorted_elements(self) -> list[GroupElement]:
        return sorted(self.elements, key=GroupElement.sort_key)


def _check_magnet(spec: ActionSpec, N: FgMonoid):
    if N.ambient != spec.ambient:
        raise DimensionError(f"magnet lives in {N.ambient}, action in {spec.ambient}")


def _outside_generators(spec: ActionSpec, N: FgMonoid) -> list[GroupElement]:
    return [g for g in spec.target.gens if not N.contains(g)]


def ideal_membership(spec: ActionSpec, N: FgMonoid, m: GroupElement) -> bool:
    """Whether ``m`` (an element of the target) lies in ``J_N``."""
    _check_magnet(spec, N)
    L = spec.target
    if not L.contains(m):
        raise NotInMonoidError(f"{m} is not in the target monoid {L}")
    outside = _outside_generators(spec, N)
    if any(u in outside for u in L.unit_generators()):
        # m = (m - u) + u and m - u is in L
        return True
    return any(L.contains(m - g) for g in outside)


def attractor_ideal(spec: ActionSpec, N: FgMonoid, D: int) -> MonoidIdealView:
    _check_magnet(spec, N)
    L = spec.target
    outside = _outside_generators(spec, N)
    elts = ball(L, D)
    if any(u in outside for u in L.unit_generators()):
        members = frozenset(elts)
    else:
        members = frozenset(m for m in elts if any(L.contains(m - g) for g in outside))
    return MonoidIdealView(spec, N, D, members)


def attractor_is_empty(spec: ActionSpec, N: FgMonoid) -> bool:
    """Empty attractor, i.e. ``J_N`` is the unit ideal, i.e. ``N`` misses a unit of the target."""
    _check_magnet(spec, N)
    return any(not N.contains(u) for u in spec.target.unit_generators())


def quotient_presentation(spec: ActionSpec, N: FgMonoid, D: int) -> list[GroupElement]:
    """Exponents ``m`` of the monomials ``X^m`` spanning ``Z[L]/J_N`` up to word length ``D``."""
    view = attractor_ideal(spec, N, D)
    return sorted(ball(spec.target, D) - view.elements, key=GroupElement.sort_key)


@dataclass(frozen=True)
class MagnetBasis:
    """Data shared by classification and enumeration for one target monoid."""

    quotient: SharpQuotient
    # irreducible generators of L/L*, by grade then lexicographic
    minimal: tuple[GroupElement, ...]
    # one generator of L above each of them
    lifts: tuple[GroupElement, ...]

    @property
    def target(self) -> FgMonoid:
        return self.quotient.source

    @property
    def sharp(self) -> bool:
        return not self.quotient.units.gens

    def magnet(self, subset) -> FgMonoid:
        """``[B>`` (sharp) or ``f^-1([B>)`` for ``B`` given by indices into ``minimal``."""
        L = self.target
        gens = list(self.quotient.units.gens) + [self.lifts[i] for i in sorted(subset)]
        return normalize(gens, ambient=L.ambient)


@lru_cache(maxsize=256)
def magnet_basis(L: FgMonoid) -> MagnetBasis:
    sq = L.sharp_quotient()
    E = minimal_generators(sq.image)
    return MagnetBasis(sq, E, tuple(sq.lift_of(e) for e in E))


def preimage(sq: SharpQuotient, P: FgMonoid) -> FgMonoid:
    """``f^-1(P)`` for a submonoid ``P`` of the sharp quotient image."""
    if P.ambient != sq.image.ambient:
        raise DimensionError(f"{P.ambient} is not the quotient group {sq.image.ambient}")
    M = sq.source
    lifts = []
    for p in P.gens:
        cert = sq.image.certificate(p)
        if cert is None:
            raise NotInMonoidError(f"{p} is not in the image monoid {sq.image}")
        x = M.ambient.zero()
        for c, idx in zip(cert.total(), sq.source_index):
            x = x + c * M.gens[idx]
        lifts.append(x)
    # any two lifts differ by a unit, and the units are included
    return normalize(list(sq.units.gens) + lifts, ambient=M.ambient)


def classify(spec: ActionSpec, N: FgMonoid) -> FgMonoid:
    """The pure magnet with the same attractor as ``N``."""
    _check_magnet(spec, N)
    L = spec.target
    if attractor_is_empty(spec, N):
        return zero_monoid(L.ambient)
    basis = magnet_basis(L)
    # N contains L*, so N n L is a union of f-fibres and one lift decides
    chosen = [i for i, e in enumerate(basis.lifts) if N.contains(e)]
    return basis.magnet(chosen)


def is_pure(spec: ActionSpec, N: FgMonoid) -> bool:
    return classify(spec, N).same_submonoid(N)


def attractor_equal(spec: ActionSpec, N: FgMonoid, N2: FgMonoid) -> bool:
    return classify(spec, N).same_submonoid(classify(spec, N2))


@dataclass(frozen=True)
class PureMagnet:
    """A pure magnet; ``subset`` indexes the minimal generators, None marks the extra zero magnet."""

    subset: frozenset[int] | None
    monoid: FgMonoid

    @property
    def is_zero(self) -> bool:
        return not self.monoid.gens


@dataclass(frozen=True)
class PureMagnetReport:
    spec: ActionSpec = field(repr=False)
    basis: MagnetBasis

    @property
    def sharp(self) -> bool:
        return self.basis.sharp

    @property
    def minimal_generators(self) -> tuple[GroupElement, ...]:
        return self.basis.minimal

    @property
    def cardinality(self) -> int:
        return 2 ** len(self.basis.minimal) + (0 if self.sharp else 1)

    def magnet_at(self, index: int) -> PureMagnet:
        """Magnet number ``index``; subsets follow the binary expansion of the index."""
        if not 0 <= index < self.cardinality:
            raise IndexError(index)
        L = self.basis.target
        if not self.sharp:
            if index == 0:
                return PureMagnet(None, zero_monoid(L.ambient))
            index -= 1
        subset = frozenset(i for i in range(len(self.basis.minimal)) if index >> i & 1)
        return PureMagnet(subset, self.basis.magnet(subset))

    def magnets(self, start: int = 0, stop: int | None = None) -> Iterator[PureMagnet]:
        """Lazily iterate magnets ``start..stop``; disjoint ranges may go to different threads."""
        if stop is None:
            bits = current_limits().enumeration_bits
            if len(self.basis.minimal) > bits:
                raise ResourceLimitError(
                    f"{self.cardinality} pure magnets; listing is capped at 2**{bits}"
                )
            stop = self.cardinality
        for i in range(start, stop):
            yield self.magnet_at(i)

    def __iter__(self):
        return self.magnets()


def pure_magnets(spec: ActionSpec) -> PureMagnetReport:
    # pure magnets only depend on the target: N and N n L have equal attractors
    return PureMagnetReport(spec, magnet_basis(spec.target))


def pure_magnet_count(spec: ActionSpec) -> int:
    return pure_magnets(spec).cardinality
