"""Minimal generating sets of sharp monoids."""

from __future__ import annotations

from typing import Iterable

from .ambient import GroupElement
from .errors import NotInMonoidError, NotSharpError
from .monoid import FgMonoid, graded_search, normalize, positive_grading


def minimal_generators(M: FgMonoid) -> tuple[GroupElement, ...]:
    """The irreducible generators of a sharp monoid, ordered by grade then lexicographically.

    In a sharp monoid a generator lies in the span of the others exactly
    when it is reducible, and dropping a reducible one does not change the
    monoid, so greedy removal ends at the same set whatever the order.
    """
    if not M.is_sharp():
        raise NotSharpError(
            f"{M} has units; pass sharp_quotient(M).image instead"
        )
    phi = positive_grading(M)
    keep = sorted(M.gens, key=lambda g: (phi(g), g.vector))
    for g in list(keep):
        rest = [h for h in keep if h != g]
        if graded_search(rest, phi, g) is not None:
            keep = rest
    return tuple(keep)


def is_minimal_generating(M: FgMonoid, E: Iterable[GroupElement]) -> bool:
    """Whether ``E`` generates ``M`` and no proper subset of it does.

    Works for any monoid, sharp or not (``{1, -1}`` is removal-minimal
    for Z, for instance).
    """
    E = list(dict.fromkeys(E))
    for e in E:
        if not M.contains(e):
            raise NotInMonoidError(f"{e} is not in {M}")
    if any(e.is_zero() for e in E):
        return False
    span = normalize(E, ambient=M.ambient)
    if not all(span.contains(g) for g in M.gens):
        return False
    for e in E:
        if normalize([h for h in E if h != e], ambient=M.ambient).contains(e):
            return False
    return True
