"""Exact arithmetic in ambient groups Z^r x Z/d_1 x ... x Z/d_k.

Elements are stored with reduced torsion residues so that equality and
hashing are structural.  Quotients by finitely generated subgroups are
computed through the Smith normal form of the relation matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DimensionError, InvariantViolation

Matrix = list[list[int]]

# Tests switch this on so that every SNF call re-multiplies U*A*V.
VERIFY_SNF = False


@dataclass(frozen=True)
class AmbientGroup:
    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.rank < 0:
            raise ValueError(f"rank must be nonnegative, got {self.rank}")
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"torsion orders must be >= 2, got {d}")

    @property
    def dim(self) -> int:
        """Length of the flat coordinate vector (free then torsion)."""
        return self.rank + len(self.torsion)

    @property
    def exponent(self) -> int:
        """lcm of the torsion orders (1 for a free group)."""
        e = 1
        for d in self.torsion:
            e = _lcm(e, d)
        return e

    def element(self, vec: Sequence[int]) -> GroupElement:
        vec = [int(v) for v in vec]
        if len(vec) != self.dim:
            raise DimensionError(
                f"vector of length {len(vec)} does not fit {self} (dim {self.dim})"
            )
        return GroupElement(self, tuple(vec[: self.rank]), tuple(vec[self.rank:]))

    def zero(self) -> GroupElement:
        return self.element([0] * self.dim)

    def basis(self) -> list[GroupElement]:
        out = []
        for i in range(self.dim):
            v = [0] * self.dim
            v[i] = 1
            out.append(self.element(v))
        return out

    def relation_rows(self) -> Matrix:
        """Rows d_i * e_{rank+i} presenting the torsion part."""
        rows = []
        for i, d in enumerate(self.torsion):
            row = [0] * self.dim
            row[self.rank + i] = d
            rows.append(row)
        return rows

    def __str__(self):
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " x ".join(parts) if parts else "0"


@dataclass(frozen=True)
class GroupElement:
    group: AmbientGroup = field(repr=False)
    free: tuple[int, ...]
    tors: tuple[int, ...] = ()

    def __post_init__(self):
        g = self.group
        if len(self.free) != g.rank or len(self.tors) != len(g.torsion):
            raise DimensionError(f"coordinates do not match {g}")
        object.__setattr__(
            self, "tors", tuple(t % d for t, d in zip(self.tors, g.torsion))
        )

    @property
    def vector(self) -> tuple[int, ...]:
        return self.free + self.tors

    def _check(self, other: GroupElement):
        if not isinstance(other, GroupElement):
            return NotImplemented
        if other.group != self.group:
            raise DimensionError(f"cannot combine elements of {self.group} and {other.group}")
        return None

    def __add__(self, other: GroupElement) -> GroupElement:
        if self._check(other) is NotImplemented:
            return NotImplemented
        return GroupElement(
            self.group,
            tuple(a + b for a, b in zip(self.free, other.free)),
            tuple(a + b for a, b in zip(self.tors, other.tors)),
        )

    def __neg__(self) -> GroupElement:
        return GroupElement(self.group, tuple(-a for a in self.free), tuple(-a for a in self.tors))

    def __sub__(self, other: GroupElement) -> GroupElement:
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, k: int) -> GroupElement:
        if not isinstance(k, int):
            return NotImplemented
        return GroupElement(self.group, tuple(k * a for a in self.free), tuple(k * a for a in self.tors))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.free) and not any(self.tors)

    def sort_key(self):
        return self.vector

    def __str__(self):
        return "(" + ", ".join(map(str, self.vector)) + ")"


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a * b // gcd(a, b)


def identity_matrix(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix, inner: int | None = None) -> Matrix:
    if not A:
        return []
    k = len(B) if inner is None else inner
    cols = len(B[0]) if B else 0
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(cols)] for i in range(len(A))]


def smith_normal_form(A: Matrix, ncols: int | None = None) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``U @ A @ V == D``.

    ``D`` is diagonal with nonnegative entries d_1 | d_2 | ... and ``U``,
    ``V`` are unimodular.  ``ncols`` is needed only when ``A`` has no rows.
    """
    U, D, V, _ = _snf(A, ncols)
    return U, D, V


def _snf(A: Matrix, ncols: int | None = None):
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    D = [list(map(int, row)) for row in A]
    U = identity_matrix(m)
    V = identity_matrix(n)
    Vinv = identity_matrix(n)

    def swap_rows(i, k):
        D[i], D[k] = D[k], D[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in D:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]
        Vinv[j], Vinv[k] = Vinv[k], Vinv[j]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        # col_dst += q * col_src
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]
        Vinv[src] = [a - q * b for a, b in zip(Vinv[src], Vinv[dst])]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = D[t][t]
            for i in range(t + 1, m):
                q = D[i][t] // p
                if q:
                    add_row(i, t, -q)
            for j in range(t + 1, n):
                q = D[t][j] // p
                if q:
                    add_col(j, t, -q)
            # move any smaller remainder into the pivot slot and repeat
            cand = None
            for i in range(t + 1, m):
                if D[i][t] and (cand is None or abs(D[i][t]) < abs(cand[2])):
                    cand = ("r", i, D[i][t])
            for j in range(t + 1, n):
                if D[t][j] and (cand is None or abs(D[t][j]) < abs(cand[2])):
                    cand = ("c", j, D[t][j])
            if cand is not None:
                if cand[0] == "r":
                    swap_rows(t, cand[1])
                else:
                    swap_cols(t, cand[1])
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is not None:
                add_row(t, bad, 1)
                continue
            break
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]

    if VERIFY_SNF:
        _verify_snf(A, U, D, V, Vinv, n)
    return U, D, V, Vinv


def _verify_snf(A, U, D, V, Vinv, n):
    m = len(A)
    if matmul(matmul(U, A), V, inner=n) != D and m:
        raise InvariantViolation("SNF postcondition U*A*V = D failed")
    if matmul(V, Vinv) != identity_matrix(n):
        raise InvariantViolation("SNF column transform inverse is wrong")
    diag = [D[i][i] for i in range(min(m, n))]
    for i in range(m):
        for j in range(n):
            if i != j and D[i][j]:
                raise InvariantViolation("SNF result is not diagonal")
    for a, b in zip(diag, diag[1:]):
        if a < 0 or (a == 0 and b != 0) or (a and b % a):
            raise InvariantViolation(f"SNF diagonal {diag} is not a divisibility chain")


@dataclass(frozen=True)
class QuotientMap:
    """Surjection ``source -> target`` with a deterministic section.

    Target coordinate ``k`` is ``(x . columns[k]) mod moduli[k]`` where ``x``
    is the flat vector of a source element (modulus 0 means free).
    """

    source: AmbientGroup
    target: AmbientGroup
    columns: tuple[tuple[int, ...], ...]
    lift_rows: tuple[tuple[int, ...], ...]

    def __call__(self, x: GroupElement) -> GroupElement:
        if x.group != self.source:
            raise DimensionError(f"element of {x.group} fed to a map from {self.source}")
        v = x.vector
        return self.target.element([sum(a * b for a, b in zip(v, col)) for col in self.columns])

    def apply_vector(self, v: Sequence[int]) -> tuple[int, ...]:
        return self.target.element([sum(a * b for a, b in zip(v, col)) for col in self.columns]).vector

    def lift(self, t: GroupElement) -> GroupElement:
        """A preimage of ``t``; linear in the target coordinates."""
        if t.group != self.target:
            raise DimensionError(f"element of {t.group} is not in {self.target}")
        n = self.source.dim
        out = [0] * n
        for c, row in zip(t.vector, self.lift_rows):
            for i in range(n):
                out[i] += c * row[i]
        return self.source.element(out)


def quotient_by_subgroup(G: AmbientGroup, gens: Iterable[GroupElement]) -> QuotientMap:
    """Quotient of ``G`` by the subgroup generated by ``gens``."""
    gens = list(gens)
    for g in gens:
        if g.group != G:
            raise DimensionError(f"generator {g} is not in {G}")
    if all(g.is_zero() for g in gens):
        ident = tuple(tuple(int(i == j) for i in range(G.dim)) for j in range(G.dim))
        return QuotientMap(G, G, ident, ident)
    rows = G.relation_rows() + [list(g.vector) for g in gens]
    n = G.dim
    _, D, V, Vinv = _snf(rows, ncols=n)
    diag = [D[i][i] if i < len(D) else 0 for i in range(n)]
    free_idx = [j for j in range(n) if diag[j] == 0]
    tors_idx = [j for j in range(n) if diag[j] > 1]
    order = free_idx + tors_idx
    target = AmbientGroup(len(free_idx), tuple(diag[j] for j in tors_idx))
    columns = tuple(tuple(V[i][j] for i in range(n)) for j in order)
    lift_rows = tuple(tuple(Vinv[j]) for j in order)
    return QuotientMap(G, target, columns, lift_rows)


def solve_in_subgroup(gens: Sequence[GroupElement], target: GroupElement) -> list[int] | None:
    """Integer coefficients ``x`` with ``sum(x_i * gens_i) == target``, or None."""
    G = target.group
    for g in gens:
        if g.group != G:
            raise DimensionError(f"generator {g} is not in {G}")
    rows = [list(g.vector) for g in gens] + G.relation_rows()
    n = G.dim
    if not rows:
        return [] if target.is_zero() else None
    U, D, V, _ = _snf(rows, ncols=n)
    m = len(rows)
    w = [sum(target.vector[i] * V[i][j] for i in range(n)) for j in range(n)]
    y = [0] * m
    for j in range(n):
        d = D[j][j] if j < m else 0
        if d == 0:
            if w[j]:
                return None
        else:
            if w[j] % d:
                return None
            y[j] = w[j] // d
    x = [sum(y[i] * U[i][k] for i in range(m)) for k in range(m)]
    return x[: len(gens)]
