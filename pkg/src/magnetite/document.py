"""JSON documents describing a finitely generated monoid.

::

    {"ambient": {"rank": 1, "torsion": [2]},
     "generators": [[0, 1], [2, 0], [3, 1]],
     "name": "example"}

Each generator is a flat vector: ``rank`` free coordinates followed by one
residue per torsion factor.  Residues are reduced on load.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .ambient import AmbientGroup
from .errors import MagnetiteError
from .monoid import FgMonoid, normalize


class DocumentError(MagnetiteError, ValueError):
    """The input text is not a valid monoid document."""


@dataclass(frozen=True)
class MonoidDocument:
    rank: int
    torsion: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...]
    name: str | None = None

    @property
    def ambient(self) -> AmbientGroup:
        return AmbientGroup(self.rank, self.torsion)

    def monoid(self) -> FgMonoid:
        G = self.ambient
        return normalize([G.element(v) for v in self.generators], ambient=G, name=self.name)

    def to_json(self) -> dict:
        out = {
            "ambient": {"rank": self.rank, "torsion": list(self.torsion)},
            "generators": [list(v) for v in self.generators],
        }
        if self.name is not None:
            out["name"] = self.name
        return out

    @classmethod
    def from_monoid(cls, M: FgMonoid, name: str | None = None) -> MonoidDocument:
        return cls(
            M.ambient.rank,
            M.ambient.torsion,
            tuple(g.vector for g in M.gens),
            name if name is not None else M.name,
        )


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"{where}: expected an integer, got {json.dumps(value)}")
    return value


def parse_document(text: str) -> MonoidDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise DocumentError("top level: expected a JSON object")
    unknown = set(raw) - {"ambient", "generators", "name"}
    if unknown:
        raise DocumentError(f"top level: unknown field(s) {sorted(unknown)}")
    for key in ("ambient", "generators"):
        if key not in raw:
            raise DocumentError(f"top level: missing field '{key}'")

    amb = raw["ambient"]
    if not isinstance(amb, dict):
        raise DocumentError("ambient: expected an object")
    unknown = set(amb) - {"rank", "torsion"}
    if unknown:
        raise DocumentError(f"ambient: unknown field(s) {sorted(unknown)}")
    if "rank" not in amb:
        raise DocumentError("ambient: missing field 'rank'")
    rank = _int(amb["rank"], "ambient.rank")
    if rank < 0:
        raise DocumentError(f"ambient.rank: must be >= 0, got {rank}")
    torsion = amb.get("torsion", [])
    if not isinstance(torsion, list):
        raise DocumentError("ambient.torsion: expected a list")
    torsion = tuple(_int(d, f"ambient.torsion[{i}]") for i, d in enumerate(torsion))
    for i, d in enumerate(torsion):
        if d < 2:
            raise DocumentError(f"ambient.torsion[{i}]: torsion order must be >= 2, got {d}")

    gens = raw["generators"]
    if not isinstance(gens, list):
        raise DocumentError("generators: expected a list of integer vectors")
    width = rank + len(torsion)
    vectors = []
    for i, v in enumerate(gens):
        if not isinstance(v, list):
            raise DocumentError(f"generators[{i}]: expected a list")
        if len(v) != width:
            raise DocumentError(
                f"generators[{i}]: vector length {len(v)} != rank + #torsion = {width}"
            )
        vec = [_int(a, f"generators[{i}][{j}]") for j, a in enumerate(v)]
        for j, d in enumerate(torsion):
            vec[rank + j] %= d
        vectors.append(tuple(vec))

    name = raw.get("name")
    if name is not None and not isinstance(name, str):
        raise DocumentError("name: expected a string")
    return MonoidDocument(rank, torsion, tuple(vectors), name)


def serialize_document(doc: MonoidDocument) -> str:
    """Canonical text: sorted keys, two-space indent, LF endings, final newline."""
    return json.dumps(doc.to_json(), sort_keys=True, indent=2) + "\n"
