"""Command-line front end.

Every subcommand builds one report dictionary.  ``--json`` prints it as
JSON; otherwise it is flattened into ``key: value`` lines whose values are
the same JSON literals, so both forms carry identical numbers.

Exit codes: 0 success, 1 mathematical validation failure (including an
oracle mismatch), 2 resource limit, 3 unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .document import DocumentError, MonoidDocument, parse_document
from .errors import DimensionError, NotInMonoidError, NotSharpError, ResourceLimitError
from .generators import minimal_generators
from .magnets import (
    ActionSpec,
    attractor_ideal,
    attractor_is_empty,
    classify,
    is_pure,
    pure_magnets,
    quotient_presentation,
)
from .monoid import FgMonoid, limits

EXIT_OK, EXIT_MATH, EXIT_RESOURCE, EXIT_PARSE = 0, 1, 2, 3


def _vecs(elements) -> list[list[int]]:
    return [list(g.vector) for g in elements]


def _group(G) -> dict:
    return {"rank": G.rank, "torsion": list(G.torsion)}


def _canonical(M: FgMonoid) -> list[list[int]]:
    return sorted(_vecs(M.gens))


def load_monoid(path: str) -> FgMonoid:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"{path}: {exc.strerror}") from None
    try:
        doc = parse_document(text)
    except DocumentError as exc:
        raise DocumentError(f"{path}: {exc}") from None
    M = doc.monoid()
    return M if M.name else MonoidDocument.from_monoid(M, Path(path).stem).monoid()


def _spec(args) -> ActionSpec:
    M = load_monoid(args.file)
    if getattr(args, "action_on", None):
        return ActionSpec(M, load_monoid(args.action_on))
    return ActionSpec.self_action(M)


def _magnet(args, spec: ActionSpec) -> FgMonoid:
    N = load_monoid(args.magnet)
    if N.ambient != spec.ambient:
        raise DimensionError(f"magnet lives in {N.ambient}, monoid in {spec.ambient}")
    return N


def cmd_analyze(args) -> dict:
    spec = _spec(args)
    L = spec.target
    sq = L.sharp_quotient()
    rep = pure_magnets(spec)
    return {
        "monoid": L.name,
        "ambient": _group(L.ambient),
        "generators": _vecs(L.gens),
        "sharp": L.is_sharp(),
        "units": _vecs(L.unit_generators()),
        "sharp_quotient": {"target": _group(sq.image.ambient), "image": _vecs(sq.image.gens)},
        "minimal_generators": _vecs(rep.minimal_generators),
        "minimal_generator_lifts": _vecs(rep.basis.lifts),
        "pure_magnet_count": rep.cardinality,
    }


def cmd_units(args) -> dict:
    M = load_monoid(args.file)
    return {
        "monoid": M.name,
        "sharp": M.is_sharp(),
        "unit_generators": _vecs(M.unit_generators()),
        "unit_group": _vecs(M.units_subgroup().gens),
    }


def cmd_sharp_quotient(args) -> dict:
    M = load_monoid(args.file)
    sq = M.sharp_quotient()
    return {
        "monoid": M.name,
        "units": _vecs(sq.units.gens),
        "target": _group(sq.map.target),
        "map_columns": [list(c) for c in sq.map.columns],
        "image": _vecs(sq.image.gens),
        "grading": [str(w) for w in sq.grading.weights],
    }


def cmd_min_generators(args) -> dict:
    M = load_monoid(args.file)
    sq = M.sharp_quotient()
    E = minimal_generators(sq.image)
    return {
        "monoid": M.name,
        "sharp": M.is_sharp(),
        "minimal_generators": _vecs(E),
        "lifts": _vecs(sq.lift_of(e) for e in E),
    }


def cmd_pure_magnets(args) -> dict:
    spec = _spec(args)
    rep = pure_magnets(spec)
    out = {
        "monoid": spec.target.name,
        "sharp": rep.sharp,
        "minimal_generators": _vecs(rep.minimal_generators),
        "count": rep.cardinality,
    }
    if not args.count:
        out["magnets"] = [
            {"subset": None if pm.subset is None else sorted(pm.subset), "generators": _vecs(pm.monoid.gens)}
            for pm in rep.magnets()
        ]
    return out


def cmd_classify(args) -> dict:
    spec = _spec(args)
    N = _magnet(args, spec)
    P = classify(spec, N)
    return {
        "magnet": _vecs(N.gens),
        "attractor_empty": attractor_is_empty(spec, N),
        "pure_magnet": _vecs(P.gens),
    }


def cmd_is_pure(args) -> dict:
    spec = _spec(args)
    N = _magnet(args, spec)
    return {
        "magnet": _vecs(N.gens),
        "pure": is_pure(spec, N),
        "pure_magnet": _vecs(classify(spec, N).gens),
    }


def cmd_attractor(args) -> dict:
    spec = _spec(args)
    N = _magnet(args, spec)
    view = attractor_ideal(spec, N, args.degree)
    return {
        "magnet": _vecs(N.gens),
        "degree": args.degree,
        "attractor_empty": attractor_is_empty(spec, N),
        "ideal": _vecs(view.sorted_elements()),
        "quotient_basis": _vecs(quotient_presentation(spec, N, args.degree)),
    }


def cmd_verify(args) -> dict:
    from .oracle import verify_theorem

    spec = _spec(args)
    rep = verify_theorem(spec, args.max_degree, candidate_degree=args.candidate_degree, seed=args.seed)
    minima = sorted((_canonical(m) for m in rep.class_minima if m is not None))
    return {
        "monoid": spec.acting.name,
        "target": spec.target.name,
        "max_degree": rep.bound,
        "candidate_degree": rep.candidate_degree,
        "exact": rep.exact,
        "candidates": len(rep.candidates),
        "classes": len(rep.class_minima),
        "class_minima": minima,
        "predicted_count": rep.predicted_count,
        "verdict": rep.verdict,
        "witness": rep.witness,
        "note": rep.note,
    }


def render_text(report: dict) -> str:
    lines = []

    def walk(prefix, value):
        if isinstance(value, dict):
            for k, v in value.items():
                walk(f"{prefix}.{k}" if prefix else k, v)
        elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            for i, v in enumerate(value):
                walk(f"{prefix}[{i}]", v)
        else:
            lines.append(f"{prefix}: {json.dumps(value)}")

    walk("", report)
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    def common_flags(sub_level: bool) -> argparse.ArgumentParser:
        # flags are accepted on both sides of the subcommand; the copy on the
        # subcommand must not reset a value given before it
        p = argparse.ArgumentParser(add_help=False)
        kw = {"default": argparse.SUPPRESS} if sub_level else {}
        p.add_argument("--json", action="store_true", help="machine-readable output", **kw)
        p.add_argument("--ball-cap", type=int, help="cap on enumerated elements", **({"default": None} | kw))
        p.add_argument(
            "--seed", type=int,
            help="shuffle internal processing order (results do not depend on it)",
            **({"default": None} | kw),
        )
        return p

    common = common_flags(True)
    action = argparse.ArgumentParser(add_help=False)
    action.add_argument("--action-on", metavar="FILE", help="target monoid L inside the input monoid")
    magnet = argparse.ArgumentParser(add_help=False)
    magnet.add_argument("--magnet", metavar="FILE", required=True)

    parser = argparse.ArgumentParser(prog="magnetite", parents=[common_flags(False)])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, parents, help):
        p = sub.add_parser(name, parents=[common] + parents, help=help)
        p.add_argument("file", help="monoid document (JSON)")
        p.set_defaults(func=func)
        return p

    add("analyze", cmd_analyze, [action], "units, sharp quotient, minimal generators, count")
    add("units", cmd_units, [], "face of units")
    add("sharp-quotient", cmd_sharp_quotient, [], "projection onto M/M*")
    add("min-generators", cmd_min_generators, [], "minimal generators of M/M*")
    p = add("pure-magnets", cmd_pure_magnets, [action], "pure magnets of the action")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--list", action="store_true", help="list every pure magnet (default)")
    g.add_argument("--count", action="store_true", help="only the number of pure magnets")
    add("classify", cmd_classify, [action, magnet], "pure magnet with the same attractor")
    add("is-pure", cmd_is_pure, [action, magnet], "whether a magnet is pure")
    p = add("attractor", cmd_attractor, [action, magnet], "truncated attractor ideal")
    p.add_argument("--degree", type=int, required=True)
    p = add("verify", cmd_verify, [action], "brute-force cross-check")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--candidate-degree", type=int, default=1)
    return parser


def run_command(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    try:
        if args.ball_cap is not None:
            with limits(ball_cap=args.ball_cap):
                report = args.func(args)
        else:
            report = args.func(args)
    except DocumentError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_PARSE
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=stderr)
        return EXIT_RESOURCE
    except (NotInMonoidError, DimensionError, NotSharpError) as exc:
        print(f"invalid: {exc}", file=stderr)
        return EXIT_MATH
    if args.json:
        stdout.write(json.dumps(report, indent=2) + "\n")
    else:
        stdout.write(render_text(report))
    if report.get("verdict") == "mismatch":
        return EXIT_MATH
    return EXIT_OK


def main():
    sys.exit(run_command())
