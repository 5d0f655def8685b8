"""``gcl``: command-line front end.

Exit codes: 0 success, 1 usage, 2 invalid input, 3 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter

from . import __version__
from .diagram import DEFAULT_GUARD, Edge, LadderDiagram, LadderFace, enumerate_faces, face_dimension
from .errors import GCError, InvalidFaceError, UsageError
from .filling import fiber_topology, fill_l_blocks
from .monotone import classify_monotone, codim_max_component, face_center, maslov_from_weights
from .oracle import verify
from .polytope import GCPoint, build_polytope, carrier_face, center_of_polytope, frac_token
from .shapes import FlagShape, Spectrum, monotone_spectrum

SCHEMA = 1
# options whose values may start with '-'
_VALUE_FLAGS = ("--weights", "--lambda", "--point")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _preprocess(argv: list[str]) -> list[str]:
    out = []
    k = 0
    while k < len(argv):
        tok = argv[k]
        if tok in _VALUE_FLAGS and k + 1 < len(argv):
            out.append(f"{tok}={argv[k + 1]}")
            k += 2
            continue
        out.append(tok)
        k += 1
    return out


def _spectrum(args) -> Spectrum:
    if (args.shape is None) == (args.lambda_ is None):
        raise UsageError("give exactly one of --shape or --lambda")
    if args.shape is not None:
        return monotone_spectrum(FlagShape.parse(args.shape))
    return Spectrum.parse(args.lambda_)


# -- ASCII drawing --------------------------------------------------------------


def render_face(d: LadderDiagram, f: LadderFace, overlay: dict | None = None) -> str:
    """Draw ``f`` on its ladder: ``#`` for face edges, ``.`` for the other edges.

    ``overlay`` maps boxes to a one-character mark drawn in the box.
    """
    overlay = overlay or {}
    walls = f.edge_set
    edges = set(d.edges)

    def h(x, y):
        e = Edge(x, y, "H")
        return "###" if e in walls else ("..." if e in edges else "   ")

    def v(x, y):
        e = Edge(x, y, "V")
        return "#" if e in walls else ("." if e in edges else " ")

    width = max(x for x, _ in d.vertices)
    height = max(y for _, y in d.vertices)
    lines = []
    for y in range(height, -1, -1):
        row = ""
        for x in range(width + 1):
            row += "+" if (x, y) in d.vertices else " "
            if x < width:
                row += h(x, y)
        lines.append(row.rstrip())
        if y == 0:
            break
        row = ""
        for x in range(width + 1):
            row += v(x, y - 1)
            if x < width:
                mark = overlay.get((x + 1, y), " ")
                row += f" {mark} " if (x + 1, y) in d.boxes else "   "
        lines.append(row.rstrip())
    return "\n".join(lines)


def _block_overlay(filling) -> dict:
    marks = {}
    for blk in filling.blocks:
        for bx in blk.covered:
            marks[bx] = str(blk.k) if blk.k < 10 else "*"
    return marks


# -- commands -------------------------------------------------------------------


def cmd_polytope(args) -> tuple[dict, str]:
    lam = _spectrum(args)
    P = build_polytope(lam)
    data = {
        "spectrum": str(lam),
        "shape": str(P.shape),
        "dim": P.dim,
        "variables": [list(v) for v in P.variables],
        "constants": [{"i": i, "j": j, "value": frac_token(c)} for (i, j), c in sorted(P.constants.items())],
        "inequalities": P.constraint_strings(),
    }
    text = [f"spectrum {lam}  shape {P.shape}  dim {P.dim}"]
    text += [f"  {s}" for s in P.constraint_strings()]
    return data, "\n".join(text)


def cmd_faces(args) -> tuple[dict, str]:
    lam = _spectrum(args)
    d = LadderDiagram(lam.shape)
    faces = enumerate_faces(d, args.guard)
    dims = [face_dimension(f) for f in faces]
    counts = Counter(dims)
    data = {
        "shape": str(d.shape),
        "count": len(faces),
        "by_dim": {str(k): counts[k] for k in sorted(counts)},
        "faces": [{"id": f.id, "dim": k} for f, k in zip(faces, dims)],
    }
    text = [f"{len(faces)} faces of {d.shape}"]
    text += [f"  dim {k}: {counts[k]}" for k in sorted(counts)]
    if args.list:
        text += [f"{k}  {f.id}" for f, k in zip(faces, dims)]
    return data, "\n".join(text)


def cmd_lagrangian(args) -> tuple[dict, str]:
    lam = _spectrum(args)
    d = LadderDiagram(lam.shape)
    items = []
    text = []
    for f in enumerate_faces(d, args.guard):
        filling = fill_l_blocks(d, f)
        if filling.uncovered:
            continue
        topo = fiber_topology(filling, f)
        items.append(
            {"face_id": f.id, "dim": face_dimension(f), "filling": filling.serialize(), "topology": topo.to_json()}
        )
        text.append(f"[dim {face_dimension(f)}] {topo.serialize()}  ({topo.label})  {filling.serialize()}")
        text.append(render_face(d, f, _block_overlay(filling)))
    items.sort(key=lambda it: (-it["dim"], it["face_id"]))
    return {"shape": str(d.shape), "count": len(items), "faces": items}, "\n".join(
        [f"{len(items)} Lagrangian faces of {d.shape}"] + text
    )


def cmd_monotone(args) -> tuple[dict, str]:
    lam = _spectrum(args)
    P = build_polytope(lam)
    reports = classify_monotone(P, guard=args.guard)
    text = [f"{len(reports)} monotone Lagrangian fibers for spectrum {lam}"]
    for r in reports:
        text.append(f"[dim {r.dim}] {r.topology.serialize()}  ({r.topology.label})")
        text.append(f"  face   {r.face_id}")
        text.append(f"  center {r.center.serialize()}")
        for g in r.generators:
            text.append(
                f"  ({g.a},{g.b}) c={frac_token(g.c)} maslov={g.maslov} area={frac_token(g.area)}"
            )
        text.append(render_face(P.diagram, r.face, _block_overlay(fill_l_blocks(P.diagram, r.face))))
    return {"spectrum": str(lam), "count": len(reports), "reports": [r.to_json() for r in reports]}, "\n".join(text)


def cmd_center(args) -> tuple[dict, str]:
    lam = _spectrum(args)
    P = build_polytope(lam)
    if args.face:
        try:
            f = LadderFace.parse(P.shape, args.face)
        except ValueError as exc:
            raise UsageError(f"cannot parse face id {args.face!r}") from exc
        if not P.diagram.is_face(f):
            raise InvalidFaceError(f"{args.face!r} is not a face of {P.shape}")
        u = face_center(P, P.diagram, f)
    else:
        u = center_of_polytope(P)
    return {"spectrum": str(lam), "center": u.to_json()}, u.serialize()


def _box(text: str) -> tuple[int, int]:
    try:
        a, b = (int(t) for t in text.split(","))
    except ValueError as exc:
        raise UsageError(f"--box expects 'a,b', got {text!r}") from exc
    return a, b


def cmd_codim(args) -> tuple[dict, str]:
    lam = _spectrum(args)
    if not args.box:
        raise UsageError("codim needs --box a,b")
    a, b = _box(args.box)
    value = codim_max_component(build_polytope(lam), a, b)
    return {"spectrum": str(lam), "a": a, "b": b, "codim": value}, str(value)


def cmd_carrier(args) -> tuple[dict, str]:
    lam = _spectrum(args)
    if not args.point:
        raise UsageError("carrier needs --point 'i,j=p/q;...'")
    P = build_polytope(lam)
    u = GCPoint.parse(args.point)
    f = carrier_face(P, u)
    k = face_dimension(f)
    return {"spectrum": str(lam), "face_id": f.id, "dim": k}, f"[dim {k}] {f.id}\n" + render_face(P.diagram, f)


def cmd_maslov(args) -> tuple[dict, str]:
    if args.weights is None:
        raise UsageError("maslov needs --weights w1,w2,...")
    try:
        weights = [int(t) for t in args.weights.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"weights must be integers: {args.weights!r}") from exc
    value = maslov_from_weights(weights)
    return {"weights": weights, "maslov": value}, str(value)


def cmd_verify(args) -> tuple[dict, str]:
    lam = _spectrum(args)
    rep = verify(lam, samples=args.samples, seed=args.seed, tol=args.tol)
    data = rep.to_json()
    text = "\n".join(f"{k}: {v}" for k, v in data.items())
    return data, text


COMMANDS = {
    "polytope": cmd_polytope,
    "faces": cmd_faces,
    "lagrangian": cmd_lagrangian,
    "monotone": cmd_monotone,
    "center": cmd_center,
    "codim": cmd_codim,
    "carrier": cmd_carrier,
    "maslov": cmd_maslov,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gcl", description="Gelfand-Cetlin fibers on partial flag manifolds.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--shape", help="flag shape 'n_1,...,n_r:n' (uses the monotone spectrum)")
        s.add_argument("--lambda", dest="lambda_", help="spectrum 'v1,v2,...' with rational entries")
        s.add_argument("--format", choices=("text", "json"), default="text")
        s.add_argument("--out", help="write output to this path")
        s.add_argument("--guard", type=int, default=DEFAULT_GUARD, help="face enumeration limit")
        if name == "faces":
            s.add_argument("--list", action="store_true", help="list every face id")
        if name == "center":
            s.add_argument("--face", help="face id; default is the center of the polytope")
        if name == "codim":
            s.add_argument("--box", help="box 'a,b'")
        if name == "carrier":
            s.add_argument("--point", help="point 'i,j=p/q;...'")
        if name == "maslov":
            s.add_argument("--weights", help="integer weights 'w1,w2,...'")
        if name == "verify":
            s.add_argument("--samples", type=int, default=10_000)
            s.add_argument("--seed", type=int, default=0)
            s.add_argument("--tol", type=float, default=1e-8)
    return p


def run(argv: list[str]) -> tuple[str, str | None]:
    """Run a command; returns ``(output text, --out path)``."""
    args = build_parser().parse_args(_preprocess(argv))
    if not args.command:
        raise UsageError("missing command; choose one of " + ", ".join(COMMANDS))
    data, text = COMMANDS[args.command](args)
    if args.format == "json":
        payload = {"schema": SCHEMA, "command": args.command}
        payload.update(data)
        text = json.dumps(payload, indent=2)
    return text + "\n", args.out


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        out, dest = run(argv)
        if dest:
            with open(dest, "w", encoding="utf-8") as fh:
                fh.write(out)
        else:
            sys.stdout.write(out)
    except GCError as exc:
        print(f"gcl: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"gcl: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
