"""Command-line front end.

Exit status is 0 on success, 1 when an analysis precondition fails and 2 on
invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from . import codes, fixtures
from .algebra import (
    CodeAlgebra,
    Element,
    MissingParam,
    build_algebra,
    identity_element,
    is_nondegenerate,
)
from .codes import DependentRows, LengthMismatch, code_from_generators, parse_word
from .errors import AnalysisError, CodeAlgebraError
from .form import frobenius_exists, frobenius_form, positive_definite, verify_associative
from .group import axis_orbit, full_group
from .io import ParseError, read_code, read_params
from .scalar import DiscriminantMismatch, format_scalar, is_squarefree, parse_scalar
from .smap import enumerate_smap, small_idempotents, smap_idempotent
from .spectral import eigen_decompose, fusion_law, seress_check
from .structure import is_simple

INPUT_ERRORS = (ParseError, DependentRows, LengthMismatch, MissingParam, DiscriminantMismatch, ValueError)

fmt = format_scalar


def load_algebra(args) -> CodeAlgebra:
    code = read_code(args.code)
    params, disc = read_params(args.params, code)
    if args.disc is not None:
        if args.disc != 1 and not is_squarefree(args.disc):
            raise ValueError("--disc must be a squarefree integer")
        disc = args.disc
    A = build_algebra(code, params)
    return A.with_discriminant(disc) if disc != 1 else A


def parse_subcode(text: str, A: CodeAlgebra) -> codes.LinearCode:
    if text == "full":
        return A.code
    rows = [r.strip() for r in text.split(",") if r.strip()]
    if not rows:
        raise ValueError("empty subcode")
    return code_from_generators(rows, n=A.n)


def parse_element(spec: str, A: CodeAlgebra) -> Element:
    """``t i``, ``e bits``, ``smap D v root``, ``small alpha sign`` or a coordinate list."""
    parts = spec.split()
    head = parts[0] if parts else ""
    if head == "t" and len(parts) == 2:
        i = int(parts[1])
        if not 1 <= i <= A.n:
            raise ValueError(f"coordinate {i} out of range 1..{A.n}")
        return A.t(i - 1)
    if head == "e" and len(parts) == 2:
        w = parse_word(parts[1], A.n)
        if w not in A.index:
            raise ValueError(f"{parts[1]} is not a non-constant codeword")
        return A.e(w)
    if head == "smap" and len(parts) == 4:
        D = parse_subcode(parts[1], A)
        return smap_idempotent(A, D, parse_word(parts[2], A.n), _root(parts[3]))
    if head == "small" and len(parts) == 3:
        w = parse_word(parts[1], A.n)
        plus, minus = small_idempotents(A, w)
        return {"plus": plus, "minus": minus}[_root(parts[2])]
    body = spec.strip().strip("[]")
    vals = [parse_scalar(s) for s in body.split(",")] if "," in body or body else []
    if len(vals) != A.dim:
        raise ValueError(f"expected an element spec or {A.dim} comma-separated coordinates")
    return Element(A, vals)


def _root(text: str) -> str:
    if text not in ("plus", "minus"):
        raise ValueError(f"expected 'plus' or 'minus', got {text!r}")
    return text


def _vec(x: Element) -> list[str]:
    return [fmt(c) for c in x.coords]


def summary(A: CodeAlgebra) -> dict:
    nd = is_nondegenerate(A)
    out = {
        "n": A.n,
        "k": A.code.k,
        "dim": A.dim,
        "field_disc": A.disc,
        "nondegenerate": nd.ok,
    }
    if not nd.ok:
        out["degenerate_reasons"] = list(nd.reasons)
    try:
        out["unital"] = identity_element(A) is not None
    except AnalysisError as exc:
        out["unital"] = None
        out["unital_note"] = str(exc)
    if nd.ok:
        simple = is_simple(A)
        out["simple"] = simple.simple
        if not simple.simple:
            out["ideals"] = [I.rows() for I in simple.ideals]
        out["frobenius_form"] = frobenius_exists(A)
    else:
        out["simple"] = None
        out["frobenius_form"] = None
    return out


def spectrum_section(x: Element) -> dict:
    A = x.algebra
    dec = eigen_decompose(A, x)
    idem = x * x == x
    out = {
        "element": _vec(x),
        "labels": A.labels(),
        "idempotent": idem,
        "eigenvalues": [fmt(v) for v in dec.eigenvalues],
        "dims": {fmt(k): v for k, v in dec.dims().items()},
        "semisimple": dec.semisimple,
        "residual": dec.residual,
    }
    if dec.semisimple:
        law = fusion_law(A, x, dec)
        out["fusion_law"] = law.to_dict()
        out["seress"] = seress_check(law)
    out["primitive"] = idem and dec.semisimple and len(dec.space(1)) == 1
    return out


def smap_section(A: CodeAlgebra, D, v: str, root: str) -> dict:
    roots = ("plus", "minus") if root == "both" else (_root(root),)
    if v == "all":
        elems = enumerate_smap(A, D, roots)
    else:
        w = parse_word(v, A.n)
        elems = [smap_idempotent(A, D, w, r) for r in roots]
    disc = max((x.algebra.disc for x in elems), default=A.disc)
    return {
        "subcode": [A.code.bits(w) for w in D.basis],
        "field_disc": disc,
        "labels": A.labels(),
        "idempotents": [_vec(x) for x in elems],
    }


def parse_lambda(items, n: int) -> list | None:
    if not items:
        return None
    lam = [parse_scalar("1")] * n
    for item in items:
        key, sep, val = item.partition("=")
        if not sep:
            raise ValueError(f"--lambda expects i=p/q, got {item!r}")
        i = int(key)
        if not 1 <= i <= n:
            raise ValueError(f"coordinate {i} out of range 1..{n}")
        lam[i - 1] = parse_scalar(val)
    return lam


def form_section(A: CodeAlgebra, lam) -> dict:
    form = frobenius_form(A, lam)
    ok, witness = verify_associative(A, form)
    out = form.to_dict(A)
    out["labels"] = A.labels()
    out["associative"] = ok
    out["positive_definite"] = positive_definite(form)
    if witness is not None:
        out["witness"] = list(witness)
    return out


def group_section(A: CodeAlgebra) -> dict:
    G = full_group(A)
    return {
        "miyamoto_order": G.miyamoto.order,
        "miyamoto_kernel": [A.code.bits(w) for w in G.miyamoto.kernel.words],
        "aut_order": len(G.automorphisms),
        "order": G.order,
        "generators": [g.describe() for g in G.generators],
    }


def orbit_section(A: CodeAlgebra, specs, bound: int) -> dict:
    axes = [parse_element(s, A) for s in specs]
    big = max((x.algebra for x in axes), key=lambda B: B.disc)
    axes = [x.lift(big) if x.algebra is not big else x for x in axes]
    res = axis_orbit(big, axes, bound=bound)
    return {"axes": len(axes), "bound": bound, "closed": res.closed, "count": res.count, "result": str(res)}


def render(report: dict, as_json: bool) -> str:
    if as_json:
        return json.dumps(report, indent=2, sort_keys=True)
    lines = []

    def walk(obj, indent):
        pad = "  " * indent
        for key in sorted(obj):
            val = obj[key]
            if isinstance(val, dict):
                lines.append(f"{pad}{key}:")
                walk(val, indent + 1)
            elif isinstance(val, list) and val and isinstance(val[0], list):
                lines.append(f"{pad}{key}:")
                for row in val:
                    lines.append(f"{pad}  {json.dumps(row)}")
            else:
                lines.append(f"{pad}{key}: {json.dumps(val) if isinstance(val, list) else val}")

    walk(report, 0)
    return "\n".join(lines)


def golden_dir() -> Path:
    return Path(str(resources.files("codealg").joinpath("golden")))


def cmd_examples(args) -> dict:
    if args.update:
        data = fixtures.RUNNERS[args.name]()
        (golden_dir() / f"{args.name}.json").write_text(fixtures.dumps(data))
        return {"example": args.name, "updated": True, "result": data}
    return {"example": args.name, "matches_golden": True, "result": fixtures.check_fixture(args.name)}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="codealg", description="Exact analysis of code algebras.")
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    sub = p.add_subparsers(dest="command", required=True)

    def with_inputs(sp):
        sp.add_argument("--code", required=True, help="code file: 'n k' then k rows")
        sp.add_argument("--params", required=True, help="parameter file: a, b, c [, d] and overrides")
        sp.add_argument("--disc", type=int, help="work over Q(sqrt(disc))")
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        return sp

    with_inputs(sub.add_parser("report", help="dimension, degeneracy, identity, simplicity, form"))
    sp = with_inputs(sub.add_parser("spectrum", help="eigenspaces and fusion law of an element"))
    sp.add_argument("--element", required=True, help="'t i', 'e bits', 'smap D v root', 'small alpha sign' or coords")
    sp = with_inputs(sub.add_parser("smap", help="idempotents from a constant-weight subcode"))
    sp.add_argument("--subcode", default="full", help="'full' or comma-separated generator rows")
    sp.add_argument("--v", default="all", help="word in bits, or 'all' for coset representatives")
    sp.add_argument("--root", default="plus", choices=("plus", "minus", "both"))
    sp = with_inputs(sub.add_parser("form", help="Frobenius form from toral weights"))
    sp.add_argument("--lambda", dest="lam", action="append", default=[], metavar="I=P/Q")
    with_inputs(sub.add_parser("group", help="Miyamoto group and code automorphisms"))
    sp = with_inputs(sub.add_parser("orbit", help="close a set of axes under their involutions"))
    sp.add_argument("--element", action="append", required=True, help="axis spec (repeatable)")
    sp.add_argument("--bound", type=int, default=512)
    sp = sub.add_parser("examples", help="run a worked example against its golden file")
    sp.add_argument("name", choices=fixtures.NAMES)
    sp.add_argument("--update", action="store_true", help="rewrite the golden file")
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    return p


def run(args) -> dict:
    if args.command == "examples":
        return cmd_examples(args)
    A = load_algebra(args)
    report = {"algebra": summary(A) if args.command == "report" else _brief(A)}
    if args.command == "spectrum":
        report["spectrum"] = spectrum_section(parse_element(args.element, A))
    elif args.command == "smap":
        report["smap"] = smap_section(A, parse_subcode(args.subcode, A), args.v, args.root)
    elif args.command == "form":
        report["form"] = form_section(A, parse_lambda(args.lam, A.n))
    elif args.command == "group":
        report["group"] = group_section(A)
    elif args.command == "orbit":
        if args.bound < 1:
            raise ValueError("--bound must be positive")
        report["orbit"] = orbit_section(A, args.element, args.bound)
    return report


def _brief(A: CodeAlgebra) -> dict:
    return {"n": A.n, "k": A.code.k, "dim": A.dim, "field_disc": A.disc}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = run(args)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CodeAlgebraError as exc:
        print(f"analysis failed: {exc}", file=sys.stderr)
        return 1
    print(render(report, args.json))
    return 0


def parse_report(text: str):
    """Read ``--json`` output back, turning scalar strings into field elements."""

    def conv(obj):
        if isinstance(obj, dict):
            return {k: conv(v) for k, v in obj.items()}
        if isinstance(obj, list):
            return [conv(v) for v in obj]
        if isinstance(obj, str):
            try:
                return parse_scalar(obj)
            except ValueError:
                return obj
        return obj

    return conv(json.loads(text))


if __name__ == "__main__":
    sys.exit(main())
