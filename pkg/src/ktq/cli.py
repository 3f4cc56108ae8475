"""ktq command line: validate, compute, oracle, reproduce."""

from __future__ import annotations

import argparse
import sys

from . import __version__, cocycles, regressions
from .csc import compute, untwisted_atiyah_segal_check
from .errors import InternalError, InvalidInput, KtqError
from .fourier import compare_decompositions
from .instances import ResultFile, load, parse_result, to_text
from .kblocks import CircleHom, GroupCocycle, Point, Trivial, TrivialCircle, circle_mv_oracle

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2


def _degrees(flag: str) -> tuple[int, ...]:
    return {"0": (0,), "1": (1,), "both": (0, 1)}[flag]


def _per_summand_rows(inst, res) -> tuple:
    G = inst.group
    conj = G.conjugacy
    rows = []
    for r, dims in res.per_summand.items():
        size = len(conj.classes[conj.class_of[r]])
        rows.append((("class", G.labels[r]), ("dims", list(dims)), ("rep", r), ("size", size)))
    return tuple(rows)


def cmd_validate(path: str, out=None) -> int:
    out = out or sys.stdout
    f, digest = load(path)
    inst = f.instance
    G = inst.group
    lines = [f"file      {path}", f"sha256    {digest}",
             f"group     order {G.order}: associativity, identity and inverses ok",
             f"space     {len(inst.parts)} part(s): action laws ok"]
    tw = inst.twist
    if isinstance(tw, GroupCocycle):
        lines.append(f"twist     cocycle mod {tw.alpha.modulus}: cocycle identity ok on all triples")
    elif isinstance(tw, CircleHom):
        lines.append(f"twist     homomorphism mod {tw.lam.modulus}: homomorphism law ok on all pairs")
    else:
        lines.append("twist     trivial")
    lines.append("valid")
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def compute_result(path: str, degree: str = "both", per_summand: bool = False, basis: bool = False):
    f, digest = load(path)
    inst = f.instance
    res = compute(inst, _degrees(degree))
    return f, res, ResultFile(
        dims=dict(res.dims),
        per_summand=_per_summand_rows(inst, res) if per_summand else None,
        basis={d: kb.vectors for d, kb in res.basis.items()} if basis else None,
        provenance={"engine": f"ktq {__version__}", "input_sha256": digest, "instance": f.name},
    )


def format_table(f, res, degree: int = 0) -> str:
    """Contribution of each conjugacy class, then the total, in one row."""
    G = f.instance.group
    conj = G.conjugacy
    # central classes first, then by representative
    reps = sorted(res.per_summand, key=lambda r: (len(conj.classes[conj.class_of[r]]), r))
    head = [f"[{G.labels[r]}]" for r in reps] + [f"K^{degree}"]
    row = [str(res.per_summand[r][degree]) for r in reps] + [str(res.dims[degree])]
    name = f.name
    w = [max(len(h), len(c)) for h, c in zip(head, row)]
    first = max(len(name), len("instance"))
    lines = ["instance".ljust(first) + "  " + "  ".join(h.rjust(n) for h, n in zip(head, w)),
             name.ljust(first) + "  " + "  ".join(c.rjust(n) for c, n in zip(row, w))]
    return "\n".join(lines) + "\n"


def cmd_compute(path: str, degree: str = "both", per_summand: bool = False, basis: bool = False,
                table: bool = False, out=None) -> int:
    out = out or sys.stdout
    f, res, result = compute_result(path, degree, per_summand, basis)
    if table:
        for d in _degrees(degree):
            out.write(format_table(f, res, d))
        return EXIT_OK
    doc = result.to_dict()
    if parse_result(doc).to_dict() != doc:
        raise InternalError("result file does not survive its own parser")
    out.write(to_text(doc))
    return EXIT_OK


def _oracle_lines(kind: str, f) -> list[tuple[str, bool]]:
    inst = f.instance
    G = inst.group
    if kind == "alpha-regular":
        if not (len(inst.parts) == 1 and isinstance(inst.parts[0], Point)):
            raise InvalidInput("the alpha-regular oracle needs a point space")
        if not isinstance(inst.twist, (Trivial, GroupCocycle)):
            raise InvalidInput("the alpha-regular oracle needs a cocycle or trivial twist")
        expected = len(cocycles.alpha_regular_classes(inst.alpha))
        got = compute(inst, (0,)).dims[0]
        return [(f"K^0 = {got}, alpha-regular classes = {expected}", got == expected)]
    if kind == "circle-mv":
        if not all(isinstance(p, TrivialCircle) for p in inst.parts):
            raise InvalidInput("the circle oracle needs a space made of circles")
        if isinstance(inst.twist, GroupCocycle):
            raise InvalidInput("the circle oracle needs a homomorphism or trivial twist")
        lam = inst.lam or cocycles.trivial_hom(G)
        out = []
        for r in G.conjugacy.representative:
            C, emb = G.subgroup_table(G.cyclic_subgroup(r))
            lam_c = cocycles.HomTwist(C, lam.modulus, tuple(lam.exp[g] for g in emb))
            k, c = circle_mv_oracle(C, lam_c)
            expect = (k * len(inst.parts), c * len(inst.parts))
            got = inst.block(r).dims
            out.append((f"block [{G.labels[r]}]: ranks {got}, (ker, coker) of 1 - lambda {expect}",
                        got == expect))
        return out
    if kind == "atiyah-segal":
        rep = untwisted_atiyah_segal_check(inst)
        return [(f"degree {d}: computed {rep.got.get(d)}, orbit count {rep.expected[d]}",
                 rep.got.get(d) == rep.expected[d]) for d in sorted(rep.expected)]
    if kind == "adem-ruan":
        rep = compare_decompositions(inst)
        return [(f"K^0 = {rep.csc_dim}, evaluation image rank {rep.image_dim}, orbit count {rep.ar_count}",
                 rep.csc_dim == rep.image_dim == rep.ar_count),
                ("evaluations are equivariant for the commutator character", rep.invariant)]
    raise InvalidInput(f"unknown oracle {kind!r}")


def cmd_oracle(path: str, kind: str, out=None) -> int:
    out = out or sys.stdout
    f, _ = load(path)
    lines = _oracle_lines(kind, f)
    for text, ok in lines:
        out.write(f"{'PASS' if ok else 'FAIL'}  {kind}  {text}\n")
    return EXIT_OK if all(ok for _, ok in lines) else EXIT_FAIL


def cmd_reproduce(example: str, out=None) -> int:
    out = out or sys.stdout
    checks = regressions.run(example)
    for c in checks:
        out.write(c.line() + "\n")
    return EXIT_OK if all(c.ok for c in checks) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ktq", description="Exact rational twisted equivariant K-theory.")
    p.add_argument("--version", action="version", version=f"ktq {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check group, space and twist of an instance file")
    v.add_argument("file")

    c = sub.add_parser("compute", help="solve the compatibility system")
    c.add_argument("file")
    c.add_argument("--degree", choices=("0", "1", "both"), default="both")
    c.add_argument("--per-summand", action="store_true", help="include block dimensions per conjugacy class")
    c.add_argument("--basis", action="store_true", help="include kernel basis vectors")
    c.add_argument("--table", action="store_true", help="print a contribution table instead of JSON")

    o = sub.add_parser("oracle", help="compare against an independent count")
    o.add_argument("file")
    o.add_argument("--kind", required=True, choices=("alpha-regular", "circle-mv", "atiyah-segal", "adem-ruan"))

    r = sub.add_parser("reproduce", help="run a built-in regression")
    r.add_argument("--example", required=True, choices=("klein", "d8-circle", "lemmas"))
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            return cmd_validate(args.file)
        if args.command == "compute":
            return cmd_compute(args.file, args.degree, args.per_summand, args.basis, args.table)
        if args.command == "oracle":
            return cmd_oracle(args.file, args.kind)
        return cmd_reproduce(args.example)
    except InvalidInput as exc:
        print(f"ktq: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (InternalError, AssertionError) as exc:
        print(f"ktq: internal error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except KtqError as exc:
        print(f"ktq: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
