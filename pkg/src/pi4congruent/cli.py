"""Command line: ``pi4cong <subcommand> ...`` (also ``python -m pi4congruent``).

Exit codes: 0 definitive or conditional result, 2 Unknown / nothing found,
1 usage or internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from fractions import Fraction

from . import families, lfunc, selfcheck, theta
from .arith import DomainError, is_squarefree, squarefree_part
from .classify import Outcome, Verdict, classify, waldspurger_coefficient
from .curve import Angle, TwistCurve, point_search, point_to_triangle
from .tiling import tiling_from_witness

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2
THREADS_ENV = "PI4CONG_THREADS"


def jsonable(obj):
    """Exact rationals become "p/q" strings; dataclasses become dicts."""
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "__dataclass_fields__"):
        return {k: jsonable(getattr(obj, k)) for k in obj.__dataclass_fields__ if not k.startswith("_")}
    return obj


def envelope(command: str, inputs: dict, result, provenance: list[str], exact: bool = True) -> dict:
    return {
        "command": command,
        "inputs": jsonable(inputs),
        "result": jsonable(result),
        "provenance": provenance,
        "exact": exact,
    }


def _emit(args, env: dict, text: str) -> None:
    print(json.dumps(env, indent=2) if args.json else text)


def _threads(args) -> int:
    if getattr(args, "threads", None):
        return args.threads
    return max(1, int(os.environ.get(THREADS_ENV, "1")))


def _verdict_text(v: Verdict) -> str:
    lines = [f"{v.n} ({v.angle}): {v.outcome.value}"]
    if v.squarefree_n != v.n:
        lines.append(f"  square-free part: {v.squarefree_n}")
    if v.triangle is not None:
        lines.append(f"  triangle: {v.triangle.sides_text()}")
        lines.append(f"  point: ({v.point[0]}, {v.point[1]}) on E_{v.angle.sign * v.squarefree_n}")
    if v.coefficient is not None:
        c = v.coefficient
        lines.append(f"  coefficient: {c.branch} -> {c.raw}" if not c.forced_zero else "  coefficient: forced zero")
    lines.append(f"  root number: {v.root_number:+d}")
    if v.rule:
        lines.append(f"  certificate: {v.rule}")
    if v.hypothesis:
        lines.append(f"  assumes: {v.hypothesis}")
    lines += [f"  note: {s}" for s in v.notes]
    return "\n".join(lines)


def cmd_classify(args) -> int:
    v = classify(args.n, args.angle, args.bound)
    prov = [v.rule] if v.rule else []
    if v.hypothesis:
        prov.append(f"conditional on {v.hypothesis}")
    _emit(args, envelope("classify", {"n": args.n, "angle": args.angle, "bound": args.bound}, v, prov), _verdict_text(v))
    return EXIT_UNKNOWN if v.outcome is Outcome.UNKNOWN else EXIT_OK


def cmd_witness(args) -> int:
    s, k = squarefree_part(args.n)
    C = TwistCurve(args.angle.sign * s)
    P = point_search(C, args.bound)
    if P is None:
        _emit(args, envelope("witness", {"n": args.n, "angle": args.angle}, None, ["no point found"]),
              f"no point on {C} with height <= {args.bound}")
        return EXIT_UNKNOWN
    T = point_to_triangle(C, P).scaled(k)
    res = {"point": P, "curve": C.n, "triangle": T}
    _emit(args, envelope("witness", {"n": args.n, "angle": args.angle, "bound": args.bound}, res, [f"point on E_{C.n}"]),
          f"point ({P[0]}, {P[1]}) on {C}\ntriangle {T.sides_text()} of area {T.area}")
    return EXIT_OK


def _qexp(coeffs) -> str:
    terms = []
    for n, c in enumerate(coeffs):
        if c:
            mono = "1" if n == 0 else ("q" if n == 1 else f"q^{n}")
            terms.append(f"{c}*{mono}" if c != 1 else mono)
    return " + ".join(terms).replace("+ -", "- ") or "0"


def cmd_theta(args) -> int:
    if args.form == "raw":
        if args.coeffs is None:
            raise DomainError("usage: theta raw a,b,c,r,s,t N")
        Q = theta.TernaryForm.parse(args.coeffs)
        N = args.N
        series = theta.theta_series(Q, N)
        label = f"theta{Q}"
    else:
        N = int(args.coeffs) if args.N is None else args.N
        series = theta.basis_form(args.form, N)
        label = args.form
    coeffs = [int(c) for c in series.coefficients]
    _emit(args, envelope("theta", {"form": label, "N": N}, {"coefficients": coeffs}, [f"lattice sweep of {label}"]),
          f"{label} = {_qexp(coeffs)} + O(q^{N + 1})")
    return EXIT_OK


def _parse_range(text: str) -> list[int]:
    for sep in ("..", "-", ":"):
        if sep in text:
            lo, hi = text.split(sep, 1)
            return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def cmd_lcheck(args) -> int:
    ns = [n for n in _parse_range(args.range) if n >= 1 and is_squarefree(n)]

    def row(n):
        try:
            return lfunc.verify_waldspurger(n, args.angle, args.tol), None
        except Exception as exc:  # reported per row
            return None, f"{type(exc).__name__}: {exc}"

    with ThreadPoolExecutor(_threads(args)) as pool:
        rows = list(pool.map(row, ns))
    failed = any(r is None or not r.ok for r, _ in rows)
    lines = [f"{'n':>6} {'twist':>7} {'branch':>12} {'coef':>5} {'predicted':>14} {'computed':>14}  status"]
    out = []
    for n, (r, err) in zip(ns, rows):
        if r is None:
            lines.append(f"{n:>6} error: {err}")
            out.append({"n": n, "error": err})
            continue
        lines.append(
            f"{n:>6} {r.twist:>7} {r.branch:>12} {r.coefficient:>5} {r.predicted:>14.9f} {r.computed:>14.9f}  "
            + ("pass" if r.ok else "FAIL")
        )
        out.append(r)
    _emit(args, envelope("lcheck", {"range": args.range, "angle": args.angle, "tol": args.tol}, out,
                         ["theta coefficient prediction vs series for L(E,1)"], exact=False), "\n".join(lines))
    return EXIT_ERROR if failed else EXIT_OK


def cmd_family(args) -> int:
    kind = args.kind
    if kind == "param":
        pair = families.ParamPair(args.a, args.b)
        value, n = families.parametrized_value(pair, args.angle)
        T = families.witness_triangle(pair.r, pair.s, args.angle)
        res = {"value": value, "n": n, "triangle": T}
        text = f"rs(r^2 {'+' if args.angle.sign > 0 else '-'} 2rs - s^2) = {value}, square-free part {n}\nwitness {T.sides_text()}"
    elif kind == "residue":
        vals = families.residue_family(args.a, args.b, args.c)
        res = {"values": vals}
        text = "\n".join(str(v) for v in vals)
    elif kind == "classes":
        vals = families.squarefree_class_search(args.a, args.b, args.c)
        res = {"values": [{"value": v, "u": u, "v": w} for v, u, w in vals]}
        text = "\n".join(f"{v}  (u={u}, v={w})" for v, u, w in vals)
    elif kind == "stewart-top":
        M, N = families.stewart_top_family(args.a)
        res = {"d": M.curve[0], "M": (M.x, M.y), "N": (N.x, N.y)}
        text = f"d_t = {M.curve[0]}\nM_t = ({M.x}, {M.y})\nN_t = ({N.x}, {N.y})"
    else:  # rank2
        m = families.rank2_family(args.a)
        res = m
        text = (
            f"n_t = {m.n_t} (square-free part {m.squarefree_n})\n"
            f"P_t -> ({m.P_on_E[0]}, {m.P_on_E[1]})\nQ_t -> ({m.Q_on_E[0]}, {m.Q_on_E[1]})\n"
            f"small-combination independence check: {'pass' if m.weakly_independent else 'FAIL'} (weak check only)"
        )
    _emit(args, envelope("family", vars_inputs(args), res, [f"family {kind}"]), text)
    return EXIT_OK


def vars_inputs(args) -> dict:
    return {k: v for k, v in vars(args).items() if k not in ("func", "json")}


def cmd_shu_zhai(args) -> int:
    claims = families.shu_zhai(args.p, args.qs)
    _emit(args, envelope("shu-zhai", {"p": args.p, "qs": args.qs}, claims, ["rank theorem for twists of 128D1"]),
          "\n".join(str(c) for c in claims))
    return EXIT_OK


def cmd_tiling(args) -> int:
    n = args.n
    verdicts = [classify(2 * n, a, args.bound) for a in Angle]
    hit = next((v for v in verdicts if v.outcome is Outcome.CONGRUENT), None)
    if hit is None:
        summary = ", ".join(f"{v.angle}: {v.outcome.value}" for v in verdicts)
        _emit(args, envelope("tiling", {"n": n}, None, [summary]), f"no witness for {2 * n}: {summary}")
        return EXIT_UNKNOWN
    spec = tiling_from_witness(n, hit.triangle)
    res = {"spec": spec, "grid": spec.grid(), "piece_count": spec.piece_count, "k": spec.k}
    text = (
        f"witness for {2 * n} ({hit.angle}): {hit.triangle.sides_text()}\n"
        f"unit square: {spec.columns} x {spec.rows} rectangles of {spec.piece_legs[0]} x {spec.piece_legs[1]}, "
        f"each cut along a diagonal\npieces: {spec.piece_count} = 2*{n}*{spec.k}^2"
    )
    _emit(args, envelope("tiling", {"n": n, "bound": args.bound}, res, [hit.rule]), text)
    return EXIT_OK


def cmd_selfcheck(args) -> int:
    results = selfcheck.run()
    text = "\n".join(f"[{'PASS' if r.passed else 'FAIL'}] {r.name}: {r.detail}" for r in results)
    _emit(args, envelope("selfcheck", {}, results, ["golden values"]), text)
    return EXIT_OK if all(r.passed for r in results) else EXIT_ERROR


def _angle(text: str) -> Angle:
    try:
        return Angle.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON envelope")
    common.add_argument("--threads", type=_positive, default=None, help=f"worker threads (env {THREADS_ENV})")

    parser = argparse.ArgumentParser(prog="pi4cong", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="decide whether n is pi/4- or 3pi/4-congruent")
    p.add_argument("n", type=_positive)
    p.add_argument("angle", type=_angle)
    p.add_argument("--bound", type=_positive, default=100, help="point search height bound")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("witness", parents=[common], help="search for a witness triangle")
    p.add_argument("n", type=_positive)
    p.add_argument("angle", type=_angle)
    p.add_argument("--bound", type=_positive, default=200)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("theta", parents=[common], help="theta series of a basis form or a raw ternary form")
    p.add_argument("form", choices=[*theta.BASIS_IDS, "raw"])
    p.add_argument("coeffs", help="N for a basis form; a,b,c,r,s,t for raw")
    p.add_argument("N", type=_positive, nargs="?")
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("lcheck", parents=[common], help="compare L(E,1) with theta predictions")
    p.add_argument("range", help="e.g. 1..25")
    p.add_argument("angle", type=_angle)
    p.add_argument("--tol", type=float, default=1e-5)
    p.set_defaults(func=cmd_lcheck)

    p = sub.add_parser("family", parents=[common], help="explicit families")
    p.add_argument("kind", choices=["param", "residue", "classes", "stewart-top", "rank2"])
    p.add_argument("a", type=int, help="r | a | a | t | t")
    p.add_argument("b", type=int, nargs="?", help="s | m | m")
    p.add_argument("c", type=int, nargs="?", help="count | bound")
    p.add_argument("--angle", type=_angle, default=Angle.QUARTER_PI)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("shu-zhai", parents=[common], help="rank 0/1 consequences for p = 7, q_i = 3 mod 8")
    p.add_argument("p", type=int)
    p.add_argument("qs", type=int, nargs="*")
    p.set_defaults(func=cmd_shu_zhai)

    p = sub.add_parser("tiling", parents=[common], help="tile the unit square with 2nk^2 almost rational triangles")
    p.add_argument("n", type=_positive)
    p.add_argument("--bound", type=_positive, default=100)
    p.set_defaults(func=cmd_tiling)

    p = sub.add_parser("selfcheck", parents=[common], help="re-derive every stored reference value")
    p.set_defaults(func=cmd_selfcheck)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    if getattr(args, "threads", None):
        os.environ[THREADS_ENV] = str(args.threads)
    if args.command == "family" and args.kind in ("param", "residue", "classes") and (
        args.b is None or (args.kind != "param" and args.c is None)
    ):
        print(f"family {args.kind}: missing arguments", file=sys.stderr)
        return EXIT_ERROR
    try:
        return args.func(args)
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
