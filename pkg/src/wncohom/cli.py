"""``wn`` command-line driver."""
from __future__ import annotations

import argparse
import json
import re
import sys
import time
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .cohomology import (DEFAULT_LIMIT, PAIRS, RelativeComplex, ResourceLimitExceeded, cohomology_table,
                         invariant_hilbert_table, restriction_map, verify_cut_theorem)
from .modules import (NotDominant, UnsupportedInput, Weight, adjoint_module, atypicality, f_tilde_point,
                      kac_module, maximal_proper_submodule, own_adjoint, projective_over, rank_variety_report,
                      simple_gl_data, simple_supermodule, trivial_module, weyl_dimension)
from .suites import SUITES, VerifyConfig, run_suite
from .wn import UnsupportedRank, WElement, build_wn, jacobi_defect, parse_basis_element, subalgebra

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


def parse_n_range(text: str) -> List[int]:
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?", text)
    if not m:
        raise UsageError(f"malformed --n value {text!r}; expected N or A..B")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    if hi < lo:
        raise UsageError(f"empty range {text!r}")
    if lo < 2:
        raise UsageError("n must be at least 2")
    return list(range(lo, hi + 1))


def parse_point(text: str, n: int) -> Tuple[Fraction, ...]:
    """``a=1,c2=1/2,...``; missing coordinates default to 0."""
    vals = {"a": Fraction(0), **{f"c{i}": Fraction(0) for i in range(2, n + 1)}}
    for part in text.split(","):
        if "=" not in part:
            raise UsageError(f"malformed point component {part!r}; expected name=value")
        k, v = (s.strip() for s in part.split("=", 1))
        if k not in vals:
            raise UsageError(f"unknown point coordinate {k!r}; expected a, c2..c{n}")
        try:
            vals[k] = Fraction(v)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"malformed rational {v!r} for {k}")
    return tuple(vals[k] for k in ["a"] + [f"c{i}" for i in range(2, n + 1)])


def parse_weight(text: str, n: int) -> Tuple[int, ...]:
    try:
        w = Weight.parse(text, n)
    except ValueError as e:
        raise UsageError(str(e))
    if not all(Fraction(c).denominator == 1 for c in w.components):
        raise UsageError(f"weight {text!r} must be integral")
    return w.ints()


_MODULE_RE = re.compile(r"^\s*(C|K|L|L0|adjoint)\s*(?:\(([^)]*)\))?\s*$")


def parse_module(text: str, n: int, weight: Optional[str] = None):
    """``C``, ``adjoint``, ``K(λ)``, ``L(λ)``; a bare K/L takes ``--weight``."""
    m = _MODULE_RE.match(text)
    if not m:
        raise UsageError(f"malformed module {text!r}; expected C, adjoint, K(λ) or L(λ)")
    kind, arg = m.group(1), m.group(2)
    if kind == "C":
        return trivial_module(n)
    if kind == "adjoint":
        return adjoint_module(n)
    wtext = arg if arg is not None else weight
    if wtext is None:
        raise UsageError(f"module {kind} needs a weight")
    lam = parse_weight(wtext, n)
    try:
        return kac_module(lam) if kind == "K" else simple_supermodule(lam)
    except NotDominant as e:
        raise UsageError(str(e))


# JSON / text output ------------------------------------------------------------------------

def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, (set, frozenset, tuple)):
        return list(o)
    return str(o)


def emit(args, data: dict, text: str) -> None:
    if args.json:
        print(json.dumps(data, default=_default, ensure_ascii=False, sort_keys=False))
    else:
        print(text)


def _single_n(args) -> int:
    ns = parse_n_range(args.n)
    if len(ns) != 1:
        raise UsageError(f"{args.verb} takes a single rank")
    return ns[0]


# verbs ------------------------------------------------------------------------------------

def cmd_info(args) -> int:
    out, lines = [], []
    for n in parse_n_range(args.n):
        alg = build_wn(n)
        graded = alg.graded_dims()
        out.append({"n": n, "dim": alg.dim, "graded_dims": {str(k): v for k, v in sorted(graded.items())}})
        lines.append(f"W({n}): dim {alg.dim}; graded dims "
                     + ",".join(str(graded[k]) for k in sorted(graded))
                     + f" (degrees {min(graded)}..{max(graded)})")
    emit(args, out[0] if len(out) == 1 else {"ranks": out}, "\n".join(lines))
    return EXIT_PASS


def cmd_bracket(args) -> int:
    n = _single_n(args)
    alg = build_wn(n)
    try:
        xs = [WElement.parse(n, s) for s in args.elements]
    except ValueError as e:
        raise UsageError(str(e))
    if len(xs) == 2:
        r = alg.bracket(xs[0], xs[1])
        emit(args, {"n": n, "x": str(xs[0]), "y": str(xs[1]), "bracket": str(r)}, f"[{xs[0]}, {xs[1]}] = {r}")
        return EXIT_PASS
    if len(xs) == 3:
        keys = []
        for s in args.elements:
            try:
                keys.append(parse_basis_element(s))
            except ValueError as e:
                raise UsageError(f"Jacobi check takes basis elements: {e}")
        d = jacobi_defect(alg, *keys)
        r = WElement(n, d)
        emit(args, {"n": n, "triple": [str(k) for k in keys], "jacobi_defect": str(r)},
             f"Jacobi defect of ({', '.join(map(str, keys))}) = {r}")
        return EXIT_PASS if not d else EXIT_FAIL
    raise UsageError("bracket takes two elements (or three basis elements for a Jacobi check)")


def _coefficients(n: int, pair: str, name: str):
    g = subalgebra(n, PAIRS[pair][0])
    if name == "trivial":
        return None
    if name == "adjoint":
        return adjoint_module(n, g.keys)
    if name == "own-adjoint":
        return own_adjoint(n, g.keys)
    raise UsageError(f"unknown coefficients {name!r}")


def cmd_cohomology(args) -> int:
    n = _single_n(args)
    mod = _coefficients(n, args.pair, args.coefficients)
    table = cohomology_table(n, args.pair, args.max_degree, mod, args.limit)
    data = table.to_json()
    data["coefficients"] = args.coefficients
    text = table.to_text()
    status = EXIT_PASS
    if args.check_dd:
        cx = RelativeComplex.from_pair(n, args.pair, mod, args.limit)
        dd = {}
        for p in range(args.max_degree + 1):
            try:
                dd[str(p)] = cx.d_squared_zero(p)
            except ResourceLimitExceeded:
                break
        data["d_squared_zero"] = dd
        text += "\nd∘d = 0: " + " ".join(f"{p}:{'yes' if v else 'NO'}" for p, v in dd.items())
        if not all(dd.values()):
            status = EXIT_FAIL
    emit(args, data, text)
    return status


def cmd_invariants(args) -> int:
    n = _single_n(args)
    table = invariant_hilbert_table(n, args.max_degree, args.full_quotient, args.limit)
    emit(args, table.to_json(), table.to_text())
    return EXIT_PASS


def cmd_cut_check(args) -> int:
    rows, status = [], EXIT_PASS
    for n in parse_n_range(args.n):
        for p in range(args.max_degree + 1):
            r = verify_cut_theorem(n, p, args.limit)
            rows.append(r.to_json())
            if r.status == "fail":
                status = EXIT_FAIL
    text = "\n".join(f"n={r['n']} p={r['p']}: g/g0 {r['full_quotient']}  g-1+g1 {r['g-1+g1']}  {r['status']}"
                     for r in rows)
    emit(args, {"rows": rows}, text)
    return status


def cmd_restriction(args) -> int:
    rows, status = [], EXIT_PASS
    for n in parse_n_range(args.n):
        G = RelativeComplex.from_pair(n, "g:g0", limit=args.limit)
        F = RelativeComplex.from_pair(n, "f:f0", limit=args.limit)
        for p in range(args.max_degree + 1):
            r = restriction_map(n, p, args.limit, (G, F))
            rows.append(r.to_json())
            if not r.passed:
                status = EXIT_FAIL
    text = "\n".join(f"n={r['n']} p={r['p']}: source {r['source_dim']} image {r['image_dim']} "
                     f"invariants {r['invariant_dim']} target {r['target_dim']} "
                     f"{'pass' if r['injective'] and r['image_is_invariants'] and r['differentials_zero'] else 'fail'}"
                     for r in rows)
    emit(args, {"rows": rows}, text)
    return status


def _need_weight(args, n: int) -> Tuple[int, ...]:
    if args.weight is None:
        raise UsageError(f"{args.verb} needs --weight")
    return parse_weight(args.weight, n)


def cmd_kac(args) -> int:
    n = _single_n(args)
    lam = _need_weight(args, n)
    try:
        l0 = simple_gl_data(lam).dim
    except NotDominant as e:
        raise UsageError(str(e))
    K = kac_module(lam)
    rad = maximal_proper_submodule(K, lam).dim
    tag = atypicality(lam)
    data = {"n": n, "weight": list(lam), "dim_L0": l0, "weyl": weyl_dimension(lam), "dim_K": K.dim,
            "dim_radical": rad, "dim_L": K.dim - rad, "atypicality": tag.to_json()}
    emit(args, data, f"K({','.join(map(str, lam))}): dim {K.dim} = 2^{n}·{l0}; radical {rad}; "
                     f"simple quotient {K.dim - rad}; {tag}")
    return EXIT_PASS


def cmd_simple(args) -> int:
    n = _single_n(args)
    lam = _need_weight(args, n)
    try:
        L = simple_supermodule(lam)
    except NotDominant as e:
        raise UsageError(str(e))
    mult = sorted(L.weight_multiplicities().items(), reverse=True)
    data = {"n": n, "weight": list(lam), "dim": L.dim,
            "weights": [{"weight": [str(c) for c in w], "multiplicity": m} for w, m in mult]}
    text = f"L({','.join(map(str, lam))}): dim {L.dim}\n" + "\n".join(
        f"  ({','.join(str(c) for c in w)}) x{m}" for w, m in mult)
    emit(args, data, text)
    return EXIT_PASS


def cmd_atypical(args) -> int:
    n = _single_n(args)
    lam = _need_weight(args, n)
    tag = atypicality(lam)
    emit(args, {"n": n, "weight": list(lam), **tag.to_json()}, str(tag))
    return EXIT_PASS


def cmd_rank_variety(args) -> int:
    n = _single_n(args)
    m = parse_module(args.module, n, args.weight)
    if args.point:
        p = parse_point(args.point, n)
        try:
            proj = projective_over(f_tilde_point(n, p[0], p[1:]), m)
        except UnsupportedInput as e:
            raise UsageError(str(e))
        data = {"module": m.label, "n": n, "point": args.point, "projective": proj}
        emit(args, data, f"{m.label} at {args.point}: {'projective' if proj else 'not projective'}")
        return EXIT_PASS
    rep = rank_variety_report(m, n, seed=args.seed)
    lines = [f"{rep.module}: {rep.verdict}"]
    for pt, proj in rep.samples:
        lines.append(f"  a={pt[0]}" + "".join(f",c{k}={v}" for k, v in enumerate(pt[1:], start=2))
                     + f": {'projective' if proj else 'not projective'}")
    emit(args, rep.to_json(), "\n".join(lines))
    return EXIT_PASS


def cmd_verify(args) -> int:
    ns = parse_n_range(args.n)
    names = SUITES if args.suite == "all" else (args.suite,)
    cfg = VerifyConfig(seed=args.seed, limit=args.limit)
    reports = [run_suite(s, n, cfg) for s in names for n in ns]
    failed = any(r.status == "fail" for r in reports)
    data = {"status": "fail" if failed else ("truncated" if any(r.status == "truncated" for r in reports)
                                               else "pass"),
            "reports": [r.to_json(args.timing) for r in reports]}
    lines = []
    for r in reports:
        line = f"{r.suite:<10} n={r.n}  {r.status}"
        if args.timing:
            line += f"  {r.timing_ms:.0f} ms"
        if r.counterexample:
            line += f"  counterexample: {r.counterexample}"
        lines.append(line)
    emit(args, data, "\n".join(lines))
    return EXIT_FAIL if failed else EXIT_PASS


VERBS: Dict[str, Callable] = {
    "info": cmd_info,
    "bracket": cmd_bracket,
    "cohomology": cmd_cohomology,
    "invariants": cmd_invariants,
    "cut-check": cmd_cut_check,
    "restriction": cmd_restriction,
    "kac": cmd_kac,
    "simple": cmd_simple,
    "atypical": cmd_atypical,
    "rank-variety": cmd_rank_variety,
    "verify": cmd_verify,
}


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", default="2", help="rank, or a range A..B")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--limit", type=_nonneg, default=DEFAULT_LIMIT,
                        help="cap on materialised wedge monomials per degree")
    common.add_argument("--timing", action="store_true", help="include timings (breaks byte-identical output)")

    parser = argparse.ArgumentParser(prog="wn", description="Exact computations in the Lie superalgebra W(n).")
    sub = parser.add_subparsers(dest="verb", required=True)
    sub.add_parser("info", parents=[common], help="dimensions and grading")
    p = sub.add_parser("bracket", parents=[common], help="bracket of two elements, e.g. xi{1}d1 'xi{1,2}d2'")
    p.add_argument("elements", nargs="+")
    for verb in ("cohomology", "invariants", "cut-check", "restriction"):
        p = sub.add_parser(verb, parents=[common])
        p.add_argument("--max-degree", type=_nonneg, default=8 if verb in ("cohomology", "invariants") else 4)
        if verb == "cohomology":
            p.add_argument("--pair", choices=sorted(PAIRS), default="g:g0")
            p.add_argument("--coefficients", choices=("trivial", "adjoint", "own-adjoint"), default="trivial")
            p.add_argument("--check-dd", action="store_true", help="also test d∘d = 0 degree by degree")
        if verb == "invariants":
            p.add_argument("--full-quotient", action="store_true", help="use all of g/g0 instead of g-1+g1")
    for verb in ("kac", "simple", "atypical"):
        p = sub.add_parser(verb, parents=[common])
        p.add_argument("--weight", help="comma-separated integers, e.g. 2,0")
    p = sub.add_parser("rank-variety", parents=[common])
    p.add_argument("--module", default="L", help="C, adjoint, K(λ) or L(λ)")
    p.add_argument("--weight")
    p.add_argument("--point", help="a=..,c2=..,…; test a single point")
    p = sub.add_parser("verify", parents=[common])
    p.add_argument("suite", choices=SUITES + ("all",))
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_PASS
    t = time.perf_counter()
    try:
        code = VERBS[args.verb](args)
    except (UsageError, UnsupportedRank, ValueError) as e:
        print(f"wn {args.verb}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if args.timing and not args.json:
        print(f"[{(time.perf_counter() - t) * 1000:.0f} ms]", file=sys.stderr)
    return code


def run(argv: Optional[Sequence[str]] = None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
