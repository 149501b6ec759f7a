"""Verification suites shared by the ``wn verify`` command and the acceptance tests."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

from .cohomology import (DEFAULT_LIMIT, PAIRS, RelativeComplex, ResourceLimitExceeded, cohomology_table,
                         expected_f_series, expected_g_series, f_cohomology_table, invariant_hilbert_table,
                         restriction_map, verify_cut_theorem)
from .modules import (adjoint_module, atypicality, f_tilde_point, kac_module, maximal_proper_submodule,
                      omega_dominant, own_adjoint, rank_variety_report, sample_points, ses_consistent,
                      simple_gl_data, simple_supermodule, tensor_consistent, trivial_module, weyl_dimension)
from .wn import (TorusWeightAction, WAlgebra, build_wn, check_subalgebra_closure, diagonal, fixed_points,
                 gl_failures, jacobi_failures, oracle_failures, skew_failures, stabilizer_matches_torus,
                 subalgebra, verify_beta_fiber)

SUITES = ("structure", "jacobi", "complex", "cut", "hilbert", "detecting", "kac", "atypical", "supports")


@dataclass(frozen=True)
class VerifyConfig:
    seed: int = 0
    limit: int = DEFAULT_LIMIT
    oracle_pairs: int = 500
    jacobi_samples_n4: int = 10_000
    complex_max_degree: int = 3
    zero_differential_max_degree: int = 4
    cut_max_degree: int = 4
    hilbert_max_degree: Dict[int, int] = field(default_factory=lambda: {2: 8, 3: 8, 4: 4})
    f_max_degree: int = 8
    restriction_max_degree: int = 6
    kac_grid: Dict[int, int] = field(default_factory=lambda: {2: 3, 3: 1})
    atypical_grid: int = 4
    support_points: int = 20


@dataclass
class Report:
    suite: str
    n: int
    status: str
    payload: Dict[str, object]
    counterexample: Optional[str] = None
    timing_ms: Optional[float] = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self, timing: bool = False) -> dict:
        out = {"suite": self.suite, "n": self.n, "status": self.status, "payload": self.payload}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if timing and self.timing_ms is not None:
            out["timing_ms"] = round(self.timing_ms, 1)
        return out


class _Collector:
    """Accumulates named checks; the first failure supplies the counterexample."""

    def __init__(self, suite: str, n: int):
        self.suite, self.n = suite, n
        self.payload: Dict[str, object] = {}
        self.cex: Optional[str] = None
        self.truncated = False

    def check(self, name: str, ok: bool, value=None, cex: Optional[str] = None) -> bool:
        self.payload[name] = value if value is not None else ok
        if not ok and self.cex is None:
            self.cex = cex or f"{name} (n={self.n})"
        return ok

    def report(self) -> Report:
        status = "fail" if self.cex else ("truncated" if self.truncated else "pass")
        return Report(self.suite, self.n, status, self.payload, self.cex)


def structure_suite(n: int, cfg: VerifyConfig = VerifyConfig()) -> Report:
    c = _Collector("structure", n)
    alg = build_wn(n)
    c.check("dim", alg.dim == n * 2 ** n, alg.dim, f"wn info --n {n}")
    graded = alg.graded_dims()
    want = {k: WAlgebra.expected_graded_dim(n, k) for k in range(-1, n)}
    c.check("graded_dims", graded == want, [graded[k] for k in sorted(graded)], f"wn info --n {n}")
    return c.report()


def jacobi_suite(n: int, cfg: VerifyConfig = VerifyConfig()) -> Report:
    c = _Collector("jacobi", n)
    bad = skew_failures(n)
    c.check("skew_symmetry", not bad, len(bad) == 0,
            None if not bad else f"wn bracket --n {n} {bad[0][0]} {bad[0][1]}")
    samples = cfg.jacobi_samples_n4 if n >= 4 else None
    count, bad = jacobi_failures(n, samples, cfg.seed)
    c.payload["jacobi_triples"] = count
    c.check("jacobi", not bad, len(bad) == 0,
            None if not bad else f"wn bracket --n {n} {' '.join(map(str, bad[0]))}")
    bad = gl_failures(n)
    c.check("g0_is_gl(n)", not bad, len(bad) == 0, None if not bad else f"wn bracket --n {n} {bad[0][0]} {bad[0][1]}")
    bad = oracle_failures(n, cfg.oracle_pairs, cfg.seed)
    c.payload["oracle_pairs"] = cfg.oracle_pairs
    c.check("closed_form_vs_oracle", not bad, len(bad) == 0,
            None if not bad else f"wn bracket --n {n} {bad[0][0]} {bad[0][1]}")
    return c.report()


def complex_suite(n: int, cfg: VerifyConfig = VerifyConfig()) -> Report:
    """d∘d = 0 on the three pairs with trivial and adjoint coefficients; d ≡ 0 on (g, g_0; C)."""
    c = _Collector("complex", n)
    for pair, (gname, tname) in PAIRS.items():
        g, t = subalgebra(n, gname), subalgebra(n, tname)
        mods = {"trivial": None, "adjoint": adjoint_module(n, g.keys)}
        if gname != "g":
            mods["own-adjoint"] = own_adjoint(n, g.keys)
        for label, mod in mods.items():
            try:
                cx = RelativeComplex(n, g.keys, t.keys, mod, cfg.limit, pair)
                ok = [cx.d_squared_zero(p) for p in range(cfg.complex_max_degree + 1)]
            except ResourceLimitExceeded:
                c.truncated = True
                c.payload[f"{pair}/{label}"] = "truncated"
                continue
            bad = [p for p, v in enumerate(ok) if not v]
            c.check(f"{pair}/{label}", not bad, all(ok),
                    None if not bad else f"wn cohomology --n {n} --pair {pair} --coefficients {label} "
                    f"--max-degree {bad[0]} --check-dd")
    cx = RelativeComplex.from_pair(n, "g:g0", limit=cfg.limit)
    zero = [cx.differential(p).is_zero() for p in range(cfg.zero_differential_max_degree + 1)]
    bad = [p for p, v in enumerate(zero) if not v]
    c.check("g:g0 differential vanishes", not bad, all(zero),
            None if not bad else f"wn cohomology --n {n} --pair g:g0 --max-degree {bad[0] + 1}")
    return c.report()


def cut_suite(n: int, cfg: VerifyConfig = VerifyConfig()) -> Report:
    c = _Collector("cut", n)
    rows = []
    for p in range(cfg.cut_max_degree + 1):
        r = verify_cut_theorem(n, p, cfg.limit)
        rows.append(r.to_json())
        if r.status == "truncated":
            c.truncated = True
        elif not r.passed and c.cex is None:
            c.cex = f"wn cut-check --n {n} --max-degree {p}"
    c.payload["degrees"] = rows
    return c.report()


def hilbert_suite(n: int, cfg: VerifyConfig = VerifyConfig()) -> Report:
    c = _Collector("hilbert", n)
    top = cfg.hilbert_max_degree.get(n, 4)
    want = expected_g_series(n, top)
    table = cohomology_table(n, "g:g0", top, limit=cfg.limit)
    c.payload["cohomology"] = table.to_json()
    c.payload["expected"] = want
    for p, d in table.entries.items():
        if d != want[p]:
            c.check("cohomology", False, cex=f"wn cohomology --n {n} --pair g:g0 --max-degree {p}")
            break
    inv = invariant_hilbert_table(n, top, limit=cfg.limit)
    c.payload["invariants"] = inv.to_json()
    for p, d in inv.entries.items():
        if d != want[p]:
            c.check("invariants", False, cex=f"wn invariants --n {n} --max-degree {p}")
            break
    c.truncated = bool(table.truncated or inv.truncated)
    return c.report()


def detecting_suite(n: int, cfg: VerifyConfig = VerifyConfig()) -> Report:
    c = _Collector("detecting", n)
    alg = build_wn(n)
    odd = alg.component(-1) + alg.component(1)
    space = alg.as_superspace(odd)
    fp = fixed_points(space, TorusWeightAction("T_{n-1}"))
    got = sorted(odd[next(iter(v))] for v in fp.vectors())
    want = sorted(subalgebra(n, "f1").keys)
    c.check("T_{n-1} fixed points = f_1", got == want, [str(k) for k in got])
    c.check("T fixed points of g_-1+g_1 = 0", fixed_points(space, TorusWeightAction("T")).dim == 0)
    for name in ("f", "f_tilde"):
        rep = check_subalgebra_closure(subalgebra(n, name))
        c.check(f"{name} relations", rep.closed, rep.checks, rep.counterexample)
    ft = f_cohomology_table(n, cfg.f_max_degree, cfg.limit)
    want_f = expected_f_series(n, cfg.f_max_degree)
    c.payload["f_cohomology"] = ft.to_json()
    bad = [p for p, d in ft.entries.items() if d != want_f[p]]
    c.check("f cohomology = C(m+n-2, n-2)", not bad, not bad,
            None if not bad else f"wn cohomology --n {n} --pair f:f0 --max-degree {bad[0]}")
    if n <= 3:
        G = RelativeComplex.from_pair(n, "g:g0", limit=cfg.limit)
        F = RelativeComplex.from_pair(n, "f:f0", limit=cfg.limit)
        rows = []
        for p in range(cfg.restriction_max_degree + 1):
            r = restriction_map(n, p, complexes=(G, F))
            rows.append(r.to_json())
            if not r.passed and c.cex is None:
                c.cex = f"wn restriction --n {n} --max-degree {p}"
        c.payload["restriction"] = rows
        cs = list(range(0, n))
        c.check("beta fibre empty (all c_i != 0)",
                verify_beta_fiber(diagonal(n, [k + 1 for k in cs]), seed=cfg.seed).passed)
        fib = verify_beta_fiber(diagonal(n, cs), seed=cfg.seed)
        c.check("beta fibre family (c_1 = 0)", fib.passed, fib.details.get("checks"))
        c.check("stabiliser of x_0 = Lie(T_{n-1})", stabilizer_matches_torus(n, cs))
    return c.report()


def kac_suite(n: int, cfg: VerifyConfig = VerifyConfig()) -> Report:
    import itertools

    c = _Collector("kac", n)
    bound = cfg.kac_grid.get(n, 1)
    grid = [lam for lam in itertools.product(range(-bound, bound + 1), repeat=n)
            if all(lam[i] >= lam[i + 1] for i in range(n - 1))]
    rows = []
    for lam in grid:
        l0 = simple_gl_data(lam).dim
        K = kac_module(lam)
        rad = maximal_proper_submodule(K, lam).dim
        at = atypicality(lam).value == "atypical"
        row = {"weight": list(lam), "dim_L0": l0, "weyl": weyl_dimension(lam), "dim_K": K.dim, "dim_rad": rad,
               "atypical": at}
        rows.append(row)
        ok = l0 == weyl_dimension(lam) and K.dim == 2 ** n * l0 and (rad > 0) == at
        if not ok and c.cex is None:
            c.cex = f"wn kac --n {n} --weight {','.join(map(str, lam))}"
    c.payload["grid"] = rows
    if n == 2:
        known = {(0, 0): 1, (0, -1): 3, (1, 1): 3, (2, 1): 5}
        dims = {lam: simple_supermodule(lam).dim for lam in known}
        for lam, d in known.items():
            c.check(f"dim L({lam[0]},{lam[1]})", dims[lam] == d, dims[lam],
                    f"wn simple --n 2 --weight {lam[0]},{lam[1]}")
        c.check("K(2,0) simple", maximal_proper_submodule(kac_module((2, 0)), (2, 0)).dim == 0)
    return c.report()


def atypical_suite(n: int, cfg: VerifyConfig = VerifyConfig()) -> Report:
    import itertools

    c = _Collector("atypical", n)
    b = cfg.atypical_grid
    count = 0
    for lam in itertools.product(range(-b, b + 1), repeat=n):
        if any(lam[i] < lam[i + 1] for i in range(n - 1)):
            continue
        count += 1
        if (atypicality(lam).value == "atypical") != omega_dominant(lam):
            c.check("omega", False, cex=f"wn atypical --n {n} --weight {','.join(map(str, lam))}")
            break
    c.payload["dominant_weights"] = count
    return c.report()


def supports_suite(n: int, cfg: VerifyConfig = VerifyConfig()) -> Report:
    c = _Collector("supports", n)
    if n != 2:
        c.payload["note"] = "support suite runs at n = 2"
        return c.report()
    mods = {
        "C": (trivial_module(2), "full-variety-consistent"),
        "K(0,0)": (kac_module((0, 0)), "zero-variety-consistent"),
        "K(2,0)": (kac_module((2, 0)), "zero-variety-consistent"),
        "L(0,-1)": (simple_supermodule((0, -1)), "full-variety-consistent"),
        "L(1,1)": (simple_supermodule((1, 1)), "full-variety-consistent"),
    }
    for name, (m, want) in mods.items():
        rep = rank_variety_report(m, 2, seed=cfg.seed)
        c.check(f"verdict {name}", rep.verdict == want, rep.verdict, f"wn rank-variety --n 2 --module {name}")
    pts = sample_points(2, max(cfg.support_points - 3, 0), cfg.seed)[:cfg.support_points]
    seqs = []
    for lam in [(0, 0), (1, 1), (2, 1)]:
        K = kac_module(lam)
        rad = maximal_proper_submodule(K, lam)
        seqs.append((lam, K.submodule(rad), K, K.quotient(rad)))
    bad = None
    for lam, S, K, Q in seqs:
        for p in pts:
            if not ses_consistent(S, K, Q, f_tilde_point(2, p[0], p[1:])):
                bad = f"wn rank-variety --n 2 --module K({lam[0]},{lam[1]}) --point a={p[0]},c2={p[1]}"
                break
        if bad:
            break
    c.check("ses", bad is None, bad is None, bad)
    pairs = [(kac_module((0, 0)), simple_supermodule((0, -1))), (simple_supermodule((1, 1)), trivial_module(2)),
             (kac_module((2, 0)), simple_supermodule((1, 1)))]
    bad = None
    for m1, m2 in pairs:
        T = m1.tensor(m2)
        for p in pts:
            if not tensor_consistent(m1, m2, f_tilde_point(2, p[0], p[1:]), T):
                bad = f"wn rank-variety --n 2 --module {m1.label} --point a={p[0]},c2={p[1]} (tensor with {m2.label})"
                break
        if bad:
            break
    c.check("tensor", bad is None, bad is None, bad)
    c.payload["points"] = len(pts)
    return c.report()


SUITE_FUNCS: Dict[str, Callable[[int, VerifyConfig], Report]] = {
    "structure": structure_suite,
    "jacobi": jacobi_suite,
    "complex": complex_suite,
    "cut": cut_suite,
    "hilbert": hilbert_suite,
    "detecting": detecting_suite,
    "kac": kac_suite,
    "atypical": atypical_suite,
    "supports": supports_suite,
}


def run_suite(name: str, n: int, cfg: VerifyConfig = VerifyConfig()) -> Report:
    t = time.perf_counter()
    rep = SUITE_FUNCS[name](n, cfg)
    rep.timing_ms = (time.perf_counter() - t) * 1000
    return rep


def run_all(ns: Sequence[int], cfg: VerifyConfig = VerifyConfig(), suites: Sequence[str] = SUITES) -> List[Report]:
    return [run_suite(s, n, cfg) for s in suites for n in ns]
