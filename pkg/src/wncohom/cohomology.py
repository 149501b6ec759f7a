"""Relative cochains C^p(g, t; M) = Hom_t(Λ_s^p(g/t), M) and their differential.

g/t is the span of the basis elements of g outside t. A cochain is stored by
its values on pairs (wedge monomial w, module basis vector m) whose weights agree
on the torus part of t; the remaining t-generators cut out the equivariant
subspace. The differential is

    dφ(x_1…x_{p+1}) = Σ_{i<j} (-1)^{σ_ij} φ([x_i,x_j] ∧ x_1…x̂_i…x̂_j…x_{p+1})
                    + Σ_i (-1)^{γ_i} x_i φ(x_1…x̂_i…x_{p+1})

with σ_ij = i+j + x̄_i(x̄_1+…+x̄_{i-1}) + x̄_j(x̄_1+…+x̄_{j-1}+x̄_i) and
γ_i = i+1 + x̄_i(x̄_1+…+x̄_{i-1}+φ̄), positions 1-based in canonical order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .linalg import Row, SparseMatrix, Subspace, kernel, rank, subspace_intersect, vstack
from .modules import Supermodule, trivial_module
from .superspace import WedgeBasisIndex, dual, normalize_positions, wedge_act
from .wn import NotClosed, WBasisElement, build_wn, span_of, subalgebra

DEFAULT_LIMIT = 200_000

PAIRS = {
    "g:g0": ("g", "g0"),
    "f:f0": ("f", "f0"),
    "ftilde:ftilde0": ("f_tilde", "f_tilde0"),
}

Key = WBasisElement
Var = Tuple[WedgeBasisIndex, int]


class ResourceLimitExceeded(RuntimeError):
    pass


def _union_find(n: int, edges: Iterable[Tuple[int, int]]) -> List[int]:
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    return [find(a) for a in range(n)]


@dataclass
class CochainSpace:
    p: int
    variables: List[Var]
    index: Dict[Var, int]
    basis: List[Row]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> SparseMatrix:
        """Basis cochains as columns over ``variables``."""
        rows: Dict[int, Row] = {}
        for k, vec in enumerate(self.basis):
            for r, v in vec.items():
                rows.setdefault(r, {})[k] = v
        return SparseMatrix(len(self.variables), len(self.basis), rows)


@dataclass
class DifferentialMatrix:
    p: int
    matrix: SparseMatrix  # columns: cochain basis of C^p; rows: variables of degree p+1

    @property
    def rank(self) -> int:
        return rank(self.matrix)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()


class RelativeComplex:
    """The complex C^•(g, t; M) for basis-spanned g ⊇ t inside W(n)."""

    def __init__(self, n: int, g_keys: Sequence[Key], t_keys: Sequence[Key], module: Optional[Supermodule] = None,
                 limit: int = DEFAULT_LIMIT, name: str = ""):
        self.n = n
        self.alg = alg = build_wn(n)
        self.name = name
        self.limit = limit
        g_set, t_set = set(g_keys), set(t_keys)
        if not t_set <= g_set:
            raise ValueError("t must lie inside g")
        for a in t_set:
            for b in t_set:
                if any(c not in t_set for c in alg.bracket_basis(a, b)):
                    raise NotClosed(f"t is not closed: [{a},{b}]")
        self.module = trivial_module(n, sorted(g_set)) if module is None else module
        if not g_set <= set(self.module.keys):
            raise ValueError("coefficient module must be a g-module")
        self.g_keys = sorted(g_set)
        self.t_keys = sorted(t_set)
        self.Q = [k for k in self.g_keys if k not in t_set]
        self.qpos = {k: i for i, k in enumerate(self.Q)}
        self.qspace = alg.as_superspace(self.Q)
        self.filter = sorted(k.i - 1 for k in t_set if k.I == (k.i,))
        self.t_off = [k for k in self.t_keys if k.I != (k.i,)]
        self.generators = self._generators()
        self.qpar = [k.parity for k in self.Q]
        self.qfw = [self._fw(k.weight(n)) for k in self.Q]
        mw = self.module.weights()
        self.mpar = [b.parity for b in self.module.space.basis]
        self.mfw = [self._fw(w) for w in mw]
        self._ad = {u: self._ad_image(u) for u in self.t_keys}
        self._rho = {k: self.module.act(k) for k in self.g_keys}
        self._qblock = _union_find(len(self.Q), ((j, i) for u in self.t_keys for j, img in self._ad[u].items()
                                                for i in img))
        medges = [(c, r) for u in self.t_keys for r, row in self._rho[u].rows() for c in row]
        self._mblock = _union_find(self.module.dim, medges)
        self._qblocks = sorted(set(self._qblock))
        self._wedges: Dict[Tuple[int, FrozenSet], List[WedgeBasisIndex]] = {}
        self._cochains: Dict[int, CochainSpace] = {}
        self._vars: Dict[int, Tuple[List[Var], Dict[Var, int]]] = {}
        self._diffs: Dict[int, DifferentialMatrix] = {}
        self._reach_cache = None

    @classmethod
    def from_pair(cls, n: int, pair: str = "g:g0", module: Optional[Supermodule] = None,
                  limit: int = DEFAULT_LIMIT) -> "RelativeComplex":
        if pair not in PAIRS:
            raise KeyError(f"unknown pair {pair!r}; expected one of {sorted(PAIRS)}")
        g, t = PAIRS[pair]
        return cls(n, subalgebra(n, g).keys, subalgebra(n, t).keys, module, limit, pair)

    def __repr__(self) -> str:
        return f"RelativeComplex({self.name or 'g:t'}, n={self.n}, dim g/t={len(self.Q)}, M={self.module.label})"

    # set-up ---------------------------------------------------------------------

    def _fw(self, w) -> Tuple:
        return tuple(Fraction(w[i]) for i in self.filter)

    def _generators(self) -> List[Key]:
        """Off-diagonal elements of t that generate it together with its torus part."""
        if not self.t_off:
            return []
        alg = self.alg
        diag = [k for k in self.t_keys if k.I == (k.i,)]
        height = lambda k: sum(abs(c) for c in k.weight(self.n))
        chosen: List[Key] = []
        target = len(self.t_keys)
        for k in sorted(self.t_off, key=lambda k: (height(k), k)):
            gens = [alg.element(b.I, b.i) for b in diag + chosen]
            if gens:
                sub = span_of(gens).subspace()
                if sub.contains({alg.index[k]: 1}):
                    continue
            chosen.append(k)
            if span_of([alg.element(b.I, b.i) for b in diag + chosen]).dim == target:
                break
        return chosen

    def _ad_image(self, u: Key) -> Dict[int, Dict[int, Fraction]]:
        """ad(u) on g/t in Q positions, t components dropped."""
        out = {}
        for j, q in enumerate(self.Q):
            img = {}
            for c, v in self.alg.bracket_basis(u, q).items():
                i = self.qpos.get(c)
                if i is not None:
                    img[i] = Fraction(v)
            if img:
                out[j] = img
        return out

    # wedge enumeration ------------------------------------------------------------

    def _reach(self):
        """reach[pos][k]: filter weights reachable from the canonical suffix with k factors."""
        if self._reach_cache is not None:
            return self._reach_cache
        order = sorted(range(len(self.Q)), key=lambda i: (self.qpar[i], i))
        self._order = order
        self._reach_cache = {}
        return self._reach_cache

    def _reach_set(self, pos: int, k: int) -> FrozenSet:
        cache = self._reach()
        key = (pos, k)
        hit = cache.get(key)
        if hit is not None:
            return hit
        zero = tuple(Fraction(0) for _ in self.filter)
        if k == 0:
            res = frozenset([zero])
        elif pos == len(self._order):
            res = frozenset()
        else:
            q = self._order[pos]
            w = self.qfw[q]
            top = 1 if self.qpar[q] == 0 else k
            acc = set()
            for m in range(0, top + 1):
                for s in self._reach_set(pos + 1, k - m):
                    acc.add(tuple(a + m * b for a, b in zip(s, w)))
            res = frozenset(acc)
        cache[key] = res
        return res

    def wedges(self, p: int, targets: Iterable[Tuple]) -> List[WedgeBasisIndex]:
        """Canonical size-p wedge monomials of g/t whose filter weight lies in ``targets``."""
        targets = frozenset(targets)
        key = (p, targets)
        hit = self._wedges.get(key)
        if hit is not None:
            return hit
        self._reach()
        order = self._order
        out: List[WedgeBasisIndex] = []
        chosen: List[int] = []

        def ok(pos, k, partial):
            rs = self._reach_set(pos, k)
            return any(tuple(t - s for t, s in zip(tgt, partial)) in rs for tgt in targets)

        def rec(pos, k, partial):
            if k == 0:
                if partial in targets:
                    ev = tuple(sorted(i for i in chosen if self.qpar[i] == 0))
                    od = tuple(sorted(i for i in chosen if self.qpar[i] == 1))
                    out.append(WedgeBasisIndex(ev, od))
                    if len(out) > self.limit:
                        raise ResourceLimitExceeded(
                            f"more than {self.limit} wedge monomials in degree {p} for {self.name or 'pair'}")
                return
            if pos == len(order):
                return
            q = order[pos]
            w = self.qfw[q]
            top = 1 if self.qpar[q] == 0 else k
            for m in range(top, -1, -1):
                nxt = tuple(a + m * b for a, b in zip(partial, w))
                if not ok(pos + 1, k - m, nxt):
                    continue
                chosen.extend([q] * m)
                rec(pos + 1, k - m, nxt)
                if m:
                    del chosen[-m:]

        zero = tuple(Fraction(0) for _ in self.filter)
        if ok(0, p, zero):
            rec(0, p, zero)
        out.sort()
        self._wedges[key] = out
        return out

    def _wparity(self, w: WedgeBasisIndex) -> int:
        return sum(self.qpar[i] for i in w.factors()) % 2

    def _wfw(self, w: WedgeBasisIndex) -> Tuple:
        acc = [Fraction(0)] * len(self.filter)
        for i in w.factors():
            for t, c in enumerate(self.qfw[i]):
                acc[t] += c
        return tuple(acc)

    def variables(self, p: int) -> Tuple[List[Var], Dict[Var, int]]:
        hit = self._vars.get(p)
        if hit is not None:
            return hit
        by_fw: Dict[Tuple, List[int]] = {}
        for m, fw in enumerate(self.mfw):
            by_fw.setdefault(fw, []).append(m)
        vs: List[Var] = []
        for w in self.wedges(p, by_fw.keys()):
            for m in by_fw[self._wfw(w)]:
                vs.append((w, m))
        idx = {v: k for k, v in enumerate(vs)}
        self._vars[p] = (vs, idx)
        return vs, idx

    # cochains -------------------------------------------------------------------------

    def _group(self, var: Var) -> Tuple:
        w, m = var
        counts = [0] * len(self._qblocks)
        pos = {b: k for k, b in enumerate(self._qblocks)}
        for i in w.factors():
            counts[pos[self._qblock[i]]] += 1
        return tuple(counts), self._mblock[m], (self._wparity(w) + self.mpar[m]) % 2

    def equivariance_equations(self, p: int) -> SparseMatrix:
        """Rows (u, w', m') of (uφ)(w')_{m'} for the off-diagonal generators u of t."""
        vs, idx = self.variables(p)
        rows: List[Row] = []
        for u in self.generators:
            alpha = self._fw(u.weight(self.n))
            rho = self._rho[u]
            targets = {tuple(a - b for a, b in zip(fw, alpha)) for fw in self.mfw}
            by_fw: Dict[Tuple, List[int]] = {}
            for m, fw in enumerate(self.mfw):
                by_fw.setdefault(tuple(a - b for a, b in zip(fw, alpha)), []).append(m)
            for w2 in self.wedges(p, targets):
                img = wedge_act(self.qspace, self._ad[u], u.parity, w2)
                wpar2 = self._wparity(w2)
                for m2 in by_fw.get(self._wfw(w2), ()):
                    row: Row = {}
                    for m, c in rho.row(m2).items():
                        k = idx[(w2, m)]
                        row[k] = row.get(k, 0) + c
                    for w, c in img.items():
                        sign = -1 if (u.parity * (wpar2 + self.mpar[m2])) % 2 else 1
                        k = idx[(w, m2)]
                        row[k] = row.get(k, 0) - sign * c
                    row = {k: v for k, v in row.items() if v}
                    if row:
                        rows.append(row)
        return SparseMatrix.from_rows(rows, len(vs))

    def cochains(self, p: int) -> CochainSpace:
        hit = self._cochains.get(p)
        if hit is not None:
            return hit
        vs, idx = self.variables(p)
        eqs = self.equivariance_equations(p)
        groups: Dict[Tuple, List[int]] = {}
        for k, v in enumerate(vs):
            groups.setdefault(self._group(v), []).append(k)
        col_group = {}
        for g, cols in groups.items():
            for c in cols:
                col_group[c] = g
        row_groups: Dict[Tuple, List[Row]] = {g: [] for g in groups}
        for _, row in eqs.rows():
            gs = {col_group[c] for c in row}
            if len(gs) != 1:
                raise AssertionError("equivariance equation mixes blocks")
            row_groups[gs.pop()].append(row)
        basis: List[Row] = []
        for g in sorted(groups):
            cols = groups[g]
            local = {c: j for j, c in enumerate(cols)}
            eq_rows = [{local[c]: v for c, v in row.items()} for row in row_groups[g]]
            ker = kernel(SparseMatrix.from_rows(eq_rows, len(cols)))
            for vec in ker.vectors():
                basis.append({cols[j]: v for j, v in vec.items()})
        cs = CochainSpace(p, vs, idx, basis)
        self._cochains[p] = cs
        return cs

    # differential -----------------------------------------------------------------------

    def differential_operator(self, p: int) -> SparseMatrix:
        """dφ on weight-filtered pairs of degree p+1 as a map from degree-p pair values."""
        src_vars, src_idx = self.variables(p)
        dst_vars, _ = self.variables(p + 1)
        by_w: Dict[WedgeBasisIndex, List[int]] = {}
        for r, (W, m) in enumerate(dst_vars):
            by_w.setdefault(W, []).append(r)
        rows: Dict[int, Row] = {}
        for W, rlist in by_w.items():
            xs = W.factors()
            par = [self.qpar[i] for i in xs]
            pre = [0]
            for b in par:
                pre.append(pre[-1] + b)
            bterms: Dict[WedgeBasisIndex, Fraction] = {}
            for a, b in itertools.combinations(range(len(xs)), 2):
                i, j = a + 1, b + 1
                sigma = i + j + par[a] * pre[a] + par[b] * (pre[b] + par[a])
                s0 = -1 if sigma % 2 else 1
                rest = [x for k, x in enumerate(xs) if k != a and k != b]
                for c, v in self.alg.bracket_basis(self.Q[xs[a]], self.Q[xs[b]]).items():
                    q = self.qpos.get(c)
                    if q is None:
                        continue
                    res = normalize_positions(self.qspace, [q] + rest)
                    if res is None:
                        continue
                    sg, w = res
                    bterms[w] = bterms.get(w, 0) + s0 * sg * v
            aterms = []
            for a in range(len(xs)):
                i = a + 1
                rest = xs[:a] + xs[a + 1:]
                res = normalize_positions(self.qspace, rest)
                _, what = res
                base = i + 1 + par[a] * pre[a]
                aterms.append((a, what, base, self._wparity(what)))
            for r in rlist:
                m = dst_vars[r][1]
                row = rows.setdefault(r, {})
                for w, v in bterms.items():
                    if v:
                        k = src_idx[(w, m)]
                        row[k] = row.get(k, 0) + v
                for a, what, base, wpar in aterms:
                    rho = self._rho[self.Q[xs[a]]]
                    for m2, c in rho.row(m).items():
                        phibar = (wpar + self.mpar[m2]) % 2
                        gamma = base + par[a] * phibar
                        k = src_idx[(what, m2)]
                        row[k] = row.get(k, 0) + (-c if gamma % 2 else c)
        return SparseMatrix(len(dst_vars), len(src_vars), rows)

    def differential(self, p: int) -> DifferentialMatrix:
        hit = self._diffs.get(p)
        if hit is not None:
            return hit
        if p < 0:
            dm = DifferentialMatrix(p, SparseMatrix.zero(len(self.variables(0)[0]), 0))
        else:
            dm = DifferentialMatrix(p, self.differential_operator(p) @ self.cochains(p).matrix())
        self._diffs[p] = dm
        return dm

    def d_squared_zero(self, p: int) -> bool:
        """d^{p+1} ∘ d^p = 0 on C^p."""
        img = self.differential(p).matrix
        return (self.differential_operator(p + 1) @ img).is_zero()

    def cohomology_dim(self, p: int) -> int:
        dim = self.cochains(p).dim
        r_out = self.differential(p).rank
        r_in = self.differential(p - 1).rank if p > 0 else 0
        return dim - r_out - r_in


def cohomology_dim(n: int, pair: str, p: int, module: Optional[Supermodule] = None,
                   limit: int = DEFAULT_LIMIT) -> int:
    return RelativeComplex.from_pair(n, pair, module, limit).cohomology_dim(p)


# Hilbert tables ------------------------------------------------------------------------------

@dataclass
class HilbertTable:
    n: int
    pair: str
    entries: Dict[int, int]
    cutoff: int
    truncated: List[int] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"n": self.n, "pair": self.pair, "dims": {str(p): d for p, d in sorted(self.entries.items())}}
        if self.truncated:
            out["truncated"] = list(self.truncated)
        return out

    def sequence(self) -> List[Optional[int]]:
        return [self.entries.get(p) for p in range(self.cutoff + 1)]

    def to_text(self) -> str:
        ps = list(range(self.cutoff + 1))
        cells = [str(self.entries[p]) if p in self.entries else "trunc" for p in ps]
        width = max(max(len(c) for c in cells), max(len(str(p)) for p in ps))
        head = "p   | " + " ".join(str(p).rjust(width) for p in ps)
        body = "dim | " + " ".join(c.rjust(width) for c in cells)
        return f"n={self.n} pair={self.pair}\n{head}\n{body}"


def expected_g_series(n: int, max_degree: int) -> List[int]:
    """Coefficients of ∏_{k=1}^{n-1} (1 - t^{2k})^{-1}."""
    coeffs = [1] + [0] * max_degree
    for k in range(1, n):
        step = 2 * k
        for d in range(step, max_degree + 1):
            coeffs[d] += coeffs[d - step]
    return coeffs


def expected_f_series(n: int, max_degree: int) -> List[int]:
    return [comb(p // 2 + n - 2, n - 2) if p % 2 == 0 else 0 for p in range(max_degree + 1)]


def cohomology_table(n: int, pair: str = "g:g0", max_degree: int = 8, module: Optional[Supermodule] = None,
                     limit: int = DEFAULT_LIMIT) -> HilbertTable:
    cx = RelativeComplex.from_pair(n, pair, module, limit)
    table = HilbertTable(n, pair, {}, max_degree)
    for p in range(max_degree + 1):
        try:
            table.entries[p] = cx.cohomology_dim(p)
        except ResourceLimitExceeded:
            table.truncated = list(range(p, max_degree + 1))
            break
    return table


def f_cohomology_table(n: int, max_degree: int = 8, limit: int = DEFAULT_LIMIT) -> HilbertTable:
    return cohomology_table(n, "f:f0", max_degree, limit=limit)


# invariants of Λ_s^p(V*) under g_0, computed on the dual space directly ---------------------

def _g0_dual_space(n: int, keys: Sequence[Key]):
    alg = build_wn(n)
    V = alg.as_superspace(keys)
    Vd = dual(V)
    pos = {k: i for i, k in enumerate(keys)}
    actions = {}
    for u in alg.component(0):
        # ρ*(u)_{l,k} = -(-1)^{|u||k|} ρ(u)_{k,l}
        img: Dict[int, Dict[int, Fraction]] = {}
        for l, q in enumerate(keys):
            for c, v in alg.bracket_basis(u, q).items():
                k = pos.get(c)
                if k is None:
                    raise ValueError(f"{q} -> {c}: span is not g_0-stable")
                sign = -1 if (u.parity * keys[k].parity) % 2 else 1
                img.setdefault(k, {})[l] = Fraction(-sign * v)
        actions[u] = img
    return Vd, actions


def invariant_dim(n: int, keys: Sequence[Key], p: int, limit: int = DEFAULT_LIMIT) -> int:
    """dim Λ_s^p(span(keys)*)^{g_0}; weight zero is imposed before the g_0 kernel."""
    Vd, actions = _g0_dual_space(n, keys)
    wts = Vd.weights()
    zero: List[WedgeBasisIndex] = []
    evens, odds = Vd.even_indices(), Vd.odd_indices()
    for k in range(0, min(len(evens), p) + 1):
        for e in itertools.combinations(evens, k):
            for o in itertools.combinations_with_replacement(odds, p - k):
                if all(sum(wts[i][t] for i in e + o) == 0 for t in range(n)):
                    zero.append(WedgeBasisIndex(e, o))
                    if len(zero) > limit:
                        raise ResourceLimitExceeded(f"more than {limit} weight-zero monomials in degree {p}")
    if not zero:
        return 0
    col = {w: j for j, w in enumerate(zero)}
    row_index: Dict[Tuple, int] = {}
    rows: Dict[int, Row] = {}
    for u, img in actions.items():
        if u.I == (u.i,):
            continue
        for w, j in col.items():
            for w2, v in wedge_act(Vd, img, u.parity, w).items():
                r = row_index.setdefault((u, w2), len(row_index))
                rows.setdefault(r, {})[j] = v
    m = SparseMatrix(len(row_index), len(zero), rows)
    return len(zero) - rank(m)


def truncated_keys(n: int) -> List[Key]:
    alg = build_wn(n)
    return alg.component(-1) + alg.component(1)


def quotient_keys(n: int) -> List[Key]:
    alg = build_wn(n)
    return [b for b in alg.basis if b.z_degree != 0]


def invariant_hilbert_table(n: int, max_degree: int = 8, full_quotient: bool = False,
                            limit: int = DEFAULT_LIMIT) -> HilbertTable:
    keys = quotient_keys(n) if full_quotient else truncated_keys(n)
    table = HilbertTable(n, "g/g0" if full_quotient else "g-1+g1", {}, max_degree)
    for p in range(max_degree + 1):
        try:
            table.entries[p] = invariant_dim(n, keys, p, limit)
        except ResourceLimitExceeded:
            table.truncated = list(range(p, max_degree + 1))
            break
    return table


@dataclass
class CutReport:
    n: int
    p: int
    full: Optional[int]
    truncated: Optional[int]
    status: str

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {"n": self.n, "p": self.p, "full_quotient": self.full, "g-1+g1": self.truncated,
                "status": self.status}


def verify_cut_theorem(n: int, p: int, limit: int = DEFAULT_LIMIT) -> CutReport:
    try:
        a = invariant_dim(n, quotient_keys(n), p, limit)
        b = invariant_dim(n, truncated_keys(n), p, limit)
    except ResourceLimitExceeded:
        return CutReport(n, p, None, None, "truncated")
    return CutReport(n, p, a, b, "pass" if a == b else "fail")


# restriction to the detecting subalgebra ------------------------------------------------------

@dataclass
class RestrictionReport:
    n: int
    p: int
    source_dim: int
    target_dim: int
    image_dim: int
    invariant_dim: int
    injective: bool
    image_is_invariants: bool
    differentials_zero: bool
    matrix: SparseMatrix = field(repr=False)

    @property
    def passed(self) -> bool:
        return self.injective and self.image_is_invariants and self.differentials_zero

    def to_json(self) -> dict:
        return {"n": self.n, "p": self.p, "source_dim": self.source_dim, "target_dim": self.target_dim,
                "image_dim": self.image_dim, "invariant_dim": self.invariant_dim, "injective": self.injective,
                "image_is_invariants": self.image_is_invariants, "differentials_zero": self.differentials_zero}


def _transposition_action(F: RelativeComplex, p: int, i: int, j: int) -> SparseMatrix:
    """Swap of indices i, j ≥ 2 on degree-p cochain coordinates of (f, f_0; C)."""
    vs, idx = F.variables(p)

    def swap(t):
        return j if t == i else (i if t == j else t)

    qmap = []
    for k in F.Q:
        img = WBasisElement.make(tuple(swap(a) for a in k.I), swap(k.i))
        qmap.append(F.qpos[img])
    rows: Dict[int, Row] = {}
    for c, (w, m) in enumerate(vs):
        sg, w2 = normalize_positions(F.qspace, [qmap[a] for a in w.factors()])
        rows.setdefault(idx[(w2, m)], {})[c] = Fraction(sg)
    return SparseMatrix(len(vs), len(vs), rows)


def restriction_map(n: int, p: int, limit: int = DEFAULT_LIMIT,
                    complexes: Optional[Tuple[RelativeComplex, RelativeComplex]] = None) -> RestrictionReport:
    """Pull back C^p(g, g_0; C) along Λ_s^p(f/f_0) → Λ_s^p(g/g_0)."""
    G, F = complexes or (RelativeComplex.from_pair(n, "g:g0", limit=limit),
                         RelativeComplex.from_pair(n, "f:f0", limit=limit))
    CG, CF = G.cochains(p), F.cochains(p)
    dz = all(cx.differential(q).is_zero() for cx in (G, F) for q in (p - 1, p) if q >= 0)
    to_g = [G.qpos[k] for k in F.Q]
    rows: Dict[int, Row] = {}
    for r, (w, m) in enumerate(CF.variables):
        sg, wg = normalize_positions(G.qspace, [to_g[a] for a in w.factors()])
        gi = CG.index.get((wg, m))
        if gi is None:
            continue
        for k, vec in enumerate(CG.basis):
            v = vec.get(gi)
            if v:
                rows.setdefault(r, {})[k] = sg * v
    R = SparseMatrix(len(CF.variables), CG.dim, rows)
    image = Subspace(R.nrows, R.transpose())
    target = Subspace.span(CF.basis, len(CF.variables))
    ops = [_transposition_action(F, p, i, i + 1) - SparseMatrix.identity(len(CF.variables))
           for i in range(2, n)]
    inv = kernel(vstack(ops, len(CF.variables))) if ops else Subspace.full(len(CF.variables))
    inv = subspace_intersect(inv, target)
    return RestrictionReport(n, p, CG.dim, CF.dim, image.dim, inv.dim, image.dim == CG.dim, image == inv, dz, R)
