"""Finite-dimensional supermodules for W(n): simple gl(n)-modules, Kac modules,
their simple quotients, atypicality, and projectivity over odd elements of f̃_1.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .linalg import (Row, SparseMatrix, Subspace, kernel, kron, rank, subspace_intersect, vstack)
from .superspace import BasisVector, SuperSpace, dual as dual_space
from .wn import WBasisElement, WElement, build_wn, lambda_mul

Key = WBasisElement


class RelationError(ValueError):
    pass


class NotDominant(ValueError):
    pass


class UnsupportedInput(ValueError):
    pass


# weights ------------------------------------------------------------------------

@dataclass(frozen=True)
class Weight:
    components: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(Fraction(c) for c in self.components))

    @classmethod
    def parse(cls, text: str, n: Optional[int] = None) -> "Weight":
        try:
            comps = tuple(Fraction(t.strip()) for t in text.split(",") if t.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed weight {text!r}") from exc
        if not comps or (n is not None and len(comps) != n):
            raise ValueError(f"weight {text!r} needs {n} components")
        return cls(comps)

    @property
    def n(self) -> int:
        return len(self.components)

    def is_dominant_integral(self) -> bool:
        c = self.components
        return all(x.denominator == 1 for x in c) and all(c[i] >= c[i + 1] for i in range(len(c) - 1))

    def ints(self) -> Tuple[int, ...]:
        if any(x.denominator != 1 for x in self.components):
            raise NotDominant(f"{self} is not integral")
        return tuple(int(x) for x in self.components)

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.components)


def weyl_dimension(lam: Sequence[int]) -> int:
    n = len(lam)
    num = prod(lam[i] - lam[j] + j - i for i in range(n) for j in range(i + 1, n))
    den = prod(j - i for i in range(n) for j in range(i + 1, n))
    return num // den


# supermodules -------------------------------------------------------------------

class Supermodule:
    """A representation ρ of (a basis-spanned subalgebra of) W(n) on a weighted super space.

    ``actions`` maps algebra basis elements to matrices; elements of ``keys`` with
    no entry act by zero.
    """

    def __init__(self, n: int, space: SuperSpace, actions: Mapping[Key, SparseMatrix], tag: str = "generic",
                 keys: Optional[Iterable[Key]] = None, check: bool = True, label: str = ""):
        self.n = n
        self.space = space
        self.keys: Tuple[Key, ...] = tuple(sorted(keys)) if keys is not None else tuple(build_wn(n).basis)
        ks = set(self.keys)
        self.actions: Dict[Key, SparseMatrix] = {k: v for k, v in actions.items() if k in ks}
        self.tag = tag
        self.label = label or tag
        d = space.dim
        for k, m in self.actions.items():
            if m.shape != (d, d):
                raise RelationError(f"action of {k} has shape {m.shape}, expected {(d, d)}")
        if check:
            self.check()

    @property
    def dim(self) -> int:
        return self.space.dim

    def __repr__(self) -> str:
        return f"Supermodule({self.label}, n={self.n}, dim={self.dim})"

    def act(self, k: Key) -> SparseMatrix:
        m = self.actions.get(k)
        if m is None:
            if k not in set(self.keys):
                raise KeyError(f"{k} does not act on {self.label}")
            return SparseMatrix.zero(self.dim, self.dim)
        return m

    def act_element(self, x: WElement) -> SparseMatrix:
        out = SparseMatrix.zero(self.dim, self.dim)
        for k, v in x.coords.items():
            out = out + self.act(k).scale(v)
        return out

    def weights(self) -> List[Tuple[Fraction, ...]]:
        return [tuple(Fraction(c) for c in w) for w in self.space.weights()]

    def weight_multiplicities(self) -> Dict[Tuple[Fraction, ...], int]:
        out: Dict[Tuple[Fraction, ...], int] = {}
        for w in self.weights():
            out[w] = out.get(w, 0) + 1
        return out

    def weight_indices(self, mu: Sequence) -> List[int]:
        mu = tuple(Fraction(c) for c in mu)
        return [i for i, w in enumerate(self.weights()) if w == mu]

    # checks -------------------------------------------------------------------

    def relation_failures(self, limit: int = 1) -> List[str]:
        """Pairs (x, y) with ρ([x,y]) ≠ [ρx, ρy]; also grading and weight violations."""
        alg = build_wn(self.n)
        ks = set(self.keys)
        out: List[str] = []
        wts = self.weights()
        par = [b.parity for b in self.space.basis]
        for k in self.keys:
            m = self.act(k)
            wk = k.weight(self.n)
            diag = len(k.I) == 1 and k.I[0] == k.i
            for r, row in m.rows():
                for c, v in row.items():
                    if par[r] != (par[c] + k.parity) % 2:
                        out.append(f"{k} breaks the Z2-grading at ({r},{c})")
                    if any(wts[r][t] != wts[c][t] + wk[t] for t in range(self.n)):
                        out.append(f"{k} does not shift weights by {wk} at ({r},{c})")
                    if diag and (r != c or v != wts[c][k.i - 1]):
                        out.append(f"{k} is not diagonal by weight at ({r},{c})")
                    if len(out) >= limit:
                        return out
            if diag:
                for c in range(self.dim):
                    if wts[c][k.i - 1] != m[c, c]:
                        out.append(f"{k} does not act by the weight on basis vector {c}")
                        if len(out) >= limit:
                            return out
        for a in self.keys:
            for b in self.keys:
                if b < a:
                    continue
                br = alg.bracket_basis(a, b)
                if any(c not in ks for c in br):
                    continue
                lhs = SparseMatrix.zero(self.dim, self.dim)
                for c, v in br.items():
                    lhs = lhs + self.act(c).scale(v)
                sign = (-1) ** (a.parity * b.parity)
                rhs = self.act(a) @ self.act(b) - (self.act(b) @ self.act(a)).scale(sign)
                if lhs != rhs:
                    out.append(f"rho([{a},{b}]) != [rho({a}), rho({b})]")
                    if len(out) >= limit:
                        return out
        return out

    def check(self) -> None:
        bad = self.relation_failures()
        if bad:
            raise RelationError(f"{self.label}: {bad[0]}")

    # constructions ------------------------------------------------------------

    def restrict(self, keys: Iterable[Key], label: str = "") -> "Supermodule":
        keys = tuple(keys)
        missing = [k for k in keys if k not in set(self.keys)]
        if missing:
            raise KeyError(f"{missing[0]} does not act on {self.label}")
        return Supermodule(self.n, self.space, self.actions, self.tag, keys, check=False,
                           label=label or f"{self.label}|res")

    def is_submodule(self, sub: Subspace) -> bool:
        return all(sub.contains(self.act(k).apply(v)) for k in self.actions for v in sub.vectors())

    def _graded_pieces(self, sub: Subspace) -> List[Tuple[List[int], Subspace]]:
        """``sub`` split along (weight, parity) coordinate blocks; raises if not graded."""
        groups: Dict[tuple, List[int]] = {}
        for i, b in enumerate(self.space.basis):
            groups.setdefault((b.weight, b.parity), []).append(i)
        pieces = []
        total = 0
        for idx in sorted(groups.values()):
            coord = Subspace.span([{i: 1} for i in idx], self.dim)
            piece = subspace_intersect(sub, coord)
            if piece.dim:
                pieces.append((idx, piece))
                total += piece.dim
        if total != sub.dim:
            raise UnsupportedInput("subspace is not spanned by weight vectors")
        return pieces

    def submodule(self, sub: Subspace, label: str = "") -> "Supermodule":
        if not self.is_submodule(sub):
            raise RelationError("subspace is not stable under the action")
        pieces = self._graded_pieces(sub)
        vecs, offsets, block_of = [], [], {}
        for g, (idx, piece) in enumerate(pieces):
            offsets.append(len(vecs))
            vecs.extend(piece.vectors())
            for i in idx:
                block_of[i] = g
        space = SuperSpace(tuple(
            BasisVector(f"s{j}", self.space.basis[min(v)].parity, None, self.space.basis[min(v)].weight)
            for j, v in enumerate(vecs)))
        actions = {}
        for k, m in self.actions.items():
            rows: Dict[int, Row] = {}
            for j, v in enumerate(vecs):
                img = m.apply(v)
                split: Dict[int, Row] = {}
                for i, c in img.items():
                    split.setdefault(block_of[i], {})[i] = c
                for g, part in split.items():
                    for r, c in enumerate(pieces[g][1].coordinates(part)):
                        if c:
                            rows.setdefault(offsets[g] + r, {})[j] = c
            actions[k] = SparseMatrix(len(vecs), len(vecs), rows)
        return Supermodule(self.n, space, actions, "generic", self.keys, label=label or f"sub({self.label})")

    def quotient(self, sub: Subspace, label: str = "", tag: str = "generic") -> "Supermodule":
        """M / sub on the coordinate complement of the rref pivots."""
        if not self.is_submodule(sub):
            raise RelationError("subspace is not stable under the action")
        piv = set(sub.pivots())
        keep = [i for i in range(self.dim) if i not in piv]
        pos = {i: j for j, i in enumerate(keep)}
        space = SuperSpace(tuple(self.space.basis[i] for i in keep))
        actions = {}
        for k, m in self.actions.items():
            rows: Dict[int, Row] = {}
            for j, i in enumerate(keep):
                img = sub.reduce(m.apply({i: Fraction(1)}))
                for r, v in img.items():
                    rows.setdefault(pos[r], {})[j] = v
            actions[k] = SparseMatrix(len(keep), len(keep), rows)
        return Supermodule(self.n, space, actions, tag, self.keys, label=label or f"{self.label}/sub")

    def tensor(self, other: "Supermodule", label: str = "") -> "Supermodule":
        if self.n != other.n:
            raise ValueError("tensor factors must have the same rank")
        keys = [k for k in self.keys if k in set(other.keys)]
        basis = []
        for a in self.space.basis:
            for b in other.space.basis:
                w = tuple(x + y for x, y in zip(a.weight, b.weight))
                basis.append(BasisVector(f"{a.name}⊗{b.name}", (a.parity + b.parity) % 2, None, w))
        space = SuperSpace(tuple(basis))
        I2 = SparseMatrix.identity(other.dim)
        actions = {}
        for k in keys:
            s = SparseMatrix.diagonal([(-1) ** (k.parity * b.parity) for b in self.space.basis])
            actions[k] = kron(self.act(k), I2) + kron(s, other.act(k))
        return Supermodule(self.n, space, actions, "generic", keys,
                           label=label or f"({self.label})⊗({other.label})")

    def dual(self, label: str = "") -> "Supermodule":
        space = dual_space(self.space)
        par = [b.parity for b in self.space.basis]
        actions = {}
        for k, m in self.actions.items():
            rows: Dict[int, Row] = {}
            for r, row in m.rows():
                for c, v in row.items():
                    rows.setdefault(c, {})[r] = -((-1) ** (k.parity * par[r])) * v
            actions[k] = SparseMatrix(self.dim, self.dim, rows)
        return Supermodule(self.n, space, actions, "generic", self.keys, label=label or f"({self.label})*")


def trivial_module(n: int, keys: Optional[Iterable[Key]] = None) -> Supermodule:
    space = SuperSpace((BasisVector("1", 0, 0, (0,) * n),))
    return Supermodule(n, space, {}, "trivial", keys, label="C")


def adjoint_module(n: int, keys: Optional[Iterable[Key]] = None) -> Supermodule:
    """Adjoint of W(n), optionally restricted to a basis-spanned subalgebra acting on all of W(n)."""
    alg = build_wn(n)
    space = alg.as_superspace()
    keys = alg.basis if keys is None else list(keys)
    actions = {k: alg.ad_matrix(k) for k in keys}
    return Supermodule(n, space, actions, "adjoint", keys, label=f"ad W({n})")


def own_adjoint(n: int, keys: Sequence[Key]) -> Supermodule:
    """Adjoint of the basis-spanned subalgebra span(keys) on itself."""
    alg = build_wn(n)
    keys = sorted(keys)
    space = alg.as_superspace(keys)
    actions = {k: alg.ad_matrix(k, keys) for k in keys}
    return Supermodule(n, space, actions, "adjoint", keys, label="ad")


# simple gl(n)-modules -----------------------------------------------------------

def _e_action(i: int, j: int, t: Tuple[int, ...]) -> List[Tuple[int, ...]]:
    """e_ij on a pure tensor e_{t_1}⊗…⊗e_{t_d} (indices 1-based)."""
    return [t[:k] + (i,) + t[k + 1:] for k, s in enumerate(t) if s == j]


def _apply_e(i: int, j: int, vec: Mapping[Tuple[int, ...], Fraction]) -> Dict[Tuple[int, ...], Fraction]:
    out: Dict[Tuple[int, ...], Fraction] = {}
    for t, c in vec.items():
        for u in _e_action(i, j, t):
            v = out.get(u, 0) + c
            if v:
                out[u] = v
            else:
                del out[u]
    return out


class _TensorWeightSpaces:
    """Lazy coordinate index of V^{⊗d} split by weight."""

    def __init__(self, n: int):
        self.n = n
        self.index: Dict[Tuple[int, ...], Dict[Tuple[int, ...], int]] = {}

    def weight(self, t: Tuple[int, ...]) -> Tuple[int, ...]:
        w = [0] * self.n
        for s in t:
            w[s - 1] += 1
        return tuple(w)

    def coords(self, wt: Tuple[int, ...]) -> Dict[Tuple[int, ...], int]:
        idx = self.index.get(wt)
        if idx is None:
            letters = [s for s in range(1, self.n + 1) for _ in range(wt[s - 1])]
            perms = sorted(set(itertools.permutations(letters)))
            idx = self.index[wt] = {p: k for k, p in enumerate(perms)}
        return idx

    def to_row(self, wt, vec) -> Row:
        idx = self.coords(wt)
        return {idx[t]: c for t, c in vec.items()}

    def from_row(self, wt, row) -> Dict[Tuple[int, ...], Fraction]:
        inv = {k: t for t, k in self.coords(wt).items()}
        return {inv[k]: c for k, c in row.items()}


@dataclass
class GlModule:
    """Matrices of the g_0 ≅ gl(n) action on L_0(λ) in a weight basis."""

    lam: Tuple[int, ...]
    weights: List[Tuple[int, ...]]
    e: Dict[Tuple[int, int], SparseMatrix]

    @property
    def dim(self) -> int:
        return len(self.weights)


def simple_gl_data(lam: Sequence[int]) -> GlModule:
    """L_0(λ) via the highest-weight vector of weight λ - λ_n(1,…,1) inside V^{⊗d}."""
    w = Weight(tuple(lam))
    if not w.is_dominant_integral():
        raise NotDominant(f"{w} is not dominant integral")
    lam = w.ints()
    n = len(lam)
    k = lam[-1]
    mu = tuple(x - k for x in lam)
    T = _TensorWeightSpaces(n)
    mu_idx = T.coords(mu)
    # highest-weight vectors: kernel of raising operators on the μ-space
    ops = []
    for i in range(1, n):
        tgt = tuple(m + (1 if s == i - 1 else -1 if s == i else 0) for s, m in enumerate(mu))
        if min(tgt) < 0:
            continue
        tidx = T.coords(tgt)
        rows: Dict[int, Row] = {}
        for t, col in mu_idx.items():
            for u in _e_action(i, i + 1, t):
                r = rows.setdefault(tidx[u], {})
                r[col] = r.get(col, 0) + 1
        ops.append(SparseMatrix(len(tidx), len(mu_idx), rows))
    hw = kernel(vstack(ops, len(mu_idx))) if ops else Subspace.full(len(mu_idx))
    if hw.dim == 0:
        raise RuntimeError(f"no highest-weight vector of weight {mu}")
    v0 = T.from_row(mu, hw.vectors()[0])
    # close under lowering operators, weight space by weight space
    spans: Dict[Tuple[int, ...], Subspace] = {mu: Subspace.span([T.to_row(mu, v0)], len(mu_idx))}
    queue = [(mu, v0)]
    while queue:
        wt, vec = queue.pop()
        for i in range(1, n):
            img = _apply_e(i + 1, i, vec)
            if not img:
                continue
            tw = T.weight(next(iter(img)))
            row = T.to_row(tw, img)
            cur = spans.get(tw) or Subspace.zero(len(T.coords(tw)))
            if cur.contains(row):
                continue
            spans[tw] = Subspace(cur.ambient_dim, vstack([cur.basis, SparseMatrix.from_rows([row], cur.ambient_dim)]))
            queue.append((tw, img))
    order = sorted(spans, reverse=True)
    offsets, weights = {}, []
    for wt in order:
        offsets[wt] = len(weights)
        weights.extend([wt] * spans[wt].dim)
    d = len(weights)
    e: Dict[Tuple[int, int], SparseMatrix] = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            rows: Dict[int, Row] = {}
            for wt in order:
                for col_local, basis_row in enumerate(spans[wt].vectors()):
                    img = _apply_e(i, j, T.from_row(wt, basis_row))
                    col = offsets[wt] + col_local
                    if i == j:
                        img_shift = k
                        rows.setdefault(col, {})
                        rows[col][col] = rows[col].get(col, 0) + img_shift
                    if not img:
                        continue
                    tw = T.weight(next(iter(img)))
                    coords = spans[tw].coordinates(T.to_row(tw, img))
                    for r_local, v in enumerate(coords):
                        if v:
                            r = offsets[tw] + r_local
                            rows.setdefault(r, {})
                            rows[r][col] = rows[r].get(col, 0) + v
            e[(i, j)] = SparseMatrix(d, d, rows)
    shifted = [tuple(x + k for x in wt) for wt in weights]
    mod = GlModule(lam, shifted, e)
    if mod.dim != weyl_dimension(lam):
        raise RuntimeError(f"dim L_0({lam}) = {mod.dim}, Weyl formula gives {weyl_dimension(lam)}")
    return mod


def simple_gl_module(lam: Sequence[int], n: Optional[int] = None) -> Supermodule:
    """L_0(λ) as a supermodule for g_0 ⊂ W(n) (all vectors even)."""
    data = simple_gl_data(lam)
    n = len(data.lam)
    space = SuperSpace(tuple(BasisVector(f"v{k}", 0, 0, w) for k, w in enumerate(data.weights)))
    actions = {WBasisElement.make((i,), j): m for (i, j), m in data.e.items()}
    return Supermodule(n, space, actions, "gl-module", actions.keys(), label=f"L0({','.join(map(str, data.lam))})")


# Kac modules ----------------------------------------------------------------------

def _subsets(n: int) -> List[Tuple[int, ...]]:
    return [J for k in range(n + 1) for J in itertools.combinations(range(1, n + 1), k)]


def kac_module(lam: Sequence[int]) -> Supermodule:
    """K(λ) = Λ(g_{-1}) ⊗ L_0(λ) with basis ∂_J ⊗ v.

    u·(∂_{j1}∂_{J'} ⊗ v) = [u,∂_{j1}]·(∂_{J'}⊗v) + (-1)^{|u|} ∂_{j1}·(u·(∂_{J'}⊗v)),
    bottoming out at J = ∅ where g^+ kills, g_0 acts on L_0 and g_{-1} multiplies.
    """
    data = simple_gl_data(lam)
    n = len(data.lam)
    alg = build_wn(n)
    g0_mat = {WBasisElement.make((i,), j): m for (i, j), m in data.e.items()}
    subsets = _subsets(n)
    # ∂_J as a product in U(g_-1) ≅ Λ(g_-1): reuse the Λ(n) sign rule
    memo: Dict[Tuple[Key, Tuple[int, ...]], Dict[Tuple[int, ...], Dict[Optional[Key], Fraction]]] = {}

    def add(out, K, op, c):
        slot = out.setdefault(K, {})
        v = slot.get(op, 0) + c
        if v:
            slot[op] = v
        else:
            del slot[op]
            if not slot:
                del out[K]

    def act(u: Key, J: Tuple[int, ...]):
        key = (u, J)
        hit = memo.get(key)
        if hit is not None:
            return hit
        out: Dict[Tuple[int, ...], Dict[Optional[Key], Fraction]] = {}
        if not J:
            if u.z_degree == -1:
                add(out, (u.i,), None, Fraction(1))
            elif u.z_degree == 0:
                add(out, (), u, Fraction(1))
        else:
            j1, rest = J[0], J[1:]
            d1 = WBasisElement.make((), j1)
            for w, c in alg.bracket_basis(u, d1).items():
                for K, ops in act(w, rest).items():
                    for op, v in ops.items():
                        add(out, K, op, c * v)
            s = -1 if u.parity else 1
            for K, ops in act(u, rest).items():
                m = lambda_mul((j1,), K)
                if m is None:
                    continue
                sg, K2 = m
                for op, v in ops.items():
                    add(out, K2, op, s * sg * v)
        memo[key] = out
        return out

    d0 = data.dim
    pos = {J: k for k, J in enumerate(subsets)}
    basis = []
    for J in subsets:
        for a, wt in enumerate(data.weights):
            w = list(wt)
            for j in J:
                w[j - 1] -= 1
            name = ("d" + "".join(map(str, J)) if J else "1") + f"⊗v{a}"
            basis.append(BasisVector(name, len(J) % 2, -len(J), tuple(w)))
    space = SuperSpace(tuple(basis))
    D = len(basis)
    ident = SparseMatrix.identity(d0)
    actions = {}
    for u in alg.basis:
        rows: Dict[int, Row] = {}
        for J in subsets:
            for K, ops in act(u, J).items():
                op_mat = SparseMatrix.zero(d0, d0)
                for op, v in ops.items():
                    op_mat = op_mat + (ident if op is None else g0_mat[op]).scale(v)
                for r, row in op_mat.rows():
                    for c, v in row.items():
                        R, C = pos[K] * d0 + r, pos[J] * d0 + c
                        rows.setdefault(R, {})[C] = rows.get(R, {}).get(C, 0) + v
        actions[u] = SparseMatrix(D, D, rows)
    label = f"K({','.join(map(str, data.lam))})"
    return Supermodule(n, space, actions, "kac", alg.basis, label=label)


def maximal_proper_submodule(m: Supermodule, lam: Sequence) -> Subspace:
    """Largest submodule inside the sum of the weight spaces other than λ."""
    lam_idx = m.weight_indices(lam)
    if len(lam_idx) != 1:
        raise UnsupportedInput(f"weight {tuple(lam)} has multiplicity {len(lam_idx)}, expected 1")
    X = Subspace.span([{i: 1} for i in range(m.dim) if i != lam_idx[0]], m.dim)
    ops = [m.act(k) for k in m.keys if m.actions.get(k) is not None and not m.act(k).is_zero()]
    while True:
        A = kernel(X.basis) if X.dim else Subspace.full(m.dim)
        Amat = A.basis
        if Amat.nrows == 0:
            return X
        stacked = vstack([Amat] + [Amat @ op for op in ops], m.dim)
        nxt = kernel(stacked)
        if nxt.dim == X.dim:
            return nxt
        X = nxt


def highest_weight(m: Supermodule) -> Tuple[Fraction, ...]:
    return max(m.weights())


def simple_supermodule(lam: Sequence[int]) -> Supermodule:
    K = kac_module(lam)
    rad = maximal_proper_submodule(K, tuple(lam))
    return K.quotient(rad, label=f"L({','.join(map(str, lam))})", tag="simple")


# atypicality ----------------------------------------------------------------------

@dataclass(frozen=True)
class AtypicalityTag:
    value: str
    witness: Optional[Tuple[Fraction, int]] = None

    def to_json(self) -> dict:
        w = None if self.witness is None else {"a": str(self.witness[0]), "i": self.witness[1]}
        return {"value": self.value, "witness": w}

    def __str__(self) -> str:
        if self.witness is None:
            return self.value
        return f"{self.value} (a={self.witness[0]}, i={self.witness[1]})"


def atypicality(lam: Sequence) -> AtypicalityTag:
    """λ ∈ Ω iff λ = aε_i + ε_{i+1} + ⋯ + ε_n for some i and a."""
    c = [Fraction(x) for x in lam]
    n = len(c)
    for i in range(n, 0, -1):
        if all(x == 0 for x in c[:i - 1]) and all(x == 1 for x in c[i:]):
            return AtypicalityTag("atypical", (c[i - 1], i))
    return AtypicalityTag("typical")


def omega_dominant(lam: Sequence[int]) -> bool:
    """Explicit description of Ω ∩ X_0^+: (a,1,…,1) with a ≥ 1, or (0,…,0,b) with b ≤ 0."""
    lam = list(lam)
    family_a = lam[0] >= 1 and all(x == 1 for x in lam[1:])
    family_b = lam[-1] <= 0 and all(x == 0 for x in lam[:-1])
    return family_a or family_b


# projectivity and rank varieties ----------------------------------------------------

def f_tilde_point(n: int, a, c: Sequence) -> WElement:
    """x = a∂_1 + Σ_{i≥2} c_i ξ_1ξ_i∂_i; ``c`` lists c_2..c_n."""
    if len(c) != n - 1:
        raise ValueError(f"need {n - 1} c-coordinates")
    coords = {WBasisElement.make((), 1): a}
    for i, ci in enumerate(c, start=2):
        coords[WBasisElement.make((1, i), i)] = ci
    return WElement(n, coords)


def projective_over(x: WElement, m: Supermodule) -> bool:
    """Projectivity of M over U(⟨x⟩) for odd x with z = ½[x,x] acting semisimply.

    The z-kernel m_0 must carry rank(x|m_0) = dim(m_0)/2; the rest is free since
    x² = z is invertible there.
    """
    if x.parity() != 1:
        raise UnsupportedInput("x must be odd")
    alg = build_wn(m.n)
    z = alg.bracket(x, x)
    Z = m.act_element(z)
    for r, row in Z.rows():
        if any(c != r for c in row):
            raise UnsupportedInput("[x,x] does not act diagonally")
    zero = [i for i in range(m.dim) if not Z[i, i]]
    X = m.act_element(x)
    if len(zero) % 2:
        return False
    sub = X.submatrix(zero, zero)
    return rank(sub) * 2 == len(zero)


def _random_rational(rng: random.Random, height: int = 7, nonzero: bool = False) -> Fraction:
    while True:
        v = Fraction(rng.randint(-height, height), rng.randint(1, height))
        if v or not nonzero:
            return v


def sample_points(n: int, random_count: int = 8, seed: int = 0) -> List[Tuple[Fraction, ...]]:
    """Axes, pairwise sums of axes, then seeded random points (a, c_2, …, c_n)."""
    dim = n
    axes = [tuple(Fraction(int(k == i)) for k in range(dim)) for i in range(dim)]
    pts = list(axes)
    for i, j in itertools.combinations(range(dim), 2):
        pts.append(tuple(axes[i][k] + axes[j][k] for k in range(dim)))
    rng = random.Random(seed)
    for _ in range(random_count):
        pts.append(tuple(_random_rational(rng, nonzero=True) for _ in range(dim)))
    return pts


@dataclass
class RankVarietyReport:
    module: str
    n: int
    samples: List[Tuple[Tuple[Fraction, ...], bool]] = field(default_factory=list)
    verdict: str = "inconclusive"

    def to_json(self) -> dict:
        return {
            "module": self.module,
            "n": self.n,
            "verdict": self.verdict,
            "samples": [{"point": {("a" if k == 0 else f"c{k + 1}"): str(v) for k, v in enumerate(p)},
                         "projective": proj} for p, proj in self.samples],
        }


def rank_variety_report(m: Supermodule, n: Optional[int] = None, random_count: int = 8, seed: int = 0,
                        points: Optional[Sequence[Sequence]] = None) -> RankVarietyReport:
    n = m.n if n is None else n
    pts = [tuple(Fraction(v) for v in p) for p in points] if points is not None \
        else sample_points(n, random_count, seed)
    rep = RankVarietyReport(m.label, n)
    for p in pts:
        x = f_tilde_point(n, p[0], p[1:])
        rep.samples.append((p, projective_over(x, m)))
    generic = [proj for p, proj in rep.samples if all(p[0] * ci != 0 for ci in p[1:])]
    if not any(proj for _, proj in rep.samples):
        rep.verdict = "full-variety-consistent"
    elif generic and all(generic):
        rep.verdict = "zero-variety-consistent"
    return rep


def ses_consistent(sub: Supermodule, mid: Supermodule, quo: Supermodule, x: WElement) -> bool:
    """Each term's non-projectivity at x forces non-projectivity of another term."""
    p = [projective_over(x, sub), projective_over(x, mid), projective_over(x, quo)]
    return all(p[k] or not (p[(k + 1) % 3] and p[(k + 2) % 3]) for k in range(3))


def tensor_consistent(m1: Supermodule, m2: Supermodule, x: WElement,
                      product: Optional[Supermodule] = None) -> bool:
    product = m1.tensor(m2) if product is None else product
    return projective_over(x, product) == (projective_over(x, m1) or projective_over(x, m2))
