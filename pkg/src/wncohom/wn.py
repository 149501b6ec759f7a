"""The Cartan-type Lie superalgebra W(n) of superderivations of Λ(n).

Basis elements are ``ξ_I ∂_i`` with ``I`` a strictly increasing subset of
``{1..n}``. Brackets use the closed form

    [f∂_i, g∂_j] = f ∂_i(g) ∂_j - (-1)^{|f∂_i||g∂_j|} g ∂_j(f) ∂_i

and :func:`operator_matrix` gives the action on Λ(n) for cross-checks.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .linalg import SparseMatrix, Subspace, kernel
from .superspace import BasisVector, SuperSpace

Monomial = Tuple[int, ...]


class UnsupportedRank(ValueError):
    pass


class RankMismatch(ValueError):
    pass


class NotClosed(ValueError):
    pass


# exterior algebra ---------------------------------------------------------

def lambda_mul(I: Monomial, J: Monomial) -> Optional[Tuple[int, Monomial]]:
    """ξ_I · ξ_J = sign · ξ_{I∪J}; ``None`` on overlap."""
    if set(I) & set(J):
        return None
    inversions = sum(1 for a in I for b in J if a > b)
    return (-1) ** inversions, tuple(sorted(I + J))


def lambda_partial(i: int, J: Monomial) -> Optional[Tuple[int, Monomial]]:
    """Left derivative ∂_i(ξ_J)."""
    if i not in J:
        return None
    k = J.index(i)
    return (-1) ** k, J[:k] + J[k + 1:]


def lambda_basis(n: int) -> List[Monomial]:
    return [I for k in range(n + 1) for I in itertools.combinations(range(1, n + 1), k)]


# basis elements -----------------------------------------------------------

@dataclass(frozen=True, order=True)
class WBasisElement:
    """``ξ_I ∂_i`` ordered by (z-degree, I, i)."""

    z_degree: int
    I: Monomial
    i: int

    @classmethod
    def make(cls, I: Iterable[int], i: int) -> "WBasisElement":
        I = tuple(sorted(I))
        if len(set(I)) != len(I):
            raise ValueError(f"repeated index in {I}")
        return cls(len(I) - 1, I, i)

    @property
    def parity(self) -> int:
        return (len(self.I) - 1) % 2

    def weight(self, n: int) -> Tuple[int, ...]:
        w = [0] * n
        for j in self.I:
            w[j - 1] += 1
        w[self.i - 1] -= 1
        return tuple(w)

    def __str__(self) -> str:
        return "xi{" + ",".join(map(str, self.I)) + "}d{" + str(self.i) + "}"

    def pretty(self) -> str:
        xs = "".join(f"ξ{j}" for j in self.I)
        return f"{xs}∂{self.i}"


_BASIS_RE = re.compile(r"^\s*xi\{([0-9,\s]*)\}d\{?(\d+)\}?\s*$")


def parse_basis_element(text: str) -> WBasisElement:
    """Parse ``xi{1,3}d{2}`` (braces around the derivative index optional)."""
    m = _BASIS_RE.match(text)
    if not m:
        raise ValueError(f"malformed basis element {text!r}")
    inner = m.group(1).strip()
    I = tuple(int(t) for t in inner.split(",") if t.strip()) if inner else ()
    return WBasisElement.make(I, int(m.group(2)))


class WElement:
    """Sparse linear combination of basis elements of W(n)."""

    __slots__ = ("n", "coords")

    def __init__(self, n: int, coords: Mapping[WBasisElement, object] | None = None):
        self.n = n
        clean = {}
        for b, v in (coords or {}).items():
            if max(b.I + (b.i,)) > n or min(b.I + (b.i,)) < 1:
                raise ValueError(f"{b} is not a basis element of W({n})")
            v = Fraction(v)
            if v:
                clean[b] = v
        self.coords: Dict[WBasisElement, Fraction] = clean

    @classmethod
    def basis(cls, n: int, I: Iterable[int], i: int) -> "WElement":
        return cls(n, {WBasisElement.make(I, i): 1})

    @classmethod
    def parse(cls, n: int, text: str) -> "WElement":
        """Parse ``2*xi{1}d{2} - xi{}d{1}`` style sums."""
        coords: Dict[WBasisElement, Fraction] = {}
        for sign, coef, elem in re.findall(r"([+-]?)\s*(?:([0-9/]+)\s*\*?\s*)?(xi\{[^}]*\}d\{?\d+\}?)", text):
            c = Fraction(coef) if coef else Fraction(1)
            if sign == "-":
                c = -c
            b = parse_basis_element(elem)
            coords[b] = coords.get(b, 0) + c
        return cls(n, coords)

    def __add__(self, other: "WElement") -> "WElement":
        _same_rank(self, other)
        out = dict(self.coords)
        for b, v in other.coords.items():
            out[b] = out.get(b, 0) + v
        return WElement(self.n, out)

    def __neg__(self) -> "WElement":
        return WElement(self.n, {b: -v for b, v in self.coords.items()})

    def __sub__(self, other: "WElement") -> "WElement":
        return self + (-other)

    def __rmul__(self, s) -> "WElement":
        s = Fraction(s)
        return WElement(self.n, {b: s * v for b, v in self.coords.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, WElement) and self.n == other.n and self.coords == other.coords

    def __hash__(self):
        return hash((self.n, frozenset(self.coords.items())))

    def is_zero(self) -> bool:
        return not self.coords

    def parity(self) -> Optional[int]:
        ps = {b.parity for b in self.coords}
        return ps.pop() if len(ps) == 1 else (0 if not ps else None)

    def z_degree(self) -> Optional[int]:
        ds = {b.z_degree for b in self.coords}
        return ds.pop() if len(ds) == 1 else None

    def weight(self) -> Optional[Tuple[int, ...]]:
        ws = {b.weight(self.n) for b in self.coords}
        return ws.pop() if len(ws) == 1 else None

    def __str__(self) -> str:
        if not self.coords:
            return "0"
        parts = []
        for b in sorted(self.coords):
            v = self.coords[b]
            coef = "" if v == 1 else ("-" if v == -1 else f"{v}*")
            parts.append(f"{coef}{b}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def _same_rank(x: WElement, y: WElement) -> None:
    if x.n != y.n:
        raise RankMismatch(f"elements of W({x.n}) and W({y.n})")


def bracket_basis(a: WBasisElement, b: WBasisElement) -> Dict[WBasisElement, int]:
    """Closed-form supercommutator of two basis elements."""
    out: Dict[WBasisElement, int] = {}

    def add(f: Monomial, g: Monomial, i: int, j: int, coef: int) -> None:
        # coef * f * ∂_i(g) * ∂_j
        d = lambda_partial(i, g)
        if d is None:
            return
        s1, g2 = d
        m = lambda_mul(f, g2)
        if m is None:
            return
        s2, h = m
        key = WBasisElement.make(h, j)
        val = out.get(key, 0) + coef * s1 * s2
        if val:
            out[key] = val
        else:
            out.pop(key, None)

    add(a.I, b.I, a.i, b.i, 1)
    add(b.I, a.I, b.i, a.i, -((-1) ** (a.parity * b.parity)))
    return out


def operator_matrix(n: int, x: WElement) -> SparseMatrix:
    """Matrix of ``x`` acting on Λ(n) in the ``lambda_basis`` order."""
    lb = lambda_basis(n)
    pos = {I: k for k, I in enumerate(lb)}
    rows: Dict[int, Dict[int, Fraction]] = {}
    for b, c in x.coords.items():
        for col, J in enumerate(lb):
            d = lambda_partial(b.i, J)
            if d is None:
                continue
            s1, J2 = d
            m = lambda_mul(b.I, J2)
            if m is None:
                continue
            s2, K = m
            r = rows.setdefault(pos[K], {})
            r[col] = r.get(col, 0) + c * s1 * s2
    return SparseMatrix(len(lb), len(lb), rows)


def derivation_from_operator(n: int, op: SparseMatrix) -> WElement:
    """Recover ``Σ c ξ_I ∂_i`` from an operator on Λ(n) via its values on generators."""
    lb = lambda_basis(n)
    coords = {}
    for i in range(1, n + 1):
        col = lb.index((i,))
        for r in range(len(lb)):
            v = op[r, col]
            if v:
                coords[WBasisElement.make(lb[r], i)] = v
    return WElement(n, coords)


def supercommutator_oracle(x: WBasisElement, y: WBasisElement, n: int) -> WElement:
    """Bracket computed by composing operators on Λ(n); slow but independent."""
    X = operator_matrix(n, WElement(n, {x: 1}))
    Y = operator_matrix(n, WElement(n, {y: 1}))
    sign = (-1) ** (x.parity * y.parity)
    comm = X @ Y - (Y @ X).scale(sign)
    return derivation_from_operator(n, comm)


# the algebra ----------------------------------------------------------------

class WAlgebra:
    """W(n) with its basis, gradings and (lazily built) structure constants."""

    def __init__(self, n: int):
        if n < 2:
            raise UnsupportedRank(f"W(n) requires n >= 2, got {n}")
        self.n = n
        self.basis: List[WBasisElement] = sorted(
            WBasisElement.make(I, i) for I in lambda_basis(n) for i in range(1, n + 1)
        )
        self.index: Dict[WBasisElement, int] = {b: k for k, b in enumerate(self.basis)}
        self._table: Dict[Tuple[WBasisElement, WBasisElement], Dict[WBasisElement, int]] = {}

    def __repr__(self) -> str:
        return f"W({self.n})"

    @property
    def dim(self) -> int:
        return len(self.basis)

    def component(self, k: int) -> List[WBasisElement]:
        return [b for b in self.basis if b.z_degree == k]

    def graded_dims(self) -> Dict[int, int]:
        return {k: len(self.component(k)) for k in range(-1, self.n)}

    @staticmethod
    def expected_graded_dim(n: int, k: int) -> int:
        return n * comb(n, k + 1)

    def weight(self, b: WBasisElement) -> Tuple[int, ...]:
        return b.weight(self.n)

    def bracket_basis(self, a: WBasisElement, b: WBasisElement) -> Dict[WBasisElement, int]:
        key = (a, b)
        res = self._table.get(key)
        if res is None:
            res = bracket_basis(a, b)
            self._table[key] = res
        return res

    @cached_property
    def structure_constants(self) -> Dict[Tuple[WBasisElement, WBasisElement], Dict[WBasisElement, int]]:
        for a in self.basis:
            for b in self.basis:
                self.bracket_basis(a, b)
        return self._table

    def bracket(self, x: WElement, y: WElement) -> WElement:
        if x.n != self.n or y.n != self.n:
            raise RankMismatch(f"bracket in W({self.n}) of elements of W({x.n}), W({y.n})")
        out: Dict[WBasisElement, Fraction] = {}
        for a, u in x.coords.items():
            for b, v in y.coords.items():
                for c, w in self.bracket_basis(a, b).items():
                    out[c] = out.get(c, 0) + u * v * w
        return WElement(self.n, out)

    def element(self, I: Iterable[int], i: int, coef=1) -> WElement:
        return WElement(self.n, {WBasisElement.make(I, i): coef})

    def d(self, i: int) -> WElement:
        return self.element((), i)

    def vector(self, x: WElement) -> Dict[int, Fraction]:
        return {self.index[b]: v for b, v in x.coords.items()}

    def from_vector(self, vec: Mapping[int, Fraction]) -> WElement:
        return WElement(self.n, {self.basis[k]: v for k, v in vec.items()})

    def as_superspace(self, elements: Sequence[WBasisElement] | None = None) -> SuperSpace:
        elements = self.basis if elements is None else elements
        return SuperSpace(tuple(
            BasisVector(str(b), b.parity, b.z_degree, b.weight(self.n)) for b in elements
        ))

    def ad_matrix(self, x: WBasisElement, on: Sequence[WBasisElement] | None = None) -> SparseMatrix:
        """Matrix of ad(x) on span(``on``), dropping components outside it."""
        on = self.basis if on is None else list(on)
        pos = {b: k for k, b in enumerate(on)}
        rows: Dict[int, Dict[int, Fraction]] = {}
        for col, b in enumerate(on):
            for c, v in self.bracket_basis(x, b).items():
                r = pos.get(c)
                if r is not None:
                    rows.setdefault(r, {})[col] = v
        return SparseMatrix(len(on), len(on), rows)


_ALGEBRAS: Dict[int, WAlgebra] = {}


def build_wn(n: int) -> WAlgebra:
    """Cached W(n) handle (structure constants filled on demand)."""
    if n < 2:
        raise UnsupportedRank(f"W(n) requires n >= 2, got {n}")
    alg = _ALGEBRAS.get(n)
    if alg is None:
        alg = _ALGEBRAS[n] = WAlgebra(n)
    return alg


def bracket(x: WElement, y: WElement) -> WElement:
    _same_rank(x, y)
    return build_wn(x.n).bracket(x, y)


# subalgebras ------------------------------------------------------------------

SUBALGEBRA_NAMES = ("g", "g0", "h", "g_plus", "g_minus", "b0", "b_max", "b_min", "f", "f0", "f1",
                    "f_tilde", "f_tilde0")


@dataclass(frozen=True)
class SubalgebraSpec:
    """A subalgebra of W(n) given by a basis; ``keys`` is set when it is spanned by basis elements."""

    name: str
    n: int
    basis: Tuple[WElement, ...]
    keys: Optional[Tuple[WBasisElement, ...]] = None
    parts: Tuple[Tuple[str, Tuple[WBasisElement, ...]], ...] = ()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def subspace(self) -> Subspace:
        alg = build_wn(self.n)
        return Subspace.span([alg.vector(x) for x in self.basis], alg.dim)

    def contains(self, x: WElement) -> bool:
        if self.keys is not None:
            ks = set(self.keys)
            return all(b in ks for b in x.coords)
        return self.subspace().contains(build_wn(self.n).vector(x))

    def part(self, label: str) -> Tuple[WBasisElement, ...]:
        return dict(self.parts)[label]

    def __str__(self) -> str:
        return f"{self.name} ⊂ W({self.n}), dim {self.dim}"


def _keys_spec(name: str, n: int, keys: Iterable[WBasisElement], parts=(), check: bool = True) -> SubalgebraSpec:
    keys = tuple(sorted(set(keys)))
    spec = SubalgebraSpec(name, n, tuple(WElement(n, {k: 1}) for k in keys), keys, tuple(parts))
    if check:
        rep = check_subalgebra_closure(spec)
        if not rep.closed:
            raise NotClosed(f"{name} is not closed: {rep.counterexample}")
    return spec


def _f_parts(n: int):
    h = tuple(WBasisElement.make((i,), i) for i in range(1, n + 1))
    f1 = (WBasisElement.make((), 1),) + tuple(WBasisElement.make((1, i), i) for i in range(2, n + 1))
    ft0 = tuple(WBasisElement.make((i,), i) for i in range(2, n + 1))
    return h, f1, ft0


def subalgebra(n: int, name: str) -> SubalgebraSpec:
    """Named subalgebra: g, g0, h, g_plus, g_minus, b0, b_max, b_min, f (and f0, f1), f_tilde, f_tilde0."""
    alg = build_wn(n)
    B = alg.basis
    h, f1, ft0 = _f_parts(n)
    b0 = [b for b in alg.component(0) if b.I[0] <= b.i]
    table = {
        "g": lambda: B,
        "g0": lambda: alg.component(0),
        "h": lambda: h,
        "g_plus": lambda: [b for b in B if b.z_degree > 0],
        "g_minus": lambda: alg.component(-1),
        "b0": lambda: b0,
        "b_max": lambda: b0 + [b for b in B if b.z_degree > 0],
        "b_min": lambda: b0 + alg.component(-1),
        "f0": lambda: h,
        "f1": lambda: f1,
        "f_tilde0": lambda: ft0,
    }
    if name == "f":
        return _keys_spec("f", n, h + f1, (("even", h), ("odd", f1)))
    if name == "f_tilde":
        return _keys_spec("f_tilde", n, ft0 + f1, (("even", ft0), ("odd", f1)))
    if name not in table:
        raise KeyError(f"unknown subalgebra {name!r}; expected one of {SUBALGEBRA_NAMES}")
    # f1 alone is not closed; build it unchecked as a plain subspace label
    return _keys_spec(name, n, table[name](), check=(name != "f1"))


def span_of(elements: Sequence[WElement], name: str = "span") -> SubalgebraSpec:
    """Subalgebra generated by ``elements`` (iterated brackets until the span stabilises)."""
    if not elements:
        raise ValueError("need at least one generator")
    n = elements[0].n
    alg = build_wn(n)
    vecs = [alg.vector(x) for x in elements]
    sub = Subspace.span(vecs, alg.dim)
    while True:
        cur = [alg.from_vector(v) for v in sub.vectors()]
        new = [alg.vector(alg.bracket(x, y)) for x in cur for y in cur]
        nxt = Subspace.span(list(sub.vectors()) + new, alg.dim)
        if nxt.dim == sub.dim:
            break
        sub = nxt
    basis = tuple(alg.from_vector(v) for v in sub.vectors())
    keys = None
    if all(len(x.coords) == 1 for x in basis):
        keys = tuple(sorted(next(iter(x.coords)) for x in basis))
    return SubalgebraSpec(name, n, basis, keys)


@dataclass
class ClosureReport:
    name: str
    n: int
    closed: bool
    checks: Dict[str, bool]
    counterexample: Optional[str] = None

    def to_json(self) -> dict:
        return {"name": self.name, "n": self.n, "closed": self.closed, "checks": self.checks,
                "counterexample": self.counterexample}


def _bracket_target_check(alg: WAlgebra, left, right, target: Optional[set]):
    """First pair whose bracket leaves span(target); ``target=None`` means must vanish."""
    for a in left:
        for b in right:
            br = alg.bracket_basis(a, b)
            if target is None:
                if br:
                    return f"[{a},{b}] = {WElement(alg.n, br)} != 0"
            elif any(c not in target for c in br):
                return f"[{a},{b}] = {WElement(alg.n, br)} not in target"
    return None


def check_subalgebra_closure(spec: SubalgebraSpec) -> ClosureReport:
    """Bracket closure, plus the graded relations for f and f_tilde."""
    alg = build_wn(spec.n)
    checks: Dict[str, bool] = {}
    first: Optional[str] = None

    def record(label: str, cex: Optional[str]):
        nonlocal first
        checks[label] = cex is None
        if cex is not None and first is None:
            first = f"{label}: {cex}"

    if spec.keys is not None:
        ks = set(spec.keys)
        record("[s,s]⊆s", _bracket_target_check(alg, spec.keys, spec.keys, ks))
        parts = dict(spec.parts)
        if spec.name == "f":
            ev, od = set(parts["even"]), set(parts["odd"])
            record("[f0,f0]⊆f0", _bracket_target_check(alg, parts["even"], parts["even"], ev))
            record("[f0,f1]⊆f1", _bracket_target_check(alg, parts["even"], parts["odd"], od))
            record("[f1,f1]⊆f0", _bracket_target_check(alg, parts["odd"], parts["odd"], ev))
        elif spec.name == "f_tilde":
            ev = set(parts["even"])
            record("[f~0,f~]=0", _bracket_target_check(alg, parts["even"], spec.keys, None))
            record("[f~1,f~1]⊆f~0", _bracket_target_check(alg, parts["odd"], parts["odd"], ev))
    else:
        sub = spec.subspace()
        cex = None
        for x in spec.basis:
            for y in spec.basis:
                z = alg.bracket(x, y)
                if not sub.contains(alg.vector(z)):
                    cex = f"[{x},{y}] = {z} not in span"
                    break
            if cex:
                break
        record("[s,s]⊆s", cex)
    return ClosureReport(spec.name, spec.n, all(checks.values()), checks, first)


# beta and its fibres ------------------------------------------------------------

def beta(x: WElement, y: WElement) -> WElement:
    """β(x + y) = [x, y] for x ∈ g_{-1}, y ∈ g_1."""
    _same_rank(x, y)
    if any(b.z_degree != -1 for b in x.coords):
        raise ValueError(f"{x} is not in g_-1")
    if any(b.z_degree != 1 for b in y.coords):
        raise ValueError(f"{y} is not in g_1")
    return build_wn(x.n).bracket(x, y)


def diagonal(n: int, c: Sequence) -> WElement:
    """Σ c_i ξ_i∂_i."""
    if len(c) != n:
        raise ValueError(f"need {n} diagonal entries")
    return WElement(n, {WBasisElement.make((i + 1,), i + 1): v for i, v in enumerate(c)})


@dataclass
class FiberReport:
    n: int
    c: Tuple[Fraction, ...]
    case: str
    passed: bool
    details: Dict[str, object]

    def to_json(self) -> dict:
        return {"n": self.n, "c": [str(v) for v in self.c], "case": self.case, "passed": self.passed,
                "details": self.details}


def _fiber_system(n: int, c: Sequence[Fraction]):
    import sympy

    alg = build_wn(n)
    a = {i: sympy.Symbol(f"a{i}") for i in range(1, n + 1)}
    g1 = alg.component(1)
    b = {k: sympy.Symbol("b" + "".join(map(str, k.I)) + str(k.i)) for k in g1}
    eqs: Dict[WBasisElement, object] = {k: 0 for k in alg.component(0)}
    for i in range(1, n + 1):
        for k in g1:
            for out, v in alg.bracket_basis(WBasisElement.make((), i), k).items():
                eqs[out] = eqs[out] + v * a[i] * b[k]
    for i in range(1, n + 1):
        key = WBasisElement.make((i,), i)
        eqs[key] = eqs[key] - sympy.Rational(c[i - 1].numerator, c[i - 1].denominator)
    gens = [a[i] for i in sorted(a)] + [b[k] for k in g1]
    polys = [sympy.expand(e) for e in eqs.values() if sympy.expand(e) != 0]
    return a, b, gens, polys


def verify_beta_fiber(h: WElement, trials: int = 5, seed: int = 0) -> FiberReport:
    """Solve β(x) = h over the general ansatz x = Σ a_i∂_i + Σ b_ijk ξ_iξ_j∂_k.

    All c_i nonzero: the ideal must be the unit ideal.  c_1 = 0 with the
    other c_i nonzero: ideal membership pins a_i (i ≥ 2), the ξ_1ξ_m∂_l
    coefficients and a_1 ≠ 0; random members of the expected family are
    substituted back as a consistency check.
    """
    import random
    import sympy

    n = h.n
    if any(b.I != (b.i,) for b in h.coords):
        raise ValueError("h must be diagonal")
    c = tuple(h.coords.get(WBasisElement.make((i,), i), Fraction(0)) for i in range(1, n + 1))
    a, b, gens, polys = _fiber_system(n, c)
    G = sympy.groebner(polys, *gens, order="grevlex")
    details: Dict[str, object] = {"groebner_size": len(G.exprs)}
    if all(c):
        empty = list(G.exprs) == [1]
        details["unit_ideal"] = empty
        return FiberReport(n, c, "all-nonzero", empty, details)
    if c[0] != 0 or not all(c[1:]):
        return FiberReport(n, c, "unsupported", False, {"reason": "need c_1 = 0 and c_2..c_n nonzero"})

    def member(expr) -> bool:
        return G.contains(sympy.expand(expr))

    checks: Dict[str, bool] = {}
    checks["a_i in I (i>=2)"] = all(member(a[i]) for i in range(2, n + 1))
    one_ok = True
    for m in range(2, n + 1):
        for l in range(1, n + 1):
            key = WBasisElement.make((1, m), l)
            cl = sympy.Rational(c[l - 1].numerator, c[l - 1].denominator) if m == l else 0
            one_ok &= member(a[1] * b[key] - cl)
            if m != l:
                one_ok &= member(b[key])
    checks["a1*b_1ml - c_m delta_ml in I, off-diagonal b_1ml in I"] = one_ok
    G1 = sympy.groebner(polys + [a[1]], *gens, order="grevlex")
    checks["a1 != 0 on fibre"] = list(G1.exprs) == [1]

    rng = random.Random(seed)
    free = [k for k in b if k.I[0] > 1]
    fam_ok = True
    for _ in range(trials):
        a1 = Fraction(rng.choice([-1, 1]) * rng.randint(1, 7), rng.randint(1, 7))
        coords: Dict[WBasisElement, Fraction] = {WBasisElement.make((), 1): a1}
        for l in range(2, n + 1):
            coords[WBasisElement.make((1, l), l)] = c[l - 1] / a1
        for k in free:
            coords[k] = Fraction(rng.randint(-7, 7), rng.randint(1, 7))
        x = WElement(n, coords)
        xm = WElement(n, {k: v for k, v in x.coords.items() if k.z_degree == -1})
        xp = WElement(n, {k: v for k, v in x.coords.items() if k.z_degree == 1})
        fam_ok &= beta(xm, xp) == h
    checks["family members solve beta(x) = h"] = fam_ok
    details["checks"] = checks
    details["free_parameters"] = ["a1"] + [str(k) for k in free]
    return FiberReport(n, c, "c1-zero", all(checks.values()), details)


# torus actions, stabilisers, roots ----------------------------------------------

@dataclass(frozen=True)
class TorusWeightAction:
    """Character test for the diagonal torus T or T_{n-1} = {t_1 = 1}."""

    subgroup: str = "T"

    def __post_init__(self):
        if self.subgroup not in ("T", "T_{n-1}"):
            raise ValueError(f"unknown torus {self.subgroup!r}")

    def trivial_on(self, weight: Sequence) -> bool:
        comps = weight if self.subgroup == "T" else weight[1:]
        return all(v == 0 for v in comps)


def fixed_points(space: SuperSpace, torus: TorusWeightAction) -> Subspace:
    idx = [k for k, w in enumerate(space.weights()) if torus.trivial_on(w)]
    return Subspace.span([{k: Fraction(1)} for k in idx], space.dim)


def annihilator_in_g0(x: WElement) -> List[WElement]:
    """Basis of {u ∈ g_0 : [u, x] = 0}."""
    alg = build_wn(x.n)
    g0 = alg.component(0)
    rows: Dict[int, Dict[int, Fraction]] = {}
    for col, u in enumerate(g0):
        for k, v in alg.vector(alg.bracket(WElement(x.n, {u: 1}), x)).items():
            rows.setdefault(k, {})[col] = v
    ker = kernel(SparseMatrix(alg.dim, len(g0), rows))
    return [WElement(x.n, {g0[k]: v for k, v in vec.items()}) for vec in ker.vectors()]


def semisimple_representative(n: int, c: Sequence) -> WElement:
    """x_0 = ∂_1 + Σ_{l≥2} c_l ξ_1ξ_l∂_l."""
    coords = {WBasisElement.make((), 1): 1}
    for l in range(2, n + 1):
        coords[WBasisElement.make((1, l), l)] = c[l - 1]
    return WElement(n, coords)


def stabilizer_matches_torus(n: int, c: Sequence) -> bool:
    """ann_{g_0}(x_0) equals Lie(T_{n-1}) = span{ξ_i∂_i : i ≥ 2}."""
    alg = build_wn(n)
    ann = Subspace.span([alg.vector(u) for u in annihilator_in_g0(semisimple_representative(n, c))], alg.dim)
    target = Subspace.span([{alg.index[WBasisElement.make((i,), i)]: Fraction(1)} for i in range(2, n + 1)],
                           alg.dim)
    return ann == target


@dataclass(frozen=True)
class Root:
    weight: Tuple[int, ...]
    multiplicity: int
    parity: int
    simple: bool


def root_system(n: int) -> List[Root]:
    """Weights of W(n) with multiplicities; the simple roots ε_i − ε_{i+1} are flagged."""
    alg = build_wn(n)
    counts: Dict[Tuple[int, ...], List[int]] = {}
    for b in alg.basis:
        counts.setdefault(b.weight(n), []).append(b.parity)
    simple = {tuple(1 if k == i else (-1 if k == i + 1 else 0) for k in range(n)) for i in range(n - 1)}
    return [Root(w, len(ps), ps[0], w in simple) for w, ps in sorted(counts.items())]


# identity checks -------------------------------------------------------------------

def _add_into(out: Dict[WBasisElement, Fraction], d: Mapping[WBasisElement, object], s) -> None:
    for k, v in d.items():
        val = out.get(k, 0) + s * v
        if val:
            out[k] = val
        else:
            out.pop(k, None)


def _bracket_dict(alg: WAlgebra, a: WBasisElement, y: Mapping[WBasisElement, object]) -> Dict[WBasisElement, Fraction]:
    out: Dict[WBasisElement, Fraction] = {}
    for b, v in y.items():
        _add_into(out, alg.bracket_basis(a, b), v)
    return out


def skew_failures(n: int) -> List[Tuple[WBasisElement, WBasisElement]]:
    """Pairs violating [x,y] = -(-1)^{|x||y|}[y,x]."""
    alg = build_wn(n)
    bad = []
    for a in alg.basis:
        for b in alg.basis:
            s = -((-1) ** (a.parity * b.parity))
            lhs = alg.bracket_basis(a, b)
            rhs = {k: s * v for k, v in alg.bracket_basis(b, a).items()}
            if lhs != rhs:
                bad.append((a, b))
    return bad


def jacobi_defect(alg: WAlgebra, x: WBasisElement, y: WBasisElement, z: WBasisElement) -> Dict[WBasisElement, Fraction]:
    out: Dict[WBasisElement, Fraction] = {}
    _add_into(out, _bracket_dict(alg, x, alg.bracket_basis(y, z)), (-1) ** (x.parity * z.parity))
    _add_into(out, _bracket_dict(alg, y, alg.bracket_basis(z, x)), (-1) ** (y.parity * x.parity))
    _add_into(out, _bracket_dict(alg, z, alg.bracket_basis(x, y)), (-1) ** (z.parity * y.parity))
    return out


def jacobi_failures(n: int, samples: Optional[int] = None, seed: int = 0) -> Tuple[int, List[Tuple]]:
    """Super Jacobi over all triples, or ``samples`` seeded random triples."""
    import random

    alg = build_wn(n)
    B = alg.basis
    if samples is None:
        triples: Iterable = itertools.product(B, repeat=3)
        count = len(B) ** 3
    else:
        rng = random.Random(seed)
        triples = [(rng.choice(B), rng.choice(B), rng.choice(B)) for _ in range(samples)]
        count = samples
    bad = [t for t in triples if jacobi_defect(alg, *t)]
    return count, bad


def gl_failures(n: int) -> List[Tuple[WBasisElement, WBasisElement]]:
    """ξ_i∂_j ↔ e_ij: compare with [e_ij, e_kl] = δ_jk e_il - δ_li e_kj."""
    alg = build_wn(n)
    bad = []
    for a in alg.component(0):
        for b in alg.component(0):
            (i,), j = a.I, a.i
            (k,), l = b.I, b.i
            want: Dict[WBasisElement, Fraction] = {}
            if j == k:
                _add_into(want, {WBasisElement.make((i,), l): 1}, 1)
            if l == i:
                _add_into(want, {WBasisElement.make((k,), j): 1}, -1)
            if alg.bracket_basis(a, b) != want:
                bad.append((a, b))
    return bad


def oracle_failures(n: int, pairs: int = 500, seed: int = 0) -> List[Tuple[WBasisElement, WBasisElement]]:
    """Random basis pairs where the closed form and operator composition disagree."""
    import random

    alg = build_wn(n)
    rng = random.Random(seed)
    bad = []
    for _ in range(pairs):
        a, b = rng.choice(alg.basis), rng.choice(alg.basis)
        if WElement(n, alg.bracket_basis(a, b)) != supercommutator_oracle(a, b, n):
            bad.append((a, b))
    return bad
