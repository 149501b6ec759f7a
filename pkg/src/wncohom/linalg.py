"""Exact sparse linear algebra over the rationals.

Everything here works with :class:`fractions.Fraction` scalars. Matrices are
stored as dictionaries of rows, ``{row: {col: value}}``, with no stored zeros.
The reduced row-echelon form is the single normal form for subspaces, so two
subspaces are equal exactly when their basis matrices compare equal.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence

Rational = Fraction
Row = Dict[int, Fraction]

DENSE_CUTOFF = 64


class DimensionMismatch(ValueError):
    pass


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


class SparseMatrix:
    """Immutable sparse matrix with rational entries."""

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, nrows: int, ncols: int, rows: Mapping[int, Mapping[int, object]] | None = None):
        self.nrows = int(nrows)
        self.ncols = int(ncols)
        clean: Dict[int, Row] = {}
        if rows:
            for r, row in rows.items():
                if not 0 <= r < self.nrows:
                    raise IndexError(f"row {r} out of range for {self.nrows} rows")
                out = {}
                for c, v in row.items():
                    if not 0 <= c < self.ncols:
                        raise IndexError(f"column {c} out of range for {self.ncols} columns")
                    v = as_rational(v)
                    if v:
                        out[c] = v
                if out:
                    clean[r] = out
        self._rows = clean

    @classmethod
    def _trusted(cls, nrows: int, ncols: int, rows: Dict[int, Row]) -> "SparseMatrix":
        m = cls.__new__(cls)
        m.nrows, m.ncols, m._rows = nrows, ncols, rows
        return m

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "SparseMatrix":
        return cls._trusted(nrows, ncols, {})

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls._trusted(n, n, {i: {i: Fraction(1)} for i in range(n)})

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[object]], ncols: int | None = None) -> "SparseMatrix":
        nrows = len(data)
        if ncols is None:
            ncols = len(data[0]) if nrows else 0
        return cls(nrows, ncols, {r: {c: v for c, v in enumerate(row)} for r, row in enumerate(data)})

    @classmethod
    def from_rows(cls, rows: Sequence[Mapping[int, object]], ncols: int) -> "SparseMatrix":
        return cls(len(rows), ncols, {i: r for i, r in enumerate(rows)})

    @classmethod
    def diagonal(cls, values: Sequence[object]) -> "SparseMatrix":
        n = len(values)
        return cls(n, n, {i: {i: v} for i, v in enumerate(values)})

    # access -------------------------------------------------------------
    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def row(self, r: int) -> Row:
        return dict(self._rows.get(r, {}))

    def rows(self):
        """Iterate ``(row_index, {col: value})`` over nonzero rows in order."""
        for r in sorted(self._rows):
            yield r, self._rows[r]

    def __getitem__(self, key) -> Fraction:
        r, c = key
        return self._rows.get(r, {}).get(c, Fraction(0))

    def nnz(self) -> int:
        return sum(len(row) for row in self._rows.values())

    def to_dense(self) -> List[List[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for r, row in self._rows.items():
            for c, v in row.items():
                out[r][c] = v
        return out

    def is_zero(self) -> bool:
        return not self._rows

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, tuple((r, tuple(sorted(row.items()))) for r, row in sorted(self._rows.items()))))

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"

    # arithmetic ---------------------------------------------------------
    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        rows = {r: dict(row) for r, row in self._rows.items()}
        for r, row in other._rows.items():
            target = rows.setdefault(r, {})
            _axpy(target, Fraction(1), row)
            if not target:
                del rows[r]
        return SparseMatrix._trusted(self.nrows, self.ncols, rows)

    def __neg__(self) -> "SparseMatrix":
        return self.scale(-1)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + (-other)

    def scale(self, s) -> "SparseMatrix":
        s = as_rational(s)
        if not s:
            return SparseMatrix.zero(self.nrows, self.ncols)
        return SparseMatrix._trusted(
            self.nrows, self.ncols, {r: {c: v * s for c, v in row.items()} for r, row in self._rows.items()}
        )

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        orows = other._rows
        rows: Dict[int, Row] = {}
        for r, row in self._rows.items():
            acc: Row = {}
            for k, v in row.items():
                orow = orows.get(k)
                if orow:
                    _axpy(acc, v, orow)
            if acc:
                rows[r] = acc
        return SparseMatrix._trusted(self.nrows, other.ncols, rows)

    def transpose(self) -> "SparseMatrix":
        rows: Dict[int, Row] = {}
        for r, row in self._rows.items():
            for c, v in row.items():
                rows.setdefault(c, {})[r] = v
        return SparseMatrix._trusted(self.ncols, self.nrows, rows)

    @property
    def T(self) -> "SparseMatrix":
        return self.transpose()

    def apply(self, vec: Mapping[int, Fraction]) -> Row:
        """Matrix times a sparse column vector ``{index: value}``."""
        out: Row = {}
        for r, row in self._rows.items():
            s = Fraction(0)
            for c, v in row.items():
                x = vec.get(c)
                if x:
                    s += v * x
            if s:
                out[r] = s
        return out

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "SparseMatrix":
        cmap = {c: j for j, c in enumerate(col_idx)}
        rows = {}
        for i, r in enumerate(row_idx):
            row = self._rows.get(r)
            if not row:
                continue
            new = {cmap[c]: v for c, v in row.items() if c in cmap}
            if new:
                rows[i] = new
        return SparseMatrix._trusted(len(row_idx), len(col_idx), rows)

    def rank(self) -> int:
        return len(_echelon_rows(self))


def vstack(mats: Sequence[SparseMatrix], ncols: int | None = None) -> SparseMatrix:
    if not mats:
        return SparseMatrix.zero(0, ncols or 0)
    ncols = mats[0].ncols if ncols is None else ncols
    rows: Dict[int, Row] = {}
    off = 0
    for m in mats:
        if m.ncols != ncols:
            raise DimensionMismatch(f"column counts differ: {m.ncols} vs {ncols}")
        for r, row in m._rows.items():
            rows[off + r] = dict(row)
        off += m.nrows
    return SparseMatrix._trusted(off, ncols, rows)


def hstack(mats: Sequence[SparseMatrix]) -> SparseMatrix:
    return vstack([m.transpose() for m in mats]).transpose()


def block_diag(mats: Sequence[SparseMatrix]) -> SparseMatrix:
    rows: Dict[int, Row] = {}
    ro = co = 0
    for m in mats:
        for r, row in m._rows.items():
            rows[ro + r] = {co + c: v for c, v in row.items()}
        ro += m.nrows
        co += m.ncols
    return SparseMatrix._trusted(ro, co, rows)


def kron(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    rows: Dict[int, Row] = {}
    for ra, rowa in a._rows.items():
        for rb, rowb in b._rows.items():
            rows[ra * b.nrows + rb] = {
                ca * b.ncols + cb: va * vb for ca, va in rowa.items() for cb, vb in rowb.items()
            }
    return SparseMatrix._trusted(a.nrows * b.nrows, a.ncols * b.ncols, rows)


def _axpy(target: Row, a: Fraction, x: Mapping[int, Fraction]) -> None:
    """target += a * x, dropping cancelled entries."""
    for c, v in x.items():
        w = target.get(c)
        if w is None:
            target[c] = a * v
        else:
            w += a * v
            if w:
                target[c] = w
            else:
                del target[c]


# elimination ------------------------------------------------------------

def _echelon_rows(m: SparseMatrix) -> Dict[int, Row]:
    """Return ``{pivot_col: row}`` of the fully reduced row-echelon form."""
    if m.ncols < DENSE_CUTOFF:
        return _rref_dense(m)
    return _rref_sparse(m)


def _rref_sparse(m: SparseMatrix) -> Dict[int, Row]:
    pivots: Dict[int, Row] = {}
    # occurrence index: column -> pivot columns whose row holds it
    occurs: Dict[int, set] = {}
    for row in sorted(m._rows.values(), key=len):
        r = dict(row)
        for c in [c for c in r if c in pivots]:
            v = r.get(c)
            if v:
                _axpy(r, -v, pivots[c])
        if not r:
            continue
        p = min(r)
        inv = 1 / r[p]
        if inv != 1:
            r = {c: v * inv for c, v in r.items()}
        for q in list(occurs.get(p, ())):
            prow = pivots[q]
            v = prow.get(p)
            if not v:
                continue
            for c in prow:
                if c != q:
                    occurs[c].discard(q)
            _axpy(prow, -v, r)
            for c in prow:
                if c != q:
                    occurs.setdefault(c, set()).add(q)
        occurs.pop(p, None)
        pivots[p] = r
        for c in r:
            if c != p:
                occurs.setdefault(c, set()).add(p)
    return pivots


def _rref_dense(m: SparseMatrix) -> Dict[int, Row]:
    ncols = m.ncols
    work = [[row.get(c, Fraction(0)) for c in range(ncols)] for row in m._rows.values()]
    pivots: Dict[int, Row] = {}
    r0 = 0
    for c in range(ncols):
        best = None
        for i in range(r0, len(work)):
            v = work[i][c]
            if v and (best is None or abs(v.numerator) + v.denominator < abs(work[best][c].numerator) + work[best][c].denominator):
                best = i
        if best is None:
            continue
        work[r0], work[best] = work[best], work[r0]
        prow = work[r0]
        inv = 1 / prow[c]
        if inv != 1:
            for j in range(c, ncols):
                if prow[j]:
                    prow[j] *= inv
        for i in range(len(work)):
            if i == r0:
                continue
            f = work[i][c]
            if f:
                wi = work[i]
                for j in range(c, ncols):
                    if prow[j]:
                        wi[j] -= f * prow[j]
        r0 += 1
        if r0 == len(work):
            break
    for i in range(r0):
        row = {j: v for j, v in enumerate(work[i]) if v}
        pivots[min(row)] = row
    return pivots


def rref(m: SparseMatrix) -> SparseMatrix:
    """Reduced row-echelon form; zero rows are dropped to the bottom."""
    piv = _echelon_rows(m)
    rows = {i: piv[p] for i, p in enumerate(sorted(piv))}
    return SparseMatrix._trusted(m.nrows, m.ncols, rows)


def rank(m: SparseMatrix) -> int:
    return m.rank()


def pivot_columns(m: SparseMatrix) -> List[int]:
    return sorted(_echelon_rows(m))


# subspaces ---------------------------------------------------------------

class Subspace:
    """A subspace of Q^N stored by its canonical rref basis (rows)."""

    __slots__ = ("ambient_dim", "basis", "_pivots")

    def __init__(self, ambient_dim: int, basis: SparseMatrix | None = None, *, _canonical: bool = False):
        self.ambient_dim = ambient_dim
        if basis is None:
            basis = SparseMatrix.zero(0, ambient_dim)
        if basis.ncols != ambient_dim:
            raise DimensionMismatch(f"basis has {basis.ncols} columns, ambient is {ambient_dim}")
        if _canonical:
            piv = {min(row): row for _, row in basis.rows()}
        else:
            piv = _echelon_rows(basis)
        order = sorted(piv)
        self._pivots = {p: piv[p] for p in order}
        self.basis = SparseMatrix._trusted(len(order), ambient_dim, {i: piv[p] for i, p in enumerate(order)})

    @classmethod
    def span(cls, vectors: Iterable[Mapping[int, object]], ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, SparseMatrix.from_rows(list(vectors), ambient_dim))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, SparseMatrix.identity(n), _canonical=True)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def vectors(self) -> List[Row]:
        return [dict(row) for _, row in self.basis.rows()]

    def pivots(self) -> List[int]:
        return list(self._pivots)

    def reduce(self, vec: Mapping[int, object]) -> Row:
        """Remainder of ``vec`` after eliminating the pivot coordinates."""
        r = {c: as_rational(v) for c, v in vec.items() if v}
        for p, row in self._pivots.items():
            v = r.get(p)
            if v:
                _axpy(r, -v, row)
        return r

    def contains(self, vec: Mapping[int, object]) -> bool:
        return not self.reduce(vec)

    def coordinates(self, vec: Mapping[int, object]) -> List[Fraction]:
        """Coordinates of ``vec`` in the rref basis; raises if not contained."""
        r = {c: as_rational(v) for c, v in vec.items() if v}
        coords = []
        for p, row in self._pivots.items():
            v = r.get(p, Fraction(0))
            coords.append(v)
            if v:
                _axpy(r, -v, row)
        if r:
            raise ValueError("vector is not in the subspace")
        return coords

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __le__(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return all(other.contains(v) for v in self.vectors())

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")


def kernel(m: SparseMatrix) -> Subspace:
    """Null space ``{v : m v = 0}`` as a canonical subspace of Q^cols."""
    piv = _echelon_rows(m)
    free = [c for c in range(m.ncols) if c not in piv]
    vecs = []
    for f in free:
        v = {f: Fraction(1)}
        for p, row in piv.items():
            x = row.get(f)
            if x:
                v[p] = -x
        vecs.append(v)
    return Subspace(m.ncols, SparseMatrix.from_rows(vecs, m.ncols))


def simultaneous_kernel(ops: Sequence[SparseMatrix], ncols: int | None = None) -> Subspace:
    """Common kernel of a family of matrices sharing a column count."""
    if not ops:
        if ncols is None:
            raise ValueError("ambient dimension required for an empty family")
        return Subspace.full(ncols)
    n = ops[0].ncols if ncols is None else ncols
    for op in ops:
        if op.ncols != n:
            raise DimensionMismatch(f"operator has {op.ncols} columns, expected {n}")
    return kernel(vstack(list(ops)))


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    return Subspace(a.ambient_dim, vstack([a.basis, b.basis]))


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim)
    # alpha A = beta B  <=>  [A^T | -B^T] (alpha; beta) = 0
    stacked = vstack([a.basis, b.basis.scale(-1)]).transpose()
    ker = kernel(stacked)
    vecs = []
    for coeffs in ker.vectors():
        v: Row = {}
        for i, row in a.basis.rows():
            x = coeffs.get(i)
            if x:
                _axpy(v, x, row)
        vecs.append(v)
    return Subspace.span(vecs, a.ambient_dim)


def image(m: SparseMatrix) -> Subspace:
    """Column space of ``m``."""
    return Subspace(m.nrows, m.transpose())


def restrict_action(op: SparseMatrix, sub: Subspace) -> SparseMatrix:
    """Matrix of ``op`` on an invariant subspace, in the subspace's rref basis."""
    cols = []
    for v in sub.vectors():
        cols.append(sub.coordinates(op.apply(v)))
    rows: Dict[int, Row] = {}
    for j, col in enumerate(cols):
        for i, x in enumerate(col):
            if x:
                rows.setdefault(i, {})[j] = x
    return SparseMatrix._trusted(sub.dim, sub.dim, rows)
