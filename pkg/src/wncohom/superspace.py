"""Z2/Z-graded spaces with weighted bases and their super wedge powers.

The super wedge power is exterior on even vectors and symmetric on odd ones:
swapping adjacent factors x, y costs ``-(-1)^(|x||y|)``. Basis monomials are
written with even factors first, each group ascending by position in the
underlying space; odd factors may repeat.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

Weight = Tuple[int, ...]


class MissingWeight(ValueError):
    pass


@dataclass(frozen=True)
class BasisVector:
    name: str
    parity: int
    z_degree: Optional[int] = None
    weight: Optional[Weight] = None


class WedgeBasisIndex(NamedTuple):
    even: Tuple[int, ...]
    odd: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.even) + len(self.odd)

    def factors(self) -> Tuple[int, ...]:
        """Factor positions in canonical order (evens, then odds)."""
        return self.even + self.odd


EMPTY_WEDGE = WedgeBasisIndex((), ())


@dataclass(frozen=True)
class SuperSpace:
    basis: Tuple[BasisVector, ...]
    _index: Dict[str, int] = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        idx = {}
        for i, b in enumerate(self.basis):
            if b.name in idx:
                raise ValueError(f"duplicate basis name {b.name!r}")
            idx[b.name] = i
        object.__setattr__(self, "basis", tuple(self.basis))
        object.__setattr__(self, "_index", idx)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, name: str) -> int:
        return self._index[name]

    def parity(self, i: int) -> int:
        return self.basis[i].parity

    def even_indices(self) -> List[int]:
        return [i for i, b in enumerate(self.basis) if b.parity == 0]

    def odd_indices(self) -> List[int]:
        return [i for i, b in enumerate(self.basis) if b.parity == 1]

    def weights(self) -> List[Weight]:
        out = []
        for b in self.basis:
            if b.weight is None:
                raise MissingWeight(f"basis vector {b.name} carries no weight")
            out.append(b.weight)
        return out


def wedge_dimension(n_even: int, n_odd: int, p: int) -> int:
    """Closed-form count: sum_k C(#even, k) * C(#odd + (p-k) - 1, p-k)."""
    total = 0
    for k in range(0, min(n_even, p) + 1):
        r = p - k
        sym = 1 if r == 0 else (comb(n_odd + r - 1, r) if n_odd else 0)
        total += comb(n_even, k) * sym
    return total


def wedge_indices(space: SuperSpace, p: int, among: Sequence[int] | None = None) -> List[WedgeBasisIndex]:
    """All size-``p`` wedge monomials over ``among`` (default: the whole basis)."""
    if p < 0:
        raise ValueError("wedge degree must be non-negative")
    idx = range(space.dim) if among is None else among
    evens = sorted(i for i in idx if space.basis[i].parity == 0)
    odds = sorted(i for i in idx if space.basis[i].parity == 1)
    out = []
    for k in range(0, min(len(evens), p) + 1):
        for e in itertools.combinations(evens, k):
            for o in itertools.combinations_with_replacement(odds, p - k):
                out.append(WedgeBasisIndex(e, o))
    return out


def wedge_normalize(factors: Sequence[Tuple[int, int]]) -> Optional[Tuple[int, WedgeBasisIndex]]:
    """Bring a list of ``(position, parity)`` factors to canonical order.

    Returns ``(sign, index)`` or ``None`` when an even factor repeats.
    """
    keys = [(par, pos) for pos, par in factors]
    sign = 1
    n = len(keys)
    for a in range(n):
        ka = keys[a]
        for b in range(a + 1, n):
            kb = keys[b]
            if ka > kb:
                if not (ka[0] and kb[0]):
                    sign = -sign
            elif ka == kb and ka[0] == 0:
                return None
    keys.sort()
    even = tuple(pos for par, pos in keys if par == 0)
    odd = tuple(pos for par, pos in keys if par == 1)
    return sign, WedgeBasisIndex(even, odd)


def normalize_positions(space: SuperSpace, positions: Sequence[int]):
    return wedge_normalize([(i, space.basis[i].parity) for i in positions])


def wedge_parity(space: SuperSpace, idx: WedgeBasisIndex) -> int:
    return sum(space.basis[i].parity for i in idx.factors()) % 2


def weight_of(space: SuperSpace, idx: WedgeBasisIndex) -> Weight:
    """Componentwise sum of factor weights."""
    ws = []
    for i in idx.factors():
        w = space.basis[i].weight
        if w is None:
            raise MissingWeight(f"basis vector {space.basis[i].name} carries no weight")
        ws.append(w)
    if not ws:
        ref = next((b.weight for b in space.basis if b.weight is not None), None)
        if ref is None:
            raise MissingWeight("space carries no weights")
        return tuple(0 for _ in ref)
    return tuple(sum(c) for c in zip(*ws))


def wedge_label(space: SuperSpace, idx: WedgeBasisIndex) -> str:
    if idx.size == 0:
        return "1"
    parts = [space.basis[i].name for i in idx.even]
    for i, grp in itertools.groupby(idx.odd):
        k = len(list(grp))
        name = space.basis[i].name
        parts.append(name if k == 1 else f"{name}^{k}")
    return "∧".join(parts)


class WedgePower(SuperSpace):
    """Super wedge power ``Λ_s^p(base)`` as a space in its own right."""

    def __init__(self, base: SuperSpace, p: int):
        indices = wedge_indices(base, p)
        has_w = all(b.weight is not None for b in base.basis) and base.dim > 0
        has_z = all(b.z_degree is not None for b in base.basis)
        vecs = []
        for idx in indices:
            vecs.append(BasisVector(
                name=wedge_label(base, idx),
                parity=sum(base.basis[i].parity for i in idx.factors()) % 2,
                z_degree=sum(base.basis[i].z_degree for i in idx.factors()) if has_z else None,
                weight=weight_of(base, idx) if has_w else None,
            ))
        super().__init__(tuple(vecs))
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "indices", tuple(indices))
        object.__setattr__(self, "position", {idx: i for i, idx in enumerate(indices)})

    def __hash__(self):
        return hash((self.base, self.p))

    def __eq__(self, other):
        return isinstance(other, WedgePower) and (self.base, self.p) == (other.base, other.p)


def wedge_power(v: SuperSpace, p: int) -> WedgePower:
    if p < 0:
        raise ValueError("wedge degree must be non-negative")
    return WedgePower(v, p)


def dual(v: SuperSpace) -> SuperSpace:
    """Dual space: same parities, negated weights and z-degrees."""
    return SuperSpace(tuple(
        BasisVector(
            name=f"{b.name}*",
            parity=b.parity,
            z_degree=None if b.z_degree is None else -b.z_degree,
            weight=None if b.weight is None else tuple(-c for c in b.weight),
        )
        for b in v.basis
    ))


def direct_sum(*spaces: SuperSpace) -> SuperSpace:
    return SuperSpace(tuple(b for s in spaces for b in s.basis))


def wedge_act(space: SuperSpace, image: Mapping[int, Mapping[int, Fraction]], op_parity: int,
              idx: WedgeBasisIndex) -> Dict[WedgeBasisIndex, Fraction]:
    """Apply an operator to a wedge monomial as a superderivation.

    ``image[j]`` is the image of basis vector ``j`` as ``{i: coeff}``.
    """
    out: Dict[WedgeBasisIndex, Fraction] = {}
    facs = idx.factors()
    prefix = 0
    for k, j in enumerate(facs):
        img = image.get(j)
        if img:
            s0 = -1 if (op_parity and prefix % 2) else 1
            for i, c in img.items():
                new = list(facs)
                new[k] = i
                res = normalize_positions(space, new)
                if res is None:
                    continue
                sign, w = res
                val = out.get(w, 0) + s0 * sign * c
                if val:
                    out[w] = val
                else:
                    out.pop(w, None)
        prefix += space.basis[j].parity
    return out
