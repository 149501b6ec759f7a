"""Exact computations in the Lie superalgebra W(n) of superderivations of Λ(n)."""
from .linalg import SparseMatrix, Subspace, kernel, rank
from .wn import WAlgebra, WBasisElement, WElement, bracket, build_wn, subalgebra
from .cohomology import RelativeComplex, cohomology_table, invariant_hilbert_table
from .modules import Supermodule, atypicality, kac_module, rank_variety_report, simple_supermodule

__version__ = "0.1.0"

__all__ = [
    "SparseMatrix", "Subspace", "kernel", "rank",
    "WAlgebra", "WBasisElement", "WElement", "bracket", "build_wn", "subalgebra",
    "RelativeComplex", "cohomology_table", "invariant_hilbert_table",
    "Supermodule", "atypicality", "kac_module", "rank_variety_report", "simple_supermodule",
]
