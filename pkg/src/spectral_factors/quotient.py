"""Equitable partitions, exact quotient matrices, and the matrix catalog.

A partition of V(G) is equitable for a matrix M when every vertex of cell i
has the same M-row sum into cell j, for all i, j.  The quotient matrix of
those constant row sums (computed here as exact rationals, so "average row
sum" means the true common value whenever the partition verifies as
equitable) then shares its largest eigenvalue with M for the nonnegative
irreducible matrices used here, which reduces spectral radii of large
structured graphs to roots of tiny characteristic polynomials.

The catalog M1..M15 pins down the parameterized quotient matrices of the
clique-star families that the threshold theorems compare against.  Each
entry records its matrix formula, the family it is the quotient of, the
source matrix kind, and the documented cell order (entries differ from the
natural hub-first order in a few cases, e.g. M5/M6 lead with the large
clique); the test suite checks every entry against a freshly computed
quotient of the constructed family.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .graphs import FamilySpec, Graph, from_family
from .spectra import (
    IntegerPolynomial,
    SpectralValue,
    adjacency_matrix,
    clear_denominators,
    distance_matrix,
    largest_eigenvalue,
    largest_real_root,
    rational_char_poly,
    signless_laplacian,
)

KIND_A = "A"  # adjacency
KIND_K = "K"  # signless Laplacian
KIND_D = "D"  # distance

_BUILDERS = {
    KIND_A: adjacency_matrix,
    KIND_K: signless_laplacian,
    KIND_D: distance_matrix,
}

_KIND_NAMES = {KIND_A: "rho", KIND_K: "kappa", KIND_D: "mu1"}


@dataclass(frozen=True)
class PartitionSpec:
    """Ordered cells; must partition {0..n-1} of the graph they are used with."""

    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        canon = tuple(tuple(sorted(c)) for c in self.cells)
        object.__setattr__(self, "cells", canon)
        if not canon or any(not c for c in canon):
            raise ValueError("partition cells must be nonempty")

    def validate_for(self, g: Graph) -> None:
        seen: set[int] = set()
        for cell in self.cells:
            for v in cell:
                if not (0 <= v < g.n):
                    raise ValueError(f"cell vertex {v} out of range for order {g.n}")
                if v in seen:
                    raise ValueError(f"vertex {v} appears in two cells")
                seen.add(v)
        if len(seen) != g.n:
            raise ValueError("cells do not cover the vertex set")


def as_partition(cells: Sequence[Sequence[int]] | PartitionSpec) -> PartitionSpec:
    if isinstance(cells, PartitionSpec):
        return cells
    return PartitionSpec(tuple(tuple(c) for c in cells))


def matrix_for_kind(g: Graph, kind: str) -> np.ndarray:
    if kind not in _BUILDERS:
        raise ValueError(f"matrix kind must be one of A, K, D; got {kind!r}")
    return _BUILDERS[kind](g)


def is_equitable(g: Graph, kind: str, partition) -> bool:
    """True iff every cell has constant row sums into every cell."""
    part = as_partition(partition)
    part.validate_for(g)
    m = matrix_for_kind(g, kind)
    for ci in part.cells:
        for cj in part.cells:
            sums = m[np.ix_(ci, cj)].sum(axis=1)
            if not np.all(sums == sums[0]):
                return False
    return True


@dataclass(frozen=True)
class QuotientMatrix:
    """Cell-averaged row sums, exact; `equitable` records verification."""

    entries: tuple[tuple[Fraction, ...], ...]
    kind: str
    equitable: bool

    @property
    def size(self) -> int:
        return len(self.entries)

    def char_poly(self) -> IntegerPolynomial:
        """Denominator-cleared characteristic polynomial (same roots)."""
        return clear_denominators(rational_char_poly(self.entries))

    def largest_root(self, tolerance: float = 1e-10) -> float:
        return largest_real_root(self.char_poly(), tolerance=tolerance)


def quotient_matrix(g: Graph, kind: str, partition) -> QuotientMatrix:
    """Quotient of the kind-matrix over the cells: entry (i, j) is the average
    row sum from cell i into cell j, an exact rational."""
    part = as_partition(partition)
    part.validate_for(g)
    m = matrix_for_kind(g, kind)
    k = len(part.cells)
    rows = []
    equitable = True
    for i in range(k):
        row = []
        for j in range(k):
            block = m[np.ix_(part.cells[i], part.cells[j])]
            sums = block.sum(axis=1)
            if not np.all(sums == sums[0]):
                equitable = False
            row.append(Fraction(int(block.sum()), len(part.cells[i])))
        rows.append(tuple(row))
    return QuotientMatrix(entries=tuple(rows), kind=kind, equitable=equitable)


@dataclass(frozen=True)
class QuotientCheck:
    full: SpectralValue
    quotient_root: float
    agree: bool


def verify_quotient_radius(
    g: Graph, kind: str, partition, tolerance: float = 1e-8
) -> QuotientCheck:
    """Largest eigenvalue of the full matrix vs the quotient's Perron root."""
    q = quotient_matrix(g, kind, partition)
    full = largest_eigenvalue(matrix_for_kind(g, kind), kind=_KIND_NAMES[q.kind])
    root = q.largest_root()
    return QuotientCheck(
        full=full, quotient_root=root, agree=abs(full.value - root) <= tolerance
    )


# ---------------------------------------------------------------------------
# the catalog
# ---------------------------------------------------------------------------

Roles = list  # 'hub' or (multiplicity, size), in the entry's documented order


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(f"invalid catalog parameters: {msg}")


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    kind: str
    params: tuple[str, ...]
    cell_order: str
    _matrix: Callable[..., list[list[int]]]
    _structure: Callable[..., tuple[int, Roles]]

    def matrix(self, **params: int) -> list[list[int]]:
        self._check_params(params)
        return self._matrix(**params)

    def family(self, **params: int) -> FamilySpec:
        self._check_params(params)
        hub, roles = self._structure(**params)
        groups = [r for r in roles if r != "hub"]
        return FamilySpec(hub, tuple(groups))

    def graph_and_cells(self, **params: int) -> tuple[Graph, PartitionSpec]:
        """The family graph in canonical layout, plus the cells of this entry's
        documented order.  Equal part sizes pool in the canonical layout, so
        cells are recovered by walking the clique ranges size by size."""
        self._check_params(params)
        hub, roles = self._structure(**params)
        spec = self.family(**params)
        g = from_family(spec)
        base = spec.hub
        ranges: dict[int, list[tuple[int, int]]] = {}
        for mult, size in spec.parts:
            for _ in range(mult):
                ranges.setdefault(size, []).append((base, base + size))
                base += size
        taken = {size: 0 for size in ranges}
        cells = []
        for role in roles:
            if role == "hub":
                cells.append(tuple(range(hub)))
                continue
            mult, size = role
            picked = ranges[size][taken[size] : taken[size] + mult]
            taken[size] += mult
            cells.append(tuple(v for s, e in picked for v in range(s, e)))
        return g, PartitionSpec(tuple(cells))

    def char_poly(self, **params: int) -> IntegerPolynomial:
        return clear_denominators(rational_char_poly(self.matrix(**params)))

    def _check_params(self, given: dict) -> None:
        if set(given) != set(self.params):
            raise ValueError(
                f"{self.id} expects parameters {self.params}, got {tuple(given)}"
            )


def _entry(id, kind, params, cell_order, matrix, structure) -> CatalogEntry:
    return CatalogEntry(id, kind, tuple(params), cell_order, matrix, structure)


def _m1_matrix(x: int, nu: int) -> list[list[int]]:
    _require(x >= 1, "hub must be >= 1")
    _require(nu - 2 * x - 1 >= 1, "large clique must be nonempty")
    return [
        [nu + x - 2, nu - 2 * x - 1, x + 1],
        [x, 2 * nu - 3 * x - 4, 0],
        [x, 0, x],
    ]


def _m1_structure(x: int, nu: int):
    return x, ["hub", (1, nu - 2 * x - 1), (x + 1, 1)]


def _m2_matrix(delta: int, nu: int):
    return _m1_matrix(delta, nu)


def _m2_structure(delta: int, nu: int):
    return _m1_structure(delta, nu)


def _m3_matrix(x: int, delta: int, nu: int) -> list[list[int]]:
    _require(x >= 1, "hub must be >= 1")
    _require(delta >= x, "small cliques need size delta - x + 1 >= 1")
    small = delta - x + 1
    b = nu - (x + 1) * small - x
    _require(b >= 1, "large clique must be nonempty")
    return [
        [x - 1, b, (x + 1) * small],
        [x, b - 1, 2 * (x + 1) * small],
        [x, 2 * b, delta + 2 * x * small - x],
    ]


def _m3_structure(x: int, delta: int, nu: int):
    small = delta - x + 1
    b = nu - (x + 1) * small - x
    return x, ["hub", (1, b), (x + 1, small)]


def _m4_matrix(delta: int, nu: int) -> list[list[int]]:
    _require(delta >= 1, "hub must be >= 1")
    _require(nu - 2 * delta - 1 >= 1, "large clique must be nonempty")
    return [
        [delta - 1, nu - 2 * delta - 1, delta + 1],
        [delta, nu - 2 * delta - 2, 2 * (delta + 1)],
        [delta, 2 * (nu - 2 * delta - 1), 2 * delta],
    ]


def _m4_structure(delta: int, nu: int):
    return delta, ["hub", (1, nu - 2 * delta - 1), (delta + 1, 1)]


def _m5_matrix(x: int, nu: int) -> list[list[int]]:
    _require(x >= 1, "hub must be >= 1")
    _require(nu - 2 * x - 1 >= 1, "large clique must be nonempty")
    return [
        [nu - 2 * x - 2, x, 2 * (x + 1)],
        [nu - 2 * x - 1, x - 1, x + 1],
        [2 * (nu - 2 * x - 1), x, 2 * x],
    ]


def _m5_structure(x: int, nu: int):
    return x, [(1, nu - 2 * x - 1), "hub", (x + 1, 1)]


def _m6_matrix(delta: int, nu: int):
    return _m5_matrix(delta, nu)


def _m6_structure(delta: int, nu: int):
    return _m5_structure(delta, nu)


def _m7_matrix(x: int, nu: int) -> list[list[int]]:
    _require(x >= 1, "hub must be >= 1")
    _require(nu - 3 * x - 1 >= 1, "clique must be nonempty")
    return [
        [x - 1, 2 * x + 1, nu - 3 * x - 1],
        [x, 0, 0],
        [x, 0, nu - 3 * x - 2],
    ]


def _m7_structure(x: int, nu: int):
    return x, ["hub", (2 * x + 1, 1), (1, nu - 3 * x - 1)]


def _m8_matrix(x: int) -> list[list[int]]:
    _require(x >= 1, "hub must be >= 1")
    return [[x - 1, 2 * x + 1], [x, 0]]


def _m8_structure(x: int):
    return x, ["hub", (2 * x + 1, 1)]


def _m9_matrix(x: int) -> list[list[int]]:
    _require(x >= 1, "hub must be >= 1")
    return [[x - 1, 2 * x + 2], [x, 0]]


def _m9_structure(x: int):
    return x, ["hub", (2 * x + 2, 1)]


def _m10_matrix(x: int, nu: int) -> list[list[int]]:
    _require(x >= 1, "hub must be >= 1")
    _require(nu - 3 * x - 1 >= 1, "clique must be nonempty")
    return [
        [x - 1, 2 * x + 1, nu - 3 * x - 1],
        [x, 4 * x, 2 * (nu - 3 * x - 1)],
        [x, 2 * (2 * x + 1), nu - 3 * x - 2],
    ]


def _m10_structure(x: int, nu: int):
    return _m7_structure(x, nu)


def _m11_matrix(nu: int) -> list[list[int]]:
    _require(nu >= 5, "clique must be nonempty")
    return [
        [0, 3, nu - 4],
        [1, 4, 2 * (nu - 4)],
        [1, 6, nu - 5],
    ]


def _m11_structure(nu: int):
    return 1, ["hub", (3, 1), (1, nu - 4)]


def _m12_matrix(x: int) -> list[list[int]]:
    _require(x >= 1, "hub must be >= 1")
    return [[x - 1, 2 * x + 1], [x, 4 * x]]


def _m12_structure(x: int):
    return _m8_structure(x)


def _m13_matrix(x: int) -> list[list[int]]:
    # (1,2) entry is 2x+2: the cell really holds 2x+2 singletons, and
    # trace/determinant of this matrix reproduce the documented polynomial
    # x^2 - (5x+1)x + 2x^2-4x-2 exactly.
    _require(x >= 1, "hub must be >= 1")
    return [[x - 1, 2 * x + 2], [x, 2 * (2 * x + 1)]]


def _m13_structure(x: int):
    return _m9_structure(x)


def _m14_matrix() -> list[list[int]]:
    return [[1, 5], [2, 0]]


def _m14_structure():
    return 2, ["hub", (5, 1)]


def _m15_matrix(nu: int) -> list[list[int]]:
    _require(nu >= 5, "clique must be nonempty")
    return [
        [0, 3, nu - 4],
        [1, 0, 0],
        [1, 0, nu - 5],
    ]


def _m15_structure(nu: int):
    return _m11_structure(nu)


CATALOG: dict[str, CatalogEntry] = {
    e.id: e
    for e in [
        _entry("M1", KIND_K, ("x", "nu"), "hub, large clique, singletons",
               _m1_matrix, _m1_structure),
        _entry("M2", KIND_K, ("delta", "nu"), "hub, large clique, singletons",
               _m2_matrix, _m2_structure),
        _entry("M3", KIND_D, ("x", "delta", "nu"), "hub, large clique, small cliques",
               _m3_matrix, _m3_structure),
        _entry("M4", KIND_D, ("delta", "nu"), "hub, large clique, singletons",
               _m4_matrix, _m4_structure),
        _entry("M5", KIND_D, ("x", "nu"), "large clique, hub, singletons",
               _m5_matrix, _m5_structure),
        _entry("M6", KIND_D, ("delta", "nu"), "large clique, hub, singletons",
               _m6_matrix, _m6_structure),
        _entry("M7", KIND_A, ("x", "nu"), "hub, singletons, clique",
               _m7_matrix, _m7_structure),
        _entry("M8", KIND_A, ("x",), "hub, singletons",
               _m8_matrix, _m8_structure),
        _entry("M9", KIND_A, ("x",), "hub, singletons",
               _m9_matrix, _m9_structure),
        _entry("M10", KIND_D, ("x", "nu"), "hub, singletons, clique",
               _m10_matrix, _m10_structure),
        _entry("M11", KIND_D, ("nu",), "hub, singletons, clique",
               _m11_matrix, _m11_structure),
        _entry("M12", KIND_D, ("x",), "hub, singletons",
               _m12_matrix, _m12_structure),
        _entry("M13", KIND_D, ("x",), "hub, singletons",
               _m13_matrix, _m13_structure),
        _entry("M14", KIND_A, (), "hub, singletons",
               _m14_matrix, _m14_structure),
        _entry("M15", KIND_A, ("nu",), "hub, singletons, clique",
               _m15_matrix, _m15_structure),
    ]
}


def catalog_ids() -> list[str]:
    return list(CATALOG)


def catalog_matrix(mid: str, **params: int) -> list[list[int]]:
    entry = CATALOG.get(mid)
    if entry is None:
        raise ValueError(f"unknown catalog id {mid!r}; known: {', '.join(CATALOG)}")
    return entry.matrix(**params)


def catalog_report(mid: str, tolerance: float = 1e-10, **params: int) -> dict:
    """JSON-ready report: entries, cleared characteristic polynomial, root."""
    entry = CATALOG.get(mid)
    if entry is None:
        raise ValueError(f"unknown catalog id {mid!r}; known: {', '.join(CATALOG)}")
    matrix = entry.matrix(**params)
    poly = entry.char_poly(**params)
    return {
        "id": mid,
        "params": dict(sorted(params.items())),
        "kind": entry.kind,
        "cell_order": entry.cell_order,
        "entries": [[str(v) for v in row] for row in matrix],
        "charpoly": poly.to_json(),
        "largest_root": largest_real_root(poly, tolerance=tolerance),
    }
