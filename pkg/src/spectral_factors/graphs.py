"""Core graph types and combinatorial operations.

Immutable simple graphs on vertex set {0, ..., n-1}, stored as a packed
upper-triangle bitset in column-major pair order: pair (u, v) with u < v
sits at bit v*(v-1)/2 + u.  This is the same pair order the graph6 format
uses, so serialization is a straight repack of the bitset.

Also defines the clique-star families K(a; h1 x q1, ...) -- a complete
graph K_a joined to a disjoint union of cliques -- which appear throughout
the threshold theorems as extremal graphs, plus canonical forms, labeled
exhaustive enumeration, and the graph6 / edge-list codecs.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

MAX_ISO_ORDER = 12      # canonical-form backtracking is desk-scale only
MAX_ENUM_ORDER = 8      # 2^28 adjacency masks at n = 8
MAX_GRAPH6_ORDER = 62   # single-byte graph6 header only

ENV_MAX_ORDER = "SPECTRA_FACTOR_MAX_ORDER"


def _env_cap(default: int) -> int:
    """Order cap, overridable through the SPECTRA_FACTOR_MAX_ORDER env var."""
    raw = os.environ.get(ENV_MAX_ORDER)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        return default


def pair_index(u: int, v: int) -> int:
    """Bit position of the unordered pair {u, v} in the packed triangle."""
    if u > v:
        u, v = v, u
    return v * (v - 1) // 2 + u


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph; no loops or multi-edges by construction."""

    n: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("graph order must be at least 1")
        if self.bits < 0 or self.bits >> (self.n * (self.n - 1) // 2):
            raise ValueError(f"adjacency bits out of range for order {self.n}")

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        bits = self.bits
        k = 0
        for v in range(1, self.n):
            for u in range(v):
                if (bits >> k) & 1:
                    masks[u] |= 1 << v
                    masks[v] |= 1 << u
                k += 1
        return tuple(masks)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(m.bit_count() for m in self.neighbor_masks)

    @property
    def num_edges(self) -> int:
        return self.bits.bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"vertex out of range: {(u, v)}")
        if u == v:
            return False
        return (self.bits >> pair_index(u, v)) & 1 == 1

    def edges(self) -> list[tuple[int, int]]:
        return [
            (u, v)
            for u in range(self.n)
            for v in range(u + 1, self.n)
            if (self.bits >> pair_index(u, v)) & 1
        ]

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Graph(n={self.n}, m={self.num_edges})"


def build_graph(order: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Graph on {0..order-1} with the given edge set.  Loops are rejected."""
    bits = 0
    for u, v in edges:
        if not (0 <= u < order and 0 <= v < order):
            raise ValueError(f"edge endpoint out of range: {(u, v)}")
        if u == v:
            raise ValueError(f"loop at vertex {u} not allowed")
        bits |= 1 << pair_index(u, v)
    return Graph(order, bits)


def complete_graph(order: int) -> Graph:
    return Graph(order, (1 << (order * (order - 1) // 2)) - 1)


# ---------------------------------------------------------------------------
# clique-star families K(a; h1 x q1, ...)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FamilySpec:
    """Clique-star family K(hub; h1 x q1, ...): K_hub joined to h_i copies of K_{q_i}.

    `parts` holds (multiplicity, part size) pairs.  The constructor sorts
    parts by descending size and merges equal sizes, so two structurally
    identical specs always compare equal.
    """

    hub: int
    parts: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self) -> None:
        if self.hub < 0:
            raise ValueError("hub size must be nonnegative")
        merged: dict[int, int] = {}
        for mult, size in self.parts:
            if mult < 1 or size < 1:
                raise ValueError(f"part (mult={mult}, size={size}) must be positive")
            merged[size] = merged.get(size, 0) + mult
        canon = tuple((merged[q], q) for q in sorted(merged, reverse=True))
        object.__setattr__(self, "parts", canon)
        if self.order < 1:
            raise ValueError("family must have at least one vertex")

    @property
    def order(self) -> int:
        return self.hub + sum(h * q for h, q in self.parts)

    def __str__(self) -> str:
        body = ", ".join(f"{h}x{q}" if h > 1 else f"{q}" for h, q in self.parts)
        return f"K({self.hub}; {body})" if body else f"K({self.hub};)"


def family(hub: int, *parts: tuple[int, int]) -> FamilySpec:
    """Shorthand constructor: family(2, (5, 1)) is K(2; 5x1)."""
    return FamilySpec(hub, tuple(parts))


def family_cells(spec: FamilySpec) -> list[list[int]]:
    """Vertex cells of the natural partition: hub first, then one cell per
    distinct part size (all copies of equal-size cliques pooled together)."""
    cells: list[list[int]] = []
    if spec.hub > 0:
        cells.append(list(range(spec.hub)))
    base = spec.hub
    for mult, size in spec.parts:
        cells.append(list(range(base, base + mult * size)))
        base += mult * size
    return cells


def from_family(spec: FamilySpec) -> Graph:
    """Build the graph: hub clique joined to every part, parts pairwise disjoint."""
    n = spec.order
    bits = 0
    # hub clique + hub joined to everything
    for v in range(1, n):
        for u in range(min(v, spec.hub)):
            bits |= 1 << pair_index(u, v)
    base = spec.hub
    for mult, size in spec.parts:
        for _ in range(mult):
            for j in range(base, base + size):
                for i in range(base, j):
                    bits |= 1 << pair_index(i, j)
            base += size
    return Graph(n, bits)


# ---------------------------------------------------------------------------
# structural queries
# ---------------------------------------------------------------------------


def _component_masks(masks: Sequence[int], avail: int) -> list[int]:
    """Connected components of the subgraph induced on the `avail` bitmask."""
    comps = []
    rest = avail
    while rest:
        seed = rest & -rest
        seen = seed
        frontier = seed
        while frontier:
            nxt = 0
            m = frontier
            while m:
                vb = m & -m
                nxt |= masks[vb.bit_length() - 1]
                m ^= vb
            frontier = nxt & rest & ~seen
            seen |= frontier
        comps.append(seen)
        rest &= ~seen
    return comps


def components(g: Graph) -> list[list[int]]:
    """Vertex sets of connected components, ordered by smallest member."""
    out = []
    for mask in _component_masks(g.neighbor_masks, (1 << g.n) - 1):
        out.append([v for v in range(g.n) if (mask >> v) & 1])
    return out


def odd_component_count(g: Graph) -> int:
    full = (1 << g.n) - 1
    return sum(
        1 for m in _component_masks(g.neighbor_masks, full) if m.bit_count() % 2 == 1
    )


def isolated_count(g: Graph) -> int:
    return sum(1 for m in g.neighbor_masks if m == 0)


def is_connected(g: Graph) -> bool:
    full = (1 << g.n) - 1
    comps = _component_masks(g.neighbor_masks, full)
    return len(comps) == 1


def min_degree(g: Graph) -> int:
    return min(g.degrees)


def delete_vertices(g: Graph, remove: Iterable[int]) -> Graph:
    """Induced subgraph after deleting `remove`; deleting every vertex is an error."""
    rm = set(remove)
    for v in rm:
        if not (0 <= v < g.n):
            raise ValueError(f"vertex out of range: {v}")
    keep = [v for v in range(g.n) if v not in rm]
    if not keep:
        raise ValueError("cannot delete the entire vertex set")
    relabel = {v: i for i, v in enumerate(keep)}
    bits = 0
    for u, v in g.edges():
        if u in relabel and v in relabel:
            bits |= 1 << pair_index(relabel[u], relabel[v])
    return Graph(len(keep), bits)


def join(g: Graph, h: Graph) -> Graph:
    """Graph join: disjoint copies of g and h plus all edges between them."""
    n = g.n + h.n
    bits = 0
    for u, v in g.edges():
        bits |= 1 << pair_index(u, v)
    for u, v in h.edges():
        bits |= 1 << pair_index(u + g.n, v + g.n)
    for u in range(g.n):
        for v in range(g.n, n):
            bits |= 1 << pair_index(u, v)
    return Graph(n, bits)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    n = g.n + h.n
    bits = 0
    for u, v in g.edges():
        bits |= 1 << pair_index(u, v)
    for u, v in h.edges():
        bits |= 1 << pair_index(u + g.n, v + g.n)
    return Graph(n, bits)


# ---------------------------------------------------------------------------
# graph6 codec and edge-list text format
# ---------------------------------------------------------------------------


class Graph6Error(ValueError):
    """Malformed graph6 input; `offset` is the byte position of the problem."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def to_graph6(g: Graph) -> str:
    if g.n > MAX_GRAPH6_ORDER:
        raise ValueError(f"graph6 output limited to order {MAX_GRAPH6_ORDER}")
    nbits = g.n * (g.n - 1) // 2
    chars = [chr(63 + g.n)]
    for group in range(0, nbits, 6):
        val = 0
        for t in range(6):
            k = group + t
            bit = (g.bits >> k) & 1 if k < nbits else 0
            val = (val << 1) | bit
        chars.append(chr(63 + val))
    return "".join(chars)


def from_graph6(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as exc:
            raise Graph6Error("non-ASCII byte in graph6 input", exc.start) from None
    if not text:
        raise Graph6Error("empty graph6 string", 0)
    header = ord(text[0])
    if header == 126:
        raise Graph6Error("multi-byte graph6 order headers not supported", 0)
    if not (63 <= header <= 63 + MAX_GRAPH6_ORDER):
        raise Graph6Error(f"invalid order header {text[0]!r}", 0)
    n = header - 63
    if n == 0:
        raise Graph6Error("order-0 graph not representable", 0)
    nbits = n * (n - 1) // 2
    want = 1 + (nbits + 5) // 6
    if len(text) != want:
        raise Graph6Error(
            f"expected {want} bytes for order {n}, got {len(text)}",
            min(len(text), want),
        )
    bits = 0
    for i, ch in enumerate(text[1:], start=1):
        code = ord(ch)
        if not (63 <= code <= 126):
            raise Graph6Error(f"byte {ch!r} outside graph6 alphabet", i)
        val = code - 63
        for t in range(6):
            k = (i - 1) * 6 + t
            bit = (val >> (5 - t)) & 1
            if k < nbits:
                bits |= bit << k
            elif bit:
                raise Graph6Error("nonzero padding bits", i)
    return Graph(n, bits)


def to_edge_list_text(g: Graph) -> str:
    lines = [f"{g.n} {g.num_edges}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def from_edge_list_text(text: str) -> Graph:
    """Parse the "n m" / "u v" edge-list format, validating counts and ranges."""
    rows = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not rows:
        raise ValueError("empty edge-list input")
    head = rows[0].split()
    if len(head) != 2:
        raise ValueError(f"header must be 'n m', got {rows[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise ValueError(f"header must be two integers, got {rows[0]!r}") from None
    if n < 1:
        raise ValueError("graph order must be at least 1")
    if len(rows) - 1 != m:
        raise ValueError(f"header promises {m} edges, found {len(rows) - 1} lines")
    seen = set()
    edges = []
    for ln_no, row in enumerate(rows[1:], start=2):
        cols = row.split()
        if len(cols) != 2:
            raise ValueError(f"line {ln_no}: expected 'u v', got {row!r}")
        try:
            u, v = int(cols[0]), int(cols[1])
        except ValueError:
            raise ValueError(f"line {ln_no}: non-integer endpoint in {row!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"line {ln_no}: endpoint out of range in {row!r}")
        if u == v:
            raise ValueError(f"line {ln_no}: loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ValueError(f"line {ln_no}: duplicate edge {key}")
        seen.add(key)
        edges.append(key)
    return build_graph(n, edges)


# ---------------------------------------------------------------------------
# canonical forms and isomorphism (desk scale)
# ---------------------------------------------------------------------------


def _refine(nbr: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    """Stabilize an ordered partition under neighbor-count refinement."""
    while True:
        masks = [sum(1 << v for v in cell) for cell in cells]
        new_cells: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            buckets: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                sig = tuple((nbr[v] & m).bit_count() for m in masks)
                buckets.setdefault(sig, []).append(v)
            if len(buckets) > 1:
                changed = True
            for sig in sorted(buckets):
                new_cells.append(buckets[sig])
        if not changed:
            return new_cells
        cells = new_cells


def _is_homogeneous(nbr: Sequence[int], cells: list[list[int]]) -> bool:
    """After stable refinement counts are constant per cell, so checking one
    representative suffices: every cell must induce a clique or independent
    set, and every cell pair must be completely joined or completely empty."""
    masks = [sum(1 << v for v in cell) for cell in cells]
    for i, cell in enumerate(cells):
        v = cell[0]
        if (nbr[v] & masks[i]).bit_count() not in (0, len(cell) - 1):
            return False
        for j in range(i + 1, len(cells)):
            if (nbr[v] & masks[j]).bit_count() not in (0, len(cells[j])):
                return False
    return True


def _packed_under(nbr: Sequence[int], perm: Sequence[int]) -> int:
    bits = 0
    k = 0
    for v in range(len(perm)):
        pv = perm[v]
        for u in range(v):
            if (nbr[perm[u]] >> pv) & 1:
                bits |= 1 << k
            k += 1
    return bits


def canonical_form(g: Graph, max_order: int | None = None) -> bytes:
    """Canonical byte string (order byte + packed canonical adjacency).

    Degree refinement with individualization backtracking; partitions whose
    cells are all cliques/independent sets with uniform joins short-circuit,
    which covers the clique-star families and complete graphs.
    """
    cap = max_order if max_order is not None else _env_cap(MAX_ISO_ORDER)
    if g.n > cap:
        raise ValueError(f"canonical form limited to order {cap}")
    nbr = g.neighbor_masks
    by_deg: dict[int, list[int]] = {}
    for v in range(g.n):
        by_deg.setdefault(nbr[v].bit_count(), []).append(v)
    init = [by_deg[d] for d in sorted(by_deg)]
    best: int | None = None

    def rec(cells: list[list[int]]) -> None:
        nonlocal best
        cells = _refine(nbr, cells)
        if all(len(c) == 1 for c in cells):
            cand = _packed_under(nbr, [c[0] for c in cells])
            if best is None or cand < best:
                best = cand
            return
        if _is_homogeneous(nbr, cells):
            perm = [v for cell in cells for v in sorted(cell)]
            cand = _packed_under(nbr, perm)
            if best is None or cand < best:
                best = cand
            return
        t = next(i for i, c in enumerate(cells) if len(c) > 1)
        for v in cells[t]:
            child = (
                cells[:t]
                + [[v], [u for u in cells[t] if u != v]]
                + cells[t + 1 :]
            )
            rec(child)

    rec(init)
    assert best is not None
    nbytes = (g.n * (g.n - 1) // 2 + 7) // 8
    return bytes([g.n]) + best.to_bytes(nbytes, "little")


def is_isomorphic(g: Graph, h: Graph, max_order: int | None = None) -> bool:
    if g.n != h.n or g.num_edges != h.num_edges:
        return False
    if sorted(g.degrees) != sorted(h.degrees):
        return False
    return canonical_form(g, max_order) == canonical_form(h, max_order)


# ---------------------------------------------------------------------------
# exhaustive labeled enumeration
# ---------------------------------------------------------------------------

_REV8 = tuple(int(f"{i:08b}"[::-1], 2) for i in range(256))


def _bit_reverse(m: int, width: int) -> int:
    out = 0
    nbytes = (width + 7) // 8
    for _ in range(nbytes):
        out = (out << 8) | _REV8[m & 255]
        m >>= 8
    return out >> (nbytes * 8 - width)


def _connected_bits(n: int, bits: int) -> bool:
    if n == 1:
        return True
    masks = [0] * n
    k = 0
    for v in range(1, n):
        for u in range(v):
            if (bits >> k) & 1:
                masks[u] |= 1 << v
                masks[v] |= 1 << u
            k += 1
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        m = frontier
        while m:
            vb = m & -m
            nxt |= masks[vb.bit_length() - 1]
            m ^= vb
        frontier = nxt & ~seen
        seen |= frontier
    return seen == (1 << n) - 1


def enumerate_connected(
    order: int,
    sink: Callable[[Graph], None] | None = None,
    max_order: int | None = None,
) -> int:
    """Visit every labeled simple connected graph on {0..order-1} exactly once,
    in lexicographic order of the packed upper-triangle bit sequence.  Returns
    the number of connected graphs visited."""
    cap = max_order if max_order is not None else _env_cap(MAX_ENUM_ORDER)
    if not (1 <= order <= cap):
        raise ValueError(f"enumeration order must be in 1..{cap}")
    nbits = order * (order - 1) // 2
    count = 0
    for m in range(1 << nbits):
        bits = _bit_reverse(m, nbits) if nbits else 0
        if _connected_bits(order, bits):
            count += 1
            if sink is not None:
                sink(Graph(order, bits))
    return count
