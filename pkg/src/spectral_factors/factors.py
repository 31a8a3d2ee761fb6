"""Factor existence: perfect matchings and star-cycle factors, with
certificates and violating-subset witnesses.

A perfect matching partitions the vertex set into edges; the obstruction
is a set X with more odd components in G - X than |X| (Tutte's condition).
A star-cycle factor partitions the vertex set into components drawn from
{K_1,1, K_1,2, C_m (m >= 3)}; the obstruction is a set X leaving more than
2|X| isolated vertices (the Akiyama-Era condition).  Both directions are
implemented: a constructive search that emits a certificate, and an
exhaustive witness search over vertex subsets, so each decision can be
cross-checked against its obstruction dual.

The matching search is the polynomial blossom-contraction algorithm; an
exponential subset-DP matcher is kept alongside as an independent oracle
for desk-scale cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .graphs import Graph, _component_masks, _env_cap

MAX_WITNESS_ORDER = 16  # 2^n subsets in the witness searches


def _bits_list(mask: int) -> list[int]:
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out


# ---------------------------------------------------------------------------
# certificates and witnesses
# ---------------------------------------------------------------------------

COMP_EDGE = "K2"    # single edge
COMP_PATH = "K12"   # 3-vertex star, stored (center, leaf, leaf)
COMP_CYCLE = "C"    # cycle, stored in traversal order


@dataclass(frozen=True)
class FactorCertificate:
    """Components tagged K2 / K12 / C that partition the vertex set."""

    components: tuple[tuple[str, tuple[int, ...]], ...]

    def to_json(self) -> dict:
        return {
            "components": [
                {"kind": kind, "vertices": list(vs)} for kind, vs in self.components
            ]
        }


def validate_certificate(g: Graph, cert: FactorCertificate) -> bool:
    """Check the partition property and each component's required edges."""
    seen: set[int] = set()
    for kind, vs in cert.components:
        for v in vs:
            if not (0 <= v < g.n) or v in seen:
                return False
            seen.add(v)
        if kind == COMP_EDGE:
            if len(vs) != 2 or not g.has_edge(vs[0], vs[1]):
                return False
        elif kind == COMP_PATH:
            if len(vs) != 3:
                return False
            center, a, b = vs
            if not (g.has_edge(center, a) and g.has_edge(center, b)):
                return False
        elif kind == COMP_CYCLE:
            if len(vs) < 3:
                return False
            for i, v in enumerate(vs):
                if not g.has_edge(v, vs[(i + 1) % len(vs)]):
                    return False
        else:
            return False
    return len(seen) == g.n


@dataclass(frozen=True)
class Witness:
    """A subset X certifying factor absence; `count` vs `bound` is the
    violated comparison (odd components > |X|, or isolated > 2|X|)."""

    kind: str  # 'tutte' | 'iso'
    subset: tuple[int, ...]
    count: int
    bound: int

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "subset": list(self.subset),
            "count": self.count,
            "bound": self.bound,
        }


def validate_witness(g: Graph, w: Witness) -> bool:
    """Recompute the violated comparison from scratch."""
    xmask = 0
    for v in w.subset:
        if not (0 <= v < g.n) or (xmask >> v) & 1:
            return False
        xmask |= 1 << v
    rem = ((1 << g.n) - 1) ^ xmask
    nbr = g.neighbor_masks
    if w.kind == "tutte":
        o = sum(1 for c in _component_masks(nbr, rem) if c.bit_count() % 2 == 1)
        return o == w.count and w.bound == len(w.subset) and o > w.bound
    if w.kind == "iso":
        iso = sum(1 for v in _bits_list(rem) if nbr[v] & rem == 0)
        return iso == w.count and w.bound == 2 * len(w.subset) and iso > w.bound
    return False


# ---------------------------------------------------------------------------
# perfect matchings
# ---------------------------------------------------------------------------


def maximum_matching(g: Graph) -> list[tuple[int, int]]:
    """Maximum matching by blossom contraction (correct on odd cycles)."""
    n = g.n
    adj = [_bits_list(m) for m in g.neighbor_masks]
    match = [-1] * n
    parent = [-1] * n
    base = list(range(n))
    in_queue = [False] * n
    in_blossom = [False] * n

    def lca(a: int, b: int) -> int:
        on_path = [False] * n
        while True:
            a = base[a]
            on_path[a] = True
            if match[a] == -1:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if on_path[b]:
                return b
            b = parent[match[b]]

    def mark_path(v: int, b: int, child: int) -> None:
        while base[v] != b:
            in_blossom[base[v]] = True
            in_blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    def find_augmenting_path(root: int) -> bool:
        nonlocal parent, base, in_queue
        parent = [-1] * n
        base = list(range(n))
        in_queue = [False] * n
        in_queue[root] = True
        queue = [root]
        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    # odd cycle: contract the blossom at the lowest common base
                    cur_base = lca(v, to)
                    for i in range(n):
                        in_blossom[i] = False
                    mark_path(v, cur_base, to)
                    mark_path(to, cur_base, v)
                    for i in range(n):
                        if in_blossom[base[i]]:
                            base[i] = cur_base
                            if not in_queue[i]:
                                in_queue[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        # augment along the alternating path back to the root
                        u = to
                        while u != -1:
                            pv = parent[u]
                            nxt = match[pv]
                            match[u] = pv
                            match[pv] = u
                            u = nxt
                        return True
                    in_queue[match[to]] = True
                    queue.append(match[to])
        return False

    for v in range(n):  # greedy seed shrinks the number of augmenting rounds
        if match[v] == -1:
            for to in adj[v]:
                if match[to] == -1:
                    match[v] = to
                    match[to] = v
                    break
    for v in range(n):
        if match[v] == -1:
            find_augmenting_path(v)
    return [(v, match[v]) for v in range(n) if v < match[v]]


def has_perfect_matching(g: Graph) -> tuple[bool, FactorCertificate | None]:
    """Flag plus an edge-partition certificate when one exists."""
    if g.n % 2 == 1:
        return False, None
    pairs = maximum_matching(g)
    if 2 * len(pairs) != g.n:
        return False, None
    cert = FactorCertificate(tuple((COMP_EDGE, pair) for pair in sorted(pairs)))
    return True, cert


def matchable_by_subset_dp(g: Graph) -> bool:
    """Independent exact matcher: memoized search over vertex subsets."""
    if g.n % 2 == 1:
        return False
    nbr = g.neighbor_masks

    @lru_cache(maxsize=None)
    def can(mask: int) -> bool:
        if mask == 0:
            return True
        b = mask & -mask
        v = b.bit_length() - 1
        cand = nbr[v] & mask
        while cand:
            ub = cand & -cand
            if can(mask ^ b ^ ub):
                return True
            cand ^= ub
        return False

    result = can((1 << g.n) - 1)
    can.cache_clear()
    return result


def tutte_witness(g: Graph, max_order: int | None = None) -> Witness | None:
    """Exhaustive search over all subsets X for o(G-X) > |X|; returns the
    lexicographically first X of minimal size, or None if no subset violates
    (which certifies a perfect matching exists).  X ranges over the full
    power set including the empty set and V(G) itself."""
    cap = max_order if max_order is not None else _env_cap(MAX_WITNESS_ORDER)
    if g.n > cap:
        raise ValueError(f"witness search limited to order {cap}")
    nbr = g.neighbor_masks
    full = (1 << g.n) - 1
    for k in range(g.n + 1):
        for xs in combinations(range(g.n), k):
            xmask = 0
            for v in xs:
                xmask |= 1 << v
            rem = full ^ xmask
            o = sum(1 for c in _component_masks(nbr, rem) if c.bit_count() % 2 == 1)
            if o > k:
                return Witness(kind="tutte", subset=xs, count=o, bound=k)
    return None


# ---------------------------------------------------------------------------
# star-cycle factors
# ---------------------------------------------------------------------------


def has_star_cycle_factor(g: Graph) -> tuple[bool, FactorCertificate | None]:
    """Deterministic backtracking cover of the vertex set by K2 / K12 / C_m.

    The lowest uncovered vertex v anchors every candidate component; options
    are tried as single edges first, then 3-vertex stars with v as center and
    as leaf, then cycles through v by increasing length, everything in
    ascending vertex order.  Subsets of remaining vertices that admit no
    cover are memoized, which keeps repeated failures from re-branching.
    """
    nbr = g.neighbor_masks
    failed: set[int] = set()
    comps: list[tuple[str, tuple[int, ...]]] = []

    def close_cycles(v: int, length: int, rem: int) -> bool:
        vmask = 1 << v
        path = [v]

        def extend(last: int, used: int, depth: int) -> bool:
            if depth == length:
                if (nbr[last] >> v) & 1 and path[1] < path[-1]:
                    comps.append((COMP_CYCLE, tuple(path)))
                    if cover(rem & ~used):
                        return True
                    comps.pop()
                return False
            cand = nbr[last] & rem & ~used
            while cand:
                b = cand & -cand
                u = b.bit_length() - 1
                path.append(u)
                if extend(u, used | b, depth + 1):
                    return True
                path.pop()
                cand ^= b
            return False

        return extend(v, vmask, 1)

    def cover(rem: int) -> bool:
        if rem == 0:
            return True
        if rem in failed:
            return False
        b = rem & -rem
        v = b.bit_length() - 1
        avail = nbr[v] & rem
        neighbors = _bits_list(avail)
        # single edge
        for u in neighbors:
            comps.append((COMP_EDGE, (v, u)))
            if cover(rem ^ b ^ (1 << u)):
                return True
            comps.pop()
        # 3-star, v center
        for i in range(len(neighbors)):
            for j in range(i + 1, len(neighbors)):
                u, w = neighbors[i], neighbors[j]
                comps.append((COMP_PATH, (v, u, w)))
                if cover(rem ^ b ^ (1 << u) ^ (1 << w)):
                    return True
                comps.pop()
        # 3-star, v leaf: center c adjacent to v, second leaf from c's side
        for c in neighbors:
            for w in _bits_list(nbr[c] & rem & ~b & ~(1 << c)):
                comps.append((COMP_PATH, (c, v, w)))
                if cover(rem ^ b ^ (1 << c) ^ (1 << w)):
                    return True
                comps.pop()
        # cycles through v, shortest first
        for length in range(3, rem.bit_count() + 1):
            if close_cycles(v, length, rem):
                return True
        failed.add(rem)
        return False

    if cover((1 << g.n) - 1):
        return True, FactorCertificate(tuple(comps))
    return False, None


def iso_witness(g: Graph, max_order: int | None = None) -> Witness | None:
    """Exhaustive search over all subsets X for iso(G-X) > 2|X|; returns the
    lexicographically first X of minimal size, or None (no star-cycle
    obstruction).  The empty set counts isolated vertices of G itself."""
    cap = max_order if max_order is not None else _env_cap(MAX_WITNESS_ORDER)
    if g.n > cap:
        raise ValueError(f"witness search limited to order {cap}")
    nbr = g.neighbor_masks
    full = (1 << g.n) - 1
    for k in range(g.n + 1):
        for xs in combinations(range(g.n), k):
            xmask = 0
            for v in xs:
                xmask |= 1 << v
            rem = full ^ xmask
            iso = 0
            probe = rem
            while probe:
                vb = probe & -probe
                if nbr[vb.bit_length() - 1] & rem == 0:
                    iso += 1
                probe ^= vb
            if iso > 2 * k:
                return Witness(kind="iso", subset=xs, count=iso, bound=2 * k)
    return None
