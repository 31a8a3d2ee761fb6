"""Matrices and spectral values attached to a graph.

Three matrices drive the threshold theorems: the adjacency matrix (spectral
radius rho), the signless Laplacian diag(deg) + A (spectral radius kappa),
and the distance matrix of a connected graph (spectral radius mu1).

Floating-point eigenvalues are produced by LAPACK's symmetric solver and
returned together with an explicit residual ||Mv - lambda v||, so callers
can hold them to a tolerance contract.  Exact work (characteristic
polynomials, root isolation, tie-breaking between algebraic numbers) runs
over arbitrary-precision rationals: polynomial signs are evaluated exactly,
so bisection never suffers cancellation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

from .graphs import Graph, _component_masks

DEFAULT_EIG_TOLERANCE = 1e-10
DEFAULT_ROOT_TOLERANCE = 1e-10

KIND_RHO = "rho"      # adjacency
KIND_KAPPA = "kappa"  # signless Laplacian
KIND_MU1 = "mu1"      # distance


class NumericError(RuntimeError):
    """A numeric contract (residual bound, root isolation) could not be met."""


# ---------------------------------------------------------------------------
# matrix builders
# ---------------------------------------------------------------------------


def adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=np.int64)
    for u, v in g.edges():
        a[u, v] = a[v, u] = 1
    return a


def signless_laplacian(g: Graph) -> np.ndarray:
    """diag(deg) + A; every row sums to twice the vertex degree."""
    a = adjacency_matrix(g)
    return a + np.diag(np.asarray(g.degrees, dtype=np.int64))


def _bfs_distances(g: Graph, source: int) -> list[int]:
    masks = g.neighbor_masks
    dist = [-1] * g.n
    dist[source] = 0
    seen = 1 << source
    frontier = seen
    d = 0
    while frontier:
        d += 1
        nxt = 0
        m = frontier
        while m:
            vb = m & -m
            nxt |= masks[vb.bit_length() - 1]
            m ^= vb
        frontier = nxt & ~seen
        seen |= frontier
        m = frontier
        while m:
            vb = m & -m
            dist[vb.bit_length() - 1] = d
            m ^= vb
    return dist


def distance_matrix(g: Graph) -> np.ndarray:
    """BFS distances; raises for disconnected input (distances are undefined)."""
    full = (1 << g.n) - 1
    if g.n > 1 and len(_component_masks(g.neighbor_masks, full)) != 1:
        raise ValueError("distance matrix undefined for a disconnected graph")
    d = np.zeros((g.n, g.n), dtype=np.int64)
    for v in range(g.n):
        d[v, :] = _bfs_distances(g, v)
    return d


def wiener_index(g: Graph) -> int:
    """Sum of distances over unordered vertex pairs (connected graphs only)."""
    return int(distance_matrix(g).sum()) // 2


# ---------------------------------------------------------------------------
# floating-point spectral values with residual contract
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectralValue:
    """Largest eigenvalue plus the residual of its eigenpair."""

    value: float
    kind: str
    residual: float


def largest_eigenvalue(
    matrix: np.ndarray,
    kind: str = "generic",
    tolerance: float = DEFAULT_EIG_TOLERANCE,
) -> SpectralValue:
    """Largest eigenvalue of a real symmetric matrix.

    Symmetric tridiagonalization + implicit-shift QR via LAPACK, followed by
    a residual check on the returned eigenpair; a short power-polish loop
    kicks in if the first residual misses the bound.
    """
    m = np.asarray(matrix, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"matrix must be square, got shape {m.shape}")
    if not np.array_equal(m, m.T):
        raise ValueError("matrix must be symmetric")
    w, vecs = np.linalg.eigh(m)
    lam = float(w[-1])
    vec = vecs[:, -1]
    res = float(np.linalg.norm(m @ vec - lam * vec))
    for _ in range(8):
        if res <= tolerance:
            break
        nxt = m @ vec
        norm = np.linalg.norm(nxt)
        if norm == 0.0:
            break
        vec = nxt / norm
        lam = float(vec @ (m @ vec))
        res = float(np.linalg.norm(m @ vec - lam * vec))
    if res > tolerance:
        raise NumericError(f"eigen residual {res:.3e} exceeds tolerance {tolerance:.1e}")
    return SpectralValue(value=lam, kind=kind, residual=res)


def rho(g: Graph, tolerance: float = DEFAULT_EIG_TOLERANCE) -> SpectralValue:
    return largest_eigenvalue(adjacency_matrix(g), KIND_RHO, tolerance)


def kappa(g: Graph, tolerance: float = DEFAULT_EIG_TOLERANCE) -> SpectralValue:
    return largest_eigenvalue(signless_laplacian(g), KIND_KAPPA, tolerance)


def mu1(g: Graph, tolerance: float = DEFAULT_EIG_TOLERANCE) -> SpectralValue:
    return largest_eigenvalue(distance_matrix(g), KIND_MU1, tolerance)


# ---------------------------------------------------------------------------
# exact integer polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntegerPolynomial:
    """Exact integer coefficients, lowest degree first, nonzero leading term."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        cs = tuple(int(c) for c in self.coeffs)
        while len(cs) > 1 and cs[-1] == 0:
            cs = cs[:-1]
        if not cs:
            cs = (0,)
        object.__setattr__(self, "coeffs", cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def __call__(self, x: Fraction | int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntegerPolynomial":
        if self.degree == 0:
            return IntegerPolynomial((0,))
        return IntegerPolynomial(tuple(k * c for k, c in enumerate(self.coeffs) if k > 0))

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    def __str__(self) -> str:
        return format_polynomial(self)


def format_polynomial(p: IntegerPolynomial) -> str:
    """Human form, highest degree first: "x^3 - 2 x^2 - 6 x + 6"."""
    if all(c == 0 for c in p.coeffs):
        return "0"
    terms = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        elif k == 1:
            body = "x" if mag == 1 else f"{mag} x"
        else:
            body = f"x^{k}" if mag == 1 else f"{mag} x^{k}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(terms)


def rational_char_poly(matrix: Sequence[Sequence[Fraction | int]]) -> list[Fraction]:
    """Monic characteristic polynomial of a square matrix with exact entries,
    lowest degree first, by the Faddeev-LeVerrier recurrence (division-safe
    over rationals: each step divides a trace by an integer)."""
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    if n == 0:
        raise ValueError("empty matrix has no characteristic polynomial")
    coeffs = [Fraction(1)]  # c_0 = 1 for x^n
    mk = [row[:] for row in a]
    for k in range(1, n + 1):
        ck = -sum(mk[i][i] for i in range(n)) / k
        coeffs.append(ck)
        if k == n:
            break
        for i in range(n):
            mk[i][i] += ck
        mk = [
            [sum(a[i][t] * mk[t][j] for t in range(n)) for j in range(n)]
            for i in range(n)
        ]
    return list(reversed(coeffs))  # lowest degree first


def char_poly(matrix: Sequence[Sequence[int]] | np.ndarray) -> IntegerPolynomial:
    """Exact characteristic polynomial of an integer matrix: monic, degree n."""
    if isinstance(matrix, np.ndarray):
        if not np.issubdtype(matrix.dtype, np.integer):
            raise ValueError("char_poly requires exact integer entries")
        matrix = matrix.tolist()
    for row in matrix:
        for x in row:
            if not isinstance(x, int) and not (
                isinstance(x, Fraction) and x.denominator == 1
            ):
                raise ValueError(f"char_poly requires exact integer entries, got {x!r}")
    cs = rational_char_poly(matrix)
    assert all(c.denominator == 1 for c in cs)
    return IntegerPolynomial(tuple(int(c) for c in cs))


def clear_denominators(coeffs: Iterable[Fraction]) -> IntegerPolynomial:
    """Scale a rational polynomial by the lcm of denominators (same roots)."""
    cs = [Fraction(c) for c in coeffs]
    if not cs:
        raise ValueError("empty coefficient list")
    scale = lcm(*(c.denominator for c in cs)) if len(cs) > 1 else cs[0].denominator
    return IntegerPolynomial(tuple(int(c * scale) for c in cs))


# ---------------------------------------------------------------------------
# exact root location via Sturm chains
# ---------------------------------------------------------------------------


def _sign(x: Fraction | int) -> int:
    return (x > 0) - (x < 0)


def cauchy_bound(p: IntegerPolynomial) -> Fraction:
    """1 + max |a_i / a_lead|: every real root lies inside (-B, B)."""
    lead = abs(p.leading)
    if lead == 0:
        raise ValueError("zero polynomial has no root bound")
    return 1 + max(Fraction(abs(c), lead) for c in p.coeffs[:-1]) if p.degree else Fraction(1)


def _poly_mod(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = a[:]
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and any(c != 0 for c in a):
        shift = len(a) - 1 - db
        factor = a[-1] / lb
        for i in range(db + 1):
            a[shift + i] -= factor * b[i]
        while len(a) > 1 and a[-1] == 0:
            a.pop()
    if all(c == 0 for c in a):
        return [Fraction(0)]
    return a


def _primitive(coeffs: Iterable[Fraction], keep_sign: bool = True) -> IntegerPolynomial:
    """Clear denominators and divide out content; positive scaling only when
    `keep_sign`, so Sturm sign sequences survive the normalization."""
    cleared = clear_denominators(coeffs)
    g = 0
    for c in cleared.coeffs:
        g = gcd(g, abs(c))
    if g == 0:
        return IntegerPolynomial((0,))
    cs = tuple(c // g for c in cleared.coeffs)
    if not keep_sign and cs[-1] < 0:
        cs = tuple(-c for c in cs)
    return IntegerPolynomial(cs)


def poly_gcd(p: IntegerPolynomial, q: IntegerPolynomial) -> IntegerPolynomial:
    """Primitive integer gcd of two integer polynomials (Euclid over Q)."""
    a = [Fraction(c) for c in p.coeffs]
    b = [Fraction(c) for c in q.coeffs]
    while len(b) > 1 or b[0] != 0:
        a, b = b, _poly_mod(a, b)
    if len(a) == 1 and a[0] == 0:
        return IntegerPolynomial((0,))
    return _primitive(a, keep_sign=False)


def _poly_div_exact(a: IntegerPolynomial, b: IntegerPolynomial) -> IntegerPolynomial:
    """a / b for exactly divisible integer polynomials, primitive result."""
    num = [Fraction(c) for c in a.coeffs]
    den = [Fraction(c) for c in b.coeffs]
    out = [Fraction(0)] * (len(num) - len(den) + 1)
    while len(num) - 1 >= len(den) - 1 and any(c != 0 for c in num):
        shift = len(num) - len(den)
        factor = num[-1] / den[-1]
        out[shift] = factor
        for i in range(len(den)):
            num[shift + i] -= factor * den[i]
        while len(num) > 1 and num[-1] == 0:
            num.pop()
    return _primitive(out)


def squarefree_part(p: IntegerPolynomial) -> IntegerPolynomial:
    """p with repeated factors collapsed; same root set, all roots simple."""
    if p.degree <= 1:
        return _primitive((Fraction(c) for c in p.coeffs))
    g = poly_gcd(p, p.derivative())
    if g.degree == 0:
        return _primitive((Fraction(c) for c in p.coeffs))
    return _poly_div_exact(p, g)


def _sturm_chain(sf: IntegerPolynomial) -> list[IntegerPolynomial]:
    chain = [sf, _primitive((Fraction(c) for c in sf.derivative().coeffs))]
    while chain[-1].degree > 0:
        rem = _poly_mod(
            [Fraction(c) for c in chain[-2].coeffs],
            [Fraction(c) for c in chain[-1].coeffs],
        )
        if len(rem) == 1 and rem[0] == 0:
            break
        chain.append(_primitive((-c for c in rem)))
    return chain


def _variations_at(chain: list[IntegerPolynomial], x: Fraction) -> int:
    signs = [s for s in (_sign(p(x)) for p in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


class _LargestRootLocator:
    """Sturm-based bracket (lo, hi] around the largest real root of p.

    Root counting makes the search immune to coarse-scan misses: at every
    step the number of roots above the midpoint is known exactly.
    """

    def __init__(self, p: IntegerPolynomial) -> None:
        if p.degree < 1:
            raise ValueError("constant polynomial has no roots")
        self.sf = squarefree_part(p)
        self.chain = _sturm_chain(self.sf)
        bound = cauchy_bound(self.sf)
        self._v_top = _variations_at(self.chain, bound)
        if _variations_at(self.chain, -bound) - self._v_top == 0:
            raise NumericError("polynomial has no real roots")
        self.lo: Fraction = -bound
        self.hi: Fraction = bound

    def roots_above(self, x: Fraction) -> int:
        return _variations_at(self.chain, x) - self._v_top

    def try_hint(self, hint: float) -> None:
        lo = Fraction(hint).limit_denominator(10**12) - 1
        hi = lo + 2
        if hi < self.hi and self.roots_above(hi) == 0 and self.roots_above(lo) >= 1:
            self.lo, self.hi = lo, hi

    def narrow(self, eps: Fraction) -> None:
        while self.hi - self.lo > eps and self.lo != self.hi:
            mid = (self.lo + self.hi) / 2
            if self.sf(mid) == 0:
                if self.roots_above(mid) == 0:
                    self.lo = self.hi = mid  # largest root is exactly rational
                    return
                self.lo = mid
            elif self.roots_above(mid) >= 1:
                self.lo = mid
            else:
                self.hi = mid

    def midpoint(self) -> float:
        return float((self.lo + self.hi) / 2)


def largest_real_root(
    p: IntegerPolynomial,
    bracket: float | None = None,
    tolerance: float = DEFAULT_ROOT_TOLERANCE,
) -> float:
    """Largest real root, to within `tolerance`.

    Bisection by exact Sturm root counting below the Cauchy bound; polynomial
    signs are evaluated over the rationals, so no root is ever missed and no
    tolerance is consumed by evaluation error.  `bracket` is an optional hint
    that just shrinks the initial interval.
    """
    loc = _LargestRootLocator(p)
    if bracket is not None:
        loc.try_hint(bracket)
    eps = Fraction(tolerance).limit_denominator(10**15) / 4
    loc.narrow(eps)
    return loc.midpoint()


def count_real_roots_in(p: IntegerPolynomial, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots in (lo, hi]."""
    sf = squarefree_part(p)
    chain = _sturm_chain(sf)
    return _variations_at(chain, lo) - _variations_at(chain, hi)


def compare_largest_roots(p: IntegerPolynomial, q: IntegerPolynomial) -> int:
    """Sign of (largest real root of p) - (largest real root of q), decided
    exactly.

    Both roots are narrowed by Sturm bisection until their brackets separate.
    If they refuse to separate, equality is decided for real: the gcd of the
    two polynomials carries exactly the common roots, so a Sturm count of the
    gcd over the shared bracket settles whether the two largest roots are the
    same algebraic number.
    """
    la, lb = _LargestRootLocator(p), _LargestRootLocator(q)
    eps = Fraction(1, 4)
    for _ in range(40):
        la.narrow(eps)
        lb.narrow(eps)
        if la.lo == la.hi:  # root of p is exactly rational; decide outright
            r = la.lo
            if lb.roots_above(r) >= 1:
                return -1
            return 0 if lb.sf(r) == 0 else 1
        if lb.lo == lb.hi:
            r = lb.lo
            if la.roots_above(r) >= 1:
                return 1
            return 0 if la.sf(r) == 0 else -1
        if la.lo >= lb.hi:  # root_a > la.lo >= lb.hi >= root_b
            return 1
        if lb.lo >= la.hi:
            return -1
        if eps < Fraction(1, 10**60):
            g = poly_gcd(p, q)
            if g.degree >= 1:
                lo = max(la.lo, lb.lo) - eps
                hi = min(la.hi, lb.hi)
                if count_real_roots_in(g, lo, hi) >= 1:
                    return 0
            if eps < Fraction(1, 10**150):
                raise NumericError("could not separate or equate largest roots")
        eps /= 2**16
    raise NumericError("could not separate or equate largest roots")
