"""The five threshold statements and their verdict checks.

Each statement gives a sufficient condition for a factor, read the same
way: a graph meeting the threshold strictly has the factor; a graph
meeting it exactly has the factor unless it is isomorphic to the sharp
family for that statement.

  1.1  signless Laplacian radius >= kappa of the matching-extremal family
       implies a perfect matching (even order, minimum degree >= 19,
       order at least cubic in the minimum degree)
  1.2  distance radius <= mu1 of the matching-extremal family implies a
       perfect matching (even order, minimum degree >= 12, order at
       least cubic in the minimum degree)
  1.3  edge count >= size_threshold(nu) implies a star-cycle factor
  1.4  adjacency radius >= rho_threshold(nu) implies a star-cycle factor
  1.5  distance radius <= mu1 of the star-cycle-extremal family implies
       a star-cycle factor

check_theorem() classifies one graph against one statement, escalating
to exact characteristic-polynomial comparison whenever a float lands
within the equality margin of the threshold.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .factors import has_perfect_matching, has_star_cycle_factor
from .graphs import (FamilySpec, Graph, from_family, is_connected,
                     is_isomorphic, min_degree, to_graph6)
from .quotient import CATALOG
from .spectra import (IntegerPolynomial, adjacency_matrix, char_poly,
                      compare_largest_roots, distance_matrix, kappa,
                      largest_real_root, mu1, rho, signless_laplacian)

THEOREM_IDS = ("1.1", "1.2", "1.3", "1.4", "1.5")

EQUALITY_MARGIN = 1e-7
ESCALATION_MAX_ORDER = 24  # exact char-poly comparison above this is impractical

VERDICT_UNMET = "hypothesis-unmet"
VERDICT_HOLDS = "conclusion-holds"
VERDICT_EXTREMAL = "exceptional-extremal"
VERDICT_VIOLATION = "VIOLATION"


# ---------------------------------------------------------------------------
# thresholds
# ---------------------------------------------------------------------------


def rho_cubic(nu: int) -> IntegerPolynomial:
    """x^3 - (nu-5) x^2 - (nu-1) x + 3 nu - 15, whose largest root is the
    generic adjacency threshold beta(nu)."""
    if nu < 4:
        raise ValueError("cubic threshold defined for order >= 4")
    return IntegerPolynomial((3 * nu - 15, -(nu - 1), -(nu - 5), 1))


def beta(nu: int) -> float:
    """Largest real root of the threshold cubic; equals the adjacency
    radius of the star-cycle-extremal family on nu vertices."""
    return largest_real_root(rho_cubic(nu))


def size_threshold(nu: int) -> int:
    """Edge count at which statement 1.3 triggers: 11 when nu = 7 (the
    generic formula would give 9, too low to be sharp there), otherwise
    C(nu-3, 2) + 3."""
    if nu < 4:
        raise ValueError("size threshold defined for order >= 4")
    if nu == 7:
        return 11
    return comb(nu - 3, 2) + 3


def h_size(nu: int, x: int) -> int:
    """Edge count C(nu-2x-1, 2) + (2x+1) x of the graph that maximizes
    size among connected graphs where deleting some x-set leaves 2x+1
    isolated vertices.  Maximized over x at x = 1."""
    if x < 1 or nu < 3 * x + 3:
        raise ValueError("size function needs x >= 1 and nu >= 3x + 3")
    value = comb(nu - 2 * x - 1, 2) + (2 * x + 1) * x
    assert comb(nu - 3, 2) + 3 >= value
    return value


# ---------------------------------------------------------------------------
# extremal families
# ---------------------------------------------------------------------------


def extremal_K2_family(delta: int, nu: int) -> FamilySpec:
    """K(delta; (delta+1) x 1, nu-2*delta-1): the sharp family for the
    perfect-matching thresholds.  Deleting the hub leaves delta+2 odd
    components, one more than the hub can pay for."""
    if delta < 1:
        raise ValueError("minimum degree parameter must be >= 1")
    if nu % 2 != 0:
        raise ValueError("matching-extremal family needs even order")
    if nu < 2 * delta + 2:
        raise ValueError("order must be at least 2*delta + 2")
    return FamilySpec(delta, ((delta + 1, 1), (1, nu - 2 * delta - 1)))


def extremal_K2(delta: int, nu: int) -> Graph:
    return from_family(extremal_K2_family(delta, nu))


def extremal_star_cycle_family(nu: int) -> FamilySpec:
    """Sharp family for the star-cycle thresholds: K(2; 5x1) at nu = 7,
    else K(1; nu-4, 3x1) (the clique part vanishes at nu = 4, leaving
    the 3-leaf star)."""
    if nu < 4:
        raise ValueError("star-cycle-extremal family needs order >= 4")
    if nu == 7:
        return FamilySpec(2, ((5, 1),))
    if nu == 4:
        return FamilySpec(1, ((3, 1),))
    return FamilySpec(1, ((1, nu - 4), (3, 1)))


def extremal_star_cycle(nu: int) -> Graph:
    return from_family(extremal_star_cycle_family(nu))


@dataclass(frozen=True)
class Threshold:
    """One statement's cutoff: `value` compared per `direction`, with an
    integer polynomial whose largest real root is the exact cutoff for
    the spectral kinds."""

    theorem: str
    kind: str  # 'size' | 'rho' | 'kappa' | 'mu1'
    value: float | int
    direction: str  # '>=' | '<='
    nu: int
    delta: int | None = None
    exact_poly: IntegerPolynomial | None = None


def threshold_for(theorem: str, nu: int, delta: int | None = None) -> Threshold:
    if theorem == "1.3":
        return Threshold("1.3", "size", size_threshold(nu), ">=", nu)
    if theorem == "1.4":
        if nu == 7:
            poly = IntegerPolynomial((-10, -1, 1))  # largest root (1+sqrt(41))/2
        else:
            poly = rho_cubic(nu)
        return Threshold("1.4", "rho", largest_real_root(poly), ">=", nu,
                         exact_poly=poly)
    if theorem == "1.5":
        poly = char_poly(distance_matrix(extremal_star_cycle(nu)))
        return Threshold("1.5", "mu1", largest_real_root(poly), "<=", nu,
                         exact_poly=poly)
    if theorem in ("1.1", "1.2"):
        if delta is None:
            raise ValueError(f"statement {theorem} threshold needs delta")
        extremal_K2_family(delta, nu)  # domain validation
        # the 3-cell equitable quotient carries the extremal eigenvalue
        # exactly at any scale, where the full matrix would not fit
        if theorem == "1.1":
            poly = CATALOG["M2"].char_poly(delta=delta, nu=nu)
            return Threshold("1.1", "kappa", largest_real_root(poly), ">=", nu,
                             delta=delta, exact_poly=poly)
        poly = CATALOG["M4"].char_poly(delta=delta, nu=nu)
        return Threshold("1.2", "mu1", largest_real_root(poly), "<=", nu,
                         delta=delta, exact_poly=poly)
    raise ValueError(f"unknown statement id {theorem!r}")


def side_conditions_met(theorem: str, nu: int, delta: int) -> bool:
    """Order/degree preconditions of each statement, checked in exact
    integer arithmetic (3nu >= 19 delta + 9 stands in for the 19/3
    fraction, 3nu >= 2 delta^3 for the 2/3)."""
    if theorem == "1.1":
        return (nu % 2 == 0 and delta >= 19
                and nu >= delta - 1 + delta * delta * (delta + 1)
                and 3 * nu >= 19 * delta + 9)
    if theorem == "1.2":
        return (nu % 2 == 0 and delta >= 12
                and 3 * nu >= 2 * delta ** 3
                and nu >= 12 * delta + 5)
    if theorem in ("1.3", "1.4", "1.5"):
        return nu >= 4
    raise ValueError(f"unknown statement id {theorem!r}")


# ---------------------------------------------------------------------------
# verdicts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VerdictRecord:
    """Per-graph outcome of one statement check.  Spectral fields hold
    only the quantity the statement needed; the rest stay None."""

    graph6: str
    nu: int
    m: int
    delta: int
    rho: float | None
    kappa: float | None
    mu1: float | None
    k2_factor: bool | None
    star_cycle_factor: bool | None
    theorem: str
    verdict: str

    def to_json(self) -> dict:
        return {
            "graph6": self.graph6,
            "nu": self.nu,
            "m": self.m,
            "delta": self.delta,
            "rho": self.rho,
            "kappa": self.kappa,
            "mu1": self.mu1,
            "k2_factor": self.k2_factor,
            "star_cycle_factor": self.star_cycle_factor,
            "theorem": self.theorem,
            "verdict": self.verdict,
        }


_KIND_VALUE = {"rho": rho, "kappa": kappa, "mu1": mu1}
_KIND_MATRIX = {"rho": adjacency_matrix, "kappa": signless_laplacian,
                "mu1": distance_matrix}


def _hypothesis_state(g: Graph, thr: Threshold, margin: float) -> tuple[str, float | None]:
    """'strict' / 'equal' / 'unmet', plus the computed spectral value.

    Floats further than `margin` from the cutoff decide directly; floats
    inside the margin are settled by exact comparison of largest real
    roots of integer characteristic polynomials, so 'equal' means exact
    equality, not merely within tolerance."""
    if thr.kind == "size":
        m = g.num_edges
        if m > thr.value:
            return "strict", None
        if m == thr.value:
            return "equal", None
        return "unmet", None
    value = _KIND_VALUE[thr.kind](g).value
    if abs(value - thr.value) <= margin:
        if g.n > ESCALATION_MAX_ORDER:
            return "equal", value  # undecidable numerically; exactness out of reach
        c = compare_largest_roots(char_poly(_KIND_MATRIX[thr.kind](g)), thr.exact_poly)
        if c == 0:
            return "equal", value
        met_exact = c > 0 if thr.direction == ">=" else c < 0
        return ("strict" if met_exact else "unmet"), value
    if thr.direction == ">=":
        return ("strict" if value > thr.value else "unmet"), value
    return ("strict" if value < thr.value else "unmet"), value


def check_theorem(theorem: str, g: Graph, *, margin: float = EQUALITY_MARGIN) -> VerdictRecord:
    """Classify g against one statement.

    hypothesis-unmet: side conditions fail or the threshold comparison
    does not trigger.  conclusion-holds: threshold triggers and the
    promised factor exists.  exceptional-extremal: no factor, but g is
    isomorphic to the statement's sharp family (the equality case the
    statement excludes).  VIOLATION: threshold triggers, factor absent,
    and g is not the sharp family - a counterexample.

    Isomorphism outranks the numeric state: a factor-free graph that IS
    the sharp family is reported exceptional-extremal even if float
    noise put its spectral value on the strict side of the cutoff.
    """
    if theorem not in THEOREM_IDS:
        raise ValueError(f"unknown statement id {theorem!r}")
    if not is_connected(g):
        raise ValueError("verdict checks require a connected graph")
    nu, m, delta = g.n, g.num_edges, min_degree(g)
    vals: dict[str, float | None] = {"rho": None, "kappa": None, "mu1": None}
    k2: bool | None = None
    scf: bool | None = None

    def record(verdict: str) -> VerdictRecord:
        return VerdictRecord(to_graph6(g), nu, m, delta, vals["rho"], vals["kappa"],
                             vals["mu1"], k2, scf, theorem, verdict)

    if not side_conditions_met(theorem, nu, delta):
        return record(VERDICT_UNMET)
    thr = threshold_for(theorem, nu, delta if theorem in ("1.1", "1.2") else None)
    state, value = _hypothesis_state(g, thr, margin)
    if value is not None:
        vals[thr.kind] = value
    if state == "unmet":
        return record(VERDICT_UNMET)
    if theorem in ("1.1", "1.2"):
        k2 = has_perfect_matching(g)[0]
        has_factor = k2
        extremal = extremal_K2(delta, nu)
    else:
        scf = has_star_cycle_factor(g)[0]
        has_factor = scf
        extremal = extremal_star_cycle(nu)
    if has_factor:
        return record(VERDICT_HOLDS)
    if g.n == extremal.n and is_isomorphic(g, extremal):
        return record(VERDICT_EXTREMAL)
    return record(VERDICT_VIOLATION)


# ---------------------------------------------------------------------------
# part-size monotonicity of the spectral radii
# ---------------------------------------------------------------------------


def check_fact_monotonicity(fact: int, x: int, parts: tuple[int, ...], r: int,
                            min_gap: float = 1e-7) -> bool:
    """Concentrating part sizes raises kappa (fact 1) and lowers mu1
    (fact 2), strictly: compare K(x; parts) against K(x; big, (s-1) x r)
    with the same order, where big = nu - x - r(s-1).

    Preconditions as stated: parts sorted descending are >= r >= 1 and
    the largest part is strictly below big (so the two families differ).
    Returns True iff the strict inequality holds with gap > min_gap.
    """
    if fact not in (1, 2):
        raise ValueError("fact must be 1 or 2")
    if x < 1 or r < 1 or not parts:
        raise ValueError("need x >= 1, r >= 1, nonempty parts")
    sizes = tuple(sorted(parts, reverse=True))
    s = len(sizes)
    nu = x + sum(sizes)
    big = nu - x - r * (s - 1)
    if sizes[-1] < r:
        raise ValueError("every part must be at least r")
    if sizes[0] >= big:
        raise ValueError("largest part must be strictly below nu - x - r(s-1)")
    balanced = from_family(FamilySpec(x, tuple((1, p) for p in sizes)))
    concentrated = from_family(FamilySpec(x, ((1, big), (s - 1, r))))
    if fact == 1:
        gap = kappa(concentrated).value - kappa(balanced).value
    else:
        gap = mu1(balanced).value - mu1(concentrated).value
    return gap > min_gap


def sweep_row(nu: int) -> dict:
    """Threshold table row for one order: the size cutoff, the generic
    cubic root, the effective adjacency cutoff, and the distance cutoff."""
    return {
        "nu": nu,
        "size": size_threshold(nu),
        "beta": beta(nu),
        "rho_threshold": threshold_for("1.4", nu).value,
        "mu1_threshold": threshold_for("1.5", nu).value,
    }
