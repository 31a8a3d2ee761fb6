import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectral_factors.graphs import build_graph, complete_graph, from_family, family
from spectral_factors.spectra import (IntegerPolynomial, NumericError,
                                      adjacency_matrix,
                                      cauchy_bound, char_poly,
                                      clear_denominators,
                                      compare_largest_roots,
                                      count_real_roots_in, distance_matrix,
                                      kappa, largest_eigenvalue,
                                      largest_real_root, mu1,
                                      rational_char_poly, rho,
                                      signless_laplacian, squarefree_part,
                                      wiener_index)

P3 = build_graph(3, [(0, 1), (1, 2)])
P4 = build_graph(4, [(0, 1), (1, 2), (2, 3)])
C4 = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
C5 = build_graph(5, [(i, (i + 1) % 5) for i in range(5)])


def int_symmetric(n, lo=-3, hi=3):
    return st.lists(st.integers(lo, hi), min_size=n * (n + 1) // 2,
                    max_size=n * (n + 1) // 2).map(lambda vals: _sym(n, vals))


def _sym(n, vals):
    m = np.zeros((n, n), dtype=np.int64)
    k = 0
    for i in range(n):
        for j in range(i, n):
            m[i, j] = m[j, i] = vals[k]
            k += 1
    return m


class TestMatrices:
    def test_adjacency(self):
        a = adjacency_matrix(P3)
        assert a.tolist() == [[0, 1, 0], [1, 0, 1], [0, 1, 0]]

    def test_signless_laplacian(self):
        q = signless_laplacian(P3)
        assert q.tolist() == [[1, 1, 0], [1, 2, 1], [0, 1, 1]]

    def test_distance(self):
        d = distance_matrix(P4)
        assert d.tolist() == [[0, 1, 2, 3], [1, 0, 1, 2],
                              [2, 1, 0, 1], [3, 2, 1, 0]]

    def test_distance_requires_connected(self):
        with pytest.raises(ValueError):
            distance_matrix(build_graph(3, [(0, 1)]))

    def test_wiener(self):
        assert wiener_index(P4) == 10
        assert wiener_index(C5) == 15
        assert wiener_index(complete_graph(5)) == 10


class TestEigenvalues:
    def test_known_values(self):
        assert abs(rho(complete_graph(5)).value - 4) < 1e-12
        assert abs(rho(P3).value - math.sqrt(2)) < 1e-10
        assert abs(kappa(complete_graph(2)).value - 2) < 1e-12
        assert abs(kappa(C4).value - 4) < 1e-10
        assert abs(mu1(C4).value - 4) < 1e-10

    def test_residual_contract(self):
        for g in (P4, C5, complete_graph(6)):
            for fn in (rho, kappa, mu1):
                sv = fn(g)
                assert sv.residual <= 1e-10

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            largest_eigenvalue(np.array([[0, 1], [2, 0]]))

    @settings(max_examples=40)
    @given(int_symmetric(5))
    def test_matches_numpy_on_random_symmetric(self, m):
        sv = largest_eigenvalue(m)
        assert abs(sv.value - np.linalg.eigvalsh(m)[-1]) < 1e-9


class TestCharPoly:
    def test_known_polys(self):
        # lowest-degree-first coefficient order
        assert char_poly(adjacency_matrix(complete_graph(3))).to_json() == [-2, -3, 0, 1]
        assert char_poly(adjacency_matrix(P3)).to_json() == [0, -2, 0, 1]
        assert char_poly(adjacency_matrix(C4)).to_json() == [0, 0, -4, 0, 1]

    @settings(max_examples=30)
    @given(int_symmetric(4))
    def test_roots_match_numpy(self, m):
        p = char_poly(m)
        mine = sorted(np.roots(p.to_json()[::-1]).real)
        ref = sorted(np.linalg.eigvalsh(m))
        assert np.allclose(mine, ref, atol=1e-6)

    def test_rational_and_clearing(self):
        coeffs = rational_char_poly([[Fraction(1, 2), 1], [1, Fraction(1, 2)]])
        p = clear_denominators(coeffs)
        # (x-1/2)^2 - 1 = x^2 - x - 3/4 -> 4x^2 - 4x - 3
        assert p.to_json() == [-3, -4, 4]

    def test_monic_integer_input_stays_monic(self):
        p = char_poly(np.eye(3, dtype=np.int64) * 2)
        assert p.to_json() == [-8, 12, -6, 1]


class TestRootIsolation:
    def test_sqrt2(self):
        p = IntegerPolynomial((-2, 0, 1))
        assert abs(largest_real_root(p) - math.sqrt(2)) < 1e-10

    def test_cubic_vs_numpy(self):
        p = IntegerPolynomial((6, -1, -5, 1))
        want = max(r.real for r in np.roots([1, -5, -1, 6]) if abs(r.imag) < 1e-9)
        assert abs(largest_real_root(p) - want) < 1e-9

    def test_no_real_root_raises(self):
        with pytest.raises(NumericError):
            largest_real_root(IntegerPolynomial((1, 0, 1)))

    def test_count_real_roots(self):
        p = IntegerPolynomial((0, -2, 0, 1))  # x(x^2-2)
        assert count_real_roots_in(p, Fraction(-2), Fraction(2)) == 3
        assert count_real_roots_in(p, Fraction(1), Fraction(2)) == 1

    def test_repeated_roots_handled(self):
        # (x-1)^2 (x+2)
        p = IntegerPolynomial((2, -3, 0, 1))
        assert abs(largest_real_root(p) - 1) < 1e-10
        assert squarefree_part(p).degree == 2

    def test_cauchy_bound_contains_roots(self):
        p = IntegerPolynomial((6, -1, -5, 1))
        b = cauchy_bound(p)
        assert largest_real_root(p) <= float(b)


class TestCompareLargestRoots:
    def test_trichotomy(self):
        a = IntegerPolynomial((-2, 0, 1))   # sqrt(2)
        b = IntegerPolynomial((-3, 0, 1))   # sqrt(3)
        assert compare_largest_roots(a, b) == -1
        assert compare_largest_roots(b, a) == 1
        assert compare_largest_roots(a, a) == 0

    def test_equal_roots_through_different_polys(self):
        a = IntegerPolynomial((-2, 0, 1))            # x^2 - 2
        b = IntegerPolynomial((2, -2, -1, 1))        # (x^2-2)(x-1)
        assert compare_largest_roots(a, b) == 0

    def test_tiny_separation_is_exact(self):
        # roots 10^6 and 10^6 + 10^-6 via (x - a)(x - b) scaled to ints:
        # p = x - 1000000;  q = 10^6 x - 10^12 - 1
        p = IntegerPolynomial((-10**6, 1))
        q = IntegerPolynomial((-(10**12) - 1, 10**6))
        assert compare_largest_roots(p, q) == -1

    def test_shared_factor_plus_smaller(self):
        shared = IntegerPolynomial((-5, 0, 1))       # sqrt(5)
        other = IntegerPolynomial((5, -6, 1))        # roots 1, 5
        assert compare_largest_roots(shared, other) == -1


class TestPolynomialType:
    def test_normalizes_trailing_zeros(self):
        assert IntegerPolynomial((1, 2, 0, 0)).degree == 1

    def test_evaluate_and_derivative(self):
        p = IntegerPolynomial((1, -2, 3))  # 3x^2 - 2x + 1
        assert p(2) == 9
        assert p.derivative().to_json() == [-2, 6]

    def test_rejects_zero_poly_root_search(self):
        with pytest.raises(ValueError):
            largest_real_root(IntegerPolynomial((0,)))

    def test_extremal_family_poly_sanity(self):
        # distance charpoly root of K(2;5x1) is the known threshold
        g = from_family(family(2, (5, 1)))
        p = char_poly(distance_matrix(g))
        assert abs(largest_real_root(p) - mu1(g).value) < 1e-8
