from fractions import Fraction

import pytest

from spectral_factors.graphs import build_graph, complete_graph, from_family, family
from spectral_factors.quotient import (CATALOG, KIND_A, KIND_D, KIND_K,
                                       PartitionSpec, catalog_ids,
                                       catalog_report, is_equitable,
                                       matrix_for_kind, quotient_matrix,
                                       verify_quotient_radius)
from spectral_factors.spectra import largest_eigenvalue

P3 = build_graph(3, [(0, 1), (1, 2)])


def desk_params(entry, want=4):
    """First few parameter dicts the entry's domain accepts, small scale."""
    names = entry.params
    if not names:
        return [{}]
    grids = {"x": range(1, 8), "delta": range(1, 8), "nu": range(4, 18)}
    combos = [{}]
    for name in names:
        combos = [dict(c, **{name: v}) for c in combos for v in grids[name]]
    out = []
    for c in combos:
        try:
            entry.matrix(**c)
        except ValueError:
            continue
        # keep realizable desk-scale graphs only
        try:
            spec = entry.family(**c)
        except ValueError:
            continue
        if spec.order <= 24:
            out.append(c)
        if len(out) == want:
            break
    return out


class TestPartitions:
    def test_validates_cover_and_disjoint(self):
        with pytest.raises(ValueError):
            PartitionSpec(((0, 1), (1, 2))).validate_for(P3)
        with pytest.raises(ValueError):
            PartitionSpec(((0,), (2,))).validate_for(P3)

    def test_is_equitable(self):
        # P3 center/ends is adjacency-equitable, split ends is not
        assert is_equitable(P3, KIND_A, [[1], [0, 2]])
        assert is_equitable(P3, KIND_A, [[0], [1], [2]])  # singletons always
        assert not is_equitable(P3, KIND_A, [[0, 1], [2]])

    def test_quotient_entries_exact(self):
        q = quotient_matrix(P3, KIND_A, [[1], [0, 2]])
        assert q.equitable
        assert q.entries == ((Fraction(0), Fraction(2)),
                             (Fraction(1), Fraction(0)))

    def test_inequitable_flagged(self):
        q = quotient_matrix(P3, KIND_A, [[0, 1], [2]])
        assert not q.equitable


class TestQuotientRadius:
    def test_complete_graph_trivial_partition(self):
        g = complete_graph(6)
        chk = verify_quotient_radius(g, KIND_A, [list(range(6))])
        assert chk.agree and abs(chk.quotient_root - 5) < 1e-10

    def test_family_natural_partition(self):
        spec = family(2, (5, 1))
        g = from_family(spec)
        cells = [[0, 1], [2, 3, 4, 5, 6]]
        for kind in (KIND_A, KIND_K, KIND_D):
            chk = verify_quotient_radius(g, kind, cells)
            assert chk.agree, kind


class TestCatalog:
    def test_all_ids_present(self):
        assert catalog_ids() == [f"M{i}" for i in range(1, 16)]

    @pytest.mark.parametrize("mid", [f"M{i}" for i in range(1, 16)])
    def test_entry_against_realized_graph(self, mid):
        entry = CATALOG[mid]
        cases = desk_params(entry)
        assert cases, f"{mid}: no desk-scale parameters found"
        for params in cases:
            g, part = entry.graph_and_cells(**params)
            assert is_equitable(g, entry.kind, part), (mid, params)
            q = quotient_matrix(g, entry.kind, part)
            stated = entry.matrix(**params)
            assert [[Fraction(v) for v in row] for row in stated] == \
                [list(r) for r in q.entries], (mid, params)
            full = largest_eigenvalue(matrix_for_kind(g, entry.kind))
            assert abs(q.largest_root() - full.value) <= 1e-8, (mid, params)

    def test_char_poly_degree(self):
        entry = CATALOG["M2"]
        p = entry.char_poly(delta=3, nu=14)
        assert p.degree == len(entry.matrix(delta=3, nu=14))

    def test_large_scale_parameters_instant(self):
        # the quotient route must work far past any buildable graph
        p = CATALOG["M2"].char_poly(delta=19, nu=7238)
        assert p.degree == 3

    def test_bad_params_rejected(self):
        with pytest.raises(ValueError):
            CATALOG["M2"].matrix(delta=3)
        with pytest.raises(ValueError):
            CATALOG["M2"].matrix(delta=3, nu=14, extra=1)
        with pytest.raises(ValueError):
            CATALOG["M1"].matrix(x=3, nu=4)  # empty large clique


class TestReport:
    def test_schema(self):
        rep = catalog_report("M2", delta=3, nu=14)
        assert rep["id"] == "M2"
        assert rep["params"] == {"delta": 3, "nu": 14}
        assert all(isinstance(v, str) for row in rep["entries"] for v in row)
        assert all(isinstance(c, int) for c in rep["charpoly"])
        assert isinstance(rep["largest_root"], float)

    def test_unknown_id(self):
        with pytest.raises(ValueError):
            catalog_report("M99")
