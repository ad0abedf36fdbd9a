import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gvckit.errors import DimensionMismatch, NegativeEntries, UnmappedCode
from gvckit.icio import IcioTable, Sector, aggregate, exports_vector, validate_balance
from gvckit.synthetic import random_table


def test_e2_balanced(e2):
    rep = validate_balance(e2, tol=1e-9)
    assert rep.passed
    assert rep.worst_row_residual == 0.0
    assert rep.worst_col_residual == 0.0
    assert rep.violations == []


def test_perturbed_table_fails_at_row_a(e2):
    Z = e2.Z.copy()
    Z[0, 0] = 21.0
    rep = validate_balance(e2.replace(Z=Z), tol=1e-9)
    assert not rep.passed
    row_hits = [v for v in rep.violations if v[1] == "row"]
    assert row_hits == [(0, "row", pytest.approx(0.01))]


def test_noint_balanced(noint):
    assert validate_balance(noint, tol=1e-9).passed


def test_wages_above_value_added_flagged(e2):
    rep = validate_balance(e2.replace(wages=[80.0, 10.0]))
    assert not rep.passed
    assert rep.violations[0][:2] == (0, "wages")


def test_dimension_mismatch(e2):
    with pytest.raises(DimensionMismatch):
        e2.replace(Z=np.zeros((3, 3)))
    with pytest.raises(DimensionMismatch):
        e2.replace(F=np.zeros((2, 3)))


def test_negative_entries_rejected(e2):
    Z = e2.Z.copy()
    Z[0, 1] = -1.0
    with pytest.raises(NegativeEntries):
        e2.replace(Z=Z)


def test_arrays_are_read_only(e2):
    with pytest.raises(ValueError):
        e2.Z[0, 0] = 1.0


@pytest.mark.parametrize(
    "name, expected",
    [("e2", [30.0, 25.0]), ("aut", [0.0]), ("noint", [20.0, 10.0])],
)
def test_exports_vector(name, expected, request):
    table = request.getfixturevalue(name)
    np.testing.assert_allclose(exports_vector(table), expected, rtol=0, atol=1e-12)


def test_exports_multi_sector_direct_summation(small_random):
    t = small_random
    E = exports_vector(t)
    for i in range(t.n):
        c = t.country_of[i]
        expect = sum(t.Z[i, j] for j in range(t.n) if t.country_of[j] != c)
        expect += sum(t.F[i, r] for r in range(t.n_countries) if r != c)
        assert E[i] == pytest.approx(expect, rel=1e-12)


def test_aggregate_world(e2):
    w = aggregate(e2, {"A": "W", "B": "W"}, {"S1": "S1"})
    assert w.countries == ("W",)
    assert w.Z.tolist() == [[70.0]]
    assert w.x.tolist() == [200.0]
    assert w.va.tolist() == [130.0]
    assert w.F.tolist() == [[130.0]]
    assert w.emp.tolist() == [130.0]
    assert validate_balance(w).passed


def test_aggregate_identity(small_random):
    t = small_random
    same = aggregate(t, {c: c for c in t.countries}, {s.code: s.code for s in t.sectors})
    assert same.countries == t.countries and same.sectors == t.sectors
    for name in ("Z", "F", "va", "x", "emp", "wages"):
        np.testing.assert_array_equal(getattr(same, name), getattr(t, name))


def test_aggregate_unmapped(e2):
    with pytest.raises(UnmappedCode):
        aggregate(e2, {"A": "W"}, {"S1": "S1"})


def test_aggregate_flags_union():
    t = IcioTable.from_flows(
        ["A"], [Sector("M", {"manufacturing"}), Sector("S", {"services"})], [[1.0, 2.0], [3.0, 4.0]], [[10.0], [10.0]]
    )
    agg = aggregate(t, {"A": "A"}, {"M": "ALL", "S": "ALL"})
    assert agg.sectors[0].flags == {"manufacturing", "services"}


def test_aggregate_integer_totals_exact(rng):
    Z = rng.integers(0, 50, size=(6, 6)).astype(float)
    F = rng.integers(1, 50, size=(6, 3)).astype(float)
    t = IcioTable.from_flows(["A", "B", "C"], ["s1", "s2"], Z, F)
    agg = aggregate(t, {"A": "X", "B": "Y", "C": "X"}, {"s1": "t", "s2": "t"})
    for name in ("Z", "F", "va", "x"):
        assert getattr(agg, name).sum() == getattr(t, name).sum()
    assert validate_balance(agg).passed


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), c=st.integers(1, 4), s=st.integers(1, 3))
def test_aggregate_preserves_totals(seed, c, s):
    t = random_table(np.random.default_rng(seed), c, s)
    rng = np.random.default_rng(seed + 1)
    cmap = {code: f"G{rng.integers(0, 2)}" for code in t.countries}
    smap = {sec.code: f"H{rng.integers(0, 2)}" for sec in t.sectors}
    agg = aggregate(t, cmap, smap)
    for name in ("Z", "F", "va", "x"):
        assert getattr(agg, name).sum() == pytest.approx(getattr(t, name).sum(), rel=1e-12)
    assert validate_balance(agg, tol=1e-9).passed


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), c=st.integers(1, 5), s=st.integers(1, 4))
def test_random_tables_balance(seed, c, s):
    assert validate_balance(random_table(np.random.default_rng(seed), c, s), tol=1e-9).passed


def test_exports_permutation_equivariant(rng):
    t = random_table(rng, 3, 1)
    perm = np.array([2, 0, 1])
    permuted = IcioTable(
        [t.countries[p] for p in perm], t.sectors, t.year,
        t.Z[np.ix_(perm, perm)], t.F[np.ix_(perm, perm)], t.va[perm], t.x[perm],
    )
    np.testing.assert_allclose(exports_vector(permuted), exports_vector(t)[perm], rtol=1e-14)
