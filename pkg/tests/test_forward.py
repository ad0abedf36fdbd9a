import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gvckit.backward import dva_fva, sourcing_chain_length
from gvckit.errors import NonProductive, ZeroExports, ZeroOutput
from gvckit.forward import (
    chain_gap,
    dvx,
    forward_profiles,
    i2e_selling,
    intermediates_shares,
    participation_index,
    upstreamness,
    va_by_destination,
)
from gvckit.icio import IcioTable
from gvckit.leontief import leontief_system
from gvckit.synthetic import random_table

from oracle import from_table

REL = 1e-9


def test_intermediates_shares(e2, noint, aut):
    a = intermediates_shares(e2)["A"]
    assert a.share_in_output == pytest.approx(0.3, rel=REL)
    assert a.share_in_exports == pytest.approx(1 / 3, rel=REL)
    for rec in intermediates_shares(noint).values():
        assert rec.share_in_output == 0.0 and rec.share_in_exports == 0.0
    r = intermediates_shares(aut)["A"]
    assert r.share_in_output == pytest.approx(0.2) and r.share_in_exports is None


def test_i2e_selling(e2, noint, aut):
    a = i2e_selling(e2)["A"]
    assert a.value == pytest.approx(25 / 7, rel=REL)  # 0.1 * 25 / 0.7
    assert a.share_of_exports == pytest.approx(25 / 210, rel=REL)
    assert all(r.value == 0.0 for r in i2e_selling(noint).values())
    r = i2e_selling(aut)["A"]
    assert r.value == 0.0 and r.share_of_exports is None


def test_dvx(e2, noint, aut):
    assert dvx(e2)["A"] == pytest.approx(35 / 11, rel=REL)  # 0.7 * 2/11 * 25
    assert dvx(noint) == {"A": 0.0, "B": 0.0}
    assert dvx(aut) == {"A": 0.0}


def test_dvx_domestic_only_bounded(rng):
    t = random_table(rng, 4, 3)
    full, dom = dvx(t), dvx(t, domestic_only=True)
    for code in t.countries:
        assert 0 < dom[code] <= full[code] + 1e-12


def test_dvx_domestic_only_e2(e2):
    # 0.7 * 1.25 * 0.1 * (1/0.7) * 25
    assert dvx(e2, domestic_only=True)["A"] == pytest.approx(3.125, rel=REL)


def test_va_by_destination(e2, noint, aut):
    W = va_by_destination(e2)
    assert W[0, 1] == pytest.approx(0.7 * (14 / 11 * 20 + 2 / 11 * 45), rel=REL)
    assert W[0, 0] == pytest.approx(511 / 11, rel=REL)  # 46.4545...
    np.testing.assert_allclose(W.sum(axis=1), [70.0, 60.0], rtol=1e-12)
    np.testing.assert_allclose(va_by_destination(noint), noint.F, rtol=1e-15)
    assert va_by_destination(aut).tolist() == [[80.0]]


def test_upstreamness(e2, noint, aut):
    np.testing.assert_allclose(upstreamness(e2), [16 / 11, 18 / 11], rtol=REL)
    np.testing.assert_array_equal(upstreamness(noint), [1.0, 1.0])
    np.testing.assert_allclose(upstreamness(aut), [1.25], rtol=1e-15)


def test_upstreamness_zero_output(e2):
    t = e2.replace(Z=[[20.0, 0.0], [0.0, 0.0]], F=[[80.0, 0.0], [0.0, 0.0]], va=[80.0, 0.0], x=[100.0, 0.0])
    with pytest.raises(ZeroOutput):
        upstreamness(t)
    with pytest.raises(ZeroOutput):
        chain_gap(t)


def test_upstreamness_singular():
    # all output sold as intermediates in a loop: I - Delta is singular
    t = IcioTable(["A"], ["s1", "s2"], 0, [[0.0, 10.0], [10.0, 0.0]], [[0.0], [0.0]], [0.0, 0.0], [10.0, 10.0])
    with pytest.raises(NonProductive):
        upstreamness(t)


def test_chain_gap(e2, noint, aut):
    np.testing.assert_allclose(chain_gap(aut), [0.0], atol=1e-15)
    np.testing.assert_allclose(chain_gap(noint), [0.0, 0.0], atol=1e-15)
    np.testing.assert_allclose(chain_gap(e2), [0.0, 0.0], atol=1e-12)


def test_chain_gap_multisector_by_hand():
    # one country, two sectors: s1 sells 30 of 100 to s2; s2 buys nothing else
    t = IcioTable.from_flows(["A"], ["s1", "s2"], [[0.0, 30.0], [0.0, 0.0]], [[70.0], [100.0]])
    # selling chain: U = (1 + 0.3, 1); sourcing chain: N = (1, 1 + 30/100)
    np.testing.assert_allclose(chain_gap(t), [0.3, -0.3], rtol=1e-12)


def test_participation(e2, noint, aut):
    a = participation_index(e2)["A"]
    assert a.backward == pytest.approx(36 / 330, rel=REL)
    assert a.forward == pytest.approx(35 / 330, rel=REL)
    assert a.total == pytest.approx(71 / 330, rel=REL)
    for rec in participation_index(noint).values():
        assert (rec.backward, rec.forward, rec.total) == (0.0, 0.0, 0.0)
    assert participation_index(aut)["A"].total is None
    with pytest.raises(ZeroExports):
        participation_index(aut, country="A")
    assert participation_index(e2, country="A").total == pytest.approx(71 / 330, rel=REL)


def test_participation_sector_level(small_random):
    t = small_random
    sec = participation_index(t, level="sector")
    assert set(sec) == set(t.labels())
    for rec in sec.values():
        assert rec.total == pytest.approx(rec.backward + rec.forward, rel=1e-12)


def test_against_oracle_random(rng):
    t = random_table(rng, 3, 2)
    o = from_table(t)
    sel, fwd, W = i2e_selling(t), dvx(t), va_by_destination(t)
    for c, code in enumerate(t.countries):
        assert sel[code].value == pytest.approx(o.i2e_selling(c), rel=REL)
        assert fwd[code] == pytest.approx(o.dvx(c), rel=REL)
        for r in range(t.n_countries):
            assert W[c, r] == pytest.approx(o.va_by_destination(c, r), rel=REL)
    np.testing.assert_allclose(upstreamness(t), o.upstreamness(), rtol=REL)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), c=st.integers(1, 5), s=st.integers(1, 4))
def test_identities(seed, c, s):
    t = random_table(np.random.default_rng(seed), c, s)
    W = va_by_destination(t)
    va_tot = t.va.reshape(t.n_countries, t.n_sectors).sum(axis=1)
    np.testing.assert_allclose(W.sum(axis=1), va_tot, rtol=1e-9)
    total_dvx = sum(dvx(t).values())
    total_fva = sum(d.fva for d in dva_fva(t).values())
    assert total_dvx == pytest.approx(total_fva, rel=1e-9, abs=1e-9)
    assert (upstreamness(t) >= 1 - 1e-12).all()
    for rec in participation_index(t).values():
        if c == 1:
            assert rec.total is None
            continue
        assert rec.total == pytest.approx(rec.backward + rec.forward, rel=1e-12)


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 6))
def test_symmetric_flows_equal_lengths(seed, n):
    rng = np.random.default_rng(seed)
    Z = rng.uniform(0, 10, size=(n, n))
    Z = (Z + Z.T) / 2
    x = np.full(n, Z.sum(axis=1).max() * 2.0)
    F = (x - Z.sum(axis=1))[:, None]
    t = IcioTable(["A"], [f"s{k}" for k in range(n)], 0, Z, F, x - Z.sum(axis=0), x)
    np.testing.assert_allclose(upstreamness(t), sourcing_chain_length(leontief_system(t)), rtol=1e-12)


def test_participation_scale_invariant(rng):
    t = random_table(rng, 3, 2)
    a, b = participation_index(t), participation_index(t.scaled(1000.0))
    for code in t.countries:
        assert b[code].total == pytest.approx(a[code].total, rel=1e-12)


def test_forward_profiles(e2):
    p = forward_profiles(e2)["A"]
    assert p.dvx == pytest.approx(35 / 11, rel=REL)
    assert sum(p.va_by_destination.values()) == pytest.approx(70.0, rel=1e-12)
    assert p.participation_total == pytest.approx(p.participation_backward + p.participation_forward)
    assert p.upstreamness.shape == (1,) and p.upstreamness[0] >= 1
