import numpy as np
import pytest
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from effalg import groups, instances
from effalg.errors import ElementNotInCarrier, GridTooNarrow
from effalg.groups import (
    ZGroup,
    bounds,
    dyadic_approximation,
    group_spectral,
    orthogonal_decomposition,
    rickart,
)

G22 = ZGroup([2, 2])

vectors = st.lists(st.integers(-6, 6), min_size=2, max_size=2).map(np.array)
units = st.lists(st.integers(1, 4), min_size=3, max_size=3).map(np.array)


def test_orthogonal_decomposition_example():
    gp, gm, p = orthogonal_decomposition(G22, [3, -1])
    assert list(gp) == [3, 0] and list(gm) == [0, 1] and list(p) == [2, 0]
    gp, gm, p = orthogonal_decomposition(G22, [0, 0])
    assert not gp.any() and not gm.any() and not p.any()
    gp, gm, _ = orthogonal_decomposition(G22, [1, 2])
    assert list(gp) == [1, 2] and not gm.any()


def test_rickart_examples():
    assert list(rickart(G22, [3, -1])) == [0, 0]
    assert list(rickart(G22, [3, 0])) == [0, 2]
    p = G22.projection([True, False])
    assert list(rickart(G22, p)) == list(G22.proj_complement(p))  # p* = p'


def test_group_spectral_examples():
    assert list(group_spectral(G22, [3, -1], 1, 2)) == [0, 2]
    lg, ug = bounds(G22, [3, -1])
    assert (lg, ug) == (Fraction(-1, 2), Fraction(3, 2))
    # lambda beyond the bounds collapses to 0 or u
    assert list(group_spectral(G22, [3, -1], 2, 1)) == [2, 2]   # >= u_g
    assert list(group_spectral(G22, [3, -1], -1, 1)) == [0, 0]  # < l_g


def test_bounds_edges():
    assert bounds(G22, [2, 2]) == (Fraction(1), Fraction(1))
    assert bounds(G22, [0, 0]) == (Fraction(0), Fraction(0))


def test_dyadic_approximation():
    pieces, err, gap = dyadic_approximation(G22, [3, -1], range(-2, 3), 1)
    assert sum(np.asarray(p) for p in pieces).tolist() == [2, 2]
    assert err <= gap == 1
    _, err2, gap2 = dyadic_approximation(G22, [3, -1], range(-2, 4, 2), 1)
    assert err2 <= gap2 == 2
    pieces0, err0, _ = dyadic_approximation(G22, [0, 0], [-1, 0, 1], 1)
    assert err0 == 0
    with pytest.raises(GridTooNarrow):
        dyadic_approximation(G22, [3, -1], [0, 1], 1)


@settings(max_examples=150, deadline=None)
@given(vectors)
def test_rickart_laws(g):
    star = rickart(G22, g, verify=False)
    # g** = (g*)'
    gss = rickart(G22, star, verify=False)
    assert list(gss) == list(G22.proj_complement(star))


@settings(max_examples=150, deadline=None)
@given(vectors, vectors)
def test_rickart_monotone(g, h):
    g = np.abs(g)
    h = g + np.abs(h)  # 0 <= g <= h
    gss = G22.proj_complement(rickart(G22, g, verify=False))
    hss = G22.proj_complement(rickart(G22, h, verify=False))
    assert (gss <= hss).all()


@settings(max_examples=150, deadline=None)
@given(vectors, st.booleans())
def test_compression_respects_positive_part(g, first):
    q = G22.projection([first, not first])
    gp, gm, _ = orthogonal_decomposition(G22, g)
    jq = G22.compress(q, g)
    jp, jm, _ = orthogonal_decomposition(G22, jq)
    assert list(jp) == list(G22.compress(q, gp))
    assert list(jm) == list(G22.compress(q, gm))


@settings(max_examples=60, deadline=None)
@given(units, st.lists(st.integers(-8, 8), min_size=3, max_size=3).map(np.array))
def test_spectral_family_clauses(u, g):
    """The four clauses of the rational family on an integer group."""
    G = ZGroup(u)
    lg, ug = bounds(G, g)
    spectrum = sorted({Fraction(int(x), int(ui)) for x, ui in zip(g, u)})
    lams = sorted({Fraction(m, n) for n in (1, 2, 3) for m in range(-9, 10)})
    fam = {lam: group_spectral(G, g, lam.numerator, lam.denominator) for lam in lams}
    prev = None
    for lam in lams:
        p = fam[lam]
        if lam < lg:
            assert not p.any()
        if lam >= ug:
            assert (p == G.unit).all()
        if prev is not None:
            assert (prev <= p).all()  # monotone
        prev = p
        # right continuity via an explicit witness mu > lam with equality
        above = [s for s in spectrum if s > lam]
        mu = (lam + above[0]) / 2 if above else lam + 1
        assert (group_spectral(G, g, mu.numerator, mu.denominator) == p).all()
        # compressions sit on the correct side of lam
        n_, m_ = lam.denominator, lam.numerator
        jp = G.compress(p, g)
        jm = G.compress(G.proj_complement(p), g)
        assert (n_ * jp <= m_ * p).all()
        assert (m_ * G.proj_complement(p) <= n_ * jm).all()


def test_norm_matches_inf_definition():
    G = ZGroup([1, 2, 3])
    rng = np.random.default_rng(0)
    for _ in range(20):
        g = rng.integers(-5, 6, 3)
        direct = G.norm(g)
        # inf over n/k with -n u <= k g <= n u, scanned on a small window
        best = None
        for k in range(1, 13):
            for n in range(0, 61):
                if (-n * G.unit <= k * g).all() and (k * g <= n * G.unit).all():
                    cand = Fraction(n, k)
                    best = cand if best is None or cand < best else best
                    break
        assert direct == best


def test_equivalence_check(mv83, mv42, bool3):
    for E, cb in (mv83, mv42, bool3):
        rep = groups.check_comparability_equivalence(E, cb)
        assert rep.passed, rep.summary()


def test_torsion_pasting_has_no_group(hsum_l8):
    E, cb = hsum_l8
    e, f = instances.torsion_witness(E)
    assert e != f
    assert E.sum(e, e) == E.one and E.sum(f, f) == E.one
    with pytest.raises(ElementNotInCarrier):
        instances.universal_group(E)


def test_chain_equivalence():
    E, cb = instances.make_mv_product(4, 1)
    rep = groups.check_comparability_equivalence(E, cb)
    assert rep.passed
