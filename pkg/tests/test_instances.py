import json

import numpy as np
import pytest
from fractions import Fraction

from effalg import compbase, comparability, core, instances, spectral
from effalg.compbase import CompressionBase, validate_base
from effalg.core import State
from effalg.errors import NotFaithful, ScaleMismatch, SizeLimit


def test_boolean_sizes():
    E, cb = instances.make_boolean(1)
    assert E.size == 2 and cb.projections == [0, 1]
    E3, cb3 = instances.make_boolean(3)
    assert E3.size == 8 and len(cb3.projections) == 8
    assert cb3.is_spectral()
    with pytest.raises(SizeLimit):
        instances.make_boolean(17)


def test_mv_product_family(mv83):
    E, cb = mv83
    assert E.size == 729 and len(cb.projections) == 8
    assert cb.is_spectral()
    with pytest.raises(ValueError):
        instances.make_mv_product(3, 2)
    with pytest.raises(ValueError):
        instances.make_mv_product(4, 5)


def test_total_base_on_grid(mv42):
    """Compression foci exhaust the sharp elements: the base is total."""
    E, cb = mv42
    assert sorted(cb.projections) == sorted(int(s) for s in core.sharp_elements(E))
    for p in cb.projections:
        cls = compbase.classify_map(E, cb.map_table(p))
        assert cls.is_compression and cls.focus == p


def test_product_spectrality(mv42, mo2):
    L4 = instances.make_mv_product(4, 1)
    B1 = instances.make_boolean(1)
    E, cb = instances.make_product(L4, B1)
    assert E.size == 10 and cb.is_spectral()
    Em, cbm = instances.make_product(mo2, L4)
    assert not cbm.is_spectral()  # one bad factor poisons the product


def test_product_matches_boolean_square():
    B1a = instances.make_boolean(1)
    B1b = instances.make_boolean(1)
    E, cb = instances.make_product(B1a, B1b)
    B2, cb2 = instances.make_boolean(2)
    assert E.size == B2.size == 4
    assert len(cb.projections) == len(cb2.projections) == 4


def test_horizontal_sum_guards(l8, mv42):
    ident8 = [Fraction(i, 8) for i in range(9)]
    bad = list(ident8)
    bad[4] = Fraction(0)
    with pytest.raises(NotFaithful):
        instances.make_horizontal_sum(l8, l8, ident8, bad)
    # boolean squares: no faithful zero-one morphism exists
    B2 = instances.make_boolean(2)
    with pytest.raises(NotFaithful):
        instances.make_horizontal_sum(
            B2, B2, [Fraction(0), Fraction(0), Fraction(1), Fraction(1)],
            [Fraction(0), Fraction(1), Fraction(0), Fraction(1)])
    # scale mismatch: 1/8 of a projection leaves the 1/4 grid
    L8 = l8
    s1 = instances.weighted_state(mv42[0], [Fraction(1, 2), Fraction(1, 2)])
    with pytest.raises(ScaleMismatch):
        instances.make_horizontal_sum(mv42, L8, s1, ident8)


def test_horizontal_sum_of_chains(hsum_l8):
    E, cb = hsum_l8
    assert E.size == 16  # 2 + 7 + 7
    assert cb.projections == [0, 1]
    assert not cb.is_spectral()
    e, f = instances.torsion_witness(E)
    assert e != f and E.sum(e, e) == E.one and E.sum(f, f) == E.one


def test_cross_part_elements_never_compatible(hsum_l8):
    E, _ = hsum_l8
    left = [g for (side, _), g in E.part_index.items() if side == "L"]
    right = [g for (side, _), g in E.part_index.items() if side == "R"]
    for a in left:
        for b in right:
            assert not core.mackey_compatible(E, a, b)[0]
        assert core.mackey_compatible(E, a, E.zero)[0]
        assert core.mackey_compatible(E, a, E.one)[0]


def test_horizontal_sum_with_cross_compressions(mv42):
    """A grid part pasted with a chain: all cross scalars stay on the grid."""
    L4 = instances.make_mv_product(4, 1)
    s1 = instances.weighted_state(mv42[0], [Fraction(1, 2), Fraction(1, 2)])
    s2 = State(L4[0], [Fraction(i, 4) for i in range(5)])
    E, cb = instances.make_horizontal_sum(mv42, L4, s1, s2)
    assert len(cb.projections) == 4  # 0, 1 and the two left coordinate masks
    assert validate_base(E, cb).passed
    assert not cb.is_spectral()  # cross pairs commute but stay incomparable
    assert len(compbase.blocks(cb)) == 1


def test_two_bases_same_projections(mv42):
    """Distinct faithful states give distinct valid bases over one P."""
    E1, cb1 = mv42
    E2, _ = instances.make_boolean(2)
    E, glob = instances._hsum_carrier(E1, E2)

    def base_with(w1, w2):
        phi = State(E2, [Fraction(0), w1, w2, Fraction(1)])
        phi.require_faithful()
        projs = {0, 1}
        maps = {0: np.zeros(E.size, dtype=np.int64), 1: np.arange(E.size)}
        for p in (E1.index_of([4, 0]), E1.index_of([0, 4])):
            g = glob("L", p, E1)
            tbl = np.zeros(E.size, dtype=np.int64)
            own = cb1.map_table(p)
            for x in range(E1.size):
                tbl[glob("L", x, E1)] = glob("L", int(own[x]), E1)
            for y in range(E2.size):
                if y in (E2.zero, E2.one):
                    continue
                tbl[glob("R", y, E2)] = glob("L", E1.scale(phi(y), p), E1)
            tbl[1] = glob("L", p, E1)
            projs.add(g)
            maps[g] = tbl
        return CompressionBase(E, sorted(projs), maps)

    base_a = base_with(Fraction(1, 4), Fraction(3, 4))
    base_b = base_with(Fraction(2, 4), Fraction(2, 4))
    assert validate_base(E, base_a).passed
    assert validate_base(E, base_b).passed
    assert base_a.projections == base_b.projections
    nontrivial = [p for p in base_a.projections if p not in (E.zero, E.one)]
    assert any((base_a.map_table(p) != base_b.map_table(p)).any() for p in nontrivial)


def test_mo2_fixture(mo2):
    E, cb = mo2
    assert E.size == 6
    assert len(core.sharp_elements(E)) == 6
    assert cb.projections == [E.zero, E.one]
    assert not cb.is_spectral()


def test_closed_form_oracle(mv83):
    E, _ = mv83
    a = E.index_of([2, 4, 7])
    t1 = instances.closed_form_mv_resolution(E, a, 1)
    assert t1.u((0,)) == E.index_of([8, 8, 0])  # coordinates in (0, 1/2]
    assert t1.u((1,)) == E.index_of([0, 0, 8])
    t2 = instances.closed_form_mv_resolution(E, a, 2)
    assert t2.u((0, 0)) == E.index_of([8, 0, 0])
    assert t2.u((0, 1)) == E.index_of([0, 8, 0])
    assert t2.u((1, 0)) == E.zero
    assert t2.u((1, 1)) == E.index_of([0, 0, 8])
    t0 = instances.closed_form_mv_resolution(E, E.zero, 3)
    assert not t0._u


def test_round_trips():
    ident = [str(Fraction(i, 8)) for i in range(9)]
    docs = [
        {"kind": "boolean", "n_atoms": 2},
        {"kind": "mv_product", "denominator": 4, "arity": 2},
        {"kind": "mo2"},
        {"kind": "product", "factors": [
            {"kind": "boolean", "n_atoms": 1},
            {"kind": "mv_product", "denominator": 4, "arity": 1}]},
        {"kind": "horizontal_sum",
         "parts": [{"kind": "mv_product", "denominator": 8, "arity": 1}] * 2,
         "states": [ident, ident]},
    ]
    for doc in docs:
        E, cb = instances.parse_document(json.loads(json.dumps(doc)))
        E2, cb2 = instances.parse_document(E.document)
        assert E2.size == E.size
        assert cb2.projections == cb.projections
        for a in range(min(E.size, 12)):
            assert E2.label(a) == E.label(a)  # index preserving


def test_matrix_round_trip():
    E, cb = instances.parse_document({"kind": "matrix", "dim": 3})
    assert E.dim == 3
    E2, _ = instances.parse_document(E.document)
    assert E2.dim == 3


def test_separating_states(mv42):
    E, _ = mv42
    states = instances.separating_states(E)
    assert len(states) == 2
    rng = np.random.default_rng(0)
    for _ in range(20):
        a, b = (int(x) for x in rng.integers(0, E.size, 2))
        if a != b:
            assert any(s(a) != s(b) for s in states)


def test_parse_element_forms(mv83, matrix2):
    E, _ = mv83
    assert instances.parse_element(E, "2,4,7") == E.index_of([2, 4, 7])
    assert instances.parse_element(E, "2/8,4/8,7/8") == E.index_of([2, 4, 7])
    assert instances.parse_element(E, "5") == 5
    M, _ = matrix2
    a = instances.parse_element(M, "1/2,1/4,1/4,1/2")
    assert np.allclose(a, [[0.5, 0.25], [0.25, 0.5]])


def test_weighted_state_guards(mv42):
    E, _ = mv42
    with pytest.raises(ValueError):
        instances.weighted_state(E, [Fraction(1, 2)])
    with pytest.raises(ValueError):
        instances.weighted_state(E, [Fraction(3, 4), Fraction(3, 4)])
