import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ktq import cocycles, groups
from ktq.errors import InvalidInput
from ktq.exactalg import Cyclotomic, root_of_unity
from ktq.fourier import (EvalFamily, adem_ruan_count, compare_decompositions, evaluate, evaluate_family,
                         reconstruct)
from ktq.kblocks import GroupCocycle, Instance, Point, TrivialCircle, coset_gset, translation_gset, trivial_gset
from ktq.regressions import d8_instance, klein_instance


def test_evaluate_c2_examples():
    G = groups.cyclic(2)
    b = Instance(G, Point()).block(1)
    one = Cyclotomic.rational(1)
    assert evaluate(b, [1, 0], 1) == (one,)
    assert evaluate(b, [1, -1], 1) == (Cyclotomic.rational(2),)
    assert evaluate(b, [1, -1], 0) == (Cyclotomic.rational(0),)


def test_evaluate_klein_gives_fourth_roots():
    b = klein_instance().block(3)
    i = root_of_unity(4)
    assert evaluate(b, [1, 0], 3) == (i,)
    assert evaluate(b, [0, 1], 3) == (-i,)


def test_order_two_dft():
    # for |g| = 2 untwisted: F_0 = a + b, F_1 = a - b
    G = groups.cyclic(2)
    b = Instance(G, Point()).block(1)
    for a, c in [(3, 5), (-2, 7), (Fraction(1, 2), 0)]:
        F = evaluate_family(b, [a, c])
        assert F.values == ((Cyclotomic.rational(a + c),), (Cyclotomic.rational(a - c),))
        assert reconstruct(F) == (a, c)


def test_evaluate_rejects_bad_input():
    b = Instance(groups.cyclic(4), Point()).block(2)
    with pytest.raises(InvalidInput):
        evaluate(b, [1, 0], 1)
    with pytest.raises(ValueError):
        evaluate(b, [1, 0, 0], 2)
    circ = Instance(groups.cyclic(2), TrivialCircle()).block(1)
    with pytest.raises(InvalidInput):
        evaluate(circ, [1, 0], 1)


def test_reconstruct_length_mismatch():
    b = Instance(groups.cyclic(3), Point()).block(1)
    F = evaluate_family(b, [1, 2, 3])
    with pytest.raises(ValueError):
        reconstruct(EvalFamily(b, F.base, F.values[:2]))


def test_reconstruct_rejects_irrational_family():
    b = Instance(groups.cyclic(3), Point()).block(1)
    F = evaluate_family(b, [1, 0, 0])
    w = (root_of_unity(3),)
    with pytest.raises(InvalidInput):
        reconstruct(EvalFamily(b, F.base, (F.values[0], w, F.values[2])))


def _round_trip_blocks():
    out = []
    for n in (2, 3, 4, 6):
        C = groups.cyclic(n)
        for a in itertools.islice(cocycles.enumerate_cocycles(C, 4), 0, 3):
            inst = Instance(C, trivial_gset(C, 2), GroupCocycle(a))
            out.extend(inst.block(g) for g in range(1, n))
    inst = Instance(groups.dihedral(8), coset_gset(groups.dihedral(8), [0, 4]))
    out.extend(inst.block(g) for g in range(8) if inst.block(g).dims[0])
    return out


BLOCKS = _round_trip_blocks()


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(BLOCKS), st.data())
def test_round_trip(block, data):
    coeffs = data.draw(st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=6),
                                min_size=block.dims[0], max_size=block.dims[0]))
    assert reconstruct(evaluate_family(block, coeffs)) == tuple(coeffs)


def test_compare_klein():
    rep = compare_decompositions(klein_instance())
    assert (rep.csc_dim, rep.image_dim, rep.ar_count) == (1, 1, 1) and rep.ok


def test_compare_trivial_point():
    G = groups.symmetric(3)
    rep = compare_decompositions(Instance(G, Point()))
    assert rep.ok and rep.csc_dim == 3


def test_compare_d8_cosets():
    G = groups.dihedral(8)
    rep = compare_decompositions(Instance(G, coset_gset(G, [0, G.index("s")])))
    assert rep.ok and rep.csc_dim == adem_ruan_count(Instance(G, coset_gset(G, [0, G.index("s")])))


@pytest.mark.parametrize("G", [groups.cyclic(4), groups.klein(), groups.dihedral(8), groups.quaternion()],
                         ids=lambda G: G.name)
def test_compare_over_cocycles(G):
    for a in itertools.islice(cocycles.enumerate_cocycles(G), 0, None, 9):
        for X in (Point(), translation_gset(G)):
            assert compare_decompositions(Instance(G, X, GroupCocycle(a))).ok


def test_compare_rejects_circles():
    with pytest.raises(InvalidInput):
        compare_decompositions(d8_instance("trivial"))
