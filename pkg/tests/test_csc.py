import itertools

import pytest

from ktq import cocycles, groups
from ktq.csc import assemble, atiyah_segal_count, compute, solve, summand_projection, untwisted_atiyah_segal_check
from ktq.errors import InvalidInput
from ktq.exactalg import rank
from ktq.kblocks import (DisjointUnion, GroupCocycle, Instance, Point, TrivialCircle, coset_gset, make_gset,
                         translation_gset, trivial_gset)
from ktq.regressions import d8_instance, klein_instance


def test_klein_point():
    res = compute(klein_instance())
    assert res.dims == {0: 1, 1: 0}
    assert res.summand_table() == [(0, 1), (1, 2), (2, 2), (3, 2)]


@pytest.mark.parametrize("name,expect", [("trivial", 5), ("sign-r", 3), ("sign-s", 3), ("sign-rs", 3)])
def test_d8_circle(name, expect):
    res = compute(d8_instance(name))
    assert res.dims == {0: expect, 1: expect}


def test_trivial_group():
    G = groups.cyclic(1)
    assert compute(Instance(G, Point())).dims == {0: 1, 1: 0}
    assert compute(Instance(G, TrivialCircle())).dims == {0: 1, 1: 1}
    assert compute(Instance(G, trivial_gset(G, 3))).dims == {0: 3, 1: 0}


def test_translation_gives_one():
    for G in (groups.cyclic(5), groups.symmetric(3), groups.quaternion()):
        assert compute(Instance(G, translation_gset(G))).dims[0] == 1


def test_point_gives_class_count():
    for G in groups.small_groups():
        assert compute(Instance(G, Point())).dims[0] == len(G.conjugacy.classes)


def test_two_point_swap():
    G = groups.cyclic(2)
    X = make_gset(G, [[0, 1], [1, 0]])
    assert compute(Instance(G, DisjointUnion((X, X)))).dims[0] == 2
    assert compute(Instance(G, X)).dims[0] == 1


def _sample_instances():
    out = []
    for G in (groups.cyclic(4), groups.klein(), groups.symmetric(3), groups.dihedral(8)):
        for a in itertools.islice(cocycles.enumerate_cocycles(G), 0, None, 7):
            out.append(Instance(G, Point(), GroupCocycle(a)))
            if len(out) % 3 == 0:
                break
        out.append(Instance(G, coset_gset(G, G.cyclic_subgroup(G.order - 1))))
    out.append(d8_instance("sign-s"))
    return out


SAMPLE = _sample_instances()


@pytest.mark.parametrize("inst", SAMPLE)
def test_invariance_modes_agree(inst):
    a = solve(assemble(inst, invariance="generators"))
    b = solve(assemble(inst, invariance="all"))
    assert a.dims == b.dims
    for d in (0, 1):
        assert a.basis[d].vectors == b.basis[d].vectors


@pytest.mark.parametrize("inst", SAMPLE)
def test_symmetrize_leaves_kernel(inst):
    a = solve(assemble(inst))
    b = solve(assemble(inst, symmetrize=True))
    for d in (0, 1):
        assert a.basis[d].vectors == b.basis[d].vectors


@pytest.mark.parametrize("inst", SAMPLE)
def test_basis_satisfies_rows(inst):
    res = compute(inst)
    S = res.system
    for d in (0, 1):
        for v in res.basis[d].vectors:
            for row in S.rows[d]:
                assert sum(c * v[j] for j, c in row.items()) == 0


def test_unknown_invariance_mode():
    with pytest.raises(ValueError):
        assemble(klein_instance(), invariance="some")


@pytest.mark.parametrize("G", [G for G in groups.small_groups() if G.order <= 8], ids=lambda G: G.name)
def test_untwisted_gsets_match_orbit_count(G):
    spaces = [Point(), translation_gset(G), DisjointUnion((Point(), TrivialCircle())),
              DisjointUnion((coset_gset(G, G.cyclic_subgroup(G.order - 1)), trivial_gset(G, 2)))]
    for X in spaces:
        rep = untwisted_atiyah_segal_check(Instance(G, X))
        assert rep.ok, (G.name, rep)


def test_atiyah_segal_needs_trivial_twist():
    with pytest.raises(InvalidInput):
        atiyah_segal_count(klein_instance())


@pytest.mark.parametrize("G", [groups.cyclic(3), groups.klein(), groups.symmetric(3)], ids=lambda G: G.name)
def test_free_gset_injects_into_identity_block(G):
    # on a free G-set every X^g with g != e is empty, so the identity block carries everything
    inst = Instance(G, DisjointUnion((translation_gset(G), translation_gset(G))))
    res = compute(inst)
    proj = summand_projection(res, 0, 0)
    assert rank([list(r) for r in proj]) == res.dims[0] == 2
