import itertools
from fractions import Fraction

import pytest

from ktq import cocycles, groups
from ktq.errors import InvalidInput
from ktq.exactalg import root_of_unity
from ktq.regressions import abelian_groups, klein_cocycle, lemma_checks, lemma_checks_elementwise
from ktq.twisted_chars import (avg, build_ring, check_functoriality, check_rest_ind, check_ind_res_average, conj_act,
                               conj_act_matrix, induce_to, primitive_basis, primitive_project, primitive_project_nonrecursive,
                               restrict_to, ses_check, twisted_algebra)

F = Fraction


def untwisted(G):
    return twisted_algebra(G, cocycles.trivial_cocycle(G))


def test_build_ring_examples():
    C2 = groups.cyclic(2)
    R = build_ring(C2, cocycles.trivial_cocycle(C2), 1)
    assert [[R.value(j, h) for h in (0, 1)] for j in range(2)] == [
        [root_of_unity(2, 0), root_of_unity(2, 0)], [root_of_unity(2, 0), root_of_unity(2, 1)]]
    K = groups.klein()
    R = build_ring(K, klein_cocycle(K), 3)
    assert R.order == 2
    z4 = root_of_unity(4, 1)
    assert {R.value(j, 3) for j in range(2)} == {z4.lift(R.algebra.level), (-z4).lift(R.algebra.level)}
    assert build_ring(K, klein_cocycle(K), 0).order == 1


def test_restrict_examples():
    C4 = groups.cyclic(4)
    A = untwisted(C4)
    R4, R2, R1 = A.ring(1), A.ring(2), A.ring(0)
    for j in range(4):
        e = restrict_to(R4.basis(j), R2)
        assert e.coeffs == tuple(F(int(i == j % 2)) for i in range(2))
        assert restrict_to(R4.basis(j), R1).coeffs == (1,)
        assert restrict_to(restrict_to(R4.basis(j), R2), R1) == restrict_to(R4.basis(j), R1)


def test_restrict_requires_subgroup():
    C4 = groups.cyclic(4)
    A = untwisted(C4)
    with pytest.raises(InvalidInput):
        restrict_to(A.ring(2).basis(0), A.ring(1))


def test_induce_examples():
    C2, C4 = groups.cyclic(2), groups.cyclic(4)
    A = untwisted(C2)
    assert induce_to(A.ring(0).basis(0), A.ring(1)).coeffs == (1, 1)
    B = untwisted(C4)
    assert induce_to(B.ring(2).basis(0), B.ring(1)).coeffs == (1, 0, 1, 0)
    x = B.ring(1).element([1, 2, 3, 4])
    assert induce_to(x, B.ring(1)) == x


def test_conj_act_examples():
    D8 = groups.dihedral(8)
    A = untwisted(D8)
    r, s = D8.index("r"), D8.index("s")
    R = A.ring(r)
    images = [conj_act(R.basis(j), s) for j in range(4)]
    # chi_1 <-> chi_3, chi_0 and chi_2 fixed
    assert [im.coeffs.index(1) for im in images] == [0, 3, 2, 1]
    assert conj_act_matrix(R, 0).is_permutation()
    assert all(conj_act(R.basis(j), 0) == R.basis(j) for j in range(4))


def test_klein_conjugation_swaps_through_the_other_factor():
    K = groups.klein()
    A = twisted_algebra(K, klein_cocycle(K))
    for g in (1, 2, 3):
        R = A.ring(g)
        # inner conjugation acts trivially; the other generators exchange the pair
        assert conj_act(R.basis(0), g) == R.basis(0)
        others = [k for k in (1, 2, 3) if k != g]
        for k in others:
            assert conj_act(R.basis(0), k) == R.basis(1)


def test_avg_examples():
    C4 = groups.cyclic(4)
    A = untwisted(C4)
    x = A.ring(1).element([1, -2, 0, F(1, 2)])
    assert avg(x) == x
    K = groups.klein()
    B = twisted_algebra(K, klein_cocycle(K))
    R = B.ring(1)
    assert avg(R.basis(0)).coeffs == (F(1, 2), F(1, 2))
    with pytest.raises(InvalidInput):
        avg(untwisted(groups.dihedral(8)).ring(1).basis(0))


def test_roi_examples():
    C4 = groups.cyclic(4)
    A = untwisted(C4)
    x = A.ring(2).basis(0)
    rep = check_ind_res_average(x)
    assert rep.ok
    assert restrict_to(induce_to(x, A.ring(1)), A.ring(2)).coeffs == (2, 0)
    assert check_ind_res_average(A.ring(1).basis(1)).ok
    K = groups.klein()
    B = twisted_algebra(K, klein_cocycle(K))
    assert all(check_ind_res_average(b).ok for b in B.ring(1).basis_elements())


def test_rest_ind_examples():
    K = groups.klein()
    A = untwisted(K)
    rep = check_rest_ind(A.ring(1).basis(0), A.ring(2))
    assert rep.ok and "factor=1" in rep.detail
    C4 = groups.cyclic(4)
    B = untwisted(C4)
    rep = check_rest_ind(B.ring(2).basis(0), B.ring(2))
    assert rep.ok and "factor=2" in rep.detail
    Kt = twisted_algebra(K, klein_cocycle(K))
    with pytest.raises(InvalidInput):
        check_rest_ind(Kt.ring(1).basis(0), Kt.ring(2))


def test_functoriality_examples():
    C8 = groups.cyclic(8)
    A = untwisted(C8)
    for x in A.ring(4).basis_elements():
        assert check_functoriality(x, A.ring(2)).ok
        assert check_functoriality(x, A.ring(2), A.ring(1)).ok


def test_primitive_basis_examples():
    for p in (2, 3, 5, 7):
        A = untwisted(groups.cyclic(p))
        assert primitive_basis(A.ring(1)).dim == p - 1
    B = untwisted(groups.cyclic(4))
    kb = primitive_basis(B.ring(1))
    assert kb.dim == 2
    y = B.ring(1).element([F(1, 2), 0, F(-1, 2), 0])
    assert kb.contains(y.coeffs)
    assert restrict_to(y, B.ring(2)).is_zero() and restrict_to(y, B.ring(0)).is_zero()
    assert primitive_basis(untwisted(groups.trivial()).ring(0)).dim == 1


def test_primitive_project_examples():
    B = untwisted(groups.cyclic(4))
    R = B.ring(1)
    assert primitive_project(R.basis(0)).coeffs == (F(1, 2), 0, F(-1, 2), 0)
    A = untwisted(groups.cyclic(2))
    assert primitive_project(A.ring(1).basis(0)).coeffs == (F(1, 2), F(-1, 2))
    y = R.element([F(1, 2), 0, F(-1, 2), 0])
    assert primitive_project(y) == y


def test_one_step_projection_misses_primitive_part():
    # the non-recursive formula does not vanish at e on C4
    A = untwisted(groups.cyclic(4))
    R = A.ring(1)
    p = primitive_project_nonrecursive(R.basis(0))
    assert p.coeffs == (F(1, 4), F(-1, 4), F(-3, 4), F(-1, 4))
    assert restrict_to(p, A.ring(0)).coeffs == (-1,)
    assert not primitive_basis(R).contains(p.coeffs)


def _divisor_phi_sum(n):
    from ktq.exactalg import divisors, euler_phi
    return sum(euler_phi(d) for d in divisors(n))


@pytest.mark.parametrize("n", range(1, 13))
def test_ses_untwisted_cyclic(n):
    rep = ses_check(untwisted(groups.cyclic(n)).ring(1 if n > 1 else 0))
    assert rep.ok and rep.dim_total == n == _divisor_phi_sum(n)
    from ktq.exactalg import euler_phi
    assert rep.dim_gt == euler_phi(n)


def test_ses_klein():
    K = groups.klein()
    rep = ses_check(twisted_algebra(K, klein_cocycle(K)).ring(3))
    assert rep.ok and rep.dim_total == 2 and rep.dim_gt == 1 and sum(rep.dims_below.values()) == 1


@pytest.mark.parametrize("G", abelian_groups(), ids=lambda G: G.name)
def test_matrix_and_elementwise_lemma_checks_agree(G):
    cocs = list(cocycles.enumerate_cocycles(G))
    for alpha in cocs[:: max(1, len(cocs) // 6)]:
        fast = lemma_checks(G, alpha)
        assert fast == lemma_checks_elementwise(G, alpha)
        assert all(fast.values())


def test_basis_functions_are_projective():
    for G in abelian_groups():
        for alpha in itertools.islice(cocycles.enumerate_cocycles(G), 0, None, 9):
            A = twisted_algebra(G, alpha)
            P = G.product
            for H in A.cyclic_subgroups():
                R = A.ring(H)
                for e in R.exps:
                    for a in R.elements:
                        for b in R.elements:
                            assert (e[a] + e[b] - A.alpha_exp(a, b) - e[P[a][b]]) % A.level == 0


def test_conj_act_composes_on_nonabelian_groups():
    for G in (groups.dihedral(8), groups.quaternion(), groups.symmetric(3)):
        for alpha in itertools.islice(cocycles.enumerate_cocycles(G), 0, None, 3):
            A = twisted_algebra(G, alpha)
            for H in A.cyclic_subgroups():
                R = A.ring(H)
                for k1 in range(G.order):
                    M1 = conj_act_matrix(R, k1)
                    assert M1.is_permutation()
                    mid = A.ring(frozenset(G.conj(k1, h) for h in H))
                    for k2 in G.generators:
                        assert conj_act_matrix(mid, k2) @ M1 == conj_act_matrix(R, G.product[k2][k1])


def test_restriction_and_induction_matrices_are_integral():
    from ktq.twisted_chars import induction_matrix, restriction_matrix
    G = groups.direct_product(groups.cyclic(2), groups.cyclic(4))
    for alpha in itertools.islice(cocycles.enumerate_cocycles(G), 0, None, 17):
        A = twisted_algebra(G, alpha)
        for H in A.cyclic_subgroups():
            for C in A.cyclic_subgroups():
                if H <= C:
                    assert restriction_matrix(A.ring(C), A.ring(H)).is_integral()
                    assert induction_matrix(A.ring(H), A.ring(C)).is_integral()
