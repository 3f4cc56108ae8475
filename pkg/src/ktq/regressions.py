"""Built-in regressions: the Klein and D8 circle computations and the lemma suite."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from . import cocycles, groups
from .csc import compute
from .exactalg import QMatrix, rank, reduce_exponents
from .kblocks import CircleHom, GroupCocycle, Instance, Point, TrivialCircle
from .twisted_chars import (ClassFunction, _ambient_basis_induced, ambient_res_ind_matrix, avg,
                            check_functoriality, check_rest_ind, check_ind_res_average, conj_act, conj_act_matrix,
                            conj_permutation,
                            in_induced_span, induce_to, induction_matrix, primitive_basis, primitive_project,
                            restriction_matrix, ses_check, twisted_algebra)


@dataclass(frozen=True)
class Check:
    label: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        tail = f"  ({self.detail})" if self.detail else ""
        return f"{'PASS' if self.ok else 'FAIL'}  {self.label}{tail}"


def klein_cocycle(G: groups.GroupTable | None = None) -> cocycles.Cocycle2:
    """alpha((a1, b1), (a2, b2)) = (-1)^(a2 b1) on Z2 x Z2, element (a, b) at index a + 2b."""
    G = groups.klein() if G is None else G
    return cocycles.check_cocycle(G, 2, [[(x // 2) * (y % 2) % 2 for y in range(4)] for x in range(4)])


def klein_instance() -> Instance:
    G = groups.klein()
    return Instance(G, Point(), GroupCocycle(klein_cocycle(G)))


def klein() -> list[Check]:
    inst = klein_instance()
    res = compute(inst)
    table = tuple(d[0] for d in res.per_summand.values())
    return [
        Check("klein per-summand degree-0 dims", table == (1, 2, 2, 2), f"got {table}"),
        Check("klein K^0 dimension", res.dims[0] == 1, f"got {res.dims[0]}"),
        Check("klein K^1 dimension", res.dims[1] == 0, f"got {res.dims[1]}"),
    ]


# D8 with r^a s^b at index a + 4b; characters of the abelianization by (lambda(r), lambda(s))
D8_TWISTS = {"trivial": (0, 0), "sign-r": (1, 0), "sign-s": (0, 1), "sign-rs": (1, 1)}
D8_CLASS_ORDER = ("e", "r2", "r", "s", "rs")
D8_TABLE = {"trivial": (1, 2, 4, 2, 2), "sign-r": (1, 2, 2, 2, 1), "sign-s": (1, 2, 4, 1, 1), "sign-rs": (1, 2, 2, 1, 2)}
D8_RESULT = {"trivial": 5, "sign-r": 3, "sign-s": 3, "sign-rs": 3}


def d8_hom(G: groups.GroupTable, name: str) -> cocycles.HomTwist:
    lr, ls = D8_TWISTS[name]
    return cocycles.check_hom(G, 2, [(lr * (x % 4) + ls * (x // 4)) % 2 for x in range(8)])


def d8_instance(name: str) -> Instance:
    G = groups.dihedral(8)
    return Instance(G, TrivialCircle(), CircleHom(d8_hom(G, name)))


def d8_circle() -> list[Check]:
    out = []
    for name in D8_TWISTS:
        inst = d8_instance(name)
        G = inst.group
        res = compute(inst)
        per = res.per_summand
        table = tuple(per[G.index(lab)][0] for lab in D8_CLASS_ORDER)
        out.append(Check(f"d8-circle {name} contributions (e, r2, r, s, rs)", table == D8_TABLE[name],
                         f"got {table}"))
        out.append(Check(f"d8-circle {name} K^0 dimension", res.dims[0] == D8_RESULT[name],
                         f"got {res.dims[0]}"))
    return out


# ---------------------------------------------------------------------------
# lemma suite


def abelian_groups(max_order: int = 8) -> list[groups.GroupTable]:
    return [G for G in groups.small_groups(max_order) if G.is_abelian()]


def lemma_checks_elementwise(G: groups.GroupTable, alpha: cocycles.Cocycle2) -> dict[str, bool]:
    """Every lemma identity on every basis element, through the element-level checks."""
    A = twisted_algebra(G, alpha)
    subs = A.cyclic_subgroups()
    rings = [A.ring(H) for H in subs]
    ok = {"ind-res-average": True, "rest-ind": True, "functoriality": True, "primitive": True, "ses": True, "conj": True}
    invariants = {}
    for R in rings:
        invariants[R.subgroup] = [avg(b) for b in R.basis_elements()]
    for R in rings:
        for x in R.basis_elements():
            ok["ind-res-average"] &= check_ind_res_average(x).ok
            for k in range(G.order):
                for k2 in G.generators:
                    ok["conj"] &= conj_act(conj_act(x, k), k2) == conj_act(x, G.product[k2][k])
        for C in rings:
            if R.subgroup <= C.subgroup:
                for x in R.basis_elements():
                    ok["ind-res-average"] &= check_ind_res_average(x, C).ok
                    ok["functoriality"] &= check_functoriality(x, C).ok
                    for D in rings:
                        if C.subgroup <= D.subgroup:
                            ok["functoriality"] &= check_functoriality(x, C, D).ok
        for R2 in rings:
            for x in invariants[R.subgroup]:
                ok["rest-ind"] &= check_rest_ind(x, R2).ok
            for C in rings:
                if R.subgroup <= C.subgroup and R2.subgroup <= C.subgroup:
                    for x in R.basis_elements():
                        ok["rest-ind"] &= check_rest_ind(x, R2, C).ok
        ok["primitive"] &= _primitive_ok(R)
        ok["ses"] &= ses_check(R).ok
    return ok


def _mat_avg(R, over) -> QMatrix:
    over = list(over)
    acc = QMatrix.zeros(R.order, R.order)
    for k in over:
        acc = acc + conj_act_matrix(R, k)
    return acc.scale(Fraction(1, len(over)))


def _mat_res_ind(src, tgt, amb) -> QMatrix:
    if amb is None:
        return ambient_res_ind_matrix(src, tgt)
    return restriction_matrix(amb, tgt) @ induction_matrix(src, amb)


def _cols(M: QMatrix) -> list[tuple]:
    return [M.column(j) for j in range(M.cols)]


def primitive_matrix(R, memo: dict) -> QMatrix:
    """Matrix of the recursive projection onto the primitive part of the ring of R."""
    if R.subgroup in memo:
        return memo[R.subgroup]
    A = R.algebra
    P = QMatrix.identity(R.order)
    for H in R.proper_subgroups():
        RH = A.ring(H)
        term = induction_matrix(RH, R) @ primitive_matrix(RH, memo) @ restriction_matrix(R, RH)
        P = P - term.scale(Fraction(RH.order, R.order))
    memo[R.subgroup] = P
    return P


def lemma_checks(G: groups.GroupTable, alpha: cocycles.Cocycle2) -> dict[str, bool]:
    """Every lemma identity over all cyclic-subgroup data of one abelian group and cocycle.

    Each identity is linear in the element, so it is checked once as an identity
    of the restriction, induction and conjugation matrices rather than per basis
    element; ``lemma_checks_elementwise`` runs the element-level checks instead.
    """
    A = twisted_algebra(G, alpha)
    rings = [A.ring(H) for H in A.cyclic_subgroups()]
    n = G.order
    ok = {"ind-res-average": True, "rest-ind": True, "functoriality": True, "primitive": True, "ses": True, "conj": True}
    ambients = {R.subgroup: [None] + [C for C in rings if R.subgroup <= C.subgroup] for R in rings}
    avgs = {}

    def average(R, amb):
        key = (R.subgroup, None if amb is None else amb.subgroup)
        if key not in avgs:
            avgs[key] = _mat_avg(R, range(n) if amb is None else amb.elements)
        return avgs[key]

    for R in rings:
        for k in range(n):
            for k2 in G.generators:
                ok["conj"] &= conj_act_matrix(R, k2) @ conj_act_matrix(R, k) == conj_act_matrix(R, G.product[k2][k])
        for amb in ambients[R.subgroup]:
            size = n if amb is None else amb.order
            ok["ind-res-average"] &= _mat_res_ind(R, R, amb) == average(R, amb).scale(Fraction(size, R.order))
        for C in rings:
            if not R.subgroup <= C.subgroup:
                continue
            up = induction_matrix(R, C)
            direct = _ambient_basis_induced(R)
            for j, col in enumerate(_cols(up)):
                ok["functoriality"] &= induce_to(C.element(col)) == ClassFunction(A, direct[j])
            for amb in ambients[C.subgroup]:
                if amb is not None:
                    ok["functoriality"] &= induction_matrix(C, amb) @ up == induction_matrix(R, amb)
                ok["functoriality"] &= (_mat_res_ind(R, R, amb)
                                        == restriction_matrix(C, R) @ _mat_res_ind(R, C, amb))
        for R2 in rings:
            inter = A.ring(R.subgroup & R2.subgroup)
            for amb in [None] + [C for C in ambients[R.subgroup] if C is not None and R2.subgroup <= C.subgroup]:
                elems = range(n) if amb is None else amb.elements
                index = Fraction(len(elems), len({G.product[a][b] for a in R.subgroup for b in R2.subgroup}))
                inv = average(R, amb)
                lhs = _mat_res_ind(R, R2, amb) @ inv
                rhs = (induction_matrix(inter, R2) @ restriction_matrix(R, inter) @ inv).scale(index)
                ok["rest-ind"] &= lhs == rhs
    memo: dict = {}
    for R in rings:
        k_ok, s_ok = _primitive_matrix_checks(R, memo)
        ok["primitive"] &= k_ok
        ok["ses"] &= s_ok
    return ok


def _primitive_matrix_checks(R, memo) -> tuple[bool, bool]:
    A = R.algebra
    P = primitive_matrix(R, memo)
    gt = primitive_basis(R)
    k_ok = P @ P == P and rank(_cols(P), R.order) == gt.dim
    k_ok &= all(gt.contains(c) for c in _cols(P))
    induced, dims_below, sub = [], 0, []
    for H in R.proper_subgroups():
        RH = A.ring(H)
        b = primitive_basis(RH)
        dims_below += b.dim
        sub.append((RH, b))
        for v in b.vectors:
            induced.append(induction_matrix(RH, R) @ v)
    base = rank(induced, R.order) if induced else 0
    rest = _cols(QMatrix.identity(R.order) - P)
    k_ok &= (rank(induced + rest, R.order) if induced else rank(rest, R.order)) == base
    s_ok = R.order == gt.dim + dims_below
    for RH, b in sub:
        for v in b.vectors:
            y = induction_matrix(RH, R) @ v
            s_ok &= not any(P @ y)
            for RK, _ in sub:
                img = (primitive_matrix(RK, memo) @ (restriction_matrix(R, RK) @ y))
                img = tuple(c * Fraction(RK.order, R.order) for c in img)
                s_ok &= img == (tuple(v) if RK is RH else (0,) * RK.order)
    s_ok &= all(P @ v == tuple(v) for v in gt.vectors)
    s_ok &= rank(induced + [list(v) for v in gt.vectors], R.order) == R.order
    return k_ok, s_ok


def _primitive_ok(R) -> bool:
    basis = primitive_basis(R)
    images = []
    for x in R.basis_elements():
        p = primitive_project(x)
        if primitive_project(p) != p or not basis.contains(p.coeffs):
            return False
        if not in_induced_span(x - p):
            return False
        images.append(p.coeffs)
    return rank(images, R.order) == basis.dim


def lemma_fingerprint(G: groups.GroupTable, alpha: cocycles.Cocycle2) -> tuple:
    """Everything ``lemma_checks`` reads from the twisted algebra of (G, alpha).

    The checks are a function of the basis exponent tables, the restriction,
    induction and conjugation data and the induced characters on G, so two
    cocycles with equal fingerprints give equal results.
    """
    A = twisted_algebra(G, alpha)
    rings = [A.ring(H) for H in A.cyclic_subgroups()]
    out: list = [A.level]
    for R in rings:
        out.append(tuple(tuple(sorted(e.items())) for e in R.exps))
        for C in rings:
            if R.subgroup <= C.subgroup:
                out.append((restriction_matrix(C, R), induction_matrix(R, C)))
        out.append(tuple(conj_permutation(R, k)[1] for k in range(G.order)))
        out.append(tuple(tuple(tuple(reduce_exponents(A.level, raw[h])) for h in range(G.order))
                         for raw in _ambient_basis_induced(R)))
    return tuple(out)


def lemma_suite(group_list: Iterable[groups.GroupTable] | None = None, twisted: bool = True) -> list[Check]:
    group_list = abelian_groups() if group_list is None else list(group_list)
    totals: dict[str, list[int]] = {}
    for G in group_list:
        cocs = list(cocycles.enumerate_cocycles(G)) if twisted else [cocycles.trivial_cocycle(G)]
        seen: dict = {}
        for alpha in cocs:
            fp = lemma_fingerprint(G, alpha)
            if fp not in seen:
                seen[fp] = lemma_checks(G, alpha)
            for name, good in seen[fp].items():
                t = totals.setdefault(name, [0, 0])
                t[0] += 1
                t[1] += good
    names = {"ind-res-average": "res o ind = [G:H] average", "rest-ind": "rest-ind factor [G:H1H2]",
             "functoriality": "functoriality chains", "primitive": "primitive projection idempotent with correct image",
             "ses": "split SES dimension identity", "conj": "conjugation action composes"}
    return [Check(f"lemmas {names[k]}", v[1] == v[0], f"{v[1]}/{v[0]} (group, cocycle) cases")
            for k, v in totals.items()]


def run(example: str) -> list[Check]:
    if example == "klein":
        return klein()
    if example == "d8-circle":
        return d8_circle()
    if example == "lemmas":
        return lemma_suite()
    raise ValueError(f"unknown example {example!r}")
