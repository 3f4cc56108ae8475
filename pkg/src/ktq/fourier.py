"""Evaluation coordinates of set blocks and the inverse Fourier transform back.

Evaluating the twisted characters of <g> at g^k turns a block element into a
vector over the fixed points X^g with cyclotomic entries.  The family over all
k determines the element again through the orthogonality relations of the
twisted basis; ``reconstruct`` is that inverse transform.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cocycles import commutator_character
from .csc import compute
from .errors import InvalidInput
from .exactalg import Cyclotomic, cyclotomic_rank, reduce_exponents
from .kblocks import GSet, Instance, KBlock, Point


def _points(block: KBlock) -> list[tuple[int, int]]:
    pts = []
    for pi, fixed in enumerate(block.fixed.parts):
        if fixed is None:
            raise InvalidInput("evaluation coordinates exist only for point and G-set blocks")
        pts.extend((pi, x) for x in fixed)
    return pts


def evaluate(block: KBlock, coeffs: Sequence, at: int) -> tuple[Cyclotomic, ...]:
    """Values at ``at`` (an element of the acting group) per fixed point, degree 0."""
    ring = block.ring
    if at not in ring.subgroup:
        raise InvalidInput("evaluation point is outside the acting group")
    pts = _points(block)
    if len(coeffs) != block.dims[0]:
        raise ValueError("coefficient vector does not match the block")
    L = ring.algebra.level
    acc = {p: {} for p in pts}
    for c, lab in zip(coeffs, block.labels[0]):
        if c:
            _, pi, x, j = lab
            e = ring.exps[j][at]
            d = acc[pi, x]
            d[e] = d.get(e, 0) + c
    return tuple(Cyclotomic.from_exponents(L, acc[p]) for p in pts)


@dataclass(frozen=True)
class EvalFamily:
    """Evaluations F_k of one block element at g^k, k = 0 .. |g|-1."""

    block: KBlock
    base: int
    values: tuple[tuple[Cyclotomic, ...], ...]


def evaluate_family(block: KBlock, coeffs: Sequence) -> EvalFamily:
    G = block.ring.algebra.group
    g = block.element
    if G.cyclic_subgroup(g) != block.acting:
        raise InvalidInput("evaluation families need a block acted on by <g>")
    return EvalFamily(block, g, tuple(evaluate(block, coeffs, h) for h in G.powers(g)))


def reconstruct(F: EvalFamily) -> tuple[Fraction, ...]:
    """E_j = (1/m) sum_k F_k * basis_j(g^k)^-1 at every fixed point: the inverse transform."""
    block = F.block
    ring = block.ring
    G = ring.algebra.group
    pw = G.powers(F.base)
    if len(F.values) != len(pw):
        raise ValueError(f"family has {len(F.values)} entries, the cyclic group has order {len(pw)}")
    L = ring.algebra.level
    m = len(pw)
    pts = _points(block)
    where = {p: i for i, p in enumerate(pts)}
    out = []
    for lab in block.labels[0]:
        _, pi, x, j = lab
        i = where[pi, x]
        # multiplying by a root of unity shifts exponents, so sum everything in one reduction
        terms: dict[int, object] = {}
        for k, h in enumerate(pw):
            val = F.values[k][i].lift(L)
            shift = -ring.exps[j][h]
            for e, c in enumerate(val.coeffs):
                if c:
                    t = (e + shift) % L
                    terms[t] = terms.get(t, 0) + c
        total = reduce_exponents(L, terms)
        if any(total[1:]):
            raise InvalidInput("family is not the evaluation of a rational block element")
        out.append(Fraction(total[0]) / m)
    return tuple(out)


# ---------------------------------------------------------------------------
# comparison with the decomposition over conjugacy classes


@dataclass(frozen=True)
class ComparisonReport:
    csc_dim: int
    image_dim: int
    ar_count: int
    invariant: bool

    @property
    def ok(self) -> bool:
        return self.csc_dim == self.image_dim == self.ar_count and self.invariant


def adem_ruan_count(inst: Instance) -> int:
    """sum over classes [g] of the C_g-orbits on X^g whose stabilizer kills the commutator character of g."""
    G = inst.group
    conj = G.conjugacy
    total = 0
    for g in conj.representative:
        L = commutator_character(inst.alpha, g)
        cent = sorted(conj.centralizer[g])
        fixed = inst.fixed_points(g)
        for pi, pts in enumerate(fixed.parts):
            if pts is None:
                raise InvalidInput("the comparison covers point and G-set spaces only")
            seen = set()
            for x in pts:
                if x in seen:
                    continue
                orbit = {inst.act(pi, c, x) for c in cent}
                seen |= orbit
                stab = [c for c in cent if inst.act(pi, c, x) == x]
                if all(L[c] == 0 for c in stab):
                    total += 1
    return total


def compare_decompositions(inst: Instance) -> ComparisonReport:
    """Evaluate CSC solutions at class representatives and compare dimensions.

    The image at g lies in functions f on X^g with f(c y) = chi(c)^-1 f(y) for c
    in the centralizer, chi the commutator character of g; that equivariance is
    checked on every solution vector.
    """
    for p in inst.parts:
        if not isinstance(p, (Point, GSet)):
            raise InvalidInput("the comparison covers point and G-set spaces only")
    G = inst.group
    res = compute(inst, degrees=(0,))
    S = res.system
    conj = G.conjugacy
    rows = []
    invariant = True
    for v in res.basis[0].vectors:
        row = []
        for g in conj.representative:
            blk = S.blocks[g]
            vals = evaluate(blk, v[S.block_slice(0, g)], g)
            row.extend(vals)
            invariant &= _check_equivariance(inst, blk, vals, g)
        rows.append(row)
    image = cyclotomic_rank(rows) if rows else 0
    return ComparisonReport(res.dims[0], image, adem_ruan_count(inst), invariant)


def _check_equivariance(inst: Instance, blk: KBlock, vals, g: int) -> bool:
    G = inst.group
    L = inst.alpha.modulus
    chi = commutator_character(inst.alpha, g)
    pts = _points(blk)
    where = {p: i for i, p in enumerate(pts)}
    for c in sorted(G.conjugacy.centralizer[g]):
        phase = Cyclotomic.from_exponents(L, {-chi[c]: 1})
        for (pi, x), i in where.items():
            j = where[pi, inst.act(pi, c, x)]
            if vals[j] != phase * vals[i]:
                return False
    return True
