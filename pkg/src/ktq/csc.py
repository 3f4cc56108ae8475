"""The cyclic subgroup compatibility system and its exact solution.

Variables are the coordinates of every block V_g, g in G, concatenated in element
order.  Degree d of K_G(X, P) (x) Q is the kernel of the stacked rows

* invariance:     x_{kgk^-1} - A_{k,g} x_g = 0          for all k, g;
* compatibility:  R_{g,h} x_g - S_{g,h} x_h = 0 in W_{g,h} for all h in <g>,

where R is group restriction to <h> and S is restriction of X^h to X^g.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInput
from .exactalg import kernel
from .kblocks import BlockMap, GSet, Instance, KBlock, Point, Trivial, TrivialCircle


@dataclass(frozen=True, eq=False)
class CompatEntry:
    g: int
    h: int
    target: KBlock
    map_from_g: BlockMap
    map_from_h: BlockMap


@dataclass(frozen=True, eq=False)
class CSCSystem:
    instance: Instance
    blocks: dict
    action_maps: dict
    compat: tuple
    offsets: tuple[dict, dict]
    sizes: tuple[int, int]
    rows: tuple[list, list]

    def block_slice(self, degree: int, g: int) -> slice:
        o = self.offsets[degree][g]
        return slice(o, o + self.blocks[g].dims[degree])


@dataclass(frozen=True, eq=False)
class CSCResult:
    system: CSCSystem
    dims: dict
    basis: dict
    per_summand: dict

    def summand_table(self, degree: int = 0) -> list[tuple[int, int]]:
        """(class representative, block dimension) in class order."""
        return [(r, d[degree]) for r, d in self.per_summand.items()]


def _difference_rows(left: BlockMap, l_off: int, right: BlockMap, r_off: int, degree: int) -> list[dict]:
    """Rows of  left(x_a) - right(x_b)  in the common target block."""
    rows = [dict() for _ in range(left.target.dims[degree])]
    for (i, j), v in left.entries[degree].items():
        rows[i][l_off + j] = v
    for (i, j), v in right.entries[degree].items():
        r = rows[i]
        k = r_off + j
        w = r.get(k, 0) - v
        if w:
            r[k] = w
        else:
            r.pop(k, None)
    return [r for r in rows if r]


def _identity_map(block) -> BlockMap:
    return BlockMap(block, block, tuple({(i, i): 1 for i in range(block.dims[d])} for d in (0, 1)))


def assemble(inst: Instance, symmetrize: bool = False, invariance: str = "generators") -> CSCSystem:
    """Blocks, action maps, compatibility data and constraint rows per degree.

    Invariance rows are written for k in a generating set of G by default, which
    cuts the same kernel as ``invariance="all"`` because action maps compose.
    With ``symmetrize`` every compatibility constraint is also imposed after
    transport by each k in G; the kernel is unchanged.
    """
    G = inst.group
    n = G.order
    blocks = {g: inst.block(g) for g in range(n)}
    offsets = ({}, {})
    sizes = [0, 0]
    for g in range(n):
        for d in (0, 1):
            offsets[d][g] = sizes[d]
            sizes[d] += blocks[g].dims[d]
    if invariance == "all":
        acting = range(n)
    elif invariance == "generators":
        acting = G.generators
    else:
        raise ValueError(f"unknown invariance mode {invariance!r}")
    rows = ([], [])
    action_maps = {}
    for g in range(n):
        for k in acting:
            A = inst.action_map(g, k)
            action_maps[k, g] = A
            t = G.conj(k, g)
            ident = _identity_map(A.target)
            for d in (0, 1):
                rows[d].extend(_difference_rows(ident, offsets[d][t], A, offsets[d][g], d))
    compat = []
    for g in range(n):
        for h in G.powers(g):
            R = inst.group_restriction_map(g, h)
            S = inst.space_restriction_map(g, h)
            compat.append(CompatEntry(g, h, R.target, R, S))
            if h == g:
                continue
            for d in (0, 1):
                rows[d].extend(_difference_rows(R, offsets[d][g], S, offsets[d][h], d))
    if symmetrize:
        for e in compat:
            for k in range(n):
                gk, hk = G.conj(k, e.g), G.conj(k, e.h)
                Rk = inst.group_restriction_map(gk, hk)
                Sk = inst.space_restriction_map(gk, hk)
                left = Rk @ inst.action_map(e.g, k)
                right = Sk @ inst.action_map(e.h, k)
                for d in (0, 1):
                    rows[d].extend(_difference_rows(left, offsets[d][e.g], right, offsets[d][e.h], d))
    return CSCSystem(inst, blocks, action_maps, tuple(compat), offsets, tuple(sizes), rows)


def solve(S: CSCSystem, degrees=(0, 1)) -> CSCResult:
    dims, basis = {}, {}
    for d in degrees:
        kb = kernel(S.rows[d], S.sizes[d])
        dims[d] = kb.dim
        basis[d] = kb
    conj = S.instance.group.conjugacy
    per = {r: S.blocks[r].dims for r in conj.representative}
    return CSCResult(S, dims, basis, per)


def compute(inst: Instance, degrees=(0, 1)) -> CSCResult:
    return solve(assemble(inst), degrees)


def summand_projection(result: CSCResult, degree: int, g: int) -> list[tuple[Fraction, ...]]:
    """Coordinates of the solution basis vectors in the block of g."""
    sl = result.system.block_slice(degree, g)
    return [tuple(v[sl]) for v in result.basis[degree].vectors]


@dataclass(frozen=True)
class OracleReport:
    name: str
    expected: dict
    got: dict

    @property
    def ok(self) -> bool:
        return self.expected == self.got


def atiyah_segal_count(inst: Instance) -> dict:
    """dim of (sum_g K(X^g) (x) Q)^G by orbit counting, for untwisted instances.

    Set parts contribute the G-orbits of pairs (g, x) with gx = x; each circle
    part contributes one class per conjugacy class in both degrees.
    """
    G = inst.group
    if not isinstance(inst.twist, Trivial):
        raise InvalidInput("the Atiyah-Segal count needs a trivial twist")
    n = G.order
    pairs = set()
    for pi, part in enumerate(inst.parts):
        if isinstance(part, Point):
            pairs.update((g, pi, 0) for g in range(n))
        elif isinstance(part, GSet):
            pairs.update((g, pi, x) for g in range(n) for x in range(part.points) if part.action[g][x] == x)
    orbits = 0
    seen = set()
    for p in sorted(pairs):
        if p in seen:
            continue
        orbits += 1
        g, pi, x = p
        for k in range(n):
            seen.add((G.conj(k, g), pi, inst.act(pi, k, x)))
    circles = sum(isinstance(p, TrivialCircle) for p in inst.parts)
    ncls = len(G.conjugacy.classes)
    return {0: orbits + circles * ncls, 1: circles * ncls}


def untwisted_atiyah_segal_check(inst: Instance) -> OracleReport:
    got = compute(inst).dims
    return OracleReport("atiyah-segal", atiyah_segal_count(inst), got)
