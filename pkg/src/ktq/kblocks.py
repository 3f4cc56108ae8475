"""Space catalog and the fixed-point blocks V_g = K_<g>(X^g, P_g) (x) Q.

A space is a Point, a finite G-set, a circle with trivial action, or a disjoint
union of those.  Every block is described by labeled basis vectors per degree:

* set points ``("pt", part, x, j)``: the twisted character j of the acting cyclic
  group at the fixed point x (the acting group fixes X^g pointwise);
* circle classes ``("S1", part, o)``: the lambda-orbit o (smallest character index)
  of the twisted character basis, as an orbit sum in degree 0 (kernel of
  1 - lambda) and as an orbit class in degree 1 (cokernel of 1 - lambda).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .cocycles import Cocycle2, HomTwist, trivial_cocycle
from .errors import InternalError, InvalidInput
from .exactalg import QMatrix, rank
from .groups import GroupTable
from .twisted_chars import (TwistedCharRing, conj_act_matrix, restriction_matrix,
                            twisted_algebra)

# ---------------------------------------------------------------------------
# spaces


@dataclass(frozen=True)
class Point:
    pass


@dataclass(frozen=True)
class GSet:
    """A finite G-set; ``action[g][x]`` is the image of point x under element g."""

    points: int
    action: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class TrivialCircle:
    pass


@dataclass(frozen=True)
class DisjointUnion:
    parts: tuple


SpaceKind = Point | GSet | TrivialCircle | DisjointUnion


def make_gset(G: GroupTable, action: Sequence[Sequence[int]]) -> GSet:
    """Validate a permutation action of G (one permutation per element, identity first)."""
    if len(action) != G.order:
        raise InvalidInput(f"G-set action needs {G.order} permutations, got {len(action)}")
    perms = tuple(tuple(int(x) for x in p) for p in action)
    n = len(perms[0]) if perms else 0
    for g, p in enumerate(perms):
        if len(p) != n or sorted(p) != list(range(n)):
            raise InvalidInput(f"action of element {g} is not a permutation of {n} points")
    if perms[0] != tuple(range(n)):
        raise InvalidInput("identity element must act trivially")
    P = G.product
    for g in range(G.order):
        for h in range(G.order):
            pg, ph, pgh = perms[g], perms[h], perms[P[g][h]]
            if any(pgh[x] != pg[ph[x]] for x in range(n)):
                raise InvalidInput(f"action is not a homomorphism at ({g}, {h})")
    return GSet(n, perms)


def trivial_gset(G: GroupTable, points: int = 1) -> GSet:
    return GSet(points, tuple(tuple(range(points)) for _ in range(G.order)))


def translation_gset(G: GroupTable) -> GSet:
    """G acting on itself by left multiplication."""
    return GSet(G.order, tuple(tuple(G.product[g][x] for x in range(G.order)) for g in range(G.order)))


def coset_gset(G: GroupTable, H) -> GSet:
    """G acting on the left cosets G/H, cosets ordered by their smallest element."""
    H = frozenset(H)
    if not G.is_subgroup(H):
        raise InvalidInput("coset space needs a subgroup")
    cosets = sorted({frozenset(G.product[t][h] for h in H) for t in range(G.order)}, key=min)
    where = {}
    for i, c in enumerate(cosets):
        for t in c:
            where[t] = i
    action = tuple(tuple(where[G.product[g][min(c)]] for c in cosets) for g in range(G.order))
    return GSet(len(cosets), action)


def flatten(X) -> tuple:
    """Leaf parts of a space, unions expanded depth first."""
    if isinstance(X, DisjointUnion):
        out = []
        for p in X.parts:
            out.extend(flatten(p))
        return tuple(out)
    if isinstance(X, (Point, GSet, TrivialCircle)):
        return (X,)
    raise InvalidInput(f"unknown space type {type(X).__name__}")


# ---------------------------------------------------------------------------
# twists


@dataclass(frozen=True)
class Trivial:
    pass


@dataclass(frozen=True)
class GroupCocycle:
    alpha: Cocycle2


@dataclass(frozen=True)
class CircleHom:
    lam: HomTwist


TwistKind = Trivial | GroupCocycle | CircleHom


# ---------------------------------------------------------------------------
# instances and blocks


@dataclass(frozen=True, eq=False)
class FixedPointSet:
    """X^g: per leaf part, the sorted fixed points (None marks a circle part)."""

    element: int
    parts: tuple

    @property
    def size(self) -> int:
        return sum(len(p) for p in self.parts if p is not None)


@dataclass(frozen=True, eq=False)
class KBlock:
    element: int
    acting: frozenset
    ring: TwistedCharRing
    fixed: FixedPointSet
    labels: tuple[tuple, tuple]
    orbits: dict = field(repr=False)

    @cached_property
    def dims(self) -> tuple[int, int]:
        return len(self.labels[0]), len(self.labels[1])

    @cached_property
    def _index(self):
        return tuple({lab: i for i, lab in enumerate(ls)} for ls in self.labels)

    def index(self, degree: int, label) -> int:
        return self._index[degree][label]


@dataclass(frozen=True, eq=False)
class BlockMap:
    """A degree-preserving linear map between blocks, stored as sparse entries per degree."""

    source: KBlock
    target: KBlock
    entries: tuple[dict, dict]

    def __post_init__(self):
        for d in (0, 1):
            rows, cols = self.target.dims[d], self.source.dims[d]
            if any(not (0 <= i < rows and 0 <= j < cols) for i, j in self.entries[d]):
                raise InternalError("block map entry outside its blocks")

    @classmethod
    def from_matrices(cls, source: KBlock, target: KBlock, matrices) -> "BlockMap":
        entries = tuple({(i, j): v for i, r in enumerate(M.entries) for j, v in enumerate(r) if v}
                        for M in matrices)
        return cls(source, target, entries)

    @cached_property
    def matrices(self) -> tuple[QMatrix, QMatrix]:
        return tuple(QMatrix.from_sparse(self.target.dims[d], self.source.dims[d], self.entries[d])
                     for d in (0, 1))

    def rows(self, degree: int) -> list[dict]:
        """Sparse rows (target coordinate -> {source coordinate: value})."""
        out = [dict() for _ in range(self.target.dims[degree])]
        for (i, j), v in self.entries[degree].items():
            out[i][j] = v
        return out

    def __matmul__(self, other: "BlockMap") -> "BlockMap":
        if other.target is not self.source:
            raise ValueError("block maps do not compose")
        return BlockMap.from_matrices(other.source, self.target,
                                      [self.matrices[d] @ other.matrices[d] for d in (0, 1)])

    def equals(self, other: "BlockMap") -> bool:
        return all(self.matrices[d] == other.matrices[d] for d in (0, 1))


class Instance:
    """A group, a catalog space and a twist, with caches for blocks and maps."""

    def __init__(self, group: GroupTable, space, twist=None):
        twist = Trivial() if twist is None else twist
        self.group = group
        self.space = space
        self.twist = twist
        self.parts = flatten(space)
        for p in self.parts:
            if isinstance(p, GSet):
                if len(p.action) != group.order:
                    raise InvalidInput("G-set action does not match the group order")
        if isinstance(twist, GroupCocycle):
            if twist.alpha.group is not group:
                raise InvalidInput("cocycle is defined on a different group")
            alpha = twist.alpha
        elif isinstance(twist, CircleHom):
            if twist.lam.group is not group:
                raise InvalidInput("homomorphism is defined on a different group")
            if not all(isinstance(p, TrivialCircle) for p in self.parts):
                raise InvalidInput("a circle homomorphism twist needs every part to be a circle")
            alpha = trivial_cocycle(group)
        elif isinstance(twist, Trivial):
            alpha = trivial_cocycle(group)
        else:
            raise InvalidInput(f"unknown twist type {type(twist).__name__}")
        self.alpha = alpha
        self.algebra = twisted_algebra(group, alpha)
        self._fixed: dict[int, FixedPointSet] = {}
        self._blocks: dict = {}
        self._maps: dict = {}
        self._lam_perm: dict = {}

    @property
    def lam(self) -> HomTwist | None:
        return self.twist.lam if isinstance(self.twist, CircleHom) else None

    def fixed_points(self, g: int) -> FixedPointSet:
        hit = self._fixed.get(g)
        if hit is None:
            parts = []
            for p in self.parts:
                if isinstance(p, Point):
                    parts.append((0,))
                elif isinstance(p, GSet):
                    parts.append(tuple(x for x in range(p.points) if p.action[g][x] == x))
                else:
                    parts.append(None)
            hit = self._fixed[g] = FixedPointSet(g, tuple(parts))
        return hit

    def act(self, part: int, k: int, x: int) -> int:
        p = self.parts[part]
        return x if isinstance(p, Point) else p.action[k][x]

    def lambda_permutation(self, ring: TwistedCharRing) -> tuple[int, ...]:
        """Multiplication by lambda restricted to the ring's group, as a basis permutation."""
        hit = self._lam_perm.get(ring.subgroup)
        if hit is not None:
            return hit
        lam = self.lam
        L = self.algebra.level
        if lam is None:
            perm = tuple(range(ring.order))
        else:
            shift = {}
            for h in ring.elements:
                q = Fraction(lam.exp[h], lam.modulus) * L
                if q.denominator != 1:
                    raise InternalError("lambda value outside the algebra's field")
                shift[h] = int(q)
            out = []
            for j in range(ring.order):
                t = ring.match({h: ring.exps[j][h] + shift[h] for h in ring.elements})
                if t is None:
                    raise InternalError("lambda times a character is not a character")
                out.append(t)
            perm = tuple(out)
        self._lam_perm[ring.subgroup] = perm
        return perm

    def block(self, g: int, acting=None) -> KBlock:
        """K_S(X^g, P_g) for a cyclic subgroup S of <g> (default <g> itself)."""
        G = self.group
        acting = G.cyclic_subgroup(g) if acting is None else frozenset(acting)
        key = (g, acting)
        hit = self._blocks.get(key)
        if hit is not None:
            return hit
        if not acting <= G.cyclic_subgroup(g):
            raise InvalidInput("acting group must lie inside <g>")
        ring = self.algebra.ring(acting)
        fixed = self.fixed_points(g)
        deg0, deg1 = [], []
        orbits = {}
        for pi, pts in enumerate(fixed.parts):
            if pts is not None:
                for x in pts:
                    deg0.extend(("pt", pi, x, j) for j in range(ring.order))
            else:
                perm = self.lambda_permutation(ring)
                orbs = _perm_orbits(perm)
                orbits[pi] = orbs
                for o in orbs:
                    deg0.append(("S1", pi, o[0]))
                    deg1.append(("S1", pi, o[0]))
        blk = KBlock(g, acting, ring, fixed, (tuple(deg0), tuple(deg1)), orbits)
        self._blocks[key] = blk
        return blk

    # -- maps -----------------------------------------------------------------
    def _map(self, src: KBlock, tgt: KBlock, point_map, ring_matrix: QMatrix) -> BlockMap:
        """Block map from a ring-level matrix applied pointwise along ``point_map``."""
        cols = ring_matrix.sparse_columns
        entries0 = {}
        for c, lab in enumerate(src.labels[0]):
            if lab[0] != "pt":
                continue
            _, pi, x, j = lab
            y = point_map(pi, x)
            if y is None:
                continue
            for i, v in cols[j]:
                entries0[tgt.index(0, ("pt", pi, y, i)), c] = v
        entries1 = {}
        for pi in src.orbits:
            self._circle_entries(src, tgt, pi, ring_matrix, entries0, entries1)
        return BlockMap(src, tgt, (entries0, entries1))

    def _circle_entries(self, src, tgt, pi, M, entries0, entries1):
        sperm = self.lambda_permutation(src.ring)
        tperm = self.lambda_permutation(tgt.ring)
        # M must intertwine multiplication by lambda on both sides
        for j in range(src.ring.order):
            for i in range(tgt.ring.order):
                if M[tperm[i], sperm[j]] != M[i, j]:
                    raise InternalError("ring map does not commute with multiplication by lambda")
        t_orbit = {}
        for o in tgt.orbits[pi]:
            for j in o:
                t_orbit[j] = o[0]
        for o in src.orbits[pi]:
            c0 = src.index(0, ("S1", pi, o[0]))
            c1 = src.index(1, ("S1", pi, o[0]))
            # degree 0: image of the orbit sum, read off on orbit representatives
            img = [sum(M[i, j] for j in o) for i in range(tgt.ring.order)]
            for to in tgt.orbits[pi]:
                vals = {img[i] for i in to}
                if len(vals) != 1:
                    raise InternalError("image of an orbit sum is not lambda-invariant")
                v = vals.pop()
                if v:
                    entries0[tgt.index(0, ("S1", pi, to[0])), c0] = v
            # degree 1: class of a basis vector maps to the class of its image
            acc = {}
            for i in range(tgt.ring.order):
                v = M[i, o[0]]
                if v:
                    acc[t_orbit[i]] = acc.get(t_orbit[i], 0) + v
            for r, v in acc.items():
                if v:
                    entries1[tgt.index(1, ("S1", pi, r)), c1] = v

    def restrict_acting(self, y: int, source, target) -> BlockMap:
        """K_S(X^y) -> K_T(X^y) for cyclic T inside S inside <y>."""
        source, target = frozenset(source), frozenset(target)
        if not target <= source:
            raise InvalidInput("restriction target is not a subgroup of the source")
        key = ("res", y, source, target)
        hit = self._maps.get(key)
        if hit is None:
            src = self.block(y, source)
            tgt = self.block(y, target)
            M = restriction_matrix(src.ring, tgt.ring)
            hit = self._maps[key] = self._map(src, tgt, lambda pi, x: x, M)
        return hit

    def restrict_space(self, y: int, z: int, acting) -> BlockMap:
        """K_S(X^y) -> K_S(X^z) for y in <z>, so that X^z is a subspace of X^y."""
        G = self.group
        if y not in G.cyclic_subgroup(z):
            raise InvalidInput(f"element {y} is not a power of {z}")
        acting = frozenset(acting)
        key = ("space", y, z, acting)
        hit = self._maps.get(key)
        if hit is None:
            src = self.block(y, acting)
            tgt = self.block(z, acting)
            keep = [set(p) if p is not None else None for p in tgt.fixed.parts]
            M = QMatrix.identity(src.ring.order)
            hit = self._maps[key] = self._map(src, tgt, lambda pi, x: x if x in keep[pi] else None, M)
        return hit

    def transport(self, y: int, acting, k: int) -> BlockMap:
        """K_S(X^y) -> K_{kSk^-1}(X^{kyk^-1}): points move by x -> kx, characters by conjugation."""
        acting = frozenset(acting)
        key = ("act", y, acting, k)
        hit = self._maps.get(key)
        if hit is None:
            G = self.group
            src = self.block(y, acting)
            tgt = self.block(G.conj(k, y), frozenset(G.conj(k, h) for h in acting))
            M = conj_act_matrix(src.ring, k)
            hit = self._maps[key] = self._map(src, tgt, lambda pi, x: self.act(pi, k, x), M)
        return hit

    def group_restriction_map(self, g: int, h: int) -> BlockMap:
        """K_<g>(X^g) -> K_<h>(X^g) for h in <g>."""
        G = self.group
        if h not in G.cyclic_subgroup(g):
            raise InvalidInput(f"element {h} is not a power of {g}")
        return self.restrict_acting(g, G.cyclic_subgroup(g), G.cyclic_subgroup(h))

    def space_restriction_map(self, g: int, h: int) -> BlockMap:
        """K_<h>(X^h) -> K_<h>(X^g) for h in <g> (X^g is a subspace of X^h)."""
        G = self.group
        if h not in G.cyclic_subgroup(g):
            raise InvalidInput(f"element {h} is not a power of {g}")
        return self.restrict_space(h, g, G.cyclic_subgroup(h))

    def action_map(self, g: int, k: int) -> BlockMap:
        """V_g -> V_{kgk^-1}."""
        return self.transport(g, self.group.cyclic_subgroup(g), k)


def _perm_orbits(perm: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    seen = set()
    out = []
    for j in range(len(perm)):
        if j in seen:
            continue
        orb = [j]
        seen.add(j)
        t = perm[j]
        while t != j:
            orb.append(t)
            seen.add(t)
            t = perm[t]
        out.append(tuple(sorted(orb)))
    return tuple(out)


# ---------------------------------------------------------------------------
# module-level entry points


def fixed_points(inst: Instance, g: int) -> FixedPointSet:
    return inst.fixed_points(g)


def build_block(inst: Instance, g: int) -> KBlock:
    return inst.block(g)


def group_restriction_map(inst: Instance, g: int, h: int) -> BlockMap:
    return inst.group_restriction_map(g, h)


def space_restriction_map(inst: Instance, g: int, h: int) -> BlockMap:
    return inst.space_restriction_map(g, h)


def action_map(inst: Instance, g: int, k: int) -> BlockMap:
    return inst.action_map(g, k)


def circle_mv_oracle(C: GroupTable, lam: HomTwist) -> tuple[int, int]:
    """(dim ker, dim coker) of 1 - (multiplication by lambda) on R(C) (x) Q for a cyclic group C.

    Built from scratch: characters chi_j(g^a) = exp(2 pi i ja/m) as exponent
    vectors, multiplication by lambda located by comparing value vectors.
    """
    m = C.order
    if lam.group is not C:
        raise InvalidInput("homomorphism is defined on a different group")
    g = next((x for x in range(m) if len(C.powers(x)) == m), None)
    if g is None:
        raise InvalidInput("circle oracle needs a cyclic group")
    # lambda(g) = zeta_m^t
    q = Fraction(lam.exp[g], lam.modulus) * m
    if q.denominator != 1:
        raise InvalidInput("homomorphism value at the generator is not an m-th root of unity")
    t = int(q) % m
    chars = {tuple((j * a) % m for a in range(m)): j for j in range(m)}
    lam_vals = [(t * a) % m for a in range(m)]
    rows = [[0] * m for _ in range(m)]
    for j in range(m):
        prod = tuple(((j * a) + lam_vals[a]) % m for a in range(m))
        i = chars[prod]
        rows[i][j] += 1
    one_minus = [[(1 if i == j else 0) - rows[i][j] for j in range(m)] for i in range(m)]
    r = rank(one_minus)
    return m - r, m - r
