"""Finite groups given by explicit multiplication tables.

Elements are dense indices ``0..n-1`` with ``0`` the identity.  Besides the
table itself a group carries its cyclic subgroups ordered by inclusion and its
conjugacy data, which is everything the decomposition needs.
"""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import GroupError

DEFAULT_MAX_ORDER = 1024
_FULL_ASSOC_LIMIT = 64


def max_group_order() -> int:
    raw = os.environ.get("KTQ_MAX_GROUP_ORDER")
    if raw is None:
        return DEFAULT_MAX_ORDER
    try:
        return int(raw)
    except ValueError:
        raise GroupError(f"KTQ_MAX_GROUP_ORDER must be an integer, got {raw!r}") from None


@dataclass(eq=False)
class GroupTable:
    """A validated finite group.  Immutable after construction."""

    product: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]
    name: str = "G"
    inverse: tuple[int, ...] = field(init=False)

    identity = 0

    def __post_init__(self):
        n = len(self.product)
        inv = [None] * n
        for g in range(n):
            for h in range(n):
                if self.product[g][h] == 0:
                    inv[g] = h
                    break
        self.inverse = tuple(inv)

    @property
    def order(self) -> int:
        return len(self.product)

    def __len__(self):
        return len(self.product)

    def __repr__(self):
        return f"GroupTable({self.name!r}, order={self.order})"

    def mul(self, g: int, h: int) -> int:
        return self.product[g][h]

    def inv(self, g: int) -> int:
        return self.inverse[g]

    def power(self, g: int, k: int) -> int:
        pw = self.powers(g)
        return pw[k % len(pw)]

    def conj(self, k: int, g: int) -> int:
        """k g k^-1"""
        return self.product[self.product[k][g]][self.inverse[k]]

    def element_order(self, g: int) -> int:
        return self._orders[g]

    @cached_property
    def _orders(self) -> tuple[int, ...]:
        out = []
        for g in range(self.order):
            k, x = 1, g
            while x != 0:
                x = self.product[x][g]
                k += 1
            out.append(k)
        return tuple(out)

    @cached_property
    def exponent(self) -> int:
        from math import lcm
        return lcm(*self._orders)

    def is_abelian(self) -> bool:
        p = self.product
        return all(p[g][h] == p[h][g] for g in range(self.order) for h in range(g))

    def powers(self, g: int) -> tuple[int, ...]:
        """(e, g, g^2, ..., g^(m-1))"""
        return self._power_lists[g]

    @cached_property
    def _power_lists(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for g in range(self.order):
            pw, x = [0], g
            while x != 0:
                pw.append(x)
                x = self.product[x][g]
            out.append(tuple(pw))
        return tuple(out)

    def cyclic_subgroup(self, g: int) -> frozenset[int]:
        return self._cyclic_subgroups[g]

    @cached_property
    def _cyclic_subgroups(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(p) for p in self._power_lists)

    def generator(self, subgroup: Iterable[int]) -> int:
        """Lowest-index generator of a cyclic subgroup."""
        sub = frozenset(subgroup)
        for g in sorted(sub):
            if len(self.powers(g)) == len(sub):
                return g
        raise GroupError("subgroup is not cyclic")

    def is_subgroup(self, elements: Iterable[int]) -> bool:
        s = frozenset(elements)
        return 0 in s and all(self.product[a][b] in s for a in s for b in s)

    def closure(self, elements: Iterable[int]) -> frozenset[int]:
        out = {0}
        frontier = set(elements)
        while frontier:
            out |= frontier
            frontier = {self.product[a][b] for a in out for b in out} - out
        return frozenset(out)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise GroupError(f"no element labelled {label!r} in {self.name}") from None

    def subgroup_table(self, elements: Iterable[int]) -> tuple["GroupTable", tuple[int, ...]]:
        """The subgroup on ``elements`` as its own table, plus local -> ambient indices."""
        elems = tuple(sorted(set(elements)))
        if not self.is_subgroup(elems):
            raise GroupError("element set is not closed under the product")
        pos = {g: i for i, g in enumerate(elems)}
        table = tuple(tuple(pos[self.product[a][b]] for b in elems) for a in elems)
        sub = GroupTable(table, tuple(self.labels[g] for g in elems), name=f"{self.name}|{len(elems)}")
        return sub, elems

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Greedy generating set: lowest-index elements outside the span so far."""
        gens, span = [], frozenset([0])
        for g in range(self.order):
            if g not in span:
                gens.append(g)
                span = self.closure(span | {g})
        return tuple(gens)

    @cached_property
    def conjugacy(self) -> "ConjugacyData":
        return conjugacy(self)

    @cached_property
    def poset(self) -> "CyclicPoset":
        return cyclic_poset(self)


def _validate_table(table: Sequence[Sequence[int]], check_assoc: bool = True):
    n = len(table)
    if n == 0:
        raise GroupError("empty multiplication table")
    rows = tuple(tuple(int(x) for x in r) for r in table)
    full = set(range(n))
    for i, r in enumerate(rows):
        if len(r) != n or set(r) != full:
            raise GroupError(f"row {i} is not a permutation of 0..{n - 1}")
    for j in range(n):
        if {rows[i][j] for i in range(n)} != full:
            raise GroupError(f"column {j} is not a permutation of 0..{n - 1}")
    if rows[0] != tuple(range(n)) or any(rows[i][0] != i for i in range(n)):
        raise GroupError("element 0 must be the identity")
    if check_assoc:
        if n <= _FULL_ASSOC_LIMIT:
            triples = itertools.product(range(n), repeat=3)
        else:
            rng = random.Random(n)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(20000))
        for a, b, c in triples:
            if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
                raise GroupError(f"product is not associative at ({a}, {b}, {c})")
    return rows


def from_mult_table(table: Sequence[Sequence[int]], labels: Sequence[str] | None = None,
                    name: str = "G") -> GroupTable:
    rows = _validate_table(table)
    if len(rows) > max_group_order():
        raise GroupError(f"group order {len(rows)} exceeds limit {max_group_order()}")
    if labels is None:
        labels = ["e"] + [f"g{i}" for i in range(1, len(rows))]
    if len(labels) != len(rows) or len(set(labels)) != len(rows):
        raise GroupError("labels must be distinct, one per element")
    return GroupTable(rows, tuple(labels), name=name)


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # (p q)(x) = p(q(x))
    return tuple(p[x] for x in q)


def from_permutations(generators: Sequence[Sequence[int]], degree: int | None = None,
                      name: str = "G", limit: int | None = None) -> GroupTable:
    """Close a set of permutations (image lists on 0..degree-1) under composition."""
    gens = [tuple(int(x) for x in g) for g in generators]
    if degree is None:
        degree = len(gens[0]) if gens else 1
    for g in gens:
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise GroupError(f"{list(g)} is not a permutation of 0..{degree - 1}")
    limit = max_group_order() if limit is None else limit
    ident = tuple(range(degree))
    elems = [ident]
    index = {ident: 0}
    i = 0
    while i < len(elems):
        x = elems[i]
        for g in gens:
            y = _compose(g, x)
            if y not in index:
                if len(elems) >= limit:
                    raise GroupError(f"generated group exceeds order limit {limit}")
                index[y] = len(elems)
                elems.append(y)
        i += 1
    table = tuple(tuple(index[_compose(a, b)] for b in elems) for a in elems)
    labels = ["e"] + [_cycle_string(p) for p in elems[1:]]
    return GroupTable(_validate_table(table, check_assoc=False), tuple(labels), name=name)


def _cycle_string(p: Sequence[int]) -> str:
    seen, out = set(), []
    for s in range(len(p)):
        if s in seen or p[s] == s:
            continue
        cyc, x = [], s
        while x not in seen:
            seen.add(x)
            cyc.append(x + 1)
            x = p[x]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "e"


def parse_cycles(text: str, degree: int) -> tuple[int, ...]:
    """'(1 2 3)(4 5)' with 1-based points -> image list on 0..degree-1."""
    img = list(range(degree))
    for chunk in text.replace(")", "(").split("("):
        pts = [int(t) - 1 for t in chunk.replace(",", " ").split()]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            if not 0 <= a < degree:
                raise GroupError(f"point {a + 1} outside 1..{degree}")
            img[a] = b
    if sorted(img) != list(range(degree)):
        raise GroupError(f"{text!r} is not a permutation")
    return tuple(img)


# ---------------------------------------------------------------------------
# named groups


def trivial() -> GroupTable:
    return GroupTable(((0,),), ("e",), name="1")


def cyclic(n: int) -> GroupTable:
    if n < 1:
        raise GroupError("cyclic group order must be positive")
    labels = ["e", "g"] + [f"g{k}" for k in range(2, n)]
    return GroupTable(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)),
                      tuple(labels[:n]), name=f"Z{n}")


def direct_product(A: GroupTable, B: GroupTable, name: str | None = None) -> GroupTable:
    """Element (a, b) has index a + |A| b."""
    na, nb = A.order, B.order
    table = tuple(
        tuple(A.product[a1][a2] + na * B.product[b1][b2] for b2 in range(nb) for a2 in range(na))
        for b1 in range(nb) for a1 in range(na))
    labels = tuple(f"({_coord(A, a)},{_coord(B, b)})" for b in range(nb) for a in range(na))
    return GroupTable(table, labels, name=name or f"{A.name}x{B.name}")


def _coord(G: GroupTable, x: int) -> str:
    label = G.labels[x]
    if label.startswith("(") and label.endswith(")"):
        return label[1:-1]
    if G.name.startswith("Z") and G.name[1:].isdigit():
        return str(x)
    return label


def klein() -> GroupTable:
    """Z2 x Z2 with (a, b) at index a + 2b: (0,0), (1,0), (0,1), (1,1)."""
    return direct_product(cyclic(2), cyclic(2), name="Z2xZ2")


def dihedral(order: int) -> GroupTable:
    """Dihedral group of the given order, r^m = s^2 = e, srs = r^-1; r^a s^b at index a + m b."""
    if order < 2 or order % 2:
        raise GroupError("dihedral group order must be even and >= 2")
    m = order // 2

    def mul(x, y):
        a, b = x % m, x // m
        c, d = y % m, y // m
        return ((a + (c if b == 0 else -c)) % m) + m * ((b + d) % 2)

    def label(x):
        a, b = x % m, x // m
        r = "" if a == 0 else ("r" if a == 1 else f"r{a}")
        s = "s" if b else ""
        return (r + s) or "e"

    table = tuple(tuple(mul(x, y) for y in range(order)) for x in range(order))
    return GroupTable(table, tuple(label(x) for x in range(order)), name=f"D{order}")


def symmetric(n: int) -> GroupTable:
    if n < 1:
        raise GroupError("symmetric group degree must be positive")
    if n == 1:
        return trivial()
    gens = [tuple([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(tuple(list(range(1, n)) + [0]))
    return from_permutations(gens, n, name=f"S{n}")


def quaternion() -> GroupTable:
    """Q8 = {+-1, +-i, +-j, +-k}."""
    names = ["1", "i", "j", "k"]
    base = {("1", x): (1, x) for x in names}
    base.update({(x, "1"): (1, x) for x in names})
    base.update({("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
                 ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                 ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})
    elems = [(s, x) for s in (1, -1) for x in names]
    elems = [elems[0], elems[4]] + [e for e in elems if e not in (elems[0], elems[4])]
    index = {e: i for i, e in enumerate(elems)}

    def mul(p, q):
        sign, x = base[(p[1], q[1])]
        return index[(p[0] * q[0] * sign, x)]

    table = tuple(tuple(mul(p, q) for q in elems) for p in elems)
    labels = tuple(("" if s == 1 else "-") + x if x != "1" else ("e" if s == 1 else "-1") for s, x in elems)
    return GroupTable(_validate_table(table), labels, name="Q8")


def named(key: str) -> GroupTable:
    """'klein', 'cyclic:n', 'dihedral:2m', 'symmetric:n', 'quaternion', 'trivial'."""
    kind, _, arg = key.partition(":")
    try:
        if kind == "klein":
            return klein()
        if kind == "trivial":
            return trivial()
        if kind == "quaternion":
            return quaternion()
        if kind == "cyclic":
            return cyclic(int(arg))
        if kind == "dihedral":
            return dihedral(int(arg))
        if kind == "symmetric":
            return symmetric(int(arg))
    except ValueError:
        raise GroupError(f"bad group parameter in {key!r}") from None
    raise GroupError(f"unknown named group {key!r}")


def small_groups(max_order: int = 8) -> list[GroupTable]:
    """One representative of every isomorphism type of order <= max_order (max 8)."""
    if max_order > 8:
        raise ValueError("catalog only covers orders up to 8")
    out = [trivial()]
    for n in range(2, max_order + 1):
        out.append(cyclic(n))
        if n == 4:
            out.append(klein())
        if n == 6:
            out.append(symmetric(3))
        if n == 8:
            out.append(direct_product(cyclic(2), cyclic(4), name="Z2xZ4"))
            out.append(direct_product(klein(), cyclic(2), name="Z2xZ2xZ2"))
            out.append(dihedral(8))
            out.append(quaternion())
    return out


# ---------------------------------------------------------------------------
# derived structure


@dataclass(frozen=True)
class CyclicPoset:
    """Cyclic subgroups ordered by inclusion."""

    subgroups: tuple[frozenset[int], ...]
    generator_of: tuple[int, ...]
    leq: frozenset[tuple[int, int]]

    def id_of(self, subgroup: Iterable[int]) -> int:
        return self.subgroups.index(frozenset(subgroup))

    def below(self, t: int, strict: bool = True) -> list[int]:
        return [s for s in range(len(self.subgroups)) if (s, t) in self.leq and (s != t or not strict)]


def cyclic_poset(G: GroupTable) -> CyclicPoset:
    subs = sorted({G.cyclic_subgroup(g) for g in range(G.order)}, key=lambda s: (len(s), sorted(s)))
    ids = {s: i for i, s in enumerate(subs)}
    generator_of = tuple(ids[G.cyclic_subgroup(g)] for g in range(G.order))
    leq = frozenset((i, j) for i, a in enumerate(subs) for j, b in enumerate(subs) if a <= b)
    return CyclicPoset(tuple(subs), generator_of, leq)


@dataclass(frozen=True)
class ConjugacyData:
    classes: tuple[tuple[int, ...], ...]
    representative: tuple[int, ...]
    class_of: tuple[int, ...]
    centralizer: tuple[frozenset[int], ...]


def conjugacy(G: GroupTable) -> ConjugacyData:
    n = G.order
    class_of = [-1] * n
    classes = []
    for g in range(n):
        if class_of[g] >= 0:
            continue
        cls = sorted({G.conj(k, g) for k in range(n)})
        for x in cls:
            class_of[x] = len(classes)
        classes.append(tuple(cls))
    cent = tuple(frozenset(k for k in range(n) if G.product[k][g] == G.product[g][k]) for g in range(n))
    return ConjugacyData(tuple(classes), tuple(c[0] for c in classes), tuple(class_of), cent)
