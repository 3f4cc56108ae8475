"""Root-of-unity valued group cochains, stored as integer exponents mod N.

A value ``exp`` at modulus ``N`` stands for ``exp(2 pi i exp / N)``.  All 2-cocycles
are normalized.  The twisted group algebra convention throughout the package is
``u_g u_h = alpha(g, h) u_{gh}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator, Sequence

from .errors import CocycleError, InternalError
from .groups import GroupTable


@dataclass(frozen=True, eq=False)
class Cochain1:
    group: GroupTable
    modulus: int
    exp: tuple[int, ...]

    def __call__(self, g: int) -> int:
        return self.exp[g]

    def rescale(self, modulus: int) -> "Cochain1":
        if modulus % self.modulus:
            raise ValueError(f"{modulus} is not a multiple of {self.modulus}")
        f = modulus // self.modulus
        return Cochain1(self.group, modulus, tuple(e * f % modulus for e in self.exp))


@dataclass(frozen=True, eq=False)
class Cocycle2:
    group: GroupTable
    modulus: int
    exp: tuple[tuple[int, ...], ...]

    def __call__(self, g: int, h: int) -> int:
        return self.exp[g][h]

    def __eq__(self, other):
        if not isinstance(other, Cocycle2) or other.group is not self.group:
            return NotImplemented
        m = self.modulus * other.modulus // gcd(self.modulus, other.modulus)
        return self.rescale(m).exp == other.rescale(m).exp

    def __hash__(self):
        return hash((id(self.group), self.rescale_key()))

    def rescale_key(self):
        # canonical form: smallest modulus representing the same values
        g = self.modulus
        for row in self.exp:
            for e in row:
                g = gcd(g, e)
        m = self.modulus // g
        return m, tuple(tuple(e // g for e in row) for row in self.exp)

    def rescale(self, modulus: int) -> "Cocycle2":
        if modulus == self.modulus:
            return self
        if modulus % self.modulus:
            raise ValueError(f"{modulus} is not a multiple of {self.modulus}")
        f = modulus // self.modulus
        return Cocycle2(self.group, modulus, tuple(tuple(e * f for e in row) for row in self.exp))

    def is_trivial(self) -> bool:
        return not any(any(row) for row in self.exp)


@dataclass(frozen=True, eq=False)
class HomTwist:
    """A homomorphism G -> mu_N."""

    group: GroupTable
    modulus: int
    exp: tuple[int, ...]

    def __call__(self, g: int) -> int:
        return self.exp[g]

    def is_trivial(self) -> bool:
        return not any(self.exp)


def trivial_cocycle(G: GroupTable, modulus: int = 1) -> Cocycle2:
    n = G.order
    return Cocycle2(G, modulus, tuple((0,) * n for _ in range(n)))


def trivial_hom(G: GroupTable, modulus: int = 1) -> HomTwist:
    return HomTwist(G, modulus, (0,) * G.order)


def check_cocycle(G: GroupTable, modulus: int, exponents: Sequence[Sequence[int]],
                  normalize: bool = True) -> Cocycle2:
    """Validate the cocycle identity; raises CocycleError naming the first bad triple.

    A non-normalized cocycle is shifted by a constant coboundary when ``normalize``.
    """
    n = G.order
    if modulus < 1:
        raise CocycleError("modulus must be positive")
    if len(exponents) != n or any(len(r) != n for r in exponents):
        raise CocycleError(f"cocycle table must be {n}x{n}")
    N = modulus
    a = [[int(x) % N for x in row] for row in exponents]
    P = G.product
    for g in range(n):
        ag = a[g]
        for h in range(n):
            gh = P[g][h]
            agh, ah = a[gh], a[h]
            for k in range(n):
                if (ag[h] + agh[k] - ah[k] - ag[P[h][k]]) % N:
                    raise CocycleError(
                        f"cocycle identity fails at (g, h, k) = ({g}, {h}, {k})", where=(g, h, k))
    c = a[0][0]
    if c:
        if not normalize:
            raise CocycleError("cocycle is not normalized", where=(0, 0, 0))
        a = [[(x - c) % N for x in row] for row in a]
    return Cocycle2(G, N, tuple(tuple(row) for row in a))


def check_hom(G: GroupTable, modulus: int, exponents: Sequence[int]) -> HomTwist:
    n = G.order
    if modulus < 1:
        raise CocycleError("modulus must be positive")
    if len(exponents) != n:
        raise CocycleError(f"homomorphism needs {n} exponents")
    e = [int(x) % modulus for x in exponents]
    for g in range(n):
        for h in range(n):
            if (e[g] + e[h] - e[G.product[g][h]]) % modulus:
                raise CocycleError(f"homomorphism law fails at (g, h) = ({g}, {h})", where=(g, h))
    return HomTwist(G, modulus, tuple(e))


def coboundary(beta: Cochain1) -> Cocycle2:
    """(delta beta)(g, h) = beta(g) + beta(h) - beta(gh)."""
    G, N, b = beta.group, beta.modulus, beta.exp
    P = G.product
    n = G.order
    return Cocycle2(G, N, tuple(tuple((b[g] + b[h] - b[P[g][h]]) % N for h in range(n)) for g in range(n)))


def restrict(alpha: Cocycle2, H: Iterable[int]) -> Cocycle2:
    """Restriction to a subgroup, reindexed to the subgroup's own table.

    Local index i corresponds to the i-th smallest ambient index in ``H``.
    """
    from .errors import GroupError
    try:
        sub, elems = alpha.group.subgroup_table(H)
    except GroupError as exc:
        raise CocycleError(str(exc)) from None
    return Cocycle2(sub, alpha.modulus, tuple(tuple(alpha.exp[a][b] for b in elems) for a in elems))


def trivialize_on_cyclic(alpha: Cocycle2) -> Cochain1:
    """A 1-cochain beta on a cyclic group with delta(beta) = alpha.

    Runs beta(g^(a+1)) = beta(g^a) + beta(g) - alpha(g^a, g) from the lowest-index
    generator g.  Closing the recursion at g^m = e forces m*beta(g) = S with
    S = sum_{0<i<m} alpha(g^i, g); when that has no solution mod N the modulus is
    enlarged to m*N.  beta(g) is the smallest nonnegative solution.
    """
    G = alpha.group
    m = G.order
    if m == 1:
        return Cochain1(G, alpha.modulus, (0,))
    g = G.generator(range(m))
    pw = G.powers(g)
    N = alpha.modulus
    S = sum(alpha.exp[pw[i]][g] for i in range(1, m)) % N
    if S % gcd(m, N) == 0:
        M, a = N, alpha
        b = next(x for x in range(N) if (m * x - S) % N == 0)
    else:
        M = m * N
        a = alpha.rescale(M)
        b = S % N
    beta = [0] * m
    cur = 0
    for i in range(1, m):
        # beta(g^i) = i*b - sum_{0<j<i} alpha(g^j, g)
        cur = (cur + b - (a.exp[pw[i - 1]][g] if i > 1 else 0)) % M
        beta[pw[i]] = cur
    out = Cochain1(G, M, tuple(beta))
    if coboundary(out).exp != a.exp:
        raise InternalError("trivializer recursion failed to reproduce the cocycle")
    return out


def conjugation_phase(alpha: Cocycle2, k: int, h: int) -> tuple[int, int]:
    """(k h k^-1, c) with u_k u_h u_k^-1 = zeta_N^c u_{k h k^-1}.

    c = alpha(k, h) - alpha(k h k^-1, k) in exponents.
    """
    G = alpha.group
    t = G.conj(k, h)
    return t, (alpha.exp[k][h] - alpha.exp[t][k]) % alpha.modulus


def commutator_character(alpha: Cocycle2, g: int) -> dict[int, int]:
    """h -> alpha(h, g) - alpha(g, h) on the centralizer of g."""
    G = alpha.group
    N = alpha.modulus
    cent = G.conjugacy.centralizer[g]
    chi = {h: (alpha.exp[h][g] - alpha.exp[g][h]) % N for h in sorted(cent)}
    for a in cent:
        for b in cent:
            if (chi[a] + chi[b] - chi[G.product[a][b]]) % N:
                raise InternalError(f"L-character of {g} is not multiplicative")
    return chi


def is_alpha_regular(alpha: Cocycle2, g: int) -> bool:
    return not any(commutator_character(alpha, g).values())


def alpha_regular_classes(alpha: Cocycle2) -> list[int]:
    """Representatives of the conjugacy classes whose elements are alpha-regular."""
    conj = alpha.group.conjugacy
    return [r for r in conj.representative if is_alpha_regular(alpha, r)]


# ---------------------------------------------------------------------------
# enumeration of all normalized cocycles with values in mu_p


def _nullspace_mod_p(rows: list[dict[int, int]], ncols: int, p: int) -> list[list[int]]:
    """Basis of the solutions mod p of sparse rows {column: coefficient}."""
    # incremental elimination: most rows reduce to zero against earlier pivots
    pivot_rows: dict[int, dict[int, int]] = {}
    for row in rows:
        r = {c: v % p for c, v in row.items() if v % p}
        while r:
            lead = min(r)
            pr = pivot_rows.get(lead)
            if pr is None:
                inv = pow(r[lead], -1, p)
                pivot_rows[lead] = {c: v * inv % p for c, v in r.items()}
                break
            f = r[lead]
            for c, v in pr.items():
                w = (r.get(c, 0) - f * v) % p
                if w:
                    r[c] = w
                else:
                    r.pop(c, None)
    # back substitution to reduced form
    for c in sorted(pivot_rows, reverse=True):
        pr = pivot_rows[c]
        for d, other in pivot_rows.items():
            if d < c and other.get(c):
                f = other[c]
                for k, v in pr.items():
                    w = (other.get(k, 0) - f * v) % p
                    if w:
                        other[k] = w
                    else:
                        other.pop(k, None)
    basis = []
    for f in range(ncols):
        if f in pivot_rows:
            continue
        v = [0] * ncols
        v[f] = 1
        for c, pr in pivot_rows.items():
            if pr.get(f):
                v[c] = -pr[f] % p
        basis.append(v)
    return basis


def enumerate_cocycles(G: GroupTable, p: int = 2) -> Iterator[Cocycle2]:
    """Every normalized 2-cocycle G x G -> mu_p (p prime), in a fixed order."""
    n = G.order
    P = G.product
    var = {}
    for g in range(1, n):
        for h in range(1, n):
            var[g, h] = len(var)
    rows = []
    seen = set()
    for g in range(1, n):
        for h in range(1, n):
            for k in range(1, n):
                row = {}
                for (a, b), s in (((g, h), 1), ((P[g][h], k), 1), ((h, k), -1), ((g, P[h][k]), -1)):
                    if a and b:
                        i = var[a, b]
                        row[i] = row.get(i, 0) + s
                key = tuple(sorted((i, v % p) for i, v in row.items() if v % p))
                if key and key not in seen:
                    seen.add(key)
                    rows.append(dict(key))
    basis = _nullspace_mod_p(rows, len(var), p)
    sparse = [[(i, y) for i, y in enumerate(b) if y] for b in basis]
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        vec = [0] * len(var)
        for c, b in zip(coeffs, sparse):
            if c:
                for i, y in b:
                    vec[i] = (vec[i] + c * y) % p
        table = [[0] * n for _ in range(n)]
        for (g, h), i in var.items():
            table[g][h] = vec[i]
        yield Cocycle2(G, p, tuple(tuple(r) for r in table))
