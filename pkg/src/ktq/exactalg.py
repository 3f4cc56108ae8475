"""Exact arithmetic over Q and cyclotomic fields, and exact linear algebra over Q.

Rationals are :class:`fractions.Fraction`.  Cyclotomic numbers are stored in the
power basis of ``Q[x]/Phi_N(x)``, so two values of the same level are equal
exactly when their coordinates agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from typing import Iterable, Mapping, Sequence

Rational = Fraction


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


# ---------------------------------------------------------------------------
# integer / rational polynomials, coefficient lists low degree first


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    """Division with remainder; exact integer arithmetic whenever ``b`` is monic."""
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead = b[-1]
    rem = list(a)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    for shift in range(len(a) - len(b), -1, -1):
        coeff = rem[shift + len(b) - 1]
        if coeff == 0:
            continue
        q = coeff // lead if lead in (1, -1) and isinstance(coeff, int) else Fraction(coeff) / lead
        quot[shift] = q
        for i, y in enumerate(b):
            rem[shift + i] -= q * y
    return _trim(quot), _trim(rem)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Phi_n as integer coefficients, low degree first.

    Computed as (x^n - 1) divided exactly by Phi_d for all proper divisors d.
    """
    if n < 1:
        raise ValueError("cyclotomic polynomial needs n >= 1")
    num = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        num, rem = poly_divmod(num, cyclotomic_polynomial(d))
        assert not rem
    return tuple(num)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Coordinates of zeta_n^i, i = 0..n-1, in the power basis mod Phi_n."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by x and reduce with the monic Phi_n
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] -= top * phi[i]
    return tuple(rows)


@lru_cache(maxsize=None)
def _trace_vector(n: int) -> tuple[Fraction, ...]:
    """Normalized traces Tr(zeta^i)/phi(n) of the power basis (lift invariant)."""
    phi = euler_phi(n)
    return tuple(_raw_trace(n, i) / phi for i in range(phi))


def _raw_trace(n: int, i: int) -> Fraction:
    # Ramanujan sum c_n(i) = sum over units a of zeta^(a i), a rational integer.
    g = gcd(i, n) if i else n
    m = n // g
    return Fraction(_mobius(m) * euler_phi(n) // euler_phi(m))


def _mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def _as_int(q):
    """An integral Fraction as int, for cheaper arithmetic; anything else unchanged."""
    if q.__class__ is Fraction and q.denominator == 1:
        return q.numerator
    return q


def reduce_exponents(level: int, terms: Mapping[int, object]) -> list:
    """Power-basis coordinates of sum coeff * zeta_level^exp (ints stay ints)."""
    table = _power_table(level)
    acc = [0] * len(table[0])
    for e, c in terms.items():
        if c:
            for k, v in enumerate(table[e % level]):
                if v:
                    acc[k] += c * v
    return acc


class Cyclotomic:
    """An element of Q(zeta_N) in the power basis 1, zeta, ..., zeta^(phi(N)-1)."""

    __slots__ = ("level", "coeffs")

    def __init__(self, level: int, coeffs: Iterable):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if level < 1:
            raise ValueError("level must be positive")
        if len(coeffs) != euler_phi(level):
            raise ValueError(f"level {level} needs {euler_phi(level)} coordinates, got {len(coeffs)}")
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("Cyclotomic is immutable")

    # constructors --------------------------------------------------------
    @classmethod
    def rational(cls, q, level: int = 1) -> "Cyclotomic":
        deg = euler_phi(level)
        return cls(level, [q] + [0] * (deg - 1))

    @classmethod
    def from_exponents(cls, level: int, terms: Mapping[int, object] | Iterable[int]) -> "Cyclotomic":
        """sum of coeff * zeta_level^exp; ``terms`` is {exp: coeff} or a list of exponents."""
        if not isinstance(terms, Mapping):
            counts: dict[int, object] = {}
            for e in terms:
                counts[e] = counts.get(e, 0) + 1
            terms = counts
        return cls(level, reduce_exponents(level, terms))

    # structure -------------------------------------------------------------
    def lift(self, level: int) -> "Cyclotomic":
        """Embed Q(zeta_N) into Q(zeta_level) for a multiple ``level`` of N."""
        if level == self.level:
            return self
        if level % self.level:
            raise ValueError(f"cannot lift level {self.level} to {level}")
        step = level // self.level
        return Cyclotomic.from_exponents(level, {i * step: c for i, c in enumerate(self.coeffs) if c})

    def _common(self, other):
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.rational(Fraction(other), 1)
        if self.level == other.level:
            return self, other
        level = lcm(self.level, other.level)
        return self.lift(level), other.lift(level)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def trace_normalized(self) -> Fraction:
        """Tr(x)/[Q(zeta_N):Q]; independent of the level used to represent x."""
        return sum((c * t for c, t in zip(self.coeffs, _trace_vector(self.level))), Fraction(0))

    def galois(self, a: int) -> "Cyclotomic":
        """Image under zeta -> zeta^a, gcd(a, N) = 1."""
        if gcd(a, self.level) != 1:
            raise ValueError("Galois exponent must be a unit")
        return Cyclotomic.from_exponents(self.level, {i * a: c for i, c in enumerate(self.coeffs) if c})

    def conjugate(self) -> "Cyclotomic":
        return self.galois(-1 % self.level if self.level > 1 else 1)

    # arithmetic ----------------------------------------------------------
    def __add__(self, other):
        a, b = self._common(other)
        return Cyclotomic(a.level, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.level, [-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-other if isinstance(other, Cyclotomic) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Cyclotomic):
            q = Fraction(other)
            return Cyclotomic(self.level, [x * q for x in self.coeffs])
        a, b = self._common(other)
        prod = poly_mul(a.coeffs, b.coeffs)
        return Cyclotomic.from_exponents(a.level, {i: c for i, c in enumerate(prod) if c})

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        s, _, g = poly_xgcd(list(self.coeffs), list(cyclotomic_polynomial(self.level)))
        # g is a nonzero constant since Phi_N is irreducible
        g0 = g[0]
        return Cyclotomic(self.level, _pad([c / g0 for c in s], euler_phi(self.level)))

    def __truediv__(self, other):
        if not isinstance(other, Cyclotomic):
            q = Fraction(other)
            return Cyclotomic(self.level, [x / q for x in self.coeffs])
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    # comparison ----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, (Cyclotomic, int, Fraction)):
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash(("cyc", self.trace_normalized()))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*z{self.level}^{i}")
        return " + ".join(terms) if terms else "0"


def _pad(seq, n):
    seq = list(seq)[:n]
    return seq + [Fraction(0)] * (n - len(seq))


def poly_xgcd(a, b):
    """Return (s, t, g) with s*a + t*b = g over Q."""
    a = [Fraction(x) for x in _trim(a)]
    b = [Fraction(x) for x in _trim(b)]
    r0, r1 = a, b
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, poly_mul(q, s1))
        t0, t1 = t1, _poly_sub(t0, poly_mul(q, t1))
    return s0, t0, r0


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def root_of_unity(n: int, k: int = 1) -> Cyclotomic:
    """zeta_n^k reduced into the power basis of Q(zeta_n)."""
    if n < 1:
        raise ValueError("root of unity order must be positive")
    return Cyclotomic(n, _power_table(n)[k % n])


# ---------------------------------------------------------------------------
# matrices over Q


def _norm(x):
    """Exact rational as int when integral, else Fraction."""
    if x.__class__ is int:
        return x
    if x.__class__ is not Fraction:
        x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


@dataclass(frozen=True)
class QMatrix:
    """Dense exact matrix; integral entries are stored as int, others as Fraction."""

    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry count inconsistent with dimensions")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "QMatrix":
        rows = [tuple(_norm(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return _identity(n)

    @classmethod
    def from_sparse(cls, rows: int, cols: int, entries: Mapping[tuple[int, int], object]) -> "QMatrix":
        dense = [[0] * cols for _ in range(rows)]
        for (i, j), v in entries.items():
            dense[i][j] += v
        return cls(rows, cols, tuple(tuple(_norm(x) for x in r) for r in dense))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.entries)

    @property
    def T(self) -> "QMatrix":
        if not self.rows:
            return QMatrix(self.cols, 0, tuple(() for _ in range(self.cols)))
        return QMatrix(self.cols, self.rows, tuple(zip(*self.entries)))

    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
            rows_b = other._compact_rows
            out = []
            for r in self._compact_rows:
                acc = [0] * other.cols
                for k, a in r:
                    for j, b in rows_b[k]:
                        acc[j] += a * b
                out.append(tuple(_norm(x) for x in acc))
            return QMatrix(self.rows, other.cols, tuple(out))
        vec = [_as_int(v) for v in other]
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        out = []
        for r in self._compact_rows:
            acc = 0
            for j, a in r:
                b = vec[j]
                if b:
                    acc += a * b
            out.append(_norm(acc))
        return tuple(out)

    @cached_property
    def _compact_rows(self) -> tuple:
        return tuple(tuple((j, a) for j, a in enumerate(r) if a) for r in self.entries)

    def __add__(self, other: "QMatrix") -> "QMatrix":
        self._check_same(other)
        return QMatrix(self.rows, self.cols, tuple(
            tuple(_norm(a + b) for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        self._check_same(other)
        return QMatrix(self.rows, self.cols, tuple(
            tuple(_norm(a - b) for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def scale(self, q) -> "QMatrix":
        q = _norm(q)
        return QMatrix(self.rows, self.cols, tuple(tuple(_norm(a * q) for a in r) for r in self.entries))

    def _check_same(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self.entries for x in r)

    def is_permutation(self) -> bool:
        if self.rows != self.cols:
            return False
        ones = [[j for j, x in enumerate(r) if x] for r in self.entries]
        if any(len(o) != 1 or self.entries[i][o[0]] != 1 for i, o in enumerate(ones)):
            return False
        return sorted(o[0] for o in ones) == list(range(self.cols))

    @cached_property
    def sparse_columns(self) -> tuple[tuple[tuple[int, object], ...], ...]:
        """Per column, the nonzero (row, value) pairs; integral values as int."""
        return tuple(tuple((i, v) for i, v in enumerate(self.column(j)) if v) for j in range(self.cols))

    def sparse_rows(self) -> list[dict[int, Fraction]]:
        return [{j: x for j, x in enumerate(r) if x} for r in self.entries]




@lru_cache(maxsize=None)
def _identity(n: int) -> QMatrix:
    return QMatrix.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)


@dataclass(frozen=True)
class KernelBasis:
    """Canonical (reduced row echelon) basis of a subspace of Q^ambient_dim."""

    ambient_dim: int
    vectors: tuple[tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def contains(self, v: Sequence) -> bool:
        v = [Fraction(x) for x in v]
        for vec in self.vectors:
            lead = next(i for i, x in enumerate(vec) if x)
            c = v[lead]
            if c:
                v = [a - c * b for a, b in zip(v, vec)]
        return not any(v)

    def as_matrix(self) -> QMatrix:
        return QMatrix(self.dim, self.ambient_dim, self.vectors)


# ---------------------------------------------------------------------------
# elimination on sparse integer rows


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
    if g > 1:
        row = {k: v // g for k, v in row.items()}
    lead = row[min(row)]
    if lead < 0:
        row = {k: -v for k, v in row.items()}
    return row


def _integer_row(row) -> dict[int, int]:
    items = row.items() if isinstance(row, Mapping) else enumerate(row)
    ints = {}
    for j, x in items:
        if x:
            if x.__class__ is int:
                ints[j] = x
            elif x.__class__ is Fraction and x.denominator == 1:
                ints[j] = x.numerator
            else:
                break
    else:
        return ints
    items = row.items() if isinstance(row, Mapping) else enumerate(row)
    fr = {j: Fraction(x) for j, x in items if x}
    if not fr:
        return {}
    den = lcm(*(x.denominator for x in fr.values()))
    return {j: int(x * den) for j, x in fr.items()}


def echelon(rows: Iterable, ncols: int) -> list[tuple[int, dict[int, Fraction]]]:
    """Reduced row echelon form of the row space, as (pivot column, sparse row) pairs.

    Forward elimination is fraction-free: rows stay integral, are combined as
    ``p*r - a*pivot_row`` and divided by their content.  The pivot for a column
    is the candidate row with the largest absolute entry, ties broken by lowest
    row index.  Back substitution then normalizes over Q.
    """
    seen = set()
    active: list[dict[int, int]] = []
    for r in rows:
        r = _integer_row(r)
        if not r:
            continue
        if any(not 0 <= j < ncols for j in r):
            raise ValueError("row entry outside the column range")
        r = _primitive(r)
        key = tuple(sorted(r.items()))
        if key not in seen:
            seen.add(key)
            active.append(r)

    pivots: list[tuple[int, dict[int, int]]] = []
    for c in range(ncols):
        cand = [i for i, r in enumerate(active) if c in r]
        if not cand:
            continue
        best = max(cand, key=lambda i: (abs(active[i][c]), -i))
        prow = active[best]
        p = prow[c]
        if p < 0:
            prow = {k: -v for k, v in prow.items()}
            p = -p
        rest = []
        for i, r in enumerate(active):
            if i == best:
                continue
            a = r.get(c)
            if a:
                new = dict(r) if p == 1 else {k: p * v for k, v in r.items()}
                for k, v in prow.items():
                    nv = new.get(k, 0) - a * v
                    if nv:
                        new[k] = nv
                    else:
                        new.pop(k, None)
                if not new:
                    continue
                r = new if p == 1 else _primitive(new)
            rest.append(r)
        active = rest
        pivots.append((c, prow))

    # back substitution into reduced form, integral until the final division
    reduced_int: list[tuple[int, dict[int, int]]] = []
    for c, prow in reversed(pivots):
        row = prow
        for k, other in reduced_int:
            a = row.get(k)
            if a:
                q = other[k]
                row = {kk: q * vv for kk, vv in row.items()} if q != 1 else dict(row)
                for kk, vv in other.items():
                    nv = row.get(kk, 0) - a * vv
                    if nv:
                        row[kk] = nv
                    else:
                        row.pop(kk, None)
                row = _primitive(row)
        reduced_int.append((c, row))
    reduced: list[tuple[int, dict[int, Fraction]]] = []
    for c, row in reversed(reduced_int):
        p = row[c]
        reduced.append((c, {k: Fraction(v, p) for k, v in row.items()}))
    return reduced


def _as_rows(M) -> tuple[list, int]:
    if isinstance(M, QMatrix):
        return M.sparse_rows(), M.cols
    rows = [list(r) for r in M]
    return rows, (len(rows[0]) if rows else 0)


def rank(M, ncols: int | None = None) -> int:
    rows, cols = _as_rows(M)
    return len(echelon(rows, cols if ncols is None else ncols))


def kernel(M, ncols: int | None = None) -> KernelBasis:
    """Canonical basis of {v : Mv = 0}, pivot-ascending reduced echelon form.

    ``M`` is a :class:`QMatrix`, a dense list of rows, or (with ``ncols``) an
    iterable of sparse ``{column: value}`` rows.
    """
    if ncols is None:
        rows, ncols = _as_rows(M)
    else:
        rows = M
    ech = echelon(rows, ncols)
    pivot_cols = {c for c, _ in ech}
    vecs = []
    for f in range(ncols):
        if f in pivot_cols:
            continue
        v = {f: Fraction(1)}
        for c, row in ech:
            a = row.get(f)
            if a:
                v[c] = -a
        vecs.append(v)
    basis = echelon(vecs, ncols)
    zero = Fraction(0)
    dense = tuple(tuple(row.get(j, zero) for j in range(ncols)) for _, row in basis)
    return KernelBasis(ncols, dense)


def row_space(M, ncols: int | None = None) -> KernelBasis:
    """Canonical echelon basis of the row space (same container as :func:`kernel`)."""
    if ncols is None:
        rows, ncols = _as_rows(M)
    else:
        rows = M
    zero = Fraction(0)
    return KernelBasis(ncols, tuple(tuple(r.get(j, zero) for j in range(ncols)) for _, r in echelon(rows, ncols)))


def solve_consistent(M, b: Sequence) -> tuple[Fraction, ...] | None:
    """Some x with Mx = b, or None when the system has no solution.

    Shape problems raise ValueError, so "no solution" is never confused with bad input.
    """
    rows, cols = _as_rows(M)
    b = list(b)
    if len(b) != len(rows):
        raise ValueError(f"right-hand side has length {len(b)}, matrix has {len(rows)} rows")
    aug = []
    for r, bi in zip(rows, b):
        items = dict(r.items()) if isinstance(r, Mapping) else {j: x for j, x in enumerate(r) if x}
        if len(r) != cols and not isinstance(r, Mapping):
            raise ValueError("ragged matrix")
        if bi:
            items[cols] = bi
        aug.append(items)
    ech = echelon(aug, cols + 1)
    x = [Fraction(0)] * cols
    for c, row in ech:
        if c == cols:
            return None
        x[c] = row.get(cols, Fraction(0))
    return tuple(x)


def cyclotomic_rank(rows: Sequence[Sequence[Cyclotomic]]) -> int:
    """Rank of a matrix with entries in a cyclotomic field (plain Gaussian elimination)."""
    work = [list(r) for r in rows if any(not x.is_zero() for x in r)]
    if not work:
        return 0
    ncols = len(work[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(work)) if not work[i][c].is_zero()), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = work[r][c].inverse()
        pr = [x * inv for x in work[r]]
        work[r] = pr
        for i in range(r + 1, len(work)):
            a = work[i][c]
            if not a.is_zero():
                work[i] = [x - a * y for x, y in zip(work[i], pr)]
        r += 1
        if r == len(work):
            break
    return r
