"""Exact arithmetic: residues, fractional parts, Howell forms over Z/N, rational rank."""

from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd


@dataclass(frozen=True)
class Residue:
    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be at least 2")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other):
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ValueError("residues with different moduli")
            return other.value
        return other

    def __add__(self, other):
        return Residue(self.value + self._coerce(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        return Residue(self.value - self._coerce(other), self.modulus)

    def __mul__(self, other):
        return Residue(self.value * self._coerce(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.modulus)

    def __int__(self):
        return self.value


@dataclass(frozen=True)
class ModMatrix:
    """Matrix over Z/N stored as a tuple of rows with entries in [0, N)."""

    modulus: int
    rows: tuple
    ncols: int

    @classmethod
    def from_rows(cls, rows, modulus, ncols=None):
        rows = tuple(tuple(int(x) % modulus for x in row) for row in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for an empty matrix")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        return cls(modulus, rows, ncols)

    @property
    def nrows(self):
        return len(self.rows)

    def column(self, j):
        return tuple(row[j] for row in self.rows)

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def permute_columns(self, perm):
        return ModMatrix(self.modulus, tuple(tuple(row[p] for p in perm) for row in self.rows), self.ncols)


def frac_part(q):
    q = Fraction(q)
    return q - floor(q)


def _xgcd(a, b):
    """Return (g, s, t) with g = s*a + t*b = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def _normalizing_unit(a, n):
    """A unit u mod n with u*a = gcd(a, n) (mod n)."""
    d = gcd(a, n)
    n1 = n // d
    u = pow((a // d) % n1, -1, n1) if n1 > 1 else 1
    while gcd(u, n) != 1:
        u += n1
    return u % n


def howell_form(M):
    """Howell normal form: the canonical generating matrix of the row span of M over Z/N.

    Two matrices of the same width have equal row spans iff their Howell forms agree.
    """
    n = M.modulus
    width = M.ncols
    rows = [list(r) for r in M.rows if any(r)]
    r = 0
    for c in range(width):
        if r >= len(rows):
            break
        for i in range(r + 1, len(rows)):
            b = rows[i][c]
            if not b:
                continue
            a = rows[r][c]
            g, s, t = _xgcd(a, b)
            u, v = -b // g, a // g
            top, bot = rows[r], rows[i]
            rows[r] = [(s * x + t * y) % n for x, y in zip(top, bot)]
            rows[i] = [(u * x + v * y) % n for x, y in zip(top, bot)]
        if not rows[r][c]:
            continue
        unit = _normalizing_unit(rows[r][c], n)
        rows[r] = [unit * x % n for x in rows[r]]
        p = rows[r][c]
        for k in range(r):
            q = rows[k][c] // p
            if q:
                rows[k] = [(x - q * y) % n for x, y in zip(rows[k], rows[r])]
        # (n/p) * row has a zero pivot entry; it must stay in the span of later rows
        ann = [(n // p) * x % n for x in rows[r]]
        if any(ann):
            rows.append(ann)
        r += 1
    out = tuple(tuple(row) for row in rows[:r] if any(row))
    return ModMatrix(n, out, width)


def _integer_rows(M):
    out = []
    for row in M:
        row = [Fraction(x) for x in row]
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def rank_exact(M):
    """Rank over Q by fraction-free (Bareiss) elimination."""
    A = _integer_rows(M)
    if not A:
        return 0
    nrows, ncols = len(A), len(A[0])
    prev = 1
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        for i in range(r + 1, nrows):
            f = A[i][c]
            row = A[i]
            for j in range(c + 1, ncols):
                row[j] = (p * row[j] - f * A[r][j]) // prev
            row[c] = 0
        prev = p
        r += 1
        if r == nrows:
            break
    return r
