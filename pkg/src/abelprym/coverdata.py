"""Abelian covers of P^1 given by a monodromy matrix over Z/N, and their Prym invariants.

The cover is w_i^N = prod_j (z - z_j)^{r_ij}; column j of the matrix is the local
monodromy l_j at z_j and the Galois group is the column span inside (Z/N)^m.

Characters are indexed by vectors n in (Z/N)^m; two vectors are the same character
iff n.A agrees. ``AbelianCoverDatum.characters`` fixes one representative per class
(elements of the Galois group itself whenever the dot product allows it).
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd

from .abgroup import (
    SubgroupSpan,
    add,
    character_representatives,
    element_order,
    pairing,
    span,
)
from .errors import (
    ColumnSumNonzero,
    InconsistentGenus,
    InputError,
    NotASubgroup,
    ParseError,
    TooFewPoints,
    ZeroColumn,
)
from .exactalg import ModMatrix


@dataclass(frozen=True)
class AbelianCoverDatum:
    N: int
    A: ModMatrix

    @property
    def m(self):
        return self.A.nrows

    @property
    def s(self):
        return self.A.ncols

    @cached_property
    def columns(self):
        return self.A.columns()

    @cached_property
    def group(self):
        return span(self.columns, self.N, self.m)

    @cached_property
    def characters(self):
        return character_representatives(self.group)

    @cached_property
    def _char_lookup(self):
        return {self.alpha(n): n for n in self.characters}

    def alpha(self, n):
        """n . A reduced mod N (the character's values on the columns)."""
        return tuple(pairing(n, col, self.N) for col in self.columns)

    def character(self, v):
        """The chosen representative of the character given by the vector v."""
        return self._char_lookup[self.alpha(tuple(x % self.N for x in v))]

    def negate(self, n):
        return self.character(tuple(-x for x in n))

    def is_trivial_character(self, n):
        return not any(self.alpha(n))

    def __str__(self):
        rows = ";".join(",".join(str(x) for x in row) for row in self.A.rows)
        return f"N={self.N}; A={rows}"


def validate(N, A):
    """Build an AbelianCoverDatum, rejecting zero columns and a nonzero column sum."""
    if N < 2:
        raise ParseError(f"modulus must be at least 2, got {N}")
    M = A if isinstance(A, ModMatrix) else ModMatrix.from_rows(_as_rows(A), N)
    if M.nrows == 0 or M.ncols == 0:
        raise ParseError("empty monodromy matrix")
    if M.ncols < 3:
        raise TooFewPoints(M.ncols)
    for j, col in enumerate(M.columns(), start=1):
        if not any(col):
            raise ZeroColumn(j)
    total = tuple(sum(row) % N for row in M.rows)
    if any(total):
        raise ColumnSumNonzero(total if len(total) > 1 else total[0])
    return AbelianCoverDatum(N, M)


def _as_rows(A):
    A = list(A)
    if A and not isinstance(A[0], (list, tuple)):
        return [A]
    return A


def alpha_vector(datum, n):
    """(alpha, alpha_tilde): n.A mod N and its integer lift sum_i n_i r_ij with n_i in [0, N)."""
    n = tuple(x % datum.N for x in n)
    tilde = tuple(sum(a * r for a, r in zip(n, col)) for col in datum.columns)
    return tuple(t % datum.N for t in tilde), tilde


def local_order(datum, j):
    """Order of the local monodromy at z_j (1-based j)."""
    col = datum.columns[j - 1]
    return datum.N // gcd(datum.N, *col)


def genus_total(datum):
    N = datum.N
    d = len(datum.group)
    total = sum(gcd(N, *col) for col in datum.columns)
    g = 1 + d * (Fraction(datum.s - 2, 2) - Fraction(total, 2 * N))
    if g.denominator != 1 or g < 0:
        raise InconsistentGenus(f"genus formula gave {g} for {datum}")
    return int(g)


def eigenspace_dim(datum, n):
    """Dimension of the n-eigenspace of holomorphic 1-forms: -1 + sum_j <-alpha_j/N>."""
    alpha, _ = alpha_vector(datum, n)
    if not any(alpha):
        return 0
    # N * <-a/N> = (-a) mod N, so the sum stays in the integers
    total = sum((-a) % datum.N for a in alpha)
    if total % datum.N or total < datum.N:
        raise InconsistentGenus(f"eigenspace dimension {Fraction(total, datum.N) - 1} for character {n}")
    return total // datum.N - 1


@dataclass(frozen=True)
class PrymDatum:
    datum: AbelianCoverDatum
    H: SubgroupSpan

    @classmethod
    def make(cls, datum, generators):
        gens = [tuple(x % datum.N for x in g) for g in generators]
        H = span(gens, datum.N, datum.m)
        if not H.issubset(datum.group):
            raise NotASubgroup("H is not contained in the column span")
        return cls(datum, H)

    @property
    def N(self):
        return self.datum.N

    @property
    def s(self):
        return self.datum.s

    def is_anti_invariant(self, n):
        return any(pairing(n, h, self.N) for h in self.H.generators)

    @cached_property
    def eigenspaces(self):
        return _build_table(self)

    @cached_property
    def quotient_order(self):
        return len(self.datum.group) // len(self.H)

    def quotient_local_order(self, j):
        """Order of the image of l_j in G/H (0-based j)."""
        col = self.datum.columns[j]
        k, x = 1, col
        while x not in self.H:
            x = add(x, col, self.N)
            k += 1
        return k

    def inertia(self, j):
        """<l_j> intersected with H, as a set (0-based j)."""
        col = self.datum.columns[j]
        o = element_order(col, self.N)
        return {tuple(k * a % self.N for a in col) for k in range(o)} & set(self.H.elements)

    def __str__(self):
        gens = ";".join(",".join(str(x) for x in g) for g in self.H.generators) or "0"
        return f"{self.datum}; H={gens}"


@dataclass(frozen=True)
class EigenspaceTable:
    dims: dict = field(hash=False)
    anti: frozenset = frozenset()

    def anti_dims(self):
        return {n: d for n, d in self.dims.items() if n in self.anti}


def eigenspace_table(prym):
    return prym.eigenspaces


def _build_table(prym):
    datum = prym.datum
    dims = {n: eigenspace_dim(datum, n) for n in datum.characters}
    anti = frozenset(n for n in datum.characters if prym.is_anti_invariant(n))
    return EigenspaceTable(dims, anti)


def genus_quotient(prym):
    """Genus of C = C~/H by Riemann-Hurwitz, cross-checked against the invariant eigenspaces."""
    G = prym.quotient_order
    ram = sum(Fraction(1) - Fraction(1, prym.quotient_local_order(j)) for j in range(prym.s))
    two_g_minus_2 = G * (-2 + ram)
    g = (two_g_minus_2 + 2) / 2
    table = eigenspace_table(prym)
    invariant = sum(d for n, d in table.dims.items() if n not in table.anti)
    if g.denominator != 1 or g != invariant:
        raise InconsistentGenus(f"Riemann-Hurwitz gives {g}, invariant forms give {invariant} for {prym}")
    return int(g)


def ram_branch_counts(prym):
    """Ramification points on C~ and branch points on C of the H-cover C~ -> C."""
    ram = br = 0
    G = len(prym.datum.group)
    for j, col in enumerate(prym.datum.columns):
        if len(prym.inertia(j)) > 1:
            ram += G // element_order(col, prym.N)
            br += prym.quotient_order // prym.quotient_local_order(j)
    return ram, br


def prym_dimension(prym):
    return genus_total(prym.datum) - genus_quotient(prym)


def polarization_type(prym):
    """Type (1,..,1,n,..,n) of the restricted polarization, n = |H|."""
    p = prym_dimension(prym)
    if p == 0:
        return ()
    g = genus_quotient(prym)
    ram, _ = ram_branch_counts(prym)
    ones = g - 1 if ram == 0 else g
    return (1,) * ones + (len(prym.H),) * (p - ones)


_FIELD = re.compile(r"^\s*([A-Za-z_]+)\s*=\s*(.*)$")


def _parse_vectors(text, line):
    rows = []
    for chunk in text:
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            rows.append([int(x) for x in chunk.replace(" ", ",").split(",") if x != ""])
        except ValueError:
            raise ParseError(f"bad integer list {chunk!r}", line) from None
    return rows


def parse_block(text, first_line=1):
    """Parse one datum block like ``N=6; A=1,1,1,1,2; H=2`` into a PrymDatum."""
    fields = {}
    current = None
    for offset, raw in enumerate(text.splitlines()):
        line = first_line + offset
        for token in raw.split(";"):
            if not token.strip() or token.strip().startswith("#"):
                continue
            m = _FIELD.match(token)
            if m:
                current = m.group(1).upper()
                if current not in ("N", "A", "H"):
                    raise ParseError(f"unknown field {m.group(1)!r}", line)
                fields[current] = ([m.group(2)], line)
            elif current in ("A", "H"):
                fields[current][0].append(token)
            else:
                raise ParseError(f"unexpected text {token.strip()!r}", line)
    for key in ("N", "A"):
        if key not in fields:
            raise ParseError(f"missing field {key}", first_line)
    try:
        N = int(fields["N"][0][0])
    except ValueError:
        raise ParseError(f"bad modulus {fields['N'][0][0]!r}", fields["N"][1]) from None
    rows = _parse_vectors(fields["A"][0], fields["A"][1])
    if not rows or len({len(r) for r in rows}) != 1:
        raise ParseError("monodromy matrix rows must be nonempty and of equal length", fields["A"][1])
    datum = validate(N, rows)
    gens = _parse_vectors(fields["H"][0], fields["H"][1]) if "H" in fields else []
    for g in gens:
        if len(g) != datum.m:
            raise ParseError(f"H generator {g} has length {len(g)}, expected {datum.m}", fields["H"][1])
    return PrymDatum.make(datum, gens)


def parse_data(text):
    """Parse blank-line separated datum blocks."""
    out = []
    block, start = [], 1
    for i, line in enumerate(text.splitlines() + [""], start=1):
        if line.strip():
            if not block:
                start = i
            block.append(line)
        elif block:
            try:
                out.append(parse_block("\n".join(block), start))
            except ParseError:
                raise
            except InputError as exc:
                raise ParseError(f"{type(exc).__name__}: {exc}", start) from exc
            block = []
    return out
