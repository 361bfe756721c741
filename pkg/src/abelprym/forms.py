"""Holomorphic 1-forms as exponent vectors and the multiplication map into quadratic differentials.

omega_{n,nu} = z^nu w_1^{n_1} ... w_m^{n_m} prod_j (z - z_j)^{floor(-alpha~_j / N)} dz,
0 <= nu < d_n. A product of two such forms with opposite characters is a rational
quadratic differential; it is evaluated at concrete rational branch points so the
injectivity of the multiplication map becomes an exact rank computation.
"""

import random
from dataclasses import dataclass
from fractions import Fraction

from .coverdata import alpha_vector, eigenspace_dim, eigenspace_table
from .errors import CharactersDoNotCancel, DuplicateBranchPoints, InvariantViolation
from .exactalg import rank_exact

DEFAULT_TRIALS = 5
POINT_RANGE = 1000


@dataclass(frozen=True)
class FormExponent:
    character: tuple
    nu: int
    w_exponents: tuple
    z_exponents: tuple

    def __str__(self):
        parts = [f"z^{self.nu}"] if self.nu else []
        parts += [f"w{i + 1}^{e}" for i, e in enumerate(self.w_exponents) if e]
        parts += [f"(z - z{j + 1})^{e}" for j, e in enumerate(self.z_exponents) if e]
        return " ".join(parts or ["1"]) + " dz"


def _factor(j, k):
    base = f"(z - z{j + 1})"
    return base if k == 1 else f"{base}^{k}"


@dataclass(frozen=True)
class QuadDifferential:
    """z^z_power prod_j (z - z_j)^exponents[j] (dz)^2, also stored as an explicit numerator.

    ``poly_coeffs`` are the coefficients of z^0 .. z^(s-4) of the numerator over
    prod_j (z - z_j) at the branch points used for evaluation.
    """

    z_power: int
    exponents: tuple
    poly_coeffs: tuple
    pole_orders: tuple

    def symbolic(self):
        num = "1" if self.z_power == 0 else "z" if self.z_power == 1 else f"z^{self.z_power}"
        ups = "".join(_factor(j, e) for j, e in enumerate(self.exponents) if e > 0)
        downs = "".join(_factor(j, -e) for j, e in enumerate(self.exponents) if e < 0)
        return f"{num}{ups} (dz)^2 / {downs or '1'}"


@dataclass(frozen=True)
class SymBasis:
    pairs: tuple

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)


def form_basis(datum, n):
    n = tuple(x % datum.N for x in n)
    d = eigenspace_dim(datum, n)
    _, tilde = alpha_vector(datum, n)
    e = tuple(-t // datum.N for t in tilde)
    return [FormExponent(n, nu, n, e) for nu in range(d)]


def sym2_invariant_basis(prym):
    """Basis of the G~-invariant part of Sym^2 of the anti-invariant 1-forms.

    Invariant products pair a character with its negative; for self-paired
    characters only nu <= mu is kept.
    """
    datum = prym.datum
    table = eigenspace_table(prym)
    pairs = []
    for n in sorted(table.anti):
        neg = datum.negate(n)
        if neg < n:
            continue
        left = form_basis(datum, n)
        if neg == n:
            pairs.extend((a, b) for i, a in enumerate(left) for b in left[i:])
        else:
            right = form_basis(datum, neg)
            pairs.extend((a, b) for a in left for b in right)
    return SymBasis(tuple(pairs))


def _poly_mul_linear(poly, root):
    """poly * (z - root), coefficients ascending."""
    out = [Fraction(0)] * (len(poly) + 1)
    for i, c in enumerate(poly):
        out[i + 1] += c
        out[i] -= c * root
    return out


def product_exponents(datum, pair):
    """(z power, exponents E_j) of the product of two forms with opposite characters."""
    a, b = pair
    N = datum.N
    alpha_a, tilde_a = alpha_vector(datum, a.character)
    alpha_b, tilde_b = alpha_vector(datum, b.character)
    if any((x + y) % N for x, y in zip(alpha_a, alpha_b)):
        raise CharactersDoNotCancel(f"characters {a.character} and {b.character} do not multiply to 1")
    # w^(n + n') reduces through w_i^N = prod (z - z_j)^{r_ij}; the leftover monomial is
    # prod (z - z_j)^{(alpha~ + alpha~')/N} up to a constant
    E = tuple(ea + eb + (ta + tb) // N for ea, eb, ta, tb in zip(a.z_exponents, b.z_exponents, tilde_a, tilde_b))
    return a.nu + b.nu, E


def multiply(datum, pair, branch_points):
    points = [Fraction(p) for p in branch_points]
    if len(points) != datum.s:
        raise ValueError(f"need {datum.s} branch points, got {len(points)}")
    if len(set(points)) != len(points):
        raise DuplicateBranchPoints(f"branch points not distinct: {branch_points}")
    z_power, E = product_exponents(datum, pair)
    if any(e < -1 for e in E):
        raise InvariantViolation(f"pole of order > 1 in product {E}")
    poly = [Fraction(0)] * z_power + [Fraction(1)]
    for e, p in zip(E, points):
        for _ in range(e + 1):
            poly = _poly_mul_linear(poly, p)
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    bound = datum.s - 4
    if len(poly) - 1 > bound:
        raise InvariantViolation(f"numerator degree {len(poly) - 1} exceeds s - 4 = {bound}")
    coeffs = tuple(poly) + (Fraction(0),) * (bound + 1 - len(poly))
    return QuadDifferential(z_power, E, coeffs, tuple(1 if e < 0 else 0 for e in E))


def branch_tuples(s, trials, seed):
    """(0, 1, ..., s-1) followed by trials - 1 seeded tuples of distinct integers."""
    rng = random.Random(seed)
    out = [tuple(range(s))]
    for _ in range(trials - 1):
        out.append(tuple(rng.sample(range(-POINT_RANGE, POINT_RANGE + 1), s)))
    return out


@dataclass(frozen=True)
class InjectivityResult:
    injective: bool
    witness: tuple
    tried: tuple
    rank: int
    size: int


def coefficient_matrix(datum, pairs, points):
    return [list(multiply(datum, pair, points).poly_coeffs) for pair in pairs]


def check_pairs_injective(datum, pairs, trials=DEFAULT_TRIALS, seed=0):
    pairs = list(pairs)
    tried = []
    best = 0
    for t in branch_tuples(datum.s, trials, seed):
        tried.append(t)
        rank = rank_exact(coefficient_matrix(datum, pairs, t)) if pairs else 0
        best = max(best, rank)
        if rank == len(pairs):
            return InjectivityResult(True, t, tuple(tried), rank, len(pairs))
    return InjectivityResult(False, None, tuple(tried), best, len(pairs))


def injectivity_check(prym, trials=DEFAULT_TRIALS, seed=0):
    """Injectivity of the multiplication map on the invariant Sym^2 of anti-invariant forms.

    One tuple of branch points with full rank certifies injectivity; failure at all
    tried tuples is inconclusive.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    return check_pairs_injective(prym.datum, sym2_invariant_basis(prym), trials, seed)
