"""Finite abelian groups realized inside (Z/N)^m.

Elements are plain tuples of ints in [0, N). Characters are represented by
vectors n in (Z/N)^m acting through ``pairing``; no separate dual group object
exists. Every subgroup of an abelian group is normal, so no normality checks
are ever needed.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import gcd

import numpy as np

from .errors import AmbientMismatch, GroupBoundExceeded

SUBGROUP_BOUND = 256
AUTOMORPHISM_GROUP_BOUND = 64
MAX_AUTOMORPHISMS = 200_000


def add(x, y, modulus):
    return tuple((a + b) % modulus for a, b in zip(x, y))


def scale(k, x, modulus):
    return tuple(k * a % modulus for a in x)


def pairing(n, g, modulus):
    """n . g mod N; zero iff the character of n is trivial on g."""
    if len(n) != len(g):
        raise AmbientMismatch(f"pairing of vectors of lengths {len(n)} and {len(g)}")
    return sum(a * b for a, b in zip(n, g)) % modulus


def element_order(g, modulus):
    return modulus // gcd(modulus, *g)


@dataclass(frozen=True)
class SubgroupSpan:
    modulus: int
    dim: int
    generators: tuple
    elements: tuple
    _set: frozenset = field(repr=False, compare=False, hash=False)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return tuple(x) in self._set

    def __iter__(self):
        return iter(self.elements)

    @property
    def order(self):
        return len(self.elements)

    @property
    def zero(self):
        return (0,) * self.dim

    def issubset(self, other):
        return self._set <= other._set

    def sort_key(self):
        return (len(self.elements), self.elements)


def _closure(generators, modulus, dim):
    elems = {(0,) * dim}
    for g in generators:
        if g in elems:
            continue
        k = element_order(g, modulus)
        multiples = [scale(i, g, modulus) for i in range(k)]
        elems = {add(x, y, modulus) for x in elems for y in multiples}
    return elems


def _make(elems, generators, modulus, dim):
    return SubgroupSpan(modulus, dim, tuple(generators), tuple(sorted(elems)), frozenset(elems))


def span(generators, modulus, dim=None):
    gens = [tuple(int(a) % modulus for a in g) for g in generators]
    if dim is None:
        if not gens:
            raise ValueError("dim required for an empty generator list")
        dim = len(gens[0])
    if any(len(g) != dim for g in gens):
        raise AmbientMismatch("generators of different lengths")
    return _make(_closure(gens, modulus, dim), gens, modulus, dim)


def small_generators(elements, modulus, dim):
    """Greedy generating set, taking elements of largest order first."""
    target = set(elements)
    gens = []
    current = {(0,) * dim}
    for x in sorted(elements, key=lambda e: (-element_order(e, modulus), e)):
        if len(current) == len(target):
            break
        if x not in current:
            gens.append(x)
            current = _closure(gens, modulus, dim)
    return tuple(gens)


def subgroup_from_elements(elements, modulus, dim):
    elems = frozenset(elements)
    gens = small_generators(elems, modulus, dim)
    return _make(elems, gens, modulus, dim)


def subgroups(G, bound=SUBGROUP_BOUND):
    """All subgroups of G sorted by (order, element list)."""
    if len(G) > bound:
        raise GroupBoundExceeded(f"|G| = {len(G)} exceeds subgroup bound {bound}")
    n, dim = G.modulus, G.dim
    cyclic = {frozenset(_closure([x], n, dim)) for x in G}
    found = set(cyclic)
    frontier = list(cyclic)
    while frontier:
        nxt = []
        for S in frontier:
            for C in cyclic:
                if C <= S:
                    continue
                J = frozenset(add(a, b, n) for a in S for b in C)
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        frontier = nxt
    subs = [subgroup_from_elements(S, n, dim) for S in found]
    return sorted(subs, key=SubgroupSpan.sort_key)


def _primes(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def invariant_factors_from_cyclic(orders):
    """Invariant factors d_1 | d_2 | ... of a product of cyclic groups of the given orders."""
    primary = {}
    for o in orders:
        for p in _primes(o):
            e = 0
            while o % p == 0:
                o //= p
                e += 1
            primary.setdefault(p, []).append(p ** e)
    k = max((len(v) for v in primary.values()), default=0)
    factors = [1] * k
    for p, powers in primary.items():
        powers.sort(reverse=True)
        for i, q in enumerate(powers):
            factors[k - 1 - i] *= q
    return tuple(factors)


def invariant_factors(G, H=None):
    """Invariant factors of G (or of G/H) from the counts |{x : p^j x in H}| / |H|."""
    n = G.modulus
    h = 1 if H is None else len(H)
    inside = (lambda x: not any(x)) if H is None else H.__contains__
    order = len(G) // h
    cyclic_orders = []
    for p in _primes(order):
        counts = [1]
        j = 1
        while True:
            c = sum(1 for x in G if inside(tuple(p ** j * a % n for a in x))) // h
            counts.append(c)
            if c == counts[-2] and j > 1:
                break
            j += 1
        logs = []
        for c in counts:
            e = 0
            while c > 1:
                c //= p
                e += 1
            logs.append(e)
        # number of cyclic p-factors of order >= p^j is logs[j] - logs[j-1]
        at_least = [logs[j] - logs[j - 1] for j in range(1, len(logs))] + [0]
        for j in range(1, len(at_least)):
            for _ in range(at_least[j - 1] - at_least[j]):
                cyclic_orders.append(p ** j)
    return invariant_factors_from_cyclic(cyclic_orders)


def group_label(factors):
    """Group label, e.g. (2, 4) -> 'C2xC4', (2, 2, 4) -> 'C2^2xC4'."""
    factors = [d for d in factors if d > 1]
    if not factors:
        return "C1"
    parts = []
    i = 0
    while i < len(factors):
        j = i
        while j < len(factors) and factors[j] == factors[i]:
            j += 1
        k = j - i
        parts.append(f"C{factors[i]}" + (f"^{k}" if k > 1 else ""))
        i = j
    return "x".join(parts)


def find_basis(G):
    """Elements b_1..b_k of orders d_1 | ... | d_k with G the internal direct sum of <b_i>."""
    n, dim = G.modulus, G.dim
    factors = invariant_factors(G)
    if not factors:
        return factors, ()
    by_order = {}
    for x in G:
        by_order.setdefault(element_order(x, n), []).append(x)
    # choose the largest factors first; backtrack when a choice cannot be completed
    order_desc = list(range(len(factors)))[::-1]

    def extend(chosen, spanned, idx):
        if idx == len(order_desc):
            return chosen
        d = factors[order_desc[idx]]
        for x in by_order.get(d, ()):
            new = _closure([x], n, dim)
            if len(new & spanned) != 1:
                continue
            joined = {add(a, b, n) for a in spanned for b in new}
            res = extend(chosen + [x], joined, idx + 1)
            if res is not None:
                return res
        return None

    chosen = extend([], {(0,) * dim}, 0)
    if chosen is None:
        raise AssertionError("no basis found")
    return factors, tuple(reversed(chosen))


@lru_cache(maxsize=None)
def standard_elements(factors):
    """Elements of Z/d_1 x ... x Z/d_k in lexicographic order (index = mixed radix)."""
    return tuple(product(*(range(d) for d in factors)))


def standard_index(coords, factors):
    idx = 0
    for a, d in zip(coords, factors):
        idx = idx * d + a % d
    return idx


@lru_cache(maxsize=None)
def standard_automorphisms(factors):
    """Automorphisms of Z/d_1 x ... x Z/d_k as an int array of element permutations.

    Row a, column i holds the index of the image of element i. An automorphism is
    a choice of images b_i of the standard generators with ord(b_i) = d_i and
    each <b_i> meeting <b_1, ..., b_{i-1}> trivially.
    """
    elems = np.array(standard_elements(factors), dtype=np.int64).reshape(-1, len(factors))
    k = len(factors)
    size = len(elems)
    mods = np.array(factors, dtype=np.int64)
    weights = np.array([int(np.prod(factors[i + 1:])) for i in range(k)], dtype=np.int64)
    add_table = ((elems[:, None, :] + elems[None, :, :]) % mods) @ weights
    multiples = []
    for x in range(size):
        seq = [0]
        y = x
        while y != 0:
            seq.append(y)
            y = add_table[y, x]
        multiples.append(np.array(seq, dtype=np.int64))
    candidates = [[x for x in range(size) if len(multiples[x]) == d] for d in factors]
    images = []

    def rec(chosen, spanned, mask):
        i = len(chosen)
        if i == k:
            images.append(chosen)
            if len(images) > MAX_AUTOMORPHISMS:
                raise GroupBoundExceeded(f"more than {MAX_AUTOMORPHISMS} automorphisms")
            return
        for x in candidates[i]:
            mult = multiples[x]
            if mask[mult[1:]].any():
                continue
            new = add_table[np.ix_(spanned, mult)].ravel()
            new_mask = np.zeros(size, dtype=bool)
            new_mask[new] = True
            rec(chosen + [x], new, new_mask)

    start = np.zeros(size, dtype=bool)
    start[0] = True
    rec([], np.array([0], dtype=np.int64), start)
    table = np.empty((len(images), size), dtype=np.int64)
    chunk = 4096
    for lo in range(0, len(images), chunk):
        gens = elems[np.array(images[lo:lo + chunk], dtype=np.int64).reshape(-1, k)].reshape(-1, k, k)
        table[lo:lo + chunk] = ((np.einsum("gi,aij->agj", elems, gens) % mods) @ weights)
    return table


class Coordinates:
    """An explicit isomorphism between G and its standard form Z/d_1 x ... x Z/d_k."""

    def __init__(self, G):
        self.group = G
        self.factors, self.basis = find_basis(G)
        n, dim = G.modulus, G.dim
        self.to_std = {}
        self.from_std = {}
        for coords in standard_elements(self.factors):
            x = (0,) * dim
            for a, b in zip(coords, self.basis):
                x = add(x, scale(a, b, n), n)
            self.to_std[x] = coords
            self.from_std[coords] = x
        if len(self.to_std) != len(G):
            raise AssertionError("basis does not give an isomorphism")

    def index(self, x):
        return standard_index(self.to_std[tuple(x)], self.factors)


def automorphisms(G, bound=AUTOMORPHISM_GROUP_BOUND):
    """All automorphisms of G, each a tuple p with G.elements[i] -> G.elements[p[i]]."""
    if len(G) > bound:
        raise GroupBoundExceeded(f"|G| = {len(G)} exceeds automorphism bound {bound}")
    coords = Coordinates(G)
    table = standard_automorphisms(coords.factors)
    std = standard_elements(coords.factors)
    pos = {x: i for i, x in enumerate(G.elements)}
    to_idx = [coords.index(x) for x in G.elements]
    back = [pos[coords.from_std[c]] for c in std]
    return [tuple(back[row[i]] for i in to_idx) for row in table.tolist()]


def character_representatives(G):
    """One vector n in (Z/N)^m per character of G, sorted.

    Two vectors give the same character iff they agree on the generators of G.
    When the dot product restricted to G is non-degenerate the representatives
    are exactly the elements of G; otherwise the lexicographically smallest
    vector of each class is used.
    """
    n, dim = G.modulus, G.dim
    gens = G.generators or small_generators(G.elements, n, dim)

    def signature(v):
        return tuple(pairing(v, g, n) for g in gens)

    sigs = {signature(x) for x in G}
    if len(sigs) == len(G):
        return list(G.elements)
    reps = {}
    for v in product(range(n), repeat=dim):
        reps.setdefault(signature(v), v)
    if len(reps) != len(G):
        raise AssertionError("character count differs from group order")
    return sorted(reps.values())


def annihilator_count(G, H, characters):
    return sum(1 for v in characters if all(pairing(v, h, G.modulus) == 0 for h in H))
