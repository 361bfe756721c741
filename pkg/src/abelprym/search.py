"""Enumeration of abelian Prym data up to equivalence, and the classification loop.

Data are normalized to the standard group Z/d_1 x ... x Z/d_k (d_1 | ... | d_k)
embedded in (Z/d_k)^k with coordinate i scaled by d_k / d_i. Equivalence is
row span + column permutation + Aut(G~), applied to the columns and H together.
"""

import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement

import numpy as np

from . import conditions, forms
from .abgroup import (
    AUTOMORPHISM_GROUP_BOUND,
    Coordinates,
    small_generators,
    span,
    standard_automorphisms,
    standard_elements,
    standard_index,
    subgroups,
)
from .coverdata import (
    PrymDatum,
    genus_quotient,
    genus_total,
    parse_block,
    polarization_type,
    ram_branch_counts,
    validate,
)
from .errors import GroupBoundExceeded, ParseError
from .exactalg import ModMatrix, howell_form

DEFAULT_MAX_GROUP = 64


@dataclass(frozen=True, order=True)
class CanonicalKey:
    """Orbit minimum of (sorted columns, H) in standard coordinates.

    ``columns`` and ``H`` hold mixed-radix indices of standard elements.
    """

    factors: tuple
    columns: tuple
    H: tuple
    howell: tuple = field(compare=False)

    def __str__(self):
        shape = "x".join(map(str, self.factors))
        cols = ",".join(map(str, self.columns))
        h = ",".join(map(str, self.H))
        return f"{shape}:{cols}:{h}"


@dataclass(frozen=True)
class SearchSpec:
    s: tuple
    N: tuple = None
    m: tuple = None
    shapes: tuple = None
    max_group: int = DEFAULT_MAX_GROUP
    H_order: tuple = None
    trials: int = forms.DEFAULT_TRIALS
    seed: int = 0

    def __post_init__(self):
        if not self.s or min(self.s) < 4:
            raise ParseError("s must be given and at least 4")
        if self.shapes is None and (self.N is None or self.m is None):
            raise ParseError("spec needs N and m ranges or an explicit shape list")
        if self.max_group < 1:
            raise ParseError("max_group must be positive")
        if self.trials < 1:
            raise ParseError("trials must be at least 1")


def _int_set(text, line):
    out = set()
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        m = re.fullmatch(r"(\d+)\s*-\s*(\d+)", part)
        try:
            if m:
                lo, hi = int(m.group(1)), int(m.group(2))
                if hi < lo:
                    raise ParseError(f"empty range {part!r}", line)
                out.update(range(lo, hi + 1))
            else:
                out.add(int(part))
        except ValueError:
            raise ParseError(f"bad integer {part!r}", line) from None
    if not out:
        raise ParseError("empty value", line)
    return tuple(sorted(out))


def parse_shape(text, line=None):
    """'2x4', 'C2xC4' or 'C2^2' -> sorted invariant factors."""
    factors = []
    for part in text.strip().split("x"):
        m = re.fullmatch(r"\s*C?(\d+)(?:\^(\d+))?\s*", part)
        if not m:
            raise ParseError(f"bad group shape {text!r}", line)
        factors += [int(m.group(1))] * int(m.group(2) or 1)
    factors = sorted(factors)
    if any(d < 2 for d in factors) or any(b % a for a, b in zip(factors, factors[1:])):
        raise ParseError(f"shape {text!r} is not a chain of invariant factors", line)
    return tuple(factors)


def parse_spec(text):
    values = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"expected key=value, got {line!r}", line_no)
        key, value = (x.strip() for x in line.split("=", 1))
        if key in ("N", "m", "s", "H_order"):
            values[key] = _int_set(value, line_no)
        elif key == "shape":
            values["shapes"] = tuple(parse_shape(v, line_no) for v in value.split(",") if v.strip())
        elif key in ("max_group", "trials", "seed"):
            try:
                values[key] = int(value)
            except ValueError:
                raise ParseError(f"bad integer for {key}: {value!r}", line_no) from None
        else:
            raise ParseError(f"unknown key {key!r}", line_no)
    if "s" not in values:
        raise ParseError("spec file must set s")
    return SearchSpec(**values)


def parse_spec_file(path):
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read())


def _chains(exponent, rank):
    """Invariant factor chains d_1 | ... | d_rank = exponent with every d_i >= 2."""
    if rank == 1:
        return [(exponent,)]
    out = []
    for d in range(2, exponent + 1):
        if exponent % d == 0:
            out += [c + (exponent,) for c in _chains(d, rank - 1)]
    return out


def shapes(spec):
    if spec.shapes is not None:
        found = [f for f in spec.shapes if (spec.N is None or f[-1] in spec.N) and (spec.m is None or len(f) in spec.m)]
    else:
        found = [c for n in spec.N for r in spec.m for c in _chains(n, r)]
    out = set()
    for f in found:
        order = int(np.prod(f))
        if order <= spec.max_group:
            out.add(f)
    return sorted(out, key=lambda f: (int(np.prod(f)), f))


def _embedded(coords, factors):
    N = factors[-1]
    return tuple(a * (N // d) for a, d in zip(coords, factors))


@dataclass
class _Shape:
    factors: tuple
    elements: tuple
    add: list
    neg: list
    auts: np.ndarray
    subgroup_sets: list
    subgroup_orders: list
    subgroup_images: np.ndarray
    group: object


@lru_cache(maxsize=None)
def _shape_tables(factors):
    if int(np.prod(factors)) > AUTOMORPHISM_GROUP_BOUND:
        raise GroupBoundExceeded(f"group of order {int(np.prod(factors))} exceeds bound {AUTOMORPHISM_GROUP_BOUND}")
    elems = standard_elements(factors)
    size = len(elems)
    add = [[standard_index([a + b for a, b in zip(x, y)], factors) for y in elems] for x in elems]
    neg = [standard_index([-a for a in x], factors) for x in elems]
    auts = standard_automorphisms(factors)
    N = factors[-1]
    G = span([_embedded(e, factors) for e in elems], N, len(factors))
    back = {_embedded(e, factors): i for i, e in enumerate(elems)}
    subs = [frozenset(back[x] for x in H) for H in subgroups(G)]
    lookup = {S: i for i, S in enumerate(subs)}
    images = np.empty((len(auts), len(subs)), dtype=np.int64)
    for h, S in enumerate(subs):
        idx = np.fromiter(sorted(S), dtype=np.int64)
        for a, row in enumerate(auts[:, idx]):
            images[a, h] = lookup[frozenset(row.tolist())]
    if len(back) != size:
        raise AssertionError("standard embedding is not faithful")
    return _Shape(factors, elems, add, neg, auts, subs, [len(S) for S in subs], images, G)


def _generates(cols, tables):
    seen = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for c in cols:
            y = tables.add[x][c]
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return len(seen) == len(tables.elements)


def _column_sets(tables, s):
    """Sorted column index tuples: nonzero, summing to zero, generating, minimal in their Aut orbit."""
    size = len(tables.elements)
    weights = np.array([size ** (s - 1 - i) for i in range(s)], dtype=np.int64)
    for head in combinations_with_replacement(range(1, size), s - 1):
        total = 0
        for c in head:
            total = tables.add[total][c]
        last = tables.neg[total]
        if last < head[-1]:
            continue
        cols = head + (last,)
        images = np.sort(tables.auts[:, cols], axis=1)
        codes = images @ weights
        own = int(np.dot(cols, weights))
        if codes.min() < own:
            continue
        if not _generates(cols, tables):
            continue
        yield cols, np.flatnonzero(codes == own)


def _make_prym(tables, cols, h):
    factors = tables.factors
    N = factors[-1]
    vecs = [_embedded(tables.elements[c], factors) for c in cols]
    rows = [[v[i] for v in vecs] for i in range(len(factors))]
    datum = validate(N, rows)
    H = sorted(tables.subgroup_sets[h])
    H_elems = [_embedded(tables.elements[x], factors) for x in H]
    return PrymDatum.make(datum, small_generators(H_elems, N, len(factors)))


def enumerate_data(spec):
    """Stream one PrymDatum per canonical key, in deterministic order."""
    for factors in shapes(spec):
        tables = _shape_tables(factors)
        for s in spec.s:
            for cols, stabilizer in _column_sets(tables, s):
                images = tables.subgroup_images[stabilizer]
                for h, order in enumerate(tables.subgroup_orders):
                    if order == 1 or (spec.H_order is not None and order not in spec.H_order):
                        continue
                    if images[:, h].min() < h:
                        continue
                    yield _make_prym(tables, cols, h)


def canonical_key(prym):
    G = prym.datum.group
    coords = Coordinates(G)
    factors = coords.factors
    if len(G) > AUTOMORPHISM_GROUP_BOUND:
        raise GroupBoundExceeded(f"|G~| = {len(G)} exceeds automorphism bound {AUTOMORPHISM_GROUP_BOUND}")
    auts = standard_automorphisms(factors)
    size = len(G)
    s = prym.s
    cols = np.array([coords.index(c) for c in prym.datum.columns], dtype=np.int64)
    H = np.array(sorted(coords.index(x) for x in prym.H), dtype=np.int64)
    weights = np.array([size ** (s - 1 - i) for i in range(s)], dtype=np.int64)
    codes = np.sort(auts[:, cols], axis=1) @ weights
    best = np.flatnonzero(codes == codes.min())
    h_images = np.sort(auts[np.ix_(best, H)], axis=1)
    h_min = min(tuple(row) for row in h_images.tolist())
    col_min = tuple(np.sort(auts[best[0], cols]).tolist())
    std = standard_elements(factors)
    vecs = [_embedded(std[c], factors) for c in col_min]
    M = ModMatrix.from_rows([[v[i] for v in vecs] for i in range(len(factors))], factors[-1])
    return CanonicalKey(tuple(factors), col_min, h_min, howell_form(M).rows)


@dataclass(frozen=True)
class SearchResult:
    prym: PrymDatum
    report: conditions.ConditionReport
    key: CanonicalKey
    g_tilde: int
    g: int
    ram: int
    br: int
    polarization: tuple

    @property
    def p(self):
        return self.g_tilde - self.g

    def sort_key(self):
        return (self.prym.s, self.g_tilde, self.g, self.key)


def classify(prym, trials=forms.DEFAULT_TRIALS, seed=0, catalog=None):
    report = conditions.full_report(prym, trials, seed, catalog)
    ram, br = ram_branch_counts(prym)
    return SearchResult(
        prym=prym,
        report=report,
        key=canonical_key(prym),
        g_tilde=genus_total(prym.datum),
        g=genus_quotient(prym),
        ram=ram,
        br=br,
        polarization=polarization_type(prym),
    )


def _classify_text(args):
    text, trials, seed, catalog = args
    return classify(parse_block(text), trials, seed, catalog)


def run_search(spec, workers=1, catalog=None):
    """Classify every enumerated datum; rows sorted by (s, g~, g, canonical key)."""
    data = list(enumerate_data(spec))
    if workers > 1 and len(data) > 1:
        jobs = [(str(p), spec.trials, spec.seed, catalog) for p in data]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_classify_text, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [classify(p, spec.trials, spec.seed, catalog) for p in data]
    return sorted(results, key=SearchResult.sort_key)
