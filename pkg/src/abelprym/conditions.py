"""Specialty criteria for a Prym datum: dim P(G~), conditions (A), (B1), (B) and a sufficient form of (B2).

(B) and (B2) are one-sided: a verdict is either established with a checkable
witness or "not established", never a disproof.
"""

import csv
from dataclasses import dataclass, field

from . import forms
from .abgroup import subgroups
from .coverdata import eigenspace_table
from .errors import InvariantViolation

SELF_PAIRED_B1_NOTE = "B1 via a single self-paired summand of dimension 1"


@dataclass(frozen=True)
class Verdict:
    established: bool
    witness: object = None
    note: str = ""

    def to_json(self):
        w = self.witness
        if isinstance(w, tuple):
            w = [list(x) if isinstance(x, tuple) else x for x in w]
        return {"established": self.established, "witness": w, "note": self.note}


NOT_ESTABLISHED = Verdict(False)


@dataclass(frozen=True)
class Summand:
    characters: tuple
    dims: tuple
    self_paired: bool

    @property
    def dimension(self):
        if self.self_paired:
            d = self.dims[0]
            return d * (d + 1) // 2
        return self.dims[0] * self.dims[1]


@dataclass(frozen=True)
class ConditionReport:
    dim_PG: int
    s_minus_3: int
    cond_A: bool
    cond_B1: bool
    cond_B: Verdict
    cond_B2: Verdict
    summand_profile: tuple = field(default=())
    b1_self_paired: bool = False

    def to_json(self):
        return {
            "dim_PG": self.dim_PG,
            "s_minus_3": self.s_minus_3,
            "cond_A": self.cond_A,
            "cond_B1": self.cond_B1,
            "b1_self_paired": self.b1_self_paired,
            "cond_B": self.cond_B.to_json(),
            "cond_B2": self.cond_B2.to_json(),
            "summand_profile": [
                {"characters": [list(c) for c in s.characters], "dims": list(s.dims), "self_paired": s.self_paired}
                for s in self.summand_profile
            ],
        }


def _profile(datum, dims, chars):
    """Summands V_n (x) V_-n (or Sym^2 V_n when n = -n) over the given characters, pairs counted once."""
    out = []
    for n in sorted(chars):
        if not any(datum.alpha(n)):
            continue
        neg = datum.negate(n)
        if neg < n:
            continue
        if neg == n:
            out.append(Summand((n,), (dims[n],), True))
        else:
            out.append(Summand((n, neg), (dims[n], dims[neg]), False))
    return out


def summand_profile(prym):
    table = eigenspace_table(prym)
    return tuple(s for s in _profile(prym.datum, table.dims, table.anti) if s.dimension)


def dim_PG(prym):
    table = eigenspace_table(prym)
    return sum(s.dimension for s in _profile(prym.datum, table.dims, table.anti))


def cond_A(prym):
    return dim_PG(prym) == prym.s - 3


def _b1(prym):
    """(holds, via self-paired rule)."""
    nonzero = summand_profile(prym)
    target = prym.s - 3
    if len(nonzero) != 1:
        return False, False
    (summand,) = nonzero
    if summand.self_paired:
        ok = summand.dims[0] == 1 and target == 1
        return ok, ok
    return sorted(summand.dims) == sorted((1, target)), False


def cond_B1(prym):
    return _b1(prym)[0]


def cond_B(prym, trials=forms.DEFAULT_TRIALS, seed=0):
    if not cond_A(prym):
        return NOT_ESTABLISHED
    if cond_B1(prym):
        return Verdict(True, "B1", "implied by (B1)")
    res = forms.injectivity_check(prym, trials, seed)
    if res.injective:
        return Verdict(True, res.witness, "multiplication map injective at witness")
    return NOT_ESTABLISHED


def quotient_local_orders(datum, K):
    """Orders of the images of the columns in G~/K."""
    out = []
    for col in datum.columns:
        k, x = 1, col
        while x not in K:
            x = tuple((a + b) % datum.N for a, b in zip(x, col))
            k += 1
        out.append(k)
    return out


def load_catalog(path):
    """Known-special quotient families: CSV with group_order, s, local_orders (dash-separated), label."""
    rows = {}
    with open(path, newline="") as fh:
        for rec in csv.DictReader(fh):
            rec = {k.strip(): (v or "").strip() for k, v in rec.items()}
            key = (int(rec["group_order"]), int(rec["s"]), tuple(sorted(int(x) for x in rec["local_orders"].split("-"))))
            rows[key] = rec.get("label", "")
    return rows


def cond_B2_lite(prym, trials=forms.DEFAULT_TRIALS, seed=0, catalog=None):
    """Search for K with P(G~) ~ A x JC', C' = C~/K, and the C' family special.

    K qualifies when (i) every nonzero invariant Sym^2 summand uses characters
    trivial on K, (iii) C' -> P^1 is branched at all s points, and (ii) the C'
    family passes the dimension count plus an injectivity witness, or its
    (group order, s, local orders) appears in ``catalog``.
    """
    datum = prym.datum
    table = eigenspace_table(prym)
    moving = summand_profile(prym)
    if not moving:
        return NOT_ESTABLISHED
    for K in subgroups(datum.group):
        if any(col in K for col in datum.columns):
            continue

        def trivial_on_K(n):
            return all(not sum(a * b for a, b in zip(n, k)) % datum.N for k in K.generators)

        if not all(trivial_on_K(n) for s in moving for n in s.characters):
            continue
        chars = [n for n in datum.characters if trivial_on_K(n)]
        profile = _profile(datum, table.dims, chars)
        if catalog:
            orders = tuple(sorted(quotient_local_orders(datum, K)))
            label = catalog.get((len(datum.group) // len(K), datum.s, orders))
            if label is not None:
                return Verdict(True, K.generators, f"quotient family in catalog: {label}")
        if sum(s.dimension for s in profile) != datum.s - 3:
            continue
        pairs = []
        for s in profile:
            left = forms.form_basis(datum, s.characters[0])
            if s.self_paired:
                pairs.extend((a, b) for i, a in enumerate(left) for b in left[i:])
            else:
                right = forms.form_basis(datum, s.characters[1])
                pairs.extend((a, b) for a in left for b in right)
        res = forms.check_pairs_injective(datum, pairs, trials, seed)
        if res.injective:
            return Verdict(True, K.generators, f"quotient family special, witness {res.witness}")
    return NOT_ESTABLISHED


def full_report(prym, trials=forms.DEFAULT_TRIALS, seed=0, catalog=None):
    dim = dim_PG(prym)
    b1, via_self = _b1(prym)
    report = ConditionReport(
        dim_PG=dim,
        s_minus_3=prym.s - 3,
        cond_A=dim == prym.s - 3,
        cond_B1=b1,
        cond_B=cond_B(prym, trials, seed),
        cond_B2=cond_B2_lite(prym, trials, seed, catalog),
        summand_profile=summand_profile(prym),
        b1_self_paired=via_self,
    )
    check_report(report)
    return report


def check_report(report):
    if report.cond_A != (report.dim_PG == report.s_minus_3):
        raise InvariantViolation("cond_A disagrees with dim_PG")
    if report.cond_B1 and not report.cond_A:
        raise InvariantViolation("B1 without A")
    if report.cond_B.established and not report.cond_A:
        raise InvariantViolation("B established without A")
