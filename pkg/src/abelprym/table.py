"""Classification table rows: serialization and comparison with imported rows."""

import csv
import io
import json
import re
from dataclasses import asdict, dataclass, fields

from .abgroup import group_label, invariant_factors

FIELDS = ("r", "g_tilde", "g", "p", "G_tilde", "H", "ram", "br", "G", "B1", "B2", "B", "provenance")
INT_FIELDS = ("r", "g_tilde", "g", "p", "ram", "br")
FLAGS = ("Y", "Y*", "-")

FLAG_FOOTNOTE = "flags: Y = established, - = not established (never a disproof)"
SELF_PAIRED_FOOTNOTE = "Y* = (B1) via a single self-paired summand of dimension 1 with s - 3 = 1"

_CYCLIC_PRODUCT = re.compile(r"^C\d+(\^\d+)?(xC\d+(\^\d+)?)*$")


@dataclass(frozen=True)
class TableRow:
    r: int
    g_tilde: int
    g: int
    p: int
    G_tilde: str
    H: str
    ram: int
    br: int
    G: str
    B1: str
    B2: str
    B: str
    provenance: str

    def __post_init__(self):
        for name in ("B1", "B2", "B"):
            if getattr(self, name) not in FLAGS:
                raise ValueError(f"bad flag {getattr(self, name)!r} for {name}")
        if self.provenance not in ("computed", "imported"):
            raise ValueError(f"bad provenance {self.provenance!r}")

    @property
    def consistent(self):
        return self.p == self.g_tilde - self.g

    def flags(self):
        return tuple(getattr(self, k) != "-" for k in ("B1", "B2", "B"))

    def invariant_tuple(self):
        """(s, g~, g, p, |G~|, |H|, ram, br, |G|); group orders are None for non-abelian labels."""
        return (
            self.r, self.g_tilde, self.g, self.p,
            label_order(self.G_tilde), label_order(self.H),
            self.ram, self.br, label_order(self.G),
        )


def is_abelian_label(label):
    return label == "C1" or bool(_CYCLIC_PRODUCT.match(label))


def label_factors(label):
    """'C2^2xC4' -> (2, 2, 4); None for labels that are not products of cyclic groups."""
    if label == "C1":
        return ()
    if not _CYCLIC_PRODUCT.match(label):
        return None
    out = []
    for part in label.split("x"):
        base, _, power = part[1:].partition("^")
        out += [int(base)] * int(power or 1)
    return tuple(sorted(out))


def label_order(label):
    factors = label_factors(label)
    if factors is None:
        return None
    order = 1
    for d in factors:
        order *= d
    return order


def _flag(value, starred=False):
    if not value:
        return "-"
    return "Y*" if starred else "Y"


def row_from_result(result):
    """A computed TableRow plus the extra datum fields carried in JSON output."""
    prym = result.prym
    G = prym.datum.group
    rep = result.report
    row = TableRow(
        r=prym.s,
        g_tilde=result.g_tilde,
        g=result.g,
        p=result.p,
        G_tilde=group_label(invariant_factors(G)),
        H=group_label(invariant_factors(prym.H)),
        ram=result.ram,
        br=result.br,
        G=group_label(invariant_factors(G, prym.H)),
        B1=_flag(rep.cond_B1, rep.b1_self_paired),
        B2=_flag(rep.cond_B2.established),
        B=_flag(rep.cond_B.established),
        provenance="computed",
    )
    extra = {
        "datum": str(prym),
        "key": str(result.key),
        "dim_PG": rep.dim_PG,
        "polarization": list(result.polarization),
    }
    return row, extra


def write_csv(rows, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(FIELDS)
    for row in rows:
        w.writerow([getattr(row, f) for f in FIELDS])


def csv_text(rows):
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()


def _row_from_record(rec):
    values = {}
    for f in FIELDS:
        v = rec[f]
        values[f] = int(v) if f in INT_FIELDS else str(v)
    return TableRow(**values)


def read_csv(fh):
    return [_row_from_record(rec) for rec in csv.DictReader(fh)]


def json_text(rows, extras=None):
    extras = extras or [{}] * len(rows)
    records = [{**asdict(row), **extra} for row, extra in zip(rows, extras)]
    return json.dumps(records, indent=2, ensure_ascii=False) + "\n"


def read_json(text):
    """(rows, extras) from json_text output."""
    names = {f.name for f in fields(TableRow)}
    rows, extras = [], []
    for rec in json.loads(text):
        rows.append(_row_from_record(rec))
        extras.append({k: v for k, v in rec.items() if k not in names})
    return rows, extras


@dataclass(frozen=True)
class ImportIssue:
    line: int
    message: str


def read_import(fh):
    """Rows from a transcribed table; malformed and inconsistent rows are reported and skipped.

    Needs the TableRow columns except provenance (always ``imported``);
    extra columns such as a row index are ignored. Flags accept Y, Y*, - or blank.
    """
    rows, issues = [], []
    reader = csv.DictReader(fh)
    for rec in reader:
        line = reader.line_num
        try:
            values = {}
            for f in FIELDS[:-1]:
                v = (rec.get(f) or "").strip()
                if f in INT_FIELDS:
                    values[f] = int(v)
                elif f in ("B1", "B2", "B"):
                    values[f] = v if v in ("Y", "Y*") else "-" if v in ("-", "") else None
                    if values[f] is None:
                        raise ValueError(f"bad flag {v!r} in column {f}")
                else:
                    if not v:
                        raise ValueError(f"empty column {f}")
                    values[f] = v
            row = TableRow(provenance="imported", **values)
        except (ValueError, TypeError) as exc:
            issues.append(ImportIssue(line, f"malformed row skipped: {exc}"))
            continue
        if not row.consistent:
            issues.append(ImportIssue(line, f"inconsistent row skipped: p = {row.p} but g~ - g = {row.g_tilde - row.g}"))
            continue
        rows.append(row)
    return rows, issues


@dataclass
class Comparison:
    matched: list
    weaker: list
    unmatched_imported: list
    out_of_scope: list
    not_recomputed: list
    unmatched_computed: list
    issues: list

    def ok(self):
        return not self.weaker and not self.unmatched_imported

    def to_json(self):
        def rows(rs):
            return [asdict(r) for r in rs]

        return {
            "matched": len(self.matched),
            "weaker_flags": [{"imported": asdict(a), "best_computed": [asdict(c) for c in cs]} for a, cs in self.weaker],
            "unmatched_imported": rows(self.unmatched_imported),
            "out_of_scope": len(self.out_of_scope),
            "not_recomputed": len(self.not_recomputed),
            "unmatched_computed": rows(self.unmatched_computed),
            "issues": [{"line": i.line, "message": i.message} for i in self.issues],
        }

    def summary_lines(self):
        out = [
            f"imported rows matched: {len(self.matched)}",
            f"imported rows matched only with weaker flags: {len(self.weaker)}",
            f"imported rows unmatched: {len(self.unmatched_imported)}",
            f"imported rows outside the search space: {len(self.out_of_scope)}",
            f"imported non-abelian rows (not recomputed): {len(self.not_recomputed)}",
            f"computed rows without an imported match: {len(self.unmatched_computed)}",
        ]
        for a, cs in self.weaker:
            out.append(f"  weaker: {_brief(a)} vs computed flags {[c.B1 + '/' + c.B2 + '/' + c.B for c in cs]}")
        for a in self.unmatched_imported:
            out.append(f"  unmatched imported: {_brief(a)}")
        for i in self.issues:
            out.append(f"  line {i.line}: {i.message}")
        return out


def _brief(row):
    return (
        f"r={row.r} g~={row.g_tilde} g={row.g} p={row.p} {row.G_tilde}/{row.H} "
        f"ram={row.ram} br={row.br} G={row.G} flags={row.B1}/{row.B2}/{row.B}"
    )


def compare(computed, imported, in_scope=None, issues=()):
    """Match imported rows to computed rows by invariant tuple.

    An imported row is matched when some computed row with the same tuple has
    at least its established flags. ``in_scope(row)`` decides whether an
    imported abelian row lies in the searched space.
    """
    by_tuple = {}
    for row in computed:
        by_tuple.setdefault(row.invariant_tuple(), []).append(row)
    used = set()
    cmp = Comparison([], [], [], [], [], [], list(issues))
    for row in imported:
        if not is_abelian_label(row.G_tilde):
            cmp.not_recomputed.append(row)
            continue
        if in_scope is not None and not in_scope(row):
            cmp.out_of_scope.append(row)
            continue
        t = row.invariant_tuple()
        cands = by_tuple.get(t, [])
        if not cands:
            cmp.unmatched_imported.append(row)
            continue
        used.add(t)
        want = row.flags()
        if any(all(h or not w for h, w in zip(c.flags(), want)) for c in cands):
            cmp.matched.append(row)
        else:
            cmp.weaker.append((row, cands))
    cmp.unmatched_computed = [r for r in computed if r.invariant_tuple() not in used]
    return cmp
