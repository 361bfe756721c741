"""Worked examples replayed by ``abelprym verify``, with their expected values.

Character labels follow the published computations. ``relabel = -1`` means the
published character i corresponds to our character -i (the eigenspace of the
dual action); only the first example needs it.
"""

from dataclasses import dataclass, field, replace

from . import conditions, forms
from .coverdata import (
    eigenspace_table,
    genus_quotient,
    genus_total,
    parse_block,
    ram_branch_counts,
)


@dataclass(frozen=True)
class Golden:
    name: str
    datum: str
    g_tilde: int
    g: int
    anti_dims: dict = field(hash=False)
    dim_PG: int = 0
    cond_B1: bool = False
    cond_B: bool = True
    ram: int = None
    images: tuple = ()
    relabel: int = 1


EXAMPLES = (
    Golden(
        name="Z6 four points",
        datum="N=6; A=1,3,4,4; H=2",
        g_tilde=3,
        g=0,
        anti_dims={(1,): 1, (2,): 0, (4,): 1, (5,): 1},
        dim_PG=1,
        cond_B1=True,
        ram=5,
        relabel=-1,
    ),
    Golden(
        name="Z3xZ3 four points",
        datum="N=3; A=1,1,1,0;0,0,2,1; H=0,1",
        g_tilde=4,
        g=1,
        anti_dims={(1, 1): 1, (1, 2): 1, (2, 1): 1},
        dim_PG=1,
        cond_B1=True,
        ram=3,
    ),
    Golden(
        name="Z6 five points",
        datum="N=6; A=1,1,1,1,2; H=2",
        g_tilde=7,
        g=1,
        anti_dims={(1,): 3, (2,): 2, (4,): 1, (5,): 0},
        dim_PG=2,
        cond_B1=True,
        ram=6,
        images=(
            (((2,), 0), ((4,), 0), "1 (dz)^2 / (z - z1)(z - z2)(z - z3)(z - z4)(z - z5)"),
            (((2,), 1), ((4,), 0), "z (dz)^2 / (z - z1)(z - z2)(z - z3)(z - z4)(z - z5)"),
        ),
    ),
    Golden(
        name="Z3xZ3 five points",
        datum="N=3; A=1,0,1,2,2;0,2,2,0,2; H=0,1",
        g_tilde=7,
        g=2,
        anti_dims={(0, 2): 1, (1, 1): 1, (2, 1): 1, (1, 2): 1, (2, 2): 1},
        dim_PG=2,
        cond_B1=False,
        images=(
            (((1, 1), 0), ((2, 2), 0), "1 (dz)^2 / (z - z1)(z - z2)(z - z4)(z - z5)"),
            (((1, 2), 0), ((2, 1), 0), "1 (dz)^2 / (z - z1)(z - z2)(z - z3)(z - z4)"),
        ),
    ),
    Golden(
        name="Z2^3 six points",
        datum="N=2; A=0,0,1,1,0,0;0,1,1,1,0,1;1,1,1,1,1,1; H=1,0,0;0,1,0",
        g_tilde=5,
        g=2,
        anti_dims={(0, 1, 0): 1, (1, 0, 1): 1, (1, 1, 1): 1},
        dim_PG=3,
        cond_B1=False,
        images=(
            (((0, 1, 0), 0), ((0, 1, 0), 0), "1 (dz)^2 / (z - z2)(z - z3)(z - z4)(z - z6)"),
            (((1, 0, 1), 0), ((1, 0, 1), 0), "1 (dz)^2 / (z - z1)(z - z2)(z - z5)(z - z6)"),
            (((1, 1, 1), 0), ((1, 1, 1), 0), "1 (dz)^2 / (z - z1)(z - z3)(z - z4)(z - z5)"),
        ),
    ),
)


def _form(datum, n, nu):
    return forms.form_basis(datum, n)[nu]


def actual_values(example):
    """The computed counterparts of every expected field of ``example``."""
    prym = parse_block(example.datum)
    datum = prym.datum
    table = eigenspace_table(prym)
    N = datum.N
    anti = {}
    for label in example.anti_dims:
        n = datum.character(tuple(example.relabel * x % N for x in label))
        anti[label] = table.dims[n] if n in table.anti else None
    points = tuple(range(datum.s))
    images = []
    for (a, nu), (b, mu), _ in example.images:
        pair = (_form(datum, a, nu), _form(datum, b, mu))
        images.append(forms.multiply(datum, pair, points).symbolic())
    out = {
        "g_tilde": genus_total(datum),
        "g": genus_quotient(prym),
        "anti_dims": anti,
        "dim_PG": conditions.dim_PG(prym),
        "cond_B1": conditions.cond_B1(prym),
        "cond_B": conditions.cond_B(prym).established,
        "images": images,
    }
    if example.ram is not None:
        out["ram"] = ram_branch_counts(prym)[0]
    return out


def expected_values(example):
    out = {
        "g_tilde": example.g_tilde,
        "g": example.g,
        "anti_dims": dict(example.anti_dims),
        "dim_PG": example.dim_PG,
        "cond_B1": example.cond_B1,
        "cond_B": example.cond_B,
        "images": [img for _, _, img in example.images],
    }
    if example.ram is not None:
        out["ram"] = example.ram
    return out


def check(example):
    """List of (field, expected, actual) mismatches."""
    expected = expected_values(example)
    actual = actual_values(example)
    return [(k, expected[k], actual[k]) for k in expected if expected[k] != actual[k]]


def perturbed(examples, target):
    """Copy of ``examples`` with one expected value altered, for exercising failure reports.

    ``target`` is 'INDEX.FIELD' with a 1-based example index and an integer or boolean field.
    """
    index, _, name = target.partition(".")
    i = int(index) - 1
    if not 0 <= i < len(examples):
        raise ValueError(f"no example {index}")
    ex = examples[i]
    value = getattr(ex, name)
    if isinstance(value, bool):
        new = not value
    elif isinstance(value, int):
        new = value + 1
    else:
        raise ValueError(f"cannot perturb field {name!r}")
    return examples[:i] + (replace(ex, **{name: new}),) + examples[i + 1:]
