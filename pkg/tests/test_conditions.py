import random

import pytest

from abelprym.abgroup import span
from abelprym.conditions import (
    cond_A,
    cond_B,
    cond_B1,
    cond_B2_lite,
    dim_PG,
    full_report,
    load_catalog,
    quotient_local_orders,
    summand_profile,
)
from abelprym.coverdata import parse_block

from conftest import random_prym, relabel


def test_z6_four(golden):
    r = full_report(golden["z6_four"])
    assert (r.dim_PG, r.cond_A, r.cond_B1) == (1, True, True)
    assert r.cond_B.established
    assert r.cond_B2.established and r.cond_B2.witness == ()


def test_z3sq_four(golden):
    P = golden["z3sq_four"]
    assert dim_PG(P) == 1 and cond_B1(P)
    (s,) = summand_profile(P)
    assert set(s.characters) == {(1, 2), (2, 1)}
    assert cond_B2_lite(P).established


def test_z6_five(golden):
    P = golden["z6_five"]
    (s,) = summand_profile(P)
    assert s.characters == ((2,), (4,)) and s.dims == (2, 1)
    r = full_report(P)
    assert (r.dim_PG, r.cond_A, r.cond_B1, r.cond_B.established) == (2, True, True, True)


def test_z3sq_five(golden):
    P = golden["z3sq_five"]
    profile = summand_profile(P)
    assert len(profile) == 2 and all(s.dims == (1, 1) for s in profile)
    assert cond_A(P) and not cond_B1(P)
    v = cond_B(P)
    assert v.established and v.witness == (0, 1, 2, 3, 4)


def test_z2cube_six(golden):
    P = golden["z2cube_six"]
    profile = summand_profile(P)
    assert len(profile) == 3 and all(s.self_paired for s in profile)
    assert dim_PG(P) == 3 and not cond_B1(P) and cond_B(P).established


def test_condition_A_fails():
    P = parse_block("N=5; A=1,1,4,4; H=1")
    r = full_report(P)
    assert r.dim_PG == 2 and not r.cond_A and not r.cond_B1
    assert not r.cond_B.established and r.cond_B.witness is None


def test_self_paired_rule():
    P = parse_block("N=2; A=1,1,1,1; H=1")
    r = full_report(P)
    assert r.cond_B1 and r.b1_self_paired and r.cond_B.established


def test_catalog_lookup(tmp_path):
    # Z6 (1,3,3,5) with H = <2> has no K passing the dimension count; a catalog entry for
    # the full family (K = 0, local orders 2,2,6,6) certifies it
    path = tmp_path / "cat.csv"
    path.write_text("group_order,s,local_orders,label\n2,4,2-2-2-2,elliptic\n")
    cat = load_catalog(path)
    assert cat == {(2, 4, (2, 2, 2, 2)): "elliptic"}
    P = parse_block("N=6; A=1,3,3,5; H=2")
    assert not cond_B2_lite(P).established
    v = cond_B2_lite(P, catalog={(6, 4, (2, 2, 6, 6)): "x"})
    assert v.established and v.witness == () and "catalog" in v.note


def test_quotient_local_orders(golden):
    d = golden["z6_four"].datum
    assert quotient_local_orders(d, span([(3,)], 6)) == [3, 1, 3, 3]


def test_reports_invariant_under_relabeling():
    rng = random.Random(21)
    for _ in range(60):
        P = random_prym(rng, min_s=4, max_s=6, max_group=64)
        Q = relabel(P, rng)
        a, b = full_report(P), full_report(Q)
        assert (a.dim_PG, a.cond_A, a.cond_B1, a.b1_self_paired) == (b.dim_PG, b.cond_A, b.cond_B1, b.b1_self_paired)
        assert sorted(sorted(s.dims) for s in a.summand_profile) == sorted(sorted(s.dims) for s in b.summand_profile)


def test_reports_are_deterministic():
    rng = random.Random(22)
    for _ in range(20):
        P = random_prym(rng, min_s=4, max_s=6, max_group=64)
        assert full_report(P, seed=7) == full_report(P, seed=7)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_flag_implications(seed):
    rng = random.Random(seed)
    for _ in range(40):
        P = random_prym(rng, min_s=4, max_s=6, max_group=64)
        r = full_report(P)
        assert not r.cond_B1 or r.cond_A
        assert not r.cond_B.established or r.cond_A
        assert not r.cond_B1 or r.cond_B.established
