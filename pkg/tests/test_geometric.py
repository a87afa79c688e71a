import itertools

import pytest

from orbiram.covers import base_orbifold, analyze, random_cover_spec
from orbiram.geometric import Status, geometric_lower_bound, geometric_verdict, split_tame_wild
from orbiram.localfield import RamificationProfile as R, WildComponent as W
from orbiram.orbifold import BranchData, Curve, FormalOrbifold, bd_join, bd_leq

PTS = ("0", "1", "inf")


def orb(branch, genus=0, p=3):
    return FormalOrbifold(Curve("X", genus, PTS), BranchData(p, branch))


def wild(label, m, n=1, p=3):
    return R(p, n, (W(label, m),))


def test_split_examples():
    tame = BranchData(3, {"0": R(3, 2)})
    assert split_tame_wild(tame) == (tame, BranchData(3))
    pw = BranchData(3, {"0": wild("a", 1)})
    assert split_tame_wild(pw) == (BranchData(3), pw)
    mixed = BranchData(2, {"x": R(2, 3, (W("a", 1),))})
    P_t, P_w = split_tame_wild(mixed)
    assert P_t == BranchData(2, {"x": R(2, 3)}) and P_w == BranchData(2, {"x": R(2, 1, (W("a", 1),))})
    assert bd_join(P_t, P_w) == mixed


@pytest.mark.parametrize("branch,genus,status,rule", [
    ({}, 0, Status.GEOMETRIC, "R1"),
    ({}, 3, Status.GEOMETRIC, "R1"),
    ({"0": R(3, 2)}, 0, Status.NOT_GEOMETRIC, "R5/one-point"),
    ({"0": R(3, 4), "inf": wild("a", 1, 4)}, 0, Status.GEOMETRIC, "R3"),
    ({"1": R(3, 4), "0": wild("a", 2, 4)}, 0, Status.GEOMETRIC, "R3"),
    ({"0": wild("a", 1), "1": wild("b", 5)}, 0, Status.GEOMETRIC, "R2"),
    ({"0": R(3, 2)}, 1, Status.GEOMETRIC, "R5"),
    ({"0": R(3, 2), "1": R(3, 4)}, 0, Status.NOT_GEOMETRIC, "R5"),
    ({"0": R(3, 4), "1": R(3, 4)}, 0, Status.GEOMETRIC, "R5"),
    ({"0": R(3, 2), "1": R(3, 4), "inf": R(3, 5)}, 0, Status.GEOMETRIC, "R5"),
    ({"0": wild("a", 1, 4), "1": R(3, 4), "inf": wild("b", 2, 2)}, 0, Status.GEOMETRIC, "R4"),
    ({"0": wild("a", 1, 2), "1": R(3, 2), "inf": R(3, 4)}, 0, Status.GEOMETRIC, "R6"),
    ({"0": wild("a", 1, 2)}, 1, Status.GEOMETRIC, "R6"),
    ({"0": wild("a", 1, 2)}, 0, Status.UNKNOWN, "none"),
    ({"0": wild("a", 1, 2), "1": R(3, 4)}, 0, Status.UNKNOWN, "none"),
])
def test_verdict_suite(branch, genus, status, rule):
    v = geometric_verdict(orb(branch, genus))
    assert (v.status, v.rule) == (status, rule)
    assert v.citation
    if status is Status.GEOMETRIC:
        assert v.chain


def test_lcm_witness_recovers_data():
    P = {"0": wild("a", 1, 4), "1": R(3, 4), "inf": wild("b", 2, 2)}
    v = geometric_verdict(orb(P))
    joined = v.decomposition[0]
    for f in v.decomposition[1:]:
        joined = bd_join(joined, f)
    assert joined == BranchData(3, P)
    for factor in v.decomposition:
        assert len(factor.support) == 2
        assert geometric_verdict(orb(factor.as_dict())).status is Status.GEOMETRIC


def _small_sweep():
    """P^1, <= 3 points, tame orders <= 6, <= 1 wild component per point."""
    p = 5
    local = [None] + [R(p, n) for n in range(1, 7) if n % p] + \
        [R(p, n, (W(f"w{m}", m),)) for n in range(1, 7) if n % p for m in (1, 2)]
    for choice in itertools.product(local, repeat=3):
        yield {x: P for x, P in zip(PTS, choice) if P is not None}


def test_no_contradictory_certificates():
    p = 5
    for branch in _small_sweep():
        # relabel so each point has its own component
        branch = {x: R(p, P.tame, tuple(W(f"{x}{c.label}", c.jump) for c in P.wild)) for x, P in branch.items()}
        O = orb(branch, p=p)
        v = geometric_verdict(O)
        if v.status is Status.NOT_GEOMETRIC:
            assert O.branch.is_tame() and v.rule in ("R5", "R5/one-point")
        lb = geometric_lower_bound(O)
        assert bd_leq(lb, O.branch)
        assert geometric_verdict(FormalOrbifold(O.curve, lb)).status is not Status.NOT_GEOMETRIC
        # R6 monotonicity: geometric parts give geometric joins
        P_t, P_w = split_tame_wild(O.branch)
        if geometric_verdict(FormalOrbifold(O.curve, P_t)) and geometric_verdict(FormalOrbifold(O.curve, P_w)):
            assert v.status is Status.GEOMETRIC


def test_genus_one_tame_always_geometric():
    for branch in _small_sweep():
        tame = {x: P.tame_part() for x, P in branch.items()}
        assert geometric_verdict(orb(tame, genus=1, p=5)).status is Status.GEOMETRIC


@pytest.mark.parametrize("family,q", [("kummer", 13), ("artin_schreier", 8), ("artin_schreier", 9)])
def test_cover_branch_data_never_refuted(family, q):
    for seed in range(40):
        a = analyze(random_cover_spec(family, seed, q))
        assert geometric_verdict(base_orbifold(a, "B_f")).status is not Status.NOT_GEOMETRIC
