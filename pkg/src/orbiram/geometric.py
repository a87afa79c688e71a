"""Certified geometricity verdicts for formal orbifolds.

The engine is three-valued.  Geometric and NotGeometric are issued only
when a known criterion applies; everything else is Unknown.  Rules:

  R1  trivial branch data
  R2  purely wild data (every local group a p-group)
  R3  two-point data on P^1, one point tame of order n, the other of tame
      degree n (existence of Harbater-Katz-Gabber covers)
  R4  the lcm criterion on P^1, via a product of R3 factors
  R5  the tame characterization (an iff, so it can refute)
  R6  closure under products: tame part by R5, wild part by R2
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .localfield import RamificationProfile
from .orbifold import BranchData, FormalOrbifold, bd_join

GEOMETRIC = "Geometric"
NOT_GEOMETRIC = "NotGeometric"
UNKNOWN = "Unknown"


class Status(str, Enum):
    GEOMETRIC = GEOMETRIC
    NOT_GEOMETRIC = NOT_GEOMETRIC
    UNKNOWN = UNKNOWN


CITATIONS = {
    "R1": "trivial branch data: the identity (Y,O) -> (X,O) is a connected etale cover",
    "R2": "purely wild branch data on a smooth projective curve is geometric "
          "(pull back an HKG cover of each local p-group extension, then take products)",
    "R3": "HKG: on P^1 with support {0, inf}, Q(0) tame and the tame degree of Q(inf) "
          "equal to [Q(0):K] gives a geometric orbifold (two points moved to 0, inf by PGL_2)",
    "R4": "lcm criterion on P^1: if n_i0 = max n_i = lcm of the other tame degrees and Q(x_i0) "
          "has trivial p-Sylow or the maximum is attained twice, Q is a product of HKG data",
    "R5": "tame characterization: tame P is geometric iff X is not P^1, or |supp P| > 2, "
          "or |supp P| = 2 with equal data at both points (lifting from characteristic zero)",
    "R5/one-point": "a nontrivial tame branch data on P^1 supported at one point is not geometric: "
                  "its fundamental group is trivial",
    "R6": "products of geometric branch data are geometric: tame part by the tame "
          "characterization, wild part by the purely wild criterion",
    "none": "no implemented criterion decides this data",
}


@dataclass(frozen=True)
class Verdict:
    status: Status
    rule: str
    chain: tuple[str, ...] = ()
    decomposition: tuple[BranchData, ...] = field(default=())

    @property
    def citation(self) -> str:
        return CITATIONS[self.rule]

    def __bool__(self):
        return self.status is Status.GEOMETRIC


def split_tame_wild(P: BranchData) -> tuple[BranchData, BranchData]:
    """(P_t, P_w) with P_t tame, P_w purely wild and P = P_t P_w."""
    tame = {x: prof.tame_part() for x, prof in P.assignment}
    wild = {x: prof.wild_part() for x, prof in P.assignment}
    return BranchData(P.p, tame), BranchData(P.p, wild)


def _tame_verdict(O: FormalOrbifold, P: BranchData) -> Verdict:
    """R5 on tame data P over the curve of O."""
    if P.is_trivial():
        return Verdict(Status.GEOMETRIC, "R1", ("R1",))
    if not O.curve.is_projective_line():
        return Verdict(Status.GEOMETRIC, "R5", ("R5",))
    supp = sorted(P.support)
    if len(supp) > 2:
        return Verdict(Status.GEOMETRIC, "R5", ("R5",))
    if len(supp) == 2:
        a, b = (P[x].tame for x in supp)
        status = Status.GEOMETRIC if a == b else Status.NOT_GEOMETRIC
        return Verdict(status, "R5", ("R5",))
    return Verdict(Status.NOT_GEOMETRIC, "R5/one-point", ("R5/one-point",))


def _hkg_pair(P: BranchData) -> tuple[str, str] | None:
    """(tame point, other point) when two-point data meets the HKG shape."""
    if len(P.support) != 2:
        return None
    for a, b in (sorted(P.support), sorted(P.support, reverse=True)):
        if P[a].is_tame() and P[a].tame == P[b].tame:
            return a, b
    return None


def _lcm_witness(P: BranchData) -> tuple[BranchData, ...] | None:
    """HKG factors whose product is P, when the lcm criterion applies."""
    supp = sorted(P.support)
    if len(supp) < 2:
        return None
    n = {x: P[x].tame for x in supp}
    top = max(n.values())
    for x0 in supp:
        others = [n[x] for x in supp if x != x0]
        if n[x0] != top or math.lcm(*others) != top:
            continue
        twin = next((x for x in supp if x != x0 and n[x] == top), None)
        if not P[x0].is_tame() and twin is None:
            continue
        p = P.p
        factors = [BranchData(p, {x0: RamificationProfile(p, n[x]), x: P[x]}) for x in supp if x != x0]
        if not P[x0].is_tame():
            factors.append(BranchData(p, {x0: P[x0], twin: RamificationProfile(p, top)}))
        joined = factors[0]
        for f in factors[1:]:
            joined = bd_join(joined, f)
        if joined != P:
            raise AssertionError(f"lcm decomposition does not recover {P}")
        return tuple(factors)
    return None


def geometric_verdict(O: FormalOrbifold) -> Verdict:
    P = O.branch
    if P.is_trivial():
        return Verdict(Status.GEOMETRIC, "R1", ("R1",))
    if P.is_tame():
        return _tame_verdict(O, P)
    if P.is_purely_wild():
        return Verdict(Status.GEOMETRIC, "R2", ("R2",))
    if O.curve.is_projective_line():
        if _hkg_pair(P):
            return Verdict(Status.GEOMETRIC, "R3", ("R3",), (P,))
        factors = _lcm_witness(P)
        if factors:
            return Verdict(Status.GEOMETRIC, "R4", ("R3", "R4"), factors)
    P_t, P_w = split_tame_wild(P)
    tame = _tame_verdict(O, P_t)
    if tame.status is Status.GEOMETRIC:
        return Verdict(Status.GEOMETRIC, "R6", (*tame.chain, "R2", "R6"), (P_t, P_w))
    # mixed data whose tame part is not geometric: undecided
    return Verdict(Status.UNKNOWN, "none")


def geometric_lower_bound(O: FormalOrbifold) -> BranchData:
    """A geometric Q <= P built from certified factors; not claimed maximal."""
    P = O.branch
    if geometric_verdict(O):
        return P
    P_t, P_w = split_tame_wild(P)
    supp = sorted(P_t.support)
    if len(supp) == 2:
        g = math.gcd(*(P_t[x].tame for x in supp))
        tame = BranchData(P.p, {x: RamificationProfile(P.p, g) for x in supp})
    else:
        tame = BranchData.trivial(P.p)
    return bd_join(tame, P_w)
