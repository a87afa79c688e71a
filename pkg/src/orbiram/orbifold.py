"""Curves with branch data, morphism descriptors, and branch-data operations."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

from . import localfield as lf
from .algebra import is_prime
from .errors import NotSubextension, OrbiramError, WildBaseChange
from .localfield import RamificationProfile


@dataclass(frozen=True)
class Curve:
    """A smooth projective curve reduced to its genus and a set of named points."""

    id: str
    genus: int
    points: tuple[str, ...] = ()

    def __post_init__(self):
        if self.genus < 0:
            raise OrbiramError("genus must be nonnegative")
        pts = tuple(str(x) for x in self.points)
        if len(set(pts)) != len(pts):
            raise OrbiramError(f"duplicate point ids on curve {self.id!r}")
        object.__setattr__(self, "points", pts)

    def is_projective_line(self) -> bool:
        return self.genus == 0


def projective_line(points=("0", "1", "inf")) -> Curve:
    return Curve("P1", 0, tuple(points))


@dataclass(frozen=True)
class BranchData:
    """Finitely supported map point -> profile; absent points carry the trivial extension.

    ``assignment`` may be given as a mapping; it is normalized to a sorted
    tuple of (point, profile) pairs with trivial profiles dropped.
    """

    p: int
    assignment: tuple = ()

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise OrbiramError(f"characteristic {self.p} is not prime")
        items = self.assignment.items() if isinstance(self.assignment, Mapping) else self.assignment
        norm = {}
        for x, prof in items:
            if prof.p != self.p:
                raise OrbiramError(f"profile at {x} has p={prof.p}, expected {self.p}")
            if not prof.is_trivial():
                norm[str(x)] = prof
        object.__setattr__(self, "assignment", tuple(sorted(norm.items())))

    @classmethod
    def trivial(cls, p: int) -> BranchData:
        return cls(p)

    def __getitem__(self, x) -> RamificationProfile:
        return dict(self.assignment).get(str(x)) or RamificationProfile.trivial(self.p)

    def as_dict(self) -> dict[str, RamificationProfile]:
        return dict(self.assignment)

    @property
    def support(self) -> frozenset[str]:
        return frozenset(x for x, _ in self.assignment)

    def is_trivial(self) -> bool:
        return not self.assignment

    def is_tame(self) -> bool:
        return all(P.is_tame() for _, P in self.assignment)

    def is_purely_wild(self) -> bool:
        return all(P.tame == 1 for _, P in self.assignment)

    def __le__(self, other: BranchData) -> bool:
        return bd_leq(self, other)

    def __str__(self):
        if not self.assignment:
            return "O"
        return ", ".join(f"{x}: {P}" for x, P in self.assignment)


@dataclass(frozen=True)
class FormalOrbifold:
    curve: Curve
    branch: BranchData

    def __post_init__(self):
        extra = self.branch.support - set(self.curve.points)
        if extra:
            raise OrbiramError(f"branch points {sorted(extra)} are not on curve {self.curve.id!r}")

    @property
    def p(self):
        return self.branch.p


def _pointwise(op, P: BranchData, Q: BranchData) -> BranchData:
    if P.p != Q.p:
        raise OrbiramError("branch data over different characteristics")
    pts = P.support | Q.support
    return BranchData(P.p, {x: op(P[x], Q[x]) for x in pts})


def bd_join(P: BranchData, Q: BranchData) -> BranchData:
    return _pointwise(lf.compositum, P, Q)


def bd_meet(P: BranchData, Q: BranchData) -> BranchData:
    return _pointwise(lf.meet, P, Q)


def bd_leq(P: BranchData, Q: BranchData) -> bool:
    if P.p != Q.p:
        raise OrbiramError("branch data over different characteristics")
    return all(lf.leq(P[x], Q[x]) for x in P.support)


@dataclass(frozen=True)
class FiberRecord:
    """Image of y and the local extension K_{Y,y}/K_{X,f(y)}."""

    x: str
    local: RamificationProfile

    @property
    def e(self) -> int:
        return self.local.degree


@dataclass(frozen=True)
class MorphismDescriptor:
    """A degree-d map (Y,Q) -> (X,P) described point by point.

    ``fiber`` maps every point of Y to its FiberRecord.  Each fiber that
    appears must be complete (ramification indices summing to d), and every
    point of supp(P) must have its fiber listed.
    """

    degree: int
    source: FormalOrbifold
    target: FormalOrbifold
    fiber: tuple = field(default=())

    def __post_init__(self):
        items = self.fiber.items() if isinstance(self.fiber, Mapping) else self.fiber
        norm = {}
        for y, rec in items:
            if not isinstance(rec, FiberRecord):
                x, local = rec
                if isinstance(local, int):
                    local = RamificationProfile(self.target.p, local)
                rec = FiberRecord(str(x), local)
            norm[str(y)] = rec
        object.__setattr__(self, "fiber", tuple(sorted(norm.items())))
        if self.degree < 1:
            raise OrbiramError("degree must be positive")
        if self.source.p != self.target.p:
            raise OrbiramError("source and target over different characteristics")
        ypts, xpts = set(self.source.curve.points), set(self.target.curve.points)
        if set(norm) != ypts:
            missing = sorted(ypts - set(norm))
            raise OrbiramError(f"fiber map must cover every point of Y; missing {missing or sorted(set(norm) - ypts)}")
        sums = {}
        for y, rec in norm.items():
            if rec.x not in xpts:
                raise OrbiramError(f"image {rec.x!r} of {y!r} is not a point of X")
            sums[rec.x] = sums.get(rec.x, 0) + rec.e
        for x, s in sums.items():
            if s != self.degree:
                raise OrbiramError(f"ramification indices over {x!r} sum to {s}, expected {self.degree}")
        unlisted = self.target.branch.support - set(sums)
        if unlisted:
            raise OrbiramError(f"fibers over branch points {sorted(unlisted)} are not listed")

    def fiber_dict(self) -> dict[str, FiberRecord]:
        return dict(self.fiber)

    def e(self, y) -> int:
        return self.fiber_dict()[str(y)].e


def pullback_profile(P: RamificationProfile, E: RamificationProfile) -> RamificationProfile:
    """P K' as an extension of K', where K'/K has profile E.

    Exact for tame E, and for wild E when the wild part of P lies in E.
    """
    if E.is_tame():
        return lf.base_change_tame(P, E.degree)
    if set(P.wild) <= set(E.wild):
        return RamificationProfile(P.p, P.tame // math.gcd(P.tame, E.tame))
    raise WildBaseChange(f"cannot base change {P} along wild {E}")


def pullback_branch_data(m: MorphismDescriptor, P: BranchData | None = None) -> BranchData:
    P = m.target.branch if P is None else P
    return BranchData(P.p, {y: pullback_profile(P[rec.x], rec.local) for y, rec in m.fiber})


@dataclass(frozen=True)
class MorphismCheck:
    valid: bool
    etale: dict
    failures: dict

    def __bool__(self):
        return self.valid

    @property
    def is_etale(self) -> bool:
        return self.valid and all(self.etale.values())


def morphism_validate(m: MorphismDescriptor) -> MorphismCheck:
    """Check Q >= f*P pointwise and flag the points where f is étale."""
    Q, P = m.source.branch, m.target.branch
    etale, failures = {}, {}
    for y, rec in m.fiber:
        try:
            pulled = pullback_profile(P[rec.x], rec.local)
        except WildBaseChange as exc:
            failures[y] = str(exc)
            etale[y] = False
            continue
        if not lf.leq(pulled, Q[y]):
            failures[y] = f"Q({y}) = {Q[y]} does not contain f*P({y}) = {pulled}"
            etale[y] = False
            continue
        etale[y] = Q[y].degree * rec.e == P[rec.x].degree
    return MorphismCheck(not failures, etale, failures)


def identity_morphism(source: FormalOrbifold, target_branch: BranchData) -> MorphismDescriptor:
    target = FormalOrbifold(source.curve, target_branch)
    triv = RamificationProfile.trivial(source.p)
    return MorphismDescriptor(1, source, target, {x: FiberRecord(x, triv) for x in source.curve.points})


def compose(f: MorphismDescriptor, g: MorphismDescriptor) -> MorphismDescriptor:
    """g o f for tame descriptors f: Y -> X and g: X -> Z."""
    gf = g.fiber_dict()
    fiber = {}
    for y, rec in f.fiber:
        if not rec.local.is_tame() or not gf[rec.x].local.is_tame():
            raise WildBaseChange("composition is only modelled for tame local extensions")
        z = gf[rec.x].x
        fiber[y] = FiberRecord(z, RamificationProfile(f.source.p, rec.e * gf[rec.x].e))
    return MorphismDescriptor(f.degree * g.degree, f.source, g.target, fiber)


def fiber_product_profile(Qy: RamificationProfile, Rz: RamificationProfile, e_y: int = 1, e_z: int = 1) -> RamificationProfile:
    """Branch profile F(w) = Q(y)R(z) over K_{W,w} for tame e_y, e_z."""
    p = Qy.p
    if e_y % p == 0 or e_z % p == 0:
        raise WildBaseChange(f"local degrees {e_y}, {e_z} must be prime to p={p}")
    e_w = math.lcm(e_y, e_z)
    return lf.compositum(lf.base_change_tame(Qy, e_w // e_y), lf.base_change_tame(Rz, e_w // e_z))


def branch_data_of_cover(spec) -> BranchData:
    """B_f for an explicit Kummer or Artin-Schreier cover of P^1."""
    from .covers import cover_branch_data

    return cover_branch_data(spec)


def relative_degram(Q: RamificationProfile, E: RamificationProfile, P: RamificationProfile) -> tuple[int, int]:
    """(degram(Q/P), [Q:P]) where Q lives over K_Y, K_Y/K_X has profile E, and P over K_X."""
    dQ, dP = Q.degree, P.degree
    total = lf.degram(Q) + dQ * lf.degram(E)
    if (dQ * E.degree) % dP:
        raise NotSubextension(f"[Q:K_X] = {dQ * E.degree} is not divisible by [P:K_X] = {dP}")
    rel = dQ * E.degree // dP
    value = total - rel * lf.degram(P)
    if value < 0:
        raise NotSubextension(f"negative relative different {value}")
    return value, rel


# -- JSON documents --

def curve_from_dict(doc) -> Curve:
    if not isinstance(doc, dict):
        raise OrbiramError("curve must be a JSON object")
    try:
        return Curve(str(doc.get("id", "X")), int(doc["genus"]), tuple(doc.get("points", ())))
    except (KeyError, TypeError, ValueError) as exc:
        raise OrbiramError(f"bad curve document: {exc}") from None


def branch_from_dict(doc, p: int, prefix: str = "") -> BranchData:
    if not isinstance(doc, dict):
        raise OrbiramError("branch must be a JSON object")
    return BranchData(p, {x: lf.profile_from_dict(v, p, f"{prefix}{x}") for x, v in doc.items()})


def orbifold_from_dict(doc) -> FormalOrbifold:
    """{"curve":{"id":"P1","genus":0,"points":[...]},"p":2,"branch":{...}}."""
    if not isinstance(doc, dict) or "p" not in doc:
        raise OrbiramError("orbifold document needs 'p'")
    p = doc["p"]
    if not isinstance(p, int):
        raise OrbiramError("'p' must be an integer")
    branch = branch_from_dict(doc.get("branch", {}), p)
    cdoc = dict(doc.get("curve", {"id": "P1", "genus": 0}))
    cdoc.setdefault("points", sorted(branch.support))
    return FormalOrbifold(curve_from_dict(cdoc), branch)


def branch_to_dict(P: BranchData) -> dict:
    return {x: lf.profile_to_dict(prof, with_p=False) for x, prof in P.assignment}


def orbifold_to_dict(O: FormalOrbifold) -> dict:
    return {
        "curve": {"id": O.curve.id, "genus": O.curve.genus, "points": list(O.curve.points)},
        "p": O.p,
        "branch": branch_to_dict(O.branch),
    }


def morphism_from_dict(doc) -> MorphismDescriptor:
    """Morphism document.

    {"p":2,"degree":2,"source":{curve},"target":{curve},
     "records":[{"y":..,"x":..,"e":2 | "local":{profile},"Q":{profile},"P":{profile}}]}
    """
    if not isinstance(doc, dict):
        raise OrbiramError("morphism document must be a JSON object")
    try:
        p, degree = doc["p"], doc["degree"]
        records = doc["records"]
        src, tgt = curve_from_dict(doc["source"]), curve_from_dict(doc["target"])
    except KeyError as exc:
        raise OrbiramError(f"morphism document is missing {exc}") from None
    if not isinstance(records, list):
        raise OrbiramError("'records' must be a list")
    Q, P, fiber = {}, {}, {}
    for i, rec in enumerate(records):
        if not isinstance(rec, dict) or "y" not in rec or "x" not in rec:
            raise OrbiramError(f"record {i} needs 'y' and 'x'")
        y, x = str(rec["y"]), str(rec["x"])
        if "local" in rec:
            local = lf.profile_from_dict(rec["local"], p, f"E{y}")
        else:
            local = RamificationProfile(p, int(rec.get("e", 1)))
        fiber[y] = FiberRecord(x, local)
        if "Q" in rec:
            Q[y] = lf.profile_from_dict(rec["Q"], p, f"Q{y}")
        if "P" in rec:
            prof = lf.profile_from_dict(rec["P"], p, f"P{x}")
            if x in P and P[x] != prof:
                raise OrbiramError(f"conflicting P profiles given at {x!r}")
            P[x] = prof
    return MorphismDescriptor(
        degree, FormalOrbifold(src, BranchData(p, Q)), FormalOrbifold(tgt, BranchData(p, P)), fiber
    )
