"""Ramification profiles of finite abelian extensions of k((t)).

A profile models a totally ramified Galois extension L/k((t)) with group
Z/n x (Z/p)^r: a tame cyclic part of order n (prime to p) and r
independent Artin-Schreier components, each carrying an identity label
and an upper ramification jump m prime to p.

Two independent routes compute the different exponent:

* ``degram``: conductor-discriminant sum over the characters of G;
* ``hilbert_sum``: Hilbert's formula sum_i (|G_i| - 1) over the lower
  filtration rebuilt from the upper jumps through Herbrand's psi.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .algebra import is_prime
from .errors import LabelJumpMismatch, NotSubextension, OrbiramError, WildBaseChange

_fresh = itertools.count()


def fresh_label() -> str:
    return f"~{next(_fresh)}"


@dataclass(frozen=True, order=True)
class WildComponent:
    label: str
    jump: int


@dataclass(frozen=True)
class RamificationProfile:
    p: int
    tame: int = 1
    wild: tuple[WildComponent, ...] = ()

    def __post_init__(self):
        if not is_prime(self.p):
            raise OrbiramError(f"residue characteristic {self.p} is not prime")
        if self.tame < 1 or self.tame % self.p == 0:
            raise OrbiramError(f"tame order {self.tame} must be positive and prime to p={self.p}")
        comps = []
        for c in self.wild:
            if not isinstance(c, WildComponent):
                c = WildComponent(*c) if isinstance(c, tuple) else WildComponent(fresh_label(), c)
            if c.jump < 1 or c.jump % self.p == 0:
                raise OrbiramError(f"jump {c.jump} must be positive and prime to p={self.p}")
            comps.append(c)
        labels = [c.label for c in comps]
        if len(set(labels)) != len(labels):
            raise OrbiramError(f"duplicate wild labels {labels}")
        object.__setattr__(self, "wild", tuple(sorted(comps)))

    @classmethod
    def trivial(cls, p: int) -> RamificationProfile:
        return cls(p)

    @classmethod
    def from_jumps(cls, p: int, tame: int = 1, jumps: Iterable[int] = ()) -> RamificationProfile:
        """Profile whose wild components get fresh, pairwise distinct labels."""
        return cls(p, tame, tuple(WildComponent(fresh_label(), m) for m in jumps))

    @property
    def r(self) -> int:
        return len(self.wild)

    @property
    def jumps(self) -> tuple[int, ...]:
        return tuple(sorted(c.jump for c in self.wild))

    @property
    def degree(self) -> int:
        return self.tame * self.p ** self.r

    @property
    def wild_degree(self) -> int:
        return self.p ** self.r

    def is_trivial(self) -> bool:
        return self.tame == 1 and not self.wild

    def is_tame(self) -> bool:
        return not self.wild

    def is_purely_wild(self) -> bool:
        return self.tame == 1 and bool(self.wild)

    def tame_part(self) -> RamificationProfile:
        return RamificationProfile(self.p, self.tame)

    def wild_part(self) -> RamificationProfile:
        return RamificationProfile(self.p, 1, self.wild)

    def __str__(self):
        parts = []
        if self.tame > 1 or not self.wild:
            parts.append(f"tame {self.tame}")
        if self.wild:
            parts.append("wild{" + ", ".join(f"{c.label}:{c.jump}" for c in self.wild) + "}")
        return " * ".join(parts)


def degram(P: RamificationProfile) -> int:
    """Valuation of the different via the conductor-discriminant formula.

    Tame characters contribute conductor 1; a character whose wild part
    involves the components in a nonzero vector v contributes
    1 + max jump on the support of v.
    """
    jumps = [c.jump for c in P.wild]
    total = P.tame - 1
    for v in itertools.product(range(P.p), repeat=len(jumps)):
        support = [m for m, vi in zip(jumps, v) if vi]
        if support:
            total += P.tame * (1 + max(support))
    return total


@dataclass(frozen=True)
class HerbrandFn:
    """Piecewise-linear psi with psi(0) = 0.

    ``breakpoints[j] = (u_j, slope_j)`` means psi has slope ``slope_j`` on
    (u_{j-1}, u_j] (u_{-1} = 0); the last slope continues past the last
    breakpoint.
    """

    breakpoints: tuple[tuple[Fraction, int], ...]
    final_slope: int

    def __call__(self, u) -> Fraction:
        u = Fraction(u)
        if u <= 0:
            return u
        val, prev = Fraction(0), Fraction(0)
        for b, slope in self.breakpoints:
            if u <= b:
                return val + slope * (u - prev)
            val += slope * (b - prev)
            prev = b
        return val + self.final_slope * (u - prev)

    def inverse(self, v) -> Fraction:
        """Herbrand's phi."""
        v = Fraction(v)
        if v <= 0:
            return v
        val, prev = Fraction(0), Fraction(0)
        for b, slope in self.breakpoints:
            nxt = val + slope * (b - prev)
            if v <= nxt:
                return prev + (v - val) / slope
            val, prev = nxt, b
        return prev + (v - val) / self.final_slope


def upper_group_order(P: RamificationProfile, u) -> int:
    """|G^u| for the upper numbering filtration."""
    if u <= 0:
        return P.degree
    return P.p ** sum(1 for c in P.wild if c.jump >= u)


def herbrand_function(P: RamificationProfile) -> HerbrandFn:
    """psi(u) = integral_0^u [G^0 : G^w] dw."""
    bps = []
    for u in sorted(set(P.jumps)):
        bps.append((Fraction(u), P.degree // upper_group_order(P, u)))
    return HerbrandFn(tuple(bps), P.degree)


def herbrand_psi(P: RamificationProfile, u) -> Fraction:
    return herbrand_function(P)(u)


def lower_filtration(P: RamificationProfile) -> list[tuple[int, int]]:
    """Lower ramification breaks as [(l_0 = 0, |G_0|), (l_1, |G_{l_1}|), ...].

    The group G_i has the order listed at the first entry with l >= i, and
    is trivial beyond the last break.
    """
    psi = herbrand_function(P)
    out = [(0, P.degree)]
    for u in sorted(set(P.jumps)):
        lb = psi(u)
        if lb.denominator != 1:
            raise AssertionError(f"non-integral lower break {lb} for {P}")
        out.append((int(lb), upper_group_order(P, u)))
    return out


def hilbert_sum(filtration: list[tuple[int, int]]) -> int:
    """sum_{i >= 0} (|G_i| - 1) for a filtration from ``lower_filtration``."""
    (_, g0), rest = filtration[0], filtration[1:]
    total, prev = g0 - 1, 0
    for lb, order in rest:
        total += (lb - prev) * (order - 1)
        prev = lb
    return total


def _check_p(a, b):
    if a.p != b.p:
        raise OrbiramError(f"profiles over different characteristics {a.p} and {b.p}")


def _labels(P):
    return {c.label: c.jump for c in P.wild}


def compositum(a: RamificationProfile, b: RamificationProfile) -> RamificationProfile:
    _check_p(a, b)
    merged = _labels(a)
    for label, jump in _labels(b).items():
        if merged.get(label, jump) != jump:
            raise LabelJumpMismatch(f"label {label!r} has jumps {merged[label]} and {jump}")
        merged[label] = jump
    return RamificationProfile(a.p, math.lcm(a.tame, b.tame), tuple(WildComponent(*kv) for kv in merged.items()))


def meet(a: RamificationProfile, b: RamificationProfile) -> RamificationProfile:
    _check_p(a, b)
    la, lb = _labels(a), _labels(b)
    common = []
    for label in la.keys() & lb.keys():
        if la[label] != lb[label]:
            raise LabelJumpMismatch(f"label {label!r} has jumps {la[label]} and {lb[label]}")
        common.append(WildComponent(label, la[label]))
    return RamificationProfile(a.p, math.gcd(a.tame, b.tame), tuple(common))


def leq(a: RamificationProfile, b: RamificationProfile) -> bool:
    _check_p(a, b)
    return b.tame % a.tame == 0 and set(a.wild) <= set(b.wild)


def base_change_tame(P: RamificationProfile, e: int) -> RamificationProfile:
    """Profile of P(x)K' over K' = k((t^(1/e)))."""
    if e < 1:
        raise OrbiramError("base change degree must be positive")
    if e % P.p == 0:
        raise WildBaseChange(f"degree {e} is divisible by p={P.p}")
    return RamificationProfile(
        P.p, P.tame // math.gcd(P.tame, e), tuple(WildComponent(c.label, e * c.jump) for c in P.wild)
    )


def degram_relative(sub: RamificationProfile, full: RamificationProfile) -> int:
    """Different exponent of full/sub from the tower formula."""
    if not leq(sub, full):
        raise NotSubextension(f"{sub} is not contained in {full}")
    value = degram(full) - (full.degree // sub.degree) * degram(sub)
    if value < 0:
        raise NotSubextension(f"negative relative different for {sub} in {full}")
    return value


def relative_hilbert_sum(sub: RamificationProfile, full: RamificationProfile) -> int:
    """Different exponent of full/sub by Hilbert's formula on H = Gal(full/sub).

    Lower numbering restricts to subgroups: H_i = G_i intersected with H.
    Independent of the tower formula used by ``degram_relative``.
    """
    if not leq(sub, full):
        raise NotSubextension(f"{sub} is not contained in {full}")
    sub_labels = {c.label for c in sub.wild}
    h_tame = full.tame // sub.tame
    h_wild = [c for c in full.wild if c.label not in sub_labels]
    total = h_tame * full.p ** len(h_wild) - 1
    prev = 0
    psi = herbrand_function(full)
    for u in sorted(set(full.jumps)):
        lb = int(psi(u))
        order = full.p ** sum(1 for c in h_wild if c.jump >= u)
        total += (lb - prev) * (order - 1)
        prev = lb
    return total


def profile_from_dict(doc: dict, p: int | None = None, label_prefix: str = "") -> RamificationProfile:
    """Parse {"p":2,"tame":3,"wild":[{"label":"a","jump":1}]}.

    Unlabeled components get labels unique within ``label_prefix``.
    """
    if not isinstance(doc, dict):
        raise OrbiramError("profile must be a JSON object")
    pp = doc.get("p", p)
    if pp is None:
        raise OrbiramError("profile is missing 'p'")
    if p is not None and pp != p:
        raise OrbiramError(f"profile p={pp} differs from enclosing p={p}")
    tame = doc.get("tame", 1)
    wild = doc.get("wild", [])
    if not isinstance(tame, int) or not isinstance(wild, list):
        raise OrbiramError("'tame' must be an integer and 'wild' a list")
    comps = []
    for i, w in enumerate(wild):
        if isinstance(w, int):
            w = {"jump": w}
        if not isinstance(w, dict) or not isinstance(w.get("jump"), int):
            raise OrbiramError(f"wild component {w!r} needs an integer 'jump'")
        comps.append(WildComponent(str(w.get("label", f"{label_prefix}#{i}")), w["jump"]))
    return RamificationProfile(pp, tame, tuple(comps))


def profile_to_dict(P: RamificationProfile, with_p: bool = True) -> dict:
    out = {"tame": P.tame, "wild": [{"label": c.label, "jump": c.jump} for c in P.wild]}
    if with_p:
        out = {"p": P.p, **out}
    return out
