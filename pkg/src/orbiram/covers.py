"""Explicit cyclic covers of P^1 over GF(q): the ground-truth oracle.

Kummer covers y^n = prod (x - c)^{a_c} and Artin-Schreier covers
y^p - y = f.  The genus of Y comes from the classical Riemann-Hurwitz
formula on Y, with local differents obtained from the explicit
ramification (valuations of the Kummer divisor, pole orders of the
Artin-Schreier reduced f) through Hilbert's formula.  Orbifold genera on
(P^1, B_f) go through the character-sum different instead, so the étale
identity below compares two independent computations.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from . import localfield as lf
from .algebra import (
    GF, INF, FiniteField, Polynomial, RationalFunction, as_reduce, format_expression, parse_rational_function,
)
from .errors import DisconnectedCover, KummerDegreeError, OrbiramError
from .genus import GaloisCoverRecord, InertiaRecord, orbifold_genus
from .localfield import RamificationProfile, WildComponent
from .orbifold import BranchData, Curve, FiberRecord, FormalOrbifold, MorphismDescriptor


@dataclass(frozen=True)
class KummerCoverSpec:
    """y^n = prod_c (x - c)^{a_c}; ``divisor`` maps element codes to exponents."""

    field: FiniteField
    n: int
    divisor: tuple = ()

    def __post_init__(self):
        items = self.divisor.items() if isinstance(self.divisor, Mapping) else self.divisor
        norm = {}
        for c, a in items:
            c = self.field.parse_element(c) if isinstance(c, str) else c
            if not 0 <= c < self.field.q:
                raise OrbiramError(f"{c} is not an element of {self.field!r}")
            norm[c] = norm.get(c, 0) + int(a)
        object.__setattr__(self, "divisor", tuple(sorted((c, a) for c, a in norm.items() if a)))
        p, q = self.field.p, self.field.q
        if self.n < 2 or self.n % p == 0:
            raise OrbiramError(f"Kummer degree {self.n} must be >= 2 and prime to p={p}")
        if (q - 1) % self.n:
            raise KummerDegreeError(f"n={self.n} does not divide q-1={q - 1}")

    family = "kummer"

    @property
    def degree(self):
        return self.n

    def infinity_exponent(self) -> int:
        return -sum(a for _, a in self.divisor)


@dataclass(frozen=True)
class ArtinSchreierCoverSpec:
    """y^p - y = f over GF(q), p the characteristic."""

    f: RationalFunction

    family = "artin_schreier"

    @property
    def field(self):
        return self.f.field

    @property
    def degree(self):
        return self.field.p

    def reduced(self) -> ArtinSchreierCoverSpec:
        return ArtinSchreierCoverSpec(as_reduce(self.f).reduced)


@dataclass(frozen=True)
class BranchPoint:
    e: int
    profile: RamificationProfile
    fiber_size: int
    local_different: int


@dataclass(frozen=True)
class CoverAnalysis:
    family: str
    field: FiniteField
    degree: int
    genus: int
    branch: tuple  # sorted (label, BranchPoint)
    galois_order: int

    def branch_dict(self) -> dict[str, BranchPoint]:
        return dict(self.branch)


def _kummer_branch(spec: KummerCoverSpec) -> dict[str, BranchPoint]:
    n, F = spec.n, spec.field
    p = F.p
    out = {}
    points = [(F.format_element(c), a) for c, a in spec.divisor] + [(INF, spec.infinity_exponent())]
    for label, a in points:
        e = n // math.gcd(n, a)
        if e > 1:
            prof = RamificationProfile(p, e)
            diff = lf.hilbert_sum(lf.lower_filtration(prof))
            out[label] = BranchPoint(e, prof, n // e, diff)
    return out


def _as_label(reduced: RationalFunction) -> str:
    return f"AS({reduced})"


def _as_branch(spec: ArtinSchreierCoverSpec) -> dict[str, BranchPoint]:
    red = as_reduce(spec.f)
    p = spec.field.p
    label = _as_label(red.reduced)
    out = {}
    for x, m in red.poles.items():
        prof = RamificationProfile(p, 1, (WildComponent(label, m),))
        # lower filtration of Z/p with its single break at m: G_0 = ... = G_m
        diff = lf.hilbert_sum(lf.lower_filtration(prof))
        out[x] = BranchPoint(p, prof, 1, diff)
    return out


def analyze_kummer(spec: KummerCoverSpec) -> CoverAnalysis:
    n = spec.n
    if math.gcd(n, *(a for _, a in spec.divisor)) != 1:
        raise DisconnectedCover(f"y^{n} = h with h a perfect power splits over the algebraic closure")
    branch = _kummer_branch(spec)
    return _finish("kummer", spec.field, n, branch)


def analyze_artin_schreier(spec: ArtinSchreierCoverSpec) -> CoverAnalysis:
    branch = _as_branch(spec)
    if not branch:
        raise DisconnectedCover("f is in the image of g -> g^p - g up to a constant; the cover splits")
    return _finish("artin_schreier", spec.field, spec.field.p, branch)


def _finish(family, F, d, branch):
    # classical Riemann-Hurwitz on Y -> P^1
    two_g_minus_2 = -2 * d + sum(b.fiber_size * b.local_different for b in branch.values())
    if two_g_minus_2 % 2:
        raise AssertionError(f"odd Euler characteristic {two_g_minus_2}")
    g = two_g_minus_2 // 2 + 1
    if g < 0:
        raise AssertionError(f"negative genus {g}")
    for b in branch.values():
        assert b.fiber_size * b.e == d
    return CoverAnalysis(family, F, d, g, tuple(sorted(branch.items())), d)


def analyze(spec) -> CoverAnalysis:
    if isinstance(spec, KummerCoverSpec):
        return analyze_kummer(spec)
    if isinstance(spec, ArtinSchreierCoverSpec):
        return analyze_artin_schreier(spec)
    raise TypeError(f"not a cover spec: {spec!r}")


def cover_branch_data(spec) -> BranchData:
    if isinstance(spec, KummerCoverSpec):
        branch = _kummer_branch(spec)
    elif isinstance(spec, ArtinSchreierCoverSpec):
        branch = _as_branch(spec)
    else:
        raise TypeError(f"not a cover spec: {spec!r}")
    return BranchData(spec.field.p, {x: b.profile for x, b in branch.items()})


def base_orbifold(analysis: CoverAnalysis, target: str = "B_f") -> FormalOrbifold:
    labels = tuple(x for x, _ in analysis.branch)
    p = analysis.field.p
    if target == "B_f":
        P = BranchData(p, {x: b.profile for x, b in analysis.branch})
    elif target == "O":
        P = BranchData.trivial(p)
    else:
        raise ValueError(f"unknown target branch data {target!r}")
    return FormalOrbifold(Curve("P1", 0, labels), P)


def etale_identity_residual(spec) -> Fraction:
    """g(P^1, B_f) - (1 + (g(Y) - 1)/d); zero for every Galois cover."""
    a = analyze(spec)
    return orbifold_genus(base_orbifold(a, "B_f")) - (1 + Fraction(a.genus - 1, a.degree))


def cover_descriptor(analysis: CoverAnalysis, target: str = "B_f") -> MorphismDescriptor:
    """(Y, O) -> (P^1, P) with P = B_f or P = O."""
    X = base_orbifold(analysis, target)
    fiber = {}
    for x, b in analysis.branch:
        for i in range(b.fiber_size):
            fiber[f"{x}~{i}"] = FiberRecord(x, b.profile)
    Y = FormalOrbifold(Curve("Y", analysis.genus, tuple(fiber)), BranchData.trivial(analysis.field.p))
    return MorphismDescriptor(analysis.degree, Y, X, fiber)


def galois_record(analysis: CoverAnalysis, target: str = "O") -> GaloisCoverRecord:
    """Galois data of (Y, O) -> (P^1, P) for P = O or P = B_f."""
    p = analysis.field.p
    recs = []
    for x, b in analysis.branch:
        if target == "O":
            recs.append(InertiaRecord(x, b.profile))
        elif target == "B_f":
            recs.append(InertiaRecord(x, RamificationProfile.trivial(p), p_profile=b.profile))
        else:
            raise ValueError(f"unknown target branch data {target!r}")
    return GaloisCoverRecord(analysis.galois_order, 0, analysis.genus, tuple(recs))


# -- brute-force point counts --

def point_count_bounds(spec) -> tuple[int, int]:
    """Bounds on #Y(GF(q)) for the smooth projective model of the cover.

    Points over non-special x are counted by brute force over y; over
    special x (branch points, divisor support, infinity) only the number
    of geometric points is known, giving the bounds.
    """
    F = spec.field
    if isinstance(spec, KummerCoverSpec):
        n = spec.n
        special = {c: math.gcd(n, a) for c, a in spec.divisor}
        h = RationalFunction.constant(F, 1)
        for c, a in spec.divisor:
            h = h * RationalFunction(Polynomial(F, (F.neg(c), 1))) ** a
        powers = {}
        for y in F.elements():
            v = F.pow(y, n)
            powers[v] = powers.get(v, 0) + 1
        exact = sum(powers.get(_eval(h, c), 0) for c in F.elements() if c not in special)
        hi = sum(special.values()) + math.gcd(n, spec.infinity_exponent())
        return exact, exact + hi
    red = as_reduce(spec.f)
    f = red.reduced
    p = F.p
    pole_pts = {F.parse_element(x) for x in red.poles if x != INF}
    images = {}
    for y in F.elements():
        v = F.sub(F.pow(y, p), y)
        images[v] = images.get(v, 0) + 1
    exact = sum(images.get(_eval(f, c), 0) for c in F.elements() if c not in pole_pts)
    exact += len(red.poles)  # one rational point over each rational pole
    hi = 0 if INF in red.poles else p
    return exact, exact + hi


def _eval(f: RationalFunction, c: int) -> int:
    return f.field.div(f.num(c), f.den(c))


def weil_compatible(spec, genus: int) -> bool:
    """Some value in the point-count bounds satisfies |N - q - 1| <= 2 g sqrt(q)."""
    lo, hi = point_count_bounds(spec)
    q = spec.field.q
    for N in range(lo, hi + 1):
        dev = N - q - 1
        if dev * dev <= 4 * genus * genus * q:
            return True
    return False


# -- random specs --

def _divisors_in(q, lo, hi):
    return [n for n in range(lo, hi + 1) if (q - 1) % n == 0]


def random_cover_spec(family: str, seed: int, q: int | None = None, *, max_n: int = 5,
                      max_pole_order: int = 7, max_points: int = 3):
    """A deterministic random Kummer or Artin-Schreier spec.

    Artin-Schreier functions are drawn unreduced (pole orders up to
    ``max_pole_order``, possibly divisible by p) but always have at least
    one pole after reduction.
    """
    rng = random.Random(seed)
    if family == "kummer":
        F = GF(q or 13)
        ns = _divisors_in(F.q, 2, max_n)
        if not ns:
            raise KummerDegreeError(f"no n in [2, {max_n}] divides q-1={F.q - 1}")
        n = rng.choice(ns)
        k = rng.randint(1, min(max_points, F.q))
        pts = rng.sample(range(F.q), k)
        exps = [rng.randint(1, n - 1) for _ in pts]
        if math.gcd(n, *exps) != 1:
            exps[0] = 1
        return KummerCoverSpec(F, n, dict(zip(pts, exps)))
    if family == "artin_schreier":
        F = GF(q or 8)
        while True:
            f = _random_principal_parts(F, rng, max_pole_order, max_points)
            if as_reduce(f).poles:
                return ArtinSchreierCoverSpec(f)
    raise OrbiramError(f"unknown cover family {family!r}")


def _random_principal_parts(F, rng, max_order, max_points):
    nfin = rng.randint(0, min(max_points, F.q))
    use_inf = nfin == 0 or rng.random() < 0.5
    f = RationalFunction.constant(F, rng.randrange(F.q))
    X = RationalFunction.x(F)
    for c in rng.sample(range(F.q), nfin):
        t = (X - RationalFunction.constant(F, c)).inverse()
        f = f + _random_local(F, rng, t, max_order)
    if use_inf:
        f = f + _random_local(F, rng, X, max_order)
    return f


def _random_local(F, rng, t, max_order):
    m = rng.randint(1, max_order)
    out = RationalFunction.constant(F, 0)
    for k in range(1, m + 1):
        c = rng.randrange(1, F.q) if k == m else rng.randrange(F.q)
        if c:
            out = out + RationalFunction.constant(F, c) * t ** k
    return out


# -- JSON documents --

def spec_from_dict(doc):
    """{"family":"artin_schreier","q":8,"f":"x^3"} or {"family":"kummer","q":7,"n":3,"divisor":{"0":1}}."""
    if not isinstance(doc, dict):
        raise OrbiramError("cover document must be a JSON object")
    family, q = doc.get("family"), doc.get("q")
    if not isinstance(q, int):
        raise OrbiramError("cover document needs an integer 'q'")
    F = GF(q)
    if family == "artin_schreier":
        f = doc.get("f")
        if not isinstance(f, str):
            raise OrbiramError("artin_schreier cover needs a string 'f'")
        return ArtinSchreierCoverSpec(parse_rational_function(F, f))
    if family == "kummer":
        n, div = doc.get("n"), doc.get("divisor", {})
        if not isinstance(n, int) or not isinstance(div, dict):
            raise OrbiramError("kummer cover needs integer 'n' and object 'divisor'")
        try:
            divisor = {F.parse_element(c): int(a) for c, a in div.items()}
        except ValueError as exc:
            raise OrbiramError(f"bad divisor: {exc}") from None
        return KummerCoverSpec(F, n, divisor)
    raise OrbiramError(f"unknown cover family {family!r}")


def spec_to_dict(spec) -> dict:
    F = spec.field
    if isinstance(spec, KummerCoverSpec):
        return {"family": "kummer", "q": F.q, "n": spec.n,
                "divisor": {F.format_element(c): a for c, a in spec.divisor}}
    return {"family": "artin_schreier", "q": F.q, "f": format_expression(spec.f)}
