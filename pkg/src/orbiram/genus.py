"""Orbifold genus, ramification divisors and Riemann-Hurwitz residuals.

All quantities are exact Fractions.  A residual is LHS - RHS of a
Riemann-Hurwitz identity; it is identically zero for consistent input.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from . import localfield as lf
from .errors import NotSubextension, OrbiramError
from .localfield import RamificationProfile
from .orbifold import FormalOrbifold, MorphismDescriptor, morphism_validate, relative_degram


@dataclass(frozen=True)
class QDivisor:
    coefficients: tuple = ()

    def __post_init__(self):
        items = self.coefficients.items() if isinstance(self.coefficients, Mapping) else self.coefficients
        norm = {str(y): Fraction(c) for y, c in items if c}
        object.__setattr__(self, "coefficients", tuple(sorted(norm.items())))

    @property
    def degree(self) -> Fraction:
        return sum((c for _, c in self.coefficients), Fraction(0))

    def as_dict(self) -> dict[str, Fraction]:
        return dict(self.coefficients)

    def is_zero(self) -> bool:
        return not self.coefficients


def profile_genus_contribution(P: RamificationProfile) -> Fraction:
    """degram(P)/[P:K], the per-point term of the orbifold genus (before the 1/2)."""
    return Fraction(lf.degram(P), P.degree)


def orbifold_genus(O: FormalOrbifold) -> Fraction:
    """g(X) + 1/2 sum_{x in supp P} degram(P(x)) / [P(x):K_x]."""
    extra = sum((profile_genus_contribution(P) for _, P in O.branch.assignment), Fraction(0))
    return O.curve.genus + extra / 2


def ramification_divisor(m: MorphismDescriptor) -> QDivisor:
    """sum_y degram(Q(y)/P(f(y))) / [Q(y):K_{Y,y}] y."""
    check = morphism_validate(m)
    if not check:
        raise NotSubextension(f"not a morphism of formal orbifolds: {check.failures}")
    Q, P = m.source.branch, m.target.branch
    coeffs = {}
    for y, rec in m.fiber:
        value, _ = relative_degram(Q[y], rec.local, P[rec.x])
        coeffs[y] = Fraction(value, Q[y].degree)
    return QDivisor(coeffs)


def rh_residual(m: MorphismDescriptor) -> Fraction:
    """(2g(Y,Q) - 2) - d (2g(X,P) - 2) - deg D."""
    D = ramification_divisor(m)
    return 2 * orbifold_genus(m.source) - 2 - m.degree * (2 * orbifold_genus(m.target) - 2) - D.degree


def classical_rh_residual(m: MorphismDescriptor) -> Fraction:
    """(2g(Y) - 2) - d (2g(X) - 2) - sum_y degram(K_{Y,y}/K_{X,f(y)})."""
    diff = sum(lf.degram(rec.local) for _, rec in m.fiber)
    return Fraction(2 * m.source.curve.genus - 2 - m.degree * (2 * m.target.curve.genus - 2) - diff)


def rh_report(m: MorphismDescriptor) -> dict:
    check = morphism_validate(m)
    report = {
        "valid": check.valid,
        "etale": check.is_etale,
        "etale_at": dict(sorted(check.etale.items())),
        "failures": dict(sorted(check.failures.items())),
        "degree": m.degree,
        "genus_source": orbifold_genus(m.source),
        "genus_target": orbifold_genus(m.target),
        "classical_residual": classical_rh_residual(m),
    }
    if check.valid:
        D = ramification_divisor(m)
        res = rh_residual(m)
        report.update(
            divisor=D.as_dict(),
            divisor_degree=D.degree,
            residual=res,
            # value under the (2g(X,P) - 1) variant of the formula
            minus_one_convention_residual=res - m.degree,
        )
    return report


@dataclass(frozen=True)
class InertiaRecord:
    """One branch point x_j of a Galois cover of formal orbifolds.

    ``inertia`` is the profile of Gal(Q(y_j)/P(x_j)) over P(x_j);
    ``q_profile`` is Q(y_j) over K_{Y,y_j} and ``p_profile`` is P(x_j)
    over K_{X,x_j} (both trivial for plain curves).
    """

    x: str
    inertia: RamificationProfile
    q_profile: RamificationProfile | None = None
    p_profile: RamificationProfile | None = None

    def __post_init__(self):
        triv = RamificationProfile.trivial(self.inertia.p)
        if self.q_profile is None:
            object.__setattr__(self, "q_profile", triv)
        if self.p_profile is None:
            object.__setattr__(self, "p_profile", triv)

    @property
    def local_degree(self) -> int:
        return self.q_profile.degree

    @property
    def ramification_index(self) -> Fraction:
        """[K_{Y,y}:K_{X,x}] = |I| [P:K_X] / [Q:K_Y]."""
        return Fraction(self.inertia.degree * self.p_profile.degree, self.q_profile.degree)


@dataclass(frozen=True)
class GaloisCoverRecord:
    group_order: int
    genus_x: int
    genus_y: int
    branch: tuple[InertiaRecord, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "branch", tuple(self.branch))
        for rec in self.branch:
            e = rec.ramification_index
            if e.denominator != 1 or self.group_order % int(e):
                raise OrbiramError(f"ramification index {e} at {rec.x} does not divide |G| = {self.group_order}")


def _inertia_term(I: RamificationProfile) -> int:
    return lf.hilbert_sum(lf.lower_filtration(I))


def hilbert_rh_residual(rec: GaloisCoverRecord) -> Fraction:
    """(2g(Y) - 2) - |G|(2g(X) - 2) - sum_j |G|/|I^j| sum_i (|I^j_i| - 1)."""
    G = rec.group_order
    ram = sum((Fraction(G, b.inertia.degree) * _inertia_term(b.inertia) for b in rec.branch), Fraction(0))
    return 2 * rec.genus_y - 2 - G * (2 * rec.genus_x - 2) - ram


def orbifold_hilbert_rh_residual(rec: GaloisCoverRecord) -> Fraction:
    """Orbifold version: (2g(Y,Q) - 2) - |G|(2g(X,P) - 2) - ramification term.

    A branch point x_j has |G|/e_j points above it, e_j the ramification
    index of Y -> X, and each contributes degram(Q/P)/[Q:K_Y] to deg D.
    The weight |G|/(e_j [Q:K_Y]) equals |G|/(|I^j| [P(x_j):K_X]).
    """
    G = rec.group_order
    gx = rec.genus_x + sum((profile_genus_contribution(b.p_profile) for b in rec.branch), Fraction(0)) / 2
    gy = rec.genus_y + sum(
        (G / b.ramification_index * profile_genus_contribution(b.q_profile) for b in rec.branch), Fraction(0)
    ) / 2
    ram = sum(
        (Fraction(G, b.inertia.degree * b.p_profile.degree) * _inertia_term(b.inertia) for b in rec.branch),
        Fraction(0),
    )
    return 2 * gy - 2 - G * (2 * gx - 2) - ram
