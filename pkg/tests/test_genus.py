from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from orbiram import localfield as lf
from orbiram.algebra import GF, parse_rational_function
from orbiram.covers import ArtinSchreierCoverSpec, KummerCoverSpec, analyze, cover_descriptor, galois_record
from orbiram.errors import NotSubextension, OrbiramError
from orbiram.genus import (
    GaloisCoverRecord, InertiaRecord, classical_rh_residual, hilbert_rh_residual, orbifold_genus,
    orbifold_hilbert_rh_residual, ramification_divisor, rh_report, rh_residual,
)
from orbiram.localfield import RamificationProfile as R, WildComponent as W
from orbiram.orbifold import BranchData, Curve, FormalOrbifold, MorphismDescriptor, identity_morphism

from strategies import profiles


def P1(p, branch):
    return FormalOrbifold(Curve("P1", 0, ("0", "1", "inf")), BranchData(p, branch))


def as_cover(text, q=2):
    return analyze(ArtinSchreierCoverSpec(parse_rational_function(GF(q), text)))


def test_orbifold_genus_examples():
    assert orbifold_genus(FormalOrbifold(Curve("E", 1, ("o",)), BranchData(3))) == 1
    assert orbifold_genus(P1(2, {"inf": R(2, 1, (W("a", 1),))})) == Fraction(1, 2)
    assert orbifold_genus(P1(5, {"0": R(5, 3), "1": R(5, 3)})) == Fraction(2, 3)


def test_ramification_divisor_examples():
    a = as_cover("x^3")
    D = ramification_divisor(cover_descriptor(a, "O"))
    assert D.as_dict() == {"inf~0": 4}
    assert ramification_divisor(cover_descriptor(a, "B_f")).is_zero()
    X = P1(3, {"0": R(3, 2)})
    assert ramification_divisor(identity_morphism(X, X.branch)).is_zero()


def test_ramification_divisor_rejects_invalid():
    X = FormalOrbifold(Curve("X", 0, ("0",)), BranchData(3))
    m = identity_morphism(X, BranchData(3, {"0": R(3, 2)}))
    with pytest.raises(NotSubextension):
        ramification_divisor(m)


def test_rh_residual_examples():
    X = P1(3, {"0": R(3, 2, (W("a", 1),))})
    assert rh_residual(identity_morphism(X, X.branch)) == 0
    a = as_cover("x^3")
    m = cover_descriptor(a, "B_f")
    assert a.genus == 1 and orbifold_genus(m.target) == 1
    assert rh_residual(m) == 0
    mo = cover_descriptor(a, "O")
    assert rh_residual(mo) == classical_rh_residual(mo) == 0


def test_rh_report_surfaces_minus_one_variant():
    a = as_cover("x^3")
    report = rh_report(cover_descriptor(a, "B_f"))
    assert report["residual"] == 0 and report["etale"]
    assert report["minus_one_convention_residual"] == -2
    X = FormalOrbifold(Curve("X", 0, ("0",)), BranchData(3))
    bad = rh_report(identity_morphism(X, BranchData(3, {"0": R(3, 2)})))
    assert not bad["valid"] and "residual" not in bad


def test_hilbert_rh_examples():
    assert hilbert_rh_residual(GaloisCoverRecord(3, 1, 1)) == 0
    assert hilbert_rh_residual(GaloisCoverRecord(2, 0, 0)) == 2  # no etale cover of P^1
    kummer = GaloisCoverRecord(3, 0, 0, (InertiaRecord("0", R(7, 3)), InertiaRecord("inf", R(7, 3))))
    assert hilbert_rh_residual(kummer) == 0 == orbifold_hilbert_rh_residual(kummer)
    art = GaloisCoverRecord(2, 0, 1, (InertiaRecord("inf", R(2, 1, (W("a", 3),))),))
    assert hilbert_rh_residual(art) == 0 == orbifold_hilbert_rh_residual(art)


def test_orbifold_hilbert_counterexample_to_naive_weight():
    # identity (X,Q) -> (X,P) with Q = tame 4, P = tame 2: weight |G|/(|I|[P:K])
    rec = GaloisCoverRecord(1, 0, 0, (InertiaRecord("0", R(3, 2), R(3, 4), R(3, 2)),))
    assert orbifold_hilbert_rh_residual(rec) == 0


def test_galois_record_validates_inertia():
    with pytest.raises(OrbiramError):
        GaloisCoverRecord(4, 0, 0, (InertiaRecord("0", R(5, 3)),))


def test_specialization_trivial_data():
    rec = GaloisCoverRecord(5, 0, 6, tuple(InertiaRecord(str(i), R(11, 5)) for i in range(5)))
    assert hilbert_rh_residual(rec) == orbifold_hilbert_rh_residual(rec) == 0


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([2, 3, 5]).flatmap(lambda p: st.tuples(profiles(p), profiles(p))))
def test_genus_monotone(pair):
    a, b = pair
    b = lf.compositum(a, b)
    X = FormalOrbifold(Curve("X", 2, ("x",)), BranchData(a.p, {"x": a}))
    Xb = FormalOrbifold(Curve("X", 2, ("x",)), BranchData(a.p, {"x": b}))
    assert orbifold_genus(X) <= orbifold_genus(Xb)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([3, 5]).flatmap(lambda p: st.tuples(profiles(p, max_r=2), profiles(p, max_r=2))))
def test_divisor_degree_nonnegative(pair):
    a, b = pair
    big = lf.compositum(a, b)
    X = FormalOrbifold(Curve("X", 1, ("x",)), BranchData(a.p, {"x": big}))
    m = identity_morphism(X, BranchData(a.p, {"x": a}))
    D = ramification_divisor(m)
    assert D.degree >= 0
    assert D.is_zero() == (big == a)
    assert rh_residual(m) == 0
