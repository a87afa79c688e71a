"""Orbifold bundles, two ways.

Equivariant model
    A finite group Gamma acting on a finite set E stands in for a Galois
    cover Y -> Y/Gamma.  A rank-r bundle is a fiber k^r at every e together
    with invertible matrices lambda_g(e): V_{g.e} -> V_e subject to

        lambda_gh(e) = lambda_h(e) lambda_g(h.e),   lambda_1(e) = I.

    Invariant sections over an orbit are the families (s_e) with
    s_e = lambda_g(e) s_{g.e}.

Ledger model
    (|Gamma|, rank, degree) triples with the orbifold degree deg/|Gamma|,
    enough to check slope bookkeeping and the projection formula.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .algebra import GF, FiniteField, identity_matrix, kernel, mat_inverse, mat_mul, rank
from .errors import CocycleInvalid, CoverMismatch, OrbiramError


class FiniteGroup:
    """Group on {0, ..., n-1} given by its multiplication table."""

    def __init__(self, table, name: str = "G"):
        self.table = tuple(tuple(row) for row in table)
        self.name = name
        n = len(self.table)
        if n == 0 or any(len(row) != n or sorted(row) != list(range(n)) for row in self.table):
            raise OrbiramError("multiplication table must be a Latin square")
        ids = [e for e in range(n) if all(self.table[e][g] == g == self.table[g][e] for g in range(n))]
        if not ids:
            raise OrbiramError("multiplication table has no identity")
        self.identity = ids[0]
        for a, b, c in itertools.product(range(n), repeat=3):
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                raise OrbiramError("multiplication table is not associative")
        self._inv = tuple(next(h for h in range(n) if self.mul(g, h) == self.identity) for g in range(n))

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(range(self.order))

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    @classmethod
    def from_permutations(cls, perms, name: str = "G") -> FiniteGroup:
        """Group of the listed permutations (tuples), which must be closed; g*h = g o h."""
        perms = [tuple(p) for p in perms]
        index = {p: i for i, p in enumerate(perms)}
        if len(index) != len(perms):
            raise OrbiramError("duplicate permutations")
        table = []
        for g in perms:
            row = []
            for h in perms:
                gh = tuple(g[h[i]] for i in range(len(h)))
                if gh not in index:
                    raise OrbiramError("permutations are not closed under composition")
                row.append(index[gh])
            table.append(row)
        return cls(table, name)

    @classmethod
    def cyclic(cls, n: int) -> FiniteGroup:
        return cls([[(a + b) % n for b in range(n)] for a in range(n)], f"Z/{n}")

    @classmethod
    def dihedral(cls, n: int) -> FiniteGroup:
        """Symmetries of the n-gon, order 2n; (s, k) = r^k s^s is coded s*n + k."""
        def mul(a, b):
            sa, ka = divmod(a, n)
            sb, kb = divmod(b, n)
            k = (ka + (-kb if sa else kb)) % n
            return ((sa + sb) % 2) * n + k
        return cls([[mul(a, b) for b in range(2 * n)] for a in range(2 * n)], f"D{n}")

    @classmethod
    def quaternion(cls) -> FiniteGroup:
        # unit quaternions as (sign, axis) with axis in 1, i, j, k
        prod = {(0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
                (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
                (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
                (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0)}

        def mul(a, b):
            sa, xa = divmod(a, 4)
            sb, xb = divmod(b, 4)
            s, x = prod[xa, xb]
            sign = (sa + sb + (s < 0)) % 2
            return sign * 4 + x
        return cls([[mul(a, b) for b in range(8)] for a in range(8)], "Q8")

    @classmethod
    def symmetric(cls, n: int) -> FiniteGroup:
        return cls.from_permutations(itertools.permutations(range(n)), f"S{n}")

    @classmethod
    def direct_product(cls, G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
        m = H.order

        def mul(a, b):
            return G.mul(a // m, b // m) * m + H.mul(a % m, b % m)
        n = G.order * m
        return cls([[mul(a, b) for b in range(n)] for a in range(n)], f"{G.name}x{H.name}")


def small_groups(max_order: int = 8) -> list[FiniteGroup]:
    """One group per isomorphism class of order <= min(max_order, 8)."""
    out = [FiniteGroup.cyclic(n) for n in range(1, max_order + 1)]
    Z2 = FiniteGroup.cyclic(2)
    extra = [(4, lambda: FiniteGroup.direct_product(Z2, Z2)),
             (6, lambda: FiniteGroup.dihedral(3)),
             (8, lambda: FiniteGroup.direct_product(Z2, FiniteGroup.cyclic(4))),
             (8, lambda: FiniteGroup.direct_product(Z2, FiniteGroup.direct_product(Z2, Z2))),
             (8, lambda: FiniteGroup.dihedral(4)),
             (8, FiniteGroup.quaternion)]
    out += [make() for order, make in extra if order <= max_order]
    return out


class GammaSet:
    """Left action of a finite group on {0, ..., size-1}; ``action[g][e]`` is g.e."""

    def __init__(self, group: FiniteGroup, action):
        self.group = group
        self.action = tuple(tuple(row) for row in action)
        if len(self.action) != group.order:
            raise OrbiramError("need one permutation per group element")
        self.size = len(self.action[0]) if self.action else 0
        for row in self.action:
            if sorted(row) != list(range(self.size)):
                raise OrbiramError("each group element must act by a permutation")
        if self.action[group.identity] != tuple(range(self.size)):
            raise OrbiramError("identity must act trivially")
        for g, h in itertools.product(group, repeat=2):
            gh = group.mul(g, h)
            if any(self.action[gh][e] != self.act(g, self.act(h, e)) for e in range(self.size)):
                raise OrbiramError("action is not compatible with the group law")

    def act(self, g: int, e: int) -> int:
        return self.action[g][e]

    def is_free(self) -> bool:
        G = self.group
        return all(self.act(g, e) != e for g in G if g != G.identity for e in range(self.size))

    def orbits(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for e in range(self.size):
            if e not in seen:
                orb = tuple(sorted({self.act(g, e) for g in self.group}))
                seen.update(orb)
                out.append(orb)
        return out

    @classmethod
    def trivial_action(cls, group: FiniteGroup, size: int = 1) -> GammaSet:
        return cls(group, [tuple(range(size))] * group.order)


class GammaSetCover(GammaSet):
    """Free Gamma-set E -> B = E/Gamma; the finite model of an etale Galois cover."""

    def __init__(self, group: FiniteGroup, action):
        super().__init__(group, action)
        if not self.is_free():
            raise OrbiramError("a cover needs a free action")
        self.base = tuple(range(len(self.orbits())))
        self.projection = {e: b for b, orb in enumerate(self.orbits()) for e in orb}
        assert self.size == group.order * len(self.base)

    @classmethod
    def regular(cls, group: FiniteGroup, base_size: int = 1) -> GammaSetCover:
        """E = Gamma x B with g.(h, b) = (gh, b); (h, b) is coded b*|Gamma| + h."""
        n = group.order
        action = [[b * n + group.mul(g, h) for b in range(base_size) for h in range(n)] for g in range(n)]
        return cls(group, action)


@dataclass(frozen=True)
class EquivariantBundle:
    """``lam[g][e]`` is the r x r matrix lambda_g(e): V_{g.e} -> V_e."""

    field: FiniteField
    gset: GammaSet
    rank: int
    lam: tuple

    def __post_init__(self):
        lam = tuple(tuple(tuple(tuple(row) for row in m) for m in per_g) for per_g in self.lam)
        object.__setattr__(self, "lam", lam)
        if len(lam) != self.gset.group.order or any(len(per_g) != self.gset.size for per_g in lam):
            raise OrbiramError("need one matrix per (g, e)")
        r = self.rank
        for per_g in lam:
            for m in per_g:
                if len(m) != r or any(len(row) != r for row in m):
                    raise OrbiramError(f"transition matrices must be {r} x {r}")

    def matrix(self, g: int, e: int):
        return self.lam[g][e]

    def replace(self, g: int, e: int, m) -> EquivariantBundle:
        lam = [list(per_g) for per_g in self.lam]
        lam[g][e] = m
        return EquivariantBundle(self.field, self.gset, self.rank, lam)


def trivial_bundle(F: FiniteField, gset: GammaSet, r: int) -> EquivariantBundle:
    I = identity_matrix(F, r)
    return EquivariantBundle(F, gset, r, [[I] * gset.size for _ in gset.group])


def cocycle_validate(b: EquivariantBundle) -> bool:
    """Exhaustive check over Gamma x Gamma x E."""
    F, X, G = b.field, b.gset, b.gset.group
    I = identity_matrix(F, b.rank)
    if any(b.matrix(G.identity, e) != I for e in range(X.size)):
        return False
    for g, h in itertools.product(G, repeat=2):
        gh = G.mul(g, h)
        for e in range(X.size):
            if b.matrix(gh, e) != mat_mul(F, b.matrix(h, e), b.matrix(g, X.act(h, e))):
                return False
    return True


def gauge_transform(b: EquivariantBundle, phi) -> EquivariantBundle:
    """lambda'_g(e) = phi_e lambda_g(e) phi_{g.e}^{-1}; preserves the cocycle identity."""
    F, X = b.field, b.gset
    inv = [mat_inverse(F, m) for m in phi]
    lam = [[mat_mul(F, mat_mul(F, phi[e], b.matrix(g, e)), inv[X.act(g, e)]) for e in range(X.size)]
           for g in X.group]
    return EquivariantBundle(F, X, b.rank, lam)


def random_invertible(F: FiniteField, r: int, rng: random.Random):
    while True:
        m = tuple(tuple(rng.randrange(F.q) for _ in range(r)) for _ in range(r))
        if rank(F, m) == r:
            return m


def random_pullback_bundle(F: FiniteField, cover: GammaSetCover, r: int, rng: random.Random) -> EquivariantBundle:
    """Pullback of the rank-r trivial bundle on B, in a random gauge."""
    phi = [random_invertible(F, r, rng) for _ in range(cover.size)]
    return gauge_transform(trivial_bundle(F, cover, r), phi)


@dataclass(frozen=True)
class InvariantFiber:
    """Invariant sections over one orbit.

    ``basis`` lists invariant vectors in the orbit's direct sum (blocks of
    length r in the order of ``orbit``).  ``witness`` is the matrix whose
    columns are the e0-components of the basis, with e0 = orbit[0].
    """

    orbit: tuple[int, ...]
    basis: tuple
    witness: tuple

    @property
    def rank(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class InvariantPushforward:
    rank_by_base: tuple[int, ...]
    fibers: tuple[InvariantFiber, ...]
    base_rank: int

    @property
    def is_locally_free(self) -> bool:
        return len(set(self.rank_by_base)) <= 1

    def witness_is_isomorphism(self, F: FiniteField) -> bool:
        """The invariant fiber maps isomorphically onto V_e for every e in the orbit."""
        for fib in self.fibers:
            r = self.base_rank
            if fib.rank != r:
                return False
            for i in range(len(fib.orbit)):
                block = tuple(tuple(v[i * r + k] for v in fib.basis) for k in range(r))
                if rank(F, block) != r:
                    return False
        return True


def pushforward_invariants(b: EquivariantBundle, cover: GammaSet | None = None) -> InvariantPushforward:
    if cover is not None and cover is not b.gset:
        raise OrbiramError("bundle lives on a different Gamma-set")
    if not cocycle_validate(b):
        raise CocycleInvalid("transition matrices violate the cocycle identity")
    F, X, r = b.field, b.gset, b.rank
    fibers = []
    for orb in X.orbits():
        pos = {e: i for i, e in enumerate(orb)}
        n = len(orb) * r
        rows = []
        for g in X.group:
            for e in orb:
                ge = X.act(g, e)
                m = b.matrix(g, e)
                for k in range(r):
                    row = [0] * n
                    for j in range(r):
                        i = pos[ge] * r + j
                        row[i] = F.add(row[i], m[k][j])
                    i = pos[e] * r + k
                    row[i] = F.sub(row[i], 1)
                    if any(row):
                        rows.append(tuple(row))
        basis = tuple(kernel(F, rows, n))
        witness = tuple(tuple(v[k] for v in basis) for k in range(r))
        fibers.append(InvariantFiber(orb, basis, witness))
    return InvariantPushforward(tuple(f.rank for f in fibers), tuple(fibers), r)


# -- ledger model --

@dataclass(frozen=True)
class LedgerBundle:
    gamma: int
    rank: int
    degree: int

    def __post_init__(self):
        if self.gamma < 1:
            raise OrbiramError("cover order must be positive")
        if self.rank < 1:
            raise OrbiramError("rank must be positive")

    @property
    def orb_degree(self) -> Fraction:
        return Fraction(self.degree, self.gamma)

    @property
    def orb_slope(self) -> Fraction:
        return self.orb_degree / self.rank


def orb_degree(L: LedgerBundle) -> Fraction:
    return L.orb_degree


def orb_slope(L: LedgerBundle) -> Fraction:
    return L.orb_slope


def refine(L: LedgerBundle, k: int) -> LedgerBundle:
    """Pull back along a degree-k Galois refinement of the representing cover."""
    if k < 1:
        raise OrbiramError("refinement degree must be positive")
    return LedgerBundle(k * L.gamma, L.rank, k * L.degree)


def common_refinement(L1: LedgerBundle, L2: LedgerBundle) -> tuple[LedgerBundle, LedgerBundle]:
    m = math.lcm(L1.gamma, L2.gamma)
    return refine(L1, m // L1.gamma), refine(L2, m // L2.gamma)


def _same_cover(L1, L2):
    if L1.gamma != L2.gamma:
        raise CoverMismatch(f"cover orders {L1.gamma} and {L2.gamma} differ; refine first")


def tensor(L1: LedgerBundle, L2: LedgerBundle) -> LedgerBundle:
    _same_cover(L1, L2)
    return LedgerBundle(L1.gamma, L1.rank * L2.rank, L1.rank * L2.degree + L2.rank * L1.degree)


def dual(L: LedgerBundle) -> LedgerBundle:
    return LedgerBundle(L.gamma, L.rank, -L.degree)


def direct_sum(L1: LedgerBundle, L2: LedgerBundle) -> LedgerBundle:
    _same_cover(L1, L2)
    return LedgerBundle(L1.gamma, L1.rank + L2.rank, L1.degree + L2.degree)


def pullback_etale(L: LedgerBundle, dcov: int) -> LedgerBundle:
    if dcov < 1:
        raise OrbiramError("cover degree must be positive")
    return LedgerBundle(L.gamma, L.rank, dcov * L.degree)


def pushforward_etale(L: LedgerBundle, dcov: int) -> LedgerBundle:
    # chi(W) = chi(f_* W) and g_1 - 1 = dcov (g_2 - 1) force deg f_* W = deg W
    if dcov < 1:
        raise OrbiramError("cover degree must be positive")
    return LedgerBundle(L.gamma, dcov * L.rank, L.degree)


def frobenius_pullback(L: LedgerBundle, p: int) -> LedgerBundle:
    return LedgerBundle(L.gamma, L.rank, p * L.degree)


def projection_formula_sides(V: LedgerBundle, Fb: LedgerBundle, dcov: int) -> tuple[LedgerBundle, LedgerBundle]:
    """f_*(f^*V (x) F) and V (x) f_*F for f of degree dcov."""
    _same_cover(V, Fb)
    lhs = pushforward_etale(tensor(pullback_etale(V, dcov), Fb), dcov)
    rhs = tensor(V, pushforward_etale(Fb, dcov))
    return lhs, rhs


def projection_formula_residual(V: LedgerBundle, Fb: LedgerBundle, dcov: int) -> tuple[int, int]:
    lhs, rhs = projection_formula_sides(V, Fb, dcov)
    return lhs.rank - rhs.rank, lhs.degree - rhs.degree


def is_semistable(L: LedgerBundle, subs) -> bool:
    """Slope test against the listed proper subbundles only."""
    for S in subs:
        _same_cover(L, S)
        if not 1 <= S.rank < L.rank:
            raise OrbiramError(f"subbundle rank {S.rank} is not proper for rank {L.rank}")
        if S.orb_slope > L.orb_slope:
            return False
    return True


def ledger_from_dict(doc) -> LedgerBundle:
    if not isinstance(doc, dict):
        raise OrbiramError("ledger bundle must be a JSON object")
    try:
        vals = {k: doc[k] for k in ("gamma", "rank", "degree")}
    except KeyError as exc:
        raise OrbiramError(f"ledger bundle is missing {exc}") from None
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in vals.values()):
        raise OrbiramError("gamma, rank and degree must be integers")
    return LedgerBundle(**vals)


def ledger_to_dict(L: LedgerBundle) -> dict:
    return {"gamma": L.gamma, "rank": L.rank, "degree": L.degree}


def group_from_dict(doc) -> FiniteGroup:
    """{"cyclic":n} | {"dihedral":n} | {"quaternion":true} | {"symmetric":n} | {"table":[[..]]}."""
    if not isinstance(doc, dict):
        raise OrbiramError("group must be a JSON object")
    if "table" in doc:
        return FiniteGroup(doc["table"])
    for key, make in (("cyclic", FiniteGroup.cyclic), ("dihedral", FiniteGroup.dihedral),
                      ("symmetric", FiniteGroup.symmetric)):
        if key in doc:
            n = doc[key]
            if not isinstance(n, int) or n < 1:
                raise OrbiramError(f"'{key}' needs a positive integer")
            return make(n)
    if doc.get("quaternion"):
        return FiniteGroup.quaternion()
    raise OrbiramError("unrecognized group document")


def equivariant_from_dict(doc) -> EquivariantBundle:
    """{"q":5,"group":{..},"action":[[..] per g] | "regular":k,"rank":r,"lambda":[[matrix per e] per g]}."""
    if not isinstance(doc, dict):
        raise OrbiramError("equivariant bundle must be a JSON object")
    try:
        F = GF(doc["q"])
        G = group_from_dict(doc["group"])
        r = doc["rank"]
        lam = doc["lambda"]
    except KeyError as exc:
        raise OrbiramError(f"equivariant bundle is missing {exc}") from None
    if "action" in doc:
        X = GammaSet(G, doc["action"])
    else:
        X = GammaSetCover.regular(G, int(doc.get("regular", 1)))
    try:
        lam = [[[[F.parse_element(c) for c in row] for row in m] for m in per_g] for per_g in lam]
    except (TypeError, ValueError) as exc:
        raise OrbiramError(f"bad matrix entry: {exc}") from None
    return EquivariantBundle(F, X, r, lam)
