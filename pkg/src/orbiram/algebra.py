"""Exact arithmetic over finite fields and univariate rational functions.

Field elements are plain ints. An element of GF(p^d) is the integer
c_0 + c_1 p + ... + c_{d-1} p^{d-1} where c_0 + c_1 a + ... is its
representative modulo the defining polynomial.  Polynomials over a field
are stored as tuples of such ints, constant term first, with no trailing
zeros (the zero polynomial is the empty tuple).

The module also provides Artin-Schreier reduction of rational functions,
partial fractions at rational poles, and small dense linear algebra.
"""

from __future__ import annotations

import ast
import functools
from typing import NamedTuple

from .errors import OrbiramError, UnsupportedPole

INF = "inf"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, d) with q == p**d, or raise ValueError."""
    if q < 2:
        raise OrbiramError(f"{q} is not a prime power")
    p = next(k for k in range(2, q + 1) if q % k == 0)
    d, r = 0, q
    while r % p == 0:
        r //= p
        d += 1
    if r != 1:
        raise OrbiramError(f"{q} is not a prime power")
    return p, d


# -- polynomials over the prime field, used only to build extension fields --

def _fp_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _fp_mod(a, m, p):
    a = list(a)
    inv = pow(m[-1], -1, p)
    while len(a) >= len(m):
        f = a[-1] * inv % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - f * mi) % p
        a = _fp_trim(a)
    return a


def _fp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _fp_trim(out)


def _fp_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _fp_trim([(x - y) % p for x, y in zip(a, b)])


def _fp_gcd(a, b, p):
    a, b = _fp_trim(a), _fp_trim(b)
    while b:
        a, b = b, _fp_mod(a, b, p)
    return a


def _fp_powmod(base, e, m, p):
    result, base = [1], _fp_mod(base, m, p)
    while e:
        if e & 1:
            result = _fp_mod(_fp_mul(result, base, p), m, p)
        base = _fp_mod(_fp_mul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible_mod_p(modulus, p: int) -> bool:
    """Irreducibility of a monic polynomial over GF(p).

    A degree-d polynomial is irreducible iff it has no factor of degree
    k <= d/2, i.e. gcd(f, x^(p^k) - x) = 1 for those k.
    """
    f = _fp_trim(modulus)
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    xpow = [0, 1]
    for _ in range(d // 2):
        xpow = _fp_powmod(xpow, p, f, p)
        if len(_fp_gcd(f, _fp_sub(xpow, [0, 1], p), p)) > 1:
            return False
    return True


def _first_irreducible(p, d):
    for n in range(p ** d):
        tail = [(n // p ** i) % p for i in range(d)]
        cand = tail + [1]
        if cand[0] and is_irreducible_mod_p(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")


class FiniteField:
    """GF(p^d) with int-coded elements and log/exp multiplication tables."""

    def __init__(self, p: int, d: int = 1, modulus=None):
        if not is_prime(p):
            raise OrbiramError(f"characteristic {p} is not prime")
        if d < 1:
            raise OrbiramError("extension degree must be positive")
        self.p, self.d, self.q = p, d, p ** d
        if modulus is None:
            modulus = (0, 1) if d == 1 else _first_irreducible(p, d)
        modulus = tuple(c % p for c in modulus)
        if len(_fp_trim(modulus)) != d + 1 or modulus[-1] != 1:
            raise OrbiramError("modulus must be monic of degree d")
        if not is_irreducible_mod_p(modulus, p):
            raise OrbiramError(f"modulus {list(modulus)} is reducible over GF({p})")
        self.modulus = modulus
        self._digits = [tuple((a // p ** i) % p for i in range(d)) for a in range(self.q)]
        self._build_tables()

    def _raw_mul(self, a, b):
        if self.d == 1:
            return a * b % self.p
        prod = _fp_mul(_fp_trim(self._digits[a]), _fp_trim(self._digits[b]), self.p)
        return self.from_vector(_fp_mod(prod, self.modulus, self.p))

    def _build_tables(self):
        q = self.q
        for g in range(2 if q > 2 else 1, q):
            exp, x = [1], g
            while x != 1:
                exp.append(x)
                x = self._raw_mul(x, g)
            if len(exp) == q - 1:
                break
        self._exp = exp
        self._log = [0] * q
        for i, x in enumerate(exp):
            self._log[x] = i

    # -- element coding --
    def from_vector(self, v) -> int:
        v = list(v)
        if len(v) > self.d:
            raise OrbiramError(f"vector {v} too long for GF({self.q})")
        return sum((c % self.p) * self.p ** i for i, c in enumerate(v))

    def to_vector(self, a: int) -> list[int]:
        return list(self._digits[a])

    def from_int(self, n: int) -> int:
        """Image of an integer under Z -> GF(p) -> GF(q)."""
        return n % self.p

    def format_element(self, a: int) -> str:
        if self.d == 1:
            return str(a)
        return "[" + ",".join(str(c) for c in self._digits[a]) + "]"

    def parse_element(self, s) -> int:
        if isinstance(s, int):
            return self.from_int(s) if self.d == 1 else self._check(s)
        s = str(s).strip()
        if s.startswith("["):
            import json

            return self.from_vector(json.loads(s))
        return self._check(int(s)) if self.d > 1 else self.from_int(int(s))

    def _check(self, a):
        if not 0 <= a < self.q:
            raise OrbiramError(f"{a} is not an element code of GF({self.q})")
        return a

    def elements(self):
        return range(self.q)

    @property
    def generator(self) -> int:
        """Class of x modulo the defining polynomial."""
        if self.d == 1:
            raise OrbiramError("prime field has no polynomial generator")
        return self.p

    @property
    def primitive_element(self) -> int:
        return self._exp[1] if self.q > 2 else 1

    # -- arithmetic --
    def add(self, a, b):
        if self.d == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p = self.p
        return sum(((x + y) % p) * p ** i for i, (x, y) in enumerate(zip(self._digits[a], self._digits[b])))

    def neg(self, a):
        if self.d == 1:
            return -a % self.p
        if self.p == 2:
            return a
        p = self.p
        return sum((-x % p) * p ** i for i, x in enumerate(self._digits[a]))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[-self._log[a] % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k: int):
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if k == 0 else 0
        return self._exp[self._log[a] * k % (self.q - 1)]

    def pth_root(self, a):
        """The unique b with b^p == a, namely a^(q/p)."""
        return self.pow(a, self.q // self.p)

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.d, self.modulus) == (other.p, other.d, other.modulus)

    def __hash__(self):
        return hash((self.p, self.d, self.modulus))

    def __repr__(self):
        return f"GF({self.q})"


@functools.cache
def GF(q: int) -> FiniteField:
    p, d = prime_power(q)
    return FiniteField(p, d)


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class Polynomial:
    """Immutable univariate polynomial over a FiniteField."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs=()):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", _trim(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def x(cls, field):
        return cls(field, (0, 1))

    @classmethod
    def constant(cls, field, c):
        return cls(field, (c,))

    @classmethod
    def monomial(cls, field, c, k):
        return cls(field, (0,) * k + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.field != self.field:
                raise OrbiramError("polynomials over different fields")
            return other
        if isinstance(other, int):
            return Polynomial(self.field, (self.field.from_int(other),))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.field
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Polynomial(F, [F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial(F)
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = F.add(out[i + j], F.mul(ai, bj))
        return Polynomial(F, out)

    __rmul__ = __mul__

    def scale(self, c):
        return Polynomial(self.field, [self.field.mul(c, a) for a in self.coeffs])

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Polynomial.constant(self.field, 1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        inv = F.inv(other.lead)
        m = other.degree
        quot = [0] * max(len(rem) - m, 0)
        while len(rem) - 1 >= m and rem:
            f = F.mul(rem[-1], inv)
            shift = len(rem) - 1 - m
            quot[shift] = f
            for i, c in enumerate(other.coeffs):
                rem[shift + i] = F.sub(rem[shift + i], F.mul(f, c))
            rem = list(_trim(rem))
        return Polynomial(F, quot), Polynomial(F, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        if not self:
            return self
        return self.scale(self.field.inv(self.lead))

    def gcd(self, other):
        a, b = self, self._coerce(other)
        while b:
            a, b = b, a % b
        return a.monic()

    def __call__(self, a: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, a), c)
        return acc

    def shift(self, c: int):
        """The polynomial s -> self(s + c)."""
        F = self.field
        lin = Polynomial(F, (c, 1))
        acc = Polynomial(F)
        for coeff in reversed(self.coeffs):
            acc = acc * lin + Polynomial(F, (coeff,))
        return acc

    def roots(self) -> list[int]:
        return [a for a in self.field.elements() if self(a) == 0]

    def root_multiplicity(self, c: int) -> int:
        lin = Polynomial(self.field, (self.field.neg(c), 1))
        k, f = 0, self
        while f:
            qt, r = divmod(f, lin)
            if r:
                break
            f, k = qt, k + 1
        return k

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"Polynomial({self.field!r}, {list(self.coeffs)})"

    def __str__(self):
        return _format_poly(self, "x")


def _format_coeff(F, c):
    s = F.format_element(c)
    return s


def _format_poly(f, var):
    if not f:
        return "0"
    F = f.field
    terms = []
    for k in range(f.degree, -1, -1):
        c = f[k]
        if not c:
            continue
        cs = _format_coeff(F, c)
        if k == 0:
            terms.append(cs)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            terms.append(mono if c == 1 else f"{cs}*{mono}")
    return " + ".join(terms)


class RationalFunction:
    """Element of GF(q)(x) in canonical form: coprime, monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None):
        F = num.field
        if den is None:
            den = Polynomial.constant(F, 1)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        g = num.gcd(den) if num else den.monic()
        num, den = num // g, den // g
        c = F.inv(den.lead)
        object.__setattr__(self, "num", num.scale(c))
        object.__setattr__(self, "den", den.scale(c))

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @property
    def field(self):
        return self.num.field

    @classmethod
    def x(cls, field):
        return cls(Polynomial.x(field))

    @classmethod
    def constant(cls, field, c):
        return cls(Polynomial.constant(field, c))

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.field != self.field:
                raise OrbiramError("rational functions over different fields")
            return other
        if isinstance(other, (int, Polynomial)):
            return RationalFunction(Polynomial(self.field) + other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(self.num ** k, self.den ** k)

    def frobenius(self, p=None):
        return self ** (p or self.field.p)

    def is_constant(self):
        return self.num.degree <= 0 and self.den.degree == 0

    def __eq__(self, other):
        if isinstance(other, (int, Polynomial)):
            other = self._coerce(other)
        return isinstance(other, RationalFunction) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def poles(self) -> dict[str, int]:
        """Pole orders keyed by point label ("inf" for infinity).

        Raises UnsupportedPole if the denominator has an irreducible
        factor of degree > 1 over the coefficient field.
        """
        F = self.field
        out = {}
        rest = self.den
        for c in self.den.roots():
            m = self.den.root_multiplicity(c)
            out[F.format_element(c)] = m
            rest = rest // (Polynomial(F, (F.neg(c), 1)) ** m)
        if rest.degree > 0:
            raise UnsupportedPole(f"denominator factor {rest} has no root in {F!r}")
        if self.num.degree > self.den.degree:
            out[INF] = self.num.degree - self.den.degree
        return out


class PartialFractions(NamedTuple):
    """f = polynomial + sum_c sum_k principal[c][k-1] / (x - c)^k."""

    polynomial: Polynomial
    principal: dict  # element code -> [a_1, ..., a_m]

    def to_rational(self) -> RationalFunction:
        F = self.polynomial.field
        total = RationalFunction(self.polynomial)
        for c, coeffs in self.principal.items():
            t = RationalFunction(Polynomial(F, (F.neg(c), 1))).inverse()
            for k, a in enumerate(coeffs, start=1):
                if a:
                    total = total + (t ** k) * RationalFunction.constant(F, a)
        return total


def _series_quotient(F, n, d, m):
    """First m coefficients of the power series n(s)/d(s), d(0) != 0."""
    inv0 = F.inv(d[0])
    out = []
    for j in range(m):
        acc = n[j]
        for i in range(1, j + 1):
            acc = F.sub(acc, F.mul(d[i], out[j - i]))
        out.append(F.mul(acc, inv0))
    return out


def partial_fractions(f: RationalFunction) -> PartialFractions:
    """Decompose f over linear denominator factors only."""
    F = f.field
    f.poles()  # raises on non-rational poles
    quot, rem = divmod(f.num, f.den)
    principal = {}
    for c in f.den.roots():
        m = f.den.root_multiplicity(c)
        cofactor = f.den // (Polynomial(F, (F.neg(c), 1)) ** m)
        b = _series_quotient(F, rem.shift(c), cofactor.shift(c), m)
        principal[c] = [b[m - k] for k in range(1, m + 1)]
    return PartialFractions(quot, principal)


class ASReduction(NamedTuple):
    reduced: RationalFunction
    poles: dict[str, int]
    witness: RationalFunction


def _as_reduce_local(F, p, coeffs):
    """Reduce sum_k coeffs[k] t^k (k >= 1) modulo g^p - g, top degree first.

    Returns (reduced coefficient list, witness coefficient list).
    """
    red = list(coeffs)
    wit = [0] * len(red)
    for k in range(len(red) - 1, 0, -1):
        if k % p == 0 and red[k]:
            b = F.pth_root(red[k])
            red[k] = 0
            red[k // p] = F.add(red[k // p], b)
            wit[k // p] = F.add(wit[k // p], b)
    return red, wit


def as_reduce(f: RationalFunction, p: int | None = None) -> ASReduction:
    """Artin-Schreier standard form of f.

    Every term c*t^k of a local principal part (t = 1/(x - c) at a finite
    pole, t = x at infinity) whose exponent k is divisible by p is traded
    for c^(1/p) t^(k/p).  Constant terms are kept.  The accumulated g
    satisfies f - reduced == g^p - g.
    """
    F = f.field
    if p is not None and p != F.p:
        raise OrbiramError(f"characteristic mismatch: field has p={F.p}, got {p}")
    p = F.p
    pf = partial_fractions(f)
    poly = list(pf.polynomial.coeffs) or [0]
    const = poly[0]
    red_inf, wit_inf = _as_reduce_local(F, p, [0] + poly[1:])
    reduced = Polynomial(F, [const] + red_inf[1:])
    witness = Polynomial(F, wit_inf)
    red_principal, wit_principal = {}, {}
    for c, coeffs in pf.principal.items():
        r, w = _as_reduce_local(F, p, [0] + coeffs)
        red_principal[c] = r[1:]
        wit_principal[c] = w[1:]
    reduced_rf = PartialFractions(reduced, red_principal).to_rational()
    witness_rf = PartialFractions(witness, wit_principal).to_rational()
    return ASReduction(reduced_rf, reduced_rf.poles(), witness_rf)


def wp(g: RationalFunction) -> RationalFunction:
    """The Artin-Schreier operator g -> g^p - g."""
    return g ** g.field.p - g


# -- expression parsing --

def parse_rational_function(field: FiniteField, text: str) -> RationalFunction:
    """Parse an expression in x such as "x^3 + 1/(x-1)".

    Integer literals map into the prime field; the name ``a`` denotes the
    generator of a non-prime field.
    """
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise OrbiramError(f"cannot parse {text!r}: {exc.msg}") from None
    X = RationalFunction.x(field)

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return RationalFunction.constant(field, field.from_int(node.value))
        if isinstance(node, ast.Name):
            if node.id == "x":
                return X
            if node.id == "a":
                return RationalFunction.constant(field, field.generator)
            raise OrbiramError(f"unknown symbol {node.id!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                k = _int_literal(node.right)
                return ev(node.left) ** k
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                try:
                    return left / right
                except ZeroDivisionError:
                    raise OrbiramError(f"division by zero in {text!r}") from None
        raise OrbiramError(f"unsupported syntax in {text!r}")

    return ev(tree)


def _int_literal(node):
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_int_literal(node.operand)
    raise OrbiramError("exponents must be integer literals")


# -- dense linear algebra; matrices are tuples of row tuples --

def identity_matrix(F: FiniteField, n: int):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(F: FiniteField, A, B):
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        r = []
        for j in range(cols):
            acc = 0
            for k, a in enumerate(row):
                if a:
                    acc = F.add(acc, F.mul(a, B[k][j]))
            r.append(acc)
        out.append(tuple(r))
    return tuple(out)


def mat_sub(F, A, B):
    return tuple(tuple(F.sub(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def rref(F: FiniteField, A):
    """Reduced row echelon form and pivot columns."""
    M = [list(r) for r in A]
    rows = len(M)
    cols = len(M[0]) if M else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(inv, v) for v in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return tuple(tuple(row) for row in M), pivots


def rank(F, A) -> int:
    return len(rref(F, A)[1]) if A else 0


def kernel(F: FiniteField, A, ncols: int | None = None):
    """Basis of {v : A v = 0}, as a list of column vectors (tuples)."""
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    if not A:
        return [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    R, pivots = rref(F, A)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(R[i][fc])
        basis.append(tuple(v))
    return basis


def mat_inverse(F: FiniteField, A):
    n = len(A)
    aug = [tuple(row) + identity_matrix(F, n)[i] for i, row in enumerate(A)]
    R, pivots = rref(F, aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(row[n:]) for row in R)


def transpose(A):
    return tuple(zip(*A)) if A else ()


def format_expression(f: RationalFunction) -> str:
    """Text that ``parse_rational_function`` maps back to f."""
    F = f.field

    def elem(c):
        if F.d == 1:
            return str(c)
        terms = [("1" if i == 0 else "a" if i == 1 else f"a^{i}") if v == 1 else
                 (f"{v}" if i == 0 else f"{v}*a" if i == 1 else f"{v}*a^{i}")
                 for i, v in enumerate(F.to_vector(c)) if v]
        return "(" + " + ".join(terms) + ")"

    def poly(g):
        if not g:
            return "0"
        terms = []
        for k in range(g.degree, -1, -1):
            c = g[k]
            if not c:
                continue
            mono = "" if k == 0 else "x" if k == 1 else f"x^{k}"
            if not mono:
                terms.append(elem(c))
            else:
                terms.append(mono if c == 1 else f"{elem(c)}*{mono}")
        return " + ".join(terms)

    if f.den.degree == 0:
        return poly(f.num)
    return f"({poly(f.num)})/({poly(f.den)})"
