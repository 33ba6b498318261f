"""Exact scalars for q-deformed linear algebra.

Two modes share one interface:

* symbolic -- elements of Q(s) with s = q^(1/2), represented canonically as
  s^shift * num(s)/den(s) where num and den are polynomials with nonzero
  constant term, gcd(num, den) = 1, and den has coprime integer coefficients
  with positive constant term.  This makes equality a tuple comparison and
  string forms deterministic.
* fixed -- q is a concrete rational in (0, 1]; elements are fractions.Fraction
  and arithmetic is the stdlib's.  q = 1 is the classical degeneration.

Scalars are real: conjugation is the identity throughout the package.

q-integers use the base q_d = q^d and are computed as the power sum

    [n]_{q_d} = sum_{k=0}^{n-1} q^{d(n-1-2k)},

which is division-free and specializes to the integer n at q = 1, so the
classical mode needs no special cases.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd
from math import lcm as _ilcm

Q = Fraction

# ---------------------------------------------------------------------------
# polynomial helpers: a polynomial is a tuple of Fractions, index = degree


def _trim(c):
    i = len(c)
    while i > 0 and not c[i - 1]:
        i -= 1
    return tuple(c[:i])


def _padd(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                  for i in range(n)])


def _pneg(a):
    return tuple(-x for x in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [Q(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return _trim(out)


def _pscale(a, c):
    return _trim([x * c for x in a])


def _pmod(a, b):
    """Remainder of a by b (b nonzero), over Q."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and _trim(a):
        a = list(_trim(a))
        if len(a) - 1 < db:
            break
        c = a[-1] / lb
        k = len(a) - 1 - db
        for i, y in enumerate(b):
            a[k + i] -= c * y
        a = a[:-1]
    return _trim(a)


def _pdiv_exact(a, b):
    """Exact quotient a/b; raises if the division leaves a remainder."""
    if not a:
        return ()
    out = [Q(0)] * (len(a) - len(b) + 1)
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while _trim(a) and len(_trim(a)) - 1 >= db:
        a = list(_trim(a))
        c = a[-1] / lb
        k = len(a) - 1 - db
        out[k] = c
        for i, y in enumerate(b):
            a[k + i] -= c * y
        a = a[:-1]
    if _trim(a):
        raise ArithmeticError("inexact polynomial division")
    return _trim(out)


def _pgcd(a, b):
    """Monic gcd over Q (1 for coprime, () only if both are zero)."""
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _pmod(a, b)
    if not a:
        return ()
    return _pscale(a, 1 / a[-1])


def _int_normal_factor(c):
    """Rational t > 0 (up to sign fix) such that c*t has coprime integer
    coefficients and positive constant term.  c must have c[0] != 0."""
    L = _ilcm(*(x.denominator for x in c)) if c else 1
    G = _igcd(*(abs((x * L).numerator) for x in c)) or 1
    t = Q(L, G)
    if c[0] * t < 0:
        t = -t
    return t


def _peval(c, x):
    v = Q(0)
    for coef in reversed(c):
        v = v * x + coef
    return v


def _pstr(c, var="s"):
    if not c:
        return "0"
    parts = []
    for k, x in enumerate(c):
        if not x:
            continue
        if k == 0:
            parts.append(str(x))
        else:
            mono = var if k == 1 else f"{var}^{k}"
            if x == 1:
                parts.append(mono)
            elif x == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{x}*{mono}")
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


# ---------------------------------------------------------------------------


class QScalar:
    """An element of Q(s), kept in the canonical form described above."""

    __slots__ = ("shift", "num", "den")

    def __init__(self, shift, num, den, _raw=False):
        if _raw:
            self.shift, self.num, self.den = shift, num, den
            return
        num = _trim(tuple(Q(x) for x in num))
        den = _trim(tuple(Q(x) for x in den))
        if not den:
            raise ZeroDivisionError("zero denominator polynomial")
        if not num:
            self.shift, self.num, self.den = 0, (Q(0),), (Q(1),)
            return
        while not num[0]:
            num = num[1:]
            shift += 1
        while not den[0]:
            den = den[1:]
            shift -= 1
        g = _pgcd(num, den)
        if len(g) > 1:
            num = _pdiv_exact(num, g)
            den = _pdiv_exact(den, g)
        t = _int_normal_factor(den)
        num = _pscale(num, t)
        den = _pscale(den, t)
        self.shift, self.num, self.den = shift, num, den

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_fraction(cls, r):
        r = Q(r)
        return cls(0, (Q(r.numerator),), (Q(r.denominator),))

    @classmethod
    def s_power(cls, k):
        return cls(k, (Q(1),), (Q(1),))

    @classmethod
    def laurent(cls, coeffs):
        """Sum of c * s^k for k, c in the dict coeffs."""
        if not coeffs:
            return cls.from_fraction(0)
        lo = min(coeffs)
        hi = max(coeffs)
        num = [Q(coeffs.get(k, 0)) for k in range(lo, hi + 1)]
        return cls(lo, num, (Q(1),))

    # -- basic predicates ---------------------------------------------------

    def __bool__(self):
        return bool(self.num[0])

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self.shift, self.num, self.den) == (
            other.shift, other.num, other.den)

    def __hash__(self):
        if not self:
            return hash(Q(0))
        if self.den == (Q(1),) and self.shift == 0 and len(self.num) == 1:
            return hash(self.num[0])  # agree with Fraction on constants
        return hash((self.shift, self.num, self.den))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self:
            return other
        if not other:
            return self
        m = min(self.shift, other.shift)
        a = _pmul(_shift_poly(self.num, self.shift - m), other.den)
        b = _pmul(_shift_poly(other.num, other.shift - m), self.den)
        return QScalar(m, _padd(a, b), _pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        if not self:
            return self
        return QScalar(self.shift, _pneg(self.num), self.den, _raw=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self or not other:
            return _ZERO
        return QScalar(self.shift + other.shift,
                       _pmul(self.num, other.num),
                       _pmul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero")
        return QScalar(-self.shift, self.den, self.num)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = _ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- evaluation ---------------------------------------------------------

    def is_q_rational(self):
        """True iff the value is a rational function of q = s^2."""
        return (self.shift % 2 == 0
                and all(not c for c in self.num[1::2])
                and all(not c for c in self.den[1::2]))

    def evaluate(self, q0):
        """Exact value at q = q0 (a Fraction).  The element must be a
        rational function of q, and the denominator must not vanish."""
        q0 = Q(q0)
        if not self.is_q_rational():
            raise ValueError(
                f"{self} involves odd powers of s = q^(1/2); "
                "it is not a rational function of q")
        dv = _peval(self.den[0::2], q0)
        if not dv:
            raise ZeroDivisionError(
                f"denominator factor {_pstr(self.den)} vanishes at q={q0}")
        nv = _peval(self.num[0::2], q0)
        return q0 ** (self.shift // 2) * nv / dv

    # -- textual form: p(s)/r(s) with integer coefficients -------------------

    def __str__(self):
        num, den = self.num, self.den
        if len(num) == 1 and len(den) == 1 and self.shift == 0:
            return str(num[0] / den[0])
        if self.shift >= 0:
            num = _shift_poly(num, self.shift)
        else:
            den = _shift_poly(den, -self.shift)
        L = _ilcm(*(x.denominator for x in num))
        num = _pscale(num, L)
        den = _pscale(den, L)
        if den == (Q(1),):
            return _pstr(num)
        return f"({_pstr(num)})/({_pstr(den)})"

    __repr__ = __str__


def _shift_poly(c, k):
    return (Q(0),) * k + tuple(c)


_ZERO = QScalar(0, (Q(0),), (Q(1),), _raw=True)
_ONE = QScalar(0, (Q(1),), (Q(1),), _raw=True)


def _coerce(x):
    if isinstance(x, QScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return QScalar.from_fraction(x)
    return NotImplemented


# ---------------------------------------------------------------------------
# scalar fields


class SymbolicField:
    """Q(s) with s = q^(1/2); elements are QScalar."""

    name = "symbolic"
    is_classical = False
    fraction_elements = False

    zero = _ZERO
    one = _ONE

    def from_fraction(self, r):
        return QScalar.from_fraction(r)

    def q_power(self, e):
        """q^e for integer or half-integer e (2e must be an integer)."""
        e2 = 2 * Q(e)
        if e2.denominator != 1:
            raise ValueError(f"q^{e} is not in Q(s)")
        return QScalar.s_power(int(e2))

    def q_int(self, n, d=1):
        """[n] in base q^d, as a Laurent polynomial."""
        if n < 0:
            return -self.q_int(-n, d)
        return QScalar.laurent({2 * d * (n - 1 - 2 * k): 1 for k in range(n)})

    def evaluate(self, x, q0):
        return x.evaluate(q0)

    def __repr__(self):
        return "SymbolicField()"


class FixedField:
    """Scalars with q fixed at a rational q0 in (0, 1]; elements are
    Fraction.  q0 = 1 is the classical degeneration (all q-integers become
    ordinary integers via the power-sum form)."""

    zero = Q(0)
    one = Q(1)
    fraction_elements = True

    def __init__(self, q0):
        q0 = Q(q0)
        if not (0 < q0 <= 1):
            raise ValueError(f"q must lie in (0, 1], got {q0}")
        self.q0 = q0
        self.is_classical = q0 == 1
        self.name = "classical" if self.is_classical else f"q={q0}"

    def from_fraction(self, r):
        return Q(r)

    def q_power(self, e):
        if isinstance(e, Fraction) and e.denominator != 1:
            raise ValueError(f"q^{e}: half-integer powers need symbolic mode")
        return self.q0 ** int(e)

    def q_int(self, n, d=1):
        if n < 0:
            return -self.q_int(-n, d)
        return sum((self.q0 ** (d * (n - 1 - 2 * k)) for k in range(n)),
                   start=Q(0))

    def evaluate(self, x, q0):
        if Q(q0) != self.q0:
            raise ValueError(f"field is fixed at q={self.q0}, not q={q0}")
        return x

    def __repr__(self):
        return f"FixedField({self.q0})"


def classical_field():
    return FixedField(Q(1))
