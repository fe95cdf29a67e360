"""Exact arithmetic in the field Q(q) of rational functions of q.

A :class:`QScalar` is kept in a canonical fraction form at all times, so
equality (in particular, equality to zero) is a structural comparison.
Internally the value is ``s * N(q) / D(q)`` where

* ``s`` is a :class:`fractions.Fraction` carrying the sign and all rational
  content,
* ``N`` and ``D`` are primitive integer polynomials in q (dicts mapping
  nonnegative exponent to coefficient) with positive leading coefficients,
  ``gcd(N, D) = 1`` and no common power of q.

Laurent elements such as ``q + q^-1`` are therefore stored with the q-power
cleared into the denominator: ``(q^2+1)/q``.  The module also provides the
q-integers ``(n)_q`` and ``[n]_q`` with their factorials, substitution
q -> q^k, and exact evaluation at q = 1.
"""

from __future__ import annotations

from fractions import Fraction

from ._kernels import (
    ipoly_divexact,
    ipoly_gcd,
    ipoly_lin,
    ipoly_mul,
)

Rational = Fraction

_ONE_POLY = {0: 1}


class QDivisionError(ZeroDivisionError):
    """Division by the zero element of Q(q)."""


class PoleAtQOne(ArithmeticError):
    """Evaluation at q = 1 hit a non-removable pole; names the denominator."""


def _content_and_sign(a):
    from math import gcd

    g = 0
    for c in a.values():
        g = gcd(g, c)
        if g == 1:
            break
    if a[max(a)] < 0:
        g = -g
    return g


class QScalar:
    __slots__ = ("s", "nc", "dc")

    def __init__(self, s, nc, dc, _raw=False):
        if not _raw:
            raise TypeError("use the from_* constructors or parse()")
        self.s = s
        self.nc = nc
        self.dc = dc

    # -- construction -------------------------------------------------

    @staticmethod
    def _make(s, nc, dc):
        nc = {e: c for e, c in nc.items() if c}
        dc = {e: c for e, c in dc.items() if c}
        if not dc:
            raise QDivisionError("division by zero in Q(q)")
        if s == 0 or not nc:
            return ZERO
        shift = min(min(nc), min(dc))
        if shift:
            nc = {e - shift: c for e, c in nc.items()}
            dc = {e - shift: c for e, c in dc.items()}
        cn = _content_and_sign(nc)
        cd = _content_and_sign(dc)
        if cn != 1:
            nc = {e: c // cn for e, c in nc.items()}
        if cd != 1:
            dc = {e: c // cd for e, c in dc.items()}
        s = s * Fraction(cn, cd)
        g = ipoly_gcd(nc, dc)
        if g != _ONE_POLY:
            nc = ipoly_divexact(nc, g)
            dc = ipoly_divexact(dc, g)
        return QScalar(s, nc, dc, _raw=True)

    @classmethod
    def from_rational(cls, value):
        f = Fraction(value)
        if f == 0:
            return ZERO
        # nc/dc dicts are treated as immutable everywhere, so the unit
        # polynomial can be shared rather than copied per scalar
        return cls(f, _ONE_POLY, _ONE_POLY, _raw=True)

    @classmethod
    def from_int(cls, n):
        return cls.from_rational(n)

    @classmethod
    def q_power(cls, k):
        """The monomial q^k (k may be negative)."""
        if k >= 0:
            return cls(Fraction(1), {k: 1}, dict(_ONE_POLY), _raw=True)
        return cls(Fraction(1), dict(_ONE_POLY), {-k: 1}, _raw=True)

    @classmethod
    def from_terms(cls, terms):
        """Build from {exponent: rational coefficient} (a Laurent polynomial)."""
        acc = ZERO
        for e, c in terms.items():
            acc = acc + cls.from_rational(c) * cls.q_power(e)
        return acc

    # -- Laurent views ---------------------------------------------------

    @property
    def numerator(self):
        """Numerator as {exponent: Fraction}; carries the rational content."""
        return {e: c * self.s for e, c in self.nc.items()}

    @property
    def denominator(self):
        """Denominator as {exponent: Fraction}."""
        return {e: Fraction(c) for e, c in self.dc.items()}

    # -- predicates ----------------------------------------------------

    def is_zero(self):
        return self.s == 0

    def is_one(self):
        return self.s == 1 and self.nc == _ONE_POLY and self.dc == _ONE_POLY

    def is_rational(self):
        return self.nc == _ONE_POLY and self.dc == _ONE_POLY or self.s == 0

    def as_rational(self):
        if not self.is_rational():
            raise ValueError(f"not a rational constant: {self}")
        return self.s

    # -- ring/field operations ------------------------------------------

    def __add__(self, other):
        if not isinstance(other, QScalar):
            return NotImplemented
        if self.s == 0:
            return other
        if other.s == 0:
            return self
        if self.is_rational() and other.is_rational():
            return QScalar.from_rational(self.s + other.s)
        g = ipoly_gcd(self.dc, other.dc)
        if g == _ONE_POLY:
            d1r, d2r = self.dc, other.dc
        else:
            d1r = ipoly_divexact(self.dc, g)
            d2r = ipoly_divexact(other.dc, g)
        a = ipoly_mul(self.nc, d2r)
        b = ipoly_mul(other.nc, d1r)
        s1, s2 = self.s, other.s
        num = ipoly_lin(a, s1.numerator * s2.denominator, b, s2.numerator * s1.denominator)
        den = ipoly_mul(self.dc, d2r)
        return QScalar._make(Fraction(1, s1.denominator * s2.denominator), num, den)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        if self.s == 0:
            return self
        return QScalar(-self.s, self.nc, self.dc, _raw=True)

    def __mul__(self, other):
        if not isinstance(other, QScalar):
            return NotImplemented
        if self.s == 0 or other.s == 0:
            return ZERO
        # scaling a canonical fraction by a nonzero rational keeps it canonical
        if self.is_rational():
            return QScalar(self.s * other.s, other.nc, other.dc, _raw=True)
        if other.is_rational():
            return QScalar(self.s * other.s, self.nc, self.dc, _raw=True)
        g1 = ipoly_gcd(self.nc, other.dc)
        g2 = ipoly_gcd(other.nc, self.dc)
        n1 = self.nc if g1 == _ONE_POLY else ipoly_divexact(self.nc, g1)
        d2 = other.dc if g1 == _ONE_POLY else ipoly_divexact(other.dc, g1)
        n2 = other.nc if g2 == _ONE_POLY else ipoly_divexact(other.nc, g2)
        d1 = self.dc if g2 == _ONE_POLY else ipoly_divexact(self.dc, g2)
        return QScalar._make(self.s * other.s, ipoly_mul(n1, n2), ipoly_mul(d1, d2))

    def inv(self):
        if self.s == 0:
            raise QDivisionError("inverse of zero in Q(q)")
        return QScalar._make(1 / self.s, dict(self.dc), dict(self.nc))

    def __truediv__(self, other):
        if not isinstance(other, QScalar):
            return NotImplemented
        return self * other.inv()

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        acc = ONE
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def __eq__(self, other):
        if not isinstance(other, QScalar):
            return NotImplemented
        return self.s == other.s and self.nc == other.nc and self.dc == other.dc

    def __hash__(self):
        return hash((self.s, frozenset(self.nc.items()), frozenset(self.dc.items())))

    # -- q-specific maps -------------------------------------------------

    def subs_power(self, k):
        """Substitute q -> q^k (k a nonzero integer)."""
        if k == 0:
            raise ValueError("substitution power must be nonzero")
        if self.s == 0 or (k == 1):
            return self
        return QScalar._make(
            self.s,
            {e * k: c for e, c in self.nc.items()},
            {e * k: c for e, c in self.dc.items()},
        )

    def eval_q1(self):
        """Exact value at q = 1; raises PoleAtQOne on a genuine pole."""
        if self.s == 0:
            return Fraction(0)
        den = sum(self.dc.values())
        if den == 0:
            raise PoleAtQOne(f"pole at q=1 with denominator {_poly_str(self.dc)}")
        return self.s * Fraction(sum(self.nc.values()), den)

    # -- rendering / parsing ----------------------------------------------

    def __str__(self):
        if self.s == 0:
            return "0"
        num = _poly_str(self.nc, self.s)
        if self.dc == _ONE_POLY:
            return num
        den = _poly_str(self.dc)
        if len(self.nc) > 1 or "*" in num or "/" in num or num.startswith("-"):
            num = f"({num})"
        if len(self.dc) > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"QScalar({self})"


def _term_str(coef, exp):
    if exp == 0:
        return str(coef)
    qpart = "q" if exp == 1 else f"q^{exp}"
    if coef == 1:
        return qpart
    if coef == -1:
        return f"-{qpart}"
    return f"{coef}*{qpart}"


def _poly_str(poly, scale=Fraction(1)):
    parts = []
    for e in sorted(poly, reverse=True):
        c = poly[e] * scale
        t = _term_str(c, e)
        if parts and not t.startswith("-"):
            parts.append("+" + t)
        else:
            parts.append(t)
    return "".join(parts)


ZERO = QScalar(Fraction(0), {}, dict(_ONE_POLY), _raw=True)
ONE = QScalar(Fraction(1), dict(_ONE_POLY), dict(_ONE_POLY), _raw=True)
Q = QScalar.q_power(1)
QINV = QScalar.q_power(-1)


def qs(value):
    """Coerce an int/Fraction/QScalar to QScalar."""
    if isinstance(value, QScalar):
        return value
    return QScalar.from_rational(value)


# -- q-combinatorics ------------------------------------------------------


def q_number(kind, n, base_power=1):
    """q-integers and their factorials in the variable q^base_power.

    ``paren``:   (n)_{q^k} = 1 + q^k + ... + q^{k(n-1)}
    ``bracket``: [n]_{q^k} = (q^{kn} - q^{-kn}) / (q^k - q^{-k})
    plus ``paren_factorial`` and ``bracket_factorial``; (0)! = [0]! = 1.
    """
    if n < 0:
        raise ValueError("q_number requires n >= 0")
    if base_power == 0:
        raise ValueError("base power must be nonzero")
    if kind == "paren":
        return QScalar.from_terms({base_power * i: 1 for i in range(n)})
    if kind == "bracket":
        body = QScalar.from_terms({2 * base_power * i: 1 for i in range(n)})
        return QScalar.q_power(-base_power * (n - 1)) * body if n else ZERO
    if kind in ("paren_factorial", "bracket_factorial"):
        base_kind = "paren" if kind.startswith("paren") else "bracket"
        acc = ONE
        for m in range(1, n + 1):
            acc = acc * q_number(base_kind, m, base_power)
        return acc
    raise ValueError(f"unknown q-number kind: {kind!r}")


def scalar_arith(op, lhs, rhs=None):
    """Named dispatcher over the field operations (add, mul, div, neg)."""
    if op == "add":
        return lhs + rhs
    if op == "mul":
        return lhs * rhs
    if op == "div":
        return lhs / rhs
    if op == "neg":
        return -lhs
    raise ValueError(f"unknown operation {op!r}")


def map_q(x, action, power=None):
    """Named dispatcher over the q-variable maps.

    ``substitute_power`` returns x with q replaced by q^power;
    ``eval_q1`` returns the exact rational value at q = 1.
    """
    if action == "substitute_power":
        if power is None:
            raise ValueError("substitute_power needs a power")
        return x.subs_power(power)
    if action == "eval_q1":
        return x.eval_q1()
    raise ValueError(f"unknown action {action!r}")


def paren(n, base_power=1):
    return q_number("paren", n, base_power)


def bracket(n, base_power=1):
    return q_number("bracket", n, base_power)


# -- parsing ---------------------------------------------------------------


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise ValueError(f"parse error at {self.pos} in {self.text!r}: {msg}")

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expr(self):
        acc = self.term()
        while True:
            c = self.peek()
            if c == "+":
                self.pos += 1
                acc = acc + self.term()
            elif c == "-":
                self.pos += 1
                acc = acc - self.term()
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            c = self.peek()
            if c == "*":
                self.pos += 1
                acc = acc * self.factor()
            elif c == "/":
                self.pos += 1
                acc = acc / self.factor()
            else:
                return acc

    def factor(self):
        c = self.peek()
        if c == "-":
            self.pos += 1
            return -self.factor()
        if c == "(":
            self.pos += 1
            val = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return self.power_suffix(val)
        if c == "q":
            self.pos += 1
            return self.power_suffix(Q)
        if c.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            val = QScalar.from_int(int(self.text[start : self.pos]))
            return self.power_suffix(val)
        self.error("expected a factor")

    def power_suffix(self, val):
        if self.peek() == "^":
            self.pos += 1
            sign = 1
            if self.peek() == "-":
                sign = -1
                self.pos += 1
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if start == self.pos:
                self.error("expected an integer exponent")
            return val ** (sign * int(self.text[start : self.pos]))
        return val


def parse_qscalar(text):
    """Parse the rendering grammar, e.g. ``(q^2+1)/(q)`` or ``1/2*q^3-1``."""
    p = _Parser(text)
    val = p.expr()
    if p.peek():
        p.error("trailing input")
    return val
