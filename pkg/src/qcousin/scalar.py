"""Exact ground fields carrying the deformation parameter ``q``.

Three fields are supported:

* ``Rationals`` -- the rational numbers with ``q = 1``;
* ``GenericQ`` -- rational functions in an indeterminate ``q`` over the rationals;
* ``CyclotomicQ(m)`` -- ``Q(q)`` with ``q`` a primitive ``m``-th root of unity.

Elements are :class:`Scalar` objects in a canonical form, so equality is structural.
"""

from fractions import Fraction
from functools import lru_cache

from .errors import ConfigurationError, FieldArithmeticError, ParseError

__all__ = [
    "Field",
    "Rationals",
    "GenericQ",
    "CyclotomicQ",
    "Scalar",
    "field_from_spec",
]


# --- dense univariate polynomials over Q, coefficient tuples low -> high ---

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _pneg(a):
    return tuple(-c for c in a)


def _pscale(a, s):
    if s == 0:
        return ()
    return tuple(c * s for c in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    if len(a) == 1:
        return _pscale(b, a[0])
    if len(b) == 1:
        return _pscale(a, b[0])
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _pdivmod(a, b):
    if not b:
        raise FieldArithmeticError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    quot = [Fraction(0)] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c == 0:
            continue
        f = c / lb
        quot[i - db] = f
        for j, y in enumerate(b):
            a[i - db + j] -= f * y
    return _trim(quot), _trim(a[:db])


def _pmonic(a):
    if not a or a[-1] == 1:
        return a
    return _pscale(a, 1 / Fraction(a[-1]))


def _pgcd(a, b):
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return _pmonic(a)


def _pxgcd(a, b):
    """Return (g, s) with g = gcd(a, b) monic and s*a = g mod b."""
    r0, r1 = a, b
    s0, s1 = (Fraction(1),), ()
    while r1:
        qt, r = _pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _padd(s0, _pneg(_pmul(qt, s1)))
    lc = r0[-1]
    return _pscale(r0, 1 / lc), _pscale(s0, 1 / lc)


def _frac_str(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _mono_str(c, e):
    """Format c*q^e with a leading sign when negative."""
    if e == 0:
        return _frac_str(c)
    qpart = "q" if e == 1 else f"q^{e}"
    if c == 1:
        return qpart
    if c == -1:
        return "-" + qpart
    return f"{_frac_str(c)} {qpart}"


def _poly_str(c, shift=0):
    """Format sum c_i q^(i+shift), highest degree first."""
    terms = [(i + shift, x) for i, x in enumerate(c) if x != 0]
    if not terms:
        return "0"
    out = ""
    for k, (e, x) in enumerate(reversed(terms)):
        s = _mono_str(x, e)
        if k == 0:
            out = s
        elif s.startswith("-"):
            out += " - " + s[1:]
        else:
            out += " + " + s
    return out


def _is_compound(text):
    """True when text has a top-level + or - beyond a leading sign."""
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and i > 0 and ch in "+-" and text[i - 1] == " ":
            return True
    return False


class Field:
    """Base class; concrete fields implement the raw operations on canonical values."""

    kind = "abstract"

    def __eq__(self, other):
        return isinstance(other, Field) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return f"{type(self).__name__}({self.spec!r})"

    @property
    def spec(self):
        raise NotImplementedError

    @property
    def zero(self):
        return Scalar(self, self._from_fraction(Fraction(0)))

    @property
    def one(self):
        return Scalar(self, self._from_fraction(Fraction(1)))

    @property
    def q(self):
        return self.q_power(1)

    def __call__(self, x):
        if isinstance(x, Scalar):
            if x.field != self:
                raise ConfigurationError(f"scalar from {x.field.spec} used in {self.spec}")
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar(self, self._from_fraction(Fraction(x)))
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot convert {type(x).__name__} to a scalar")

    def q_power(self, e):
        return self._q_power_cached(int(e))

    def parse(self, text):
        from .textform import parse_scalar

        return parse_scalar(self, text)

    # raw interface
    def _from_fraction(self, c):
        raise NotImplementedError

    def _add(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _inv(self, a):
        raise NotImplementedError

    def _is_zero(self, a):
        raise NotImplementedError

    def _format(self, a):
        raise NotImplementedError


class Rationals(Field):
    """The rationals; the deformation parameter specializes to q = 1."""

    kind = "rationals"

    @property
    def spec(self):
        return "rationals"

    def _q_power_cached(self, e):
        return self.one

    def _from_fraction(self, c):
        return c

    def _add(self, a, b):
        return a + b

    def _neg(self, a):
        return -a

    def _mul(self, a, b):
        return a * b

    def _inv(self, a):
        if a == 0:
            raise FieldArithmeticError("inverse of zero")
        return 1 / a

    def _is_zero(self, a):
        return a == 0

    def _format(self, a):
        return _frac_str(a)


_GQ_ZERO = (0, (), (Fraction(1),))


class GenericQ(Field):
    """Rational functions in q over Q.

    Values are stored as ``(v, N, D)`` meaning ``q^v * N(q) / D(q)`` with ``N(0) != 0``,
    ``D(0) != 0``, ``D`` monic and ``gcd(N, D) = 1``. Laurent monomials therefore never
    trigger a polynomial gcd.
    """

    kind = "generic_q"

    def __init__(self):
        self._qcache = {}

    @property
    def spec(self):
        return "generic_q"

    def _q_power_cached(self, e):
        s = self._qcache.get(e)
        if s is None:
            s = self._qcache[e] = Scalar(self, (e, (Fraction(1),), (Fraction(1),)))
        return s

    def _from_fraction(self, c):
        if c == 0:
            return _GQ_ZERO
        return (0, (c,), (Fraction(1),))

    @staticmethod
    def _normalize(v, num, den):
        num = _trim(num)
        if not num:
            return _GQ_ZERO
        k = 0
        while num[k] == 0:
            k += 1
        if k:
            num = num[k:]
            v += k
        if len(den) > 1:
            g = _pgcd(num, den)
            if len(g) > 1:
                num = _pdivmod(num, g)[0]
                den = _pdivmod(den, g)[0]
        lc = den[-1]
        if lc != 1:
            num = _pscale(num, 1 / lc)
            den = _pscale(den, 1 / lc)
        return (v, num, den)

    def _add(self, a, b):
        va, na, da = a
        vb, nb, db = b
        if not na:
            return b
        if not nb:
            return a
        v = min(va, vb)
        pa = (Fraction(0),) * (va - v) + na
        pb = (Fraction(0),) * (vb - v) + nb
        if da == db:
            return self._normalize(v, _padd(pa, pb), da)
        return self._normalize(v, _padd(_pmul(pa, db), _pmul(pb, da)), _pmul(da, db))

    def _neg(self, a):
        v, n, d = a
        return (v, _pneg(n), d)

    def _mul(self, a, b):
        va, na, da = a
        vb, nb, db = b
        if not na or not nb:
            return _GQ_ZERO
        if len(da) == 1 and len(db) == 1:
            return (va + vb, _pmul(na, nb), da)
        return self._normalize(va + vb, _pmul(na, nb), _pmul(da, db))

    def _inv(self, a):
        v, n, d = a
        if not n:
            raise FieldArithmeticError("inverse of zero")
        return self._normalize(-v, d, n)

    def _is_zero(self, a):
        return not a[1]

    def _format(self, a):
        v, n, d = a
        if not n:
            return "0"
        if len(n) == 1 and len(d) == 1:
            return _mono_str(n[0], v)
        num = _poly_str(n, max(v, 0))
        if len(d) == 1 and v >= 0:
            return num
        den = _poly_str(d, max(-v, 0))
        num_s = f"({num})" if _is_compound(num) or " " in num else num
        den_s = f"({den})" if _is_compound(den) or " " in den or "/" in den else den
        return f"{num_s}/{den_s}"


@lru_cache(maxsize=None)
def _cyclotomic_coeffs(m):
    from sympy import Poly, Symbol, cyclotomic_poly

    x = Symbol("x")
    coeffs = Poly(cyclotomic_poly(m, x), x).all_coeffs()
    return tuple(Fraction(int(c)) for c in reversed(coeffs))


class CyclotomicQ(Field):
    """Q(q) with q a primitive m-th root of unity; values are residues mod Phi_m."""

    kind = "cyclotomic"

    def __init__(self, m):
        m = int(m)
        if m < 2:
            raise ConfigurationError("cyclotomic order must be at least 2")
        self.m = m
        self.modulus = _cyclotomic_coeffs(m)
        self.degree = len(self.modulus) - 1
        self._qcache = {}

    @property
    def spec(self):
        return f"cyclotomic:{self.m}"

    def _reduce(self, c):
        c = _trim(c)
        if len(c) <= self.degree:
            return c
        return _pdivmod(c, self.modulus)[1]

    def _q_power_cached(self, e):
        e %= self.m
        s = self._qcache.get(e)
        if s is None:
            s = self._qcache[e] = Scalar(self, self._reduce((Fraction(0),) * e + (Fraction(1),)))
        return s

    def _from_fraction(self, c):
        return _trim((c,))

    def _add(self, a, b):
        return _padd(a, b)

    def _neg(self, a):
        return _pneg(a)

    def _mul(self, a, b):
        return self._reduce(_pmul(a, b))

    def _inv(self, a):
        if not a:
            raise FieldArithmeticError("inverse of zero")
        g, s = _pxgcd(a, self.modulus)
        if len(g) != 1:
            raise FieldArithmeticError("element not invertible modulo the cyclotomic polynomial")
        return self._reduce(s)

    def _is_zero(self, a):
        return not a

    def _format(self, a):
        return _poly_str(a)


class Scalar:
    """An element of one of the ground fields, in canonical form."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field is not self.field and other.field != self.field:
                raise ConfigurationError(
                    f"cannot combine scalars from {self.field.spec} and {other.field.spec}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar(self.field, self.field._from_fraction(Fraction(other)))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.field, self.field._add(self.value, o.value))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.field, self.field._neg(self.value))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.field, self.field._add(self.value, self.field._neg(o.value)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.field, self.field._mul(self.value, o.value))

    __rmul__ = __mul__

    def inverse(self):
        return Scalar(self.field, self.field._inv(self.value))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e):
        e = int(e)
        base = self if e >= 0 else self.inverse()
        result = self.field.one
        e = abs(e)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return not self.field._is_zero(self.value)

    def is_zero(self):
        return self.field._is_zero(self.value)

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, Scalar) else other
        if o is None:
            return NotImplemented
        return self.field == o.field and self.value == o.value

    def __hash__(self):
        return hash((self.field.spec, self.value))

    def __str__(self):
        return self.field._format(self.value)

    def __repr__(self):
        return f"Scalar({self.field.spec}, {self})"


_FIELDS = {}


def field_from_spec(spec):
    """Return the (shared) field for a spec string: 'rationals', 'generic_q' or 'cyclotomic:m'."""
    if isinstance(spec, Field):
        return spec
    key = str(spec).strip().lower().replace("-", "_")
    if key in ("q", "rational", "q1"):
        key = "rationals"
    if key not in _FIELDS:
        if key == "rationals":
            _FIELDS[key] = Rationals()
        elif key == "generic_q":
            _FIELDS[key] = GenericQ()
        elif key.startswith("cyclotomic"):
            _, _, m = key.partition(":")
            try:
                order = int(m)
            except ValueError:
                raise ParseError(f"bad cyclotomic field spec {spec!r}; expected 'cyclotomic:m'") from None
            _FIELDS[key] = CyclotomicQ(order)
            key = _FIELDS[key].spec
            _FIELDS.setdefault(key, _FIELDS[f"cyclotomic:{m}"])
        else:
            raise ParseError(f"unknown field {spec!r}")
    return _FIELDS[key]
