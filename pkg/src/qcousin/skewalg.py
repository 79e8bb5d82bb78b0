"""The quantum polynomial algebra A_{q,n}.

Generators x_1, ..., x_{n+1} with x_i x_j = q x_j x_i for i < j. Elements are kept in
the PBW normal form: linear combinations of ordered words x_1^{a_1} ... x_{n+1}^{a_{n+1}},
stored as exponent tuples. The product of two normal words is

    x^a * x^b = q^{-kappa(a, b)} x^{a+b},    kappa(a, b) = sum_{i<j} a_j b_i,

kappa counting the transpositions needed to sort the concatenated word.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb

from .errors import ConfigurationError
from .scalar import Scalar, field_from_spec

__all__ = ["QuantumAlgebra", "SkewPolynomial", "kappa", "mono_key", "mono_degree", "mono_str"]


def kappa(a, b):
    """Inversion count of the concatenated word x^a x^b."""
    total = 0
    prefix = 0
    for aj, bj in zip(a, b):
        if aj:
            total += aj * prefix
        prefix += bj
    return total


def mono_degree(a):
    return sum(a)


def mono_key(a):
    """Sort key: graded, then lexicographic with x_{n+1} most significant."""
    return (sum(a), a[::-1])


def mono_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_str(a):
    """Text form of a monomial, e.g. 'x1^2*x3'; the empty word is '1'."""
    parts = []
    for i, e in enumerate(a):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts) if parts else "1"


def term_str(coeff, word):
    """Format coeff * word where word is a text monomial ('1' for the unit)."""
    c = str(coeff)
    if word == "1":
        return c
    if c == "1":
        return word
    if c == "-1":
        return "-" + word
    from .scalar import _is_compound

    if _is_compound(c):
        c = f"({c})"
    return f"{c} {word}"


def join_terms(parts):
    if not parts:
        return "0"
    out = parts[0]
    for s in parts[1:]:
        if s.startswith("-"):
            out += " - " + s[1:]
        else:
            out += " + " + s
    return out


class QuantumAlgebra:
    """A_{q,n}: n+1 skew-commuting variables over an exact field."""

    def __init__(self, n, field):
        if n < 0:
            raise ConfigurationError("n must be nonnegative")
        self.n = int(n)
        self.nvars = self.n + 1
        self.field = field_from_spec(field)
        self._mono_cache = {}

    def __eq__(self, other):
        return isinstance(other, QuantumAlgebra) and self.n == other.n and self.field == other.field

    def __hash__(self):
        return hash((self.n, self.field))

    def __repr__(self):
        return f"QuantumAlgebra(n={self.n}, field={self.field.spec!r})"

    def check_same(self, other):
        if self != other:
            raise ConfigurationError(f"mismatched algebras {self!r} and {other!r}")

    # monomials
    def unit_vector(self, i, power=1):
        """Exponent tuple of x_{i+1}^power (0-based variable index i)."""
        e = [0] * self.nvars
        e[i] = power
        return tuple(e)

    def one_mono(self):
        return (0,) * self.nvars

    def monomials(self, d):
        """All normal words of degree d in the deterministic storage order."""
        if d < 0:
            return []
        cached = self._mono_cache.get(d)
        if cached is None:
            cached = _monomials(self.nvars, d)
            self._mono_cache[d] = cached
        return cached

    def dimension(self, d):
        return comb(self.n + d, self.n) if d >= 0 else 0

    def q_power(self, e):
        return self.field.q_power(e)

    def mono_mul(self, a, b):
        """Return (scalar, word) with x^a * x^b = scalar * x^word."""
        k = kappa(a, b)
        return (self.field.q_power(-k) if k else self.field.one), mono_add(a, b)

    # polynomial constructors
    def zero(self):
        return SkewPolynomial(self, {})

    def one(self):
        return SkewPolynomial(self, {self.one_mono(): self.field.one})

    def var(self, i):
        """The generator x_i (1-based, as in the text form)."""
        if not 1 <= i <= self.nvars:
            raise ConfigurationError(f"variable x{i} out of range for n={self.n}")
        return SkewPolynomial(self, {self.unit_vector(i - 1): self.field.one})

    def monomial(self, a, coeff=None):
        a = tuple(a)
        if len(a) != self.nvars or min(a, default=0) < 0:
            raise ConfigurationError(f"bad exponent vector {a} for n={self.n}")
        c = self.field.one if coeff is None else self.field(coeff)
        return SkewPolynomial(self, {a: c} if c else {})

    def scalar(self, c):
        return self.monomial(self.one_mono(), c)

    def parse(self, text):
        from .textform import parse_polynomial

        return parse_polynomial(self, text)

    def phi_twist(self, u, f):
        """The automorphism phi_u with u * f = phi_u(f) * u for a normal word u.

        On words phi_u(x^b) = q^{kappa(b, u) - kappa(u, b)} x^b.
        """
        u = tuple(u)
        terms = {}
        for b, c in f.terms.items():
            e = kappa(b, u) - kappa(u, b)
            terms[b] = c * self.field.q_power(e) if e else c
        return SkewPolynomial(self, terms)


@lru_cache(maxsize=None)
def _monomials(nvars, d):
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=mono_key)
    return tuple(out)


class SkewPolynomial:
    """An element of A_{q,n} in PBW normal form (word -> nonzero scalar)."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = {a: c for a, c in terms.items() if c}

    def _other(self, other):
        if isinstance(other, SkewPolynomial):
            self.alg.check_same(other.alg)
            return other
        if isinstance(other, (int, Fraction, Scalar)):
            return self.alg.scalar(other)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for a, c in o.terms.items():
            terms[a] = terms[a] + c if a in terms else c
        return SkewPolynomial(self.alg, terms)

    __radd__ = __add__

    def __neg__(self):
        return SkewPolynomial(self.alg, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, SkewPolynomial):
            self.alg.check_same(other.alg)
            return multiply(self, other)
        o = self._other(other)
        if o is None:
            return NotImplemented
        return multiply(self, o)

    def __rmul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return multiply(o, self)

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative powers are not defined in A_{q,n}")
        out = self.alg.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._other(other) if not isinstance(other, SkewPolynomial) else other
        if o is None:
            return NotImplemented
        return self.alg == o.alg and self.terms == o.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items(), key=lambda t: mono_key(t[0]))))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def sorted_terms(self):
        """Terms in storage order (ascending)."""
        return sorted(self.terms.items(), key=lambda t: mono_key(t[0]))

    def degrees(self):
        return {sum(a) for a in self.terms}

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def degree(self):
        """Degree of a homogeneous nonzero element; None for zero."""
        ds = self.degrees()
        if not ds:
            return None
        if len(ds) > 1:
            raise ValueError("polynomial is not homogeneous")
        return ds.pop()

    def coefficient(self, a):
        return self.terms.get(tuple(a), self.alg.field.zero)

    def __str__(self):
        parts = [term_str(c, mono_str(a)) for a, c in self.sorted_terms()]
        return join_terms(parts)

    def __repr__(self):
        return f"SkewPolynomial({self})"


def multiply(f, g):
    """Skew product f * g, extended bilinearly from the word rule."""
    alg = f.alg
    alg.check_same(g.alg)
    terms = {}
    for a, ca in f.terms.items():
        for b, cb in g.terms.items():
            s, w = alg.mono_mul(a, b)
            c = ca * cb * s
            if w in terms:
                terms[w] = terms[w] + c
            else:
                terms[w] = c
    return SkewPolynomial(alg, terms)


def phi_twist(u, f):
    """Module-level alias of :meth:`QuantumAlgebra.phi_twist`."""
    return f.alg.phi_twist(u, f)
