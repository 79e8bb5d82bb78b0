"""Text forms of scalars, polynomials and free-module vectors.

The grammar is a small arithmetic language over the symbols ``q``, ``x1 .. x{n+1}`` and
``e`` / ``e1 .. ek``; juxtaposition means multiplication and products are evaluated in
the algebra, so ``x2*x1`` parses to ``q^-1 x1*x2``::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*' | '/' | <juxtaposition>) factor)*
    factor := '-' factor | atom ['^' ['-'] INT]
    atom   := INT | 'q' | 'x' INT | 'e' [INT] | '(' expr ')'
"""

import re
from fractions import Fraction

from .errors import ParseError
from .scalar import Scalar
from .skewalg import SkewPolynomial, join_terms, mono_key, mono_str, term_str

__all__ = [
    "parse_scalar",
    "parse_polynomial",
    "parse_vector",
    "format_vector",
    "vector_terms",
]

_TOKEN = re.compile(r"\s*(?:(\d+)|(q)|x(\d+)|(e)(\d*)|([-+*/^()]))")


def _tokenize(text):
    pos = 0
    toks = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            col = pos + 1
            while col <= len(text) and text[col - 1].isspace():
                col += 1
            raise ParseError(f"unexpected character {text[col - 1:col]!r}", column=col)
        start = m.start(m.lastindex) + 1
        if m.group(1) is not None:
            toks.append(("int", int(m.group(1)), start))
        elif m.group(2):
            toks.append(("q", None, start))
        elif m.group(3) is not None:
            toks.append(("x", int(m.group(3)), start))
        elif m.group(4):
            toks.append(("e", int(m.group(5)) if m.group(5) else None, start))
        else:
            toks.append((m.group(6), None, start))
        pos = m.end()
    toks.append(("end", None, len(text) + 1))
    return toks


class _Vec:
    """Free-module vector during parsing: {(t, word): scalar}."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = {k: c for k, c in terms.items() if c}


class _Parser:
    def __init__(self, text, field, alg=None, rank=None):
        self.toks = _tokenize(text)
        self.i = 0
        self.field = field
        self.alg = alg
        self.rank = rank

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {self._desc(tok)}", column=tok[2])
        self.i += 1
        return tok

    @staticmethod
    def _desc(tok):
        return "end of input" if tok[0] == "end" else repr(tok[0] if tok[1] is None else f"{tok[0]}{tok[1]}")

    def parse(self):
        val = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {self._desc(tok)}", column=tok[2])
        return val

    def expr(self):
        tok = self.peek()
        neg = False
        if tok[0] in "+-" and tok[0] != "end":
            self.take()
            neg = tok[0] == "-"
        val = self.term()
        if neg:
            val = self.neg(val)
        while self.peek()[0] in ("+", "-"):
            op = self.take()
            rhs = self.term()
            val = self.add(val, self.neg(rhs) if op[0] == "-" else rhs, op[2])
        return val

    def term(self):
        val = self.factor()
        while True:
            tok = self.peek()
            if tok[0] == "*":
                self.take()
                val = self.mul(val, self.factor(), tok[2])
            elif tok[0] == "/":
                self.take()
                val = self.div(val, self.factor(), tok[2])
            elif tok[0] in ("int", "q", "x", "e", "("):
                val = self.mul(val, self.factor(), tok[2])
            else:
                return val

    def factor(self):
        tok = self.peek()
        if tok[0] == "-":
            self.take()
            return self.neg(self.factor())
        val = self.atom()
        if self.peek()[0] == "^":
            caret = self.take()
            sign = 1
            if self.peek()[0] == "-":
                self.take()
                sign = -1
            elif self.peek()[0] == "+":
                self.take()
            e = self.take("int")[1] * sign
            val = self.power(val, e, caret[2])
        return val

    def atom(self):
        tok = self.take()
        kind, arg, col = tok
        if kind == "int":
            return self.field(arg)
        if kind == "q":
            return self.field.q
        if kind == "x":
            if self.alg is None:
                raise ParseError("variables are not allowed in a scalar", column=col)
            if not 1 <= arg <= self.alg.nvars:
                raise ParseError(f"variable x{arg} out of range for n={self.alg.n}", column=col)
            return self.alg.var(arg)
        if kind == "e":
            if self.rank is None:
                raise ParseError("module generators are not allowed here", column=col)
            t = 1 if arg is None else arg
            if arg is None and self.rank != 1:
                raise ParseError("bare 'e' needs a rank-1 module; use e1..ek", column=col)
            if not 1 <= t <= self.rank:
                raise ParseError(f"generator e{t} out of range (rank {self.rank})", column=col)
            return _Vec({(t - 1, self.alg.one_mono()): self.field.one})
        if kind == "(":
            val = self.expr()
            self.take(")")
            return val
        raise ParseError(f"unexpected {self._desc(tok)}", column=col)

    # evaluation
    def promote(self, v):
        if isinstance(v, Scalar) and self.alg is not None:
            return self.alg.scalar(v)
        return v

    def neg(self, v):
        if isinstance(v, _Vec):
            return _Vec({k: -c for k, c in v.terms.items()})
        return -v

    def add(self, a, b, col):
        if isinstance(a, _Vec) or isinstance(b, _Vec):
            if not (isinstance(a, _Vec) and isinstance(b, _Vec)):
                if self._is_zero(a) or self._is_zero(b):
                    return a if isinstance(a, _Vec) else b
                raise ParseError("cannot add a module element and a ring element", column=col)
            terms = dict(a.terms)
            for k, c in b.terms.items():
                terms[k] = terms[k] + c if k in terms else c
            return _Vec(terms)
        if isinstance(a, Scalar) and isinstance(b, Scalar):
            return a + b
        return self.promote(a) + self.promote(b)

    @staticmethod
    def _is_zero(v):
        return (isinstance(v, Scalar) and not v) or (isinstance(v, SkewPolynomial) and not v)

    def mul(self, a, b, col):
        if isinstance(a, _Vec):
            if isinstance(b, Scalar) or (isinstance(b, SkewPolynomial) and self._const(b) is not None):
                s = b if isinstance(b, Scalar) else self._const(b)
                return _Vec({k: c * s for k, c in a.terms.items()})
            raise ParseError("module elements can only be multiplied on the left", column=col)
        if isinstance(b, _Vec):
            if isinstance(a, Scalar):
                return _Vec({k: a * c for k, c in b.terms.items()})
            terms = {}
            for (t, w), c in b.terms.items():
                for u, cu in a.terms.items():
                    s, word = self.alg.mono_mul(u, w)
                    key = (t, word)
                    val = cu * c * s
                    terms[key] = terms[key] + val if key in terms else val
            return _Vec(terms)
        if isinstance(a, Scalar) and isinstance(b, Scalar):
            return a * b
        return self.promote(a) * self.promote(b)

    def _const(self, p):
        if not p.terms:
            return self.field.zero
        if set(p.terms) == {self.alg.one_mono()}:
            return p.terms[self.alg.one_mono()]
        return None

    def _as_scalar(self, v):
        if isinstance(v, Scalar):
            return v
        if isinstance(v, SkewPolynomial):
            return self._const(v)
        return None

    def div(self, a, b, col):
        s = self._as_scalar(b)
        if s is None:
            raise ParseError("division is only defined by nonzero scalars", column=col)
        if not s:
            raise ParseError("division by zero", column=col)
        return self.mul(a, s.inverse(), col)

    def power(self, v, e, col):
        s = self._as_scalar(v)
        if s is not None:
            if not s and e < 0:
                raise ParseError("zero raised to a negative power", column=col)
            return s**e
        if isinstance(v, _Vec):
            raise ParseError("module elements cannot be raised to a power", column=col)
        if e < 0:
            raise ParseError("negative powers of non-scalars are not allowed", column=col)
        return v**e


def parse_scalar(field, text):
    val = _Parser(text, field).parse()
    return val


def parse_polynomial(alg, text):
    """Parse text into a :class:`SkewPolynomial` of ``alg``."""
    val = _Parser(text, alg.field, alg).parse()
    if isinstance(val, _Vec):
        raise ParseError("expected a polynomial, found a module element")
    if isinstance(val, Scalar):
        return alg.scalar(val)
    return val


def parse_vector(alg, rank, text):
    """Parse a free-module element such as ``x3*e1 - q x2*e2`` into {(t, word): scalar}."""
    val = _Parser(text, alg.field, alg, rank).parse()
    if isinstance(val, _Vec):
        return dict(val.terms)
    if not val:
        return {}
    raise ParseError("expected a module element (use e or e1..ek)")


def gen_name(t, rank):
    return "e" if rank == 1 else f"e{t + 1}"


def vector_terms(vec, rank):
    """(coefficient, word text) pairs of a free-module vector in storage order."""
    out = []
    for (t, w), c in sorted(vec.items(), key=lambda kv: (kv[0][0], mono_key(kv[0][1]))):
        m = mono_str(w)
        g = gen_name(t, rank)
        out.append((c, g if m == "1" else f"{m}*{g}"))
    return out


def format_vector(vec, rank):
    return join_terms([term_str(c, w) for c, w in vector_terms(vec, rank)])


def format_localized(vec, rank, denominator, power):
    """Text of the fraction denominator^-power * vec, e.g. 'x2^-1*x1*e'.

    ``denominator`` is an exponent tuple; for rank-1 modules the trailing '*e' is dropped.
    """
    if power == 0 or not any(denominator):
        prefix = ""
    else:
        nz = [i for i, e in enumerate(denominator) if e]
        if len(nz) == 1 and denominator[nz[0]] == 1:
            prefix = f"x{nz[0] + 1}^-{power}*"
        else:
            prefix = f"({mono_str(denominator)})^-{power}*"
    parts = []
    for (t, w), c in sorted(vec.items(), key=lambda kv: (kv[0][0], mono_key(kv[0][1]))):
        m = mono_str(w)
        if rank == 1:
            body = m if m != "1" or not prefix else ""
            word = prefix + body if body else prefix.rstrip("*")
            if not word:
                word = "1"
        else:
            g = gen_name(t, rank)
            word = prefix + (g if m == "1" else f"{m}*{g}")
        parts.append(term_str(c, word))
    return join_terms(parts)
