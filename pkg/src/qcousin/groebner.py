"""Left Groebner bases of submodules of free A_{q,n}-modules.

Vectors are dicts ``{(t, word): scalar}``. Since x^a * x^b is a nonzero multiple of
x^{a+b}, leading words multiply as in the commutative case and Buchberger's algorithm
carries over verbatim with left multiplications; the q-scalars only enter through
:meth:`QuantumAlgebra.mono_mul`.

The monomial order is degree-reverse-lexicographic on words, term over position, with
the total degree including the generator shift and ties broken by generator index. An
optional block assignment puts whole generator blocks above each other (position over
term between blocks), which is what elimination needs.
"""

from .skewalg import kappa

__all__ = ["ModuleOrder", "left_mul_word", "left_mul_poly", "normal_form", "groebner_basis", "is_groebner"]


def _grevlex(a):
    return (sum(a), tuple(-x for x in reversed(a)))


class ModuleOrder:
    """Term order on free-module words (t, a)."""

    def __init__(self, gen_degrees, blocks=None):
        self.gen_degrees = tuple(gen_degrees)
        self.blocks = tuple(blocks) if blocks is not None else (0,) * len(self.gen_degrees)

    @property
    def descriptor(self):
        if any(self.blocks):
            return "block-pot/degrevlex-top"
        return "degrevlex-top"

    def key(self, term):
        t, a = term
        s, rev = _grevlex(a)
        return (self.blocks[t], s + self.gen_degrees[t], rev, -t)

    def leading(self, vec):
        return max(vec, key=self.key)


def left_mul_word(alg, word, vec):
    """x^word * vec."""
    out = {}
    field = alg.field
    for (t, a), c in vec.items():
        k = kappa(word, a)
        b = tuple(x + y for x, y in zip(word, a))
        out[(t, b)] = c * field.q_power(-k) if k else c
    return out


def left_mul_poly(alg, poly, vec):
    """poly * vec for a SkewPolynomial poly."""
    out = {}
    for w, cw in poly.terms.items():
        for key, c in left_mul_word(alg, w, vec).items():
            x = cw * c
            if key in out:
                y = out[key] + x
                if y:
                    out[key] = y
                else:
                    del out[key]
            else:
                out[key] = x
    return out


def _sub_scaled(h, g, s):
    """h - s * g (new dict)."""
    out = dict(h)
    for key, c in g.items():
        x = c * s
        if key in out:
            y = out[key] - x
            if y:
                out[key] = y
            else:
                del out[key]
        else:
            out[key] = -x
    return out


def _divides(b, a):
    return all(x <= y for x, y in zip(b, a))


def _quot(a, b):
    return tuple(y - x for x, y in zip(b, a))


class _Entry:
    __slots__ = ("vec", "lead", "lc")

    def __init__(self, vec, order):
        self.vec = vec
        self.lead = order.leading(vec)
        self.lc = vec[self.lead]


def _find_reducer(term, basis):
    t, a = term
    for g in basis:
        if g.lead[0] == t and _divides(g.lead[1], a):
            return g
    return None


def _reduce_by(alg, h, term, g):
    """Cancel the term of h at `term` using the basis element g."""
    m = _quot(term[1], g.lead[1])
    mg = left_mul_word(alg, m, g.vec)
    return _sub_scaled(h, mg, h[term] / mg[term])


def normal_form(alg, vec, basis, order, full=True):
    """Remainder of vec on left division by basis (list of vectors or _Entry)."""
    entries = [b if isinstance(b, _Entry) else _Entry(b, order) for b in basis if b]
    h = dict(vec)
    rem = {}
    while h:
        lt = order.leading(h)
        g = _find_reducer(lt, entries)
        if g is not None:
            h = _reduce_by(alg, h, lt, g)
        elif full:
            rem[lt] = h.pop(lt)
        else:
            return h
    return rem


def _spair(alg, f, g):
    a, b = f.lead[1], g.lead[1]
    lcm = tuple(max(x, y) for x, y in zip(a, b))
    mf = left_mul_word(alg, _quot(lcm, a), f.vec)
    mg = left_mul_word(alg, _quot(lcm, b), g.vec)
    key = (f.lead[0], lcm)
    return _sub_scaled(mf, mg, mf[key] / mg[key])


def groebner_basis(alg, generators, order):
    """Reduced left Groebner basis (monic, sorted by leading term) of the span of generators."""
    entries = []
    for v in generators:
        if not v:
            continue
        r = normal_form(alg, v, entries, order)
        if r:
            entries.append(_Entry(r, order))
    pairs = [(i, j) for j in range(len(entries)) for i in range(j) if entries[i].lead[0] == entries[j].lead[0]]

    def pair_key(p):
        f, g = entries[p[0]], entries[p[1]]
        lcm = tuple(max(x, y) for x, y in zip(f.lead[1], g.lead[1]))
        return order.key((f.lead[0], lcm))

    while pairs:
        pairs.sort(key=pair_key, reverse=True)
        i, j = pairs.pop()
        f, g = entries[i], entries[j]
        s = _spair(alg, f, g)
        r = normal_form(alg, s, entries, order)
        if r:
            entries.append(_Entry(r, order))
            k = len(entries) - 1
            pairs.extend((i2, k) for i2 in range(k) if entries[i2].lead[0] == entries[k].lead[0])
    return _reduce_basis(alg, entries, order)


def _reduce_basis(alg, entries, order):
    uniq = []
    for idx, e in enumerate(entries):
        if any(
            j != idx and o.lead[0] == e.lead[0] and _divides(o.lead[1], e.lead[1])
            and (o.lead != e.lead or j < idx)
            for j, o in enumerate(entries)
        ):
            continue
        uniq.append(e)
    out = []
    for e in uniq:
        others = [o for o in uniq if o is not e]
        tail = dict(e.vec)
        lead_c = tail.pop(e.lead)
        r = normal_form(alg, tail, others, order)
        r[e.lead] = lead_c
        inv = lead_c.inverse()
        out.append({k: c * inv for k, c in r.items()})
    out.sort(key=lambda v: order.key(order.leading(v)))
    return out


def is_groebner(alg, basis, order):
    """Check Buchberger's criterion: every S-vector reduces to zero."""
    entries = [_Entry(v, order) for v in basis if v]
    for j in range(len(entries)):
        for i in range(j):
            if entries[i].lead[0] != entries[j].lead[0]:
                continue
            if normal_form(alg, _spair(alg, entries[i], entries[j]), entries, order):
                return False
    return True
