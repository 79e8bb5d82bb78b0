"""Independent commutative (q = 1) reference implementation.

Dense vectors of ``Fraction``, its own monomial enumeration and polynomial products, and
sympy's ``DomainMatrix`` over QQ for ranks, reduced row echelon forms and null spaces.
Nothing here calls the skew-polynomial or sparse linear-algebra code of the engine.
Reports use the same schema as :func:`qcousin.cli.engine_pipeline`.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .errors import ConfigurationError, UnsupportedError

__all__ = ["CommutativeModuleSpec", "OracleModule", "oracle_pipeline", "ORACLE_POLE"]

# pole order used for the naive localization kernels
ORACLE_POLE = 6


def _require_q1(field_spec):
    if field_spec != "rationals":
        raise UnsupportedError("oracle supports q=1 only")


@dataclass
class CommutativeModuleSpec:
    """n, generator degrees, and relation columns {(t, exponents): Fraction}."""

    n: int
    gen_degrees: tuple
    relations: list

    @classmethod
    def from_presented(cls, M):
        _require_q1(M.field.spec)
        rels = []
        for r in M.relations:
            rels.append({(t, tuple(a)): Fraction(str(c)) for (t, a), c in r.items()})
        return cls(M.alg.n, tuple(M.gen_degrees), rels)


def _monomials(nvars, d):
    if d < 0:
        return []
    if nvars == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in _monomials(nvars - 1, d - first):
            out.append((first,) + rest)
    return out


def _to_dm(columns, nrows):
    """DomainMatrix whose columns are the given dense vectors."""
    ncols = len(columns)
    rows = [[QQ(columns[j][i].numerator, columns[j][i].denominator) for j in range(ncols)] for i in range(nrows)]
    return DomainMatrix(rows, (nrows, ncols), QQ)


def rank(columns, nrows):
    if not columns or nrows == 0:
        return 0
    return _to_dm(columns, nrows).rank()


def nullspace(columns, nrows):
    """Basis (dense vectors) of {c : sum c_j columns[j] = 0}."""
    ncols = len(columns)
    if ncols == 0:
        return []
    if nrows == 0:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    ns = _to_dm(columns, nrows).nullspace()
    out = []
    for row in ns.to_Matrix().tolist():
        out.append([Fraction(int(x.p), int(x.q)) for x in row])
    return out


class _Piece:
    def __init__(self, module, d):
        n1 = module.spec.n + 1
        self.ambient = [(t, m) for t, g in enumerate(module.spec.gen_degrees) for m in _monomials(n1, d - g)]
        self.index = {b: i for i, b in enumerate(self.ambient)}
        N = len(self.ambient)
        rows = []
        for r, g in zip(module.spec.relations, module.rel_degrees):
            for m in _monomials(n1, d - g):
                v = [Fraction(0)] * N
                for (t, a), c in r.items():
                    v[self.index[(t, tuple(x + y for x, y in zip(a, m)))]] += c
                rows.append(v)
        self.rows = []
        pivots = []
        if rows and N:
            R, piv = DomainMatrix(
                [[QQ(x.numerator, x.denominator) for x in v] for v in rows], (len(rows), N), QQ
            ).rref()
            mat = R.to_Matrix().tolist()
            for k, pc in enumerate(piv):
                self.rows.append([Fraction(int(x.p), int(x.q)) for x in mat[k]])
                pivots.append(pc)
        self.pivots = pivots
        pset = set(pivots)
        self.basis = [i for i in range(N) if i not in pset]
        self.pos = {i: k for k, i in enumerate(self.basis)}

    @property
    def dim(self):
        return len(self.basis)

    def reduce(self, v):
        v = list(v)
        for row, pc in zip(self.rows, self.pivots):
            c = v[pc]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        return [v[i] for i in self.basis]


class OracleModule:
    def __init__(self, spec):
        self.spec = spec
        self.rel_degrees = []
        for r in spec.relations:
            degs = {sum(a) + spec.gen_degrees[t] for (t, a) in r}
            if len(degs) != 1:
                raise ConfigurationError("oracle relation is not homogeneous")
            self.rel_degrees.append(degs.pop())
        self._pieces = {}

    def piece(self, d):
        if d not in self._pieces:
            self._pieces[d] = _Piece(self, d)
        return self._pieces[d]

    def hilbert(self, degrees):
        return [self.piece(d).dim for d in degrees]

    def mult(self, d, u):
        """Columns of multiplication by x^u from M_d to M_{d+|u|}."""
        src = self.piece(d)
        tgt = self.piece(d + sum(u))
        cols = []
        for i in src.basis:
            t, m = src.ambient[i]
            v = [Fraction(0)] * len(tgt.ambient)
            v[tgt.index[(t, tuple(x + y for x, y in zip(m, u)))]] = Fraction(1)
            cols.append(tgt.reduce(v))
        return cols

    # sections by naive localization at a fixed large pole order
    def sections_dim(self, z, semantics):
        n = self.spec.n
        P0 = self.piece(0)
        if z is None:
            return 0
        S = list(range(z + 1, n + 1))
        if not S:
            return P0.dim
        p = ORACLE_POLE
        if semantics == "product":
            u = tuple(p if i in S else 0 for i in range(n + 1))
            cols = self.mult(0, u)
            return P0.dim - rank(cols, self.piece(sum(u)).dim)
        blocks = [self.mult(0, tuple(p if i == x else 0 for i in range(n + 1))) for x in S]
        size = self.piece(p).dim
        stacked = [sum((b[j] for b in blocks), []) for j in range(P0.dim)]
        return P0.dim - rank(stacked, size * len(S))


class _Cx:
    """Dense complex: dims[k], diffs[k] as column lists C^k -> C^{k+1}."""

    def __init__(self, dims, diffs):
        self.dims = dims
        self.diffs = diffs

    def dim(self, k):
        return self.dims.get(k, 0)

    def d(self, k):
        if k in self.diffs:
            return self.diffs[k]
        return [[Fraction(0)] * self.dim(k + 1) for _ in range(self.dim(k))]

    @property
    def degrees(self):
        return range(min(self.dims), max(self.dims) + 1)

    def h(self, k):
        return self.dim(k) - rank(self.d(k), self.dim(k + 1)) - rank(self.d(k - 1), self.dim(k))


def _cech(mod, S, p):
    n1 = mod.spec.n + 1
    subsets = {k: list(combinations(S, k)) for k in range(len(S) + 1)}
    size = {k: mod.piece(p * k).dim for k in subsets}
    dims = {k: size[k] * len(subsets[k]) for k in subsets}
    diffs = {}
    for k in range(len(S)):
        where = {J: i for i, J in enumerate(subsets[k + 1])}
        cols = [[Fraction(0)] * dims[k + 1] for _ in range(dims[k])]
        for bi, J in enumerate(subsets[k]):
            for x in S:
                if x in J:
                    continue
                Jx = tuple(sorted(J + (x,)))
                sign = -1 if sum(1 for y in J if y < x) % 2 else 1
                mm = mod.mult(p * k, tuple(p if i == x else 0 for i in range(n1)))
                toff = where[Jx] * size[k + 1]
                for j, col in enumerate(mm):
                    for i, c in enumerate(col):
                        if c:
                            cols[bi * size[k] + j][toff + i] += sign * c
        diffs[k] = cols
    return _Cx(dims, diffs), subsets, size


def _proj(src, tgt):
    """Projection of Cech(S2) onto Cech(S1) as column lists per degree."""
    C2, sub2, size = src
    C1, sub1, _ = tgt
    maps = {}
    for k in C2.degrees:
        cols = [[Fraction(0)] * C1.dim(k) for _ in range(C2.dim(k))]
        if k in sub1:
            pos1 = {J: i for i, J in enumerate(sub1[k])}
            for bi, J in enumerate(sub2[k]):
                if J in pos1:
                    for j in range(size[k]):
                        cols[bi * size[k] + j][pos1[J] * size[k] + j] = Fraction(1)
        maps[k] = cols
    return maps


def _cone(A, B, f):
    lo = min(min(A.dims) - 1, min(B.dims))
    hi = max(max(A.dims) - 1, max(B.dims))
    dims = {k: A.dim(k + 1) + B.dim(k) for k in range(lo, hi + 1)}
    diffs = {}
    for k in range(lo, hi):
        a1 = A.dim(k + 2)
        cols = []
        dA = A.d(k + 1)
        fk = f.get(k + 1, [[Fraction(0)] * B.dim(k + 1) for _ in range(A.dim(k + 1))])
        for j in range(A.dim(k + 1)):
            cols.append([-c for c in dA[j]] + list(fk[j]))
        dB = B.d(k)
        for j in range(B.dim(k)):
            cols.append([Fraction(0)] * a1 + list(dB[j]))
        diffs[k] = cols
    return _Cx(dims, diffs)


class _Rel:
    def __init__(self, mod, z1, z2, p):
        n = mod.spec.n
        S1 = tuple(range(z1 + 1, n + 1))
        self.tgt = _cech(mod, S1, p)
        if z2 is None:
            self.src = (_Cx({0: 0}, {}), {0: [()]}, {0: 0})
            f = {}
        else:
            self.src = _cech(mod, tuple(range(z2 + 1, n + 1)), p)
            f = _proj(self.src, self.tgt)
        self.cx = _cone(self.src[0], self.tgt[0], f)

    def split(self, k):
        return self.src[0].dim(k + 1), self.tgt[0].dim(k)


def _induced_rank(vectors, C, k):
    """Rank of the classes of the given cocycle vectors in H^k(C)."""
    B = C.d(k - 1)
    n = C.dim(k)
    return rank(list(vectors) + B, n) - rank(B, n)


def _cocycles(C, k):
    return nullspace(C.d(k), C.dim(k + 1))


def cousin_dims(mod, filtration, p):
    strata = list(filtration) + [None]
    rels = {}

    def rel(a, b):
        if (a, b) not in rels:
            rels[(a, b)] = _Rel(mod, a, b, p)
        return rels[(a, b)]

    r = len(filtration) - 1
    terms = [rel(strata[i], strata[i + 1]).cx.h(i) for i in range(r + 1)]
    R01 = rel(strata[0], strata[1])
    sa, _ = R01.split(0)
    m0 = mod.piece(0).dim
    e_vecs = []
    for j in range(m0):
        v = [Fraction(0)] * R01.cx.dim(0)
        v[sa + j] = Fraction(1)
        e_vecs.append(v)
    ranks = [_induced_rank(e_vecs, R01.cx, 0)]
    for i in range(r):
        R12 = rel(strata[i], strata[i + 1])
        R23 = rel(strata[i + 1], strata[i + 2])
        ta, _ = R23.split(i + 1)
        sa_i, _ = R12.split(i)
        imgs = []
        for z in _cocycles(R12.cx, i):
            v = [Fraction(0)] * R23.cx.dim(i + 1)
            for j in range(sa_i):
                v[ta + j] = z[j]
            imgs.append(v)
        ranks.append(_induced_rank(imgs, R23.cx, i + 1))
    dims = [m0] + terms
    coh = []
    for i, d in enumerate(dims):
        r_out = ranks[i] if i < len(ranks) else 0
        r_in = ranks[i - 1] if i > 0 else 0
        coh.append(d - r_out - r_in)
    return dims, coh


def relative_dims(mod, z1, z2, p):
    R = _Rel(mod, z1, z2, p)
    return {k: R.cx.h(k) for k in R.cx.degrees}


def _pair_key(z1, z2):
    return f"{z1}/{'empty' if z2 is None else z2}"


def oracle_pipeline(spec, query, params, field_spec="rationals"):
    """Run one query ('hilbert', 'torsion', 'sections', 'cech' or 'cousin') in the commutative model."""
    _require_q1(field_spec)
    mod = OracleModule(spec)
    n = spec.n
    if query == "hilbert":
        degrees = list(params.get("degrees", range(7)))
        return {"query": "hilbert", "degrees": degrees, "dims": mod.hilbert(degrees)}
    if query == "torsion":
        word = tuple(params["word"])
        degrees = list(params.get("degrees", range(4)))
        dims = []
        for d in degrees:
            u = tuple(ORACLE_POLE * a for a in word)
            cols = mod.mult(d, u)
            dims.append(mod.piece(d).dim - rank(cols, mod.piece(d + sum(u)).dim))
        return {"query": "torsion", "word": list(word), "degrees": degrees, "dims": dims}
    if query == "sections":
        sem = params.get("semantics", "ideal")
        return {
            "query": "sections",
            "semantics": sem,
            "dims": {str(z): mod.sections_dim(z, sem) for z in range(n + 1)},
        }
    if query == "cech":
        levels = list(range(1, params.get("pole_max", 3) + 1))
        out = {}
        for z1 in range(n + 1):
            for z2 in [None] + list(range(z1 + 1)):
                table = {}
                for p in levels:
                    for k, h in relative_dims(mod, z1, z2, p).items():
                        table.setdefault(str(k), {})[str(p)] = h
                out[_pair_key(z1, z2)] = table
        return {"query": "cech", "levels": levels, "relative": out}
    if query == "cousin":
        filt = list(params.get("filtration") or range(n, -1, -1))
        levels = list(range(1, params.get("pole_max", 3) + 1))
        terms, coh = {}, {}
        for p in levels:
            dims, c = cousin_dims(mod, filt, p)
            terms[str(p)] = dims
            coh[str(p)] = c
        return {"query": "cousin", "filtration": filt, "levels": levels, "term_dims": terms, "cohomology": coh}
    raise ConfigurationError(f"unknown oracle query {query!r}")
