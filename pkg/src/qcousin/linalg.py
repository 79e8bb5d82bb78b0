"""Exact sparse linear algebra over the ground fields.

Vectors are dicts ``{index: Scalar}`` without zero entries. All eliminations pick the
first nonzero entry (smallest index) as pivot, so every basis produced here is
deterministic. No ordering on scalars is ever used.
"""

from .errors import ConfigurationError

__all__ = [
    "Echelon",
    "LinearMap",
    "Subspace",
    "QuotientSpace",
    "vec_add",
    "vec_scale",
    "vec_sub",
    "kernel",
    "check_exact_sequence",
]


def vec_add(u, v):
    out = dict(u)
    for i, c in v.items():
        if i in out:
            s = out[i] + c
            if s:
                out[i] = s
            else:
                del out[i]
        else:
            out[i] = c
    return out


def vec_scale(v, s):
    if not s:
        return {}
    return {i: c * s for i, c in v.items()}


def vec_sub(u, v):
    return vec_add(u, vec_scale(v, -1)) if v else dict(u)


def _axpy(target, v, s):
    """target += s * v in place."""
    for i, c in v.items():
        x = c * s
        if i in target:
            y = target[i] + x
            if y:
                target[i] = y
            else:
                del target[i]
        else:
            target[i] = x


class Echelon:
    """Fully reduced echelon basis of a subspace of k^dim, built incrementally.

    Each stored row has a pivot entry equal to one and zeros at every other pivot. When
    ``track`` is set each row also remembers how it was combined from the inserted
    vectors (keyed by the tags given to :meth:`add`).
    """

    def __init__(self, dim, track=False):
        self.dim = dim
        self.track = track
        self.rows = []
        self.pivots = []
        self.combos = []
        self._where = {}

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, v):
        """Return (residual, coeffs) with v = residual + sum coeffs[k] * rows[k]."""
        res = dict(v)
        coeffs = {}
        for p in [p for p in v if p in self._where]:
            c = res.get(p)
            if c:
                k = self._where[p]
                coeffs[k] = c
                _axpy(res, self.rows[k], -c)
        return res, coeffs

    def combination(self, coeffs):
        """Express sum coeffs[k] * rows[k] in terms of inserted tags."""
        out = {}
        for k, c in coeffs.items():
            _axpy(out, self.combos[k], c)
        return out

    def add(self, v, tag=None):
        """Insert v; return True when it enlarged the span."""
        res, coeffs = self.reduce(v)
        if not res:
            return False
        p = min(res)
        inv = res[p].inverse()
        row = vec_scale(res, inv)
        if self.track:
            combo = {tag: inv} if tag is not None else {}
            if coeffs:
                _axpy(combo, self.combination(coeffs), -inv)
        for k, other in enumerate(self.rows):
            c = other.get(p)
            if c:
                _axpy(other, row, -c)
                if self.track:
                    _axpy(self.combos[k], combo, -c)
        self._where[p] = len(self.rows)
        self.rows.append(row)
        self.pivots.append(p)
        if self.track:
            self.combos.append(combo)
        return True

    def contains(self, v):
        return not self.reduce(v)[0]

    def copy(self):
        e = Echelon(self.dim, self.track)
        e.rows = [dict(r) for r in self.rows]
        e.pivots = list(self.pivots)
        e.combos = [dict(c) for c in self.combos]
        e._where = dict(self._where)
        return e


class LinearMap:
    """Matrix of a linear map k^src -> k^tgt, stored as sparse columns."""

    def __init__(self, field, src_dim, tgt_dim, columns=None):
        self.field = field
        self.src_dim = src_dim
        self.tgt_dim = tgt_dim
        self.columns = [dict(c) for c in columns] if columns is not None else [{} for _ in range(src_dim)]
        if len(self.columns) != src_dim:
            raise ConfigurationError(f"expected {src_dim} columns, got {len(self.columns)}")

    @classmethod
    def zero(cls, field, src_dim, tgt_dim):
        return cls(field, src_dim, tgt_dim)

    @classmethod
    def identity(cls, field, dim):
        one = field.one
        return cls(field, dim, dim, [{i: one} for i in range(dim)])

    @classmethod
    def from_rows(cls, field, rows, src_dim=None):
        tgt = len(rows)
        src = src_dim if src_dim is not None else (len(rows[0]) if rows else 0)
        cols = [{} for _ in range(src)]
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                x = field(x)
                if x:
                    cols[j][i] = x
        return cls(field, src, tgt, cols)

    def apply(self, v):
        out = {}
        for j, c in v.items():
            col = self.columns[j]
            if col:
                _axpy(out, col, c)
        return out

    def compose(self, other):
        """self o other."""
        if other.tgt_dim != self.src_dim:
            raise ConfigurationError(
                f"cannot compose {self.tgt_dim}x{self.src_dim} with {other.tgt_dim}x{other.src_dim}"
            )
        return LinearMap(self.field, other.src_dim, self.tgt_dim, [self.apply(c) for c in other.columns])

    __matmul__ = compose

    def scaled(self, s):
        return LinearMap(self.field, self.src_dim, self.tgt_dim, [vec_scale(c, s) for c in self.columns])

    def __add__(self, other):
        self._check_shape(other)
        return LinearMap(
            self.field, self.src_dim, self.tgt_dim, [vec_add(a, b) for a, b in zip(self.columns, other.columns)]
        )

    def __sub__(self, other):
        return self + other.scaled(-1)

    def _check_shape(self, other):
        if (self.src_dim, self.tgt_dim) != (other.src_dim, other.tgt_dim):
            raise ConfigurationError("dimension mismatch")

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (self.src_dim, self.tgt_dim) == (other.src_dim, other.tgt_dim) and self.columns == other.columns

    def is_zero(self):
        return not any(self.columns)

    def entry(self, i, j):
        return self.columns[j].get(i, self.field.zero)

    def rows(self):
        """Dense list-of-rows view (for display and small comparisons)."""
        z = self.field.zero
        return [[self.columns[j].get(i, z) for j in range(self.src_dim)] for i in range(self.tgt_dim)]

    def _echelon(self):
        e = Echelon(self.tgt_dim, track=True)
        kern = []
        for j, col in enumerate(self.columns):
            if not e.add(col, tag=j):
                _, coeffs = e.reduce(col)
                k = vec_scale(e.combination(coeffs), -1)
                _axpy(k, {j: self.field.one}, self.field.one)
                kern.append(k)
        return e, kern

    def rank(self):
        e = Echelon(self.tgt_dim)
        for col in self.columns:
            e.add(col)
        return e.rank

    def kernel(self):
        """Basis of the kernel as a :class:`Subspace` of k^src."""
        return Subspace(self.src_dim, self._echelon()[1])

    def image(self):
        return Subspace(self.tgt_dim, self.columns)

    def solve(self, b):
        """Some x with A x = b (free variables zero), or None."""
        e, _ = self._echelon()
        res, coeffs = e.reduce(b)
        if res:
            return None
        return e.combination(coeffs)

    def is_injective(self):
        return self.rank() == self.src_dim

    def is_surjective(self):
        return self.rank() == self.tgt_dim

    def restrict_rows(self, indices):
        """Keep only target coordinates listed in indices (renumbered 0..)."""
        pos = {i: k for k, i in enumerate(indices)}
        cols = [{pos[i]: c for i, c in col.items() if i in pos} for col in self.columns]
        return LinearMap(self.field, self.src_dim, len(indices), cols)


def kernel(columns, field, tgt_dim):
    return LinearMap(field, len(columns), tgt_dim, columns).kernel()


class Subspace:
    """A subspace of k^dim with a canonical (reduced echelon) basis."""

    def __init__(self, dim, vectors=()):
        self.dim = dim
        self._ech = Echelon(dim)
        for v in vectors:
            self._ech.add(v)

    @classmethod
    def full(cls, field, dim):
        return cls(dim, [{i: field.one} for i in range(dim)])

    @property
    def rank(self):
        return self._ech.rank

    def __len__(self):
        return self._ech.rank

    @property
    def basis(self):
        order = sorted(range(self._ech.rank), key=lambda k: self._ech.pivots[k])
        return [dict(self._ech.rows[k]) for k in order]

    def contains(self, v):
        return self._ech.contains(v)

    def __contains__(self, v):
        return self.contains(v)

    def issubspace(self, other):
        """self <= other."""
        self._check(other)
        return all(other.contains(b) for b in self._ech.rows)

    __le__ = issubspace

    def first_outside(self, other):
        """A basis vector of self not in other, or None."""
        for b in self.basis:
            if not other.contains(b):
                return b
        return None

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.dim == other.dim and self.rank == other.rank and self <= other

    def _check(self, other):
        if self.dim != other.dim:
            raise ConfigurationError(f"subspaces of different ambient dimension {self.dim} and {other.dim}")

    def __add__(self, other):
        self._check(other)
        return Subspace(self.dim, self._ech.rows + other._ech.rows)

    def intersection(self, other):
        self._check(other)
        a = self._ech.rows
        b = other._ech.rows
        if not a or not b:
            return Subspace(self.dim)
        field = next(iter(a[0].values())).field
        cols = list(a) + [vec_scale(v, -1) for v in b]
        ker = LinearMap(field, len(cols), self.dim, cols).kernel()
        vecs = []
        for k in ker.basis:
            v = {}
            for j, c in k.items():
                if j < len(a):
                    _axpy(v, a[j], c)
            vecs.append(v)
        return Subspace(self.dim, vecs)

    __and__ = intersection

    def image_under(self, f):
        return Subspace(f.tgt_dim, [f.apply(b) for b in self._ech.rows])

    def preimage(self, f):
        """{v : f(v) in self}."""
        if f.tgt_dim != self.dim:
            raise ConfigurationError("dimension mismatch in preimage")
        cols = list(f.columns) + [vec_scale(b, -1) for b in self._ech.rows]
        ker = LinearMap(f.field, len(cols), self.dim, cols).kernel()
        vecs = [{j: c for j, c in k.items() if j < f.src_dim} for k in ker.basis]
        return Subspace(f.src_dim, vecs)


class QuotientSpace:
    """top / sub for subspaces sub <= top of k^dim, with chosen representatives.

    Representatives are the vectors of ``top`` (in the given order) that are independent
    modulo ``sub``; :meth:`coords` expresses any vector of ``top`` in that basis.
    """

    def __init__(self, dim, top, sub=()):
        self.dim = dim
        self._ech = Echelon(dim, track=True)
        self.sub_rank = 0
        for v in sub:
            if self._ech.add(v, tag=("s", self.sub_rank)):
                self.sub_rank += 1
        self.reps = []
        for v in top:
            if self._ech.add(v, tag=("r", len(self.reps))):
                self.reps.append(dict(v))

    @property
    def rank(self):
        return len(self.reps)

    def coords(self, v, strict=True):
        """Coordinates of the class of v; None if v is outside top (raises when strict)."""
        res, coeffs = self._ech.reduce(v)
        if res:
            if strict:
                raise ConfigurationError("vector is not in the numerator space")
            return None
        combo = self._ech.combination(coeffs)
        return {tag[1]: c for tag, c in combo.items() if tag[0] == "r" and c}

    def is_zero_class(self, v):
        c = self.coords(v)
        return not c

    def lift(self, coords):
        out = {}
        for k, c in coords.items():
            _axpy(out, self.reps[k], c)
        return out

    def induced(self, f, target):
        """Matrix of the map self -> target induced by the linear map f on representatives."""
        cols = [target.coords(f.apply(r)) for r in self.reps]
        return LinearMap(f.field, self.rank, target.rank, cols)


def check_exact_sequence(field, dims, maps):
    """Check exactness of 0 -> V_0 -> V_1 -> ... -> V_m -> 0.

    ``maps[i]`` is V_i -> V_{i+1}. Returns one record per position with keys
    ``position``, ``exact``, ``composite_zero`` and, on failure, ``witness``: a vector of
    V_i killed by the outgoing map but outside the image of the incoming one.
    """
    if len(maps) != len(dims) - 1:
        raise ConfigurationError("need one map between each consecutive pair of spaces")
    out = []
    for i, d in enumerate(dims):
        inc = maps[i - 1] if i > 0 else None
        outg = maps[i] if i < len(maps) else None
        composite_zero = True
        if inc is not None and outg is not None:
            composite_zero = outg.compose(inc).is_zero()
        ker = outg.kernel() if outg is not None else Subspace.full(field, d)
        img = inc.image() if inc is not None else Subspace(d)
        exact = composite_zero and ker.rank == img.rank and img <= ker
        rec = {"position": i, "exact": exact, "composite_zero": composite_zero}
        if not exact:
            rec["witness"] = ker.first_outside(img)
        out.append(rec)
    return out
