"""Finitely presented Z-graded left A_{q,n}-modules.

A module is ``F0 / N`` where ``F0`` is free on generators e_1..e_k of given degrees and
``N`` is the left submodule generated by homogeneous relation vectors. Graded pieces are
computed exactly by row reduction inside (F0)_d; module-level questions (membership,
colon, torsion) go through left Groebner bases.

Sign convention for shifts: ``M.shifted(t)`` lowers every generator degree by t, so that
``M.shifted(t)`` has degree-0 piece ``M_t``.
"""

import threading
from dataclasses import dataclass, field as dc_field

from .errors import ConfigurationError, ValidationError
from .groebner import ModuleOrder, groebner_basis, is_groebner, left_mul_poly, left_mul_word, normal_form
from .linalg import Echelon, LinearMap, Subspace
from .skewalg import SkewPolynomial, kappa
from .textform import format_vector

__all__ = [
    "PresentedModule",
    "Submodule",
    "GradedPiece",
    "PieceMap",
    "ModuleMap",
    "TorsionResult",
    "WindowedTorsion",
    "free_module",
    "direct_sum",
    "vector_degree",
]


def vector_degree(vec, gen_degrees):
    """Common degree of a homogeneous free-module vector; None for zero; raises otherwise."""
    degs = {sum(a) + gen_degrees[t] for (t, a) in vec}
    if not degs:
        return None
    if len(degs) > 1:
        raise ValidationError(f"vector is not homogeneous (degrees {sorted(degs)})")
    return degs.pop()


def _as_vector(alg, rank, value):
    """Accept a dict vector, a list of SkewPolynomials (one per generator), or a single
    SkewPolynomial when the rank is 1."""
    if isinstance(value, dict):
        return {k: c for k, c in value.items() if c}
    if isinstance(value, SkewPolynomial):
        value = [value]
    if len(value) != rank:
        raise ValidationError(f"relation column has {len(value)} entries, module rank is {rank}")
    out = {}
    for t, p in enumerate(value):
        if p is None or p == 0:
            continue
        if not isinstance(p, SkewPolynomial):
            p = alg.scalar(p)
        alg.check_same(p.alg)
        for a, c in p.terms.items():
            out[(t, a)] = c
    return out


class Submodule:
    """Left submodule of a free module, given by homogeneous generators."""

    def __init__(self, alg, gen_degrees, generators):
        self.alg = alg
        self.gen_degrees = tuple(gen_degrees)
        self.generators = [dict(g) for g in generators if g]
        for g in self.generators:
            vector_degree(g, self.gen_degrees)
        self.order = ModuleOrder(self.gen_degrees)
        self._gb = None

    @property
    def rank(self):
        return len(self.gen_degrees)

    def groebner(self):
        if self._gb is None:
            self._gb = groebner_basis(self.alg, self.generators, self.order)
        return self._gb

    def is_groebner_certified(self):
        return is_groebner(self.alg, self.groebner(), self.order)

    def normal_form(self, vec):
        return normal_form(self.alg, vec, self.groebner(), self.order)

    def contains(self, vec):
        return not self.normal_form(vec)

    def contains_submodule(self, other):
        return all(self.contains(g) for g in other.generators)

    def same_as(self, other):
        return self.contains_submodule(other) and other.contains_submodule(self)

    def colon_variable(self, i):
        """(self : x_i) = {m : x_i * m in self}, i a 0-based variable index."""
        k = self.rank
        alg = self.alg
        xi = alg.unit_vector(i)
        gens = []
        for g in self.generators:
            v = dict(g)
            v.update({(t + k, a): c for (t, a), c in g.items()})
            gens.append(v)
        for t in range(k):
            gens.append({(t, xi): alg.field.one})
        order = ModuleOrder(self.gen_degrees * 2, (1,) * k + (0,) * k)
        gb = groebner_basis(alg, gens, order)
        out = []
        for v in gb:
            if order.leading(v)[0] < k:
                continue
            w = {}
            for (t, a), c in v.items():
                if a[i] == 0:
                    raise AssertionError("intersection element not divisible by the variable")
                b = a[:i] + (a[i] - 1,) + a[i + 1:]
                kk = kappa(xi, b)
                w[(t - k, b)] = c * alg.field.q_power(kk) if kk else c
            out.append(w)
        return Submodule(alg, self.gen_degrees, out)

    def colon_word(self, u):
        """(self : x^u), computed one variable at a time."""
        sub = self
        for i, e in enumerate(u):
            for _ in range(e):
                sub = sub.colon_variable(i)
        return sub

    def degree_vectors(self, d):
        """Spanning set of the degree-d part: words times Groebner elements."""
        out = []
        for g in self.groebner():
            dg = vector_degree(g, self.gen_degrees)
            for m in self.alg.monomials(d - dg):
                out.append(left_mul_word(self.alg, m, g))
        return out


class GradedPiece:
    """The degree-d component M_d with a deterministic quotient basis.

    The ambient basis is all (t, word) with deg(word) + d_t = d, ordered by generator then
    word order. Relations are row reduced with first-nonzero pivots; the non-pivot ambient
    elements form the basis of M_d.
    """

    def __init__(self, module, d):
        self.module = module
        self.degree = d
        alg = module.alg
        self.ambient = [(t, a) for t, dt in enumerate(module.gen_degrees) for a in alg.monomials(d - dt)]
        self.index = {b: i for i, b in enumerate(self.ambient)}
        self.relations = Echelon(len(self.ambient))
        for r, g in zip(module.relations, module.relation_degrees):
            for m in alg.monomials(d - g):
                self.relations.add(self._to_index(left_mul_word(alg, m, r)))
        pivots = set(self.relations.pivots)
        self.basis_ambient = [i for i in range(len(self.ambient)) if i not in pivots]
        self._pos = {i: k for k, i in enumerate(self.basis_ambient)}

    @property
    def dim(self):
        return len(self.basis_ambient)

    @property
    def field(self):
        return self.module.alg.field

    def _to_index(self, vec):
        try:
            return {self.index[k]: c for k, c in vec.items()}
        except KeyError as exc:
            raise ConfigurationError(f"term {exc.args[0]} is not in degree {self.degree}") from None

    def coords(self, vec):
        """Coordinates of the class of a free-module vector of degree d."""
        res, _ = self.relations.reduce(self._to_index(vec))
        return {self._pos[i]: c for i, c in res.items()}

    def lift(self, coords):
        """Standard representative in F0 of a coordinate vector."""
        return {self.ambient[self.basis_ambient[k]]: c for k, c in coords.items() if c}

    def basis_element(self, k):
        return self.ambient[self.basis_ambient[k]]

    def basis_vectors(self):
        one = self.field.one
        return [{self.basis_element(k): one} for k in range(self.dim)]

    def format(self, coords):
        return format_vector(self.lift(coords), self.module.rank)

    def full(self):
        return Subspace.full(self.field, self.dim)

    def same_as(self, other):
        return self.module is other.module and self.degree == other.degree


@dataclass
class PieceMap:
    """A linear map between graded pieces with a provenance tag."""

    source: GradedPiece
    target: GradedPiece
    matrix: LinearMap
    provenance: str = ""

    def __post_init__(self):
        if (self.matrix.src_dim, self.matrix.tgt_dim) != (self.source.dim, self.target.dim):
            raise ConfigurationError("matrix shape does not match the pieces")

    def compose(self, other):
        """self o other."""
        if other.target.dim != self.source.dim or other.target.degree != self.source.degree:
            raise ConfigurationError("pieces do not match for composition")
        return PieceMap(other.source, self.target, self.matrix.compose(other.matrix), f"{self.provenance}o{other.provenance}")

    def rank(self):
        return self.matrix.rank()

    def kernel(self):
        return self.matrix.kernel()

    def image(self):
        return self.matrix.image()

    def apply(self, coords):
        return self.matrix.apply(coords)


@dataclass
class TorsionResult:
    """Certified torsion {m : u^p m = 0 for some p} of a presented module."""

    module: "PresentedModule"
    word: tuple
    submodule: Submodule
    p_star: int
    revalidated: bool
    chain_lengths: list = dc_field(default_factory=list)

    def piece(self, d):
        """The degree-d part of the torsion, as a subspace of M_d."""
        P = self.module.graded_piece(d)
        return Subspace(P.dim, [P.coords(v) for v in self.submodule.degree_vectors(d)])


@dataclass
class WindowedTorsion:
    """Degree-wise kernels Ker(u^p : M_d -> M_{d + p deg u}) for p = 1..p_max."""

    module: "PresentedModule"
    word: tuple
    degree: int
    kernels: list
    stable: bool
    stable_at: int = None

    @property
    def status(self):
        return "stable" if self.stable else "unstable"

    @property
    def union(self):
        return self.kernels[-1]


class PresentedModule:
    """M = F0 / N with F0 free on generators of the given degrees."""

    def __init__(self, alg, gen_degrees, relations=(), relation_degrees=None, name=None):
        self.alg = alg
        self.gen_degrees = tuple(int(d) for d in gen_degrees)
        self.name = name
        vecs = [_as_vector(alg, len(self.gen_degrees), r) for r in relations]
        if relation_degrees is not None and len(relation_degrees) != len(vecs):
            raise ValidationError("number of declared relation degrees does not match the relations")
        self.relations = []
        self.relation_degrees = []
        for j, v in enumerate(vecs):
            try:
                deg = vector_degree(v, self.gen_degrees)
            except ValidationError as exc:
                raise ValidationError(f"relation {j + 1}: {exc}") from None
            if relation_degrees is not None and deg is not None and deg != relation_degrees[j]:
                raise ValidationError(
                    f"relation {j + 1} has degree {deg} but was declared with degree {relation_degrees[j]}"
                )
            if deg is None:
                continue
            self.relations.append(v)
            self.relation_degrees.append(deg)
        self._pieces = {}
        self._torsion = {}
        self._lock = threading.Lock()
        self._relsub = None

    @property
    def rank(self):
        return len(self.gen_degrees)

    @property
    def field(self):
        return self.alg.field

    def __repr__(self):
        label = self.name or "M"
        return f"PresentedModule({label}, n={self.alg.n}, degrees={list(self.gen_degrees)}, relations={len(self.relations)})"

    def relation_submodule(self):
        if self._relsub is None:
            self._relsub = Submodule(self.alg, self.gen_degrees, self.relations)
        return self._relsub

    def is_monomial(self):
        return all(len(r) == 1 for r in self.relations)

    def graded_piece(self, d):
        P = self._pieces.get(d)
        if P is None:
            P = GradedPiece(self, d)
            with self._lock:
                P = self._pieces.setdefault(d, P)
        return P

    def hilbert_function(self, degrees):
        return [self.graded_piece(d).dim for d in degrees]

    def mult_map(self, d, u):
        """Left multiplication by the word u as a map M_d -> M_{d + deg u}."""
        u = tuple(u)
        src = self.graded_piece(d)
        tgt = self.graded_piece(d + sum(u))
        cols = []
        field = self.field
        for k in range(src.dim):
            t, a = src.basis_element(k)
            kk = kappa(u, a)
            b = tuple(x + y for x, y in zip(u, a))
            cols.append(tgt.coords({(t, b): field.q_power(-kk) if kk else field.one}))
        return PieceMap(src, tgt, LinearMap(field, src.dim, tgt.dim, cols), f"mult[{u}]")

    def identity_map(self, d):
        P = self.graded_piece(d)
        return PieceMap(P, P, LinearMap.identity(self.field, P.dim), "id")

    # constructions
    def shifted(self, t):
        return PresentedModule(
            self.alg, [d - t for d in self.gen_degrees], self.relations, name=self.name
        )

    def with_relations(self, extra, name=None):
        return PresentedModule(self.alg, self.gen_degrees, list(self.relations) + list(extra), name=name or self.name)

    def element(self, text):
        from .textform import parse_vector

        return parse_vector(self.alg, self.rank, text)

    def format_element(self, vec):
        return format_vector(vec, self.rank)

    # torsion
    def torsion_submodule(self, u, mode="certified", p_max=4, window=2, degree=0, max_steps=64):
        """Torsion with respect to the normal word u.

        ``mode="certified"`` returns a :class:`TorsionResult` from the stabilized colon chain
        K_p = (N : u^p), p >= 1; ``p_star`` is the first p with K_p = K_{p+1}, re-validated by
        one further colon step. ``mode="windowed"`` returns a :class:`WindowedTorsion` of the
        degree-wise kernels, flagged stable once the kernel repeats ``window`` times.
        """
        u = tuple(u)
        if not any(u):
            raise ConfigurationError("torsion needs a nonconstant word")
        if mode == "certified":
            cached = self._torsion.get(u)
            if cached is not None:
                return cached
            N = self.relation_submodule()
            K = N.colon_word(u)
            lengths = [len(K.groebner())]
            p = 1
            while True:
                nxt = K.colon_word(u)
                lengths.append(len(nxt.groebner()))
                if K.contains_submodule(nxt):
                    break
                K = nxt
                p += 1
                if p > max_steps:
                    raise ValidationError(f"colon chain did not stabilize within {max_steps} steps")
            check = nxt.colon_word(u)
            revalidated = nxt.contains_submodule(check) and K.contains_submodule(check)
            res = TorsionResult(self, u, K, p, revalidated, lengths)
            with self._lock:
                return self._torsion.setdefault(u, res)
        if mode == "windowed":
            kernels = []
            stable_at = None
            for p in range(1, p_max + 1):
                word = tuple(p * e for e in u)
                kernels.append(self.mult_map(degree, word).kernel())
                if len(kernels) > window and all(kernels[-1] == k for k in kernels[-window - 1:-1]):
                    stable_at = p - window
                    break
            return WindowedTorsion(self, u, degree, kernels, stable_at is not None, stable_at)
        raise ConfigurationError(f"unknown torsion mode {mode!r}")


def free_module(alg, degrees=(0,), name=None):
    return PresentedModule(alg, degrees, name=name)


def direct_sum(M, N, name=None):
    M.alg.check_same(N.alg)
    k = M.rank
    rels = list(M.relations) + [{(t + k, a): c for (t, a), c in r.items()} for r in N.relations]
    return PresentedModule(M.alg, M.gen_degrees + N.gen_degrees, rels, name=name)


class ModuleMap:
    """Homogeneous A-linear map M -> N given by the images of the generators of M.

    ``images[s]`` is a vector in the free cover of N; the map has degree ``shift``, i.e.
    deg images[s] = d_s + shift. Relation compatibility is certified at construction.
    """

    def __init__(self, source, target, images, shift=0, name=None):
        source.alg.check_same(target.alg)
        self.source = source
        self.target = target
        self.shift = int(shift)
        self.name = name
        alg = source.alg
        if len(images) != source.rank:
            raise ValidationError(f"need {source.rank} generator images, got {len(images)}")
        self.images = [_as_vector(alg, target.rank, v) for v in images]
        for s, v in enumerate(self.images):
            try:
                d = vector_degree(v, target.gen_degrees)
            except ValidationError as exc:
                raise ValidationError(f"image of generator {s + 1}: {exc}") from None
            if d is not None and d != source.gen_degrees[s] + self.shift:
                raise ValidationError(
                    f"image of generator {s + 1} has degree {d}, expected {source.gen_degrees[s] + self.shift}"
                )
        N = target.relation_submodule()
        for j, r in enumerate(source.relations):
            img = self.apply_vector(r)
            if not N.contains(img):
                raise ValidationError(
                    f"relation {j + 1} of the source does not map into the relations of the target"
                )

    def apply_vector(self, vec):
        """Image in the free cover of the target of a free-module vector of the source."""
        alg = self.source.alg
        out = {}
        for (s, a), c in vec.items():
            for key, x in left_mul_word(alg, a, self.images[s]).items():
                y = out[key] + c * x if key in out else c * x
                if y:
                    out[key] = y
                elif key in out:
                    del out[key]
        return out

    def piece_map(self, d):
        src = self.source.graded_piece(d)
        tgt = self.target.graded_piece(d + self.shift)
        cols = [tgt.coords(self.apply_vector(v)) for v in src.basis_vectors()]
        return PieceMap(src, tgt, LinearMap(src.field, src.dim, tgt.dim, cols), self.name or "map")

    def compose(self, other):
        """self o other for other: L -> source."""
        imgs = [self.apply_vector(v) for v in other.images]
        return ModuleMap(other.source, self.target, imgs, self.shift + other.shift)

    def shifted(self, t):
        return ModuleMap(self.source.shifted(t), self.target.shifted(t), self.images, self.shift, self.name)

    @classmethod
    def identity(cls, M):
        one = M.field.one
        z = M.alg.one_mono()
        return cls(M, M, [{(t, z): one} for t in range(M.rank)])

    @classmethod
    def right_multiplication(cls, source, target, poly):
        """e_s -> e_s * poly for free rank-one modules (left-linear)."""
        return cls(source, target, [{(0, a): c for a, c in poly.terms.items()}])

    def is_surjective_in(self, degrees):
        return all(self.piece_map(d).matrix.is_surjective() for d in degrees)


def left_mul(alg, poly, vec):
    """Re-export of left multiplication of a free-module vector by a polynomial."""
    return left_mul_poly(alg, poly, vec)
