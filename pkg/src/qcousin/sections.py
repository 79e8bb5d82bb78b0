"""Section functors on quantum projective space.

Strata are indexed by ``z`` with 0 <= z <= n; the stratum P^z is cut out by the variables
S(z) = {x_{z+2}, ..., x_{n+1}} (0-based indices z+1..n) and u(z) is their normal product.
The empty stratum is ``None`` and behaves as the zero functor: its supported sections
vanish.

Supported sections come in two semantics. ``product`` is the kernel of M_0 into the
localization at u(z), i.e. u(z)-torsion. ``ideal`` asks for annihilation by a power of
every variable of S(z) separately, i.e. the kernel into the sum of the single-variable
localizations. Both are computed at module level by certified colon chains, or degree-wise
with a pole-order window.
"""

from dataclasses import dataclass, field as dc_field

from .errors import ConfigurationError, InclusionError
from .linalg import LinearMap, QuotientSpace, Subspace, check_exact_sequence
from .modpres import ModuleMap, PieceMap, PresentedModule, free_module
from .report import FAIL, PASS, REPORT, Finding, check
from .textform import format_localized

__all__ = [
    "Stratum",
    "stratum",
    "global_sections",
    "open_sections",
    "OpenStage",
    "supported_sections",
    "SectionsReport",
    "localization_kernel",
    "quotient_sections",
    "QuotientSections",
    "restrict_to_stratum",
    "twist",
    "relative_open_sections",
    "induced_map",
    "verify_section_claims",
    "SEMANTICS",
]

SEMANTICS = ("ideal", "product")


@dataclass(frozen=True)
class Stratum:
    """The stratum P^z of P^n (z = None for the empty stratum)."""

    n: int
    z: object

    @property
    def is_empty(self):
        return self.z is None

    @property
    def variables(self):
        if self.z is None:
            raise ConfigurationError("the empty stratum has no inverted variable set")
        return tuple(range(self.z + 1, self.n + 1))

    @property
    def word(self):
        s = set(self.variables)
        return tuple(1 if i in s else 0 for i in range(self.n + 1))

    @property
    def label(self):
        return "empty" if self.z is None else str(self.z)


def stratum(n, z):
    if z is not None and not 0 <= z <= n:
        raise ConfigurationError(f"stratum index {z} outside 0..{n}")
    return Stratum(n, z)


def _rank_key(z):
    return -1 if z is None else z


def _scaled_word(u, p):
    return tuple(p * e for e in u)


def global_sections(M):
    """Gamma(P^n, M) = M_0."""
    return M.graded_piece(0)


def twist(M, t):
    """s^t(M): generator degrees lowered by t, so (s^t M)_d = M_{t+d}."""
    return M.shifted(t)


def restrict_to_stratum(M, z):
    """M / <S(z)> M, presented over A_{q,n} with the inherited grading."""
    st = stratum(M.alg.n, z)
    if st.z == M.alg.n:
        return M
    one = M.field.one
    extra = []
    for t in range(M.rank):
        for i in st.variables:
            extra.append({(t, M.alg.unit_vector(i)): one})
    return M.with_relations(extra, name=f"{M.name or 'M'}|P^{z}")


@dataclass
class OpenStage:
    """Stage p of (M[u^-1])_0: the space u^-p M_{p deg u} with its transition to p+1."""

    module: PresentedModule
    word: tuple
    pole: int
    piece: object
    transition: PieceMap
    restriction: PieceMap

    @property
    def dim(self):
        return self.piece.dim

    def format(self, coords):
        return format_localized(self.piece.lift(coords), self.module.rank, self.word, self.pole)


def open_stage(M, word, p, degree=0):
    """Localization stage for an arbitrary normal word (identity stages for the empty word)."""
    word = tuple(word)
    k = sum(word)
    piece = M.graded_piece(degree + p * k)
    if k == 0:
        ident = M.identity_map(degree)
        return OpenStage(M, word, p, piece, ident, ident)
    # u^{p+1} = q^{kappa(u, u^p)} u * u^p, so u^-p m = u^-(p+1) q^{kappa} u m
    from .skewalg import kappa

    tr = M.mult_map(degree + p * k, word)
    kk = kappa(word, _scaled_word(word, p))
    if kk:
        tr = PieceMap(tr.source, tr.target, tr.matrix.scaled(M.field.q_power(kk)), "transition")
    res = M.mult_map(degree, _scaled_word(word, p))
    return OpenStage(M, word, p, piece, tr, res)


def open_sections(M, z, p, degree=0):
    """Stage p of Gamma(P^n minus P^z, M) = (M[S(z)^-1])_0 and its transition map."""
    if p < 0:
        raise ConfigurationError("pole order must be nonnegative")
    st = stratum(M.alg.n, z)
    if st.is_empty:
        raise ConfigurationError("open sections need a nonempty stratum index")
    return open_stage(M, st.word, p, degree)


def localization_kernel(M, z, p, semantics="ideal", degree=0):
    """Kernel of M_d into the stage-p localization(s) at S(z)."""
    st = stratum(M.alg.n, z)
    P = M.graded_piece(degree)
    if st.is_empty:
        return Subspace(P.dim)
    if not st.variables:
        return P.full()
    if semantics == "product":
        return M.mult_map(degree, _scaled_word(st.word, p)).kernel()
    _check_semantics(semantics)
    out = P.full()
    for i in st.variables:
        out = out & M.mult_map(degree, M.alg.unit_vector(i, p)).kernel()
    return out


def _check_semantics(semantics):
    if semantics not in SEMANTICS:
        raise ConfigurationError(f"unknown semantics {semantics!r}; use 'ideal' or 'product'")


@dataclass
class SectionsReport:
    """Supported sections Gamma_{P^z}(P^n, M) as a subspace of M_d."""

    module: PresentedModule
    z: object
    semantics: str
    degree: int
    piece: object
    subspace: Subspace
    certificate: dict = dc_field(default_factory=dict)

    @property
    def dim(self):
        return self.subspace.rank

    @property
    def stable(self):
        return self.certificate.get("status") != "unstable"

    def basis_text(self):
        return [self.piece.format(b) for b in self.subspace.basis]

    def to_dict(self):
        return {
            "z": None if self.z is None else self.z,
            "semantics": self.semantics,
            "degree": self.degree,
            "ambient_dim": self.piece.dim,
            "dim": self.dim,
            "basis": self.basis_text(),
            "certificate": self.certificate,
        }


def supported_sections(M, z, semantics="ideal", mode="certified", p_max=4, window=2, degree=0):
    """Gamma_{P^z}(P^n, M) in degree ``degree`` (degree 0 by default).

    ``mode`` is ``certified`` (module-level colon chains) or ``windowed`` (stage kernels for
    p <= p_max, reported ``unstable`` unless they repeat ``window`` times).
    """
    _check_semantics(semantics)
    st = stratum(M.alg.n, z)
    P = M.graded_piece(degree)
    if st.is_empty:
        return SectionsReport(M, z, semantics, degree, P, Subspace(P.dim), {"status": "empty stratum"})
    if not st.variables:
        return SectionsReport(M, z, semantics, degree, P, P.full(), {"status": "whole space"})
    words = [st.word] if semantics == "product" else [M.alg.unit_vector(i) for i in st.variables]
    if mode == "certified":
        sub = P.full()
        cert = {"status": "certified", "mode": mode, "p_star": {}, "revalidated": True}
        for w in words:
            T = M.torsion_submodule(w)
            sub = sub & T.piece(degree)
            cert["p_star"][_word_label(w)] = T.p_star
            cert["revalidated"] = cert["revalidated"] and T.revalidated
        return SectionsReport(M, z, semantics, degree, P, sub, cert)
    if mode == "windowed":
        sub = P.full()
        cert = {"status": "stable", "mode": mode, "p_max": p_max, "window": window, "stable_at": {}}
        for w in words:
            W = M.torsion_submodule(w, mode="windowed", p_max=p_max, window=window, degree=degree)
            sub = sub & W.union
            cert["stable_at"][_word_label(w)] = W.stable_at
            if not W.stable:
                cert["status"] = "unstable"
        return SectionsReport(M, z, semantics, degree, P, sub, cert)
    raise ConfigurationError(f"unknown mode {mode!r}")


def _word_label(w):
    from .skewalg import mono_str

    return mono_str(w)


def _sections_space(M, z, semantics, p, degree=0):
    """Supported sections: certified when p is None, else the stage-p kernel."""
    if p is None:
        return supported_sections(M, z, semantics, degree=degree).subspace
    return localization_kernel(M, z, p, semantics, degree)


@dataclass
class QuotientSections:
    """Gamma_{P^z1}/Gamma_{P^z2} inside M_d with an induced basis."""

    module: PresentedModule
    z1: object
    z2: object
    semantics: str
    piece: object
    numerator: Subspace
    denominator: Subspace
    space: QuotientSpace

    @property
    def dim(self):
        return self.space.rank

    def basis_text(self):
        return [self.piece.format(r) for r in self.space.reps]

    def to_dict(self):
        return {
            "z1": self.z1,
            "z2": self.z2,
            "semantics": self.semantics,
            "dim": self.dim,
            "basis": self.basis_text(),
        }


def quotient_sections(M, z1, z2, semantics="ideal", p=None, degree=0):
    """Gamma_{P^z1}(P^n, M) / Gamma_{P^z2}(P^n, M) for z2 <= z1 (z2 may be None).

    Raises :class:`InclusionError` with a witness when Gamma_{P^z2} is not contained in
    Gamma_{P^z1}, which can happen under product semantics.
    """
    if z1 is None or _rank_key(z2) > _rank_key(z1):
        raise ConfigurationError(f"quotient sections need z2 <= z1, got z1={z1}, z2={z2}")
    P = M.graded_piece(degree)
    top = _sections_space(M, z1, semantics, p, degree)
    sub = _sections_space(M, z2, semantics, p, degree)
    bad = sub.first_outside(top)
    if bad is not None:
        text = P.format(bad)
        raise InclusionError(
            f"Gamma_P^{z2} is not contained in Gamma_P^{z1} under {semantics} semantics (witness {text})",
            witness=bad,
            witness_text=text,
        )
    space = QuotientSpace(P.dim, top.basis, sub.basis)
    return QuotientSections(M, z1, z2, semantics, P, top, sub, space)


def relative_open_sections(M, z1, z2, p):
    """Gamma(P^z1 minus P^z2, M): restrict to P^z1, then localize at S(z2) minus S(z1)."""
    n = M.alg.n
    s1 = set(stratum(n, z1).variables)
    rel = tuple(1 if (i in stratum(n, z2).variables and i not in s1) else 0 for i in range(n + 1))
    R = restrict_to_stratum(M, z1)
    return R, open_stage(R, rel, p)


def induced_map(f, src, tgt):
    """Matrix of the linear map f: k^a -> k^b between quotient spaces src -> tgt.

    Returns None when f does not carry src into the numerator of tgt.
    """
    cols = []
    for r in src.reps:
        c = tgt.coords(f.apply(r), strict=False)
        if c is None:
            return None
        cols.append(c)
    return LinearMap(f.field, src.rank, tgt.rank, cols)


def _subspace_as_quotient(sub):
    return QuotientSpace(sub.dim, sub.basis)


# ----------------------------------------------------------------------------------------
# verifiers


def _strata(n):
    return list(range(n + 1))


def _pole_levels(p_max):
    return [None] + list(range(1, p_max + 1))


def _level_label(p):
    return "certified" if p is None else f"p={p}"


def verify_l1(M, semantics="ideal", p_max=4):
    n = M.alg.n
    P = M.graded_piece(0)
    out = []
    top = supported_sections(M, n, semantics).subspace
    out.append(check("l1(1)", top == P.full(), "Gamma_P^n equals M_0", dim=top.rank))
    empty = supported_sections(M, None, semantics).subspace
    out.append(check("l1(2)", empty.rank == 0, "Gamma of the empty stratum vanishes"))
    for z in range(n):
        sec = supported_sections(M, z, semantics)
        p_need = max(sec.certificate["p_star"].values())
        left_ok = True
        left_witness = None
        for p in range(1, p_max + 1):
            ker = localization_kernel(M, z, p, semantics)
            if not ker <= sec.subspace:
                left_ok = False
                left_witness = P.format(ker.first_outside(sec.subspace))
                break
            if p >= p_need and ker != sec.subspace:
                left_ok = False
                left_witness = P.format(sec.subspace.first_outside(ker))
                break
        out.append(
            check(
                "l1(3)-left",
                left_ok,
                f"z={z}: Gamma_P^z is the kernel of M_0 into the stage localizations",
                left_witness,
                z=z,
                p_star=p_need,
            )
        )
        surj_ok, fail_p, witness = colimit_surjectivity(M, stratum(n, z).word, p_max)
        out.append(
            check(
                "l1(3)",
                surj_ok,
                f"z={z}: M_0 -> Gamma(P^n minus P^z, M) surjective on stages p < {p_max}",
                witness,
                z=z,
                failing_pole=fail_p,
            )
        )
    return out


def colimit_surjectivity(M, word, p_max, degree=0):
    """Is M_d -> colim_p (u^-p M_{d+p deg u}) onto, judged inside the window p <= p_max?

    An element of stage p < p_max is missed when its image in stage p_max lies outside the
    image of M_d there. Returns (ok, failing stage, witness text).
    """
    if not any(word) or p_max < 1:
        return True, None, None
    stages = [open_stage(M, word, p, degree) for p in range(p_max + 1)]
    target = stages[p_max].restriction.matrix.image()
    to_top = {}
    carry = None
    for p in range(p_max - 1, 0, -1):
        tr = stages[p].transition.matrix
        carry = tr if carry is None else carry.compose(tr)
        to_top[p] = carry
    for p in range(1, p_max):
        carry = to_top[p]
        for k in range(stages[p].dim):
            v = {k: M.field.one}
            if not target.contains(carry.apply(v)):
                return False, p, stages[p].format(v)
    return True, None, None


def _sequence_finding(claim, field, dims, maps, label, witness_fmt=None, **data):
    recs = check_exact_sequence(field, dims, maps)
    bad = [r for r in recs if not r["exact"]]
    if not bad:
        return check(claim, True, label, **data)
    r = bad[0]
    wt = witness_fmt(r["position"], r["witness"]) if witness_fmt and r["witness"] is not None else str(r["witness"])
    return check(claim, False, f"{label}: not exact at position {r['position']}", wt, **data)


def _inclusion_matrix(field, sub, sup):
    """Coordinates of sub's basis inside sup's basis (both subspaces of one ambient space)."""
    Q = _subspace_as_quotient(sup)
    Qs = _subspace_as_quotient(sub)
    return induced_map(LinearMap.identity(field, sub.dim), Qs, Q), Qs, Q


def verify_l2(M, semantics="ideal", p_max=4, strata=None):
    n = M.alg.n
    field = M.field
    P = M.graded_piece(0)
    zs = _strata(n) if strata is None else list(strata)
    out = []
    for p in _pole_levels(p_max):
        lvl = _level_label(p)
        spaces = {z: _sections_space(M, z, semantics, p) for z in zs}
        spaces[None] = Subspace(P.dim)
        failures1 = []
        for z1 in zs:
            for z2 in zs:
                if z2 > z1:
                    continue
                inc, Qs, Qt = _inclusion_matrix(field, spaces[z2], spaces[z1])
                if inc is None:
                    failures1.append(f"z1={z1}, z2={z2}: {P.format(spaces[z2].first_outside(spaces[z1]))}")
                    continue
                quo = QuotientSpace(P.dim, spaces[z1].basis, spaces[z2].basis)
                proj = induced_map(LinearMap.identity(field, P.dim), Qt, quo)
                recs = check_exact_sequence(field, [Qs.rank, Qt.rank, quo.rank], [inc, proj])
                if not all(r["exact"] for r in recs):
                    failures1.append(f"z1={z1}, z2={z2}: not exact")
        ok1 = not failures1
        w1 = failures1[0] if failures1 else None
        out.append(
            check(
                "l2(1)", ok1, f"{lvl}: 0 -> Gamma_z2 -> Gamma_z1 -> quotient -> 0 exact", w1, level=lvl, failures=failures1
            )
        )
        q = QuotientSpace(P.dim, spaces[n].basis, [])
        out.append(
            check("l2(2)", q.rank == P.dim and spaces[n] == P.full(), f"{lvl}: Gamma_(P^n)/(empty) = Gamma_P^n", level=lvl)
        )
        ok3 = all(QuotientSpace(P.dim, spaces[z].basis, spaces[z].basis).rank == 0 for z in zs)
        out.append(check("l2(3)", ok3, f"{lvl}: Gamma_(P^z)/(P^z) = 0", level=lvl))
        ok4 = True
        w4 = None
        pairs = [(a, b) for a in zs for b in zs + [None] if _rank_key(b) <= a]
        for z1, z2 in pairs:
            for w1_, w2_ in pairs:
                if not (z1 <= w1_ and _rank_key(z2) <= _rank_key(w2_)):
                    continue
                if not (spaces[z1] <= spaces[w1_] and spaces[z2] <= spaces[w2_]):
                    ok4 = False
                    w4 = f"({z1},{z2}) -> ({w1_},{w2_})"
                    break
            if not ok4:
                break
        out.append(check("l2(4)", ok4, f"{lvl}: comparison maps between quotient sections are well defined", w4, level=lvl))
        ok5 = True
        w5 = None
        for z1 in zs:
            for z2 in zs:
                for z3 in zs + [None]:
                    if not (_rank_key(z3) <= z2 <= z1):
                        continue
                    if not (spaces[z3] <= spaces[z2] <= spaces[z1]):
                        ok5 = False
                    else:
                        a = QuotientSpace(P.dim, spaces[z2].basis, spaces[z3].basis)
                        b = QuotientSpace(P.dim, spaces[z1].basis, spaces[z3].basis)
                        c = QuotientSpace(P.dim, spaces[z1].basis, spaces[z2].basis)
                        ident = LinearMap.identity(field, P.dim)
                        f = induced_map(ident, a, b)
                        g = induced_map(ident, b, c)
                        recs = check_exact_sequence(field, [a.rank, b.rank, c.rank], [f, g])
                        ok5 = all(r["exact"] for r in recs)
                    if not ok5:
                        w5 = f"z1={z1}, z2={z2}, z3={z3}"
                        break
                if not ok5:
                    break
            if not ok5:
                break
        out.append(check("l2(5)", ok5, f"{lvl}: 0 -> G(z2/z3) -> G(z1/z3) -> G(z1/z2) -> 0 exact", w5, level=lvl))
    return out


def verify_l3(M, semantics="ideal", p_max=4):
    """Report the comparison of Gamma_(z1)/(z2) with sections over P^z1 minus P^z2.

    Two readings are reported. ``literal``: c -> u_R^p c in the restriction of M to P^z1,
    R = S(z2) minus S(z1). ``support``: c -> (x^p c)_x over x in S(z2), the stage-p model
    of restriction to the union of the basic opens.
    """
    n = M.alg.n
    field = M.field
    P = M.graded_piece(0)
    out = []
    for z1 in range(1, n + 1):
        for z2 in range(1, z1 + 1):
            if z1 == z2:
                continue
            for p in range(1, p_max + 1):
                try:
                    Q = quotient_sections(M, z1, z2, semantics)
                except InclusionError as exc:
                    out.append(Finding("l3", REPORT, str(exc), exc.witness_text, {"z1": z1, "z2": z2, "p": p}))
                    continue
                R, stage = relative_open_sections(M, z1, z2, p)
                R0 = R.graded_piece(0)
                gam = stage.restriction.matrix.compose(
                    LinearMap(field, P.dim, R0.dim, [R0.coords(v) for v in P.basis_vectors()])
                )
                lit_kills = all(not gam.apply(b) for b in Q.denominator.basis)
                lit_inj = lit_kills and Subspace(stage.dim, [gam.apply(r) for r in Q.space.reps]).rank == Q.dim
                s2 = stratum(n, z2).variables
                cols = []
                blocks = [M.mult_map(0, M.alg.unit_vector(i, p)) for i in s2]
                off = 0
                total = sum(b.target.dim for b in blocks)
                for j in range(P.dim):
                    col = {}
                    off = 0
                    for b in blocks:
                        for k, c in b.matrix.columns[j].items():
                            col[off + k] = c
                        off += b.target.dim
                    cols.append(col)
                sup = LinearMap(field, P.dim, total, cols)
                sup_kills = all(not sup.apply(b) for b in Q.denominator.basis)
                sup_inj = sup_kills and Subspace(total, [sup.apply(r) for r in Q.space.reps]).rank == Q.dim
                gamma_surj = colimit_surjectivity(M, stratum(n, z2).word, p_max)[0]
                iso = None
                if gamma_surj and p < p_max:
                    iso = lit_inj and _reaches_image(R, stage, [R0.coords(P.lift(b)) for b in Q.numerator.basis], p_max)
                out.append(
                    Finding(
                        "l3",
                        REPORT,
                        f"z1={z1}, z2={z2}, p={p}",
                        None,
                        {
                            "z1": z1,
                            "z2": z2,
                            "p": p,
                            "literal_well_defined": lit_kills,
                            "literal_injective": lit_inj,
                            "support_well_defined": sup_kills,
                            "support_injective": sup_inj,
                            "restriction_surjective": gamma_surj,
                            "isomorphism": iso,
                        },
                    )
                )
    return out


def _reaches_image(R, stage, numerator, p_max):
    """Does every element of the stage land, by stage p_max, in the image of numerator?"""
    top = open_stage(R, stage.word, p_max)
    image = Subspace(top.dim, [top.restriction.matrix.apply(b) for b in numerator])
    carry = LinearMap.identity(R.field, stage.dim)
    for p in range(stage.pole, p_max):
        carry = open_stage(R, stage.word, p).transition.matrix.compose(carry)
    return all(image.contains(carry.apply({k: R.field.one})) for k in range(stage.dim))


def _sub_map(f, src, tgt):
    """Restriction of the PieceMap matrix f to subspaces src -> tgt (None if not preserved)."""
    return induced_map(f, _subspace_as_quotient(src), _subspace_as_quotient(tgt))


def ses_exact_in_degree(maps, spaces, field):
    """Exactness of 0 -> V1 -> V2 -> V3 -> 0 for subspace-restricted maps."""
    f, g = maps
    a, b, c = spaces
    F = _sub_map(f, a, b)
    G = _sub_map(g, b, c)
    if F is None or G is None:
        return False
    recs = check_exact_sequence(field, [a.rank, b.rank, c.rank], [F, G])
    return all(r["exact"] for r in recs)


def _threshold(flags):
    """Minimal t0 with flags[t] true for all t >= t0 (None if the last flag is false)."""
    t0 = None
    for t in range(len(flags) - 1, -1, -1):
        if flags[t]:
            t0 = t
        else:
            break
    return t0


def verify_l4(ses, z1, z2, semantics="ideal", t_max=4):
    """Scan t for exactness of Gamma, Gamma_z1 and Gamma_(z1)/(z2) applied to s^t(ses)."""
    f, g = ses
    M1, M2, M3 = f.source, f.target, g.target
    field = M2.field
    results = {"global": [], "supported": [], "quotient": []}
    for t in range(t_max + 1):
        F = f.piece_map(t).matrix
        G = g.piece_map(t).matrix
        full = [X.graded_piece(t).full() for X in (M1, M2, M3)]
        results["global"].append(ses_exact_in_degree((F, G), full, field))
        sup = [supported_sections(X, z1, semantics, degree=t).subspace for X in (M1, M2, M3)]
        results["supported"].append(ses_exact_in_degree((F, G), sup, field))
        ok = True
        qs = []
        for X in (M1, M2, M3):
            try:
                qs.append(quotient_sections(X, z1, z2, semantics, degree=t).space)
            except InclusionError:
                ok = False
        if ok:
            Fi = induced_map(F, qs[0], qs[1])
            Gi = induced_map(G, qs[1], qs[2])
            ok = Fi is not None and Gi is not None
            if ok:
                recs = check_exact_sequence(field, [q.rank for q in qs], [Fi, Gi])
                ok = all(r["exact"] for r in recs)
        results["quotient"].append(ok)
    data = {k: {"exact_by_t": v, "t0": _threshold(v)} for k, v in results.items()}
    data.update({"z1": z1, "z2": z2, "t_max": t_max})
    return [Finding("l4", REPORT, "observed thresholds for exactness after twisting", None, data)]


def verify_b1(M, d_max=4):
    """(B1): the generators give an epimorphism from a sum of shifted free modules."""
    F = free_module(M.alg, M.gen_degrees, name="cover")
    one = M.field.one
    z = M.alg.one_mono()
    cover = ModuleMap(F, M, [{(t, z): one} for t in range(M.rank)])
    lo = min(M.gen_degrees, default=0)
    degs = list(range(min(lo, 0), d_max + 1))
    ok = cover.is_surjective_in(degs)
    return [check("B1", ok, "generator cover is surjective in every tested degree", shifts=list(M.gen_degrees), degrees=degs)]


def verify_b2(epi, t_max=4, semantics="ideal"):
    """(B2): scan t for surjectivity of Gamma_{P^k}(s^t M) -> Gamma_{P^k}(s^t N), 1 <= k <= n."""
    M, N = epi.source, epi.target
    n = M.alg.n
    flags = []
    for t in range(t_max + 1):
        F = epi.piece_map(t).matrix
        ok = True
        for k in range(1, n + 1):
            a = supported_sections(M, k, semantics, degree=t).subspace
            b = supported_sections(N, k, semantics, degree=t).subspace
            m = _sub_map(F, a, b)
            if m is None or not m.is_surjective():
                ok = False
                break
        flags.append(ok)
    t0 = _threshold(flags)
    return [Finding("B2", REPORT, "observed threshold for epimorphism preservation", None, {"surjective_by_t": flags, "t0": t0})]


def verify_section_claims(M, semantics="ideal", p_max=4):
    """Claims l1, l2 and l3 plus (B1) for one module."""
    out = []
    out.extend(verify_l1(M, semantics, p_max))
    out.extend(verify_l2(M, semantics, p_max))
    out.extend(verify_l3(M, semantics, p_max))
    out.extend(verify_b1(M))
    return out
