"""Acceptance criteria 1-10, each printing a single PASS/FAIL line."""

import json
import random
import sys
import time
from math import comb
from pathlib import Path

import pytest

from qcousin import ModuleMap, PresentedModule, QuantumAlgebra, build_cousin, free_module
from qcousin.cech import RelativeComplex, build_cech, complex_cohomology, verify_l6, verify_l7
from qcousin.cli import engine_pipeline, main
from qcousin.oracle import CommutativeModuleSpec, OracleModule, cousin_dims, oracle_pipeline
from qcousin.sections import stratum, supported_sections, verify_l1, verify_l2
from qcousin.skewalg import multiply
from battery import BATTERY, build

DATA = Path(__file__).parent / "data"
FIELDS_ALL = ("rationals", "generic_q", "cyclotomic:3", "cyclotomic:4")


def verdict(capsys, number, ok, detail, elapsed, budget=None):
    within = budget is None or elapsed < budget
    status = "PASS" if ok and within else "FAIL"
    limit = f" (budget {budget:g} s)" if budget else ""
    with capsys.disabled():
        print(f"\ncriterion {number:>2} {status}: {detail}; {elapsed:.2f} s{limit}")
    assert ok, detail
    assert within, f"criterion {number} exceeded its {budget} s budget"


def test_criterion_01_pbw_dimensions(capsys):
    t = time.perf_counter()
    bad = []
    for spec in FIELDS_ALL:
        for n in (1, 2, 3):
            A = QuantumAlgebra(n, spec)
            F = free_module(A)
            for d in range(9):
                expect = comb(n + d, n)
                if len(A.monomials(d)) != expect or F.graded_piece(d).dim != expect:
                    bad.append((spec, n, d))
    verdict(capsys, 1, not bad, f"PBW dimensions for n<=3, d<=8, 4 fields, mismatches {bad}", time.perf_counter() - t, 10)


def _normalize_word(letters, field):
    """Letter-by-letter normalization: swap adjacent x_j x_i (j > i) into q^-1 x_i x_j."""
    w = list(letters)
    swaps = 0
    changed = True
    while changed:
        changed = False
        for k in range(len(w) - 1):
            if w[k] > w[k + 1]:
                w[k], w[k + 1] = w[k + 1], w[k]
                swaps += 1
                changed = True
    return field.q_power(-swaps), w


def test_criterion_02_skew_product(capsys):
    t = time.perf_counter()
    rng = random.Random(20240601)
    bad = []
    for spec, count in (("generic_q", 500), ("cyclotomic:4", 100), ("cyclotomic:3", 100), ("rationals", 100)):
        for _ in range(count):
            n = rng.randint(1, 3)
            A = QuantumAlgebra(n, spec)
            a = A.monomials(rng.randint(0, 6))
            b = A.monomials(rng.randint(0, 6))
            u, v = rng.choice(a), rng.choice(b)
            letters = [i for i, e in enumerate(u) for _ in range(e)] + [i for i, e in enumerate(v) for _ in range(e)]
            c, w = _normalize_word(letters, A.field)
            word = tuple(w.count(i) for i in range(A.nvars))
            if multiply(A.monomial(u), A.monomial(v)) != A.monomial(word, c):
                bad.append((spec, u, v))
    verdict(capsys, 2, not bad, f"500 random monomial pairs at generic q (plus 300 at q=1 and roots of unity) against word normalization, mismatches {bad[:3]}", time.perf_counter() - t, 10)


def test_criterion_03_oracle_equivalence(capsys):
    t = time.perf_counter()
    bad = []
    queries = [
        ("hilbert", {"degrees": list(range(7))}),
        ("sections", {"semantics": "ideal"}),
        ("sections", {"semantics": "product"}),
        ("cech", {"pole_max": 3}),
        ("cousin", {"pole_max": 3}),
    ]
    for name in BATTERY:
        M = build(name, "rationals")
        spec = CommutativeModuleSpec.from_presented(M)
        for q, params in queries:
            if engine_pipeline(M, q, params) != oracle_pipeline(spec, q, params):
                bad.append((name, q, params.get("semantics")))
    verdict(capsys, 3, not bad, f"{len(BATTERY)} battery modules agree with the commutative oracle, mismatches {bad}", time.perf_counter() - t, 120)


def _words(M):
    n = M.alg.n
    out = {M.alg.unit_vector(i) for i in range(n + 1)}
    out |= {stratum(n, z).word for z in range(n)}
    return sorted(out)


def test_criterion_04_torsion_certification(capsys):
    t = time.perf_counter()
    bad = []
    count = 0
    for name in BATTERY:
        for spec in ("rationals", "generic_q"):
            M = build(name, spec)
            for u in _words(M):
                T = M.torsion_submodule(u)
                W = M.torsion_submodule(u, mode="windowed", p_max=T.p_star + 3, window=2)
                count += 1
                if not T.revalidated or W.status != "stable" or W.union != T.piece(0):
                    bad.append((name, spec, u))
    verdict(capsys, 4, not bad, f"{count} certified torsion computations equal the windowed union, mismatches {bad}", time.perf_counter() - t, 60)


def test_criterion_05_cech_invariants(capsys):
    t = time.perf_counter()
    bad = []
    count = 0
    for name in BATTERY:
        for spec in ("rationals", "generic_q"):
            M = build(name, spec)
            n = M.alg.n
            for z in range(n + 1):
                rep = complex_cohomology(lambda p: build_cech(M, z, p), 4, 2)
                count += 4
                if not (rep.dd_ok and rep.euler_ok and rep.commute_ok):
                    bad.append((name, spec, z))
                for z2 in [None] + list(range(z + 1)):
                    rep = complex_cohomology(lambda p: RelativeComplex(M, z, z2, p), 4, 2)
                    count += 4
                    if not (rep.dd_ok and rep.euler_ok and rep.commute_ok):
                        bad.append((name, spec, z, z2))
    verdict(capsys, 5, not bad, f"d o d = 0, commutation and Euler identity on {count} complexes, failures {bad}", time.perf_counter() - t)


def test_criterion_06_known_value(capsys):
    t = time.perf_counter()
    bad = []
    for spec in ("rationals", "generic_q", "cyclotomic:4"):
        M = free_module(QuantumAlgebra(1, spec))
        for p in range(1, 6):
            C = build_cech(M, 0, p)
            if (C.cohomology(0).rank, C.cohomology(1).rank) != (0, p):
                bad.append((spec, p))
    verdict(capsys, 6, not bad, f"n=1, M=A, S={{x2}}: H0 = 0 and H1 = p for p<=5, failures {bad}", time.perf_counter() - t, 30)


def test_criterion_07_cousin_line(capsys):
    t = time.perf_counter()
    problems = []
    dims_by_field = {}
    oracle = OracleModule(CommutativeModuleSpec(1, (0,), []))
    for spec in ("rationals", "generic_q", "cyclotomic:4"):
        M = free_module(QuantumAlgebra(1, spec))
        dims_by_field[spec] = []
        for p in range(1, 5):
            inst = build_cousin(M, (1, 0), p)
            dims = inst.term_dims()
            dims_by_field[spec].append(dims)
            if dims != [1, p + 1, p]:
                problems.append(("dims", spec, p, dims))
            if not inst.differentials[0].compose(inst.augmentation).is_zero():
                problems.append(("d0 e", spec, p))
            if spec == "rationals":
                if not all(r["exact"] for r in inst.exactness()):
                    problems.append(("exact", p))
                odims, ocoh = cousin_dims(oracle, [1, 0], p)
                if odims != dims or any(ocoh):
                    problems.append(("oracle", p, odims, ocoh))
    if len({json.dumps(v) for v in dims_by_field.values()}) != 1:
        problems.append(("fields differ", dims_by_field))
    verdict(capsys, 7, not problems, f"Cousin (1,0) on the line: dims (1, p+1, p), exact at q=1, issues {problems}", time.perf_counter() - t, 60)


def test_criterion_08_kernel_of_augmentation(capsys):
    t = time.perf_counter()
    bad = []
    count = 0
    for name in BATTERY:
        for spec in ("rationals", "generic_q"):
            M = build(name, spec)
            n = M.alg.n
            for filt in {tuple(range(n, -1, -1)), (n, 0)}:
                sec = supported_sections(M, filt[1], "ideal")
                p_star = max(sec.certificate.get("p_star", {}).values(), default=1)
                for p in sorted({max(1, p_star), max(1, p_star) + 1}):
                    inst = build_cousin(M, filt, p)
                    count += 1
                    if inst.augmentation.kernel() != sec.subspace:
                        bad.append((name, spec, filt, p))
    verdict(capsys, 8, not bad, f"Ker e equals the ideal supported sections on {count} instances, failures {bad}", time.perf_counter() - t)


def _ses_battery():
    out = []
    A1 = QuantumAlgebra(1, "generic_q")
    one1 = A1.field.one
    F = free_module(A1, (1,))
    A = free_module(A1)
    C = PresentedModule(A1, (0,), [A1.var(1)])
    out.append(("0->A(-1)->A->A/x1->0", ModuleMap(F, A, [{(0, (1, 0)): one1}]), ModuleMap(A, C, [{(0, (0, 0)): one1}])))
    K = PresentedModule(A1, (1,), [A1.var(2)])
    Q2 = PresentedModule(A1, (0,), [A1.var(2) ** 2])
    Q1 = PresentedModule(A1, (0,), [A1.var(2)])
    out.append(("0->A/x2(-1)->A/x2^2->A/x2->0", ModuleMap(K, Q2, [{(0, (0, 1)): one1}]), ModuleMap(Q2, Q1, [{(0, (0, 0)): one1}])))
    A2 = QuantumAlgebra(2, "generic_q")
    one2 = A2.field.one
    P = free_module(A2)
    Pq = PresentedModule(A2, (0,), [A2.var(3)])
    S = PresentedModule(A2, (0, 0), [{(1, (0, 0, 1)): one2}])
    e = (0, 0, 0)
    out.append(("0->A->A+A/x3->A/x3->0", ModuleMap(P, S, [{(0, e): one2}]), ModuleMap(S, Pq, [{}, {(0, e): one2}])))
    out.append(("0->A(-1)->A->A/x3->0", ModuleMap(free_module(A2, (1,)), P, [{(0, (0, 0, 1)): one2}]), ModuleMap(P, Pq, [{(0, e): one2}])))
    return out


def test_criterion_09_claim_batteries(capsys):
    t = time.perf_counter()
    problems = []
    for name in BATTERY:
        M = build(name, "generic_q")
        for f in verify_l2(M, "ideal", 3):
            if f.failed:
                problems.append(("l2", name, f.claim, f.witness))
        for f in verify_l7(M, 3):
            if f.failed:
                problems.append(("l7", name, f.message))
    ses_count = 0
    for label, f, g in _ses_battery():
        n = f.source.alg.n
        for z1 in range(n + 1):
            for z2 in [None] + list(range(z1 + 1)):
                ses_count += 1
                for x in verify_l6((f, g), z1, z2, 3):
                    if x.failed:
                        problems.append(("l6", label, z1, z2, x.message))
    A3 = QuantumAlgebra(3, "generic_q")
    cx = PresentedModule(A3, (0,), [A3.var(3)])
    l21 = [f for f in verify_l2(cx, "product", 1) if f.claim == "l2(1)"]
    detected = any(f.failed and "z1=2, z2=1: e" in f.data.get("failures", []) for f in l21)
    if not detected:
        problems.append(("product counterexample not detected",))
    l13 = [f for f in verify_l1(free_module(QuantumAlgebra(1, "generic_q")), "ideal", 4) if f.claim == "l1(3)"]
    if not (l13 and l13[0].failed and l13[0].witness == "x2^-1*x1"):
        problems.append(("l1(3) failure not detected",))
    detail = (
        f"l2(1)-(5) and l7 on {len(BATTERY)} modules, l6 on {ses_count} sequence/strata pairs at p<=3; "
        f"product counterexample witness e detected: {detected}; l1(3) witness x2^-1*x1; issues {problems[:3]}"
    )
    verdict(capsys, 9, not problems, detail, time.perf_counter() - t)


EXPECTED_EXIT = {"verify_l1_line": 1, "verify_product_counterexample": 1, "oracle_generic": 2}


def test_criterion_10_cli_determinism(capsys):
    t = time.perf_counter()
    problems = []
    manifests = sorted((DATA / "manifests").glob("*.qcm"))
    for path in manifests:
        runs = []
        for _ in range(2):
            code = main(["--manifest", str(path)])
            out, _ = capsys.readouterr()
            runs.append((code, out))
        if runs[0] != runs[1]:
            problems.append(("nondeterministic", path.stem))
        code, out = runs[0]
        if code != EXPECTED_EXIT.get(path.stem, 0):
            problems.append(("exit", path.stem, code))
        if code != 2:
            golden = [g for g in (DATA / "golden").glob(path.stem + ".*")]
            if len(golden) != 1 or golden[0].read_text(encoding="utf-8") != out:
                problems.append(("golden", path.stem))
    malformed = sorted((DATA / "malformed").glob("*.qcm"))
    for path in malformed:
        if main(["--manifest", str(path)]) != 2:
            problems.append(("malformed exit", path.stem))
        capsys.readouterr()
    detail = f"{len(manifests)} manifests byte-identical to goldens over two runs, {len(malformed)} malformed exit 2, issues {problems}"
    verdict(capsys, 10, not problems, detail, time.perf_counter() - t)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
